#include "wce/io.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

using namespace wce;

TEST_CASE("monomial and goal text forms") {
    Monomial m;
    m.bump(tvar::var(1, 0), 2);
    m.bump(tvar::var(4, 0));
    REQUIRE(mono_to_text(m) == "1,0^2 4,0");
    REQUIRE(mono_from_text(mono_to_text(m)) == m);
    REQUIRE(mono_to_text(Monomial{}) == "1");
    REQUIRE(mono_from_text("1") == Monomial{});
    REQUIRE(goal_from_text("(1,0)^2 (4,0)") == m);
    REQUIRE_THROWS_AS(goal_from_text("nope"), std::invalid_argument);
}

TEST_CASE("generators round-trip through text and JSON") {
    auto d = build_root_datum('A', 2);
    auto gens = w_generators(d, GenStrategy::KernelSolve);
    auto text = generators_to_text(d, GenStrategy::KernelSolve, gens);
    auto back = generators_from_text(d, GenStrategy::KernelSolve, text);
    REQUIRE(back.has_value());
    REQUIRE(*back == gens);
    // wrong strategy header is rejected
    REQUIRE_FALSE(generators_from_text(d, GenStrategy::Builtin, text).has_value());

    auto j = generators_to_json(d, GenStrategy::KernelSolve, gens);
    REQUIRE(generators_from_json(j) == gens);
    REQUIRE(generators_from_json(json::parse(j.dump())) == gens);
}

TEST_CASE("operators round-trip and serialize deterministically") {
    auto d = build_root_datum('A', 1);
    auto gens = w_generators(d, GenStrategy::Builtin);
    auto W = w_operator(d, gens, 1, 1, 9, 9);

    auto text = operator_to_text(d, GenStrategy::Builtin, W);
    auto back = operator_from_text(d, GenStrategy::Builtin, 1, 1, text);
    REQUIRE(back.has_value());
    REQUIRE(back->c_leading == W.c_leading);
    REQUIRE(operator_to_text(d, GenStrategy::Builtin, *back) == text);

    auto j = operator_to_json(d, GenStrategy::Builtin, W);
    auto jb = operator_from_json(json::parse(j.dump()));
    REQUIRE(operator_to_json(d, GenStrategy::Builtin, jb).dump() == j.dump());
}

TEST_CASE("tau series JSON round-trips") {
    auto d = build_root_datum('A', 1);
    TauSolver solver(d, w_generators(d, GenStrategy::Builtin), 5);
    solver.solve_frontier();
    auto s = solver.snapshot();
    auto j = series_to_json(d, s);
    auto back = series_from_json(json::parse(j.dump()));
    REQUIRE(back.coeffs == s.coeffs);
    REQUIRE(back.truncation_num == s.truncation_num);
    REQUIRE(series_to_json(d, back).dump() == j.dump());
}

TEST_CASE("cache files: checksum, atomicity, corruption recovery") {
    auto dir = std::filesystem::temp_directory_path() / "wce-io-test";
    std::filesystem::remove_all(dir);
    auto path = dir / "probe.txt";
    std::string body = "datum A1 conductor 24\npayload line\n";
    cache_write(path, body);
    auto rd = cache_read(path);
    REQUIRE(rd.has_value());
    REQUIRE(*rd == body);
    REQUIRE_FALSE(std::filesystem::exists(dir / "probe.txt.tmp"));

    // flip one byte -> checksum rejects, treated as a miss
    {
        std::fstream f(path, std::ios::in | std::ios::out | std::ios::binary);
        f.seekp(-2, std::ios::end);
        f.put('X');
    }
    REQUIRE_FALSE(cache_read(path).has_value());
    REQUIRE_FALSE(cache_read(dir / "absent.txt").has_value());
    std::filesystem::remove_all(dir);
}
