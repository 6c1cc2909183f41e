#include "wce/selfcheck.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace wce;

namespace {

Monomial tmono(std::initializer_list<std::pair<unsigned, unsigned>> factors, unsigned e = 1) {
    Monomial m;
    for (auto [i, p] : factors) m.bump(tvar::var(i, p), e);
    return m;
}

}  // namespace

TEST_CASE("normalization tau(0) = 1") {
    auto d = build_root_datum('A', 1);
    TauSolver solver(d, w_generators(d, GenStrategy::Builtin), 9);
    REQUIRE(solver.coeff(Monomial{}) == Cyc::rational(1, d.conductor));
}

TEST_CASE("A1 log tau values frozen from the Virasoro oracle") {
    auto d = build_root_datum('A', 1);
    TauSolver solver(d, w_generators(d, GenStrategy::Builtin), 9);
    solver.solve_frontier();
    auto logs = log_series(d, solver.snapshot());
    // expected values computed by the independent Eq.(1)/(3) recursion
    Monomial c3;
    c3.bump(tvar::var(1, 0), 3);
    Monomial t1;
    t1.bump(tvar::var(1, 1));
    Monomial t4;
    t4.bump(tvar::var(1, 4));
    REQUIRE(logs.base.coeffs.at(c3) == Cyc::rational(Rational(1, 6), d.conductor));
    REQUIRE(logs.base.coeffs.at(t1) == Cyc::rational(Rational(1, 24), d.conductor));
    REQUIRE(logs.base.coeffs.at(t4) == Cyc::rational(Rational(1, 1152), d.conductor));
    REQUIRE(logs.genus.at(c3) == 0);
    REQUIRE(logs.genus.at(t1) == 1);
    REQUIRE(logs.genus.at(t4) == 2);
}

TEST_CASE("D4 paper coefficient: log tau [(t^{1,0})^2 t^{4,0}] = 1/2") {
    auto d = build_root_datum('D', 4);
    TauSolver solver(d, w_generators(d, GenStrategy::KernelSolve), 7);
    solver.coeff(tmono({{1, 0}, {1, 0}, {4, 0}}));
    // also v1 v2 v3 at the same depth
    solver.coeff(tmono({{1, 0}, {2, 0}, {3, 0}}));
    auto logs = log_series(d, solver.snapshot());
    Monomial m1 = tmono({{4, 0}});
    m1.bump(tvar::var(1, 0), 2);
    REQUIRE(logs.base.coeffs.at(m1) == Cyc::rational(Rational(1, 2), d.conductor));
    REQUIRE(logs.base.coeffs.at(tmono({{1, 0}, {2, 0}, {3, 0}})) ==
            Cyc::rational(1, d.conductor));
}

TEST_CASE("genus selection rule") {
    auto a1 = build_root_datum('A', 1);
    Monomial c3;
    c3.bump(tvar::var(1, 0), 3);
    REQUIRE(genus_of(a1, c3) == 0);
    Monomial t1;
    t1.bump(tvar::var(1, 1));
    REQUIRE(genus_of(a1, t1) == 1);
    // t^{1,2} has genus 4/3: not an integer, so it may not occur
    Monomial t2;
    t2.bump(tvar::var(1, 2));
    REQUIRE_FALSE(genus_of(a1, t2).has_value());

    auto d4 = build_root_datum('D', 4);
    Monomial v47;
    v47.bump(tvar::var(4, 0), 7);
    REQUIRE(genus_of(d4, v47) == 0);
    Monomial d11;
    d11.bump(tvar::var(1, 1));
    REQUIRE(genus_of(d4, d11) == 1);
}

TEST_CASE("goal-directed and frontier modes agree") {
    auto d = build_root_datum('D', 4);
    auto gens = w_generators(d, GenStrategy::KernelSolve);
    TauSolver frontier(d, gens, 7);
    frontier.solve_frontier();
    TauSolver goal(d, gens, 7);
    for (const auto& m : frontier.enumerate_monomials(7))
        REQUIRE(goal.coeff(m) == frontier.stored(m));
}

TEST_CASE("log series round-trips through exp") {
    auto d = build_root_datum('A', 1);
    TauSolver solver(d, w_generators(d, GenStrategy::Builtin), 9);
    solver.solve_frontier();
    auto logs = log_series(d, solver.snapshot());
    auto monos = solver.enumerate_monomials(9);
    auto back = exp_series(d, logs.base.coeffs, monos);
    for (const auto& m : monos) {
        Cyc want = solver.stored(m);
        auto it = back.find(m);
        Cyc got = it == back.end() ? Cyc::rational(0, d.conductor) : it->second;
        REQUIRE(want == got);
    }
    // log(1 + c M) = c M - c^2 M^2 / 2 + ... on a toy series
    TauSeries toy;
    toy.family = 'A';
    toy.rank = 1;
    toy.h = 2;
    toy.conductor = d.conductor;
    toy.truncation_num = 9;
    Monomial M;
    M.bump(tvar::var(1, 0));
    toy.coeffs.emplace(Monomial{}, Cyc::rational(1, d.conductor));
    Cyc c = Cyc::rational(Rational(2, 3), d.conductor);
    toy.coeffs.emplace(M, c);
    toy.coeffs.emplace(M.mul(M), Cyc::rational(0, d.conductor));
    toy.coeffs.emplace(M.mul(M).mul(M), Cyc::rational(0, d.conductor));
    auto toylog = log_series(d, toy);
    REQUIRE(toylog.base.coeffs.at(M) == c);
    REQUIRE(toylog.base.coeffs.at(M.mul(M)) == -(c * c).scaled(Rational(1, 2)));
    REQUIRE(toylog.base.coeffs.at(M.mul(M).mul(M)) == (c * c * c).scaled(Rational(1, 3)));
}

TEST_CASE("consistency and uniqueness suites on small truncations") {
    auto d = build_root_datum('A', 1);
    auto gens = w_generators(d, GenStrategy::Builtin);
    TauSolver solver(d, gens, 9);
    auto cons = checks::consistency(solver, 4);
    INFO(cons.detail);
    REQUIRE(cons.pass);
    auto uniq = checks::uniqueness(solver);
    INFO(uniq.detail);
    REQUIRE(uniq.pass);
}

TEST_CASE("solver input validation") {
    auto d = build_root_datum('A', 1);
    TauSolver solver(d, w_generators(d, GenStrategy::Builtin), 5);
    Monomial big;
    big.bump(tvar::var(1, 4));  // degree 9 > 5
    REQUIRE_THROWS_AS(solver.coeff(big), std::invalid_argument);
}

TEST_CASE("wdvv oracle") {
    auto d = build_root_datum('D', 4);
    Poly f = reference_potential_d4(d);
    std::string why;
    REQUIRE(wdvv_check(d, f, &why));
    REQUIRE(quasi_homogeneous(d, f));
    // altering the (v4)^7 coefficient to 1/272159 must break associativity
    Poly bad = f;
    Monomial v47;
    v47.bump(tvar::var(4, 0), 7);
    bad[v47] = Cyc::rational(Rational(1, 272159), d.conductor);
    REQUIRE_FALSE(wdvv_check(d, bad, &why));
    REQUIRE_FALSE(quasi_homogeneous(d, poly_add(f, poly_one(d.conductor))));
    // rank-1 trivial cubic
    auto a1 = build_root_datum('A', 1);
    Poly cubic;
    Monomial v3;
    v3.bump(tvar::var(1, 0), 3);
    cubic.emplace(v3, Cyc::rational(Rational(1, 6), a1.conductor));
    REQUIRE(wdvv_check(a1, cubic, &why));
}
