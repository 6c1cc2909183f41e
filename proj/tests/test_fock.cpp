#include "wce/invariants.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace wce;

namespace {

Poly upoly(const RootDatum& d, unsigned j, unsigned n, unsigned e = 1) {
    Poly p;
    Monomial m;
    m.bump(fock::var(j, n), e);
    p.emplace(m, Cyc::rational(1, d.conductor));
    return p;
}

}  // namespace

TEST_CASE("heisenberg module rules for A1") {
    auto d = build_root_datum('A', 1);
    LatticeVector alpha{Basis::Root, {Rational(1)}};
    auto ay = d.eigen_coords(alpha);
    LatticeState vac{poly_one(d.conductor), Basis::Root, {0}};

    auto at1 = heisenberg_act(d, ay, -1, vac);  // alpha t^{-1} |0>
    SECTION("commutator [alpha t^1, alpha t^-1] = (alpha|alpha) = 2") {
        auto r = heisenberg_act(d, ay, 1, at1);
        REQUIRE(r.fockpart.size() == 1);
        REQUIRE(r.fockpart.begin()->second == Cyc(2));
    }
    SECTION("zero mode reads the charge: (alpha|0) = 0") {
        REQUIRE(heisenberg_act(d, ay, 0, at1).fockpart.empty());
    }
    SECTION("non-matching levels commute: [alpha t^2, alpha t^-1] = 0") {
        auto sq = heisenberg_act(d, ay, -1, at1);
        REQUIRE(heisenberg_act(d, ay, 2, sq).fockpart.empty());
    }
    SECTION("zero mode on a charged state") {
        LatticeState charged{poly_one(d.conductor), Basis::Root, {1}};
        auto r = heisenberg_act(d, ay, 0, charged);
        REQUIRE(r.fockpart.begin()->second == Cyc(2));  // (alpha|alpha)
    }
}

TEST_CASE("vertex operator modes for A1") {
    auto d = build_root_datum('A', 1);
    LatticeVector alpha{Basis::Root, {Rational(1)}};
    auto ay = d.eigen_coords(alpha);
    Poly at1 = boson_creation_element(d, ay, 1);

    SECTION("e^alpha_(0) kills the vacuum") {
        LatticeState v{poly_one(d.conductor), Basis::Root, {0}};
        REQUIRE(vertex_mode(d, alpha, 0, v).fockpart.empty());
    }
    SECTION("e^alpha_(0)(alpha t^-1) = -2 (x) e^alpha") {
        LatticeState v{at1, Basis::Root, {0}};
        auto r = vertex_mode(d, alpha, 0, v);
        REQUIRE(r.charge == std::vector<long long>{1});
        REQUIRE(r.fockpart.size() == 1);
        REQUIRE(r.fockpart.begin()->first.empty());
        REQUIRE(r.fockpart.begin()->second == Cyc(-2));
    }
    SECTION("z^{(alpha|-alpha)} shifts extraction to the cubic Taylor coefficient") {
        LatticeState v{poly_one(d.conductor), Basis::Root, {-1}};
        auto r = vertex_mode(d, alpha, -2, v);
        REQUIRE(r.charge == std::vector<long long>{0});
        auto s3 = detail::creation_exponential(d, ay, 3)[3];
        int eps = d.epsilon({1}, {-1});
        REQUIRE(r.fockpart == poly_scale(s3, Cyc(eps)));
    }
}

TEST_CASE("screening operators for A1") {
    auto d = build_root_datum('A', 1);
    LatticeVector alpha{Basis::Root, {Rational(1)}};
    Poly at1 = boson_creation_element(d, d.eigen_coords(alpha), 1);

    REQUIRE(screening(d, 1, poly_one(d.conductor)).empty());
    Poly r = screening(d, 1, at1);
    REQUIRE(r.size() == 1);
    REQUIRE(r.begin()->second == Cyc(-2));
    REQUIRE(screening(d, 1, poly_mul(at1, at1)).empty());
}

TEST_CASE("screening shifts the Fock degree by exactly one") {
    // the V_Q degree deg(s) + |alpha_i|^2/2 is preserved: the Fock part drops by 1
    auto d = build_root_datum('D', 4);
    for (unsigned j = 1; j <= 4; ++j)
        for (unsigned n = 1; n <= 3; ++n)
            for (unsigned i = 1; i <= 4; ++i) {
                Poly p = poly_mul(upoly(d, j, n), upoly(d, (j % 4) + 1, 1));
                long long din = fock::max_degree(p);
                Poly img = screening(d, i, p);
                for (const auto& [m, c] : img) REQUIRE(fock::degree(m) == din - 1);
            }
}

TEST_CASE("batched screening context agrees with the direct operator") {
    auto d = build_root_datum('D', 4);
    for (unsigned i = 1; i <= 4; ++i) {
        ScreeningContext ctx(d, i, 4);
        Poly p = poly_add(poly_mul(upoly(d, 1, 1), upoly(d, 4, 3)), upoly(d, 2, 2, 2));
        REQUIRE(ctx.apply(p) == screening(d, i, p));
    }
}

TEST_CASE("invariant polynomial generators") {
    SECTION("A1: single invariant of degree 2") {
        auto d = build_root_datum('A', 1);
        auto inv = invariants::generators(d);
        REQUIRE(inv.size() == 1);
        Monomial y1sq;
        y1sq.bump(1, 2);
        REQUIRE(inv[0].size() == 1);
        REQUIRE(inv[0].at(y1sq) == Cyc::rational(1, d.conductor));
    }
    SECTION("D4: degrees (2,4,4,6) in normal form") {
        auto d = build_root_datum('D', 4);
        auto inv = invariants::generators(d);
        std::vector<unsigned> degs;
        for (const auto& p : inv) degs.push_back(p.begin()->first.total_exponent());
        REQUIRE(degs == std::vector<unsigned>{2, 4, 4, 6});
        for (unsigned i = 1; i <= 4; ++i) {
            // leading coefficient 1, every other monomial of y_1-degree <= m_i - 1
            REQUIRE(inv[i - 1].at(invariants::leading_monomial(d, i)) ==
                    Cyc::rational(1, d.conductor));
            for (const auto& [m, c] : inv[i - 1]) {
                if (m == invariants::leading_monomial(d, i)) continue;
                REQUIRE(m.exponent_of(1) <= d.exponents[i - 1] - 1);
            }
            // full reflection invariance
            for (unsigned j = 1; j <= 4; ++j)
                REQUIRE(invariants::apply_reflection(d, j, inv[i - 1]) == inv[i - 1]);
        }
    }
    SECTION("A2 invariants are Weyl invariant") {
        auto d = build_root_datum('A', 2);
        auto inv = invariants::generators(d);
        for (const auto& p : inv)
            REQUIRE(invariants::is_weyl_invariant(d, p));
    }
    SECTION("E types have no built-in invariants") {
        auto d = build_root_datum('E', 6);
        REQUIRE_THROWS_AS(invariants::generators(d), std::invalid_argument);
    }
}
