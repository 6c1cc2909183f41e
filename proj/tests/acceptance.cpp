// Acceptance suite: runs every top-level requirement at zero tolerance
// (exact field arithmetic throughout) and prints one line per criterion.

#include "wce/selfcheck.hpp"

#include <chrono>
#include <iostream>

using namespace wce;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int criterion, const std::string& name, bool pass, const std::string& detail = "") {
    std::cout << (pass ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << name;
    if (!detail.empty()) std::cout << " - " << detail;
    std::cout << std::endl;
    if (!pass) ++g_failures;
}

Monomial vmono(std::initializer_list<std::pair<unsigned, unsigned>> vs) {
    Monomial m;
    for (auto [i, e] : vs) m.bump(tvar::var(i, 0), e);
    return m;
}

struct D4Run {
    RootDatum datum;
    std::vector<Poly> gens;
    Poly potential;          // genus-0 small phase space, paper coordinates
    bool sweep_clean = true; // no extra nonzero monomial up to degree 35/6
    long long sweep_ms = 0;
};

D4Run solve_d4() {
    D4Run run{build_root_datum('D', 4), {}, {}, true, 0};
    run.gens = w_generators(run.datum, GenStrategy::KernelSolve);
    TauSolver solver(run.datum, run.gens, 35);
    auto t0 = Clock::now();
    // every small-phase-space monomial of degree <= 35/6, genus split afterwards
    for (unsigned a = 0; a <= 35; ++a)
        for (unsigned b = 0; a + 3 * b <= 35; ++b)
            for (unsigned c = 0; a + 3 * b + 3 * c <= 35; ++c)
                for (unsigned e = 0; a + 3 * b + 3 * c + 5 * e <= 35; ++e) {
                    Monomial m;
                    if (a) m.bump(tvar::var(1, 0), a);
                    if (b) m.bump(tvar::var(2, 0), b);
                    if (c) m.bump(tvar::var(3, 0), c);
                    if (e) m.bump(tvar::var(4, 0), e);
                    if (!m.empty()) solver.coeff(m);
                }
    run.sweep_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - t0).count();
    auto logs = log_series(run.datum, solver.snapshot());
    run.potential = frobenius_potential(logs);
    return run;
}

}  // namespace

int main() {
    // ---- criterion 1: D4 potential reproduces the five-term reference ----
    auto d4run = solve_d4();
    {
        const auto& d = d4run.datum;
        Poly want = reference_potential_d4(d);
        auto cmp = compare_potentials(d4run.potential, want, kVNamesForAcceptance());
        report(1, "D4 potential reproduction (exact, no extra monomials to 35/6)",
               cmp.match,
               cmp.match ? ("sweep " + std::to_string(d4run.sweep_ms) + "ms, " +
                            std::to_string(d4run.potential.size()) + " monomials")
                         : cmp.differences.front());
    }

    // ---- criterion 2: Dubrovin and FJRW coordinate forms ----
    {
        const auto& d = d4run.datum;
        bool ok = true;
        std::string detail;
        try {
            Poly dub = dubrovin_form_d4(d, d4run.potential);
            auto c1 = compare_potentials(dub, reference_potential_d4_dubrovin(d),
                                         kVNamesForAcceptance());
            Poly fjrw = fjrw_form_d4(d, d4run.potential);
            auto c2 = compare_potentials(fjrw, reference_potential_d4_fjrw(d),
                                         kFjrwNamesForAcceptance());
            ok = c1.match && c2.match;
            if (!c1.match) detail = "dubrovin: " + c1.differences.front();
            if (!c2.match) detail += " fjrw: " + c2.differences.front();
            if (ok) detail = "54/35 on (v4)^7 and 1/1632960 on t_X2^7 exact";
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        report(2, "coordinate-form checks (Eq. 15 and FJRW)", ok, detail);
    }

    // ---- criterion 3: A1 oracle equivalence ----
    {
        auto d = build_root_datum('A', 1);
        auto gens = w_generators(d, GenStrategy::Builtin);
        auto cal = virasoro_compare(d, gens, 5, 9);
        bool ok = cal.ok;
        std::string detail = cal.message;

        TauSolver solver(d, gens, 9);
        solver.solve_frontier();
        // tau annihilates every L_m on all complete coefficients
        for (int m = -1; m <= 3 && ok; ++m) {
            auto L = virasoro_operator(d, m, 9);
            long long reach = 2 * std::max(m, 0) + 3;
            for (const auto& mp : solver.enumerate_monomials(std::max(0LL, 9 - reach))) {
                Cyc acc = Cyc::rational(0, d.conductor);
                for (const auto& t : L.terms) {
                    if (!t.cre.divides(mp)) continue;
                    Monomial ref = mp.div(t.cre).mul(t.ann);
                    Rational mult = derivative_multiplicity(ref, t.ann);
                    if (mult.is_zero()) continue;
                    acc += t.coeff * solver.stored(ref).scaled(mult);
                }
                if (!acc.is_zero()) {
                    ok = false;
                    detail = "nonzero L_m residual";
                    break;
                }
            }
        }
        // log tau values against the independent recursion
        VirasoroOracle oracle(d, 9);
        for (const auto& m : solver.enumerate_monomials(9))
            if (!(oracle.coeff(m) == solver.stored(m))) {
                ok = false;
                detail = "oracle coefficient mismatch";
                break;
            }
        auto logs = log_series(d, solver.snapshot());
        Monomial c3;
        c3.bump(tvar::var(1, 0), 3);
        Monomial t1;
        t1.bump(tvar::var(1, 1));
        if (!(logs.base.coeffs.at(c3) == Cyc::rational(Rational(1, 6), d.conductor)) ||
            !(logs.base.coeffs.at(t1) == Cyc::rational(Rational(1, 24), d.conductor))) {
            ok = false;
            detail = "log tau values differ from 1/6, 1/24";
        }
        report(3, "A1 Virasoro equivalence (m <= 5, window 9/2, constants included)", ok,
               ok ? "identity calibration, 1/16 matched" : detail);
    }

    // ---- criterion 4: generator verification ----
    {
        auto d = build_root_datum('D', 4);
        std::vector<Poly> raw;
        w_generators(d, GenStrategy::Builtin, &raw);
        bool builtin_ok = true;
        std::vector<unsigned> failing;
        for (unsigned i = 1; i <= 4; ++i)
            if (!verify_in_w(d, raw[i - 1]).in_w) {
                builtin_ok = false;
                failing.push_back(i);
            }
        std::string note;
        if (!builtin_ok) {
            note = "displayed w_";
            for (auto i : failing) note += std::to_string(i);
            note += " fails screening (reported); kernel_solve generators used";
        }
        bool kernel_ok = true;
        std::vector<unsigned> degs;
        for (unsigned i = 1; i <= 4; ++i) {
            kernel_ok = kernel_ok && verify_in_w(d, d4run.gens[i - 1]).in_w;
            degs.push_back(static_cast<unsigned>(fock::max_degree(d4run.gens[i - 1])));
        }
        bool ok = kernel_ok && degs == std::vector<unsigned>{2, 4, 4, 6};
        report(4, "verified generators of degrees 2,4,4,6", ok, note);
    }

    // ---- criterion 5: structural invariant suites ----
    {
        bool ok = true;
        std::string detail;
        for (auto [fam, rk] : {std::pair<char, unsigned>{'A', 1}, {'A', 2}, {'D', 4}}) {
            auto d = build_root_datum(fam, rk);
            for (auto res : {checks::epsilon_laws(d), checks::sigma_order(d),
                             checks::propagator_expansion(d)})
                if (!res.pass) {
                    ok = false;
                    detail = res.name + " (" + std::string(1, fam) + std::to_string(rk) + ")";
                }
        }
        {
            auto d = build_root_datum('D', 4);
            auto im = checks::integer_modes(d, d4run.gens, 2 * static_cast<long long>(d.h));
            if (!im.pass) {
                ok = false;
                detail = im.detail;
            }
            // homogeneity, depth bound and c_{i,m} are hard errors in the
            // operator constructor; building a grid of operators exercises them
            auto lc = checks::leading_coefficients(d, d4run.gens, 3, 3 * d.h);
            if (!lc.pass) {
                ok = false;
                detail = lc.detail;
            }
        }
        report(5, "structural invariants (epsilon, sigma, propagator, modes, c_{i,m})", ok,
               detail);
    }

    // ---- criteria 6 and 7: uniqueness and consistency ----
    {
        auto a1 = build_root_datum('A', 1);
        auto a1g = w_generators(a1, GenStrategy::Builtin);
        TauSolver sa(a1, a1g, 9);
        auto ua = checks::uniqueness(sa);
        auto ca = checks::consistency(sa, 4);

        auto d4 = build_root_datum('D', 4);
        TauSolver sd(d4, d4run.gens, 18);
        auto ud = checks::uniqueness(sd);
        auto cd = checks::consistency(sd, 2);

        report(6, "uniqueness: +1 perturbations always violate a constraint",
               ua.pass && ud.pass, ua.detail + " (A1); " + ud.detail + " (D4)");
        report(7, "consistency: non-pivot and alternative-pivot residuals vanish",
               ca.pass && cd.pass, ca.detail + " (A1); " + cd.detail + " (D4)");
    }

    // ---- criterion 8: genus integrality, WDVV, quasi-homogeneity ----
    {
        bool ok = true;
        std::string detail;
        {
            auto a1 = build_root_datum('A', 1);
            TauSolver s(a1, w_generators(a1, GenStrategy::Builtin), 9);
            auto res = checks::genus_integrality(a1, s);
            if (!res.pass) {
                ok = false;
                detail = "A1 " + res.detail;
            }
        }
        auto a2 = build_root_datum('A', 2);
        auto a2g = w_generators(a2, GenStrategy::KernelSolve);
        TauSolver s2(a2, a2g, 8);
        s2.solve_frontier();
        auto logs2 = log_series(a2, s2.snapshot());
        Poly pot2 = frobenius_potential(logs2);
        std::string why;
        if (!wdvv_check(a2, pot2, &why) || !quasi_homogeneous(a2, pot2)) {
            ok = false;
            detail = "A2 potential: " + why;
        }
        if (!wdvv_check(d4run.datum, d4run.potential, &why) ||
            !quasi_homogeneous(d4run.datum, d4run.potential)) {
            ok = false;
            detail = "D4 potential: " + why;
        }
        report(8, "genus integrality and WDVV/quasi-homogeneity (D4 and A2)", ok, detail);
    }

    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criteria FAILED" << std::endl;
    return 1;
}
