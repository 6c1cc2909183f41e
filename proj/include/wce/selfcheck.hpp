#pragma once

#include "wce/io.hpp"

namespace wce {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

namespace checks {

/// Taylor coefficients of P^{ij}(lambda+s, lambda) - eta/s^2 by the binomial
/// series: with u = s/lambda, P = eta (1+u)^{-x} (1+xu) / s^2, so the s^k
/// coefficient is eta * a_{k+2} lambda^{-k-2}, a_n = C(-x,n) + x C(-x,n-1).
inline Rational propagator_series_oracle(const RootDatum& d, unsigned i, unsigned k) {
    Rational x(d.exponents[i - 1], d.h);
    return binomial(-x, k + 2) + x * binomial(-x, k + 1);
}

inline CheckResult epsilon_laws(const RootDatum& d) {
    for (const auto& r : d.roots) {
        std::vector<Rational> rr(r.begin(), r.end());
        Rational n2 = d.pair_root(rr, rr);
        if (!(n2 == Rational(2))) return {"epsilon laws", false, "non-root in root set"};
        // (-1)^{|a|^2(|a|^2+1)/2} = -1 for roots
        if (d.epsilon(r, r) != -1) return {"epsilon laws", false, "diagonal law fails on a root"};
    }
    const auto& R = d.roots;
    for (std::size_t i = 0; i < R.size(); i += 2)
        for (std::size_t j = 1; j < R.size(); j += 3) {
            std::vector<long long> sum(d.rank);
            for (unsigned k = 0; k < d.rank; ++k) sum[k] = R[i][k] + R[j][k];
            for (std::size_t k = 0; k < R.size(); k += 5)
                if (d.epsilon(sum, R[k]) != d.epsilon(R[i], R[k]) * d.epsilon(R[j], R[k]))
                    return {"epsilon laws", false, "bimultiplicativity fails"};
        }
    return {"epsilon laws", true, std::to_string(R.size()) + " roots"};
}

inline CheckResult sigma_order(const RootDatum& d) {
    // build_root_datum verifies sigma^h = 1; check minimality over divisors
    auto id = detail::identity_ll(d.rank);
    auto p = id;
    for (unsigned k = 1; k < d.h; ++k) {
        p = detail::mat_mul_ll(d.sigma, p);
        if (d.h % k == 0 && k > 0 && p == id)
            return {"sigma order", false, "order divides " + std::to_string(k)};
    }
    p = detail::mat_mul_ll(d.sigma, p);
    if (!(p == id)) return {"sigma order", false, "sigma^h != 1"};
    return {"sigma order", true, "order exactly h = " + std::to_string(d.h)};
}

inline CheckResult propagator_expansion(const RootDatum& d) {
    for (unsigned i = 1; i <= d.rank; ++i) {
        // no s^{-1} term: a_1 = C(-x,1) + x = 0 identically; verify numerically
        Rational x(d.exponents[i - 1], d.h);
        if (!(binomial(-x, 1) + x).is_zero())
            return {"propagator expansion", false, "s^{-1} term present"};
        for (unsigned k = 0; k <= 10; ++k) {
            Rational oracle = propagator_series_oracle(d, i, k);
            Rational direct = propagator_coeff(d, i, d.dual(i), k);
            if (!(oracle == direct))
                return {"propagator expansion", false,
                        "P_k mismatch at i=" + std::to_string(i) + " k=" + std::to_string(k)};
        }
    }
    return {"propagator expansion", true, "k <= 10, all dual pairs"};
}

/// Every non-integer lambda power of Y^M(w_i, lambda) cancels exactly.
inline CheckResult integer_modes(const RootDatum& d, const std::vector<Poly>& gens,
                                 long long span_num) {
    for (unsigned i = 1; i <= d.rank; ++i) {
        std::map<std::tuple<long long, Monomial, Monomial>, Cyc> acc;
        for (const auto& [mono, coeff] : gens[i - 1]) {
            auto terms = wick_expand(d, mono, coeff, span_num, span_num, -span_num, span_num);
            for (const auto& wt : terms) {
                if (wt.lambda_num % d.h == 0) continue;
                auto key = std::make_tuple(wt.lambda_num, wt.term.cre, wt.term.ann);
                auto it = acc.find(key);
                if (it == acc.end()) {
                    acc.emplace(std::move(key), wt.term.coeff);
                } else {
                    it->second += wt.term.coeff;
                    if (it->second.is_zero()) acc.erase(it);
                }
            }
        }
        if (!acc.empty())
            return {"integer modes", false,
                    "fractional lambda power survives for w_" + std::to_string(i)};
    }
    return {"integer modes", true, "all fractional powers cancel"};
}

inline CheckResult leading_coefficients(const RootDatum& d, const std::vector<Poly>& gens,
                                        unsigned m_max, long long window) {
    for (unsigned i = 1; i <= d.rank; ++i)
        for (unsigned m = 0; m <= m_max; ++m) {
            try {
                // construction enforces homogeneity, the depth bound and c_{i,m}
                auto W = w_operator(d, gens, i, m, window, window);
                (void)W;
            } catch (const std::exception& e) {
                return {"operator structure", false,
                        "W_{" + std::to_string(i) + "," + std::to_string(m) + "}: " + e.what()};
            }
        }
    return {"operator structure", true,
            "homogeneity, depth bound, c_{i,m} for m <= " + std::to_string(m_max)};
}

inline CheckResult consistency(TauSolver& solver, unsigned m_max) {
    const RootDatum& d = solver.datum();
    solver.solve_frontier();
    std::size_t checked = 0;
    for (unsigned i = 1; i <= d.rank; ++i)
        for (unsigned m = 0; m <= m_max; ++m) {
            long long bound = solver.residual_complete_bound(i, m);
            if (bound < 0) continue;
            const auto& W = solver.op(i, m);
            for (const auto& mp : solver.enumerate_monomials(bound)) {
                Cyc r = solver.residual_coefficient(
                    W, mp, [&](const Monomial& x) { return solver.stored(x); });
                if (!r.is_zero())
                    return {"consistency", false,
                            "nonzero residual of W_{" + std::to_string(i) + "," +
                                std::to_string(m) + "}"};
                ++checked;
            }
        }
    return {"consistency", true, std::to_string(checked) + " residual coefficients zero"};
}

inline CheckResult uniqueness(TauSolver& solver) {
    const RootDatum& d = solver.datum();
    solver.solve_frontier();
    auto monos = solver.enumerate_monomials(solver.truncation_num());
    for (const auto& m : monos) {
        if (m.empty()) continue;
        auto [pi, pp] = solver.pivot(m);
        Monomial mp = m;
        mp.strip(tvar::var(pi, pp));
        const auto& W = solver.op(pi, pp);
        Cyc r = solver.residual_coefficient(W, mp, [&](const Monomial& x) {
            Cyc v = solver.stored(x);
            if (x == m) v += Cyc::rational(1, d.conductor);
            return v;
        });
        if (r.is_zero()) return {"uniqueness", false, "undetected +1 perturbation"};
    }
    return {"uniqueness", true,
            std::to_string(monos.size() - 1) + " perturbations each violate a constraint"};
}

inline CheckResult genus_integrality(const RootDatum& d, TauSolver& solver) {
    solver.solve_frontier();
    try {
        auto logs = log_series(d, solver.snapshot());
        long long gmax = 0;
        for (const auto& [m, g] : logs.genus) gmax = std::max(gmax, g);
        return {"genus integrality", true,
                std::to_string(logs.genus.size()) + " monomials, max genus " +
                    std::to_string(gmax)};
    } catch (const std::exception& e) {
        return {"genus integrality", false, e.what()};
    }
}

}  // namespace checks

/// The structural invariant suites behind `selfcheck`; `quick` trims the
/// truncation degrees.
inline std::vector<CheckResult> run_selfcheck(const RootDatum& d, GenStrategy strategy,
                                              bool quick) {
    std::vector<CheckResult> out;
    out.push_back(checks::epsilon_laws(d));
    out.push_back(checks::sigma_order(d));
    out.push_back(checks::propagator_expansion(d));

    std::vector<Poly> gens;
    try {
        gens = w_generators(d, strategy);
        out.push_back({"generators verified", true, strategy_name(strategy)});
    } catch (const std::exception& e) {
        out.push_back({"generators verified", false, e.what()});
        return out;
    }
    for (unsigned i = 1; i <= d.rank; ++i) {
        auto rep = verify_in_w(d, gens[i - 1]);
        if (!rep.in_w) {
            out.push_back({"screening residuals", false, "w_" + std::to_string(i)});
            return out;
        }
    }
    out.push_back({"screening residuals", true, "all generators annihilated"});

    long long span = 2 * static_cast<long long>(d.h);
    out.push_back(checks::integer_modes(d, gens, span));
    out.push_back(checks::leading_coefficients(d, gens, quick ? 2 : 4, 3 * d.h));

    long long trunc = quick ? 2 * static_cast<long long>(d.h) : 3 * static_cast<long long>(d.h);
    TauSolver solver(d, gens, trunc);
    out.push_back(checks::consistency(solver, quick ? 1 : 2));
    out.push_back(checks::uniqueness(solver));
    out.push_back(checks::genus_integrality(d, solver));
    return out;
}

}  // namespace wce
