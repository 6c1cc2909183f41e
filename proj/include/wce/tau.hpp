#pragma once

#include "wce/twist.hpp"

namespace wce {

/// Falling-factorial factor picked up by prod d/dt^{(v,a)} acting on M.
inline Rational derivative_multiplicity(const Monomial& m, const Monomial& ann) {
    Rational f(1);
    for (const auto& [v, a] : ann.f) {
        uint32_t e = m.exponent_of(v);
        if (e < a) return Rational(0);
        for (uint32_t j = 0; j < a; ++j) f *= Rational(e - j);
    }
    return f;
}

/// Graded coefficient table of tau (and, derived from it, of F = log tau).
struct TauSeries {
    char family = 'A';
    unsigned rank = 0;
    unsigned h = 0;
    unsigned conductor = 0;
    long long truncation_num = 0;  // degree bound, numerator over h
    std::map<Monomial, Cyc> coeffs;
};

enum class SolveMode { Frontier, GoalDirected };

/// Solves the W-constraints W_{i,m} tau = 0 with tau(0) = 1 by the graded
/// recursion: the pivot factor of each monomial is the one of largest degree
/// (ties: larger i, then larger p), and the corresponding constraint
/// coefficient is solved exactly for coeff(M).
class TauSolver {
  public:
    TauSolver(const RootDatum& d, std::vector<Poly> gens, long long truncation_num)
        : d_(d), gens_(std::move(gens)), trunc_(truncation_num) {
        tau_.emplace(Monomial{}, Cyc::rational(1, d.conductor));
    }

    const RootDatum& datum() const { return d_; }
    long long truncation_num() const { return trunc_; }

    /// Pivot factor (i,p) of a nonempty monomial.
    std::pair<unsigned, unsigned> pivot(const Monomial& m) const {
        long long best = -1;
        unsigned bi = 0, bp = 0;
        for (const auto& [v, e] : m.f) {
            unsigned i = tvar::idx(v), p = tvar::lvl(v);
            long long dn = tvar::deg_num(d_, v);
            if (dn > best || (dn == best && (i > bi || (i == bi && p > bp)))) {
                best = dn;
                bi = i;
                bp = p;
            }
        }
        return {bi, bp};
    }

    /// Optional persistent cache hooks for materialized operators.
    void set_operator_cache(std::function<std::optional<TwistedOperator>(unsigned, unsigned)> load,
                            std::function<void(const TwistedOperator&)> store) {
        op_load_ = std::move(load);
        op_store_ = std::move(store);
    }

    const TwistedOperator& op(unsigned i, unsigned p) {
        auto key = std::make_pair(i, p);
        auto it = ops_.find(key);
        if (it == ops_.end()) {
            if (op_load_) {
                auto cached = op_load_(i, p);
                if (cached && cached->window_cre_num == trunc_ && cached->window_ann_num == trunc_)
                    return ops_.emplace(key, std::move(*cached)).first->second;
            }
            it = ops_.emplace(key, w_operator(d_, gens_, i, p, trunc_, trunc_)).first;
            if (op_store_) op_store_(it->second);
        }
        return it->second;
    }

    /// Demand-driven coefficient computation with memoization.
    const Cyc& coeff(const Monomial& m) {
        auto it = tau_.find(m);
        if (it != tau_.end()) return it->second;
        long long dm = tvar::mono_deg_num(d_, m);
        if (dm > trunc_)
            throw std::invalid_argument("tau coefficient requested beyond the truncation");

        auto [pi, pp] = pivot(m);
        const uint32_t pvar = tvar::var(pi, pp);
        Monomial mp = m;
        mp.strip(pvar, 1);
        const TwistedOperator& W = op(pi, pp);

        Monomial pivot_ann;
        pivot_ann.bump(pvar);

        Cyc acc = Cyc::rational(0, d_.conductor);
        Cyc pivot_coeff = Cyc::rational(0, d_.conductor);
        for_divisors(mp, [&](const Monomial& c) {
            auto idx = W.cre_index.find(c);
            if (idx == W.cre_index.end()) return;
            Monomial base = mp.div(c);
            for (std::size_t t : idx->second) {
                const OpTerm& term = W.tterms[t];
                Monomial ref = base.mul(term.ann);
                long long dref = tvar::mono_deg_num(d_, ref);
                if (ref == m) {
                    if (!(term.cre.empty() && term.ann == pivot_ann))
                        throw std::logic_error("tau solver: non-pivot term references the target");
                    pivot_coeff = term.coeff;
                    continue;
                }
                if (dref >= dm)
                    throw std::logic_error("tau solver: dependency does not descend in degree");
                Rational mult = derivative_multiplicity(ref, term.ann);
                if (mult.is_zero()) continue;
                const Cyc& tv = coeff(ref);
                if (tv.is_zero()) continue;
                acc += term.coeff * tv.scaled(mult);
            }
        });
        if (pivot_coeff.is_zero())
            throw std::logic_error("tau solver: pivot coefficient vanished (Lemma 3.3 violated)");
        Rational mult(m.exponent_of(pvar));
        Cyc value = -(acc / pivot_coeff.scaled(mult));
        auto [ins, fresh] = tau_.emplace(m, std::move(value));
        return ins->second;
    }

    /// Fills every coefficient of degree <= truncation.
    void solve_frontier() {
        for (const auto& m : enumerate_monomials(trunc_)) coeff(m);
    }

    /// All t-monomials with degree numerator <= bound, ascending by (degree, mono).
    std::vector<Monomial> enumerate_monomials(long long bound) const {
        std::vector<uint32_t> vars;
        for (unsigned i = 1; i <= d_.rank; ++i)
            for (unsigned p = 0;; ++p) {
                if (tvar::deg_num(d_, tvar::var(i, p)) > bound) break;
                vars.push_back(tvar::var(i, p));
            }
        std::vector<Monomial> out;
        Monomial cur;
        std::function<void(std::size_t, long long)> rec = [&](std::size_t k, long long left) {
            out.push_back(cur);
            for (std::size_t j = k; j < vars.size(); ++j) {
                long long dn = tvar::deg_num(d_, vars[j]);
                if (dn > left) continue;
                cur.bump(vars[j]);
                rec(j, left - dn);
                cur.strip(vars[j]);
            }
        };
        rec(0, bound);
        std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) {
            long long da = tvar::mono_deg_num(d_, a), db = tvar::mono_deg_num(d_, b);
            if (da != db) return da < db;
            return a < b;
        });
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    /// Residual coefficient [m'] (W tau), using an override for perturbations.
    Cyc residual_coefficient(const TwistedOperator& W, const Monomial& mp,
                             const std::function<Cyc(const Monomial&)>& tau_at) const {
        Cyc acc = Cyc::rational(0, d_.conductor);
        for_divisors(mp, [&](const Monomial& c) {
            auto idx = W.cre_index.find(c);
            if (idx == W.cre_index.end()) return;
            Monomial base = mp.div(c);
            for (std::size_t t : idx->second) {
                const OpTerm& term = W.tterms[t];
                Monomial ref = base.mul(term.ann);
                Rational mult = derivative_multiplicity(ref, term.ann);
                if (mult.is_zero()) continue;
                Cyc tv = tau_at(ref);
                if (tv.is_zero()) continue;
                acc += term.coeff * tv.scaled(mult);
            }
        });
        return acc;
    }

    Cyc stored(const Monomial& m) const {
        auto it = tau_.find(m);
        return it == tau_.end() ? Cyc::rational(0, d_.conductor) : it->second;
    }

    /// Largest m' degree for which [m'] (W_{i,m} tau) only references stored
    /// coefficients when tau is solved through the truncation.
    long long residual_complete_bound(unsigned i, unsigned m) const {
        return trunc_ - (static_cast<long long>(m) * d_.h + d_.exponents[i - 1]);
    }

    TauSeries snapshot() const {
        TauSeries s;
        s.family = d_.family;
        s.rank = d_.rank;
        s.h = d_.h;
        s.conductor = d_.conductor;
        s.truncation_num = trunc_;
        for (const auto& [m, c] : tau_) s.coeffs.emplace(m, c);
        return s;
    }

    template <class F>
    static void for_divisors(const Monomial& m, const F& fn) {
        Monomial cur;
        std::function<void(std::size_t)> rec = [&](std::size_t k) {
            if (k == m.f.size()) {
                fn(cur);
                return;
            }
            auto [v, e] = m.f[k];
            rec(k + 1);
            for (uint32_t j = 1; j <= e; ++j) {
                cur.bump(v);
                rec(k + 1);
            }
            cur.strip(v, e);
        };
        rec(0);
    }

  private:
    const RootDatum& d_;
    std::vector<Poly> gens_;
    long long trunc_;
    std::map<std::pair<unsigned, unsigned>, TwistedOperator> ops_;
    std::unordered_map<Monomial, Cyc, MonomialHash> tau_;
    std::function<std::optional<TwistedOperator>(unsigned, unsigned)> op_load_;
    std::function<void(const TwistedOperator&)> op_store_;
};

/// Genus of a monomial t^{i_1,p_1}...t^{i_k,p_k} by the dimension count
///   g = 1 + [sum_j (p_j + (m_{i_j}-1)/h - 1)] / (3 - chat),  chat = 1 - 2/h.
/// Returns nullopt when the value is not a nonnegative integer.
inline std::optional<long long> genus_of(const RootDatum& d, const Monomial& m) {
    if (m.empty()) return std::nullopt;
    long long num = 0;  // h * sum_j (...)
    for (const auto& [v, e] : m.f) {
        long long per = static_cast<long long>(tvar::lvl(v)) * d.h +
                        (d.exponents[tvar::idx(v) - 1] - 1) - d.h;
        num += per * static_cast<long long>(e);
    }
    long long den = 2 * (static_cast<long long>(d.h) + 1);  // h * (3 - chat)
    if (num % den != 0) return std::nullopt;
    long long g = 1 + num / den;
    if (g < 0) return std::nullopt;
    return g;
}

/// F = log tau on the divisor-closed set of monomials of tau; every monomial
/// must have a well-defined genus.
struct LogSeries {
    TauSeries base;                       // same header fields, F coefficients
    std::map<Monomial, long long> genus;  // per stored monomial
};

inline LogSeries log_series(const RootDatum& d, const TauSeries& tau) {
    if (tau.coeffs.find(Monomial{}) == tau.coeffs.end() ||
        !(tau.coeffs.at(Monomial{}) == Cyc::rational(1, d.conductor)))
        throw std::invalid_argument("log_series: tau(0) must be 1");
    LogSeries out;
    out.base = tau;
    out.base.coeffs.clear();

    std::vector<Monomial> monos;
    for (const auto& [m, c] : tau.coeffs)
        if (!m.empty()) monos.push_back(m);
    std::sort(monos.begin(), monos.end(), [&](const Monomial& a, const Monomial& b) {
        long long da = tvar::mono_deg_num(d, a), db = tvar::mono_deg_num(d, b);
        if (da != db) return da < db;
        return a < b;
    });

    std::map<Monomial, Cyc> F;
    auto tau_at = [&](const Monomial& m) {
        auto it = tau.coeffs.find(m);
        return it == tau.coeffs.end() ? Cyc::rational(0, d.conductor) : it->second;
    };
    for (const auto& m : monos) {
        // mult_m(v) tau(m) = sum_{D <= m, v in D} mult_D(v) F(D) tau(m \ D)
        uint32_t v = m.f.front().first;
        Rational mv(m.exponent_of(v));
        Cyc acc = Cyc::rational(0, d.conductor);
        TauSolver::for_divisors(m, [&](const Monomial& dmono) {
            if (dmono.empty() || dmono == m) return;
            uint32_t dv = dmono.exponent_of(v);
            if (dv == 0) return;
            auto itF = F.find(dmono);
            if (itF == F.end()) return;
            Cyc trest = tau_at(m.div(dmono));
            if (trest.is_zero()) return;
            acc += itF->second * trest.scaled(Rational(dv));
        });
        Cyc fm = tau_at(m) - acc.scaled(Rational(1) / mv);
        if (fm.is_zero()) continue;
        auto g = genus_of(d, m);
        if (!g)
            throw std::logic_error("log_series: occurring monomial has no valid genus");
        F.emplace(m, fm);
        out.genus.emplace(m, *g);
    }
    out.base.coeffs = std::move(F);
    return out;
}

/// Reconstructs tau from F through the same derivation identity; used as the
/// exp(log tau) = tau round-trip check.
inline std::map<Monomial, Cyc> exp_series(const RootDatum& d, const std::map<Monomial, Cyc>& F,
                                          const std::vector<Monomial>& monos_ascending) {
    std::map<Monomial, Cyc> tau;
    tau.emplace(Monomial{}, Cyc::rational(1, d.conductor));
    auto at = [&](const std::map<Monomial, Cyc>& mp, const Monomial& m) {
        auto it = mp.find(m);
        return it == mp.end() ? Cyc::rational(0, d.conductor) : it->second;
    };
    for (const auto& m : monos_ascending) {
        if (m.empty()) continue;
        uint32_t v = m.f.front().first;
        Rational mv(m.exponent_of(v));
        Cyc acc = Cyc::rational(0, d.conductor);
        TauSolver::for_divisors(m, [&](const Monomial& dmono) {
            if (dmono.empty()) return;
            uint32_t dv = dmono.exponent_of(v);
            if (dv == 0) return;
            Cyc f = at(F, dmono);
            if (f.is_zero()) return;
            Cyc trest = at(tau, m.div(dmono));
            if (trest.is_zero()) return;
            acc += f * trest.scaled(Rational(dv));
        });
        Cyc val = acc.scaled(Rational(1) / mv);
        if (!val.is_zero()) tau.emplace(m, val);
    }
    return tau;
}

/// Genus-0 part of F restricted to the small phase space t^{i,p>=1} = 0,
/// as a polynomial in v^i = t^{i,0}.
inline Poly frobenius_potential(const LogSeries& logs) {
    Poly out;
    for (const auto& [m, c] : logs.base.coeffs) {
        bool small = true;
        for (const auto& [v, e] : m.f)
            if (tvar::lvl(v) != 0) small = false;
        if (!small) continue;
        if (logs.genus.at(m) != 0) continue;
        out.emplace(m, c);
    }
    return out;
}

/// WDVV associativity of a genus-0 potential: the metric eta_{ab} =
/// d^3F/dv^1 dv^a dv^b must be constant and nondegenerate, and the algebra
/// c_{ab}^e = eta^{ec} F_{abc} must be associative as a polynomial identity.
inline bool wdvv_check(const RootDatum& d, const Poly& potential, std::string* why = nullptr) {
    const unsigned l = d.rank;
    auto dv = [&](const Poly& p, unsigned a) { return poly_derivative(p, tvar::var(a, 0)); };
    CycLin::Matrix eta(l, std::vector<Cyc>(l, Cyc::rational(0, d.conductor)));
    for (unsigned a = 1; a <= l; ++a)
        for (unsigned b = a; b <= l; ++b) {
            Poly third = dv(dv(dv(potential, 1), a), b);
            if (third.empty()) continue;
            if (third.size() != 1 || !third.begin()->first.empty()) {
                if (why) *why = "metric d3F/dv1 dva dvb is not constant";
                return false;
            }
            eta[a - 1][b - 1] = eta[b - 1][a - 1] = third.begin()->second;
        }
    CycLin::Matrix etainv;
    try {
        etainv = CycLin::inverse(eta);
    } catch (const std::domain_error&) {
        if (why) *why = "metric is degenerate";
        return false;
    }
    // c_{ab}^e as polynomials
    std::vector<std::vector<std::vector<Poly>>> c(
        l, std::vector<std::vector<Poly>>(l, std::vector<Poly>(l)));
    for (unsigned a = 1; a <= l; ++a)
        for (unsigned b = a; b <= l; ++b) {
            std::vector<Poly> third(l);
            for (unsigned e = 1; e <= l; ++e) third[e - 1] = dv(dv(dv(potential, a), b), e);
            for (unsigned e = 1; e <= l; ++e) {
                Poly acc;
                for (unsigned f = 1; f <= l; ++f) {
                    if (etainv[e - 1][f - 1].is_zero()) continue;
                    acc = poly_add(acc, poly_scale(third[f - 1], etainv[e - 1][f - 1]));
                }
                c[a - 1][b - 1][e - 1] = acc;
                c[b - 1][a - 1][e - 1] = c[a - 1][b - 1][e - 1];
            }
        }
    for (unsigned a = 0; a < l; ++a)
        for (unsigned b = 0; b < l; ++b)
            for (unsigned cc = 0; cc < l; ++cc)
                for (unsigned f = 0; f < l; ++f) {
                    Poly lhs, rhs;
                    for (unsigned e = 0; e < l; ++e) {
                        lhs = poly_add(lhs, poly_mul(c[a][b][e], c[e][cc][f]));
                        rhs = poly_add(rhs, poly_mul(c[b][cc][e], c[e][a][f]));
                    }
                    if (!(lhs == rhs)) {
                        if (why) *why = "associativity fails";
                        return false;
                    }
                }
    return true;
}

/// Quasi-homogeneity of the small-phase-space potential: every monomial has
/// weighted degree 3 - chat under deg v^i = 1 - (m_i - 1)/h.
inline bool quasi_homogeneous(const RootDatum& d, const Poly& potential) {
    for (const auto& [m, c] : potential) {
        long long s = 0;
        for (const auto& [v, e] : m.f)
            s += static_cast<long long>(e) * (d.h + 1 - d.exponents[tvar::idx(v) - 1]);
        if (s != 2 * (static_cast<long long>(d.h) + 1)) return false;
    }
    return true;
}

}  // namespace wce
