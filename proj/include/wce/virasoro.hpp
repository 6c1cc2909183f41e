#pragma once

#include "wce/tau.hpp"

namespace wce {

/// Closed-form Virasoro operators of the A_1 theory in the variables
/// t^p = t^{1,p} (same packed encoding), with the dilaton shift at p = 1:
///   L_{-1} = sum t^{p+1} d_p + (t^0)^2/2 - d_0
///   L_m    = 1/2 sum_{p+q=m-1} (2p+1)!!(2q+1)!!/2^{m+1} d_p d_q
///          + sum_p (2p+2m+1)!!/(2^{m+1}(2p-1)!!) (t^p - delta_{p,1}) d_{p+m}
///          + delta_{m,0}/16.
struct VirasoroOperator {
    int m = 0;
    std::vector<OpTerm> terms;
};

inline Rational virasoro_cm(int m) {
    // c_m = (2m+3)!!/2^{m+1}, the coefficient of d/dt^{m+1}
    Rational num(double_factorial(2 * m + 3), Integer(1));
    Integer den = Integer(1) << (m + 1);
    return num / Rational(den, Integer(1));
}

inline VirasoroOperator virasoro_operator(const RootDatum& d, int m, long long window_num) {
    if (m < -1) throw std::invalid_argument("virasoro_operator: m >= -1");
    const unsigned N = d.conductor;
    auto tv = [](unsigned p) { return tvar::var(1, p); };
    auto deg = [&](unsigned p) { return static_cast<long long>(2 * p + 1); };  // h = 2
    VirasoroOperator L;
    L.m = m;
    auto push = [&](const Rational& c, const Monomial& cre, const Monomial& ann) {
        if (c.is_zero()) return;
        L.terms.push_back(OpTerm{Cyc::rational(c, N), cre, ann});
    };
    if (m == -1) {
        for (unsigned p = 0; deg(p) <= window_num; ++p) {
            if (deg(p + 1) > window_num) break;
            Monomial cre, ann;
            cre.bump(tv(p + 1));
            ann.bump(tv(p));
            push(Rational(1), cre, ann);
        }
        Monomial sq;
        sq.bump(tv(0), 2);
        push(Rational(1, 2), sq, Monomial{});
        Monomial d0;
        d0.bump(tv(0));
        push(Rational(-1), Monomial{}, d0);
        return L;
    }
    Integer two_m1 = Integer(1) << (m + 1);
    for (int p = 0; p + p <= m - 1; ++p) {
        int q = m - 1 - p;
        Rational x(double_factorial(2 * p + 1) * double_factorial(2 * q + 1), two_m1);
        if (p == q) x /= Rational(2);
        Monomial ann;
        ann.bump(tv(p));
        ann.bump(tv(q));
        push(x, Monomial{}, ann);
    }
    for (unsigned p = 0; deg(p + m) <= window_num; ++p) {
        Rational b = Rational(double_factorial(2 * static_cast<int>(p) + 2 * m + 1), two_m1) /
                     Rational(double_factorial(2 * static_cast<int>(p) - 1), Integer(1));
        Monomial cre, ann;
        cre.bump(tv(p));
        ann.bump(tv(p + m));
        if (deg(p) <= window_num) push(b, cre, ann);
    }
    {
        // dilaton pivot -c_m d/dt^{m+1}, kept regardless of the window
        Rational b = Rational(double_factorial(2 * m + 3), two_m1);
        Monomial ann;
        ann.bump(tv(1 + m));
        push(-b, Monomial{}, ann);
    }
    if (m == 0) push(Rational(1, 16), Monomial{}, Monomial{});
    return L;
}

/// Independent A_1 oracle: solves the Virasoro constraints L_m tau = 0
/// directly from the closed-form operators by the Eq.-(3) recursion (the
/// p_k - 1 constraint determines each coefficient). No vertex-algebra code
/// is involved.
class VirasoroOracle {
  public:
    VirasoroOracle(const RootDatum& d, long long truncation_num) : d_(d), trunc_(truncation_num) {
        if (d.family != 'A' || d.rank != 1)
            throw std::invalid_argument("VirasoroOracle requires A1");
        tau_.emplace(Monomial{}, Cyc::rational(1, d_.conductor));
    }

    const Cyc& coeff(const Monomial& m) {
        auto it = tau_.find(m);
        if (it != tau_.end()) return it->second;
        unsigned pk = 0;
        for (const auto& [v, e] : m.f) pk = std::max(pk, tvar::lvl(v));
        int lm = static_cast<int>(pk) - 1;
        const VirasoroOperator& L = op(lm);
        Monomial mp = m;
        mp.strip(tvar::var(1, pk));
        long long dm = tvar::mono_deg_num(d_, m);

        Cyc acc = Cyc::rational(0, d_.conductor);
        Cyc pivot = Cyc::rational(0, d_.conductor);
        Monomial pivot_ann;
        pivot_ann.bump(tvar::var(1, pk));
        for (const OpTerm& t : L.terms) {
            if (!t.cre.divides(mp)) continue;
            Monomial ref = mp.div(t.cre).mul(t.ann);
            if (ref == m) {
                if (!(t.cre.empty() && t.ann == pivot_ann))
                    throw std::logic_error("virasoro oracle: unexpected self reference");
                pivot = t.coeff;
                continue;
            }
            if (tvar::mono_deg_num(d_, ref) >= dm)
                throw std::logic_error("virasoro oracle: recursion does not descend");
            Rational mult = derivative_multiplicity(ref, t.ann);
            if (mult.is_zero()) continue;
            const Cyc& tv = coeff(ref);
            if (tv.is_zero()) continue;
            acc += t.coeff * tv.scaled(mult);
        }
        if (pivot.is_zero()) throw std::logic_error("virasoro oracle: pivot vanished");
        Cyc value = -(acc / pivot.scaled(Rational(m.exponent_of(tvar::var(1, pk)))));
        return tau_.emplace(m, std::move(value)).first->second;
    }

    std::map<Monomial, Cyc> table() const {
        return {tau_.begin(), tau_.end()};
    }

  private:
    const VirasoroOperator& op(int m) {
        auto it = ops_.find(m);
        if (it == ops_.end()) it = ops_.emplace(m, virasoro_operator(d_, m, trunc_)).first;
        return it->second;
    }

    const RootDatum& d_;
    long long trunc_;
    std::map<int, VirasoroOperator> ops_;
    std::unordered_map<Monomial, Cyc, MonomialHash> tau_;
};

/// Result of matching the vertex-constructed W_{1,m} against the closed-form
/// L_{m-1}: a diagonal variable rescaling t^p = gamma_p t^{1,p} and per-
/// operator scalars rho_m with rho_m W_{1,m} = L_{m-1} term by term.
struct CalibrationReport {
    bool ok = false;
    std::vector<Rational> gamma;  // per p
    std::vector<Rational> rho;    // per m, m = 0..M
    std::string message;
};

inline std::optional<Rational> rational_cbrt(const Rational& r) {
    auto icbrt = [](Integer v) -> std::optional<Integer> {
        bool neg = v < 0;
        if (neg) v = -v;
        Integer lo = 0, hi = 1;
        while (hi * hi * hi < v) hi <<= 1;
        while (lo < hi) {
            Integer mid = (lo + hi) / 2;
            if (mid * mid * mid < v)
                lo = mid + 1;
            else
                hi = mid;
        }
        if (lo * lo * lo != v) return std::nullopt;
        return neg ? -lo : lo;
    };
    auto n = icbrt(rat_num(r)), d = icbrt(rat_den(r));
    if (!n || !d) return std::nullopt;
    return Rational(*n, *d);
}

/// Computes gamma and rho from the m = 0 operator pair (pure-derivative,
/// quadratic and chain terms), then verifies every term of every pair,
/// constants included.
inline CalibrationReport virasoro_compare(const RootDatum& d, const std::vector<Poly>& gens,
                                          unsigned m_max, long long window_num) {
    CalibrationReport rep;
    if (d.family != 'A' || d.rank != 1) {
        rep.message = "calibration requires A1";
        return rep;
    }
    // the gamma chain must reach p = max(window, m_max)
    long long wide = std::max<long long>(window_num, 2 * static_cast<long long>(m_max) + 1);
    std::map<unsigned, TwistedOperator> wops;
    for (unsigned m = 0; m <= m_max; ++m) wops.emplace(m, w_operator(d, gens, 1, m, wide, wide));
    auto rational_of = [](const Cyc& c) {
        if (!c.is_rational()) throw std::logic_error("calibration: non-rational coefficient");
        return c.rational_value();
    };
    auto term_map = [](const std::vector<OpTerm>& terms) {
        std::map<std::pair<Monomial, Monomial>, Cyc> m;
        for (const auto& t : terms) m.emplace(std::make_pair(t.cre, t.ann), t.coeff);
        return m;
    };

    unsigned pmax = static_cast<unsigned>((wide - 1) / 2);
    rep.gamma.assign(pmax + 1, Rational(0));
    rep.rho.assign(m_max + 1, Rational(0));

    auto key1 = [](unsigned p) {  // (empty, d_p)
        Monomial ann;
        ann.bump(tvar::var(1, p));
        return std::make_pair(Monomial{}, ann);
    };

    const auto& W0 = wops.at(0);
    auto w0 = term_map(W0.tterms);
    auto l0 = term_map(virasoro_operator(d, -1, wide).terms);
    try {
        // rho_0 / gamma_0 and rho_0 * gamma_0^2 pin gamma_0^3
        Rational wd = rational_of(w0.at(key1(0)));
        Rational ld = rational_of(l0.at(key1(0)));
        Monomial sq;
        sq.bump(tvar::var(1, 0), 2);
        Rational wq = rational_of(w0.at(std::make_pair(sq, Monomial{})));
        Rational lq = rational_of(l0.at(std::make_pair(sq, Monomial{})));
        // rho0 * wd / g0 = ld ; rho0 * wq * g0^2 = lq
        auto g03 = (lq * wd) / (wq * ld);
        auto g0 = rational_cbrt(g03);
        if (!g0) {
            rep.message = "gamma_0^3 is not a rational cube";
            return rep;
        }
        rep.gamma[0] = *g0;
        rep.rho[0] = ld * *g0 / wd;
        for (unsigned p = 0; p + 1 <= pmax; ++p) {
            // chain term t^{p+1} d_p
            Monomial cre;
            cre.bump(tvar::var(1, p + 1));
            Monomial ann;
            ann.bump(tvar::var(1, p));
            auto k = std::make_pair(cre, ann);
            Rational wc = rational_of(w0.at(k)), lc = rational_of(l0.at(k));
            // rho0 * wc * g_{p+1} / g_p = lc
            rep.gamma[p + 1] = lc * rep.gamma[p] / (rep.rho[0] * wc);
        }
        for (unsigned m = 1; m <= m_max; ++m) {
            auto wm = term_map(wops.at(m).tterms);
            Rational wd_m = rational_of(wm.at(key1(m)));
            Rational ld_m = rational_of(
                term_map(virasoro_operator(d, static_cast<int>(m) - 1, wide).terms).at(key1(m)));
            rep.rho[m] = ld_m * rep.gamma[m] / wd_m;
        }
    } catch (const std::out_of_range&) {
        rep.message = "expected single-derivative term missing";
        return rep;
    }

    // verify every term of every operator pair
    for (unsigned m = 0; m <= m_max; ++m) {
        auto wm = term_map(wops.at(m).tterms);
        auto lm = term_map(virasoro_operator(d, static_cast<int>(m) - 1, wide).terms);
        for (const auto& [key, lc] : lm) {
            auto it = wm.find(key);
            if (it == wm.end()) {
                rep.message = "L term missing from W_{1," + std::to_string(m) + "}";
                return rep;
            }
            Rational scale = rep.rho[m];
            for (const auto& [v, e] : key.first.f)
                for (unsigned j = 0; j < e; ++j) scale *= rep.gamma[tvar::lvl(v)];
            for (const auto& [v, e] : key.second.f)
                for (unsigned j = 0; j < e; ++j) scale /= rep.gamma[tvar::lvl(v)];
            if (!(it->second.scaled(scale) == lc)) {
                rep.message = "coefficient mismatch at W_{1," + std::to_string(m) + "}";
                return rep;
            }
        }
        for (const auto& [key, wc] : wm) {
            if (lm.find(key) == lm.end()) {
                // terms acting outside the L window are fine; anything whose
                // annihilator fits the window must match
                if (tvar::mono_deg_num(d, key.second) <= wide &&
                    tvar::mono_deg_num(d, key.first) <= wide) {
                    rep.message = "extra W term in W_{1," + std::to_string(m) + "}";
                    return rep;
                }
            }
        }
    }
    rep.ok = true;
    rep.message = "calibrated";
    return rep;
}

}  // namespace wce
