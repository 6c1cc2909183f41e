#pragma once

#include "wce/wgen.hpp"

#include <unordered_map>

namespace wce {

/// Variables q^{i,p} / t^{i,p} of the twisted module, packed like Fock
/// symbols: (i << 16) | p with p >= 0. deg = p + m_i/h, kept as numerator
/// over h.
namespace tvar {

inline uint32_t var(unsigned i, unsigned p) { return (i << 16) | p; }
inline unsigned idx(uint32_t v) { return v >> 16; }
inline unsigned lvl(uint32_t v) { return v & 0xFFFFu; }

inline long long deg_num(const RootDatum& d, uint32_t v) {
    return static_cast<long long>(lvl(v)) * d.h + d.exponents[idx(v) - 1];
}

inline long long mono_deg_num(const RootDatum& d, const Monomial& m) {
    long long s = 0;
    for (const auto& [v, e] : m.f) s += deg_num(d, v) * e;
    return s;
}

}  // namespace tvar

/// Gamma-function ratios of the twisted bosons:
/// up:   Gamma(x+p+1)/Gamma(x) = x(x+1)...(x+p)
/// down: Gamma(x)/Gamma(x+p)   = 1/(x(x+1)...(x+p-1)), empty product = 1.
enum class GammaDir { Up, Down };

inline Rational gamma_ratio(const Rational& x, unsigned p, GammaDir dir) {
    if (!(Rational(0) < x)) throw std::domain_error("gamma_ratio: x must be positive");
    Rational r = 1;
    if (dir == GammaDir::Up) {
        for (unsigned j = 0; j <= p; ++j) r *= x + Rational(j);
    } else {
        for (unsigned j = 0; j < p; ++j) r *= x + Rational(j);
        r = Rational(1) / r;
    }
    return r;
}

/// Coefficient of lambda^{-k-2} in P^{ij}_k(lambda), an exact rational
/// multiple of eta_{ij}.
inline Rational propagator_coeff(const RootDatum& d, unsigned i, unsigned j, unsigned k) {
    if (d.eta(i, j) == 0) return Rational(0);
    Rational x(d.exponents[i - 1], d.h);
    Rational num = gamma_ratio(x, k, GammaDir::Up);  // Gamma(x+k+1)/Gamma(x)
    Rational denom = Rational(factorial(k), Integer(1)) * Rational(k + 2);
    Rational sign = (k % 2 == 0) ? Rational(1) : Rational(-1);
    return sign * (Rational(1) - x) * num / denom;
}

/// Regularized two-point contraction of derivative fields on the diagonal:
/// the coefficient of lambda^{-(k1+k2+2)} in
///   <d^(k1) Y^M(phi^{b1} t^-1, mu) d^(k2) Y^M(phi^{b2} t^-1, lambda)> - singular part,
/// at mu = lambda. Symmetric under swapping (b1,k1) <-> (b2,k2); reduces to
/// the Taylor coefficient P_{k1} when k2 = 0.
inline Rational contraction_coeff(const RootDatum& d, unsigned b1, unsigned k1, unsigned b2,
                                  unsigned k2) {
    if (d.eta(b1, b2) == 0) return Rational(0);
    Rational acc(0);
    for (unsigned k = k1; k <= k1 + k2; ++k) {
        unsigned a = k1 + k2 - k;
        Rational term = binomial(Rational(k), k1) * propagator_coeff(d, b1, b2, k);
        term *= binomial(Rational(-static_cast<long long>(k) - 2), a);  // d^(a)/a! of lambda^{-k-2}
        if ((k - k1) % 2 == 1) term = -term;
        acc += term;
    }
    return acc;
}

/// One normal-ordered summand of a twisted operator: coeff * prod(creations)
/// * prod(annihilations), variables tvar-packed. In q-form creations multiply
/// by q^{i,p}; in t-form (after the dilaton shift) they multiply by t^{i,p}.
struct OpTerm {
    Cyc coeff;
    Monomial cre;
    Monomial ann;
};

struct WickTerm {
    long long lambda_num;  // lambda exponent, numerator over h
    OpTerm term;
};

namespace twist_detail {

struct Position {
    unsigned b;
    unsigned k;  // field is d^(k) Y^M(phi^b t^-1, lambda), from u[b, k+1]
};

/// All partial pairings (disjoint unordered pairs) of r positions.
template <class Emit>
inline void enumerate_pairings(unsigned r, std::vector<bool>& used,
                               std::vector<std::pair<unsigned, unsigned>>& cur, const Emit& emit) {
    unsigned first = r;
    for (unsigned i = 0; i < r; ++i)
        if (!used[i]) {
            first = i;
            break;
        }
    if (first == r) {
        emit(cur);
        return;
    }
    used[first] = true;
    enumerate_pairings(r, used, cur, emit);  // leave `first` uncontracted
    for (unsigned j = first + 1; j < r; ++j) {
        if (used[j]) continue;
        used[j] = true;
        cur.emplace_back(first, j);
        enumerate_pairings(r, used, cur, emit);
        cur.pop_back();
        used[j] = false;
    }
    used[first] = false;
}

}  // namespace twist_detail

/// Wick expansion of Y^M(a, lambda) for one Fock monomial: every term with
/// creation degree <= cre_max_num, annihilation degree <= ann_max_num and
/// lambda exponent within [lambda_lo, lambda_hi] (numerators over h).
inline std::vector<WickTerm> wick_expand(const RootDatum& d, const Monomial& fock_mono,
                                         const Cyc& mono_coeff, long long cre_max_num,
                                         long long ann_max_num, long long lambda_lo,
                                         long long lambda_hi) {
    using twist_detail::Position;
    std::vector<Position> pos;
    for (const auto& [v, e] : fock_mono.f)
        for (unsigned c = 0; c < e; ++c) pos.push_back({fock::var_j(v), fock::var_n(v) - 1});
    const unsigned r = static_cast<unsigned>(pos.size());
    const long long h = d.h;

    std::vector<WickTerm> out;

    struct Mode {
        bool creation;
        unsigned var_i, var_p;
        Rational coeff;
    };

    auto process_pairing = [&](const std::vector<std::pair<unsigned, unsigned>>& pairs) {
        Rational cfac(1);
        long long lam0 = 0;
        for (const auto& [i, j] : pairs) {
            Rational c = contraction_coeff(d, pos[i].b, pos[i].k, pos[j].b, pos[j].k);
            if (c.is_zero()) return;
            cfac *= c;
            lam0 -= (static_cast<long long>(pos[i].k) + pos[j].k + 2) * h;
        }
        std::vector<unsigned> free_pos;
        {
            std::vector<bool> inpair(r, false);
            for (const auto& [i, j] : pairs) inpair[i] = inpair[j] = true;
            for (unsigned i = 0; i < r; ++i)
                if (!inpair[i]) free_pos.push_back(i);
        }

        std::vector<Mode> chosen(free_pos.size());
        // suffix sums of (1+k)h over free positions, for pruning
        std::vector<long long> suffix_base(free_pos.size() + 1, 0);
        for (std::size_t t = free_pos.size(); t-- > 0;)
            suffix_base[t] = suffix_base[t + 1] - (1 + static_cast<long long>(pos[free_pos[t]].k)) * h;

        std::function<void(std::size_t, long long, long long, long long)> rec =
            [&](std::size_t t, long long lam, long long cre_deg, long long ann_deg) {
                if (t == free_pos.size()) {
                    if (lam < lambda_lo || lam > lambda_hi) return;
                    OpTerm term;
                    Rational c = cfac;
                    for (const auto& mode : chosen) {
                        c *= mode.coeff;
                        if (mode.creation)
                            term.cre.bump(tvar::var(mode.var_i, mode.var_p));
                        else
                            term.ann.bump(tvar::var(mode.var_i, mode.var_p));
                    }
                    term.coeff = mono_coeff.scaled(c);
                    if (term.coeff.is_zero()) return;
                    out.push_back({lam, std::move(term)});
                    return;
                }
                // remaining positions move lambda by suffix_base plus modes in
                // [-(cre room), +(ann room)] -- prune outside the target band
                auto feasible = [&](long long lam_next, long long cre_next, long long ann_next) {
                    long long lo = lam_next + suffix_base[t + 1] - (ann_max_num - ann_next);
                    long long hi = lam_next + suffix_base[t + 1] + (cre_max_num - cre_next);
                    return !(lambda_hi < lo || hi < lambda_lo);
                };
                const Position& P = pos[free_pos[t]];
                const unsigned kl = P.k;
                {
                    // annihilators d/dq^{b,p}: mode nu = p + m_b/h
                    unsigned b = P.b;
                    Rational x(d.exponents[b - 1], static_cast<long long>(h));
                    for (unsigned p = 0;; ++p) {
                        long long dn = static_cast<long long>(p) * h + d.exponents[b - 1];
                        if (ann_deg + dn > ann_max_num) break;
                        Rational nu(dn, h);
                        Rational coeff =
                            gamma_ratio(x, p, GammaDir::Up) * binomial(-nu - Rational(1), kl);
                        long long lamc = -dn - (1 + static_cast<long long>(kl)) * h;
                        chosen[t] = {false, b, p, coeff};
                        if (feasible(lam + lamc, cre_deg, ann_deg + dn))
                            rec(t + 1, lam + lamc, cre_deg, ann_deg + dn);
                    }
                }
                {
                    // creators q^{b*,p}: mode nu = -(p + m_{b*}/h)
                    unsigned bs = d.dual(P.b);
                    Rational x(d.exponents[bs - 1], static_cast<long long>(h));
                    for (unsigned p = 0;; ++p) {
                        long long dn = static_cast<long long>(p) * h + d.exponents[bs - 1];
                        if (cre_deg + dn > cre_max_num) break;
                        Rational nu(-dn, h);
                        Rational coeff =
                            gamma_ratio(x, p, GammaDir::Down) * binomial(-nu - Rational(1), kl);
                        long long lamc = dn - (1 + static_cast<long long>(kl)) * h;
                        chosen[t] = {true, bs, p, coeff};
                        if (feasible(lam + lamc, cre_deg + dn, ann_deg))
                            rec(t + 1, lam + lamc, cre_deg + dn, ann_deg);
                    }
                }
            };
        rec(0, lam0, 0, 0);
    };

    std::vector<bool> used(r, false);
    std::vector<std::pair<unsigned, unsigned>> cur;
    twist_detail::enumerate_pairings(r, used, cur, process_pairing);
    return out;
}

/// W_{i,m} materialized on a window: all normal-ordered terms acting within
/// creation degree <= window_cre_num and annihilation degree <= window_ann_num
/// (numerators over h). qterms keep the unshifted variables q^{i,p}; tterms
/// carry the dilaton-shifted form with q^{1,1} expanded as t^{1,1} - 1.
struct TwistedOperator {
    unsigned gen_index = 0;
    unsigned mode = 0;
    long long window_cre_num = 0;
    long long window_ann_num = 0;
    std::vector<OpTerm> qterms;
    std::vector<OpTerm> tterms;
    Cyc c_leading;
    std::unordered_map<Monomial, std::vector<std::size_t>, MonomialHash> cre_index;  // on tterms

    void build_index() {
        cre_index.clear();
        for (std::size_t t = 0; t < tterms.size(); ++t) cre_index[tterms[t].cre].push_back(t);
    }
};

namespace twist_detail {

inline void merge_term(std::map<std::pair<Monomial, Monomial>, Cyc>& acc, const OpTerm& t) {
    auto key = std::make_pair(t.cre, t.ann);
    auto it = acc.find(key);
    if (it == acc.end()) {
        acc.emplace(std::move(key), t.coeff);
        return;
    }
    it->second += t.coeff;
    if (it->second.is_zero()) acc.erase(it);
}

}  // namespace twist_detail

/// Res_{lambda=0} lambda^m Y^M(w_i, lambda) on the given window, with the
/// dilaton shift applied and the Lemma 3.3 leading data verified:
/// the depth-m_i piece must be exactly c_{i,m} d/dt^{i,m} with
/// c_{i,m} = h^{m_i} Gamma(m_i/h+m+1)/Gamma(m_i/h).
inline TwistedOperator w_operator(const RootDatum& d, const std::vector<Poly>& gens, unsigned i,
                                  unsigned m, long long window_cre_num, long long window_ann_num) {
    const Poly& w = gens.at(i - 1);
    const unsigned mi = d.exponents[i - 1];
    const long long target = -(static_cast<long long>(m) + 1) * d.h;
    const long long pivot_deg = static_cast<long long>(m) * d.h + mi;

    // the dilaton shift can consume up to m_i powers of q^{1,1}; widen the
    // creation window accordingly before shifting, and make sure the leading
    // d/dt^{i,m} term is inside the enumeration even for narrow windows
    long long qcre_max =
        std::max(window_cre_num, static_cast<long long>(mi) * (d.h + 1)) +
        static_cast<long long>(mi) * (d.h + 1);
    long long qann_max = std::max(window_ann_num, pivot_deg);

    Monomial lead_cre, lead_ann;
    lead_cre.bump(tvar::var(1, 1), mi);
    lead_ann.bump(tvar::var(i, m));

    std::map<std::pair<Monomial, Monomial>, Cyc> qacc;
    for (const auto& [mono, coeff] : w) {
        auto terms = wick_expand(d, mono, coeff, qcre_max, qann_max, target, target);
        for (auto& wt : terms) {
            // keep window terms plus the leading term itself
            if (tvar::mono_deg_num(d, wt.term.ann) > window_ann_num &&
                !(wt.term.cre == lead_cre && wt.term.ann == lead_ann))
                continue;
            twist_detail::merge_term(qacc, wt.term);
        }
    }

    TwistedOperator op;
    op.gen_index = i;
    op.mode = m;
    op.window_cre_num = window_cre_num;
    op.window_ann_num = window_ann_num;

    const long long homo = static_cast<long long>(mi) * d.h - static_cast<long long>(m) * d.h;
    const uint32_t q11 = tvar::var(1, 1);
    for (auto& [key, coeff] : qacc) {
        OpTerm t{coeff, key.first, key.second};
        // unshifted homogeneity (Lemma 3.1): deg cre - deg ann = m_i - m
        if (tvar::mono_deg_num(d, t.cre) - tvar::mono_deg_num(d, t.ann) != homo)
            throw std::logic_error("twisted operator term violates homogeneity");
        if (t.cre.exponent_of(q11) > mi)
            throw std::logic_error("twisted operator exceeds the dilaton depth bound");
        op.qterms.push_back(t);
    }

    // leading piece: the unique term with (q^{1,1})^{m_i} creations
    {
        bool found = false;
        Monomial want_cre;
        want_cre.bump(q11, mi);
        Monomial want_ann;
        want_ann.bump(tvar::var(i, m));
        for (const auto& t : op.qterms) {
            if (t.cre.exponent_of(q11) != mi) continue;
            if (!(t.cre == want_cre) || !(t.ann == want_ann))
                throw std::logic_error("depth-m_i piece is not a pure d/dt^{i,m} term");
            op.c_leading = t.coeff;
            found = true;
        }
        Rational expect = gamma_ratio(Rational(mi, d.h), m, GammaDir::Up);
        for (unsigned j = 0; j < mi; ++j) expect *= Rational(d.h);
        if (!found || op.c_leading != Cyc::rational(expect, d.conductor))
            throw std::logic_error("leading coefficient c_{i,m} missing or unexpected");
    }

    // dilaton shift: q^{1,1} = t^{1,1} - 1, all other q^{i,p} = t^{i,p}
    std::map<std::pair<Monomial, Monomial>, Cyc> tacc;
    for (const auto& t : op.qterms) {
        unsigned dep = t.cre.exponent_of(q11);
        if (dep == 0) {
            if (tvar::mono_deg_num(d, t.cre) <= window_cre_num)
                twist_detail::merge_term(tacc, t);
            continue;
        }
        Monomial base = t.cre;
        base.strip(q11, dep);
        for (unsigned j = 0; j <= dep; ++j) {
            Monomial cre = base;
            if (j) cre.bump(q11, j);
            if (tvar::mono_deg_num(d, cre) > window_cre_num) continue;
            Rational c = binomial(Rational(dep), j);
            if ((dep - j) % 2 == 1) c = -c;
            twist_detail::merge_term(tacc, OpTerm{t.coeff.scaled(c), cre, t.ann});
        }
    }
    for (auto& [key, coeff] : tacc) op.tterms.push_back(OpTerm{coeff, key.first, key.second});
    op.build_index();
    return op;
}

}  // namespace wce
