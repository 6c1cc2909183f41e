#pragma once

#include "wce/poly.hpp"
#include "wce/rootdata.hpp"

namespace wce {

/// Symbols u[j,n] = phi^j t^{-n} of the bosonic Fock space, packed as
/// variable ids (j in 1..rank, n >= 1). deg u[j,n] = n.
namespace fock {

inline uint32_t var(unsigned j, unsigned n) { return (j << 16) | n; }
inline unsigned var_j(uint32_t v) { return v >> 16; }
inline unsigned var_n(uint32_t v) { return v & 0xFFFFu; }

inline long long degree(const Monomial& m) {
    long long d = 0;
    for (const auto& [v, e] : m.f) d += static_cast<long long>(var_n(v)) * e;
    return d;
}

inline long long max_degree(const Poly& p) {
    long long d = 0;
    for (const auto& [m, c] : p) d = std::max(d, degree(m));
    return d;
}

/// sigma-weight sum m_{j_1} + ... mod h; integer-mode elements have weight 0.
inline unsigned weight(const RootDatum& d, const Monomial& m) {
    unsigned w = 0;
    for (const auto& [v, e] : m.f) w = (w + d.exponents[var_j(v) - 1] * e) % d.h;
    return w;
}

}  // namespace fock

/// Element s (x) e^charge of the lattice vertex algebra V_Q.
struct LatticeState {
    Poly fockpart;
    Basis charge_basis = Basis::Root;
    std::vector<long long> charge;
};

/// beta t^{-n} as a multiplication element, beta given in eigen-coordinates.
inline Poly boson_creation_element(const RootDatum& d, const std::vector<Cyc>& b, unsigned n) {
    Poly p;
    for (unsigned k = 1; k <= d.rank; ++k) {
        if (b[k - 1].is_zero()) continue;
        Monomial m;
        m.bump(fock::var(k, n));
        p.emplace(m, b[k - 1]);
    }
    return p;
}

/// Derivation action of beta t^{+n} (n >= 1): [beta t^n, u[k,n]] = n (beta|phi^k).
inline Poly boson_annihilate(const RootDatum& d, const std::vector<Cyc>& b, unsigned n,
                             const Poly& s) {
    Poly out;
    for (const auto& [m, c] : s) {
        for (const auto& [v, e] : m.f) {
            if (fock::var_n(v) != n) continue;
            unsigned k = fock::var_j(v);
            const Cyc& pairing = b[d.dual(k) - 1];  // (beta|phi^k)
            if (pairing.is_zero()) continue;
            Monomial q = m;
            q.strip(v, 1);
            poly_add_term(out, q, c * pairing.scaled(Rational(e) * Rational(n)));
        }
    }
    return out;
}

/// Action of phi t^m on a state per the module rules: multiplication for
/// m < 0, derivation for m > 0, the scalar (phi|charge) for m = 0.
inline LatticeState heisenberg_act(const RootDatum& d, const std::vector<Cyc>& b, int m,
                                   const LatticeState& x) {
    LatticeState out{{}, x.charge_basis, x.charge};
    if (m < 0) {
        out.fockpart = poly_mul(boson_creation_element(d, b, static_cast<unsigned>(-m)), x.fockpart);
    } else if (m > 0) {
        out.fockpart = boson_annihilate(d, b, static_cast<unsigned>(m), x.fockpart);
    } else {
        LatticeVector gamma{x.charge_basis, {}};
        gamma.coords.assign(x.charge.begin(), x.charge.end());
        auto gy = d.eigen_coords(gamma);
        Cyc s = d.pair_eigen(b, gy);
        out.fockpart = poly_scale(x.fockpart, s);
    }
    return out;
}

namespace detail {

/// Degree-e coefficients of exp(sum_{n>=1} (beta t^{-n}) z^n / n), e = 0..emax.
inline std::vector<Poly> creation_exponential(const RootDatum& d, const std::vector<Cyc>& b,
                                              unsigned emax) {
    std::vector<Poly> s(emax + 1);
    s[0] = poly_one(d.conductor);
    for (unsigned e = 1; e <= emax; ++e) {
        Poly acc;
        for (unsigned n = 1; n <= e; ++n) {
            // n * (beta t^{-n})/n = beta t^{-n}
            acc = poly_add(acc, poly_mul(boson_creation_element(d, b, n), s[e - n]));
        }
        s[e] = poly_scale(acc, Cyc::rational(Rational(1, e), d.conductor));
    }
    return s;
}

/// Degree-d parts of exp(sum_{n>=1} (beta t^{n}) z^{-n} / (-n)) applied to s.
inline std::vector<Poly> annihilation_exponential(const RootDatum& d, const std::vector<Cyc>& b,
                                                  const Poly& s, unsigned dmax) {
    std::vector<Poly> out(dmax + 1);
    out[0] = s;
    for (unsigned k = 1; k <= dmax; ++k) {
        Poly acc;
        for (unsigned n = 1; n <= k; ++n)
            acc = poly_add(acc, boson_annihilate(d, b, n, out[k - n]));
        out[k] = poly_scale(acc, Cyc::rational(Rational(-1, k), d.conductor));
    }
    return out;
}

}  // namespace detail

/// The vertex-operator mode e^beta_(n), i.e. the z^{-n-1} coefficient of
/// Y_beta(z) = e^beta z^beta exp(+) exp(-), applied to a lattice state.
inline LatticeState vertex_mode(const RootDatum& d, const LatticeVector& beta, int n,
                                const LatticeState& x) {
    if (!beta.is_integral()) throw std::invalid_argument("vertex_mode: beta must be integral");
    std::vector<long long> bi(beta.coords.size());
    for (std::size_t i = 0; i < bi.size(); ++i) bi[i] = rat_num(beta.coords[i]).convert_to<long long>();

    Basis cb = x.charge_basis;
    if ((beta.basis == Basis::Root) != (cb == Basis::Root))
        throw std::invalid_argument("vertex_mode: charge/vector basis mismatch");

    int sign = (beta.basis == Basis::Root) ? d.epsilon(bi, x.charge) : d.epsilon_ambient(bi, x.charge);

    // (beta | charge), an integer
    LatticeVector gamma{cb, {}};
    gamma.coords.assign(x.charge.begin(), x.charge.end());
    Rational bg = d.pair(beta, gamma);
    if (rat_den(bg) != 1) throw std::logic_error("vertex_mode: non-integer pairing");
    long long shift = rat_num(bg).convert_to<long long>();

    auto by = d.eigen_coords(beta);
    long long smax = fock::max_degree(x.fockpart);

    LatticeState out;
    out.charge_basis = cb;
    out.charge.resize(x.charge.size());
    for (std::size_t i = 0; i < bi.size(); ++i) out.charge[i] = bi[i] + x.charge[i];

    auto ann = detail::annihilation_exponential(d, by, x.fockpart, static_cast<unsigned>(smax));
    // need z-power e - k + shift = -n - 1  =>  e = k - n - 1 - shift
    long long emax_needed = -1;
    for (long long k = 0; k <= smax; ++k)
        emax_needed = std::max(emax_needed, k - n - 1 - shift);
    std::vector<Poly> cre;
    if (emax_needed >= 0)
        cre = detail::creation_exponential(d, by, static_cast<unsigned>(emax_needed));

    Poly acc;
    for (long long k = 0; k <= smax; ++k) {
        long long e = k - n - 1 - shift;
        if (e < 0 || ann[k].empty()) continue;
        acc = poly_add(acc, poly_mul(cre[e], ann[k]));
    }
    out.fockpart = poly_scale(acc, Cyc::rational(Rational(sign), d.conductor));
    return out;
}

/// Screening operator e^{alpha_i}_(0) on the Fock space, with the image read
/// back in F (x) e^{alpha_i}. The W-algebra is the joint kernel over i.
inline Poly screening(const RootDatum& d, unsigned i, const Poly& s) {
    LatticeVector alpha{Basis::Root, std::vector<Rational>(d.rank, Rational(0))};
    alpha.coords[i - 1] = 1;
    LatticeState x{s, Basis::Root, std::vector<long long>(d.rank, 0)};
    return vertex_mode(d, alpha, 0, x).fockpart;
}

/// Screening with the creation exponential of alpha_i cached, for bulk
/// application to many elements of bounded degree.
class ScreeningContext {
  public:
    ScreeningContext(const RootDatum& d, unsigned i, unsigned max_deg)
        : d_(d), by_(d.eigen_coords_of_root([&] {
              std::vector<Rational> a(d.rank, Rational(0));
              a[i - 1] = 1;
              return a;
          }())),
          cre_(detail::creation_exponential(d, by_, max_deg ? max_deg - 1 : 0)) {}

    Poly apply(const Poly& s) const {
        long long smax = fock::max_degree(s);
        auto ann = detail::annihilation_exponential(d_, by_, s, static_cast<unsigned>(smax));
        Poly acc;
        for (long long k = 1; k <= smax; ++k) {
            if (ann[k].empty()) continue;
            acc = poly_add(acc, poly_mul(cre_[k - 1], ann[k]));
        }
        return acc;
    }

  private:
    const RootDatum& d_;
    std::vector<Cyc> by_;
    std::vector<Poly> cre_;
};

struct ScreeningReport {
    bool in_w = true;
    std::vector<Poly> residuals;  // one per screening index
};

/// True iff all rank screenings vanish exactly; residuals returned either way.
inline ScreeningReport verify_in_w(const RootDatum& d, const Poly& w) {
    ScreeningReport rep;
    rep.residuals.resize(d.rank);
    for (unsigned i = 1; i <= d.rank; ++i) {
        rep.residuals[i - 1] = screening(d, i, w);
        if (!rep.residuals[i - 1].empty()) rep.in_w = false;
    }
    return rep;
}

}  // namespace wce
