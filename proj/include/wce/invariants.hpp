#pragma once

#include "wce/fock.hpp"

namespace wce {

/// Weyl-invariant polynomials in the eigen-coordinates y_1..y_l (variable id
/// = index). Produced in the normal form
///   I_i = y_1^{m_i} y_{l+1-i} + (terms of y_1-degree <= m_i - 1),
/// one generator per exponent, degree m_i + 1.
namespace invariants {

inline Monomial y_mono(std::initializer_list<std::pair<unsigned, unsigned>> vars) {
    Monomial m;
    for (auto [v, e] : vars) m.bump(v, e);
    return m;
}

/// The normal-form leading monomial y_1^{m_i} y_{l+1-i}.
inline Monomial leading_monomial(const RootDatum& d, unsigned i) {
    Monomial m;
    m.bump(1, d.exponents[i - 1]);
    m.bump(d.dual(i), 1);
    return m;
}

/// Ambient coordinate x_j as a linear form in the y variables.
inline Poly ambient_linear_form(const RootDatum& d, unsigned j) {
    Poly p;
    for (unsigned i = 1; i <= d.rank; ++i) {
        if (d.phi_amb[j][i - 1].is_zero()) continue;
        Monomial m;
        m.bump(i);
        p.emplace(m, d.phi_amb[j][i - 1]);
    }
    return p;
}

inline Poly power_sum(const RootDatum& d, unsigned s) {
    Poly acc;
    for (unsigned j = 0; j < d.ambient_dim; ++j)
        acc = poly_add(acc, poly_pow(ambient_linear_form(d, j), s, d.conductor));
    return acc;
}

inline Poly coordinate_product(const RootDatum& d) {
    Poly acc = poly_one(d.conductor);
    for (unsigned j = 0; j < d.ambient_dim; ++j)
        acc = poly_mul(acc, ambient_linear_form(d, j));
    return acc;
}

/// Substitute the action of the simple reflection R_j into a y-polynomial.
inline Poly apply_reflection(const RootDatum& d, unsigned j, const Poly& p) {
    std::map<uint32_t, Poly> images;
    for (unsigned k = 1; k <= d.rank; ++k) {
        Poly img;
        for (unsigned i = 1; i <= d.rank; ++i) {
            const Cyc& c = d.refl_eigen[j - 1][k - 1][i - 1];
            if (c.is_zero()) continue;
            Monomial m;
            m.bump(i);
            poly_add_term(img, m, c);
        }
        images[k] = img;
    }
    return poly_substitute(p, images, d.conductor);
}

inline bool is_weyl_invariant(const RootDatum& d, const Poly& p) {
    for (unsigned j = 1; j <= d.rank; ++j)
        if (apply_reflection(d, j, p) != p) return false;
    return true;
}

/// Classical generators of S(h)^W converted to eigen-coordinates, then
/// recombined and rescaled into the normal form; A and D families only.
inline std::vector<Poly> generators(const RootDatum& d) {
    if (d.family != 'A' && d.family != 'D')
        throw std::invalid_argument("invariant generators are built in for A and D only");

    std::vector<Poly> cands;
    if (d.family == 'A') {
        for (unsigned s = 2; s <= d.rank + 1; ++s) cands.push_back(power_sum(d, s));
    } else {
        for (unsigned s = 2; s <= 2 * d.rank - 2; s += 2) cands.push_back(power_sum(d, s));
        cands.push_back(coordinate_product(d));
    }

    auto total_deg = [](const Poly& p) {
        return p.empty() ? 0u : p.begin()->first.total_exponent();
    };

    std::vector<Poly> out(d.rank);
    std::vector<bool> used(cands.size(), false);
    for (unsigned i = 1; i <= d.rank; ++i) {
        if (!out[i - 1].empty()) continue;
        unsigned m = d.exponents[i - 1];
        std::vector<unsigned> cls;  // all indices with this exponent
        for (unsigned t = 1; t <= d.rank; ++t)
            if (d.exponents[t - 1] == m) cls.push_back(t);
        std::vector<unsigned> cidx;  // candidates of matching degree
        for (std::size_t c = 0; c < cands.size(); ++c)
            if (!used[c] && total_deg(cands[c]) == m + 1) cidx.push_back(static_cast<unsigned>(c));
        if (cidx.size() != cls.size())
            throw std::logic_error("invariant degree multiplicity mismatch");

        // leading block B[c][t] = coefficient of y_1^{m} y_{dual(t)} in candidate c
        CycLin::Matrix b(cls.size(), std::vector<Cyc>(cls.size()));
        for (std::size_t c = 0; c < cidx.size(); ++c)
            for (std::size_t t = 0; t < cls.size(); ++t) {
                auto it = cands[cidx[c]].find(leading_monomial(d, cls[t]));
                b[c][t] = it == cands[cidx[c]].end() ? Cyc::rational(0, d.conductor) : it->second;
            }
        CycLin::Matrix binv;
        try {
            binv = CycLin::inverse(b);
        } catch (const std::domain_error&) {
            throw std::logic_error("invariant leading block degenerate at (1,0,...,0)");
        }
        // new_t = sum_c binv[t][c] * cand_c  gives coefficient delta_{t t'}
        for (std::size_t t = 0; t < cls.size(); ++t) {
            Poly acc;
            for (std::size_t c = 0; c < cidx.size(); ++c)
                acc = poly_add(acc, poly_scale(cands[cidx[c]], binv[t][c]));
            out[cls[t] - 1] = std::move(acc);
        }
        for (auto c : cidx) used[c] = true;
    }

    // validate: homogeneous of degree m_i + 1, Weyl invariant, normal form
    for (unsigned i = 1; i <= d.rank; ++i) {
        const Poly& p = out[i - 1];
        unsigned m = d.exponents[i - 1];
        for (const auto& [mono, c] : p)
            if (mono.total_exponent() != m + 1)
                throw std::logic_error("invariant not homogeneous");
        if (!is_weyl_invariant(d, p)) throw std::logic_error("invariant fails Weyl invariance");
        for (const auto& [mono, c] : p) {
            if (mono == leading_monomial(d, i)) {
                if (c != Cyc::rational(1, d.conductor))
                    throw std::logic_error("normal form leading coefficient not 1");
            } else if (mono.exponent_of(1) >= m) {
                throw std::logic_error("normal form violated: high y_1-degree term");
            }
        }
    }
    return out;
}

/// The t^{-1}-substitution: variable y_i (the coordinate phi_i) becomes the
/// element phi_i t^{-1} = u[l+1-i, 1].
inline Poly to_fock(const RootDatum& d, const Poly& ipoly) {
    Poly out;
    for (const auto& [m, c] : ipoly) {
        Monomial fm;
        for (const auto& [v, e] : m.f) fm.bump(fock::var(d.dual(v), 1), e);
        poly_add_term(out, fm, c);
    }
    return out;
}

}  // namespace invariants
}  // namespace wce
