#pragma once

#include "wce/tau.hpp"

namespace wce {

enum class PotentialForm { Paper, Dubrovin, Fjrw };

inline std::optional<PotentialForm> potential_form_from_name(const std::string& s) {
    if (s == "paper") return PotentialForm::Paper;
    if (s == "dubrovin") return PotentialForm::Dubrovin;
    if (s == "fjrw") return PotentialForm::Fjrw;
    return std::nullopt;
}

/// The D_4 Frobenius potential in the eigenbasis coordinates:
/// 1/2 (v1)^2 v4 + v1 v2 v3 + ((v2)^3 + (v3)^3) v4 / (18 sqrt 2)
/// + v2 v3 (v4)^3 / 108 + (v4)^7 / 272160.
inline Poly reference_potential_d4(const RootDatum& d) {
    const unsigned N = d.conductor;
    Cyc inv18s2 = Cyc::rational(Rational(1, 18), N) * sqrt_of_integer(2, N).inverse();
    Poly f;
    auto add = [&](std::initializer_list<std::pair<unsigned, unsigned>> vs, const Cyc& c) {
        Monomial m;
        for (auto [i, e] : vs) m.bump(tvar::var(i, 0), e);
        f.emplace(m, c);
    };
    add({{1, 2}, {4, 1}}, Cyc::rational(Rational(1, 2), N));
    add({{1, 1}, {2, 1}, {3, 1}}, Cyc::rational(1, N));
    add({{2, 3}, {4, 1}}, inv18s2);
    add({{3, 3}, {4, 1}}, inv18s2);
    add({{2, 1}, {3, 1}, {4, 3}}, Cyc::rational(Rational(1, 108), N));
    add({{4, 7}}, Cyc::rational(Rational(1, 272160), N));
    return f;
}

/// Dubrovin normalization for D_4: v1 -> v1/c, v4 -> c v4 with c^2 = 18 sqrt 2
/// and an overall factor c. A monomial coefficient picks up c^{1 - a1 + a4};
/// the exponent must be even for every nonzero coefficient (c itself lies
/// outside the working field).
inline Poly dubrovin_form_d4(const RootDatum& d, const Poly& potential) {
    Cyc c2 = sqrt_of_integer(2, d.conductor).scaled(Rational(18));  // c^2
    Poly out;
    for (const auto& [m, coeff] : potential) {
        long long e = 1;
        e -= static_cast<long long>(m.exponent_of(tvar::var(1, 0)));
        e += static_cast<long long>(m.exponent_of(tvar::var(4, 0)));
        if (e % 2 != 0)
            throw std::domain_error("dubrovin form: odd rescaling exponent on a nonzero monomial");
        long long half = e / 2;
        Cyc factor = Cyc::rational(1, d.conductor);
        for (long long j = 0; j < std::llabs(half); ++j)
            factor = half > 0 ? factor * c2 : factor / c2;
        poly_add_term(out, m, coeff * factor);
    }
    return out;
}

/// Expected Dubrovin coefficients for D_4 (Eq. (15) normalization).
inline Poly reference_potential_d4_dubrovin(const RootDatum& d) {
    const unsigned N = d.conductor;
    Poly f;
    auto add = [&](std::initializer_list<std::pair<unsigned, unsigned>> vs, const Rational& c) {
        Monomial m;
        for (auto [i, e] : vs) m.bump(tvar::var(i, 0), e);
        f.emplace(m, Cyc::rational(c, N));
    };
    add({{1, 2}, {4, 1}}, Rational(1, 2));
    add({{1, 1}, {2, 1}, {3, 1}}, Rational(1));
    add({{2, 3}, {4, 1}}, Rational(1));
    add({{3, 3}, {4, 1}}, Rational(1));
    add({{2, 1}, {3, 1}, {4, 3}}, Rational(6));
    add({{4, 7}}, Rational(54, 35));
    return f;
}

/// FJRW coordinates for D_4: v1 = t_1, v2 = -(t_X - sqrt3 t_Y)/sqrt2,
/// v3 = -(t_X + sqrt3 t_Y)/sqrt2, v4 = t_{X^2}, and F -> F/6. Output
/// variables keep the same packing: 1 = t_1, 2 = t_X, 3 = t_Y, 4 = t_{X^2}.
inline Poly fjrw_form_d4(const RootDatum& d, const Poly& potential) {
    const unsigned N = d.conductor;
    Cyc s2i = sqrt_of_integer(2, N).inverse();
    Cyc s3 = sqrt_of_integer(3, N);
    auto lin = [&](const Cyc& cx, const Cyc& cy) {
        Poly p;
        Monomial mx;
        mx.bump(tvar::var(2, 0));
        Monomial my;
        my.bump(tvar::var(3, 0));
        poly_add_term(p, mx, cx);
        poly_add_term(p, my, cy);
        return p;
    };
    std::map<uint32_t, Poly> images;
    images[tvar::var(2, 0)] = lin(-s2i, s2i * s3);
    images[tvar::var(3, 0)] = lin(-s2i, (-s2i) * s3);
    Poly sub = poly_substitute(potential, images, N);
    return poly_scale(sub, Cyc::rational(Rational(1, 6), N));
}

/// Expected FJRW D_4 potential.
inline Poly reference_potential_d4_fjrw(const RootDatum& d) {
    const unsigned N = d.conductor;
    Poly f;
    auto add = [&](std::initializer_list<std::pair<unsigned, unsigned>> vs, const Rational& c) {
        Monomial m;
        for (auto [i, e] : vs) m.bump(tvar::var(i, 0), e);
        f.emplace(m, Cyc::rational(c, N));
    };
    add({{1, 1}, {2, 2}}, Rational(1, 12));
    add({{1, 1}, {3, 2}}, Rational(-1, 4));
    add({{1, 2}, {4, 1}}, Rational(1, 12));
    add({{2, 3}, {4, 1}}, Rational(-1, 216));
    add({{2, 1}, {3, 2}, {4, 1}}, Rational(-1, 24));
    add({{2, 2}, {4, 3}}, Rational(1, 1296));
    add({{3, 2}, {4, 3}}, Rational(-1, 432));
    add({{4, 7}}, Rational(1, 1632960));
    return f;
}

struct PotentialComparison {
    bool match = true;
    std::vector<std::string> differences;
};

inline std::string potential_monomial_name(const Monomial& m, const char* const* names) {
    if (m.empty()) return "1";
    std::string s;
    for (const auto& [v, e] : m.f) {
        if (!s.empty()) s += " ";
        s += names[tvar::idx(v) - 1];
        if (e > 1) s += "^" + std::to_string(e);
    }
    return s;
}

inline PotentialComparison compare_potentials(const Poly& got, const Poly& want,
                                              const char* const* names) {
    PotentialComparison cmp;
    Poly diff = poly_sub(got, want);
    for (const auto& [m, c] : diff) {
        cmp.match = false;
        cmp.differences.push_back(potential_monomial_name(m, names) + ": off by " + c.pretty());
    }
    return cmp;
}

}  // namespace wce
