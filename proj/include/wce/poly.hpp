#pragma once

#include "wce/cyclotomic.hpp"

#include <compare>
#include <functional>
#include <map>
#include <vector>

namespace wce {

/// Multiset of generator symbols: sorted (variable, exponent) pairs with
/// positive exponents. Variable ids are packed u32, interpreted by the module
/// that owns the polynomial space.
struct Monomial {
    std::vector<std::pair<uint32_t, uint32_t>> f;

    auto operator<=>(const Monomial&) const = default;

    bool empty() const { return f.empty(); }

    uint32_t exponent_of(uint32_t var) const {
        for (const auto& [v, e] : f)
            if (v == var) return e;
        return 0;
    }

    Monomial times(uint32_t var, uint32_t e = 1) const {
        Monomial m = *this;
        m.bump(var, e);
        return m;
    }

    void bump(uint32_t var, uint32_t e = 1) {
        auto it = std::lower_bound(f.begin(), f.end(), std::make_pair(var, 0u),
                                   [](const auto& a, const auto& b) { return a.first < b.first; });
        if (it != f.end() && it->first == var)
            it->second += e;
        else
            f.insert(it, {var, e});
    }

    /// Removes var^e; returns false if not divisible.
    bool strip(uint32_t var, uint32_t e = 1) {
        for (auto it = f.begin(); it != f.end(); ++it) {
            if (it->first != var) continue;
            if (it->second < e) return false;
            it->second -= e;
            if (it->second == 0) f.erase(it);
            return true;
        }
        return false;
    }

    bool divides(const Monomial& m) const {
        for (const auto& [v, e] : f)
            if (m.exponent_of(v) < e) return false;
        return true;
    }

    Monomial mul(const Monomial& o) const {
        Monomial m = *this;
        for (const auto& [v, e] : o.f) m.bump(v, e);
        return m;
    }

    /// this / o; caller must ensure divisibility.
    Monomial div(const Monomial& o) const {
        Monomial m = *this;
        for (const auto& [v, e] : o.f)
            if (!m.strip(v, e)) throw std::logic_error("Monomial::div: not divisible");
        return m;
    }

    unsigned total_exponent() const {
        unsigned s = 0;
        for (const auto& [v, e] : f) s += e;
        return s;
    }

    long long weighted_degree(const std::function<long long(uint32_t)>& w) const {
        long long s = 0;
        for (const auto& [v, e] : f) s += w(v) * e;
        return s;
    }

    std::uint64_t hash() const {
        std::uint64_t h = 1469598103934665603ULL;
        for (const auto& [v, e] : f) {
            h = fnv1a(h, &v, sizeof(v));
            h = fnv1a(h, &e, sizeof(e));
        }
        return h;
    }
};

struct MonomialHash {
    std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Sparse polynomial with exact cyclotomic coefficients; canonical form has
/// sorted keys and no zero coefficients.
using Poly = std::map<Monomial, Cyc>;

inline void poly_add_term(Poly& p, const Monomial& m, const Cyc& c) {
    if (c.is_zero()) return;
    auto it = p.find(m);
    if (it == p.end()) {
        p.emplace(m, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
}

inline Poly poly_add(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b) poly_add_term(r, m, c);
    return r;
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
    Poly r = a;
    for (const auto& [m, c] : b) poly_add_term(r, m, -c);
    return r;
}

inline Poly poly_scale(const Poly& a, const Cyc& s) {
    Poly r;
    if (s.is_zero()) return r;
    for (const auto& [m, c] : a) {
        Cyc v = c * s;
        if (!v.is_zero()) r.emplace(m, v);
    }
    return r;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    Poly r;
    for (const auto& [ma, ca] : a)
        for (const auto& [mb, cb] : b) poly_add_term(r, ma.mul(mb), ca * cb);
    return r;
}

inline Poly poly_one(unsigned conductor) {
    Poly p;
    p.emplace(Monomial{}, Cyc::rational(1, conductor));
    return p;
}

inline Poly poly_pow(const Poly& a, unsigned k, unsigned conductor) {
    Poly r = poly_one(conductor);
    for (unsigned i = 0; i < k; ++i) r = poly_mul(r, a);
    return r;
}

/// d/d(var), with multiplicity factors.
inline Poly poly_derivative(const Poly& p, uint32_t var) {
    Poly r;
    for (const auto& [m, c] : p) {
        uint32_t e = m.exponent_of(var);
        if (e == 0) continue;
        Monomial q = m;
        q.strip(var, 1);
        poly_add_term(r, q, c.scaled(Rational(e)));
    }
    return r;
}

/// Substitutes each variable by a polynomial (identity when missing).
inline Poly poly_substitute(const Poly& p, const std::map<uint32_t, Poly>& images,
                            unsigned conductor) {
    Poly out;
    for (const auto& [m, c] : p) {
        Poly term = poly_one(conductor);
        for (const auto& [v, e] : m.f) {
            auto it = images.find(v);
            if (it == images.end()) {
                Monomial mv;
                mv.bump(v, e);
                Poly pv;
                pv.emplace(mv, Cyc::rational(1, conductor));
                term = poly_mul(term, pv);
            } else {
                term = poly_mul(term, poly_pow(it->second, e, conductor));
            }
        }
        for (auto& [mm, cc] : term) poly_add_term(out, mm, cc * c);
    }
    return out;
}

inline long long poly_max_degree(const Poly& p, const std::function<long long(uint32_t)>& w) {
    long long d = 0;
    for (const auto& [m, c] : p) d = std::max(d, m.weighted_degree(w));
    return d;
}

inline bool poly_is_homogeneous(const Poly& p, const std::function<long long(uint32_t)>& w,
                                long long deg) {
    for (const auto& [m, c] : p)
        if (m.weighted_degree(w) != deg) return false;
    return true;
}

}  // namespace wce
