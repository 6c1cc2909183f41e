#pragma once

#include "wce/invariants.hpp"

#include <optional>

namespace wce {

enum class GenStrategy { Builtin, KernelSolve, ModeConstruction };

inline const char* strategy_name(GenStrategy s) {
    switch (s) {
        case GenStrategy::Builtin: return "builtin";
        case GenStrategy::KernelSolve: return "kernel_solve";
        default: return "mode_construction";
    }
}

inline std::optional<GenStrategy> strategy_from_name(const std::string& s) {
    if (s == "builtin") return GenStrategy::Builtin;
    if (s == "kernel_solve") return GenStrategy::KernelSolve;
    if (s == "mode_construction") return GenStrategy::ModeConstruction;
    return std::nullopt;
}

namespace wgen {

/// Normal-form monomial of w_i in Fock symbols: (phi_1 t^-1)^{m_i} (phi_{l+1-i} t^-1),
/// i.e. u[l,1]^{m_i} u[i,1].
inline Monomial nf_monomial(const RootDatum& d, unsigned i) {
    Monomial m;
    m.bump(fock::var(d.rank, 1), d.exponents[i - 1]);
    m.bump(fock::var(i, 1), 1);
    return m;
}

/// Identical-factor multiplicity of the leading extraction; h for i = l
/// (all m_l + 1 factors are phi_1-fields), otherwise 1.
inline unsigned leading_multiplicity(const RootDatum& d, unsigned i) {
    return i == d.rank ? d.h : 1;
}

/// Canonical scale: coefficient of the normal-form monomial is 1/kappa_i, so
/// that the twisted operators carry c_{i,m} = h^{m_i} Gamma(m_i/h+m+1)/Gamma(m_i/h).
inline Cyc nf_target(const RootDatum& d, unsigned i) {
    return Cyc::rational(Rational(1, leading_multiplicity(d, i)), d.conductor);
}

namespace detail {

inline Poly usym(const RootDatum& d, unsigned i, unsigned n) {
    Poly p;
    Monomial m;
    m.bump(fock::var(i, n));
    p.emplace(m, Cyc::rational(1, d.conductor));
    return p;
}

// phi_i t^{-n} = phi^{l+1-i} t^{-n}
inline Poly lsym(const RootDatum& d, unsigned i, unsigned n) { return usym(d, d.dual(i), n); }

inline std::vector<Poly> builtin_a1(const RootDatum& d) {
    // w_1 = I_1(phi_1) = (phi^1 t^-1)^2, rescaled later
    Poly u = usym(d, 1, 1);
    return {poly_mul(u, u)};
}

/// Transcription of the displayed D_4 generators w_1, w_2, w_3, w_4.
inline std::vector<Poly> builtin_d4(const RootDatum& d) {
    const unsigned N = d.conductor;
    auto rat = [&](long long p, long long q) { return Cyc::rational(Rational(p, q), N); };
    Cyc s2 = sqrt_of_integer(2, N);

    auto U = [&](unsigned i, unsigned n) { return usym(d, i, n); };
    auto L = [&](unsigned i, unsigned n) { return lsym(d, i, n); };
    Poly u1 = U(1, 1), u2 = U(2, 1), u3 = U(3, 1), u4 = U(4, 1);

    // w_1 = phi^a phi_a
    Poly w1;
    for (unsigned a = 1; a <= 4; ++a) w1 = poly_add(w1, poly_mul(U(a, 1), L(a, 1)));

    auto wk = [&](unsigned k) {
        Poly w;
        for (unsigned a = 1; a <= 4; ++a) {
            w = poly_add(w, poly_scale(poly_mul(U(a, 1), L(a, 3)), rat(2, 1)));
            w = poly_add(w, poly_scale(poly_mul(U(a, 2), L(a, 2)), rat(3, 4)));
        }
        w = poly_add(w, poly_scale(poly_mul(w1, w1), rat(1, 8)));
        w = poly_add(w, poly_mul(poly_mul(U(1, 1), poly_mul(L(k, 1), L(k, 1))), U(4, 1)));
        w = poly_add(w, poly_scale(poly_pow(U(k, 1), 4, N), rat(1, 6)));
        w = poly_add(w, poly_scale(poly_mul(U(k, 1), poly_pow(L(k, 1), 3, N)), rat(-1, 3)));
        Poly cubes = poly_add(poly_pow(u1, 3, N), poly_pow(u4, 3, N));
        w = poly_add(w, poly_scale(poly_mul(cubes, U(k, 1)), (rat(-1, 3) * s2)));
        return w;
    };

    Poly w4;
    for (unsigned a = 1; a <= 4; ++a) {
        w4 = poly_add(w4, poly_scale(poly_mul(U(a, 5), L(a, 1)), rat(2, 5)));
        w4 = poly_add(w4, poly_scale(poly_mul(U(a, 4), L(a, 2)), rat(1, 4)));
        w4 = poly_add(w4, poly_scale(poly_mul(U(a, 3), L(a, 3)), rat(1, 9)));
    }
    {
        Poly sixth = poly_sub(poly_sub(poly_add(poly_pow(u1, 6, N), poly_pow(u4, 6, N)),
                                       poly_pow(u2, 6, N)),
                              poly_pow(u3, 6, N));
        w4 = poly_add(w4, poly_scale(sixth, rat(1, 3240)));

        Poly cubes14 = poly_add(poly_pow(u1, 3, N), poly_pow(u4, 3, N));
        Poly s23 = poly_add(u2, u3);
        Poly inner = poly_add(poly_pow(s23, 3, N),
                              poly_scale(poly_mul(s23, poly_mul(u1, u4)), rat(3, 1)));
        w4 = poly_add(w4, poly_scale(poly_mul(cubes14, inner), rat(-1, 324) * s2.inverse()));

        Poly u14 = poly_mul(u1, u4), u23 = poly_mul(u2, u3);
        Poly grp = poly_mul(u14, poly_pow(s23, 4, N));
        grp = poly_add(grp, poly_scale(poly_mul(poly_pow(u14, 2, N), poly_pow(s23, 2, N)), rat(6, 1)));
        grp = poly_add(grp, poly_scale(poly_pow(u14, 3, N), rat(8, 3)));
        Poly quart = poly_pow(u2, 4, N);
        quart = poly_sub(quart, poly_scale(poly_mul(poly_pow(u2, 3, N), u3), rat(2, 1)));
        quart = poly_sub(quart, poly_scale(poly_mul(u2, poly_pow(u3, 3, N)), rat(2, 1)));
        quart = poly_add(quart, poly_pow(u3, 4, N));
        grp = poly_add(grp, poly_mul(u23, quart));
        grp = poly_add(grp, poly_scale(poly_pow(u23, 3, N), rat(10, 3)));
        w4 = poly_add(w4, poly_scale(grp, rat(1, 432)));

        Poly mixed3 = poly_add(poly_mul(U(1, 3), u4), poly_mul(U(4, 3), u1));
        Poly paren = poly_add(poly_pow(s23, 2, N), poly_scale(u14, rat(2, 1)));
        w4 = poly_add(w4, poly_scale(poly_mul(mixed3, paren), rat(1, 18)));

        Poly t3sum = poly_add(U(2, 3), U(3, 3));
        Poly part1 = poly_mul(cubes14, t3sum);
        Poly part2 = poly_mul(s23, poly_add(poly_mul(poly_pow(u1, 2, N), U(1, 3)),
                                            poly_mul(poly_pow(u4, 2, N), U(4, 3))));
        w4 = poly_add(w4, poly_scale(poly_add(part1, poly_scale(part2, rat(3, 1))),
                                     rat(-1, 27) * s2.inverse()));

        for (unsigned k = 2; k <= 3; ++k) {
            Poly inner2 = poly_scale(poly_sub(poly_scale(poly_pow(U(k, 1), 3, N), rat(2, 1)),
                                              poly_pow(L(k, 1), 3, N)),
                                     rat(1, 3));
            inner2 = poly_add(inner2, poly_mul(u23, poly_sub(poly_scale(L(k, 1), rat(2, 1)), U(k, 1))));
            inner2 = poly_add(inner2, poly_scale(poly_mul(u14, s23), rat(2, 1)));
            w4 = poly_add(w4, poly_scale(poly_mul(U(k, 3), inner2), rat(1, 18)));
        }
    }

    return {w1, wk(2), wk(3), w4};
}

}  // namespace detail

/// Rescales (and, in degenerate exponent classes, linearly recombines) a
/// generator set so the normal-form coefficients are exactly nf_target and
/// the cross terms inside a class vanish. Throws if the leading block is
/// singular.
inline std::vector<Poly> normalize_generators(const RootDatum& d, std::vector<Poly> gens) {
    std::vector<bool> done(d.rank, false);
    for (unsigned i = 1; i <= d.rank; ++i) {
        if (done[i - 1]) continue;
        unsigned m = d.exponents[i - 1];
        std::vector<unsigned> cls;
        for (unsigned t = 1; t <= d.rank; ++t)
            if (d.exponents[t - 1] == m) cls.push_back(t);
        CycLin::Matrix b(cls.size(), std::vector<Cyc>(cls.size()));
        for (std::size_t r = 0; r < cls.size(); ++r)
            for (std::size_t c = 0; c < cls.size(); ++c) {
                auto it = gens[cls[r] - 1].find(nf_monomial(d, cls[c]));
                b[r][c] = it == gens[cls[r] - 1].end() ? Cyc::rational(0, d.conductor) : it->second;
            }
        CycLin::Matrix binv;
        try {
            binv = CycLin::inverse(b);
        } catch (const std::domain_error&) {
            throw std::logic_error("generator leading block singular; cannot normalize");
        }
        std::vector<Poly> fresh(cls.size());
        for (std::size_t r = 0; r < cls.size(); ++r) {
            Poly acc;
            for (std::size_t c = 0; c < cls.size(); ++c)
                acc = poly_add(acc, poly_scale(gens[cls[c] - 1], binv[r][c]));
            fresh[r] = poly_scale(acc, nf_target(d, cls[r]));
        }
        for (std::size_t r = 0; r < cls.size(); ++r) {
            gens[cls[r] - 1] = std::move(fresh[r]);
            done[cls[r] - 1] = true;
        }
    }
    // sanity: NF coefficient and class cross terms
    for (unsigned i = 1; i <= d.rank; ++i) {
        auto it = gens[i - 1].find(nf_monomial(d, i));
        if (it == gens[i - 1].end() || it->second != nf_target(d, i))
            throw std::logic_error("normalization failed to fix the leading coefficient");
        for (unsigned t = 1; t <= d.rank; ++t) {
            if (t == i || d.exponents[t - 1] != d.exponents[i - 1]) continue;
            if (gens[i - 1].count(nf_monomial(d, t)))
                throw std::logic_error("normalization left a cross leading term");
        }
    }
    return gens;
}

/// sigma-invariant monomial basis of the degree-deg component of F.
inline std::vector<Monomial> invariant_basis(const RootDatum& d, unsigned deg) {
    std::vector<Monomial> out;
    Monomial cur;
    // enumerate multisets of u[j,n] with total n-degree = deg, j descending order
    std::function<void(unsigned, unsigned, uint32_t)> rec = [&](unsigned remaining, unsigned wsum,
                                                                uint32_t maxvar) {
        if (remaining == 0) {
            if (wsum % d.h == 0) out.push_back(cur);
            return;
        }
        for (unsigned n = remaining; n >= 1; --n) {
            for (unsigned j = d.rank; j >= 1; --j) {
                uint32_t v = fock::var(j, n);
                if (v > maxvar) continue;
                cur.bump(v);
                rec(remaining - n, wsum + d.exponents[j - 1], v);
                cur.strip(v);
            }
        }
    };
    rec(deg, 0, fock::var(d.rank, deg));
    std::sort(out.begin(), out.end());
    return out;
}

/// Graded dimension of the W-algebra at the given degree: the free algebra on
/// the generators w_i and their translation descendants, deg T^n w_i = d_i + n.
inline long long w_algebra_dim(const RootDatum& d, unsigned deg) {
    std::vector<long long> dp(deg + 1, 0);
    dp[0] = 1;
    for (unsigned i = 1; i <= d.rank; ++i) {
        unsigned di = d.exponents[i - 1] + 1;
        for (unsigned g = di; g <= deg; ++g)
            for (unsigned k = g; k <= deg; ++k) dp[k] += dp[k - g];
    }
    return dp[deg];
}

/// Exact kernel of the stacked screening constraints on the sigma-invariant
/// degree-(m_i+1) component, followed by the normal-form selection. The
/// remaining freedom (products of lower generators, translation descendants)
/// is removed deterministically by reducing against the constrained kernel
/// in monomial order.
inline Poly kernel_solve_one(const RootDatum& d, unsigned i) {
    unsigned deg = d.exponents[i - 1] + 1;
    auto basis = invariant_basis(d, deg);
    std::vector<ScreeningContext> ctx;
    for (unsigned j = 1; j <= d.rank; ++j) ctx.emplace_back(d, j, deg);
    std::map<std::pair<unsigned, Monomial>, std::vector<std::pair<std::size_t, Cyc>>> row_map;
    for (std::size_t c = 0; c < basis.size(); ++c) {
        Poly p;
        p.emplace(basis[c], Cyc::rational(1, d.conductor));
        for (unsigned j = 1; j <= d.rank; ++j) {
            Poly img = ctx[j - 1].apply(p);
            for (const auto& [m, coef] : img)
                row_map[std::make_pair(j, m)].emplace_back(c, coef);
        }
    }
    std::vector<std::vector<std::pair<std::size_t, Cyc>>> rows;
    rows.reserve(row_map.size());
    for (auto& [key, row] : row_map) rows.push_back(std::move(row));
    // rank can stop at basis - dim W_deg; the selected element is re-verified
    // against the full screening conditions below.
    long long expect = w_algebra_dim(d, deg);
    std::size_t stop = basis.size() > static_cast<std::size_t>(expect)
                           ? basis.size() - static_cast<std::size_t>(expect)
                           : 0;
    auto ker = sparse_kernel(rows, basis.size(), stop);
    if (static_cast<long long>(ker.size()) != expect)
        ker = sparse_kernel(rows, basis.size());  // fall back to the full elimination
    if (ker.empty()) throw std::logic_error("kernel_solve: empty screening kernel");

    // leading constraints: coefficient nf_target at nf_monomial(d, i), zero at
    // the other normal-form monomials of the same exponent class
    std::vector<std::pair<std::size_t, Cyc>> wanted;
    for (unsigned t = 1; t <= d.rank; ++t) {
        if (d.exponents[t - 1] != d.exponents[i - 1]) continue;
        auto pos = std::lower_bound(basis.begin(), basis.end(), nf_monomial(d, t));
        if (pos == basis.end() || *pos != nf_monomial(d, t))
            throw std::logic_error("kernel_solve: normal-form monomial missing from basis");
        wanted.emplace_back(static_cast<std::size_t>(pos - basis.begin()),
                            t == i ? nf_target(d, i) : Cyc::rational(0, d.conductor));
    }
    CycLin::Matrix cons(wanted.size(), std::vector<Cyc>(ker.size()));
    std::vector<Cyc> rhs(wanted.size());
    for (std::size_t r = 0; r < wanted.size(); ++r) {
        for (std::size_t k = 0; k < ker.size(); ++k) cons[r][k] = ker[k][wanted[r].first];
        rhs[r] = wanted[r].second;
    }
    auto sol = CycLin::solve(cons, rhs);
    if (!sol) {
        throw std::logic_error(
            "kernel_solve: no kernel element matches the normal form (dimension mismatch)");
    }
    std::vector<Cyc> x(basis.size(), Cyc::rational(0, d.conductor));
    for (std::size_t k = 0; k < ker.size(); ++k)
        if (!(*sol)[k].is_zero())
            for (std::size_t c = 0; c < basis.size(); ++c)
                if (!ker[k][c].is_zero()) x[c] += (*sol)[k] * ker[k][c];

    // canonicalize against the residual freedom
    auto free_dirs = CycLin::kernel(cons);
    if (!free_dirs.empty()) {
        CycLin::Matrix vmat;
        for (const auto& fd : free_dirs) {
            std::vector<Cyc> v(basis.size(), Cyc::rational(0, d.conductor));
            for (std::size_t k = 0; k < ker.size(); ++k)
                if (!fd[k].is_zero())
                    for (std::size_t c = 0; c < basis.size(); ++c)
                        if (!ker[k][c].is_zero()) v[c] += fd[k] * ker[k][c];
            vmat.push_back(std::move(v));
        }
        auto pivots = CycLin::rref(vmat);
        for (std::size_t r = 0; r < pivots.size(); ++r) {
            const Cyc f = x[pivots[r]];
            if (f.is_zero()) continue;
            for (std::size_t c = 0; c < basis.size(); ++c)
                if (!vmat[r][c].is_zero()) x[c] -= f * vmat[r][c];
        }
    }

    Poly w;
    for (std::size_t c = 0; c < basis.size(); ++c) poly_add_term(w, basis[c], x[c]);
    if (!verify_in_w(d, w).in_w)
        throw std::logic_error("kernel_solve: selected element fails full screening verification");
    return w;
}

/// Mode-construction generators for D_4 (ambient lattice Z^4):
/// wtilde_i = sum_j e^{e_j}_{(-m_i-1)} e^{-e_j} + e^{-e_j}_{(-m_i-1)} e^{e_j},
/// wtilde_3 = (e_1 t^-1)...(e_4 t^-1), recombined per the D_4 prescription.
inline std::vector<Poly> mode_construction_d4(const RootDatum& d) {
    if (d.family != 'D' || d.rank != 4)
        throw std::invalid_argument("mode_construction requires D4");
    auto wtilde = [&](unsigned mi) {
        Poly acc;
        for (unsigned j = 0; j < 4; ++j) {
            for (int sgn : {+1, -1}) {
                LatticeVector beta{Basis::Ambient, std::vector<Rational>(4, Rational(0))};
                beta.coords[j] = sgn;
                LatticeState st{poly_one(d.conductor), Basis::Ambient, {0, 0, 0, 0}};
                st.charge[j] = -sgn;
                acc = poly_add(acc, vertex_mode(d, beta, -static_cast<int>(mi) - 1, st).fockpart);
            }
        }
        return acc;
    };
    Poly w1 = wtilde(1), w2t = wtilde(3), w4 = wtilde(5);
    Poly w3t = poly_one(d.conductor);
    for (unsigned j = 0; j < 4; ++j) {
        LatticeVector ej{Basis::Ambient, std::vector<Rational>(4, Rational(0))};
        ej.coords[j] = 1;
        w3t = poly_mul(w3t, boson_creation_element(d, d.eigen_coords(ej), 1));
    }
    Cyc sm3 = sqrt_of_integer(-3, d.conductor);
    Poly w2 = poly_add(poly_scale(w2t, Cyc(3)), poly_scale(w3t, sm3));
    Poly w3 = poly_sub(poly_scale(w2t, Cyc(3)), poly_scale(w3t, sm3));
    return {w1, w2, w3, w4};
}

}  // namespace wgen

/// Builds the W-algebra generators by the requested strategy; every result is
/// normalized to the canonical leading coefficients. Raw (pre-normalization)
/// generators are returned through raw_out when requested.
inline std::vector<Poly> w_generators(const RootDatum& d, GenStrategy strategy,
                                      std::vector<Poly>* raw_out = nullptr) {
    std::vector<Poly> gens;
    switch (strategy) {
        case GenStrategy::Builtin:
            if (d.family == 'A' && d.rank == 1)
                gens = wgen::detail::builtin_a1(d);
            else if (d.family == 'D' && d.rank == 4)
                gens = wgen::detail::builtin_d4(d);
            else
                throw std::invalid_argument("builtin generators exist for A1 and D4 only");
            break;
        case GenStrategy::KernelSolve:
            for (unsigned i = 1; i <= d.rank; ++i) gens.push_back(wgen::kernel_solve_one(d, i));
            break;
        case GenStrategy::ModeConstruction:
            gens = wgen::mode_construction_d4(d);
            break;
    }
    if (raw_out) *raw_out = gens;
    return wgen::normalize_generators(d, std::move(gens));
}

}  // namespace wce
