#pragma once

#include "wce/linalg.hpp"

#include <array>
#include <set>
#include <string>

namespace wce {

enum class Basis { Root, Ambient };

/// Vector of an ADE lattice (or its ambient Z^n), with a basis tag.
/// Bilinear-form evaluation is only defined between equal tags.
struct LatticeVector {
    Basis basis = Basis::Root;
    std::vector<Rational> coords;

    bool is_integral() const {
        for (const auto& c : coords)
            if (rat_den(c) != 1) return false;
        return true;
    }
};

/// ADE root-system data: Cartan matrix, Coxeter element sigma = R_1...R_l
/// (rightmost reflection applied first), Coxeter number and exponents, the
/// normalized sigma-eigenbasis phi^1..phi^l with (phi^i|phi^j) = delta_{i+j,l+1},
/// and the bimultiplicative cocycle epsilon.
struct RootDatum {
    char family = 'A';
    unsigned rank = 0;
    unsigned h = 0;
    unsigned conductor = 24;
    std::vector<unsigned> exponents;                     // ascending
    std::vector<std::vector<long long>> cartan;          // rank x rank
    std::vector<std::vector<long long>> sigma;           // root coords, columns = images
    std::vector<std::vector<Rational>> sigma_inv_shift;  // (1 - sigma)^{-1}
    std::vector<std::vector<long long>> eps_exponent;    // K_ij = ((1-sigma)^{-1} a_i | a_j)
    unsigned ambient_dim = 0;                            // 0 when no ambient model
    std::vector<std::vector<Rational>> root_to_amb;      // ambient_dim x rank
    std::vector<std::vector<Cyc>> phi_root;              // rank x rank, column i = phi^i
    std::vector<std::vector<Cyc>> phi_amb;               // ambient_dim x rank
    std::vector<std::vector<Cyc>> y_of_root;             // y_i(alpha_j)
    std::vector<std::vector<std::vector<Cyc>>> refl_eigen;  // per simple reflection
    std::vector<std::vector<long long>> roots;           // all roots in root coords

    unsigned dual(unsigned i) const { return rank + 1 - i; }  // 1-based
    long long eta(unsigned i, unsigned j) const { return i + j == rank + 1 ? 1 : 0; }

    Rational pair_root(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
        Rational s = 0;
        for (unsigned i = 0; i < rank; ++i) {
            if (x[i] == 0) continue;
            for (unsigned j = 0; j < rank; ++j)
                if (y[j] != 0) s += x[i] * Rational(cartan[i][j]) * y[j];
        }
        return s;
    }

    /// Exact bilinear form between equal-basis vectors.
    Rational pair(const LatticeVector& v, const LatticeVector& w) const {
        if (v.basis != w.basis) throw std::invalid_argument("pair: basis mismatch");
        if (v.basis == Basis::Root) return pair_root(v.coords, w.coords);
        Rational s = 0;
        for (std::size_t i = 0; i < v.coords.size(); ++i) s += v.coords[i] * w.coords[i];
        return s;
    }

    /// Field vectors in eigen-coordinates: (v|w) = sum_i v_i w_{l+1-i}.
    Cyc pair_eigen(const std::vector<Cyc>& v, const std::vector<Cyc>& w) const {
        Cyc s = Cyc::rational(0, conductor);
        for (unsigned i = 1; i <= rank; ++i) s += v[i - 1] * w[dual(i) - 1];
        return s;
    }

    /// epsilon(alpha, beta) = (-1)^((1-sigma)^{-1} alpha | beta) on the root lattice.
    int epsilon(const std::vector<long long>& a, const std::vector<long long>& b) const {
        long long e = 0;
        for (unsigned i = 0; i < rank; ++i) {
            if (a[i] == 0) continue;
            for (unsigned j = 0; j < rank; ++j)
                if (b[j] != 0) e += a[i] * eps_exponent[i][j] * b[j];
        }
        return (e % 2 == 0) ? 1 : -1;
    }

    /// Bimultiplicative extension to the ambient Z^n with eps(e_j,e_k) = -1
    /// iff j >= k; satisfies eps(a,a) = (-1)^{|a|^2(|a|^2+1)/2} on all of Z^n.
    int epsilon_ambient(const std::vector<long long>& a, const std::vector<long long>& b) const {
        long long e = 0;
        for (std::size_t j = 0; j < a.size(); ++j) {
            if (a[j] == 0) continue;
            for (std::size_t k = 0; k <= j; ++k) e += a[j] * b[k];
        }
        return (e % 2 == 0) ? 1 : -1;
    }

    std::vector<Rational> root_coords_to_ambient(const std::vector<Rational>& x) const {
        std::vector<Rational> v(ambient_dim, Rational(0));
        for (unsigned i = 0; i < ambient_dim; ++i)
            for (unsigned j = 0; j < rank; ++j)
                if (x[j] != 0 && root_to_amb[i][j] != 0) v[i] += root_to_amb[i][j] * x[j];
        return v;
    }

    /// Eigen-coordinates y_i(v) (so that v = sum_i y_i phi^i) of a rational
    /// vector given in root coordinates.
    std::vector<Cyc> eigen_coords_of_root(const std::vector<Rational>& x) const {
        std::vector<Cyc> y(rank, Cyc::rational(0, conductor));
        for (unsigned i = 0; i < rank; ++i)
            for (unsigned j = 0; j < rank; ++j)
                if (x[j] != 0) y[i] += y_of_root[i][j].scaled(x[j]);
        return y;
    }

    std::vector<Cyc> eigen_coords(const LatticeVector& v) const {
        if (v.basis == Basis::Root) return eigen_coords_of_root(v.coords);
        // ambient: y_i(v) = (v | phi_i) via the ambient dot product
        std::vector<Cyc> y(rank, Cyc::rational(0, conductor));
        for (unsigned i = 1; i <= rank; ++i) {
            Cyc s = Cyc::rational(0, conductor);
            for (unsigned j = 0; j < ambient_dim; ++j)
                if (v.coords[j] != 0) s += phi_amb[j][dual(i) - 1].scaled(v.coords[j]);
            y[i - 1] = s;
        }
        return y;
    }

    /// Root coordinates back from eigen-coordinates (change of basis check).
    std::vector<Cyc> root_coords_from_eigen(const std::vector<Cyc>& y) const {
        std::vector<Cyc> x(rank, Cyc::rational(0, conductor));
        for (unsigned j = 0; j < rank; ++j)
            for (unsigned i = 0; i < rank; ++i)
                if (!y[i].is_zero()) x[j] += phi_root[j][i] * y[i];
        return x;
    }
};

namespace detail {

inline std::vector<std::vector<long long>> cartan_matrix(char family, unsigned rank) {
    std::vector<std::vector<long long>> a(rank, std::vector<long long>(rank, 0));
    auto link = [&](unsigned i, unsigned j) {
        a[i - 1][j - 1] = -1;
        a[j - 1][i - 1] = -1;
    };
    for (unsigned i = 0; i < rank; ++i) a[i][i] = 2;
    if (family == 'A') {
        for (unsigned i = 1; i < rank; ++i) link(i, i + 1);
    } else if (family == 'D') {
        for (unsigned i = 1; i + 1 < rank; ++i) link(i, i + 1);
        link(rank - 2, rank);
    } else {  // E_6, E_7, E_8: chain 1-3-4-...-rank, extra node 2 on 4
        link(1, 3);
        for (unsigned i = 3; i < rank; ++i) link(i, i + 1);
        link(2, 4);
    }
    return a;
}

inline std::vector<unsigned> exponent_table(char family, unsigned rank) {
    std::vector<unsigned> m;
    if (family == 'A') {
        for (unsigned i = 1; i <= rank; ++i) m.push_back(i);
    } else if (family == 'D') {
        for (unsigned i = 1; i < rank; ++i) m.push_back(2 * i - 1);
        m.push_back(rank - 1);
        std::sort(m.begin(), m.end());
    } else if (rank == 6) {
        m = {1, 4, 5, 7, 8, 11};
    } else if (rank == 7) {
        m = {1, 5, 7, 9, 11, 13, 17};
    } else {
        m = {1, 7, 11, 13, 17, 19, 23, 29};
    }
    return m;
}

inline std::vector<std::vector<long long>> identity_ll(unsigned n) {
    std::vector<std::vector<long long>> m(n, std::vector<long long>(n, 0));
    for (unsigned i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline std::vector<std::vector<long long>> mat_mul_ll(const std::vector<std::vector<long long>>& a,
                                                      const std::vector<std::vector<long long>>& b) {
    unsigned n = static_cast<unsigned>(a.size());
    std::vector<std::vector<long long>> c(n, std::vector<long long>(n, 0));
    for (unsigned i = 0; i < n; ++i)
        for (unsigned k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (unsigned j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

}  // namespace detail

/// Builds the full RootDatum for A_l (l>=1), D_l (l>=4), E_6/E_7/E_8.
/// conductor_override = 0 selects the default lcm(24, 2h).
inline RootDatum build_root_datum(char family, unsigned rank, unsigned conductor_override = 0) {
    bool ok = (family == 'A' && rank >= 1) || (family == 'D' && rank >= 4) ||
              (family == 'E' && rank >= 6 && rank <= 8);
    if (!ok)
        throw std::invalid_argument(std::string("unsupported root system ") + family +
                                    std::to_string(rank));

    RootDatum d;
    d.family = family;
    d.rank = rank;
    d.cartan = detail::cartan_matrix(family, rank);
    d.exponents = detail::exponent_table(family, rank);
    d.h = d.exponents.back() + 1;
    d.conductor = conductor_override ? conductor_override : std::lcm(24u, 2 * d.h);
    if (conductor_override && d.conductor % std::lcm(24u, 2 * d.h) != 0)
        throw std::invalid_argument("conductor must be a multiple of lcm(24, 2h)");

    // sigma = R_1 ... R_l, rightmost first; R_i(c) = c - (A c)_i e_i on root coords.
    auto reflect = [&](unsigned i, std::vector<long long> c) {
        long long s = 0;
        for (unsigned j = 0; j < rank; ++j) s += d.cartan[i][j] * c[j];
        c[i] -= s;
        return c;
    };
    d.sigma.assign(rank, std::vector<long long>(rank, 0));
    for (unsigned j = 0; j < rank; ++j) {
        std::vector<long long> c(rank, 0);
        c[j] = 1;
        for (unsigned i = rank; i-- > 0;) c = reflect(i, c);
        for (unsigned i = 0; i < rank; ++i) d.sigma[i][j] = c[i];
    }

    // order of sigma is exactly h
    {
        auto p = detail::identity_ll(rank);
        unsigned order = 0;
        for (unsigned k = 1; k <= d.h; ++k) {
            p = detail::mat_mul_ll(d.sigma, p);
            if (p == detail::identity_ll(rank)) {
                order = k;
                break;
            }
        }
        if (order != d.h) throw std::logic_error("Coxeter element order mismatch");
    }

    // (1 - sigma)^{-1} and the cocycle exponent matrix
    {
        QLin::Matrix oms(rank, std::vector<Rational>(rank));
        for (unsigned i = 0; i < rank; ++i)
            for (unsigned j = 0; j < rank; ++j)
                oms[i][j] = Rational((i == j ? 1 : 0) - d.sigma[i][j]);
        d.sigma_inv_shift = QLin::inverse(oms);
        d.eps_exponent.assign(rank, std::vector<long long>(rank, 0));
        for (unsigned i = 0; i < rank; ++i) {
            std::vector<Rational> w(rank);
            for (unsigned r = 0; r < rank; ++r) w[r] = d.sigma_inv_shift[r][i];
            for (unsigned j = 0; j < rank; ++j) {
                std::vector<Rational> ej(rank, Rational(0));
                ej[j] = 1;
                Rational v = d.pair_root(w, ej);
                if (rat_den(v) != 1)
                    throw std::logic_error("epsilon exponent not integral");
                d.eps_exponent[i][j] = rat_num(v).convert_to<long long>();
            }
        }
    }

    // ambient model
    if (family == 'A') {
        d.ambient_dim = rank + 1;
        d.root_to_amb.assign(d.ambient_dim, std::vector<Rational>(rank, Rational(0)));
        for (unsigned i = 0; i < rank; ++i) {
            d.root_to_amb[i][i] = 1;
            d.root_to_amb[i + 1][i] = -1;
        }
    } else if (family == 'D') {
        d.ambient_dim = rank;
        d.root_to_amb.assign(d.ambient_dim, std::vector<Rational>(rank, Rational(0)));
        for (unsigned i = 0; i + 1 < rank; ++i) {
            d.root_to_amb[i][i] = 1;
            d.root_to_amb[i + 1][i] = -1;
        }
        d.root_to_amb[rank - 2][rank - 1] = 1;
        d.root_to_amb[rank - 1][rank - 1] = 1;
    }

    // eigenbasis
    const unsigned N = d.conductor;
    auto zero = Cyc::rational(0, N);
    if (family == 'A') {
        // phi^k = (1/sqrt(l+1)) sum_j zeta_h^{-k(j-1)} e_j: DFT eigenbasis of the
        // cyclic Coxeter permutation, already normalized to (phi^i|phi^j) = delta.
        unsigned hh = d.h;
        Cyc scale = sqrt_of_integer(static_cast<long long>(rank) + 1, N).inverse();
        d.phi_amb.assign(d.ambient_dim, std::vector<Cyc>(rank, zero));
        for (unsigned k = 1; k <= rank; ++k)
            for (unsigned j = 0; j < d.ambient_dim; ++j)
                d.phi_amb[j][k - 1] =
                    scale * Cyc::zeta(N, -static_cast<long long>(k) * j * (N / hh));
    } else if (family == 'D' && rank == 4) {
        // the explicit D_4 eigenvectors, zeta = exp(pi i/3)
        Cyc s3i = sqrt_of_integer(3, N).inverse();
        Cyc s6i = sqrt_of_integer(6, N).inverse();
        Cyc sm3 = sqrt_of_integer(-3, N);
        auto z = [&](long long k) { return Cyc::zeta(N, k * (N / 6)); };
        d.phi_amb.assign(4, std::vector<Cyc>(4, zero));
        std::vector<Cyc> p1 = {s3i * z(2), s3i * z(1), s3i, zero};
        std::vector<Cyc> p2 = {-s6i, s6i, -s6i, s6i * sm3};
        for (unsigned j = 0; j < 4; ++j) {
            d.phi_amb[j][0] = p1[j];
            d.phi_amb[j][1] = p2[j];
            d.phi_amb[j][2] = p2[j].conj();
            d.phi_amb[j][3] = p1[j].conj();
        }
    } else {
        // generic exact eigensolve over Q(zeta_N) in root coordinates
        CycLin::Matrix sig(rank, std::vector<Cyc>(rank, zero));
        for (unsigned i = 0; i < rank; ++i)
            for (unsigned j = 0; j < rank; ++j) sig[i][j] = Cyc::rational(Rational(d.sigma[i][j]), N);
        d.phi_root.assign(rank, std::vector<Cyc>(rank, zero));
        std::set<unsigned> done;
        for (unsigned i = 1; i <= rank; ++i) {
            if (done.count(i)) continue;
            unsigned m = d.exponents[i - 1];
            // eigenvalue multiplicity within the exponent list
            std::vector<unsigned> idx;
            for (unsigned j = 1; j <= rank; ++j)
                if (d.exponents[j - 1] == m) idx.push_back(j);
            CycLin::Matrix a = sig;
            Cyc ev = Cyc::zeta(N, static_cast<long long>(m) * (N / d.h));
            for (unsigned r = 0; r < rank; ++r) a[r][r] = a[r][r] - ev;
            auto ker = CycLin::kernel(a);
            if (ker.size() != idx.size())
                throw std::logic_error("eigenvalue multiplicity mismatch");
            if (idx.size() == 1) {
                for (unsigned r = 0; r < rank; ++r) d.phi_root[r][idx[0] - 1] = ker[0][r];
            } else if (idx.size() == 2) {
                // D_{2n} middle pair: build an isotropic basis of the plane
                auto gram = [&](const std::vector<Cyc>& u, const std::vector<Cyc>& v) {
                    Cyc s = Cyc::rational(0, N);
                    for (unsigned r = 0; r < rank; ++r)
                        for (unsigned c = 0; c < rank; ++c)
                            if (!u[r].is_zero() && !v[c].is_zero())
                                s += u[r] * v[c] * Cyc(static_cast<int>(d.cartan[r][c]));
                    return s;
                };
                std::vector<Cyc> u = ker[0], v = ker[1];
                Cyc guu = gram(u, u), gvv = gram(v, v), guv = gram(u, v);
                std::vector<Cyc> iso1, iso2;
                if (guu.is_zero()) {
                    iso1 = u;
                    iso2 = v;
                } else if (gvv.is_zero()) {
                    iso1 = v;
                    iso2 = u;
                } else {
                    // u + t v isotropic: t = (-guv +- sqrt(guv^2 - guu gvv)) / gvv
                    Cyc disc = guv * guv - guu * gvv;
                    if (!disc.is_rational())
                        throw std::domain_error(
                            "degenerate eigenpair normalization needs a field extension");
                    Cyc sq = sqrt_of_rational(disc.rational_value(), N);
                    Cyc t1 = (sq - guv) / gvv, t2 = (Cyc(0) - sq - guv) / gvv;
                    iso1.resize(rank);
                    iso2.resize(rank);
                    for (unsigned r = 0; r < rank; ++r) {
                        iso1[r] = u[r] + t1 * v[r];
                        iso2[r] = u[r] + t2 * v[r];
                    }
                }
                for (unsigned r = 0; r < rank; ++r) {
                    d.phi_root[r][idx[0] - 1] = iso1[r];
                    d.phi_root[r][idx[1] - 1] = iso2[r];
                }
            } else {
                throw std::logic_error("unexpected exponent multiplicity > 2");
            }
            for (auto j : idx) done.insert(j);
        }
    }

    // express the eigenbasis in root coordinates when built in ambient ones
    if (!d.phi_amb.empty()) {
        d.phi_root.assign(rank, std::vector<Cyc>(rank, zero));
        if (family == 'A') {
            // alpha-coordinates via partial sums of ambient coordinates
            for (unsigned i = 0; i < rank; ++i)
                for (unsigned k = 1; k <= rank; ++k) {
                    Cyc acc = zero;
                    for (unsigned t = 0; t <= i; ++t) acc += d.phi_amb[t][k - 1];
                    d.phi_root[i][k - 1] = acc;
                }
        } else {
            QLin::Matrix e(d.ambient_dim, std::vector<Rational>(rank));
            for (unsigned i = 0; i < d.ambient_dim; ++i)
                for (unsigned j = 0; j < rank; ++j) e[i][j] = d.root_to_amb[i][j];
            auto einv = QLin::inverse(e);
            for (unsigned i = 0; i < rank; ++i)
                for (unsigned k = 0; k < rank; ++k) {
                    Cyc acc = zero;
                    for (unsigned j = 0; j < d.ambient_dim; ++j)
                        if (einv[i][j] != 0) acc += d.phi_amb[j][k].scaled(einv[i][j]);
                    d.phi_root[i][k] = acc;
                }
        }
    }

    // normalize: sigma phi^i = zeta^{m_i} phi^i, (phi^i|phi^j) = delta_{i+j,l+1}
    auto pair_cols = [&](unsigned i, unsigned j) {
        Cyc s = zero;
        for (unsigned r = 0; r < rank; ++r)
            for (unsigned c = 0; c < rank; ++c)
                if (!d.phi_root[r][i - 1].is_zero() && !d.phi_root[c][j - 1].is_zero())
                    s += d.phi_root[r][i - 1] * d.phi_root[c][j - 1] *
                         Cyc(static_cast<int>(d.cartan[r][c]));
        return s;
    };
    if (!(family == 'A' || (family == 'D' && rank == 4))) {
        // scale phi^i (i <= dual(i)) so its first nonzero root coordinate is 1,
        // then fix the dual column by the pairing
        for (unsigned i = 1; i <= rank; ++i) {
            unsigned j = d.dual(i);
            if (i > j) continue;
            unsigned lead = rank;
            for (unsigned r = 0; r < rank; ++r)
                if (!d.phi_root[r][i - 1].is_zero()) { lead = r; break; }
            if (lead == rank) throw std::logic_error("zero eigenvector");
            Cyc s = d.phi_root[lead][i - 1].inverse();
            for (unsigned r = 0; r < rank; ++r) d.phi_root[r][i - 1] = d.phi_root[r][i - 1] * s;
            if (i == j) {
                Cyc norm = pair_cols(i, i);
                if (!norm.is_rational())
                    throw std::domain_error("self-dual eigenvector norm is irrational");
                Cyc c = sqrt_of_rational(norm.rational_value(), N).inverse();
                for (unsigned r = 0; r < rank; ++r)
                    d.phi_root[r][i - 1] = d.phi_root[r][i - 1] * c;
            } else {
                Cyc p = pair_cols(i, j);
                if (p.is_zero()) throw std::logic_error("degenerate dual pairing");
                Cyc c = p.inverse();
                for (unsigned r = 0; r < rank; ++r)
                    d.phi_root[r][j - 1] = d.phi_root[r][j - 1] * c;
            }
        }
    }

    // verify the invariants
    for (unsigned i = 1; i <= rank; ++i) {
        Cyc ev = Cyc::zeta(N, static_cast<long long>(d.exponents[i - 1]) * (N / d.h));
        for (unsigned r = 0; r < rank; ++r) {
            Cyc img = zero;
            for (unsigned c = 0; c < rank; ++c)
                if (d.sigma[r][c] != 0 && !d.phi_root[c][i - 1].is_zero())
                    img += d.phi_root[c][i - 1].scaled(Rational(d.sigma[r][c]));
            if (img != ev * d.phi_root[r][i - 1])
                throw std::logic_error("eigenbasis: sigma action mismatch");
        }
        for (unsigned j = 1; j <= rank; ++j) {
            Cyc p = pair_cols(i, j);
            Cyc want = Cyc::rational(Rational(d.eta(i, j)), N);
            if (p != want) throw std::logic_error("eigenbasis: pairing not eta");
        }
    }

    // ambient coordinates of the eigenbasis (needed by A/D invariants)
    if (d.ambient_dim && d.phi_amb.empty()) {
        d.phi_amb.assign(d.ambient_dim, std::vector<Cyc>(rank, zero));
        for (unsigned j = 0; j < d.ambient_dim; ++j)
            for (unsigned k = 0; k < rank; ++k) {
                Cyc acc = zero;
                for (unsigned i = 0; i < rank; ++i)
                    if (d.root_to_amb[j][i] != 0)
                        acc += d.phi_root[i][k].scaled(d.root_to_amb[j][i]);
                d.phi_amb[j][k] = acc;
            }
    }

    // y_i(alpha_j) = (alpha_j | phi^{dual(i)})
    d.y_of_root.assign(rank, std::vector<Cyc>(rank, zero));
    for (unsigned i = 1; i <= rank; ++i)
        for (unsigned j = 0; j < rank; ++j) {
            Cyc s = zero;
            for (unsigned c = 0; c < rank; ++c)
                if (!d.phi_root[c][d.dual(i) - 1].is_zero())
                    s += d.phi_root[c][d.dual(i) - 1].scaled(Rational(d.cartan[j][c]));
            d.y_of_root[i - 1][j] = s;
        }

    // simple reflections acting on eigen-coordinates
    d.refl_eigen.resize(rank);
    for (unsigned j = 0; j < rank; ++j) {
        auto& m = d.refl_eigen[j];
        m.assign(rank, std::vector<Cyc>(rank, zero));
        // alpha_j in eigen-coordinates
        std::vector<Cyc> aj(rank);
        for (unsigned i = 0; i < rank; ++i) aj[i] = d.y_of_root[i][j];
        for (unsigned i = 1; i <= rank; ++i) {
            // (phi^i | alpha_j) = y_{dual(i)}(alpha_j)
            Cyc pa = d.y_of_root[d.dual(i) - 1][j];
            for (unsigned k = 0; k < rank; ++k) {
                m[k][i - 1] = (k == i - 1) ? Cyc::rational(1, N) : zero;
                if (!pa.is_zero() && !aj[k].is_zero()) m[k][i - 1] -= pa * aj[k];
            }
        }
    }

    // all roots by reflection closure
    {
        std::set<std::vector<long long>> seen;
        std::vector<std::vector<long long>> queue;
        for (unsigned i = 0; i < rank; ++i) {
            std::vector<long long> e(rank, 0);
            e[i] = 1;
            seen.insert(e);
            queue.push_back(e);
        }
        while (!queue.empty()) {
            auto v = queue.back();
            queue.pop_back();
            for (unsigned i = 0; i < rank; ++i) {
                auto w = reflect(i, v);
                if (seen.insert(w).second) queue.push_back(w);
            }
            std::vector<long long> neg(rank);
            for (unsigned i = 0; i < rank; ++i) neg[i] = -v[i];
            if (seen.insert(neg).second) queue.push_back(neg);
        }
        d.roots.assign(seen.begin(), seen.end());
    }

    return d;
}

inline RootDatum build_root_datum(const std::string& type, unsigned conductor_override = 0) {
    if (type.size() < 2) throw std::invalid_argument("type must look like A1, D4, E6");
    char fam = static_cast<char>(std::toupper(type[0]));
    unsigned rk = static_cast<unsigned>(std::stoul(type.substr(1)));
    return build_root_datum(fam, rk, conductor_override);
}

}  // namespace wce
