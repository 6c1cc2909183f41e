#pragma once

#include "wce/cyclotomic.hpp"

#include <optional>
#include <vector>

namespace wce {

/// Dense exact linear algebra over a field (Rational or Cyc).
/// Pivoting is by column order with the first nonzero row, so results are
/// deterministic functions of the input.
template <class F>
struct LinAlg {
    using Matrix = std::vector<std::vector<F>>;

    static bool is_zero(const F& x) {
        if constexpr (std::is_same_v<F, Rational>) return x == 0;
        else return x.is_zero();
    }

    static F inv(const F& x) {
        if constexpr (std::is_same_v<F, Rational>) return Rational(1) / x;
        else return x.inverse();
    }

    /// Reduced row echelon form in place; returns pivot column of each pivot row.
    static std::vector<std::size_t> rref(Matrix& m) {
        std::vector<std::size_t> pivots;
        if (m.empty()) return pivots;
        std::size_t rows = m.size(), cols = m[0].size(), r = 0;
        for (std::size_t c = 0; c < cols && r < rows; ++c) {
            std::size_t sel = rows;
            for (std::size_t i = r; i < rows; ++i)
                if (!is_zero(m[i][c])) { sel = i; break; }
            if (sel == rows) continue;
            std::swap(m[r], m[sel]);
            F s = inv(m[r][c]);
            for (std::size_t j = c; j < cols; ++j)
                if (!is_zero(m[r][j])) m[r][j] = m[r][j] * s;
            for (std::size_t i = 0; i < rows; ++i) {
                if (i == r || is_zero(m[i][c])) continue;
                F f = m[i][c];
                for (std::size_t j = c; j < cols; ++j)
                    if (!is_zero(m[r][j])) m[i][j] = m[i][j] - f * m[r][j];
            }
            pivots.push_back(c);
            ++r;
        }
        return pivots;
    }

    /// Basis of the right kernel of m (each vector has length = #cols).
    static std::vector<std::vector<F>> kernel(Matrix m) {
        if (m.empty()) return {};
        std::size_t cols = m[0].size();
        auto pivots = rref(m);
        std::vector<bool> is_pivot(cols, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<F>> basis;
        for (std::size_t fc = 0; fc < cols; ++fc) {
            if (is_pivot[fc]) continue;
            std::vector<F> v(cols, F(0));
            v[fc] = F(1);
            for (std::size_t r = 0; r < pivots.size(); ++r) {
                // row r: x_{pivots[r]} + sum_j m[r][j] x_j = 0
                v[pivots[r]] = F(0) - m[r][fc];
            }
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// Solve m x = b; returns nullopt if inconsistent. Free variables are 0.
    static std::optional<std::vector<F>> solve(Matrix m, const std::vector<F>& b) {
        std::size_t rows = m.size();
        if (rows == 0) return std::vector<F>{};
        std::size_t cols = m[0].size();
        for (std::size_t i = 0; i < rows; ++i) m[i].push_back(b[i]);
        auto pivots = rref(m);
        // inconsistent if a pivot lands in the RHS column
        if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
        std::vector<F> x(cols, F(0));
        for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
        return x;
    }

    static Matrix inverse(Matrix m) {
        std::size_t n = m.size();
        for (std::size_t i = 0; i < n; ++i) {
            m[i].resize(2 * n, F(0));
            m[i][n + i] = F(1);
        }
        auto pivots = rref(m);
        if (pivots.size() != n) throw std::domain_error("matrix not invertible");
        for (std::size_t r = 0; r < n; ++r)
            if (pivots[r] != r) throw std::domain_error("matrix not invertible");
        Matrix out(n, std::vector<F>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out[i][j] = m[i][n + j];
        return out;
    }

    static std::vector<F> mat_vec(const Matrix& m, const std::vector<F>& v) {
        std::vector<F> out(m.size(), F(0));
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!is_zero(m[i][j]) && !is_zero(v[j])) out[i] = out[i] + m[i][j] * v[j];
        return out;
    }
};

using QLin = LinAlg<Rational>;
using CycLin = LinAlg<Cyc>;

/// Right kernel of a sparse constraint system. Rows are sparse (column,
/// value) lists; pivoting follows column order, so the reduced rows and the
/// kernel basis are deterministic.
inline std::vector<std::vector<Cyc>> sparse_kernel(
    std::vector<std::vector<std::pair<std::size_t, Cyc>>> rows, std::size_t ncols,
    std::size_t stop_at_rank = SIZE_MAX) {
    using Row = std::vector<std::pair<std::size_t, Cyc>>;
    auto axpy = [](Row& r, const Cyc& f, const Row& p) {
        // r -= f * p, both sorted by column
        Row out;
        out.reserve(r.size() + p.size());
        std::size_t i = 0, j = 0;
        while (i < r.size() || j < p.size()) {
            if (j == p.size() || (i < r.size() && r[i].first < p[j].first)) {
                out.push_back(std::move(r[i++]));
            } else if (i == r.size() || p[j].first < r[i].first) {
                out.emplace_back(p[j].first, -(f * p[j].second));
                ++j;
            } else {
                Cyc v = r[i].second - f * p[j].second;
                if (!v.is_zero()) out.emplace_back(r[i].first, std::move(v));
                ++i;
                ++j;
            }
        }
        r = std::move(out);
    };

    std::map<std::size_t, Row> pivot_rows;  // pivot column -> normalized row
    for (auto& row : rows) {
        if (pivot_rows.size() >= stop_at_rank) break;
        std::sort(row.begin(), row.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        // merge duplicate columns
        Row merged;
        for (auto& [c, v] : row) {
            if (!merged.empty() && merged.back().first == c)
                merged.back().second += v;
            else
                merged.emplace_back(c, v);
        }
        merged.erase(std::remove_if(merged.begin(), merged.end(),
                                    [](const auto& e) { return e.second.is_zero(); }),
                     merged.end());
        Row cur = std::move(merged);
        while (!cur.empty()) {
            auto it = pivot_rows.find(cur.front().first);
            if (it == pivot_rows.end()) break;
            axpy(cur, cur.front().second, it->second);
        }
        if (cur.empty()) continue;
        Cyc inv = cur.front().second.inverse();
        for (auto& [c, v] : cur) v = v * inv;
        pivot_rows.emplace(cur.front().first, std::move(cur));
    }
    // back-substitute to reduced form
    for (auto it = pivot_rows.rbegin(); it != pivot_rows.rend(); ++it) {
        auto next = std::next(it);
        for (auto jt = next; jt != pivot_rows.rend(); ++jt) {
            Row& r = jt->second;
            for (std::size_t k = 1; k < r.size(); ++k) {
                if (r[k].first == it->first) {
                    Cyc f = r[k].second;
                    axpy(r, f, it->second);
                    break;
                }
                if (r[k].first > it->first) break;
            }
        }
    }
    std::vector<std::vector<Cyc>> basis;
    for (std::size_t fc = 0; fc < ncols; ++fc) {
        if (pivot_rows.count(fc)) continue;
        std::vector<Cyc> v(ncols, Cyc(0));
        v[fc] = Cyc(1);
        for (const auto& [pc, row] : pivot_rows) {
            for (const auto& [c, val] : row)
                if (c == fc) {
                    v[pc] = -val;
                    break;
                }
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace wce
