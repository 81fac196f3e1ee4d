#pragma once

#include "qfan/rational.hpp"

#include <cassert>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace qfan {

/* Dense exact matrices at desk scale; all elimination is fraction-free or
 * plain rational Gauss, no pivoting heuristics needed. */

using IMat = std::vector<std::vector<Int>>;
using RMat = std::vector<std::vector<Rat>>;

inline IMat imat(std::size_t rows, std::size_t cols) { return IMat(rows, std::vector<Int>(cols, 0)); }
inline RMat rmat(std::size_t rows, std::size_t cols) { return RMat(rows, std::vector<Rat>(cols, 0)); }

inline RMat rident(std::size_t k)
{
    RMat m = rmat(k, k);
    for (std::size_t i = 0; i < k; ++i) m[i][i] = 1;
    return m;
}

inline RMat to_rmat(const IMat& a)
{
    RMat m = rmat(a.size(), a.empty() ? 0 : a[0].size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[i].size(); ++j) m[i][j] = Rat(a[i][j]);
    return m;
}

inline RMat rmul(const RMat& a, const RMat& b)
{
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    RMat c = rmat(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (b[l][j] != 0) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline RVec rmulv(const RMat& a, const RVec& x)
{
    RVec y(a.size(), Rat(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < x.size(); ++j)
            if (a[i][j] != 0 && x[j] != 0) y[i] += a[i][j] * x[j];
    return y;
}

inline RMat rtranspose(const RMat& a)
{
    if (a.empty()) return {};
    RMat t = rmat(a[0].size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < a[0].size(); ++j) t[j][i] = a[i][j];
    return t;
}

/* Row echelon with full back-substitution.  Returns pivot columns; the matrix
 * is modified in place. */
inline std::vector<std::size_t> rref(RMat& m)
{
    std::vector<std::size_t> pivots;
    std::size_t rows = m.size(), cols = rows ? m[0].size() : 0, row = 0;
    for (std::size_t col = 0; col < cols && row < rows; ++col) {
        std::size_t sel = row;
        while (sel < rows && m[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[row]);
        Rat inv = m[row][col];
        for (std::size_t j = col; j < cols; ++j) m[row][j] /= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == row || m[i][col] == 0) continue;
            Rat f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[row][j];
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

inline std::size_t rank(RMat m) { return rref(m).size(); }

inline Rat rdet(RMat m)
{
    std::size_t k = m.size();
    Rat d = 1;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t sel = col;
        while (sel < k && m[sel][col] == 0) ++sel;
        if (sel == k) return 0;
        if (sel != col) {
            std::swap(m[sel], m[col]);
            d = -d;
        }
        d *= m[col][col];
        for (std::size_t i = col + 1; i < k; ++i) {
            if (m[i][col] == 0) continue;
            Rat f = m[i][col] / m[col][col];
            for (std::size_t j = col; j < k; ++j) m[i][j] -= f * m[col][j];
        }
    }
    return d;
}

inline std::optional<RVec> rsolve(RMat a, RVec b)
{
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    auto pivots = rref(a);
    RVec x(cols, Rat(0));
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        if (pivots[i] == cols) return std::nullopt;  // inconsistent
        x[pivots[i]] = a[i][cols];
    }
    // Reject underdetermined leftovers only if they break exactness: the
    // particular solution with free variables = 0 is returned.
    return x;
}

inline std::optional<RMat> rinverse(RMat a)
{
    std::size_t k = a.size();
    for (std::size_t i = 0; i < k; ++i) {
        a[i].resize(2 * k, Rat(0));
        a[i][k + i] = 1;
    }
    auto pivots = rref(a);
    if (pivots.size() != k) return std::nullopt;
    RMat inv = rmat(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) inv[i][j] = a[i][k + j];
    return inv;
}

/* Rational kernel basis (columns of the result span ker a). */
inline RMat rkernel(RMat a)
{
    std::size_t cols = a.empty() ? 0 : a[0].size();
    auto pivots = rref(a);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    RMat basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RVec v(cols, Rat(0));
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
        basis.push_back(v);
    }
    return rtranspose(basis);  // columns = kernel vectors (empty if trivial)
}

// ---------------------------------------------------------------------------
// Integer linear algebra: Smith normal form and primitive kernel bases.
// ---------------------------------------------------------------------------

struct SmithForm {
    IMat u, d, v;              // u * a * v = d, u and v unimodular
    std::vector<Int> divisors; // nonzero elementary divisors d_1 | d_2 | ...
};

inline IMat imul(const IMat& a, const IMat& b)
{
    std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    IMat c = imat(n, m);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (b[l][j] != 0) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

inline IMat iident(std::size_t k)
{
    IMat m = imat(k, k);
    for (std::size_t i = 0; i < k; ++i) m[i][i] = 1;
    return m;
}

inline SmithForm smith_form(IMat a)
{
    std::size_t rows = a.size(), cols = rows ? a[0].size() : 0;
    SmithForm s{iident(rows), a, iident(cols), {}};
    auto& d = s.d;

    auto row_op = [&](std::size_t i1, std::size_t i2, const Int& f) {
        for (std::size_t j = 0; j < cols; ++j) d[i1][j] -= f * d[i2][j];
        for (std::size_t j = 0; j < rows; ++j) s.u[i1][j] -= f * s.u[i2][j];
    };
    auto col_op = [&](std::size_t j1, std::size_t j2, const Int& f) {
        for (std::size_t i = 0; i < rows; ++i) d[i][j1] -= f * d[i][j2];
        for (std::size_t i = 0; i < cols; ++i) s.v[i][j1] -= f * s.v[i][j2];
    };

    std::size_t t = 0;
    while (t < rows && t < cols) {
        // locate a nonzero entry of minimal absolute value in the lower-right block
        std::size_t pi = t, pj = t;
        Int best = 0;
        for (std::size_t i = t; i < rows; ++i)
            for (std::size_t j = t; j < cols; ++j) {
                Int v = d[i][j] < 0 ? Int(-d[i][j]) : d[i][j];
                if (v != 0 && (best == 0 || v < best)) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (best == 0) break;
        std::swap(d[pi], d[t]);
        std::swap(s.u[pi], s.u[t]);
        if (pj != t) {
            for (std::size_t i = 0; i < rows; ++i) std::swap(d[i][pj], d[i][t]);
            for (std::size_t i = 0; i < cols; ++i) std::swap(s.v[i][pj], s.v[i][t]);
        }
        bool clean = true;
        for (std::size_t i = t + 1; i < rows; ++i)
            if (d[i][t] != 0) {
                row_op(i, t, d[i][t] / d[t][t]);
                if (d[i][t] != 0) clean = false;
            }
        for (std::size_t j = t + 1; j < cols; ++j)
            if (d[t][j] != 0) {
                col_op(j, t, d[t][j] / d[t][t]);
                if (d[t][j] != 0) clean = false;
            }
        if (!clean) continue;  // remainders left, repeat with smaller pivot
        // divisibility fix-up: d[t][t] must divide the rest of the block
        bool fixed = true;
        for (std::size_t i = t + 1; i < rows && fixed; ++i)
            for (std::size_t j = t + 1; j < cols && fixed; ++j)
                if (d[i][j] % d[t][t] != 0) {
                    // add row i to row t, then restart elimination at t
                    for (std::size_t jj = 0; jj < cols; ++jj) d[t][jj] += d[i][jj];
                    for (std::size_t jj = 0; jj < rows; ++jj) s.u[t][jj] += s.u[i][jj];
                    fixed = false;
                }
        if (!fixed) continue;
        if (d[t][t] < 0) {
            for (std::size_t j = 0; j < cols; ++j) d[t][j] = -d[t][j];
            for (std::size_t j = 0; j < rows; ++j) s.u[t][j] = -s.u[t][j];
        }
        ++t;
    }
    for (std::size_t i = 0; i < t; ++i) s.divisors.push_back(d[i][i]);
    return s;
}

/* Integer kernel of a (columns of result are a lattice basis of ker a). */
inline IMat ikernel(const IMat& a)
{
    std::size_t cols = a.empty() ? 0 : a[0].size();
    SmithForm s = smith_form(a);
    std::size_t r = s.divisors.size();
    IMat basis = imat(cols, cols - r);
    // a * v has zero columns beyond index r, so those columns of v span ker a.
    for (std::size_t j = r; j < cols; ++j)
        for (std::size_t i = 0; i < cols; ++i) basis[i][j - r] = s.v[i][j];
    return basis;
}

}  // namespace qfan
