#pragma once

#include "qfan/matrix.hpp"

#include <optional>

namespace qfan {

/* Exact rational simplex, Bland's rule (no cycling).  Problems here are tiny
 * (a few dozen variables), so a dense tableau is plenty. */

enum class LPStatus { Optimal, Infeasible, Unbounded };

struct LPResult {
    LPStatus status;
    Rat value;
    RVec x;
};

namespace detail {

/* min c.x  s.t.  T x = b, x >= 0, starting from the given basic feasible
 * basis (basis[i] = column basic in row i, tableau already in canonical
 * form for it).  Returns false on unboundedness. */
inline bool simplex_core(RMat& t, std::vector<std::size_t>& basis, std::size_t ncols)
{
    const std::size_t m = t.size() - 1;  // last row = objective
    for (;;) {
        std::size_t enter = ncols;
        for (std::size_t j = 0; j < ncols; ++j)
            if (t[m][j] < 0) { enter = j; break; }  // Bland: least index
        if (enter == ncols) return true;
        std::size_t leave = m;
        for (std::size_t i = 0; i < m; ++i) {
            if (t[i][enter] <= 0) continue;
            if (leave == m) { leave = i; continue; }
            Rat cur = t[i][ncols] / t[i][enter];
            Rat best = t[leave][ncols] / t[leave][enter];
            if (cur < best || (cur == best && basis[i] < basis[leave])) leave = i;
        }
        if (leave == m) return false;  // unbounded
        Rat piv = t[leave][enter];
        for (std::size_t j = 0; j <= ncols; ++j) t[leave][j] /= piv;
        for (std::size_t i = 0; i <= m; ++i) {
            if (i == leave || t[i][enter] == 0) continue;
            Rat f = t[i][enter];
            for (std::size_t j = 0; j <= ncols; ++j) t[i][j] -= f * t[leave][j];
        }
        basis[leave] = enter;
    }
}

}  // namespace detail

/* min c.x  s.t.  A x = b, x >= 0.  Two-phase. */
inline LPResult lp_solve(RMat a, RVec b, RVec c)
{
    const std::size_t m = a.size();
    const std::size_t n = m ? a[0].size() : c.size();
    for (std::size_t i = 0; i < m; ++i)
        if (b[i] < 0) {
            b[i] = -b[i];
            for (auto& v : a[i]) v = -v;
        }

    // phase 1 tableau: [A | I | b], objective = sum of artificials
    const std::size_t ncols = n + m;
    RMat t = rmat(m + 1, ncols + 1);
    std::vector<std::size_t> basis(m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t[i][j] = a[i][j];
        t[i][n + i] = 1;
        t[i][ncols] = b[i];
        basis[i] = n + i;
    }
    for (std::size_t j = 0; j <= ncols; ++j)
        for (std::size_t i = 0; i < m; ++i) t[m][j] -= t[i][j];
    for (std::size_t i = 0; i < m; ++i) t[m][n + i] = 0;

    detail::simplex_core(t, basis, ncols);
    if (t[m][ncols] != 0) return {LPStatus::Infeasible, 0, {}};

    // pivot remaining artificials out of the basis (or their rows are redundant)
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] < n) continue;
        std::size_t enter = n;
        for (std::size_t j = 0; j < n; ++j)
            if (t[i][j] != 0) { enter = j; break; }
        if (enter == n) continue;  // redundant row, harmless
        Rat piv = t[i][enter];
        for (std::size_t j = 0; j <= ncols; ++j) t[i][j] /= piv;
        for (std::size_t k = 0; k <= m; ++k) {
            if (k == i || t[k][enter] == 0) continue;
            Rat f = t[k][enter];
            for (std::size_t j = 0; j <= ncols; ++j) t[k][j] -= f * t[i][j];
        }
        basis[i] = enter;
    }

    // phase 2: rebuild the tableau without the artificial columns
    RMat t2 = rmat(m + 1, n + 1);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) t2[i][j] = t[i][j];
        t2[i][n] = t[i][ncols];
    }
    for (std::size_t j = 0; j < n; ++j) t2[m][j] = c[j];
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] >= n || t2[m][basis[i]] == 0) continue;
        Rat f = t2[m][basis[i]];
        for (std::size_t j = 0; j <= n; ++j) t2[m][j] -= f * t2[i][j];
    }
    // rows still basic in an artificial are redundant zero rows; mark them out
    std::vector<std::size_t> basis2;
    RMat t3;
    for (std::size_t i = 0; i < m; ++i) {
        if (basis[i] >= n) continue;
        t3.push_back(t2[i]);
        basis2.push_back(basis[i]);
    }
    t3.push_back(t2[m]);

    if (!detail::simplex_core(t3, basis2, n))
        return {LPStatus::Unbounded, 0, {}};

    RVec x(n, Rat(0));
    for (std::size_t i = 0; i + 1 < t3.size(); ++i) x[basis2[i]] = t3[i][n];
    return {LPStatus::Optimal, -t3[t3.size() - 1][n], x};
}

/* Existence of y (free sign) with rows.y >= 1 componentwise; used for the
 * strict feasibility questions (projectivity, strictly convex support
 * functions).  Encoded as rows.(u - v) - s = 1 with u, v, s >= 0. */
inline bool lp_feasible_ge1(const RMat& rows)
{
    if (rows.empty()) return true;
    const std::size_t m = rows.size(), n = rows[0].size();
    RMat a = rmat(m, 2 * n + m);
    RVec b(m, Rat(1)), c(2 * n + m, Rat(0));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            a[i][j] = rows[i][j];
            a[i][n + j] = -rows[i][j];
        }
        a[i][2 * n + i] = -1;
    }
    return lp_solve(a, b, c).status == LPStatus::Optimal;
}

/* Gauge of y with respect to the cone over the given generators:
 * min sum(c) s.t. sum c_i g_i = y, c >= 0; nullopt when y is outside. */
inline std::optional<Rat> cone_gauge(const IMat& generators_as_columns, const IVec& y)
{
    const std::size_t n = generators_as_columns.size();
    const std::size_t m = n ? generators_as_columns[0].size() : 0;
    RMat a = rmat(n, m);
    RVec b(n), c(m, Rat(1));
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = Rat(y[i]);
        for (std::size_t j = 0; j < m; ++j) a[i][j] = Rat(generators_as_columns[i][j]);
    }
    auto res = lp_solve(a, b, c);
    if (res.status != LPStatus::Optimal) return std::nullopt;
    return res.value;
}

}  // namespace qfan
