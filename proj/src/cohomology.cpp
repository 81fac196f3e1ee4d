#include "qfan/cohomology.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace qfan {

namespace {

using Mono = std::vector<int>;
using Poly = std::map<Mono, Rat>;  // polynomial in p_1..p_r

void poly_add(Poly& p, const Mono& e, const Rat& c)
{
    if (c == 0) return;
    auto it = p.find(e);
    if (it == p.end())
        p[e] = c;
    else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

Poly poly_mul(const Poly& a, const Poly& b)
{
    Poly out;
    for (const auto& [e1, c1] : a)
        for (const auto& [e2, c2] : b) {
            Mono e(e1.size());
            for (std::size_t i = 0; i < e1.size(); ++i) e[i] = e1[i] + e2[i];
            poly_add(out, e, c1 * c2);
        }
    return out;
}

Poly divisor_poly(const IMat& m, int i, int r)
{
    Poly d;
    for (int a = 0; a < r; ++a)
        if (m[i][a] != 0) {
            Mono e(r, 0);
            e[a] = 1;
            poly_add(d, e, Rat(m[i][a]));
        }
    return d;
}

/* Monomials of total degree d, pivot candidates first: high single exponents
 * get eliminated so products of distinct generators survive as normal forms
 * (the usual Stanley-Reisner picture). */
bool mono_before(const Mono& a, const Mono& b)
{
    int ma = *std::max_element(a.begin(), a.end());
    int mb = *std::max_element(b.begin(), b.end());
    if (ma != mb) return ma > mb;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

std::vector<Mono> monomials_of_degree(int r, int d)
{
    std::vector<Mono> out;
    Mono cur(r, 0);
    std::function<void(int, int)> rec = [&](int pos, int left) {
        if (pos == r - 1) {
            cur[pos] = left;
            out.push_back(cur);
            return;
        }
        for (int k = 0; k <= left; ++k) {
            cur[pos] = k;
            rec(pos + 1, left - k);
        }
    };
    if (r == 0) {
        if (d == 0) out.push_back({});
        return out;
    }
    rec(0, d);
    std::sort(out.begin(), out.end(), mono_before);
    return out;
}

}  // namespace

AlgebraElement GradedAlgebra::one() const
{
    return monomial(Mono(r, 0));
}

AlgebraElement GradedAlgebra::generator(int a) const
{
    Mono e(r, 0);
    e[a] = 1;
    return monomial(e);
}

AlgebraElement GradedAlgebra::divisor(int i) const
{
    AlgebraElement v = zero();
    for (int a = 0; a < r; ++a) {
        if (m_[i][a] == 0) continue;
        AlgebraElement g = generator(a);
        for (std::size_t k = 0; k < dim(); ++k) v[k] += Rat(m_[i][a]) * g[k];
    }
    return v;
}

AlgebraElement GradedAlgebra::monomial(const std::vector<int>& e) const
{
    int d = 0;
    for (int v : e) d += v;
    if (d > 2 * n) return zero();
    auto it = nf_.find(e);
    if (it == nf_.end()) throw Error("InternalError", "missing normal form");
    return it->second;
}

AlgebraElement GradedAlgebra::mul(const AlgebraElement& x, const AlgebraElement& y) const
{
    AlgebraElement out = zero();
    for (std::size_t i = 0; i < dim(); ++i) {
        if (x[i] == 0) continue;
        for (std::size_t j = 0; j < dim(); ++j) {
            if (y[j] == 0) continue;
            const AlgebraElement& t = table_[i][j];
            Rat c = x[i] * y[j];
            for (std::size_t k = 0; k < dim(); ++k)
                if (t[k] != 0) out[k] += c * t[k];
        }
    }
    return out;
}

AlgebraElement GradedAlgebra::mul_generator(int a, const AlgebraElement& x) const
{
    return mul(generator(a), x);
}

Rat GradedAlgebra::integrate(const AlgebraElement& x) const
{
    return x[top_] / point_norm_;
}

bool GradedAlgebra::is_homogeneous(const AlgebraElement& x, int d) const
{
    for (std::size_t k = 0; k < dim(); ++k)
        if (x[k] != 0 && basis_degree[k] != d) return false;
    return true;
}

RMat GradedAlgebra::poincare_pairing_matrix() const
{
    RMat g = rmat(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i)
        for (std::size_t j = 0; j < dim(); ++j) g[i][j] = integrate(table_[i][j]);
    // nondegeneracy is part of the contract
    if (rank(g) != dim()) throw Error("DegeneratePairing", "Poincare pairing is singular");
    return g;
}

GradedAlgebra::StructureOperators GradedAlgebra::structure_operators() const
{
    StructureOperators ops;
    for (int a = 0; a < r; ++a) {
        RMat pa = rmat(dim(), dim());
        for (std::size_t j = 0; j < dim(); ++j) {
            AlgebraElement col = mul_generator(a, table_[0][j]);  // basis[j] itself
            for (std::size_t i = 0; i < dim(); ++i) pa[i][j] = col[i];
        }
        ops.P.push_back(pa);
    }
    ops.C1 = rmat(dim(), dim());
    for (int a = 0; a < r; ++a)
        for (std::size_t i = 0; i < dim(); ++i)
            for (std::size_t j = 0; j < dim(); ++j) ops.C1[i][j] += Rat(k_[a]) * ops.P[a][i][j];
    ops.MU = rmat(dim(), dim());
    for (std::size_t i = 0; i < dim(); ++i) ops.MU[i][i] = basis_degree[i];
    return ops;
}

std::string GradedAlgebra::basis_label(std::size_t k, const std::string& var) const
{
    const Mono& e = basis[k];
    std::string s;
    for (int a = 0; a < r; ++a) {
        if (e[a] == 0) continue;
        if (!s.empty()) s += "*";
        s += var + std::to_string(a + 1);
        if (e[a] > 1) s += "^" + std::to_string(e[a]);
    }
    return s.empty() ? "1" : s;
}

GradedAlgebra build_algebra(const ExactSequenceData& esd,
                            const std::vector<PrimitiveRelation>& prels)
{
    GradedAlgebra ga;
    ga.n = esd.fan.n;
    ga.r = esd.r;
    ga.m_ = esd.M;
    ga.k_ = esd.euler_weights;

    std::vector<Poly> sr;
    for (const auto& pr : prels) {
        Poly g;
        poly_add(g, Mono(ga.r, 0), 1);
        for (int i : pr.collection) g = poly_mul(g, divisor_poly(esd.M, i, ga.r));
        sr.push_back(g);
    }

    // sparse same-degree expressions for the eliminated monomials
    std::map<Mono, std::map<Mono, Rat>> reduced;

    for (int d = 0; d <= 2 * ga.n; ++d) {
        std::vector<Mono> monos = monomials_of_degree(ga.r, d);
        std::map<Mono, std::size_t> col;
        for (std::size_t j = 0; j < monos.size(); ++j) col[monos[j]] = j;

        RMat rows;
        for (const auto& g : sr) {
            int dg = 0;
            for (const auto& v : g.begin()->first) dg += v;
            if (dg > d) continue;
            for (const auto& mult : monomials_of_degree(ga.r, d - dg)) {
                RVec row(monos.size(), Rat(0));
                for (const auto& [e, c] : g) {
                    Mono prod(ga.r);
                    for (int i = 0; i < ga.r; ++i) prod[i] = e[i] + mult[i];
                    row[col[prod]] += c;
                }
                rows.push_back(row);
            }
        }
        std::vector<std::size_t> pivots;
        if (!rows.empty()) pivots = rref(rows);
        std::vector<bool> is_pivot(monos.size(), false);
        for (auto p : pivots) is_pivot[p] = true;

        std::vector<Mono> kept;
        for (std::size_t j = 0; j < monos.size(); ++j) {
            if (is_pivot[j]) continue;
            if (d > ga.n)
                throw Error("DimensionMismatch",
                            "nonzero class in degree " + std::to_string(d) +
                                " above the top degree");
            kept.push_back(monos[j]);
        }
        std::sort(kept.begin(), kept.end(), std::greater<>());  // p_1 before p_2 in listings
        for (const auto& mono : kept) {
            ga.index_[mono] = ga.basis.size();
            ga.basis.push_back(mono);
            ga.basis_degree.push_back(d);
        }
        for (std::size_t pi = 0; pi < pivots.size(); ++pi) {
            std::map<Mono, Rat> expr;
            for (std::size_t j = 0; j < monos.size(); ++j) {
                if (j == pivots[pi] || rows[pi][j] == 0) continue;
                expr[monos[j]] = -rows[pi][j];
            }
            reduced[monos[pivots[pi]]] = expr;
        }
    }

    const std::size_t mu = ga.basis.size();
    if (mu != static_cast<std::size_t>(normalized_volume(esd.fan)))
        throw Error("DimensionMismatch",
                    "expected dimension " + std::to_string(normalized_volume(esd.fan)) +
                        ", got " + std::to_string(mu));
    if (ga.basis_degree.back() != ga.n ||
        std::count(ga.basis_degree.begin(), ga.basis_degree.end(), ga.n) != 1)
        throw Error("DimensionMismatch", "top degree component is not one-dimensional");
    ga.top_ = mu - 1;

    // materialize normal forms for every monomial of degree <= 2n
    for (int d = 0; d <= 2 * ga.n; ++d)
        for (const auto& mono : monomials_of_degree(ga.r, d)) {
            AlgebraElement v(mu, Rat(0));
            auto bi = ga.index_.find(mono);
            if (bi != ga.index_.end()) {
                v[bi->second] = 1;
            } else if (d <= 2 * ga.n) {
                auto it = reduced.find(mono);
                if (it != reduced.end())
                    for (const auto& [m2, c] : it->second) {
                        auto b2 = ga.index_.find(m2);
                        if (b2 == ga.index_.end())
                            throw Error("InternalError", "normal form references a non-basis monomial");
                        v[b2->second] += c;
                    }
                // monomials of degree > n with no row are impossible once rank checks pass
            }
            ga.nf_[mono] = v;
        }

    // multiplication table
    ga.table_.assign(mu, std::vector<AlgebraElement>(mu));
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) {
            Mono e(ga.r);
            for (int a = 0; a < ga.r; ++a) e[a] = ga.basis[i][a] + ga.basis[j][a];
            ga.table_[i][j] = ga.nf_.at(e);
        }

    // point class normalization, with cone independence check
    bool first = true;
    for (const auto& cone : esd.fan.max_cones) {
        Poly pc;
        poly_add(pc, Mono(ga.r, 0), 1);
        for (int i : cone) pc = poly_mul(pc, divisor_poly(esd.M, i, ga.r));
        AlgebraElement v(mu, Rat(0));
        for (const auto& [e, c] : pc) {
            const AlgebraElement nf = ga.nf_.at(e);
            for (std::size_t k = 0; k < mu; ++k) v[k] += c * nf[k];
        }
        for (std::size_t k = 0; k + 1 < mu; ++k)
            if (v[k] != 0) throw Error("InternalError", "point class is not of top degree");
        if (v[ga.top_] == 0) throw Error("DegeneratePairing", "point class vanishes");
        if (first) {
            ga.point_norm_ = v[ga.top_];
            first = false;
        } else if (v[ga.top_] != ga.point_norm_) {
            throw Error("InternalError", "point class depends on the chosen cone");
        }
    }
    return ga;
}

}  // namespace qfan
