#include "qfan/qring.hpp"

#include <algorithm>
#include <functional>
#include <map>

namespace qfan {

namespace {

using Mono = std::vector<int>;          // p-exponents
using QMono = std::pair<Mono, Mono>;    // (p-exponents, q-exponents)
using QRPoly = std::map<QMono, Rat>;

void qr_add(QRPoly& p, const QMono& m, const Rat& c)
{
    if (c == 0) return;
    auto it = p.find(m);
    if (it == p.end())
        p[m] = c;
    else {
        it->second += c;
        if (it->second == 0) p.erase(it);
    }
}

QRPoly qr_mul(const QRPoly& a, const QRPoly& b, int bound)
{
    QRPoly out;
    for (const auto& [m1, c1] : a)
        for (const auto& [m2, c2] : b) {
            QMono m = m1;
            bool ok = true;
            for (std::size_t i = 0; i < m.first.size(); ++i) m.first[i] += m2.first[i];
            for (std::size_t i = 0; i < m.second.size(); ++i) {
                m.second[i] += m2.second[i];
                if (m.second[i] > bound) ok = false;
            }
            if (ok) qr_add(out, m, c1 * c2);
        }
    return out;
}

/* same p-ordering as the cohomology elimination */
bool p_before(const Mono& a, const Mono& b)
{
    if (a.empty()) return false;
    int ma = *std::max_element(a.begin(), a.end());
    int mb = *std::max_element(b.begin(), b.end());
    if (ma != mb) return ma > mb;
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

std::vector<Mono> p_monomials(int r, int d)
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
    std::sort(out.begin(), out.end(), p_before);
    return out;
}

/* q-exponent boxes with componentwise bound */
std::vector<Mono> q_box(int r, int bound)
{
    std::vector<Mono> out;
    Mono cur(r, 0);
    std::function<void(int)> rec = [&](int pos) {
        if (pos == r) {
            out.push_back(cur);
            return;
        }
        for (int k = 0; k <= bound; ++k) {
            cur[pos] = k;
            rec(pos + 1);
        }
    };
    rec(0);
    return out;
}

}  // namespace

QuantumRing batyrev_quantum_ring(const ExactSequenceData& esd,
                                 const std::vector<PrimitiveRelation>& prels,
                                 const GradedAlgebra& ga, QRingMode mode, int q_order)
{
    const int r = esd.r;
    const int n = esd.fan.n;

    if (mode == QRingMode::GradedExact)
        for (const auto& k : esd.euler_weights)
            if (k <= 0)
                throw Error("GradingNotPositive",
                            "a quantum parameter has non-positive degree; use the "
                            "q-truncated mode");
    const int bound = mode == QRingMode::GradedExact ? std::max(q_order, n + 1) : q_order;

    // relation polynomials
    std::vector<QRPoly> rels;
    std::vector<int> rel_degree;
    for (const auto& pr : prels) {
        QRPoly pos, neg;
        qr_add(pos, {Mono(r, 0), Mono(r, 0)}, 1);
        Mono qshift(r, 0);
        for (int a = 0; a < r; ++a) qshift[a] = static_cast<int>(pr.nef_degrees[a]);
        qr_add(neg, {Mono(r, 0), qshift}, 1);
        for (int i = 0; i < esd.fan.m(); ++i) {
            QRPoly d;
            for (int a = 0; a < r; ++a)
                if (esd.M[i][a] != 0) {
                    Mono e(r, 0);
                    e[a] = 1;
                    qr_add(d, {e, Mono(r, 0)}, Rat(esd.M[i][a]));
                }
            for (Int s = 0; s < pr.relation[i]; ++s) pos = qr_mul(pos, d, bound);
            for (Int s = 0; s < -pr.relation[i]; ++s) neg = qr_mul(neg, d, bound);
        }
        QRPoly rel = pos;
        for (const auto& [m, c] : neg) qr_add(rel, m, -c);
        int deg = 0;
        for (const auto& v : pr.relation)
            if (v > 0) deg += static_cast<int>(v);
        rels.push_back(rel);
        rel_degree.push_back(deg);
    }

    const auto qs = q_box(r, bound);
    auto qdeg = [&](const Mono& e) {
        Int d = 0;
        for (int a = 0; a < r; ++a) d += esd.euler_weights[a] * e[a];
        return d;
    };

    // per-degree elimination; keep normal forms of the q-free monomials
    std::map<Mono, std::map<QMono, Rat>> nf;  // p-monomial -> combination of reduced monomials

    for (int d = 0; d <= n + 1; ++d) {
        // column monomials of this degree
        std::vector<QMono> monos;
        for (const auto& e : qs) {
            Int dq = qdeg(e);
            if (dq > d) continue;
            for (const auto& al : p_monomials(r, d - static_cast<int>(dq)))
                monos.push_back({al, e});
        }
        std::sort(monos.begin(), monos.end(), [](const QMono& a, const QMono& b) {
            int qa = 0, qb = 0;
            for (int v : a.second) qa += v;
            for (int v : b.second) qb += v;
            if (qa != qb) return qa < qb;
            if (a.first != b.first) return p_before(a.first, b.first);
            return a.second < b.second;
        });
        std::map<QMono, std::size_t> col;
        for (std::size_t j = 0; j < monos.size(); ++j) col[monos[j]] = j;

        RMat rows;
        for (std::size_t ri = 0; ri < rels.size(); ++ri) {
            if (rel_degree[ri] > d) continue;
            for (const auto& e : qs) {
                Int dq = qdeg(e);
                if (static_cast<Int>(rel_degree[ri]) + dq > d) continue;
                for (const auto& al :
                     p_monomials(r, d - rel_degree[ri] - static_cast<int>(dq))) {
                    RVec row(monos.size(), Rat(0));
                    bool nonzero = false;
                    for (const auto& [m, c] : rels[ri]) {
                        QMono prod = m;
                        bool ok = true;
                        for (int i = 0; i < r; ++i) prod.first[i] += al[i];
                        for (int i = 0; i < r; ++i) {
                            prod.second[i] += e[i];
                            if (prod.second[i] > bound) ok = false;
                        }
                        if (!ok) continue;
                        row[col.at(prod)] += c;
                        nonzero = true;
                    }
                    if (nonzero) rows.push_back(row);
                }
            }
        }
        std::vector<std::size_t> pivots;
        if (!rows.empty()) pivots = rref(rows);
        std::vector<bool> is_pivot(monos.size(), false);
        for (auto p : pivots) is_pivot[p] = true;

        // rank check: the quotient at this degree must match the free module
        std::size_t expected = 0;
        for (const auto& e : qs) {
            Int dq = qdeg(e);
            if (dq > d) continue;
            for (std::size_t k = 0; k < ga.dim(); ++k)
                if (ga.basis_degree[k] == d - static_cast<int>(dq)) ++expected;
        }
        if (monos.size() - pivots.size() != expected)
            throw Error("RankDrop", "degree " + std::to_string(d) + ": expected " +
                                        std::to_string(expected) + " got " +
                                        std::to_string(monos.size() - pivots.size()));
        // reduced monomials must be lifted basis monomials
        std::map<Mono, std::size_t> basis_index;
        for (std::size_t k = 0; k < ga.dim(); ++k) basis_index[ga.basis[k]] = k;
        for (std::size_t j = 0; j < monos.size(); ++j)
            if (!is_pivot[j] && !basis_index.count(monos[j].first))
                throw Error("RankDrop", "reduced monomial is not a lifted basis monomial");

        // normal forms of the q-free monomials of this degree
        for (std::size_t j = 0; j < monos.size(); ++j) {
            bool qfree = true;
            for (int v : monos[j].second) qfree = qfree && v == 0;
            if (!qfree) continue;
            std::map<QMono, Rat> expr;
            if (!is_pivot[j]) {
                expr[monos[j]] = 1;
            } else {
                std::size_t row = std::find(pivots.begin(), pivots.end(), j) - pivots.begin();
                for (std::size_t jj = 0; jj < monos.size(); ++jj) {
                    if (jj == j || rows[row][jj] == 0) continue;
                    if (is_pivot[jj])
                        throw Error("InternalError", "rref left a pivot in a normal form");
                    expr[monos[jj]] = -rows[row][jj];
                }
            }
            nf[monos[j].first] = expr;
        }
    }

    QuantumRing ring;
    ring.mode = mode;
    ring.q_order = bound;
    ring.basis = ga.basis;
    std::map<Mono, std::size_t> basis_index;
    for (std::size_t k = 0; k < ga.dim(); ++k) basis_index[ga.basis[k]] = k;

    for (int a = 0; a < r; ++a) {
        QPMat ma = qpmat(ga.dim(), ga.dim(), r, bound);
        for (std::size_t j = 0; j < ga.dim(); ++j) {
            Mono prod = ga.basis[j];
            prod[a] += 1;
            auto it = nf.find(prod);
            if (it == nf.end()) throw Error("InternalError", "missing quantum normal form");
            for (const auto& [m, c] : it->second) {
                auto bi = basis_index.find(m.first);
                if (bi == basis_index.end())
                    throw Error("RankDrop", "normal form leaves the lifted basis");
                ma[bi->second][j].add_term(m.second, c);
            }
        }
        ring.M.push_back(ma);
    }

    // classical limit must be the cup product
    auto ops = ga.structure_operators();
    for (int a = 0; a < r; ++a)
        for (std::size_t i = 0; i < ga.dim(); ++i)
            for (std::size_t j = 0; j < ga.dim(); ++j)
                if (ring.M[a][i][j].at_zero() != ops.P[a][i][j])
                    throw Error("RankDrop", "classical limit differs from the cup product");
    return ring;
}

}  // namespace qfan
