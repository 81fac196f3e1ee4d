#include "qfan/connection.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace qfan {

namespace {

/* Laurent polynomial in z with truncated q-series coefficients. */
struct ZL {
    std::map<int, QPoly> parts;

    void add(int j, const QPoly& p)
    {
        if (p.is_zero()) return;
        auto it = parts.find(j);
        if (it == parts.end())
            parts[j] = p;
        else {
            it->second += p;
            if (it->second.is_zero()) parts.erase(it);
        }
    }
};

using ZLMat = std::vector<std::vector<ZL>>;

ZLMat zl_mul(const ZLMat& a, const ZLMat& b)
{
    std::size_t n = a.size(), k = b.size(), m = b[0].size();
    ZLMat c(n, std::vector<ZL>(m));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l)
            for (const auto& [j1, p1] : a[i][l].parts)
                for (std::size_t j = 0; j < m; ++j)
                    for (const auto& [j2, p2] : b[l][j].parts) c[i][j].add(j1 + j2, p1 * p2);
    return c;
}

int min_q_order(const ZL& e)
{
    int best = -1;
    for (const auto& [j, p] : e.parts) {
        int o = p.total_order_min();
        if (o >= 0 && (best < 0 || o < best)) best = o;
    }
    return best;  // -1 means zero entry
}

}  // namespace

std::pair<RMat, RMat> origin_connection(const GradedAlgebra& ga,
                                        [[maybe_unused]] const ExactSequenceData& esd)
{
    auto ops = ga.structure_operators();
    RMat a0 = rmat(ga.dim(), ga.dim());
    for (std::size_t i = 0; i < ga.dim(); ++i)
        for (std::size_t j = 0; j < ga.dim(); ++j) a0[i][j] = -ops.C1[i][j];
    RMat ainf = ops.MU;
    // [Ainf, A0] = A0 must hold on the nose
    RMat lhs = rmul(ainf, a0), rhs = rmul(a0, ainf);
    for (std::size_t i = 0; i < ga.dim(); ++i)
        for (std::size_t j = 0; j < ga.dim(); ++j)
            if (lhs[i][j] - rhs[i][j] != a0[i][j])
                throw Error("InternalError", "commutator identity [Ainf,A0]=A0 failed");
    return {a0, ainf};
}

ExtractionResult birkhoff_extract(const GradedAlgebra& ga,
                                  [[maybe_unused]] const ExactSequenceData& esd,
                                  const LogLaurentSeries& interior)
{
    if (!interior.log_free())
        throw Error("WordBasisSingular", "interior series carries log terms");
    const int r = ga.r;
    const int order = interior.q_order();
    const std::size_t mu = ga.dim();

    ExtractionResult res;
    for (std::size_t k = 0; k < mu; ++k) {
        std::vector<int> word;
        for (int a = 0; a < r; ++a)
            for (int s = 0; s < ga.basis[k][a]; ++s) word.push_back(a);
        res.words.push_back(word);
    }

    // word series, cached by sorted word (the recursion operators commute)
    std::map<std::vector<int>, LogLaurentSeries> cache;
    cache[{}] = interior;
    std::function<const LogLaurentSeries&(const std::vector<int>&)> get =
        [&](const std::vector<int>& w) -> const LogLaurentSeries& {
        std::vector<int> key = w;
        std::sort(key.begin(), key.end());
        auto it = cache.find(key);
        if (it != cache.end()) return it->second;
        std::vector<int> prefix(key.begin(), key.end() - 1);
        const LogLaurentSeries& g = get(prefix);
        int a = key.back();
        cache[key] = g.mul_class(ga.generator(a)) + g.theta(a);
        return cache.at(key);
    };

    auto to_column = [&](const LogLaurentSeries& g, ZLMat& mat, std::size_t col) {
        for (const auto& [k, v] : g.coefficients()) {
            if (k.beta != 0) throw Error("WordBasisSingular", "log term in word series");
            for (int x : k.alpha)
                if (x != 0) throw Error("WordBasisSingular", "log term in word series");
            for (std::size_t h = 0; h < mu; ++h)
                if (v[h] != 0) mat[h][col].add(k.j, QPoly::monomial(r, order, k.e, v[h]));
        }
    };

    ZLMat c(mu, std::vector<ZL>(mu));
    std::vector<ZLMat> cshift(r, ZLMat(mu, std::vector<ZL>(mu)));
    for (std::size_t w = 0; w < mu; ++w) {
        to_column(get(res.words[w]), c, w);
        for (int a = 0; a < r; ++a) {
            std::vector<int> wa = res.words[w];
            wa.push_back(a);
            to_column(get(wa), cshift[a], w);
        }
    }

    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            for (const auto& [jz, p] : c[i][j].parts)
                if (jz > 0) res.c_no_positive_z = false;

    // X = C - Id must be q-adically small; invert by the Neumann series
    ZLMat x = c;
    for (std::size_t i = 0; i < mu; ++i)
        x[i][i].add(0, QPoly::constant(r, order, -1));
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            if (min_q_order(x[i][j]) == 0)
                throw Error("WordBasisSingular", "frame matrix constant term is not the identity");

    ZLMat cinv(mu, std::vector<ZL>(mu));
    ZLMat pw(mu, std::vector<ZL>(mu));
    for (std::size_t i = 0; i < mu; ++i) {
        cinv[i][i].add(0, QPoly::constant(r, order, 1));
        pw[i][i].add(0, QPoly::constant(r, order, 1));
    }
    for (int s = 1; s <= r * order + 1; ++s) {
        pw = zl_mul(pw, x);
        bool zero = true;
        for (auto& row : pw)
            for (auto& e : row) zero = zero && e.parts.empty();
        if (zero) break;
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j)
                for (const auto& [jz, p] : pw[i][j].parts)
                    cinv[i][j].add(jz, s % 2 == 1 ? p.scaled(-1) : p);
    }

    res.y0 = qpmat(mu, mu, r, order);
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j) {
            auto it = c[i][j].parts.find(0);
            if (it != c[i][j].parts.end()) res.y0[i][j] = it->second;
        }
    QPMat y0inv = qp_inverse_unipotent(res.y0);

    /* In the Birkhoff gauge C = C_- Y0 the connection matrices are z-free;
     * in the raw word frame this reads
     *   C^{-1} C_shift = Y0^{-1} Q_a Y0 + z Y0^{-1} (q_a d Y0),
     * so the z-support must be {0, 1} with the z^1 part exactly the gauge
     * derivative.  Anything else signals a genuine residual. */
    for (int a = 0; a < r; ++a) {
        QPMat dy0 = qpmat(mu, mu, r, order);
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) dy0[i][j] = res.y0[i][j].log_derivative(a);
        QPMat gauge = qp_mul(y0inv, dy0);

        ZLMat om = zl_mul(cinv, cshift[a]);
        QPMat oz = qpmat(mu, mu, r, order);
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j)
                for (const auto& [jz, p] : om[i][j].parts) {
                    if (jz == 0) {
                        oz[i][j] = p;
                        continue;
                    }
                    if (jz == 1 && p == gauge[i][j]) continue;
                    res.z_free = false;
                    if (res.residual.empty()) {
                        std::ostringstream os;
                        os << "Omega_" << a + 1 << "[" << i << "][" << j << "] has z^" << jz
                           << " part " << p.str(std::vector<std::string>(r, "q"));
                        res.residual = os.str();
                    }
                }
        // the gauge term must be fully present when nonzero
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) {
                if (gauge[i][j].is_zero()) continue;
                auto it = om[i][j].parts.find(1);
                if (it == om[i][j].parts.end() || !(it->second == gauge[i][j])) {
                    res.z_free = false;
                    if (res.residual.empty())
                        res.residual = "gauge derivative mismatch in Omega_" +
                                       std::to_string(a + 1);
                }
            }
        res.omega_word.push_back(oz);
    }

    if (res.z_free && res.c_no_positive_z)
        for (int a = 0; a < r; ++a)
            res.omega_flat.push_back(qp_mul(qp_mul(res.y0, res.omega_word[a]), y0inv));
    return res;
}

FlatnessReport flatness_report(const ConnectionData& cd)
{
    FlatnessReport rep;
    const std::size_t mu = cd.Omega.empty() ? 0 : cd.Omega[0].size();
    const int r = static_cast<int>(cd.Omega.size());

    rep.commute = true;
    for (int a = 0; a < r && rep.commute; ++a)
        for (int b = a + 1; b < r && rep.commute; ++b) {
            QPMat ab = qp_mul(cd.Omega[a], cd.Omega[b]);
            QPMat ba = qp_mul(cd.Omega[b], cd.Omega[a]);
            for (std::size_t i = 0; i < mu; ++i)
                for (std::size_t j = 0; j < mu; ++j)
                    if (!(ab[i][j] == ba[i][j])) {
                        rep.commute = false;
                        rep.witness = "commutator [" + std::to_string(a + 1) + "," +
                                      std::to_string(b + 1) + "]";
                    }
        }

    rep.potential = true;
    for (int a = 0; a < r && rep.potential; ++a)
        for (int b = 0; b < r && rep.potential; ++b)
            for (std::size_t i = 0; i < mu; ++i)
                for (std::size_t j = 0; j < mu; ++j)
                    if (!(cd.Omega[a][i][j].log_derivative(b) ==
                          cd.Omega[b][i][j].log_derivative(a))) {
                        rep.potential = false;
                        rep.witness = "potential identity at (" + std::to_string(a + 1) + "," +
                                      std::to_string(b + 1) + ")";
                    }

    rep.euler = true;
    for (int b = 0; b < r && rep.euler; ++b) {
        // (sum_a k_a q_a d/dq_a) Omega_b + [Ainf, Omega_b] - Omega_b = 0
        const QPoly zero = QPoly(cd.Omega[b][0][0].vars(), cd.Omega[b][0][0].bound());
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) {
                QPoly acc = zero;
                for (int a = 0; a < r; ++a)
                    acc += cd.Omega[b][i][j].log_derivative(a).scaled(Rat(cd.euler_weights[a]));
                acc += cd.Omega[b][i][j].scaled(cd.Ainf[i][i] - cd.Ainf[j][j] - 1);
                if (!acc.is_zero()) {
                    rep.euler = false;
                    rep.witness = "euler identity for Omega_" + std::to_string(b + 1);
                }
            }
    }
    return rep;
}

PairingReport pairing_report(const GradedAlgebra& ga, const ConnectionData& cd)
{
    PairingReport rep;
    const std::size_t mu = ga.dim();

    rep.selfadjoint = true;
    for (const auto& om : cd.Omega)
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) {
                // (g Omega)_{ij} = (Omega^T g)_{ij}
                QPoly left(om[0][0].vars(), om[0][0].bound());
                QPoly right = left;
                for (std::size_t k = 0; k < mu; ++k) {
                    left += om[k][j].scaled(cd.pairing[i][k]);
                    right += om[k][i].scaled(cd.pairing[k][j]);
                }
                if (!(left == right)) {
                    rep.selfadjoint = false;
                    rep.witness = "selfadjointness";
                }
            }

    rep.mu_identity = true;
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            if (cd.pairing[i][j] * Rat(ga.basis_degree[i] + ga.basis_degree[j] - ga.n) != 0)
                rep.mu_identity = false;

    rep.z_pole_order = true;
    for (std::size_t i = 0; i < mu; ++i)
        for (std::size_t j = 0; j < mu; ++j)
            if (ga.basis_degree[i] + ga.basis_degree[j] != ga.n && cd.pairing[i][j] != 0)
                rep.z_pole_order = false;
    return rep;
}

bool residue_nilpotency(const ConnectionData& cd)
{
    const std::size_t mu = cd.Omega.empty() ? 0 : cd.Omega[0].size();
    for (const auto& om : cd.Omega) {
        RMat m = rmat(mu, mu);
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) m[i][j] = om[i][j].at_zero();
        RMat pw = rident(mu);
        for (int s = 0; s <= cd.n; ++s) pw = rmul(pw, m);
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j)
                if (pw[i][j] != 0) return false;
    }
    return true;
}

}  // namespace qfan
