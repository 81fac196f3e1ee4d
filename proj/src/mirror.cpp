#include "qfan/series.hpp"

#include <functional>

namespace qfan {

MirrorMap mirror_map(const IFunctionData& idata)
{
    const GradedAlgebra& ga = idata.interior.algebra();
    const int r = ga.r;
    const int order = idata.interior.q_order();

    /* gamma' is the z^{-1}-coefficient of e^{-delta/z} I; it must be a pure
     * degree-1 class with no constant term. */
    std::vector<QPoly> gp(r, QPoly(r, order));
    for (const auto& [k, v] : idata.interior.coefficients()) {
        if (k.j != -1) continue;
        if (!(k.beta == 0)) throw Error("GammaNotDegreeOne", "log-z term in gamma");
        for (int x : k.alpha)
            if (x != 0) throw Error("GammaNotDegreeOne", "log-q term in gamma");
        for (std::size_t i = 0; i < ga.dim(); ++i) {
            if (v[i] == 0) continue;
            if (ga.basis_degree[i] != 1)
                throw Error("GammaNotDegreeOne",
                            "gamma has a component of degree " +
                                std::to_string(ga.basis_degree[i]));
        }
        bool zero_e = true;
        for (int x : k.e) zero_e = zero_e && x == 0;
        if (zero_e && !std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; }))
            throw Error("GammaNotDegreeOne", "gamma has a constant term");
        // degree-1 basis elements are exactly the generators p_1..p_r, in order
        for (int a = 0; a < r; ++a) {
            std::vector<int> e(r, 0);
            e[a] = 1;
            // locate generator index
            for (std::size_t i = 0; i < ga.dim(); ++i)
                if (ga.basis[i] == e && v[i] != 0) gp[a].add_term(k.e, v[i]);
        }
    }

    MirrorMap mm;
    mm.gamma_prime = gp;
    mm.identity = true;
    for (const auto& g : gp) mm.identity = mm.identity && g.is_zero();
    for (int a = 0; a < r; ++a) mm.kappa_unit.push_back(gp[a].exp());
    mm.inverse_unit = invert_unit_series(mm.kappa_unit);
    return mm;
}

std::vector<QPoly> invert_unit_series(const std::vector<QPoly>& kappa_unit)
{
    const int r = static_cast<int>(kappa_unit.size());
    const int order = kappa_unit.empty() ? 0 : kappa_unit[0].bound();

    for (const auto& u : kappa_unit)
        if (u.at_zero() != 1) throw Error("NotInvertible", "kappa is not tangent to the identity");

    /* kappa_a = q_a u_a(q); seek w with kappa^{-1}_a = q_a w_a(q), i.e.
     * w_a(q) * u_a(q_1 w_1, ..., q_r w_r) = 1; fixed point iteration converges
     * one q-adic order per step. */
    std::vector<QPoly> w(r, QPoly::constant(r, order, 1));
    for (int it = 0; it <= r * order + 1; ++it) {
        std::vector<QPoly> sub;
        for (int a = 0; a < r; ++a) {
            std::vector<int> e(r, 0);
            e[a] = 1;
            sub.push_back(QPoly::monomial(r, order, e) * w[a]);
        }
        std::vector<QPoly> next;
        for (int a = 0; a < r; ++a) {
            QPoly comp = kappa_unit[a].compose(sub);
            // w_a = 1 / u_a(kappa^{-1})
            QPoly inv = QPoly::constant(r, order, 1);
            QPoly err = QPoly::constant(r, order, 1) - comp;  // positive order
            QPoly pw = QPoly::constant(r, order, 1);
            for (int k = 1; k <= r * order + 1; ++k) {
                pw = pw * err;
                if (pw.is_zero()) break;
                inv += pw;
            }
            next.push_back(inv);
        }
        if (next == w) break;
        w = next;
    }
    return w;
}

LogLaurentSeries invert_and_substitute(const LogLaurentSeries& target, const MirrorMap& mm)
{
    const GradedAlgebra& ga = target.algebra();
    const int r = ga.r;
    const int order = target.q_order();
    if (mm.identity) return target;

    // substitute q_a = qhat_a * w_a(qhat); log q_a = log qhat_a + log w_a
    std::vector<QPoly> logw;
    for (int a = 0; a < r; ++a) logw.push_back(mm.inverse_unit[a].log());

    LogLaurentSeries out(&ga, order);
    for (const auto& [k, v] : target.coefficients()) {
        // scalar series factor: prod_a w_a^{e_a}
        QPoly scalar = QPoly::constant(r, order, 1);
        for (int a = 0; a < r; ++a)
            for (int s = 0; s < k.e[a]; ++s) scalar = scalar * mm.inverse_unit[a];

        /* expand prod_a (log qhat_a + logw_a)^{alpha_a} multinomially */
        struct LogTerm {
            std::vector<int> gamma;
            QPoly coeff;
        };
        std::vector<LogTerm> logs{{std::vector<int>(r, 0), QPoly::constant(r, order, 1)}};
        for (int a = 0; a < r; ++a)
            for (int s = 0; s < k.alpha[a]; ++s) {
                std::vector<LogTerm> next;
                for (const auto& t : logs) {
                    LogTerm t1 = t;
                    t1.gamma[a] += 1;
                    next.push_back(t1);
                    LogTerm t2 = t;
                    t2.coeff = t2.coeff * logw[a];
                    next.push_back(t2);
                }
                logs = std::move(next);
            }

        for (const auto& t : logs) {
            QPoly total = scalar * t.coeff;
            for (const auto& [qe, qc] : total.terms()) {
                MKey kk = k;
                for (int a = 0; a < r; ++a) kk.e[a] += qe[a];
                kk.alpha = t.gamma;
                bool ok = true;
                for (int a = 0; a < r; ++a) ok = ok && kk.e[a] <= order;
                if (!ok) continue;
                AlgebraElement w = v;
                for (auto& x : w) x *= qc;
                out.add(kk, w);
            }
        }
    }
    return out;
}

LogLaurentSeries divisor_word_series(const LogLaurentSeries& interior,
                                     const std::vector<int>& word, bool* word_too_long)
{
    const GradedAlgebra& ga = interior.algebra();
    if (word_too_long) *word_too_long = static_cast<int>(word.size()) > ga.n;
    LogLaurentSeries g = interior;
    for (int a : word) g = g.mul_class(ga.generator(a)) + g.theta(a);
    return g;
}

}  // namespace qfan
