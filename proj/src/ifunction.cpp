#include "qfan/series.hpp"

#include <functional>

namespace qfan {

namespace {

/* Laurent-in-z element with cohomology coefficients, used while assembling
 * one summand of the I-function. */
using ZClass = std::map<int, AlgebraElement>;

void zc_add(ZClass& t, int j, const AlgebraElement& v)
{
    bool zero = true;
    for (const auto& x : v) zero = zero && x == 0;
    if (zero) return;
    auto it = t.find(j);
    if (it == t.end()) {
        t[j] = v;
    } else {
        bool allzero = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
            it->second[i] += v[i];
            allzero = allzero && it->second[i] == 0;
        }
        if (allzero) t.erase(it);
    }
}

ZClass zc_mul(const GradedAlgebra& ga, const ZClass& a, const ZClass& b)
{
    ZClass out;
    for (const auto& [j1, v1] : a)
        for (const auto& [j2, v2] : b) zc_add(out, j1 + j2, ga.mul(v1, v2));
    return out;
}

/* (D + nu z)^{-1} = sum_{k<=n} (-1)^k D^k nu^{-k-1} z^{-k-1}, nu != 0. */
ZClass zc_inv_linear(const GradedAlgebra& ga, const AlgebraElement& d, int nu)
{
    ZClass out;
    AlgebraElement pw = ga.one();
    Rat sign = 1, nupow = Rat(Int(nu));
    for (int k = 0; k <= ga.n; ++k) {
        AlgebraElement term = pw;
        for (auto& x : term) x *= sign / nupow;
        zc_add(out, -k - 1, term);
        pw = ga.mul(pw, d);
        sign = -sign;
        nupow *= Rat(Int(nu));
    }
    return out;
}

/* ratio_i(l): prod_{nu=-inf}^0 (D+nu z) / prod_{nu=-inf}^{l} (D+nu z). */
ZClass ratio_factor(const GradedAlgebra& ga, const AlgebraElement& d, Int l)
{
    ZClass out;
    zc_add(out, 0, ga.one());
    if (l >= 0) {
        for (Int nu = 1; nu <= l; ++nu)
            out = zc_mul(ga, out, zc_inv_linear(ga, d, static_cast<int>(nu)));
    } else {
        for (Int nu = l + 1; nu <= 0; ++nu) {
            ZClass f;
            zc_add(f, 0, d);
            AlgebraElement c = ga.one();
            for (auto& x : c) x *= Rat(nu);
            zc_add(f, 1, c);
            out = zc_mul(ga, out, f);
        }
    }
    return out;
}

/* h_i(l): the z-free Gamma-cancelled factor. */
AlgebraElement gamma_factor(const GradedAlgebra& ga, const AlgebraElement& d, Int l)
{
    AlgebraElement out = ga.one();
    if (l >= 0) {
        for (Int nu = 1; nu <= l; ++nu) {
            // (D + nu)^{-1} = sum_k (-1)^k D^k nu^{-k-1}
            AlgebraElement inv = ga.zero();
            AlgebraElement pw = ga.one();
            Rat sign = 1, nupow = Rat(Int(nu));
            for (int k = 0; k <= ga.n; ++k) {
                for (std::size_t i = 0; i < inv.size(); ++i) inv[i] += sign / nupow * pw[i];
                pw = ga.mul(pw, d);
                sign = -sign;
                nupow *= Rat(Int(nu));
            }
            out = ga.mul(out, inv);
        }
    } else {
        for (Int nu = l + 1; nu <= 0; ++nu) {
            AlgebraElement f = d;
            f[0] += Rat(nu);  // basis[0] = 1, so this adds the scalar nu
            out = ga.mul(out, f);
        }
    }
    return out;
}

/* exp(sign * sum_a log q_a p_a z^{w}) with w in {0,-1}: finite by nilpotency. */
LogLaurentSeries exp_delta(const GradedAlgebra& ga, int order, int zshift, int sign = 1)
{
    LogLaurentSeries out(&ga, order);
    MKey unit{std::vector<int>(ga.r, 0), 0, std::vector<int>(ga.r, 0), 0};
    out.add(unit, ga.one());
    for (int a = 0; a < ga.r; ++a) {
        LogLaurentSeries factor(&ga, order);
        AlgebraElement pw = ga.one();
        Rat fact = 1;
        Rat sg = 1;
        for (int k = 0; k <= ga.n; ++k) {
            bool zero = true;
            for (const auto& x : pw) zero = zero && x == 0;
            if (zero) break;
            MKey key{std::vector<int>(ga.r, 0), zshift * k, std::vector<int>(ga.r, 0), 0};
            key.alpha[a] = k;
            AlgebraElement v = pw;
            for (auto& x : v) x *= sg / fact;
            factor.add(key, v);
            pw = ga.mul(pw, ga.generator(a));
            fact *= k + 1;
            sg *= sign;
        }
        out = out * factor;
    }
    return out;
}

/* exp(-rho log z): nilpotent exponential in the log-z variable. */
LogLaurentSeries exp_neg_rho_logz(const GradedAlgebra& ga, const ExactSequenceData& esd, int order)
{
    LogLaurentSeries out(&ga, order);
    AlgebraElement rho = ga.zero();
    for (int a = 0; a < ga.r; ++a) {
        AlgebraElement g = ga.generator(a);
        for (std::size_t i = 0; i < g.size(); ++i) rho[i] += Rat(esd.rho[a]) * g[i];
    }
    AlgebraElement pw = ga.one();
    Rat fact = 1, sign = 1;
    for (int k = 0; k <= ga.n; ++k) {
        bool zero = true;
        for (const auto& x : pw) zero = zero && x == 0;
        if (zero) break;
        MKey key{std::vector<int>(ga.r, 0), 0, std::vector<int>(ga.r, 0), k};
        AlgebraElement v = pw;
        for (auto& x : v) x *= sign / fact;
        out.add(key, v);
        pw = ga.mul(pw, rho);
        fact *= k + 1;
        sign = -sign;
    }
    return out;
}

}  // namespace

std::vector<EffectiveBoxEntry> enumerate_effective_box(const ExactSequenceData& esd, int order)
{
    std::vector<EffectiveBoxEntry> out;
    IVec c(esd.r, Int(0));
    std::function<void(int)> rec = [&](int pos) {
        if (pos == esd.r) {
            EffectiveBoxEntry e;
            e.coords = c;
            e.l.assign(esd.fan.m(), Int(0));
            for (int i = 0; i < esd.fan.m(); ++i)
                for (int a = 0; a < esd.r; ++a) e.l[i] += esd.M[i][a] * c[a];
            e.effective = esd.is_effective(c);
            out.push_back(e);
            return;
        }
        for (Int v = 0; v <= order; ++v) {
            c[pos] = v;
            rec(pos + 1);
        }
    };
    rec(0);
    return out;
}

IFunctionData build_I(const ExactSequenceData& esd, const GradedAlgebra& ga, int order)
{
    IFunctionData data;
    data.order = order;
    LogLaurentSeries interior(&ga, order);
    for (const auto& entry : enumerate_effective_box(esd, order)) {
        ZClass summand;
        zc_add(summand, 0, ga.one());
        for (int i = 0; i < esd.fan.m(); ++i)
            summand = zc_mul(ga, summand, ratio_factor(ga, ga.divisor(i), entry.l[i]));
        if (!entry.effective) {
            if (!summand.empty())
                throw Error("InternalError",
                            "non-effective box point with nonzero I-coefficient");
            continue;
        }
        std::vector<int> e(esd.r);
        for (int a = 0; a < esd.r; ++a) e[a] = static_cast<int>(entry.coords[a]);
        for (const auto& [j, v] : summand)
            interior.add({e, j, std::vector<int>(esd.r, 0), 0}, v);
    }
    data.interior = interior;
    data.full = exp_delta(ga, order, -1) * interior;
    return data;
}

LogLaurentSeries build_I_tilde(const ExactSequenceData& esd, const GradedAlgebra& ga, int order)
{
    LogLaurentSeries sum(&ga, order);
    for (const auto& entry : enumerate_effective_box(esd, order)) {
        AlgebraElement v = ga.one();
        for (int i = 0; i < esd.fan.m(); ++i)
            v = ga.mul(v, gamma_factor(ga, ga.divisor(i), entry.l[i]));
        if (!entry.effective) {
            bool zero = true;
            for (const auto& x : v) zero = zero && x == 0;
            if (!zero)
                throw Error("InternalError",
                            "non-effective box point with nonzero I-tilde coefficient");
            continue;
        }
        Int lbar = 0;
        for (const auto& x : entry.l) lbar += x;
        std::vector<int> e(esd.r);
        for (int a = 0; a < esd.r; ++a) e[a] = static_cast<int>(entry.coords[a]);
        sum.add({e, static_cast<int>(-lbar), std::vector<int>(esd.r, 0), 0}, v);
    }
    return exp_delta(ga, order, 0) * exp_neg_rho_logz(ga, esd, order) * sum;
}

LogLaurentSeries mul_exp_delta(const LogLaurentSeries& s, int sign)
{
    return exp_delta(s.algebra(), s.q_order(), -1, sign) * s;
}

AnnihilationResult check_annihilation(const WeylOperator& op, const LogLaurentSeries& s)
{
    AnnihilationResult res;
    res.pass = true;
    const int r = s.algebra().r;
    std::vector<int> shift = op.max_q_shift();
    res.safe_q_order.resize(r);
    for (int a = 0; a < r; ++a) res.safe_q_order[a] = s.q_order() - shift[a];

    LogLaurentSeries image = s.apply(op);
    for (const auto& [k, v] : image.coefficients()) {
        bool inside = true;
        for (int a = 0; a < r; ++a) inside = inside && k.e[a] <= res.safe_q_order[a];
        if (!inside) continue;
        res.pass = false;
        if (!res.residual || *res.residual < k) res.residual = k;
    }
    return res;
}

}  // namespace qfan
