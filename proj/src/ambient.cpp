#include "qfan/ambient.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

namespace qfan {

void AmbientOperator::add_term(const Key& k, const Rat& c)
{
    if (c == 0) return;
    auto it = terms_.find(k);
    if (it == terms_.end())
        terms_[k] = c;
    else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

AmbientOperator AmbientOperator::constant(int nv, const Rat& c)
{
    AmbientOperator o(nv);
    o.add_term({std::vector<int>(nv, 0), std::vector<int>(nv, 0)}, c);
    return o;
}

AmbientOperator AmbientOperator::variable(int nv, int i, int power)
{
    AmbientOperator o(nv);
    std::vector<int> e(nv, 0);
    e[i] = power;
    o.add_term({e, std::vector<int>(nv, 0)}, 1);
    return o;
}

AmbientOperator AmbientOperator::derivative(int nv, int i)
{
    AmbientOperator o(nv);
    std::vector<int> a(nv, 0);
    a[i] = 1;
    o.add_term({std::vector<int>(nv, 0), a}, 1);
    return o;
}

AmbientOperator& AmbientOperator::operator+=(const AmbientOperator& o)
{
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

AmbientOperator& AmbientOperator::operator-=(const AmbientOperator& o)
{
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

AmbientOperator AmbientOperator::scaled(const Rat& c) const
{
    AmbientOperator o(nv_);
    if (c == 0) return o;
    for (const auto& [k, v] : terms_) o.terms_[k] = v * c;
    return o;
}

AmbientOperator operator*(const AmbientOperator& a, const AmbientOperator& b)
{
    /* d_i * x^e d^alpha = x^e d^{alpha+1_i} + e_i x^{e-1_i} d^alpha */
    const int nv = a.vars();
    AmbientOperator out(nv);
    for (const auto& [ka, ca] : a.terms()) {
        AmbientOperator acc = b;
        for (int i = 0; i < nv; ++i)
            for (int s = 0; s < ka.alpha[i]; ++s) {
                AmbientOperator next(nv);
                for (const auto& [kb, cb] : acc.terms()) {
                    AmbientOperator::Key k1 = kb;
                    k1.alpha[i] += 1;
                    next.add_term(k1, cb);
                    if (kb.e[i] != 0) {
                        AmbientOperator::Key k2 = kb;
                        k2.e[i] -= 1;
                        next.add_term(k2, cb * kb.e[i]);
                    }
                }
                acc = std::move(next);
            }
        for (const auto& [kb, cb] : acc.terms()) {
            AmbientOperator::Key k = kb;
            for (int i = 0; i < nv; ++i) k.e[i] += ka.e[i];
            out.add_term(k, ca * cb);
        }
    }
    return out;
}

AmbientOperator::Laurent AmbientOperator::apply(const Laurent& f) const
{
    Laurent out;
    auto add = [&](const std::vector<int>& e, const Rat& c) {
        if (c == 0) return;
        auto it = out.find(e);
        if (it == out.end())
            out[e] = c;
        else {
            it->second += c;
            if (it->second == 0) out.erase(it);
        }
    };
    for (const auto& [k, c] : terms_)
        for (const auto& [fe, fc] : f) {
            std::vector<int> e = fe;
            Rat coeff = c * fc;
            for (int i = 0; i < nv_ && coeff != 0; ++i)
                for (int s = 0; s < k.alpha[i] && coeff != 0; ++s) {
                    coeff *= e[i];
                    e[i] -= 1;
                }
            if (coeff == 0) continue;
            for (int i = 0; i < nv_; ++i) e[i] += k.e[i];
            add(e, coeff);
        }
    return out;
}

std::string AmbientOperator::str(const std::vector<std::string>& var_names) const
{
    if (terms_.empty()) return "0";
    std::vector<std::pair<Key, Rat>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        int oa = 0, ob = 0;
        for (int v : a.first.alpha) oa += v;
        for (int v : b.first.alpha) ob += v;
        if (oa != ob) return oa < ob;
        return b.first < a.first;
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : sorted) {
        Rat v = c;
        if (!first) {
            os << (v >= 0 ? " + " : " - ");
            if (v < 0) v = -v;
        }
        std::string factors;
        auto piece = [&](const std::string& s) {
            if (!factors.empty()) factors += "*";
            factors += s;
        };
        for (int i = 0; i < nv_; ++i)
            if (k.e[i] != 0)
                piece(var_names[i] + (k.e[i] == 1 ? "" : "^" + std::to_string(k.e[i])));
        for (int i = 0; i < nv_; ++i)
            if (k.alpha[i] != 0)
                piece("d" + var_names[i] +
                      (k.alpha[i] == 1 ? "" : "^" + std::to_string(k.alpha[i])));
        if (factors.empty())
            os << rat_str(v);
        else if (v == 1)
            os << factors;
        else if (v == -1)
            os << "-" << factors;
        else
            os << rat_str(v) << "*" << factors;
        first = false;
    }
    return os.str();
}

std::string ambient_variant_name(AmbientVariant v)
{
    switch (v) {
        case AmbientVariant::Classical: return "classical";
        case AmbientVariant::Hat: return "hat";
        case AmbientVariant::Prime: return "prime";
        default: return "doubleprime";
    }
}

AmbientFamily ambient_box_operators(const ExactSequenceData& esd,
                                    const std::vector<Rat>& beta_in,
                                    AmbientVariant variant)
{
    const FanData& fan = esd.fan;
    const int m = fan.m();
    const int nv = m + 1;  // variable 0 is lambda_0 (classical) or z (transformed)

    std::vector<Rat> beta = beta_in;
    if (beta.empty()) {
        beta.assign(fan.n + 1, Rat(0));
        beta[0] = 1;
    }
    if (static_cast<int>(beta.size()) != fan.n + 1)
        throw Error("SchemaError", "beta must have n+1 entries");

    AmbientFamily fam;
    fam.variant = variant;
    fam.names.push_back(variant == AmbientVariant::Classical ? "L0" : "z");
    for (int i = 1; i <= m; ++i) fam.names.push_back("L" + std::to_string(i));

    auto dvar = [&](int i) { return AmbientOperator::derivative(nv, i); };
    auto var = [&](int i, int p) { return AmbientOperator::variable(nv, i, p); };

    for (int col = 0; col < esd.r; ++col) {
        IVec l(m);
        Int lbar = 0;
        for (int i = 0; i < m; ++i) {
            l[i] = esd.M[i][col];
            lbar += l[i];
        }
        AmbientOperator neg = AmbientOperator::constant(nv, 1);
        AmbientOperator pos = AmbientOperator::constant(nv, 1);
        for (int i = 0; i < m; ++i) {
            for (Int s = 0; s < -l[i]; ++s) neg = neg * dvar(i + 1);
            for (Int s = 0; s < l[i]; ++s) pos = pos * dvar(i + 1);
        }
        AmbientOperator box(nv);
        switch (variant) {
            case AmbientVariant::Classical:
                // box_l = d0^{lbar} prod_{l_i<0} d_i^{-l_i} - prod_{l_i>0} d_i^{l_i}, lbar >= 0
                if (lbar >= 0) {
                    AmbientOperator lead = neg;
                    for (Int s = 0; s < lbar; ++s) lead = dvar(0) * lead;
                    box = lead - pos;
                } else {
                    AmbientOperator lead = pos;
                    for (Int s = 0; s < -lbar; ++s) lead = dvar(0) * lead;
                    box = neg - lead;
                }
                break;
            case AmbientVariant::Hat:
                // z^{-lbar} prod_{l_i<0} d_i^{-l_i} - prod_{l_i>0} d_i^{l_i}
                box = var(0, static_cast<int>(-lbar)) * neg - pos;
                break;
            case AmbientVariant::Prime:
                // prod (z d_i)^{-l_i} - prod (z d_i)^{l_i}: z is central for d_lambda
                {
                    Int zneg = 0, zpos = 0;
                    for (int i = 0; i < m; ++i) {
                        if (l[i] < 0) zneg += -l[i];
                        if (l[i] > 0) zpos += l[i];
                    }
                    box = var(0, static_cast<int>(zneg)) * neg -
                          var(0, static_cast<int>(zpos)) * pos;
                }
                break;
            case AmbientVariant::DoublePrime:
                // prod_i L_i^{l_i} prod_{l_i<0} prod_{nu} (z L_i d_i - nu z) - prod_{l_i>0} ...
                {
                    AmbientOperator left = AmbientOperator::constant(nv, 1);
                    for (int i = 0; i < m; ++i)
                        if (l[i] != 0) left = left * var(i + 1, static_cast<int>(l[i]));
                    for (int i = 0; i < m; ++i)
                        for (Int nu = 0; nu < -l[i]; ++nu)
                            left = left * (var(0, 1) * var(i + 1, 1) * dvar(i + 1) -
                                           var(0, 1).scaled(Rat(nu)));
                    AmbientOperator right = AmbientOperator::constant(nv, 1);
                    for (int i = 0; i < m; ++i)
                        for (Int nu = 0; nu < l[i]; ++nu)
                            right = right * (var(0, 1) * var(i + 1, 1) * dvar(i + 1) -
                                             var(0, 1).scaled(Rat(nu)));
                    box = left - right;
                }
                break;
        }
        fam.boxes.push_back(box);
    }

    for (int k = 0; k < fan.n; ++k) {
        AmbientOperator zk(nv);
        for (int i = 0; i < m; ++i)
            if (fan.rays[i][k] != 0)
                zk += (var(i + 1, 1) * dvar(i + 1)).scaled(Rat(fan.rays[i][k]));
        zk += AmbientOperator::constant(nv, beta[k + 1]);
        fam.z_ops.push_back(zk);
    }

    AmbientOperator e(nv);
    for (int i = 0; i < m; ++i) e += var(i + 1, 1) * dvar(i + 1);
    if (variant == AmbientVariant::Classical) {
        e += var(0, 1) * dvar(0);
        e += AmbientOperator::constant(nv, beta[0]);
    } else {
        e += var(0, 1) * dvar(0);  // z d/dz
        e += AmbientOperator::constant(nv, beta[0] - 1);
    }
    fam.euler = e;
    return fam;
}

}  // namespace qfan
