#include "qfan/series.hpp"

#include <algorithm>

namespace qfan {

void LogLaurentSeries::add(const MKey& k, const AlgebraElement& v)
{
    for (int i = 0; i < r_; ++i)
        if (k.e[i] > q_order_) {
            dropped_ = true;
            return;
        }
    bool zero = true;
    for (const auto& x : v) zero = zero && x == 0;
    if (zero) return;
    auto it = c_.find(k);
    if (it == c_.end()) {
        c_[k] = v;
    } else {
        bool allzero = true;
        for (std::size_t i = 0; i < v.size(); ++i) {
            it->second[i] += v[i];
            allzero = allzero && it->second[i] == 0;
        }
        if (allzero) c_.erase(it);
    }
}

AlgebraElement LogLaurentSeries::coeff(const MKey& k) const
{
    auto it = c_.find(k);
    return it == c_.end() ? ga_->zero() : it->second;
}

LogLaurentSeries& LogLaurentSeries::operator+=(const LogLaurentSeries& o)
{
    for (const auto& [k, v] : o.c_) add(k, v);
    dropped_ = dropped_ || o.dropped_;
    return *this;
}

LogLaurentSeries& LogLaurentSeries::operator-=(const LogLaurentSeries& o)
{
    for (const auto& [k, v] : o.c_) {
        AlgebraElement neg = v;
        for (auto& x : neg) x = -x;
        add(k, neg);
    }
    dropped_ = dropped_ || o.dropped_;
    return *this;
}

LogLaurentSeries operator*(const LogLaurentSeries& a, const LogLaurentSeries& b)
{
    LogLaurentSeries out(&a.algebra(), a.q_order());
    for (const auto& [k1, v1] : a.c_)
        for (const auto& [k2, v2] : b.c_) {
            MKey k = k1;
            bool ok = true;
            for (int i = 0; i < a.r_; ++i) {
                k.e[i] += k2.e[i];
                if (k.e[i] > a.q_order_) ok = false;
                k.alpha[i] += k2.alpha[i];
            }
            k.j += k2.j;
            k.beta += k2.beta;
            if (!ok) {
                out.dropped_ = true;
                continue;
            }
            out.add(k, a.ga_->mul(v1, v2));
        }
    return out;
}

LogLaurentSeries LogLaurentSeries::scaled(const Rat& x) const
{
    LogLaurentSeries out(ga_, q_order_);
    out.dropped_ = dropped_;
    if (x == 0) return out;
    for (const auto& [k, v] : c_) {
        AlgebraElement w = v;
        for (auto& y : w) y *= x;
        out.c_[k] = w;
    }
    return out;
}

LogLaurentSeries LogLaurentSeries::mul_class(const AlgebraElement& cls) const
{
    LogLaurentSeries out(ga_, q_order_);
    out.dropped_ = dropped_;
    for (const auto& [k, v] : c_) out.add(k, ga_->mul(cls, v));
    return out;
}

LogLaurentSeries LogLaurentSeries::shifted(const MKey& shift) const
{
    LogLaurentSeries out(ga_, q_order_);
    out.dropped_ = dropped_;
    for (const auto& [k, v] : c_) {
        MKey kk = k;
        for (int i = 0; i < r_; ++i) {
            kk.e[i] += shift.e[i];
            kk.alpha[i] += shift.alpha[i];
        }
        kk.j += shift.j;
        kk.beta += shift.beta;
        out.add(kk, v);
    }
    return out;
}

LogLaurentSeries LogLaurentSeries::theta(int a) const
{
    /* z q_a d/dq_a:  q^e -> e_a q^e,  log(q_a)^alpha -> alpha log(q_a)^{alpha-1},
     * then multiply by z. */
    LogLaurentSeries out(ga_, q_order_);
    out.dropped_ = dropped_;
    for (const auto& [k, v] : c_) {
        if (k.e[a] != 0) {
            MKey kk = k;
            kk.j += 1;
            AlgebraElement w = v;
            for (auto& x : w) x *= k.e[a];
            out.add(kk, w);
        }
        if (k.alpha[a] != 0) {
            MKey kk = k;
            kk.alpha[a] -= 1;
            kk.j += 1;
            AlgebraElement w = v;
            for (auto& x : w) x *= k.alpha[a];
            out.add(kk, w);
        }
    }
    return out;
}

LogLaurentSeries LogLaurentSeries::zdz() const
{
    LogLaurentSeries out(ga_, q_order_);
    out.dropped_ = dropped_;
    for (const auto& [k, v] : c_) {
        if (k.j != 0) {
            AlgebraElement w = v;
            for (auto& x : w) x *= k.j;
            out.add(k, w);
        }
        if (k.beta != 0) {
            MKey kk = k;
            kk.beta -= 1;
            AlgebraElement w = v;
            for (auto& x : w) x *= k.beta;
            out.add(kk, w);
        }
    }
    return out;
}

LogLaurentSeries LogLaurentSeries::apply(const WeylOperator& op) const
{
    LogLaurentSeries out(ga_, q_order_);
    for (const auto& [k, c] : op.terms()) {
        LogLaurentSeries acc = *this;
        for (int s = 0; s < k.beta; ++s) acc = acc.zdz().shifted({std::vector<int>(r_, 0), 1,
                                                                  std::vector<int>(r_, 0), 0});
        for (int a = 0; a < r_; ++a)
            for (int s = 0; s < k.alpha[a]; ++s) acc = acc.theta(a);
        MKey shift{k.e, k.j, std::vector<int>(r_, 0), 0};
        out += acc.shifted(shift).scaled(c);
    }
    return out;
}

bool LogLaurentSeries::log_free() const
{
    for (const auto& [k, v] : c_) {
        if (k.beta != 0) return false;
        for (int x : k.alpha)
            if (x != 0) return false;
    }
    return true;
}

bool LogLaurentSeries::no_positive_z() const
{
    for (const auto& [k, v] : c_)
        if (k.j > 0) return false;
    return true;
}

int LogLaurentSeries::max_log_z() const
{
    int m = 0;
    for (const auto& [k, v] : c_) m = std::max(m, k.beta);
    return m;
}

QPoly LogLaurentSeries::component_qpoly(std::size_t basis_index, int jsel) const
{
    QPoly out(r_, q_order_);
    for (const auto& [k, v] : c_) {
        if (k.j != jsel || k.beta != 0) continue;
        bool plain = true;
        for (int x : k.alpha) plain = plain && x == 0;
        if (!plain) continue;
        out.add_term(k.e, v[basis_index]);
    }
    return out;
}

}  // namespace qfan
