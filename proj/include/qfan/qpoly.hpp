#pragma once

#include "qfan/error.hpp"
#include "qfan/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace qfan {

/* Truncated polynomial / power series in q_1..q_r over Q.  Exponents are kept
 * componentwise <= bound; multiplication drops overflowing monomials, which is
 * the correct behavior for series known exactly up to that box. */
class QPoly {
public:
    QPoly() : r_(0), bound_(0) {}
    QPoly(int r, int bound) : r_(r), bound_(bound) {}

    static QPoly constant(int r, int bound, const Rat& c)
    {
        QPoly p(r, bound);
        if (c != 0) p.c_[std::vector<int>(r, 0)] = c;
        return p;
    }
    static QPoly monomial(int r, int bound, const std::vector<int>& e, const Rat& c = Rat(1))
    {
        QPoly p(r, bound);
        p.add_term(e, c);
        return p;
    }

    int vars() const { return r_; }
    int bound() const { return bound_; }
    bool is_zero() const { return c_.empty(); }
    const std::map<std::vector<int>, Rat>& terms() const { return c_; }

    bool in_box(const std::vector<int>& e) const
    {
        for (int v : e)
            if (v < 0 || v > bound_) return false;
        return true;
    }

    void add_term(const std::vector<int>& e, const Rat& v)
    {
        if (v == 0 || !in_box(e)) return;
        auto it = c_.find(e);
        if (it == c_.end()) {
            c_[e] = v;
        } else {
            it->second += v;
            if (it->second == 0) c_.erase(it);
        }
    }

    Rat coeff(const std::vector<int>& e) const
    {
        auto it = c_.find(e);
        return it == c_.end() ? Rat(0) : it->second;
    }
    Rat at_zero() const { return coeff(std::vector<int>(r_, 0)); }

    QPoly& operator+=(const QPoly& o)
    {
        for (const auto& [e, v] : o.c_) add_term(e, v);
        return *this;
    }
    QPoly& operator-=(const QPoly& o)
    {
        for (const auto& [e, v] : o.c_) add_term(e, -v);
        return *this;
    }
    friend QPoly operator+(QPoly a, const QPoly& b) { a += b; return a; }
    friend QPoly operator-(QPoly a, const QPoly& b) { a -= b; return a; }

    friend QPoly operator*(const QPoly& a, const QPoly& b)
    {
        QPoly out(a.r_, a.bound_);
        std::vector<int> e(a.r_);
        for (const auto& [e1, v1] : a.c_)
            for (const auto& [e2, v2] : b.c_) {
                bool ok = true;
                for (int i = 0; i < a.r_; ++i) {
                    e[i] = e1[i] + e2[i];
                    if (e[i] > a.bound_) { ok = false; break; }
                }
                if (ok) out.add_term(e, v1 * v2);
            }
        return out;
    }
    QPoly& operator*=(const QPoly& o) { *this = *this * o; return *this; }

    QPoly scaled(const Rat& x) const
    {
        QPoly out(r_, bound_);
        if (x == 0) return out;
        for (const auto& [e, v] : c_) out.c_[e] = v * x;
        return out;
    }

    bool operator==(const QPoly& o) const { return c_ == o.c_; }

    /* q_a d/dq_a */
    QPoly log_derivative(int a) const
    {
        QPoly out(r_, bound_);
        for (const auto& [e, v] : c_)
            if (e[a] != 0) out.c_[e] = v * e[a];
        return out;
    }

    int total_order_min() const
    {
        int best = -1;
        for (const auto& [e, v] : c_) {
            int s = 0;
            for (int x : e) s += x;
            if (best < 0 || s < best) best = s;
        }
        return best;
    }

    /* exp of a series with no constant term */
    QPoly exp() const
    {
        if (at_zero() != 0) throw Error("SeriesDomain", "exp needs positive order input");
        QPoly out = constant(r_, bound_, 1), pw = constant(r_, bound_, 1);
        Rat fact = 1;
        int depth = r_ * bound_ + 1;
        for (int k = 1; k <= depth; ++k) {
            pw = pw * *this;
            if (pw.is_zero()) break;
            fact *= k;
            out += pw.scaled(Rat(1) / fact);
        }
        return out;
    }

    /* log of a series with constant term 1 */
    QPoly log() const
    {
        if (at_zero() != 1) throw Error("SeriesDomain", "log needs unit constant term");
        QPoly u = *this - constant(r_, bound_, 1);
        QPoly out(r_, bound_), pw = constant(r_, bound_, 1);
        int depth = r_ * bound_ + 1;
        for (int k = 1; k <= depth; ++k) {
            pw = pw * u;
            if (pw.is_zero()) break;
            out += pw.scaled(Rat(k % 2 == 1 ? 1 : -1) / k);
        }
        return out;
    }

    /* substitute q_a -> sub[a]; every sub[a] must have zero constant term */
    QPoly compose(const std::vector<QPoly>& sub) const
    {
        QPoly out(r_, bound_);
        for (const auto& [e, v] : c_) {
            QPoly term = constant(r_, bound_, v);
            for (int a = 0; a < r_ && !term.is_zero(); ++a)
                for (int k = 0; k < e[a]; ++k) term = term * sub[a];
            out += term;
        }
        return out;
    }

    std::string str(const std::vector<std::string>& names) const
    {
        if (c_.empty()) return "0";
        std::string s;
        bool first = true;
        for (const auto& [e, v] : c_) {
            std::string mono;
            for (int a = 0; a < r_; ++a) {
                if (e[a] == 0) continue;
                if (!mono.empty()) mono += "*";
                mono += names[a];
                if (e[a] > 1) mono += "^" + std::to_string(e[a]);
            }
            std::string cs = rat_str(v);
            if (!first) s += v >= 0 ? " + " : " - ";
            if (first && v < 0) cs = rat_str(v);
            if (!first && v < 0) cs = rat_str(-v);
            if (mono.empty())
                s += cs;
            else if (cs == "1")
                s += mono;
            else if (cs == "-1" && first)
                s += "-" + mono;
            else
                s += cs + "*" + mono;
            first = false;
        }
        return s;
    }

private:
    int r_, bound_;
    std::map<std::vector<int>, Rat> c_;
};

using QPMat = std::vector<std::vector<QPoly>>;

inline QPMat qpmat(int rows, int cols, int r, int bound)
{
    return QPMat(rows, std::vector<QPoly>(cols, QPoly(r, bound)));
}

inline QPMat qp_mul(const QPMat& a, const QPMat& b)
{
    std::size_t n = a.size(), k = b.size(), m = b[0].size();
    QPMat c = qpmat(n, m, a[0][0].vars(), a[0][0].bound());
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t l = 0; l < k; ++l) {
            if (a[i][l].is_zero()) continue;
            for (std::size_t j = 0; j < m; ++j)
                if (!b[l][j].is_zero()) c[i][j] += a[i][l] * b[l][j];
        }
    return c;
}

/* Inverse of a matrix whose constant term is the identity, by the Neumann
 * series in the q-adic filtration. */
inline QPMat qp_inverse_unipotent(const QPMat& m)
{
    std::size_t k = m.size();
    int r = m[0][0].vars(), bound = m[0][0].bound();
    QPMat x = qpmat(k, k, r, bound), out = qpmat(k, k, r, bound), pw = qpmat(k, k, r, bound);
    for (std::size_t i = 0; i < k; ++i) {
        out[i][i] = QPoly::constant(r, bound, 1);
        pw[i][i] = QPoly::constant(r, bound, 1);
        for (std::size_t j = 0; j < k; ++j) {
            x[i][j] = m[i][j];
            if (i == j) x[i][j] -= QPoly::constant(r, bound, 1);
            if (x[i][j].at_zero() != 0)
                throw Error("NotUnipotent", "matrix constant term is not the identity");
        }
    }
    for (int s = 0; s < r * bound + 1; ++s) {
        pw = qp_mul(pw, x);
        bool zero = true;
        for (auto& row : pw)
            for (auto& e : row) zero = zero && e.is_zero();
        if (zero) break;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (s % 2 == 0) out[i][j] -= pw[i][j]; else out[i][j] += pw[i][j];
    }
    return out;
}

}  // namespace qfan
