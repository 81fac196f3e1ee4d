#include "qfan/weyl.hpp"

#include <algorithm>
#include <sstream>

namespace qfan {

void WeylOperator::add_term(const MKey& k, const Rat& c)
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

WeylOperator WeylOperator::constant(int r, const Rat& c)
{
    WeylOperator w(r);
    w.add_term({std::vector<int>(r, 0), 0, std::vector<int>(r, 0), 0}, c);
    return w;
}

WeylOperator WeylOperator::q_power(int r, const std::vector<int>& e)
{
    WeylOperator w(r);
    w.add_term({e, 0, std::vector<int>(r, 0), 0}, 1);
    return w;
}

WeylOperator WeylOperator::z_power(int r, int j)
{
    WeylOperator w(r);
    w.add_term({std::vector<int>(r, 0), j, std::vector<int>(r, 0), 0}, 1);
    return w;
}

WeylOperator WeylOperator::theta(int r, int a)
{
    WeylOperator w(r);
    std::vector<int> alpha(r, 0);
    alpha[a] = 1;
    w.add_term({std::vector<int>(r, 0), 0, alpha, 0}, 1);
    return w;
}

WeylOperator WeylOperator::euler_z(int r)
{
    WeylOperator w(r);
    w.add_term({std::vector<int>(r, 0), 0, std::vector<int>(r, 0), 1}, 1);
    return w;
}

WeylOperator& WeylOperator::operator+=(const WeylOperator& o)
{
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

WeylOperator& WeylOperator::operator-=(const WeylOperator& o)
{
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

WeylOperator WeylOperator::scaled(const Rat& c) const
{
    WeylOperator w(r_);
    if (c == 0) return w;
    for (const auto& [k, v] : terms_) w.terms_[k] = v * c;
    return w;
}

namespace {

/* theta_a * (c q^e z^j theta^alpha E^beta)
 *   = c q^e z^j theta^{alpha+1_a} E^beta + c e_a q^e z^{j+1} theta^alpha E^beta */
void left_mul_theta(int a, const std::map<MKey, Rat>& in, WeylOperator& out)
{
    for (const auto& [k, c] : in) {
        MKey k1 = k;
        k1.alpha[a] += 1;
        out.add_term(k1, c);
        if (k.e[a] != 0) {
            MKey k2 = k;
            k2.j += 1;
            out.add_term(k2, c * k.e[a]);
        }
    }
}

/* E * (c q^e z^j theta^alpha E^beta)
 *   = c q^e z^j theta^alpha E^{beta+1} + c (j+|alpha|) q^e z^{j+1} theta^alpha E^beta */
void left_mul_E(const std::map<MKey, Rat>& in, WeylOperator& out)
{
    for (const auto& [k, c] : in) {
        MKey k1 = k;
        k1.beta += 1;
        out.add_term(k1, c);
        int w = k.j + k.theta_order();
        if (w != 0) {
            MKey k2 = k;
            k2.j += 1;
            out.add_term(k2, c * w);
        }
    }
}

}  // namespace

WeylOperator operator*(const WeylOperator& a, const WeylOperator& b)
{
    int r = a.vars();
    WeylOperator out(r);
    for (const auto& [ka, ca] : a.terms()) {
        // peel the left term: first apply E^beta, then theta^alpha, then shift by z^j q^e
        WeylOperator acc = b;
        for (int s = 0; s < ka.beta; ++s) {
            WeylOperator next(r);
            left_mul_E(acc.terms(), next);
            acc = std::move(next);
        }
        for (int av = 0; av < r; ++av)
            for (int s = 0; s < ka.alpha[av]; ++s) {
                WeylOperator next(r);
                left_mul_theta(av, acc.terms(), next);
                acc = std::move(next);
            }
        for (const auto& [kb, cb] : acc.terms()) {
            MKey k = kb;
            for (int i = 0; i < r; ++i) k.e[i] += ka.e[i];
            k.j += ka.j;
            out.add_term(k, ca * cb);
        }
    }
    return out;
}

std::vector<int> WeylOperator::max_q_shift() const
{
    std::vector<int> s(r_, 0);
    for (const auto& [k, c] : terms_)
        for (int i = 0; i < r_; ++i) s[i] = std::max(s[i], k.e[i]);
    return s;
}

std::string WeylOperator::str() const
{
    if (terms_.empty()) return "0";
    // canonical reading order: low derivative order first, then descending key
    std::vector<std::pair<MKey, Rat>> sorted(terms_.begin(), terms_.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        int oa = a.first.theta_order() + a.first.beta;
        int ob = b.first.theta_order() + b.first.beta;
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
        for (int i = 0; i < r_; ++i)
            if (k.e[i] != 0)
                piece("q" + std::to_string(i + 1) +
                      (k.e[i] == 1 ? "" : "^" + std::to_string(k.e[i])));
        if (k.j != 0) piece("z" + (k.j == 1 ? std::string() : "^" + std::to_string(k.j)));
        for (int i = 0; i < r_; ++i)
            if (k.alpha[i] != 0)
                piece("t" + std::to_string(i + 1) +
                      (k.alpha[i] == 1 ? "" : "^" + std::to_string(k.alpha[i])));
        if (k.beta != 0) piece("E" + (k.beta == 1 ? std::string() : "^" + std::to_string(k.beta)));
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

WeylOperator divisor_theta(const ExactSequenceData& esd, int i)
{
    WeylOperator d(esd.r);
    for (int a = 0; a < esd.r; ++a)
        if (esd.M[i][a] != 0)
            d += WeylOperator::theta(esd.r, a).scaled(Rat(esd.M[i][a]));
    return d;
}

WeylOperator reduced_box_operator(const ExactSequenceData& esd, const IVec& l)
{
    // check A l = 0
    for (int k = 0; k < esd.fan.n; ++k) {
        Int acc = 0;
        for (int i = 0; i < esd.fan.m(); ++i) acc += esd.A[k][i] * l[i];
        if (acc != 0) throw Error("NotARelation", "A*l != 0");
    }
    IVec p = esd.curve_coords(l);
    const int r = esd.r;

    std::vector<int> qplus(r, 0), qminus(r, 0);
    for (int a = 0; a < r; ++a) {
        if (p[a] > 0) qplus[a] = static_cast<int>(p[a]);
        if (p[a] < 0) qminus[a] = static_cast<int>(-p[a]);
    }
    WeylOperator left = WeylOperator::q_power(r, qplus);
    for (int i = 0; i < esd.fan.m(); ++i) {
        if (l[i] >= 0) continue;
        for (Int nu = 0; nu < -l[i]; ++nu)
            left = left * (divisor_theta(esd, i) -
                           WeylOperator::z_power(r, 1).scaled(Rat(nu)));
    }
    WeylOperator right = WeylOperator::q_power(r, qminus);
    for (int i = 0; i < esd.fan.m(); ++i) {
        if (l[i] <= 0) continue;
        for (Int nu = 0; nu < l[i]; ++nu)
            right = right * (divisor_theta(esd, i) -
                             WeylOperator::z_power(r, 1).scaled(Rat(nu)));
    }
    return left - right;
}

WeylOperator euler_operator(const ExactSequenceData& esd, bool lattice_form)
{
    const int r = esd.r;
    WeylOperator op(r);
    // lattice: z^2 d/dz + sum k_a z q_a d/dq_a = E + sum k_a theta_a
    op += WeylOperator::euler_z(r);
    for (int a = 0; a < r; ++a)
        op += WeylOperator::theta(r, a).scaled(Rat(esd.euler_weights[a]));
    if (!lattice_form) op = WeylOperator::z_power(r, -1) * op;
    return op;
}

SymbolPoly principal_symbol(const WeylOperator& op, bool at_z_zero)
{
    SymbolPoly s;
    s.r = op.vars();
    int top = 0;
    for (const auto& [k, c] : op.terms()) top = std::max(top, k.theta_order() + k.beta);
    for (const auto& [k, c] : op.terms()) {
        if (k.theta_order() + k.beta != top) continue;
        MKey sym = k;
        sym.j += k.beta;  // sigma(E) = z*y
        if (at_z_zero) {
            if (sym.j < 0)
                throw Error("SymbolDomain", "negative z-power in symbol at z=0");
            if (sym.j > 0) continue;
        }
        auto it = s.terms.find(sym);
        if (it == s.terms.end())
            s.terms[sym] = c;
        else {
            it->second += c;
            if (it->second == 0) s.terms.erase(it);
        }
    }
    return s;
}

std::string SymbolPoly::str() const
{
    if (terms.empty()) return "0";
    std::vector<std::pair<MKey, Rat>> sorted(terms.begin(), terms.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        int oa = a.first.theta_order() + a.first.beta;
        int ob = b.first.theta_order() + b.first.beta;
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
        auto piece = [&](const std::string& s2) {
            if (!factors.empty()) factors += "*";
            factors += s2;
        };
        for (int i = 0; i < r; ++i)
            if (k.e[i] != 0)
                piece("q" + std::to_string(i + 1) +
                      (k.e[i] == 1 ? "" : "^" + std::to_string(k.e[i])));
        if (k.j != 0) piece("z" + (k.j == 1 ? std::string() : "^" + std::to_string(k.j)));
        for (int i = 0; i < r; ++i)
            if (k.alpha[i] != 0)
                piece("x" + std::to_string(i + 1) +
                      (k.alpha[i] == 1 ? "" : "^" + std::to_string(k.alpha[i])));
        if (k.beta != 0) piece("y" + (k.beta == 1 ? std::string() : "^" + std::to_string(k.beta)));
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

}  // namespace qfan
