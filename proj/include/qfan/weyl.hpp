#pragma once

#include "qfan/fan.hpp"
#include "qfan/rational.hpp"

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace qfan {

/* Shared monomial key: q-exponents e (>= 0 in operators, also series keys),
 * z-exponent j, theta / log-q exponents alpha, E_z / log-z exponent beta. */
struct MKey {
    std::vector<int> e;
    int j = 0;
    std::vector<int> alpha;
    int beta = 0;

    auto operator<=>(const MKey&) const = default;
    int theta_order() const
    {
        int s = 0;
        for (int v : alpha) s += v;
        return s;
    }
};

/* Normal-ordered operator in the ring C[q,z]<z q_a d/dq_a, z^2 d/dz>:
 * finite sums  c * q^e z^j theta^alpha E^beta  with the commutators
 * [theta_a, q_b] = delta_ab z q_a, [E, z] = z^2, [E, theta_a] = z theta_a. */
class WeylOperator {
public:
    WeylOperator() : r_(0) {}
    explicit WeylOperator(int r) : r_(r) {}

    static WeylOperator zero(int r) { return WeylOperator(r); }
    static WeylOperator constant(int r, const Rat& c);
    static WeylOperator q_power(int r, const std::vector<int>& e);
    static WeylOperator z_power(int r, int j);
    static WeylOperator theta(int r, int a);
    static WeylOperator euler_z(int r);  // E = z^2 d/dz

    int vars() const { return r_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<MKey, Rat>& terms() const { return terms_; }
    void add_term(const MKey& k, const Rat& c);

    WeylOperator& operator+=(const WeylOperator& o);
    WeylOperator& operator-=(const WeylOperator& o);
    friend WeylOperator operator+(WeylOperator a, const WeylOperator& b) { a += b; return a; }
    friend WeylOperator operator-(WeylOperator a, const WeylOperator& b) { a -= b; return a; }
    friend WeylOperator operator*(const WeylOperator& a, const WeylOperator& b);
    WeylOperator scaled(const Rat& c) const;
    bool operator==(const WeylOperator& o) const { return terms_ == o.terms_; }

    /* max q-shift per variable over all terms (for annihilation safe boxes) */
    std::vector<int> max_q_shift() const;

    std::string str() const;  // canonical text form, t_a for theta_a, E for z^2 d/dz

private:
    int r_;
    std::map<MKey, Rat> terms_;
};

/* Commutative polynomial in q, z, the theta-symbols x_a and the E-symbol y. */
struct SymbolPoly {
    int r = 0;
    std::map<MKey, Rat> terms;  // e = q, j = z, alpha = x, beta = y
    bool operator==(const SymbolPoly& o) const { return terms == o.terms; }
    std::string str() const;
};

/* D_i as operator coefficient: sum_a m_ia theta_a. */
WeylOperator divisor_theta(const ExactSequenceData& esd, int i);

/* Reduced GKZ box operator for a relation l (NotARelation if A l != 0). */
WeylOperator reduced_box_operator(const ExactSequenceData& esd, const IVec& l);

/* z d/dz + sum k_a q_a d/dq_a (flat) or z^2 d/dz + sum k_a z q_a d/dq_a (lattice). */
WeylOperator euler_operator(const ExactSequenceData& esd, bool lattice_form);

/* Logarithmic principal symbol: theta_a -> x_a, E -> z*y, top operator order
 * only; with at_z_zero also evaluates at z = 0. */
SymbolPoly principal_symbol(const WeylOperator& op, bool at_z_zero);

}  // namespace qfan
