#pragma once

#include "qfan/fan.hpp"
#include "qfan/rational.hpp"

#include <map>
#include <string>
#include <vector>

namespace qfan {

enum class AmbientVariant { Classical, Hat, Prime, DoublePrime };

/* Operators of the ambient GKZ systems: the plain Weyl algebra on m+1
 * variables with Laurent monomial coefficients.  Variable 0 is lambda_0 in the
 * classical presentation and z after the Fourier-Laplace transform. */
class AmbientOperator {
public:
    struct Key {
        std::vector<int> e;      // variable exponents, may be negative
        std::vector<int> alpha;  // derivative exponents
        auto operator<=>(const Key&) const = default;
    };

    AmbientOperator() : nv_(0) {}
    explicit AmbientOperator(int nv) : nv_(nv) {}

    static AmbientOperator constant(int nv, const Rat& c);
    static AmbientOperator variable(int nv, int i, int power = 1);
    static AmbientOperator derivative(int nv, int i);

    int vars() const { return nv_; }
    bool is_zero() const { return terms_.empty(); }
    const std::map<Key, Rat>& terms() const { return terms_; }
    void add_term(const Key& k, const Rat& c);

    AmbientOperator& operator+=(const AmbientOperator& o);
    AmbientOperator& operator-=(const AmbientOperator& o);
    friend AmbientOperator operator+(AmbientOperator a, const AmbientOperator& b) { a += b; return a; }
    friend AmbientOperator operator-(AmbientOperator a, const AmbientOperator& b) { a -= b; return a; }
    friend AmbientOperator operator*(const AmbientOperator& a, const AmbientOperator& b);
    AmbientOperator scaled(const Rat& c) const;
    bool operator==(const AmbientOperator& o) const { return terms_ == o.terms_; }

    /* Apply to a Laurent polynomial in the ambient variables. */
    using Laurent = std::map<std::vector<int>, Rat>;
    Laurent apply(const Laurent& f) const;

    std::string str(const std::vector<std::string>& var_names) const;

private:
    int nv_;
    std::map<Key, Rat> terms_;
};

struct AmbientFamily {
    AmbientVariant variant;
    std::vector<std::string> names;       // printing names for the variables
    std::vector<AmbientOperator> boxes;   // one per column of M
    std::vector<AmbientOperator> z_ops;   // Z_k, k = 1..n
    AmbientOperator euler;                // E
};

/* The operator families of the ambient hypergeometric systems for the
 * relations given by the columns of M; beta defaults to (1, 0, ..., 0). */
AmbientFamily ambient_box_operators(const ExactSequenceData& esd,
                                    const std::vector<Rat>& beta,
                                    AmbientVariant variant);

std::string ambient_variant_name(AmbientVariant v);

}  // namespace qfan
