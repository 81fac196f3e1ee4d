#pragma once

#include "qfan/cohomology.hpp"
#include "qfan/qpoly.hpp"
#include "qfan/weyl.hpp"

#include <map>
#include <optional>
#include <vector>

namespace qfan {

/* H*(X)-valued truncated series in q, z^{+-1}, log q, log z.  Keys reuse MKey:
 * e = q-exponents (componentwise <= q_order), j = z-exponent, alpha = log-q
 * exponents, beta = log-z exponent.  z-support is finite and unclamped; an
 * optional window records clamping when requested. */
class LogLaurentSeries {
public:
    LogLaurentSeries() : r_(0), q_order_(0) {}
    LogLaurentSeries(const GradedAlgebra* ga, int q_order)
        : ga_(ga), r_(ga->r), q_order_(q_order) {}

    const GradedAlgebra& algebra() const { return *ga_; }
    int q_order() const { return q_order_; }
    bool dropped_keys() const { return dropped_; }
    bool is_zero() const { return c_.empty(); }
    const std::map<MKey, AlgebraElement>& coefficients() const { return c_; }

    void add(const MKey& k, const AlgebraElement& v);
    AlgebraElement coeff(const MKey& k) const;

    LogLaurentSeries& operator+=(const LogLaurentSeries& o);
    LogLaurentSeries& operator-=(const LogLaurentSeries& o);
    friend LogLaurentSeries operator+(LogLaurentSeries a, const LogLaurentSeries& b) { a += b; return a; }
    friend LogLaurentSeries operator-(LogLaurentSeries a, const LogLaurentSeries& b) { a -= b; return a; }
    friend LogLaurentSeries operator*(const LogLaurentSeries& a, const LogLaurentSeries& b);
    LogLaurentSeries scaled(const Rat& x) const;
    bool operator==(const LogLaurentSeries& o) const { return c_ == o.c_; }

    LogLaurentSeries mul_class(const AlgebraElement& cls) const;
    LogLaurentSeries shifted(const MKey& k) const;  // multiply by q^e z^j logq^alpha logz^beta

    /* derivations */
    LogLaurentSeries theta(int a) const;  // z q_a d/dq_a
    LogLaurentSeries zdz() const;         // z d/dz
    LogLaurentSeries apply(const WeylOperator& op) const;

    /* structural probes */
    bool log_free() const;
    bool no_positive_z() const;
    int max_log_z() const;

    /* the scalar series of z^jsel-coefficients of a fixed cohomology component */
    QPoly component_qpoly(std::size_t basis_index, int jsel) const;

private:
    const GradedAlgebra* ga_ = nullptr;
    int r_, q_order_;
    bool dropped_ = false;
    std::map<MKey, AlgebraElement> c_;
};

struct EffectiveBoxEntry {
    IVec l;            // relation vector in Z^m
    IVec coords;       // p-coordinates (the q-exponent)
    bool effective;
};

std::vector<EffectiveBoxEntry> enumerate_effective_box(const ExactSequenceData& esd, int order);

struct IFunctionData {
    LogLaurentSeries interior;  // e^{-delta/z} I: log-free, z-powers <= 0
    LogLaurentSeries full;      // I itself
    int order;
};

/* Givental I-function, truncated at componentwise q-order N. */
IFunctionData build_I(const ExactSequenceData& esd, const GradedAlgebra& ga, int order);

/* Gamma-cancelled twist of I-tilde: all coefficients exact rationals. */
LogLaurentSeries build_I_tilde(const ExactSequenceData& esd, const GradedAlgebra& ga, int order);

struct AnnihilationResult {
    bool pass;
    std::optional<MKey> residual;   // largest offending key, if any
    std::vector<int> safe_q_order;  // componentwise box actually certified
};

AnnihilationResult check_annihilation(const WeylOperator& op, const LogLaurentSeries& s);

struct MirrorMap {
    std::vector<QPoly> gamma_prime;  // components over the p-basis
    std::vector<QPoly> kappa_unit;   // kappa_a = q_a * kappa_unit[a]
    std::vector<QPoly> inverse_unit;  // kappa^{-1}_a = q_a * inverse_unit[a]
    bool identity;                   // gamma' == 0
};

MirrorMap mirror_map(const IFunctionData& idata);

/* Compose with the inverse mirror map: returns target(kappa^{-1}(q)). */
LogLaurentSeries invert_and_substitute(const LogLaurentSeries& target, const MirrorMap& mm);

/* Round-trip helper used by tests: the compositional inverse of an arbitrary
 * kappa given by unit parts. */
std::vector<QPoly> invert_unit_series(const std::vector<QPoly>& kappa_unit);

/* G_w = e^{-delta/z} (theta-word applied to I); recursion
 * G_{w.a} = p_a G_w + theta_a G_w starting from the interior part.  Words
 * longer than the nilpotency depth are permitted but flagged. */
LogLaurentSeries divisor_word_series(const LogLaurentSeries& interior,
                                     const std::vector<int>& word,
                                     bool* word_too_long = nullptr);

/* Multiply by exp(sign * sum_a log q_a p_a / z); sign = -1 strips the
 * classical prefactor off a full I-type series. */
LogLaurentSeries mul_exp_delta(const LogLaurentSeries& s, int sign);

}  // namespace qfan
