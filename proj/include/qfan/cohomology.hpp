#pragma once

#include "qfan/fan.hpp"

#include <map>
#include <string>
#include <vector>

namespace qfan {

/* Elements of H*(X,Q) are coefficient vectors over the monomial basis. */
using AlgebraElement = RVec;

/* H*(X,Q) in the nef generators p_1..p_r, presented as the quotient by the
 * Stanley-Reisner relations of the primitive collections; normal forms by
 * degreewise exact elimination. */
class GradedAlgebra {
public:
    int n = 0;  // top degree
    int r = 0;  // number of generators
    std::vector<std::vector<int>> basis;  // exponent vectors, graded order
    std::vector<int> basis_degree;
    std::size_t dim() const { return basis.size(); }

    AlgebraElement zero() const { return AlgebraElement(dim(), Rat(0)); }
    AlgebraElement one() const;
    AlgebraElement generator(int a) const;           // p_a
    AlgebraElement divisor(int i) const;              // D_i = sum_a m_ia p_a
    AlgebraElement monomial(const std::vector<int>& e) const;  // normal form of p^e

    AlgebraElement mul(const AlgebraElement& x, const AlgebraElement& y) const;
    AlgebraElement mul_generator(int a, const AlgebraElement& x) const;
    Rat integrate(const AlgebraElement& x) const;
    int degree_of_basis(std::size_t k) const { return basis_degree[k]; }
    bool is_homogeneous(const AlgebraElement& x, int d) const;

    RMat poincare_pairing_matrix() const;

    struct StructureOperators {
        std::vector<RMat> P;  // cup with p_a
        RMat C1;              // cup with rho
        RMat MU;              // grading diagonal
    };
    StructureOperators structure_operators() const;

    std::string basis_label(std::size_t k, const std::string& var = "p") const;

    // internals shared with the quantum ring builder
    const IMat& divisor_matrix() const { return m_; }
    const IVec& euler_weights() const { return k_; }
    const std::map<std::vector<int>, AlgebraElement>& normal_forms() const { return nf_; }

    friend GradedAlgebra build_algebra(const ExactSequenceData& esd,
                                       const std::vector<PrimitiveRelation>& prels);

private:
    IMat m_;   // divisor classes, rows of M
    IVec k_;   // euler weights
    std::map<std::vector<int>, AlgebraElement> nf_;  // all monomials of degree <= 2n
    std::map<std::vector<int>, std::size_t> index_;  // basis exponent -> position
    std::vector<std::vector<AlgebraElement>> table_;  // basis x basis products
    std::size_t top_ = 0;
    Rat point_norm_ = 1;  // NF(point class) = point_norm * top basis monomial
};

GradedAlgebra build_algebra(const ExactSequenceData& esd,
                            const std::vector<PrimitiveRelation>& prels);

}  // namespace qfan
