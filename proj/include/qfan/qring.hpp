#pragma once

#include "qfan/cohomology.hpp"
#include "qfan/qpoly.hpp"

#include <vector>

namespace qfan {

enum class QRingMode { GradedExact, QTruncated };

/* The z = 0 quotient of the lattice GKZ module: polynomials in p_1..p_r over
 * Q[q] modulo one relation per primitive relation,
 *   prod_{l_i>0} D_i^{l_i} = q^{p(l)} prod_{l_i<0} D_i^{-l_i},
 * with basis the lifted cohomology monomials. */
struct QuantumRing {
    std::vector<std::vector<int>> basis;  // lifted monomial exponents
    std::vector<QPMat> M;                 // M[a] = multiplication by p_a
    QRingMode mode;
    int q_order;                          // truncation (exact in graded mode)
};

QuantumRing batyrev_quantum_ring(const ExactSequenceData& esd,
                                 const std::vector<PrimitiveRelation>& prels,
                                 const GradedAlgebra& ga, QRingMode mode, int q_order);

}  // namespace qfan
