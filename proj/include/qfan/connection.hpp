#pragma once

#include "qfan/qring.hpp"
#include "qfan/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace qfan {

struct ConnectionData {
    std::vector<std::string> basis_labels;
    RMat A0;    // multiplication by -c_1 at the large radius limit
    RMat Ainf;  // grading diagonal
    std::vector<QPMat> Omega;  // quantum multiplication matrices, flat frame
    RMat pairing;              // Poincare pairing
    int n = 0;
    IVec euler_weights;
};

std::pair<RMat, RMat> origin_connection(const GradedAlgebra& ga, const ExactSequenceData& esd);

struct ExtractionResult {
    std::vector<std::vector<int>> words;  // one per basis monomial
    std::vector<QPMat> omega_word;        // theta-action in the word frame
    QPMat y0;                             // z^0 part of the fundamental frame
    std::vector<QPMat> omega_flat;        // y0 * omega_word * y0^{-1}
    bool z_free = true;                   // omega entries free of z within the box
    bool c_no_positive_z = true;
    std::string residual;                 // first offending entry when not z-free
};

/* Builds the theta-word frame of the (possibly mirror-transformed) interior
 * I-series and extracts the connection matrices by exact q-adic inversion. */
ExtractionResult birkhoff_extract(const GradedAlgebra& ga, const ExactSequenceData& esd,
                                  const LogLaurentSeries& interior);

struct FlatnessReport {
    bool commute = false;
    bool potential = false;
    bool euler = false;
    std::string witness;
    bool ok() const { return commute && potential && euler; }
};

FlatnessReport flatness_report(const ConnectionData& cd);

struct PairingReport {
    bool selfadjoint = false;
    bool mu_identity = false;
    bool z_pole_order = false;
    std::string witness;
    bool ok() const { return selfadjoint && mu_identity && z_pole_order; }
};

PairingReport pairing_report(const GradedAlgebra& ga, const ConnectionData& cd);

bool residue_nilpotency(const ConnectionData& cd);

struct CompareResult {
    bool match = false;
    bool z_residual = false;  // extraction failed z-freeness (mirror map omitted)
    QPMat basis_change;       // phi0, the mirror image of the lifted monomial basis
    QPMat jacobian_twist;     // forward logarithmic Jacobian of kappa at kappa^{-1}
    std::string witness;
};

/* Verifies the Higgs intertwining  phi0 (M^B_a o kappa^{-1}) = (sum_b Jhat_ab Q_b) phi0
 * with Jhat the logarithmic Jacobian d log kappa_b / d log q_a; phi0 reduces to
 * the star-word matrix Y0 in the Fano case. */
CompareResult compare_quantum_rings(const QuantumRing& batyrev, const ExtractionResult& ext,
                                    const MirrorMap& mm, const GradedAlgebra& ga);

}  // namespace qfan
