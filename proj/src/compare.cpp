#include "qfan/connection.hpp"

#include <sstream>

namespace qfan {

/* The comparison implements the intertwining of Higgs structures
 *
 *   phi0(qhat) . M^B_a(kappa^{-1}(qhat)) = [sum_b Jhat_ab . Q_b(qhat)] . phi0(qhat)
 *
 * where Q_b are the extracted flat-frame quantum matrices, Jhat is the forward
 * logarithmic Jacobian d log kappa_b / d log q_a evaluated at kappa^{-1}, and
 * phi0 is the word matrix of the twisted operators (the image of the lifted
 * monomial basis under the mirror isomorphism).  In the Fano case Jhat = id
 * and phi0 = Y0, the star-word matrix. */
CompareResult compare_quantum_rings(const QuantumRing& batyrev, const ExtractionResult& ext,
                                    const MirrorMap& mm, const GradedAlgebra& ga)
{
    CompareResult res;
    if (!ext.z_free || !ext.c_no_positive_z) {
        res.z_residual = true;
        res.witness = ext.residual.empty() ? "frame has positive z-powers" : ext.residual;
        return res;
    }
    const int r = ga.r;
    const std::size_t mu = ga.dim();
    const int order = ext.omega_flat[0][0][0].bound();

    // substitution q_b -> qhat_b w_b and the two logarithmic Jacobians
    std::vector<QPoly> sub, logw;
    for (int b = 0; b < r; ++b) {
        std::vector<int> e(r, 0);
        e[b] = 1;
        QPoly unit = mm.inverse_unit.empty() ? QPoly::constant(r, order, 1) : mm.inverse_unit[b];
        sub.push_back(QPoly::monomial(r, order, e) * unit);
        logw.push_back(unit.log());
    }
    QPMat jac = qpmat(r, r, r, order);  // J_ab = dlog kappa^{-1}_b / dlog qhat_a
    for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
            jac[a][b] = logw[b].log_derivative(a);
            if (a == b) jac[a][b] += QPoly::constant(r, order, 1);
        }
    QPMat jhat = qp_inverse_unipotent(jac);  // forward Jacobian at kappa^{-1}
    res.jacobian_twist = jhat;

    // twisted multiplication operators and their word matrix
    std::vector<QPMat> twisted;
    for (int a = 0; a < r; ++a) {
        QPMat t = qpmat(mu, mu, r, order);
        for (int b = 0; b < r; ++b) {
            if (jhat[a][b].is_zero()) continue;
            for (std::size_t i = 0; i < mu; ++i)
                for (std::size_t j = 0; j < mu; ++j)
                    t[i][j] += jhat[a][b] * ext.omega_flat[b][i][j];
        }
        twisted.push_back(t);
    }
    QPMat phi0 = qpmat(mu, mu, r, order);
    for (std::size_t k = 0; k < mu; ++k) {
        std::vector<QPoly> v(mu, QPoly(r, order));
        v[0] = QPoly::constant(r, order, 1);
        for (int a = 0; a < r; ++a)
            for (int s = 0; s < ga.basis[k][a]; ++s) {
                std::vector<QPoly> next(mu, QPoly(r, order));
                for (std::size_t i = 0; i < mu; ++i)
                    for (std::size_t j = 0; j < mu; ++j)
                        if (!twisted[a][i][j].is_zero() && !v[j].is_zero())
                            next[i] += twisted[a][i][j] * v[j];
                v = std::move(next);
            }
        for (std::size_t i = 0; i < mu; ++i) phi0[i][k] = v[i];
    }
    res.basis_change = phi0;

    for (int a = 0; a < r; ++a) {
        QPMat mhat = qpmat(mu, mu, r, order);
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j) {
                if (batyrev.M[a][i][j].is_zero()) continue;
                QPoly entry(r, order);  // re-truncate into this box before composing
                for (const auto& [e, c] : batyrev.M[a][i][j].terms()) entry.add_term(e, c);
                mhat[i][j] = entry.compose(sub);
            }
        QPMat lhs = qp_mul(phi0, mhat);
        QPMat rhs = qp_mul(twisted[a], phi0);
        for (std::size_t i = 0; i < mu; ++i)
            for (std::size_t j = 0; j < mu; ++j)
                if (!(lhs[i][j] == rhs[i][j])) {
                    res.match = false;
                    std::ostringstream os;
                    os << "direction " << a + 1 << ", entry [" << i << "][" << j
                       << "]: batyrev side "
                       << lhs[i][j].str(std::vector<std::string>(r, "q")) << " vs quantum side "
                       << rhs[i][j].str(std::vector<std::string>(r, "q"));
                    res.witness = os.str();
                    return res;
                }
    }
    res.match = true;
    return res;
}

}  // namespace qfan
