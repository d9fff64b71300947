#pragma once

#include "eplab/matrix.hpp"

namespace eplab {

/// [A,B] = AB - BA.
Matrix commutator(const Matrix& a, const Matrix& b);

/// Outcome of a positive-semidefiniteness test.
struct PsdResult {
    bool psd = false;
    double min_eigenvalue = 0.0;       // of the Hermitian part (H+H*)/2
    double hermiticity_residual = 0.0; // ||H-H*||_F / max(1, ||H||_F)
};

/// H is accepted as PSD iff it is Hermitian within residual_tol and the
/// smallest eigenvalue of its Hermitian part is >= -psd_tol * max(1, ||H||_F).
PsdResult is_psd(const Matrix& h, const ToleranceConfig& tol = {});

/// Cauchy dual w(T) = T (T*T)^dagger = (pinv T)*.
/// Shares kernel and range with T; fixed points are the partial isometries.
Matrix cauchy_dual(const Matrix& t, const ToleranceConfig& tol = {});

/// T^k by repeated squaring; T^0 = I.
Matrix mat_power(const Matrix& t, int k);

}  // namespace eplab
