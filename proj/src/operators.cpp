#include "eplab/operators.hpp"

#include "eplab/pinv.hpp"

#include <algorithm>

namespace eplab {

Matrix commutator(const Matrix& a, const Matrix& b) {
    require_finite(a, "commutator");
    require_finite(b, "commutator");
    require_square(a, "commutator");
    require_same_shape(a, b, "commutator");
    return a * b - b * a;
}

PsdResult is_psd(const Matrix& h, const ToleranceConfig& tol) {
    require_finite(h, "is_psd");
    require_square(h, "is_psd");
    tol.validate();

    PsdResult out;
    const double scale = std::max(1.0, h.norm());
    out.hermiticity_residual = (h - h.adjoint()).norm() / scale;

    const Matrix herm = (h + h.adjoint()) / 2.0;
    Eigen::SelfAdjointEigenSolver<Matrix> eig(herm, Eigen::EigenvaluesOnly);
    out.min_eigenvalue = eig.eigenvalues().size() > 0 ? eig.eigenvalues()(0) : 0.0;

    out.psd = out.hermiticity_residual <= tol.residual_tol &&
              out.min_eigenvalue >= -tol.psd_tol * scale;
    return out;
}

Matrix cauchy_dual(const Matrix& t, const ToleranceConfig& tol) {
    require_finite(t, "cauchy_dual");
    return pinv_matrix(t, tol).adjoint();
}

Matrix mat_power(const Matrix& t, int k) {
    require_finite(t, "mat_power");
    require_square(t, "mat_power");
    if (k < 0) throw InvalidInput("mat_power: exponent must be nonnegative");
    Matrix result = Matrix::Identity(t.rows(), t.cols());
    Matrix base = t;
    int e = k;
    while (e > 0) {
        if (e & 1) result = result * base;
        e >>= 1;
        if (e > 0) base = base * base;
    }
    return result;
}

}  // namespace eplab
