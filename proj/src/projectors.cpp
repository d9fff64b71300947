#include "eplab/projectors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace eplab {

SubspaceProjector range_projector(const Matrix& t, const ToleranceConfig& tol) {
    require_finite(t, "range_projector");
    tol.validate();
    Eigen::JacobiSVD<Matrix> svd(t, Eigen::ComputeThinU);
    const auto& sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    const double cutoff = tol.rank_tol_factor * static_cast<double>(std::max(t.rows(), t.cols())) *
                          sigma_max * std::numeric_limits<double>::epsilon();
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;

    SubspaceProjector p;
    p.subspace_dim = rank;
    const Matrix u_r = svd.matrixU().leftCols(rank);
    p.matrix = u_r * u_r.adjoint();
    if (p.matrix.size() == 0) p.matrix = Matrix::Zero(t.rows(), t.rows());
    return p;
}

SubspaceProjector kernel_projector(const Matrix& t, const ToleranceConfig& tol) {
    require_finite(t, "kernel_projector");
    // N(T) is the orthocomplement of R(T*).
    SubspaceProjector row_space = range_projector(t.adjoint(), tol);
    SubspaceProjector p;
    p.subspace_dim = static_cast<int>(t.cols()) - row_space.subspace_dim;
    p.matrix = Matrix::Identity(t.cols(), t.cols()) - row_space.matrix;
    return p;
}

InclusionResult range_included(const Matrix& a, const Matrix& b, const ToleranceConfig& tol) {
    require_finite(a, "range_included");
    require_finite(b, "range_included");
    if (a.rows() != b.rows())
        throw InvalidInput("range_included: operands must share the row space dimension");
    const Matrix pb = range_projector(b, tol).matrix;
    const double residual =
        ((Matrix::Identity(pb.rows(), pb.cols()) - pb) * a).norm() / std::max(1.0, a.norm());
    return {residual <= tol.residual_tol, residual};
}

double douglas_constant(const Matrix& a, const Matrix& b, const ToleranceConfig& tol) {
    const InclusionResult incl = range_included(a, b, tol);
    if (!incl.included) return std::numeric_limits<double>::infinity();
    const Matrix solution = pinv_matrix(b, tol) * a;
    Eigen::JacobiSVD<Matrix> svd(solution);
    return svd.singularValues().size() > 0 ? svd.singularValues()(0) : 0.0;
}

InclusionResult kernel_invariant(const Matrix& b, const Matrix& kernel_of,
                                 const ToleranceConfig& tol) {
    require_finite(b, "kernel_invariant");
    require_square(b, "kernel_invariant");
    if (kernel_of.cols() != b.rows())
        throw InvalidInput("kernel_invariant: B must act on the domain of the kernel matrix");
    const Matrix pn = kernel_projector(kernel_of, tol).matrix;
    const Matrix pn_perp = Matrix::Identity(pn.rows(), pn.cols()) - pn;
    const double residual = (pn_perp * b * pn).norm() / std::max(1.0, b.norm());
    return {residual <= tol.residual_tol, residual};
}

}  // namespace eplab
