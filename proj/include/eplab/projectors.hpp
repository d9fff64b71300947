#pragma once

#include "eplab/matrix.hpp"
#include "eplab/pinv.hpp"

namespace eplab {

/// Orthogonal projector onto a subspace, with its dimension.
/// Hermitian and idempotent within residual_tol; trace ~= subspace_dim.
struct SubspaceProjector {
    Matrix matrix;
    int subspace_dim = 0;
};

/// Result of a subspace-inclusion style test.
struct InclusionResult {
    bool included = false;
    double residual = 0.0;
};

/// P onto the range of T (column space), built from the left singular vectors
/// with singular value above the rank cutoff. Agrees with T*pinv(T).
SubspaceProjector range_projector(const Matrix& t, const ToleranceConfig& tol = {});

/// P onto the kernel of T; complements the projector onto R(T*).
SubspaceProjector kernel_projector(const Matrix& t, const ToleranceConfig& tol = {});

/// R(A) subset of R(B)? true iff ||(I - P_{R(B)}) A||_F <= tol * max(1, ||A||_F).
InclusionResult range_included(const Matrix& a, const Matrix& b, const ToleranceConfig& tol = {});

/// Minimal constant c with ||A* x|| <= c ||B* x|| for all x, which exists iff
/// R(A) is contained in R(B); returns ||pinv(B) A|| in that case and +inf
/// otherwise. The operator norm (largest singular value) is used.
double douglas_constant(const Matrix& a, const Matrix& b, const ToleranceConfig& tol = {});

/// Does B map the kernel of A into itself?
/// Tests ||P_{N(A)}^perp B P_{N(A)}||_F <= tol * max(1, ||B||_F).
InclusionResult kernel_invariant(const Matrix& b, const Matrix& kernel_of,
                                 const ToleranceConfig& tol = {});

}  // namespace eplab
