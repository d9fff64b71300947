#pragma once

#include "eplab/matrix.hpp"

#include <array>
#include <atomic>
#include <vector>

namespace eplab {

/// Moore-Penrose pseudoinverse together with the spectrum that produced it.
///
/// The four defining equations are
///   T X T = T,  X T X = X,  (X T)* = X T,  (T X)* = T X,
/// and X = pinv is their unique solution. numerical_rank counts the singular
/// values above the cutoff rank_tol_factor * max(m,n) * sigma_max * eps.
struct PseudoInverseResult {
    Matrix pinv;                          // n x m
    std::vector<double> singular_values;  // descending, all of min(m,n)
    int numerical_rank = 0;
};

/// SVD-based pseudoinverse with rank truncation. The decomposition runs in
/// extended precision internally so that the returned double-precision matrix
/// satisfies the four defining equations to ~1e-11 relative even at condition
/// numbers near 1e6.
PseudoInverseResult pinv(const Matrix& t, const ToleranceConfig& tol = {});

/// Shorthand when only the matrix is needed.
Matrix pinv_matrix(const Matrix& t, const ToleranceConfig& tol = {});

/// Regularized inverse route: (T*T + sI)^{-1} T* evaluated at the smallest s
/// of a strictly decreasing positive sweep. Converges to pinv(T) as s -> 0 and
/// serves as an independent oracle for it: the distance to pinv(T) shrinks
/// monotonically along the sweep.
Matrix regularized_pinv(const Matrix& t, const std::vector<double>& s_values);

/// The four residuals of the defining equations, each relative to the scale of
/// its left-hand side. Evaluated with extended-precision products so that the
/// measurement itself does not drown the result at high condition numbers.
std::array<double, 4> mp_residuals(const Matrix& t, const Matrix& x);

namespace detail {
/// Fault-injection point for the mutation-sensitivity suite: when set, pinv
/// flips the sign of the largest singular value's reciprocal.
extern std::atomic<bool> pinv_fault_injection;

struct PinvFaultGuard {
    PinvFaultGuard() { pinv_fault_injection = true; }
    ~PinvFaultGuard() { pinv_fault_injection = false; }
};
}  // namespace detail

}  // namespace eplab
