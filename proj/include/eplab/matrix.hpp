#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace eplab {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Thrown on malformed inputs: shape mismatches, non-finite entries, bad parameters.
struct InvalidInput : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when independently computed characterizations of the same predicate
/// disagree at the configured tolerance (signals a tolerance pathology).
struct RouteDisagreement : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Thrown when a computed profile violates one of its structural invariants.
struct ConsistencyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Single source of truth for rank cutoffs, equality thresholds and PSD slack.
struct ToleranceConfig {
    double rank_tol_factor = 1.0;   // multiplies sigma_max * max(m,n) * eps
    double residual_tol = 1e-8;     // relative Frobenius threshold for operator equality
    double psd_tol = 1e-8;          // relative slack on the smallest eigenvalue

    void validate() const {
        if (!(rank_tol_factor >= 0.0) || !(residual_tol >= 0.0) || !(psd_tol >= 0.0))
            throw InvalidInput("ToleranceConfig: tolerances must be nonnegative");
    }
};

inline bool is_finite(const Matrix& m) {
    return m.allFinite();
}

inline void require_finite(const Matrix& m, const char* what) {
    if (!is_finite(m)) throw InvalidInput(std::string(what) + ": non-finite entries");
}

inline void require_square(const Matrix& m, const char* what) {
    if (m.rows() != m.cols())
        throw InvalidInput(std::string(what) + ": square matrix required, got " +
                           std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

inline void require_same_shape(const Matrix& a, const Matrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw InvalidInput(std::string(what) + ": shape mismatch " +
                           std::to_string(a.rows()) + "x" + std::to_string(a.cols()) + " vs " +
                           std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
}

/// Scale-invariant equality residual: ||A-B||_F / max(1, ||A||_F, ||B||_F).
inline double rel_residual(const Matrix& a, const Matrix& b) {
    const double scale = std::max({1.0, a.norm(), b.norm()});
    return (a - b).norm() / scale;
}

inline bool approx_equal(const Matrix& a, const Matrix& b, const ToleranceConfig& tol) {
    return rel_residual(a, b) <= tol.residual_tol;
}

/// Outcome of a single-characterization membership test.
struct Verdict {
    bool holds = false;
    double residual = 0.0;
};

}  // namespace eplab
