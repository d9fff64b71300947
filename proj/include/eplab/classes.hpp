#pragma once

#include "eplab/matrix.hpp"
#include "eplab/operators.hpp"
#include "eplab/projectors.hpp"

#include <compare>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace eplab {

/// Outcome of a predicate evaluated through several published
/// characterizations. The routes must agree on the boolean; a conflict throws
/// RouteDisagreement (it signals a tolerance pathology, not a class property).
struct RoutedVerdict {
    bool holds = false;
    std::vector<std::pair<std::string, double>> residuals;

    double residual(const std::string& name) const;
    double worst() const;
};

// Single-characterization predicates.
Verdict is_normal(const Matrix& t, const ToleranceConfig& tol = {});        // [T*,T] = 0
Verdict is_n_normal(const Matrix& t, int n, const ToleranceConfig& tol = {}); // T^n T* = T* T^n
Verdict is_quasi_normal(const Matrix& t, const ToleranceConfig& tol = {});  // [T*T, T] = 0
Verdict is_hyponormal(const Matrix& t, const ToleranceConfig& tol = {});    // [T*,T] >= 0

// Multi-route predicates; all routes must agree.
RoutedVerdict is_partial_isometry(const Matrix& t, const ToleranceConfig& tol = {});
RoutedVerdict is_ep(const Matrix& t, const ToleranceConfig& tol = {});
RoutedVerdict is_sd(const Matrix& t, const ToleranceConfig& tol = {});
RoutedVerdict is_hypo_ep(const Matrix& t, const ToleranceConfig& tol = {});
RoutedVerdict is_n_ep(const Matrix& t, int n, const ToleranceConfig& tol = {});
RoutedVerdict is_n_hypo_ep(const Matrix& t, int n, const ToleranceConfig& tol = {});

/// Smallest n with rank(T^n) = rank(T^{n+1}); detects the kernel chain
/// N(T^n) = N(T^{n+1}) stabilizing.
int ascent(const Matrix& t, const ToleranceConfig& tol = {});

/// Smallest n at which the range chain R(T^n) = R(T^{n+1}) stabilizes; in
/// finite dimension this is again rank stabilization and coincides with the
/// ascent (both equal the index of the eigenvalue zero).
int descent(const Matrix& t, const ToleranceConfig& tol = {});

/// N(T) contained in R(T^k) for every k <= dim (closed range is automatic).
Verdict is_regular(const Matrix& t, const ToleranceConfig& tol = {});

enum class ClassKind {
    Normal,
    NNormal,
    QuasiNormal,
    Hyponormal,
    PartialIsometry,
    EP,
    SD,
    HypoEP,
    NEP,
    NHypoEP,
    Regular,
};

struct ClassLabel {
    ClassKind kind{};
    int n = 0;  // >= 1 for the n-parameterized kinds, 0 otherwise

    auto operator<=>(const ClassLabel&) const = default;
};

std::string to_string(const ClassLabel& label);

/// Full class-membership record of one operator.
struct OperatorProfile {
    int dim = 0;
    int n_max = 0;
    int ascent = 0;
    int descent = 0;
    std::map<ClassLabel, Verdict> memberships;

    const Verdict& at(ClassKind kind, int n = 0) const;
    bool holds(ClassKind kind, int n = 0) const { return at(kind, n).holds; }
};

/// Evaluates every predicate (per-n up to n_max) and enforces the structural
/// invariants of the profile:
///   NEP(n) implies NEP(n+1); NHypoEP(n) implies NHypoEP(n+1);
///   NEP(n) iff NHypoEP(n) holds for both T and T*;
///   Normal implies EP and SD.
/// A violation beyond tolerance throws ConsistencyError.
OperatorProfile classify(const Matrix& t, int n_max = 4, const ToleranceConfig& tol = {});

}  // namespace eplab
