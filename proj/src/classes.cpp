#include "eplab/classes.hpp"

#include "eplab/pinv.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace eplab {

namespace {

double commutation_residual(const Matrix& x, const Matrix& y) {
    return rel_residual(x * y, y * x);
}

void require_order(int n, const char* what) {
    if (n < 1) throw InvalidInput(std::string(what) + ": n must be >= 1");
}

[[noreturn]] void route_conflict(const char* predicate, const RoutedVerdict& v,
                                 const std::vector<bool>& booleans) {
    std::ostringstream msg;
    msg << predicate << ": characterizations disagree (";
    for (std::size_t i = 0; i < v.residuals.size(); ++i) {
        msg << v.residuals[i].first << "=" << v.residuals[i].second
            << (i < booleans.size() ? (booleans[i] ? "[T]" : "[F]") : "") << (i + 1 < v.residuals.size() ? ", " : "");
    }
    msg << ")";
    throw RouteDisagreement(msg.str());
}

RoutedVerdict settle(const char* predicate, std::vector<bool> booleans,
                     std::vector<std::pair<std::string, double>> residuals) {
    RoutedVerdict v;
    v.residuals = std::move(residuals);
    for (std::size_t i = 1; i < booleans.size(); ++i)
        if (booleans[i] != booleans[0]) route_conflict(predicate, v, booleans);
    v.holds = booleans.empty() ? false : booleans[0];
    return v;
}

}  // namespace

double RoutedVerdict::residual(const std::string& name) const {
    for (const auto& [key, value] : residuals)
        if (key == name) return value;
    throw InvalidInput("RoutedVerdict: unknown residual " + name);
}

double RoutedVerdict::worst() const {
    double w = 0.0;
    for (const auto& [key, value] : residuals) w = std::max(w, value);
    return w;
}

Verdict is_normal(const Matrix& t, const ToleranceConfig& tol) {
    require_finite(t, "is_normal");
    require_square(t, "is_normal");
    const double r = commutation_residual(t.adjoint(), t);
    return {r <= tol.residual_tol, r};
}

Verdict is_n_normal(const Matrix& t, int n, const ToleranceConfig& tol) {
    require_finite(t, "is_n_normal");
    require_square(t, "is_n_normal");
    require_order(n, "is_n_normal");
    const double r = commutation_residual(mat_power(t, n), t.adjoint());
    return {r <= tol.residual_tol, r};
}

Verdict is_quasi_normal(const Matrix& t, const ToleranceConfig& tol) {
    require_finite(t, "is_quasi_normal");
    require_square(t, "is_quasi_normal");
    const double r = commutation_residual(t.adjoint() * t, t);
    return {r <= tol.residual_tol, r};
}

Verdict is_hyponormal(const Matrix& t, const ToleranceConfig& tol) {
    require_finite(t, "is_hyponormal");
    require_square(t, "is_hyponormal");
    const PsdResult p = is_psd(commutator(t.adjoint(), t), tol);
    const double defect = std::max(p.hermiticity_residual, std::max(0.0, -p.min_eigenvalue));
    return {p.psd, defect};
}

RoutedVerdict is_partial_isometry(const Matrix& t, const ToleranceConfig& tol) {
    require_finite(t, "is_partial_isometry");
    const double r_triple = (t * t.adjoint() * t - t).norm() / std::max(1.0, t.norm());
    const double r_adjoint = rel_residual(pinv_matrix(t, tol), t.adjoint());
    return settle("is_partial_isometry",
                  {r_triple <= tol.residual_tol, r_adjoint <= tol.residual_tol},
                  {{"triple_product", r_triple}, {"pinv_vs_adjoint", r_adjoint}});
}

RoutedVerdict is_ep(const Matrix& t, const ToleranceConfig& tol) {
    require_finite(t, "is_ep");
    require_square(t, "is_ep");
    const Matrix p_range = range_projector(t, tol).matrix;
    const Matrix p_row = range_projector(t.adjoint(), tol).matrix;
    const double r_proj = rel_residual(p_range, p_row);
    const double r_comm = commutation_residual(pinv_matrix(t, tol), t);
    return settle("is_ep", {r_proj <= tol.residual_tol, r_comm <= tol.residual_tol},
                  {{"projector_gap", r_proj}, {"commutation", r_comm}});
}

RoutedVerdict is_sd(const Matrix& t, const ToleranceConfig& tol) {
    require_finite(t, "is_sd");
    require_square(t, "is_sd");
    const Matrix dagger = pinv_matrix(t, tol);
    const double r_star_dagger = commutation_residual(t.adjoint(), dagger);
    const double r_dual = commutation_residual(t, dagger.adjoint());
    return settle("is_sd", {r_star_dagger <= tol.residual_tol, r_dual <= tol.residual_tol},
                  {{"star_dagger", r_star_dagger}, {"cauchy_dual", r_dual}});
}

RoutedVerdict is_hypo_ep(const Matrix& t, const ToleranceConfig& tol) {
    require_finite(t, "is_hypo_ep");
    require_square(t, "is_hypo_ep");
    const Matrix dagger = pinv_matrix(t, tol);
    const PsdResult psd = is_psd(commutator(dagger, t), tol);
    const InclusionResult incl = range_included(t, t.adjoint(), tol);
    const double r_resolvent = rel_residual(dagger, dagger * dagger * t);
    const double psd_defect =
        std::max(psd.hermiticity_residual, std::max(0.0, -psd.min_eigenvalue));
    return settle("is_hypo_ep",
                  {psd.psd, incl.included, r_resolvent <= tol.residual_tol},
                  {{"commutator_psd_defect", psd_defect},
                   {"range_inclusion", incl.residual},
                   {"dagger_square", r_resolvent}});
}

RoutedVerdict is_n_ep(const Matrix& t, int n, const ToleranceConfig& tol) {
    require_finite(t, "is_n_ep");
    require_square(t, "is_n_ep");
    require_order(n, "is_n_ep");
    const Matrix dagger = pinv_matrix(t, tol);
    const Matrix power = mat_power(t, n);
    const double r_comm = rel_residual(power * dagger, dagger * power);
    const InclusionResult fwd = range_included(power, t.adjoint(), tol);
    const InclusionResult adj = range_included(power.adjoint(), t, tol);
    return settle("is_n_ep",
                  {r_comm <= tol.residual_tol, fwd.included && adj.included},
                  {{"commutation", r_comm},
                   {"range_fwd", fwd.residual},
                   {"range_adj", adj.residual}});
}

RoutedVerdict is_n_hypo_ep(const Matrix& t, int n, const ToleranceConfig& tol) {
    require_finite(t, "is_n_hypo_ep");
    require_square(t, "is_n_hypo_ep");
    require_order(n, "is_n_hypo_ep");
    const Matrix power = mat_power(t, n);
    const InclusionResult incl = range_included(power, t.adjoint(), tol);
    const double r_absorb = rel_residual(power, pinv_matrix(t, tol) * mat_power(t, n + 1));
    return settle("is_n_hypo_ep", {incl.included, r_absorb <= tol.residual_tol},
                  {{"range_inclusion", incl.residual}, {"power_absorption", r_absorb}});
}

namespace {

// Rank of a power of T. The cutoff is taken relative to ||T||^k as well as to
// the power's own largest singular value: rounding noise in a numerically
// vanished power (norm ~ eps * ||T||^k) must not count as rank.
int power_rank(const Matrix& power, double scale_pow, const ToleranceConfig& tol) {
    Eigen::JacobiSVD<Matrix> svd(power);
    const auto& sv = svd.singularValues();
    const double sigma_max = sv.size() > 0 ? sv(0) : 0.0;
    const double cutoff = tol.rank_tol_factor * static_cast<double>(std::max(power.rows(), power.cols())) *
                          std::numeric_limits<double>::epsilon() * std::max(sigma_max, scale_pow);
    int rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    return rank;
}

int rank_chain_stabilization(const Matrix& t, const ToleranceConfig& tol) {
    require_finite(t, "ascent");
    require_square(t, "ascent");
    const int dim = static_cast<int>(t.rows());
    const double scale = std::max(1.0, t.norm());
    int prev_rank = dim;  // rank of T^0
    Matrix power = Matrix::Identity(dim, dim);
    double scale_pow = 1.0;
    for (int k = 1; k <= dim; ++k) {
        power = power * t;
        scale_pow *= scale;
        const int r = power_rank(power, scale_pow, tol);
        if (r == prev_rank) return k - 1;
        prev_rank = r;
    }
    return dim;  // strictly decreasing ranks stabilize by k = dim
}

}  // namespace

int ascent(const Matrix& t, const ToleranceConfig& tol) {
    return rank_chain_stabilization(t, tol);
}

int descent(const Matrix& t, const ToleranceConfig& tol) {
    return rank_chain_stabilization(t, tol);
}

Verdict is_regular(const Matrix& t, const ToleranceConfig& tol) {
    require_finite(t, "is_regular");
    require_square(t, "is_regular");
    const int dim = static_cast<int>(t.rows());
    const Matrix p_kernel = kernel_projector(t, tol).matrix;
    const double scale = std::max(1.0, t.norm());
    double worst = 0.0;
    Matrix power = Matrix::Identity(dim, dim);
    double scale_pow = 1.0;
    for (int k = 1; k <= dim; ++k) {
        power = power * t;
        scale_pow *= scale;
        // A numerically vanished power has empty range.
        const double floor = tol.rank_tol_factor * dim *
                             std::numeric_limits<double>::epsilon() * scale_pow;
        const Matrix p_range =
            power.norm() <= floor ? Matrix::Zero(dim, dim) : range_projector(power, tol).matrix;
        const Matrix miss = (Matrix::Identity(dim, dim) - p_range) * p_kernel;
        worst = std::max(worst, miss.norm());
    }
    return {worst <= tol.residual_tol, worst};
}

std::string to_string(const ClassLabel& label) {
    switch (label.kind) {
        case ClassKind::Normal: return "Normal";
        case ClassKind::NNormal: return "NNormal(" + std::to_string(label.n) + ")";
        case ClassKind::QuasiNormal: return "QuasiNormal";
        case ClassKind::Hyponormal: return "Hyponormal";
        case ClassKind::PartialIsometry: return "PartialIsometry";
        case ClassKind::EP: return "EP";
        case ClassKind::SD: return "SD";
        case ClassKind::HypoEP: return "HypoEP";
        case ClassKind::NEP: return "NEP(" + std::to_string(label.n) + ")";
        case ClassKind::NHypoEP: return "NHypoEP(" + std::to_string(label.n) + ")";
        case ClassKind::Regular: return "Regular";
    }
    return "?";
}

const Verdict& OperatorProfile::at(ClassKind kind, int n) const {
    const auto it = memberships.find(ClassLabel{kind, n});
    if (it == memberships.end())
        throw InvalidInput("OperatorProfile: no entry for " + to_string(ClassLabel{kind, n}));
    return it->second;
}

OperatorProfile classify(const Matrix& t, int n_max, const ToleranceConfig& tol) {
    require_finite(t, "classify");
    require_square(t, "classify");
    if (n_max < 1) throw InvalidInput("classify: n_max must be >= 1");

    OperatorProfile profile;
    profile.dim = static_cast<int>(t.rows());
    profile.n_max = n_max;
    profile.ascent = ascent(t, tol);
    profile.descent = descent(t, tol);

    auto& m = profile.memberships;
    m[{ClassKind::Normal, 0}] = is_normal(t, tol);
    m[{ClassKind::QuasiNormal, 0}] = is_quasi_normal(t, tol);
    m[{ClassKind::Hyponormal, 0}] = is_hyponormal(t, tol);
    m[{ClassKind::Regular, 0}] = is_regular(t, tol);

    const auto flatten = [](const RoutedVerdict& v) { return Verdict{v.holds, v.worst()}; };
    m[{ClassKind::PartialIsometry, 0}] = flatten(is_partial_isometry(t, tol));
    m[{ClassKind::EP, 0}] = flatten(is_ep(t, tol));
    m[{ClassKind::SD, 0}] = flatten(is_sd(t, tol));
    m[{ClassKind::HypoEP, 0}] = flatten(is_hypo_ep(t, tol));

    const Matrix adjoint = t.adjoint();
    std::vector<bool> nep(static_cast<std::size_t>(n_max) + 1, false);
    std::vector<bool> nhep(static_cast<std::size_t>(n_max) + 1, false);
    std::vector<bool> nhep_adj(static_cast<std::size_t>(n_max) + 1, false);
    for (int n = 1; n <= n_max; ++n) {
        m[{ClassKind::NNormal, n}] = is_n_normal(t, n, tol);
        const RoutedVerdict vep = is_n_ep(t, n, tol);
        const RoutedVerdict vhep = is_n_hypo_ep(t, n, tol);
        m[{ClassKind::NEP, n}] = flatten(vep);
        m[{ClassKind::NHypoEP, n}] = flatten(vhep);
        nep[static_cast<std::size_t>(n)] = vep.holds;
        nhep[static_cast<std::size_t>(n)] = vhep.holds;
        nhep_adj[static_cast<std::size_t>(n)] = is_n_hypo_ep(adjoint, n, tol).holds;
    }

    std::ostringstream violations;
    for (int n = 1; n < n_max; ++n) {
        if (nep[static_cast<std::size_t>(n)] && !nep[static_cast<std::size_t>(n) + 1])
            violations << "NEP(" << n << ") holds but NEP(" << n + 1 << ") does not; ";
        if (nhep[static_cast<std::size_t>(n)] && !nhep[static_cast<std::size_t>(n) + 1])
            violations << "NHypoEP(" << n << ") holds but NHypoEP(" << n + 1 << ") does not; ";
    }
    for (int n = 1; n <= n_max; ++n) {
        const bool both = nhep[static_cast<std::size_t>(n)] && nhep_adj[static_cast<std::size_t>(n)];
        if (nep[static_cast<std::size_t>(n)] != both)
            violations << "NEP(" << n << ")=" << nep[static_cast<std::size_t>(n)]
                       << " but NHypoEP(" << n << ") on T/T* gives " << both << "; ";
    }
    if (profile.holds(ClassKind::Normal) &&
        !(profile.holds(ClassKind::EP) && profile.holds(ClassKind::SD)))
        violations << "Normal holds but EP&SD do not; ";

    const std::string msg = violations.str();
    if (!msg.empty())
        throw ConsistencyError("classify: profile invariant violated: " + msg +
                               "(EP residual " + std::to_string(profile.at(ClassKind::EP).residual) +
                               ", Normal residual " +
                               std::to_string(profile.at(ClassKind::Normal).residual) + ")");
    return profile;
}

}  // namespace eplab
