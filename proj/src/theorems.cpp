#include "eplab/theorems.hpp"

#include "eplab/classes.hpp"
#include "eplab/matrix_io.hpp"
#include "eplab/operators.hpp"
#include "eplab/pinv.hpp"
#include "eplab/projectors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <iomanip>
#include <limits>
#include <sstream>

namespace eplab {

namespace {

using Residuals = std::vector<std::pair<std::string, double>>;

constexpr std::size_t kMaxFailureWitnesses = 8;

void put(Residuals& rv, const std::string& name, double value) { rv.emplace_back(name, value); }

bool within(double residual, const ToleranceConfig& tol) { return residual <= tol.residual_tol; }

// Definitional (single-route) membership tests used inside claim checkers.
// Route agreement between alternative characterizations is itself claim
// content, so each checker sticks to the route its statement names.

// T^k with a numerically vanished power snapped to exact zero, so that ranks,
// kernels, projectors and duals of higher powers do not inherit rounding junk.
Matrix clean_power(const Matrix& t, int k, const ToleranceConfig& tol) {
    Matrix power = mat_power(t, k);
    const double floor = tol.rank_tol_factor * static_cast<double>(t.rows()) *
                         std::numeric_limits<double>::epsilon() *
                         std::pow(std::max(1.0, t.norm()), k);
    if (power.norm() <= floor) power.setZero();
    return power;
}

double nep_residual(const Matrix& t, const Matrix& dagger, int n) {
    const Matrix power = mat_power(t, n);
    return rel_residual(power * dagger, dagger * power);
}

double ep_projector_gap(const Matrix& t, const ToleranceConfig& tol) {
    return rel_residual(range_projector(t, tol).matrix, range_projector(t.adjoint(), tol).matrix);
}

double normality_residual(const Matrix& t) {
    return rel_residual(t.adjoint() * t, t * t.adjoint());
}

double n_normality_residual(const Matrix& t, int n) {
    const Matrix power = mat_power(t, n);
    return rel_residual(power * t.adjoint(), t.adjoint() * power);
}

double sd_residual(const Matrix& t, const Matrix& dagger) {
    return rel_residual(t.adjoint() * dagger, dagger * t.adjoint());
}

double quasinormal_residual(const Matrix& t) {
    return rel_residual((t.adjoint() * t) * t, t * (t.adjoint() * t));
}

double commutator_residual(const Matrix& a, const Matrix& b) {
    return rel_residual(a * b, b * a);
}

Vector random_unit_vector(int dim, Rng& rng) {
    Vector x(dim);
    for (int i = 0; i < dim; ++i) x(i) = rng.cgauss();
    const double norm = x.norm();
    return norm > 0 ? Vector(x / norm) : Vector(Vector::Unit(dim, 0));
}

// -- Claim checkers ------------------------------------------------------------

TrialOutcome eval_mp_identities(const TrialInput& in) {
    TrialOutcome out;
    const auto& t = in.t;
    const PseudoInverseResult pr = pinv(t, in.tol);
    const Matrix& x = pr.pinv;

    const auto mp = mp_residuals(t, x);
    put(out.residuals, "mp_txt", mp[0]);
    put(out.residuals, "mp_xtx", mp[1]);
    put(out.residuals, "mp_herm_xt", mp[2]);
    put(out.residuals, "mp_herm_tx", mp[3]);
    for (double r : mp) out.pass = out.pass && within(r, in.tol);

    const Matrix tx = t * x;
    const Matrix xt = x * t;
    const double r_range = rel_residual(tx, range_projector(t, in.tol).matrix);
    const double r_corange = rel_residual(xt, range_projector(x, in.tol).matrix);
    put(out.residuals, "tx_is_range_proj", r_range);
    put(out.residuals, "xt_is_pinv_range_proj", r_corange);
    out.pass = out.pass && within(r_range, in.tol) && within(r_corange, in.tol);

    const double r_row_range = rel_residual(range_projector(x, in.tol).matrix,
                                            range_projector(t.adjoint(), in.tol).matrix);
    const double r_kernels = rel_residual(kernel_projector(x, in.tol).matrix,
                                          kernel_projector(t.adjoint(), in.tol).matrix);
    put(out.residuals, "pinv_range_eq_adjoint_range", r_row_range);
    put(out.residuals, "pinv_kernel_eq_adjoint_kernel", r_kernels);
    out.pass = out.pass && within(r_row_range, in.tol) && within(r_kernels, in.tol);

    const double r_star1 = rel_residual(t.adjoint() * t * x, t.adjoint());
    const double r_star2 = rel_residual(x * t * t.adjoint(), t.adjoint());
    put(out.residuals, "star_t_tx", r_star1);
    put(out.residuals, "xt_t_star", r_star2);
    out.pass = out.pass && within(r_star1, in.tol) && within(r_star2, in.tol);

    const double r_triple = (t * t.adjoint() * t - t).norm() / std::max(1.0, t.norm());
    const double r_adjoint = rel_residual(x, t.adjoint());
    put(out.residuals, "partial_isometry_triple", r_triple);
    put(out.residuals, "pinv_vs_adjoint", r_adjoint);
    out.pass = out.pass && (within(r_triple, in.tol) == within(r_adjoint, in.tol));

    const double scale = std::max(1.0, x.norm());
    const double d_coarse = (regularized_pinv(t, {1e-4}) - x).norm() / scale;
    const double d_fine = (regularized_pinv(t, {1e-4, 1e-7}) - x).norm() / scale;
    put(out.residuals, "limit_error_coarse", d_coarse);
    put(out.residuals, "limit_error_fine", d_fine);
    out.pass = out.pass && d_fine <= d_coarse + 1e-10;
    return out;
}

TrialOutcome eval_sd_unitary_invariance(const TrialInput& in) {
    TrialOutcome out;
    if (!in.partner) throw InvalidInput("sd_unitary_invariance: partner unitary required");
    const Matrix& u = *in.partner;
    const Matrix conjugated = u.adjoint() * in.t * u;
    const double r_t = sd_residual(in.t, pinv_matrix(in.t, in.tol));
    const double r_s = sd_residual(conjugated, pinv_matrix(conjugated, in.tol));
    put(out.residuals, "sd_original", r_t);
    put(out.residuals, "sd_conjugated", r_s);
    out.pass = within(r_t, in.tol) == within(r_s, in.tol);
    return out;
}

TrialOutcome eval_normal_iff_ep_sd(const TrialInput& in) {
    TrialOutcome out;
    const Matrix dagger = pinv_matrix(in.t, in.tol);
    const double r_normal = normality_residual(in.t);
    const double r_ep = ep_projector_gap(in.t, in.tol);
    const double r_sd = sd_residual(in.t, dagger);
    put(out.residuals, "normal", r_normal);
    put(out.residuals, "ep", r_ep);
    put(out.residuals, "sd", r_sd);
    out.pass = within(r_normal, in.tol) == (within(r_ep, in.tol) && within(r_sd, in.tol));
    return out;
}

TrialOutcome eval_quasinormal_implies_sd(const TrialInput& in) {
    TrialOutcome out;
    const double r_qn = quasinormal_residual(in.t);
    out.hypothesis = within(r_qn, in.tol);
    const double r_sd = sd_residual(in.t, pinv_matrix(in.t, in.tol));
    put(out.residuals, "quasinormal", r_qn);
    put(out.residuals, "sd", r_sd);
    out.pass = !out.hypothesis || within(r_sd, in.tol);
    return out;
}

TrialOutcome eval_quasinormal_powers_sd(const TrialInput& in) {
    TrialOutcome out;
    const double r_qn = quasinormal_residual(in.t);
    out.hypothesis = within(r_qn, in.tol);
    put(out.residuals, "quasinormal", r_qn);
    if (out.hypothesis) {
        const Matrix power = mat_power(in.t, in.n);
        const double r_sd = sd_residual(power, pinv_matrix(power, in.tol));
        put(out.residuals, "sd_of_power", r_sd);
        out.pass = within(r_sd, in.tol);
    }
    return out;
}

TrialOutcome eval_reverse_order_law(const TrialInput& in) {
    TrialOutcome out;
    if (!in.partner) throw InvalidInput("reverse_order_law: partner operator required");
    const Matrix& s = *in.partner;
    const Matrix& t = in.t;
    const Matrix product = s * t;
    const double r_law =
        rel_residual(pinv_matrix(product, in.tol), pinv_matrix(t, in.tol) * pinv_matrix(s, in.tol));
    const InclusionResult c1 = kernel_invariant(s.adjoint() * s, t.adjoint(), in.tol);
    const InclusionResult c2 = kernel_invariant(t * t.adjoint(), s, in.tol);
    put(out.residuals, "reverse_order", r_law);
    put(out.residuals, "kernel_invariance_star", c1.residual);
    put(out.residuals, "kernel_invariance_direct", c2.residual);
    out.pass = within(r_law, in.tol) == (c1.included && c2.included);
    return out;
}

TrialOutcome eval_omega_power(const TrialInput& in) {
    TrialOutcome out;
    const Matrix& t = in.t;
    double worst_hyp = 0.0;
    for (int i = 1; i <= in.n - 1; ++i) {
        const Matrix power = clean_power(t, i, in.tol);
        const InclusionResult h1 = kernel_invariant(t.adjoint() * t, power.adjoint(), in.tol);
        const InclusionResult h2 = kernel_invariant(t * t.adjoint(), power, in.tol);
        worst_hyp = std::max({worst_hyp, h1.residual, h2.residual});
        out.hypothesis = out.hypothesis && h1.included && h2.included;
    }
    put(out.residuals, "kernel_invariance", worst_hyp);
    if (out.hypothesis) {
        const Matrix dual = cauchy_dual(t, in.tol);
        double worst = 0.0;
        for (int i = 1; i <= in.n; ++i)
            worst = std::max(worst,
                             rel_residual(cauchy_dual(clean_power(t, i, in.tol), in.tol),
                                          mat_power(dual, i)));
        put(out.residuals, "dual_of_power", worst);
        out.pass = within(worst, in.tol);
    }
    return out;
}

TrialOutcome eval_lemma_ranges(const TrialInput& in) {
    TrialOutcome out;
    const Matrix power = clean_power(in.t, in.n, in.tol);
    const Matrix dagger = pinv_matrix(in.t, in.tol);
    const Matrix p_with_dagger = range_projector(power * dagger, in.tol).matrix;
    const Matrix p_plain = range_projector(power, in.tol).matrix;
    const Matrix p_with_star = range_projector(power * in.t.adjoint(), in.tol).matrix;
    const double g1 = rel_residual(p_with_dagger, p_plain);
    const double g2 = rel_residual(p_plain, p_with_star);
    put(out.residuals, "range_power_dagger", g1);
    put(out.residuals, "range_power_star", g2);
    out.pass = within(g1, in.tol) && within(g2, in.tol);
    return out;
}

TrialOutcome eval_equiv_ep(const TrialInput& in) {
    TrialOutcome out;
    const Matrix dagger = pinv_matrix(in.t, in.tol);
    const Matrix power = mat_power(in.t, in.n);
    const double r_def = rel_residual(power * dagger, dagger * power);
    const InclusionResult fwd = range_included(power, in.t.adjoint(), in.tol);
    const InclusionResult adj = range_included(power.adjoint(), in.t, in.tol);
    put(out.residuals, "commutation", r_def);
    put(out.residuals, "range_fwd", fwd.residual);
    put(out.residuals, "range_adj", adj.residual);
    out.pass = within(r_def, in.tol) == (fwd.included && adj.included);
    return out;
}

TrialOutcome eval_nep_chain(const TrialInput& in) {
    TrialOutcome out;
    const Matrix dagger = pinv_matrix(in.t, in.tol);
    const double r_n = nep_residual(in.t, dagger, in.n);
    out.hypothesis = within(r_n, in.tol);
    const double r_next = nep_residual(in.t, dagger, in.n + 1);
    put(out.residuals, "nep_n", r_n);
    put(out.residuals, "nep_n_plus_1", r_next);
    out.pass = !out.hypothesis || within(r_next, in.tol);
    return out;
}

TrialOutcome eval_tn_ep_implies_nep(const TrialInput& in) {
    TrialOutcome out;
    const Matrix power = clean_power(in.t, in.n, in.tol);
    const double r_power_ep = ep_projector_gap(power, in.tol);
    out.hypothesis = within(r_power_ep, in.tol);
    const double r_nep = nep_residual(in.t, pinv_matrix(in.t, in.tol), in.n);
    put(out.residuals, "power_ep", r_power_ep);
    put(out.residuals, "nep", r_nep);
    out.pass = !out.hypothesis || within(r_nep, in.tol);
    return out;
}

TrialOutcome eval_sd_nep_iff_tnep_iff_nnormal(const TrialInput& in) {
    TrialOutcome out;
    const Matrix dagger = pinv_matrix(in.t, in.tol);
    const double r_sd = sd_residual(in.t, dagger);
    out.hypothesis = within(r_sd, in.tol);
    put(out.residuals, "sd", r_sd);
    if (out.hypothesis) {
        const double r_nep = nep_residual(in.t, dagger, in.n);
        const double r_power_ep = ep_projector_gap(clean_power(in.t, in.n, in.tol), in.tol);
        const double r_nnormal = n_normality_residual(in.t, in.n);
        put(out.residuals, "nep", r_nep);
        put(out.residuals, "power_ep", r_power_ep);
        put(out.residuals, "n_normal", r_nnormal);
        const bool b1 = within(r_nep, in.tol);
        const bool b2 = within(r_power_ep, in.tol);
        const bool b3 = within(r_nnormal, in.tol);
        out.pass = (b1 == b2) && (b2 == b3);
    }
    return out;
}

TrialOutcome eval_equiv_ep2(const TrialInput& in) {
    TrialOutcome out;
    const Matrix& t = in.t;
    const Matrix dagger = pinv_matrix(t, in.tol);
    const Matrix power = mat_power(t, in.n);
    const Matrix power_next = mat_power(t, in.n + 1);

    const double r1 = rel_residual(power * dagger, dagger * power);
    const double r2 = std::max(rel_residual(power, dagger * power_next),
                               rel_residual(power, power_next * dagger));
    const Matrix left = (dagger * power).adjoint();
    const Matrix right = power * dagger;
    const double r3 = std::max(rel_residual(t * dagger * left, left),
                               rel_residual(dagger * t * right, right));
    put(out.residuals, "commutation", r1);
    put(out.residuals, "power_absorption", r2);
    put(out.residuals, "projector_absorption", r3);
    const bool b1 = within(r1, in.tol), b2 = within(r2, in.tol), b3 = within(r3, in.tol);
    out.pass = (b1 == b2) && (b2 == b3);
    return out;
}

TrialOutcome eval_ep_power_ranges(const TrialInput& in) {
    TrialOutcome out;
    const Matrix& t = in.t;
    const Matrix dagger = pinv_matrix(t, in.tol);
    const double r_ep = ep_projector_gap(t, in.tol);
    const double r_nep = nep_residual(t, dagger, in.n);
    const bool ep_case = within(r_ep, in.tol) && in.n >= 2;  // R(A^{n-1}) clause needs n >= 2
    const bool nep_case = within(r_nep, in.tol);
    out.hypothesis = ep_case || nep_case;
    put(out.residuals, "ep", r_ep);
    put(out.residuals, "nep", r_nep);

    if (ep_case) {
        const Matrix power = clean_power(t, in.n, in.tol);
        const Matrix p1 = range_projector(power * dagger, in.tol).matrix;
        const Matrix p2 = range_projector(power, in.tol).matrix;
        const Matrix p3 = range_projector(clean_power(t, in.n - 1, in.tol), in.tol).matrix;
        const double g = std::max(rel_residual(p1, p2), rel_residual(p2, p3));
        put(out.residuals, "ep_range_chain", g);
        out.pass = out.pass && within(g, in.tol);
    }
    if (nep_case) {
        const Matrix p_base = range_projector(clean_power(t, in.n, in.tol), in.tol).matrix;
        double worst = 0.0;
        for (int k = 0; k <= 2; ++k) {
            const Matrix high = clean_power(t, in.n + k, in.tol);
            worst = std::max(worst, rel_residual(range_projector(high * dagger, in.tol).matrix, p_base));
            worst = std::max(worst, rel_residual(range_projector(high, in.tol).matrix, p_base));
        }
        put(out.residuals, "nep_range_chain", worst);
        out.pass = out.pass && within(worst, in.tol);
    }
    return out;
}

TrialOutcome eval_ascent_descent(const TrialInput& in) {
    TrialOutcome out;
    const double r_nep = nep_residual(in.t, pinv_matrix(in.t, in.tol), in.n);
    out.hypothesis = within(r_nep, in.tol);
    put(out.residuals, "nep", r_nep);
    if (out.hypothesis) {
        const int asc = ascent(in.t, in.tol);
        const int dsc = descent(in.t, in.tol);
        put(out.residuals, "ascent_excess", std::max(0, asc - in.n));
        put(out.residuals, "descent_excess", std::max(0, dsc - in.n));
        out.pass = asc <= in.n && dsc <= in.n;
    }
    return out;
}

TrialOutcome eval_regular_invertible(const TrialInput& in) {
    TrialOutcome out;
    const PseudoInverseResult pr = pinv(in.t, in.tol);
    const double r_nep = nep_residual(in.t, pr.pinv, in.n);
    const Verdict regular = is_regular(in.t, in.tol);
    out.hypothesis = within(r_nep, in.tol) && regular.holds;
    put(out.residuals, "nep", r_nep);
    put(out.residuals, "regularity", regular.residual);
    if (out.hypothesis) {
        const int dim = static_cast<int>(in.t.rows());
        put(out.residuals, "rank_deficiency", dim - pr.numerical_rank);
        out.pass = pr.numerical_rank == dim;
    }
    return out;
}

TrialOutcome eval_nnormal_implies_nep(const TrialInput& in) {
    TrialOutcome out;
    const double r_nnormal = n_normality_residual(in.t, in.n);
    out.hypothesis = within(r_nnormal, in.tol);
    const double r_nep = nep_residual(in.t, pinv_matrix(in.t, in.tol), in.n);
    put(out.residuals, "n_normal", r_nnormal);
    put(out.residuals, "nep", r_nep);
    out.pass = !out.hypothesis || within(r_nep, in.tol);
    return out;
}

TrialOutcome eval_positivity(const TrialInput& in) {
    TrialOutcome out;
    const Matrix dagger = pinv_matrix(in.t, in.tol);
    const double r_nep = nep_residual(in.t, dagger, in.n);
    out.hypothesis = within(r_nep, in.tol);
    put(out.residuals, "nep", r_nep);
    if (out.hypothesis) {
        const PsdResult even = is_psd(mat_power(in.t, 2 * in.n), in.tol);
        const PsdResult mixed = is_psd(mat_power(in.t, 2 * in.n - 1) * dagger.adjoint(), in.tol);
        put(out.residuals, "even_power_min_eig", even.min_eigenvalue);
        put(out.residuals, "mixed_power_min_eig", mixed.min_eigenvalue);
        out.pass = even.psd == mixed.psd;
    }
    return out;
}

TrialOutcome eval_hep_equivalences(const TrialInput& in) {
    TrialOutcome out;
    const Matrix& t = in.t;
    const Matrix dagger = pinv_matrix(t, in.tol);

    const InclusionResult incl = range_included(t, t.adjoint(), in.tol);
    const double r2 = rel_residual(dagger, dagger * dagger * t);
    double r3 = 0.0;
    for (int n = 1; n <= 4; ++n)
        r3 = std::max(r3, rel_residual(dagger * t, mat_power(dagger, n) * mat_power(t, n)));
    const double c = douglas_constant(t, t.adjoint(), in.tol);
    const bool b4 = std::isfinite(c);

    put(out.residuals, "range_inclusion", incl.residual);
    put(out.residuals, "dagger_square", r2);
    put(out.residuals, "dagger_power_products", r3);
    put(out.residuals, "douglas_constant", b4 ? c : -1.0);

    double violation = 0.0;
    if (b4) {
        Rng rng(in.seed);
        for (int k = 0; k < 20; ++k) {
            const Vector x = random_unit_vector(static_cast<int>(t.cols()), rng);
            const double lhs = (t.adjoint() * x).norm();
            const double rhs = c * (t * x).norm();
            violation = std::max(violation, (lhs - rhs) / std::max(1.0, lhs));
        }
        put(out.residuals, "douglas_violation", violation);
    }

    const bool b1 = incl.included, b2 = within(r2, in.tol), b3 = within(r3, in.tol);
    out.pass = (b1 == b2) && (b2 == b3) && (b3 == b4) && violation <= 1e-6;
    return out;
}

TrialOutcome eval_hep_comm_iff_ep(const TrialInput& in) {
    TrialOutcome out;
    const Matrix& t = in.t;
    const InclusionResult hep = range_included(t, t.adjoint(), in.tol);
    out.hypothesis = hep.included;
    put(out.residuals, "hep", hep.residual);
    if (out.hypothesis) {
        const Matrix projector = t * pinv_matrix(t, in.tol);
        const double r_comm = commutator_residual(projector, t + t.adjoint());
        const double r_ep = ep_projector_gap(t, in.tol);
        put(out.residuals, "commutator", r_comm);
        put(out.residuals, "ep", r_ep);
        out.pass = within(r_comm, in.tol) == within(r_ep, in.tol);
    }
    return out;
}

TrialOutcome eval_comm_implies_hep(const TrialInput& in) {
    TrialOutcome out;
    const Matrix& t = in.t;
    const Matrix projector = pinv_matrix(t, in.tol) * t;
    const double r_comm = commutator_residual(projector, t + t.adjoint());
    out.hypothesis = within(r_comm, in.tol);
    const InclusionResult hep = range_included(t, t.adjoint(), in.tol);
    put(out.residuals, "commutator", r_comm);
    put(out.residuals, "hep", hep.residual);
    out.pass = !out.hypothesis || hep.included;
    return out;
}

TrialOutcome eval_caract_nhep(const TrialInput& in) {
    TrialOutcome out;
    const Matrix& t = in.t;
    const Matrix dagger = pinv_matrix(t, in.tol);
    const Matrix power = mat_power(t, in.n);
    const Matrix power_next = mat_power(t, in.n + 1);
    const Matrix power_star = power.adjoint();

    const InclusionResult incl = range_included(power, t.adjoint(), in.tol);
    const double r2 = rel_residual(power, dagger * power_next);
    const double r3 = rel_residual(power * dagger, dagger * power_next * dagger);
    const double r4 = rel_residual(power_star, power_star * dagger * t);
    const double c_vs_t = douglas_constant(power, t.adjoint(), in.tol);
    const double c_vs_dual = douglas_constant(power, dagger, in.tol);

    put(out.residuals, "range_inclusion", incl.residual);
    put(out.residuals, "power_absorption", r2);
    put(out.residuals, "dagger_sandwich", r3);
    put(out.residuals, "adjoint_absorption", r4);
    put(out.residuals, "c_vs_t", std::isfinite(c_vs_t) ? c_vs_t : -1.0);
    put(out.residuals, "c_vs_dual", std::isfinite(c_vs_dual) ? c_vs_dual : -1.0);

    const bool b1 = incl.included;
    const bool b2 = within(r2, in.tol);
    const bool b3 = within(r3, in.tol);
    const bool b4 = within(r4, in.tol);
    const bool b5 = std::isfinite(c_vs_t);
    const bool b6 = std::isfinite(c_vs_dual);
    out.pass = (b1 == b2) && (b2 == b3) && (b3 == b4) && (b4 == b5) && (b5 == b6);
    return out;
}

TrialOutcome eval_tnhep_implies_nhep(const TrialInput& in) {
    TrialOutcome out;
    const Matrix power = mat_power(in.t, in.n);
    const InclusionResult power_hep = range_included(power, power.adjoint(), in.tol);
    out.hypothesis = power_hep.included;
    const InclusionResult nhep = range_included(power, in.t.adjoint(), in.tol);
    put(out.residuals, "power_hep", power_hep.residual);
    put(out.residuals, "nhep", nhep.residual);
    out.pass = !out.hypothesis || nhep.included;
    return out;
}

TrialOutcome eval_comm_implies_nhep(const TrialInput& in) {
    TrialOutcome out;
    const Matrix& t = in.t;
    const Matrix dagger = pinv_matrix(t, in.tol);
    const Matrix projector = dagger * t;
    const Matrix power = mat_power(t, in.n);
    const double r_c1 = commutator_residual(projector, power + dagger);
    const double r_c2 = commutator_residual(projector, power + t.adjoint());
    out.hypothesis = within(r_c1, in.tol) || within(r_c2, in.tol);
    const InclusionResult nhep = range_included(power, t.adjoint(), in.tol);
    put(out.residuals, "commutator_dagger", r_c1);
    put(out.residuals, "commutator_star", r_c2);
    put(out.residuals, "nhep", nhep.residual);
    out.pass = !out.hypothesis || nhep.included;
    return out;
}

TrialOutcome eval_nhep_comm_implies_nep(const TrialInput& in) {
    TrialOutcome out;
    const Matrix& t = in.t;
    const Matrix dagger = pinv_matrix(t, in.tol);
    const Matrix power = mat_power(t, in.n);
    const InclusionResult nhep = range_included(power, t.adjoint(), in.tol);
    const Matrix projector = t * dagger;
    const double r_c1 = commutator_residual(projector, power + dagger);
    const double r_c2 = commutator_residual(projector, power + t.adjoint());
    const double r_c3 = commutator_residual(t, power * dagger);
    const bool any_comm = within(r_c1, in.tol) || within(r_c2, in.tol) || within(r_c3, in.tol);
    out.hypothesis = nhep.included && any_comm;
    const double r_nep = nep_residual(t, dagger, in.n);
    put(out.residuals, "nhep", nhep.residual);
    put(out.residuals, "commutator_dagger", r_c1);
    put(out.residuals, "commutator_star", r_c2);
    put(out.residuals, "commutator_power", r_c3);
    put(out.residuals, "nep", r_nep);
    out.pass = !out.hypothesis || within(r_nep, in.tol);
    return out;
}

// -- Registry ------------------------------------------------------------------

struct ClaimDef {
    ClaimInfo info;
    std::vector<std::string> families;
    std::vector<std::string> partner_families;
    double condition_cap = 0.0;  // 0: use the ensemble cap
    TrialOutcome (*eval)(const TrialInput&) = nullptr;
};

const std::vector<ClaimDef>& claim_defs() {
    static const std::vector<ClaimDef> defs = {
        {{"mp_identities",
          "Defining equations and basic identities of the pseudoinverse",
          "TXT=T, XTX=X, (XT)*=XT, (TX)*=TX; TX=P_R(T); XT=P_R(X); R(X)=R(T*), N(X)=N(T*); "
          "T*TX=XTT*=T*; X=T* iff TT*T=T; (T*T+sI)^{-1}T* -> X",
          false, false},
         {"random_general", "random_projection", "random_partial_isometry", "random_normal",
          "nonnormal_ep", "nilpotent_nep", "rank_one", "anchored_shift"},
         {},
         0.0,
         &eval_mp_identities},
        {{"sd_unitary_invariance",
          "Star-dagger commutation is stable under unitary conjugation",
          "[T*,Tdag]=0 iff [(U*TU)*,(U*TU)dag]=0",
          false, true},
         {"random_normal", "rank_one", "const_shift", "random_partial_isometry", "random_general",
          "nonnormal_ep"},
         {"random_unitary"},
         100.0,
         &eval_sd_unitary_invariance},
        {{"normal_iff_EP_SD",
          "Normality is exactly EP together with SD",
          "[T*,T]=0 iff (R(T)=R(T*) and [T*,Tdag]=0)",
          false, false},
         {"random_normal", "singular_normal", "random_unitary", "random_projection", "nonnormal_ep",
          "rank_one", "random_general"},
         {},
         100.0,
         &eval_normal_iff_ep_sd},
        {{"quasinormal_implies_SD",
          "Commuting with T*T forces star-dagger commutation",
          "[T*T,T]=0 implies [T*,Tdag]=0",
          false, false},
         {"random_normal", "singular_normal", "random_projection", "zero", "random_general",
          "rank_one"},
         {},
         100.0,
         &eval_quasinormal_implies_sd},
        {{"quasinormal_powers_SD",
          "Powers of quasi-normal operators stay star-dagger",
          "[T*T,T]=0 implies [(T^n)*,(T^n)dag]=0",
          true, false},
         {"random_normal", "singular_normal", "random_projection", "zero", "random_general",
          "rank_one"},
         {},
         100.0,
         &eval_quasinormal_powers_sd},
        {{"reverse_order_law",
          "Reverse-order rule for the pseudoinverse of a product",
          "(ST)dag=Tdag Sdag iff S*S(N(T*)) in N(T*) and TT*(N(S)) in N(S)",
          false, true},
         {"random_general", "random_normal", "random_projection", "random_unitary"},
         {"random_unitary", "random_general", "random_projection"},
         100.0,
         &eval_reverse_order_law},
        {{"omega_power",
          "Cauchy dual commutes with powers under kernel invariance",
          "T*T(N(T*^i)) in N(T*^i), TT*(N(T^i)) in N(T^i) for i<n implies w(T^i)=w(T)^i for i<=n",
          true, false},
         {"nonnormal_ep", "random_projection", "random_partial_isometry", "nilpotent_nep",
          "random_normal", "const_shift", "random_general"},
         {},
         30.0,
         &eval_omega_power},
        {{"lemma_ranges",
          "Range of a power survives multiplication by Adag or A*",
          "R(A^n Adag)=R(A^n)=R(A^n A*)",
          true, false},
         {"random_general", "random_normal", "nilpotent_nep", "rank_one", "anchored_shift",
          "random_projection"},
         {},
         30.0,
         &eval_lemma_ranges},
        {{"equivEP",
          "Power-commutation and two range inclusions are the same n-EP test",
          "T^n Tdag=Tdag T^n iff R(T^n) in R(T*) and R(T*^n) in R(T)",
          true, false},
         {"nilpotent_nep", "anchored_shift", "involution_2x2", "nonnormal_ep", "nhep_asym",
          "rank_one", "random_general", "rank_one_orthonormal"},
         {},
         100.0,
         &eval_equiv_ep},
        {{"nEP_chain",
          "The n-EP classes are nested upward",
          "T^n Tdag=Tdag T^n implies T^{n+1} Tdag=Tdag T^{n+1}",
          true, false},
         {"nilpotent_nep", "nonnormal_ep", "involution_2x2", "anchored_shift", "random_normal",
          "random_general"},
         {},
         100.0,
         &eval_nep_chain},
        {{"Tn_EP_implies_nEP",
          "EP-ness of the n-th power puts T in n-EP",
          "R(T^n)=R(T*^n) implies T^n Tdag=Tdag T^n",
          true, false},
         {"nilpotent_nep", "anchored_shift", "nonnormal_ep", "random_normal", "random_general",
          "rank_one"},
         {},
         100.0,
         &eval_tn_ep_implies_nep},
        {{"SD_nEP_iff_TnEP_iff_nNormal",
          "Under SD, n-EP, EP of the power and n-normality coincide",
          "[T*,Tdag]=0 implies (T^n Tdag=Tdag T^n iff R(T^n)=R(T*^n) iff T^n T*=T* T^n)",
          true, false},
         {"random_normal", "singular_normal", "rank_one", "rank_one_orthonormal", "const_shift",
          "random_partial_isometry", "nonnormal_ep", "random_general"},
         {},
         100.0,
         &eval_sd_nep_iff_tnep_iff_nnormal},
        {{"equivEP2",
          "Three algebraic characterizations of n-EP agree",
          "T^n Tdag=Tdag T^n iff T^n=Tdag T^{n+1}=T^{n+1} Tdag iff "
          "T Tdag (Tdag T^n)*=(Tdag T^n)* and Tdag T (T^n Tdag)=T^n Tdag",
          true, false},
         {"nilpotent_nep", "nonnormal_ep", "anchored_shift", "involution_2x2", "nhep_asym",
          "random_general", "random_normal"},
         {},
         100.0,
         &eval_equiv_ep2},
        {{"EP_power_ranges",
          "Range chains collapse for EP and n-EP operators",
          "EP: R(A^n Adag)=R(A^n)=R(A^{n-1}) (n>=2); n-EP: R(A^{n+k} Adag)=R(A^n)=R(A^{n+k})",
          true, false},
         {"nonnormal_ep", "involution_2x2", "random_normal", "singular_normal", "random_projection",
          "nilpotent_nep", "anchored_shift"},
         {},
         30.0,
         &eval_ep_power_ranges},
        {{"ascent_descent",
          "n-EP bounds the ascent and descent by n",
          "T^n Tdag=Tdag T^n implies asc(T)<=n and dsc(T)<=n",
          true, false},
         {"nilpotent_nep", "anchored_shift", "nonnormal_ep", "random_normal", "zero",
          "random_general"},
         {},
         100.0,
         &eval_ascent_descent},
        {{"regular_invertible",
          "A regular n-EP operator is invertible",
          "N(T) in R(T^k) for all k and T^n Tdag=Tdag T^n implies rank(T)=dim",
          true, false},
         {"random_general", "random_unitary", "involution_2x2", "random_normal", "nonnormal_ep",
          "nilpotent_nep"},
         {},
         100.0,
         &eval_regular_invertible},
        {{"nNormal_implies_nEP",
          "n-normal operators are n-EP",
          "T^n T*=T* T^n implies T^n Tdag=Tdag T^n",
          true, false},
         {"random_normal", "singular_normal", "involution_2x2", "nilpotent_nep",
          "rank_one_orthonormal", "random_general"},
         {},
         100.0,
         &eval_nnormal_implies_nep},
        {{"positivity",
          "Positivity transfers between T^{2n} and T^{2n-1} w(T)",
          "n-EP: T^{2n}>=0 iff T^{2n-1} w(T)>=0",
          true, false},
         {"random_projection", "random_normal", "singular_normal", "nilpotent_nep", "nonnormal_ep",
          "involution_2x2"},
         {},
         100.0,
         &eval_positivity},
        {{"HEP_equivalences",
          "Four characterizations of hypo-EP agree",
          "R(T) in R(T*) iff Tdag=Tdag^2 T iff Tdag T=Tdag^n T^n (n<=4) iff "
          "||T*x||<=c||Tx|| with minimal c=||(T*)dag T||",
          false, false},
         {"nonnormal_ep", "random_general", "rank_one", "nilpotent_nep", "random_projection",
          "nhep_asym"},
         {},
         30.0,
         &eval_hep_equivalences},
        {{"HEP_comm_iff_EP",
          "For hypo-EP operators the projector commutator detects EP",
          "R(T) in R(T*): [TTdag,T+T*]=0 iff R(T)=R(T*)",
          false, false},
         {"nonnormal_ep", "random_normal", "random_projection", "involution_2x2", "rank_one",
          "random_general"},
         {},
         100.0,
         &eval_hep_comm_iff_ep},
        {{"comm_implies_HEP",
          "The dual projector commutator forces hypo-EP",
          "[Tdag T,T+T*]=0 implies R(T) in R(T*)",
          false, false},
         {"nonnormal_ep", "random_normal", "random_projection", "involution_2x2", "rank_one",
          "random_general"},
         {},
         100.0,
         &eval_comm_implies_hep},
        {{"caractnHEP",
          "Six characterizations of n-hypo-EP agree",
          "R(T^n) in R(T*) iff T^n=Tdag T^{n+1} iff T^n Tdag=Tdag T^{n+1} Tdag iff "
          "T*^n=T*^n Tdag T iff ||T*^n x||<=c1||Tx|| iff ||T*^n x||<=c2||w(T)x||",
          true, false},
         {"nhep_asym", "nilpotent_nep", "anchored_shift", "nonnormal_ep", "random_general",
          "rank_one", "random_projection"},
         {},
         100.0,
         &eval_caract_nhep},
        {{"TnHEP_implies_nHEP",
          "hypo-EP-ness of the n-th power puts T in n-hypo-EP",
          "R(T^n) in R(T*^n) implies R(T^n) in R(T*)",
          true, false},
         {"nilpotent_nep", "anchored_shift", "nonnormal_ep", "random_normal", "nhep_asym",
          "random_general"},
         {},
         100.0,
         &eval_tnhep_implies_nhep},
        {{"comm_implies_nHEP",
          "Either dual-projector commutator forces n-hypo-EP",
          "[Tdag T,T^n+Tdag]=0 or [Tdag T,T^n+T*]=0 implies R(T^n) in R(T*)",
          true, false},
         {"nonnormal_ep", "random_normal", "random_projection", "involution_2x2", "nilpotent_nep",
          "random_general"},
         {},
         100.0,
         &eval_comm_implies_nhep},
        {{"nHEP_comm_implies_nEP",
          "n-hypo-EP plus any of three commutator conditions gives n-EP",
          "R(T^n) in R(T*) and ([TTdag,T^n+Tdag]=0 or [TTdag,T^n+T*]=0 or [T,T^n Tdag]=0) "
          "implies T^n Tdag=Tdag T^n",
          true, false},
         {"nonnormal_ep", "random_normal", "involution_2x2", "random_projection", "nilpotent_nep",
          "nhep_asym", "random_general"},
         {},
         100.0,
         &eval_nhep_comm_implies_nep},
    };
    return defs;
}

DrawSpec instantiate(const std::string& family, int dim, std::uint64_t seed, double claim_cap,
                     const EnsembleConfig& config) {
    DrawSpec spec;
    spec.family = family;
    spec.dim = dim;
    spec.seed = seed;
    const double cap = claim_cap > 0 ? std::min(claim_cap, config.condition_cap) : config.condition_cap;
    if (family == "anchored_shift") {
        spec.dim = std::max(3, dim % 2 == 0 ? dim + 1 : dim);
        spec.alpha = 2.0;
    } else if (family == "const_shift") {
        spec.alpha = 1.5;
    } else if (family == "nilpotent_nep") {
        const int hi = std::min(dim, 4);
        spec.n = hi <= 2 ? 2 : 2 + static_cast<int>((seed >> 12) % static_cast<std::uint64_t>(hi - 1));
    } else if (family == "random_projection" || family == "random_partial_isometry") {
        spec.rank = 1 + static_cast<int>((seed >> 8) % static_cast<std::uint64_t>(dim));
    } else if (family == "random_general") {
        spec.rank = dim - static_cast<int>((seed >> 16) % 2);
        spec.condition_cap = cap;
    } else if (family == "rank_one_orthonormal" || family == "singular_normal") {
        spec.dim = std::max(dim, 2);
    } else if (family == "nhep_asym") {
        spec.dim = std::max(dim, 3);
    }
    return spec;
}

}  // namespace

double TrialOutcome::worst() const {
    double w = 0.0;
    for (const auto& [name, value] : residuals) w = std::max(w, std::abs(value));
    return w;
}

bool TheoremReport::all_passed() const {
    for (const auto& [id, stats] : claims)
        if (stats.passes != stats.hypothesis_hits) return false;
    return true;
}

const std::vector<ClaimInfo>& claim_registry() {
    static const std::vector<ClaimInfo> infos = [] {
        std::vector<ClaimInfo> v;
        for (const auto& def : claim_defs()) v.push_back(def.info);
        return v;
    }();
    return infos;
}

TrialOutcome evaluate_claim(const std::string& id, const TrialInput& input) {
    for (const auto& def : claim_defs())
        if (def.info.id == id) return def.eval(input);
    throw InvalidInput("evaluate_claim: unknown claim " + id);
}

TheoremReport run_suite(const EnsembleConfig& config, const ToleranceConfig& tol) {
    config.validate();
    tol.validate();

    TheoremReport report;
    report.config = config;
    report.tol = tol;

    std::size_t claim_index = 0;
    for (const auto& def : claim_defs()) {
        ClaimStats stats;
        Witness first_miss;
        bool have_miss = false;

        std::vector<std::string> families;
        for (const auto& f : def.families)
            if (std::find(config.families.begin(), config.families.end(), f) != config.families.end())
                families.push_back(f);

        const int sweep_max = def.info.n_parameterized ? config.n_max : 1;
        for (std::size_t family_index = 0; family_index < families.size(); ++family_index) {
            for (int trial = 0; trial < config.trials_per_family; ++trial) {
                const int dim =
                    config.dims[(family_index + static_cast<std::size_t>(trial)) % config.dims.size()];
                const std::uint64_t seed =
                    derive_seed(config.master_seed, claim_index * 131 + family_index,
                                static_cast<std::uint64_t>(trial));
                const DrawSpec spec =
                    instantiate(families[family_index], dim, seed, def.condition_cap, config);
                const Matrix t = generate(spec);

                std::optional<DrawSpec> partner_spec;
                std::optional<Matrix> partner;
                if (def.info.needs_partner) {
                    const auto& pf = def.partner_families[(static_cast<std::size_t>(trial)) %
                                                          def.partner_families.size()];
                    partner_spec = instantiate(pf, static_cast<int>(t.rows()),
                                               derive_seed(seed, 0x5A5A, 1), def.condition_cap, config);
                    partner = generate(*partner_spec);
                }

                for (int n = 1; n <= sweep_max; ++n) {
                    TrialInput input{t, partner, n, tol, derive_seed(seed, 0x77, static_cast<std::uint64_t>(n))};
                    const TrialOutcome outcome = def.eval(input);
                    ++stats.trials;
                    if (outcome.hypothesis) {
                        ++stats.hypothesis_hits;
                        stats.worst_residual = std::max(stats.worst_residual, outcome.worst());
                        if (outcome.pass) {
                            ++stats.passes;
                        } else if (stats.witnesses.size() < kMaxFailureWitnesses) {
                            Witness w;
                            w.claim = def.info.id;
                            w.kind = "failure";
                            w.n = n;
                            w.trace = spec;
                            w.partner_trace = partner_spec;
                            w.matrix = t;
                            w.residuals = outcome.residuals;
                            stats.witnesses.push_back(std::move(w));
                        }
                    } else if (!have_miss) {
                        first_miss.claim = def.info.id;
                        first_miss.kind = "hypothesis_miss";
                        first_miss.n = n;
                        first_miss.trace = spec;
                        first_miss.partner_trace = partner_spec;
                        first_miss.matrix = t;
                        first_miss.residuals = outcome.residuals;
                        have_miss = true;
                    }
                }
            }
        }

        if (stats.witnesses.empty() && have_miss && stats.passes < stats.trials)
            stats.witnesses.push_back(std::move(first_miss));
        stats.weakly_exercised =
            stats.trials > 0 && stats.hypothesis_hits * 10 < stats.trials;
        report.claims[def.info.id] = std::move(stats);
        ++claim_index;
    }
    return report;
}

namespace {

nlohmann::json residuals_to_json(const Residuals& rv) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [name, value] : rv) j[name] = value;
    return j;
}

nlohmann::json spec_to_json(const DrawSpec& spec) {
    return nlohmann::json{{"family", spec.family}, {"dim", spec.dim},   {"n", spec.n},
                          {"rank", spec.rank},     {"seed", spec.seed}, {"alpha", spec.alpha},
                          {"condition_cap", spec.condition_cap}};
}

}  // namespace

nlohmann::json report_to_json(const TheoremReport& report) {
    nlohmann::json claims = nlohmann::json::object();
    for (const auto& [id, stats] : report.claims) {
        nlohmann::json witnesses = nlohmann::json::array();
        for (const auto& w : stats.witnesses) {
            nlohmann::json jw{{"claim", w.claim},
                              {"kind", w.kind},
                              {"n", w.n},
                              {"seed_trace", spec_to_json(w.trace)},
                              {"matrix", matrix_to_json(w.matrix)},
                              {"residuals", residuals_to_json(w.residuals)}};
            if (w.partner_trace) jw["partner_trace"] = spec_to_json(*w.partner_trace);
            witnesses.push_back(std::move(jw));
        }
        claims[id] = nlohmann::json{{"trials", stats.trials},
                                    {"passes", stats.passes},
                                    {"hypothesis_hits", stats.hypothesis_hits},
                                    {"worst_residual", stats.worst_residual},
                                    {"weakly_exercised", stats.weakly_exercised},
                                    {"witnesses", std::move(witnesses)}};
    }
    return nlohmann::json{
        {"suite_version", report.suite_version},
        {"all_passed", report.all_passed()},
        {"config",
         {{"master_seed", report.config.master_seed},
          {"dims", report.config.dims},
          {"trials_per_family", report.config.trials_per_family},
          {"families", report.config.families},
          {"n_max", report.config.n_max},
          {"condition_cap", report.config.condition_cap}}},
        {"tolerances",
         {{"rank_tol_factor", report.tol.rank_tol_factor},
          {"residual_tol", report.tol.residual_tol},
          {"psd_tol", report.tol.psd_tol}}},
        {"claims", std::move(claims)}};
}

std::string report_to_text(const TheoremReport& report) {
    std::ostringstream os;
    os << "theorem suite v" << report.suite_version << "  (seed " << report.config.master_seed
       << ", n_max " << report.config.n_max << ")\n";
    os << std::left << std::setw(30) << "claim" << std::right << std::setw(8) << "trials"
       << std::setw(8) << "hits" << std::setw(8) << "passes" << std::setw(14) << "worst_resid"
       << "  status\n";
    for (const auto& [id, stats] : report.claims) {
        const bool ok = stats.passes == stats.hypothesis_hits;
        os << std::left << std::setw(30) << id << std::right << std::setw(8) << stats.trials
           << std::setw(8) << stats.hypothesis_hits << std::setw(8) << stats.passes << std::setw(14)
           << std::scientific << std::setprecision(2) << stats.worst_residual << "  "
           << (ok ? "pass" : "FAIL") << (stats.weakly_exercised ? " (weakly exercised)" : "")
           << "\n";
        os << std::defaultfloat;
    }
    os << (report.all_passed() ? "ALL CLAIMS PASS" : "CLAIM FAILURES PRESENT") << "\n";
    return os.str();
}

}  // namespace eplab
