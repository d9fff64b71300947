// Acceptance suite: one checkable criterion per section, one PASS/FAIL line
// each, nonzero exit if anything fails. Run through ctest or directly.

#include "eplab/classes.hpp"
#include "eplab/generators.hpp"
#include "eplab/matrix_io.hpp"
#include "eplab/operators.hpp"
#include "eplab/pinv.hpp"
#include "eplab/projectors.hpp"
#include "eplab/theorems.hpp"

#include "oracles.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace eplab;
using nlohmann::json;

namespace {

const std::string cli = EPLAB_CLI_PATH;

int failures = 0;

void report(int number, bool pass, const std::string& what, const std::string& detail) {
    std::printf("criterion %2d [%s]: %s (%s)\n", number, pass ? "PASS" : "FAIL", what.c_str(),
                detail.c_str());
    if (!pass) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<DrawSpec> mp_ensemble(int count) {
    const std::vector<std::string> families = {
        "random_general", "random_projection", "random_partial_isometry", "random_normal",
        "nonnormal_ep",   "nilpotent_nep",     "rank_one",                "anchored_shift",
        "singular_normal", "rank_one_orthonormal"};
    std::vector<DrawSpec> specs;
    for (int i = 0; i < count; ++i) {
        DrawSpec spec;
        spec.family = families[static_cast<std::size_t>(i) % families.size()];
        spec.dim = 2 + i % 9;  // 2..10
        spec.seed = derive_seed(0xACCE97, 1, static_cast<std::uint64_t>(i));
        spec.condition_cap = 1e6;
        if (spec.family == "anchored_shift") {
            spec.dim = std::max(3, spec.dim | 1);
            spec.alpha = 2.0;
        }
        if (spec.family == "nilpotent_nep") spec.n = std::min(spec.dim, 2 + i % 3);
        if (spec.family == "random_projection" || spec.family == "random_partial_isometry")
            spec.rank = 1 + i % spec.dim;
        if (spec.family == "random_general") spec.rank = spec.dim - i % 2;
        if (spec.family == "rank_one_orthonormal" || spec.family == "singular_normal")
            spec.dim = std::max(2, spec.dim);
        if (spec.family == "nhep_asym") spec.dim = std::max(3, spec.dim);
        specs.push_back(spec);
    }
    return specs;
}

double worst_mp_residual_of(const Matrix& t) {
    const auto r = mp_residuals(t, pinv(t).pinv);
    return std::max({r[0], r[1], r[2], r[3]});
}

// 1. Four defining-equation residuals <= 1e-10 over 500 mixed draws, < 10 s.
void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    double worst = 0.0;
    for (const DrawSpec& spec : mp_ensemble(500))
        worst = std::max(worst, worst_mp_residual_of(generate(spec)));
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "worst residual " << worst << ", " << elapsed << " s";
    report(1, worst <= 1e-10 && elapsed < 10.0,
           "pseudoinverse equations hold to 1e-10 over 500 draws, dims 2-10, cond <= 1e6",
           detail.str());
}

// 2. Definitional and range-characterization n-EP tests agree on >= 2000 pairs.
void criterion_2() {
    EnsembleConfig config;
    config.master_seed = 42;
    config.dims = {2, 3, 4, 5, 6};
    config.trials_per_family = 63;
    config.n_max = 4;
    const TheoremReport rep = run_suite(config);
    const ClaimStats& stats = rep.claims.at("equivEP");
    std::ostringstream detail;
    detail << stats.passes << "/" << stats.trials << " (operator, n) pairs agree";
    report(2, stats.trials >= 2000 && stats.passes == stats.trials,
           "n-EP route agreement on >= 2000 pairs", detail.str());
}

// 3. Golden profiles of the three fixed witnesses.
void criterion_3() {
    bool ok = true;
    std::ostringstream detail;

    const OperatorProfile inv = classify(involution_2x2());
    ok = ok && inv.holds(ClassKind::EP) && !inv.holds(ClassKind::SD) &&
         !inv.holds(ClassKind::Normal) && inv.ascent == 0 && inv.descent == 0;
    for (int n = 1; n <= 4; ++n) ok = ok && inv.holds(ClassKind::NEP, n);

    const Matrix pair = rank_one(Vector::Unit(2, 0), Vector::Unit(2, 1));
    const OperatorProfile nil = classify(pair);
    ok = ok && nil.holds(ClassKind::PartialIsometry) && !nil.holds(ClassKind::EP) &&
         !nil.holds(ClassKind::HypoEP) && nil.holds(ClassKind::NEP, 2) &&
         nil.holds(ClassKind::NHypoEP, 2) && !nil.holds(ClassKind::NEP, 1);

    const Matrix shift = anchored_shift(2.0, 9);
    const double closed_form = (pinv_matrix(shift) - shift.adjoint() / 4.0).norm() /
                               (shift.adjoint() / 4.0).norm();
    const OperatorProfile sh = classify(shift);
    ok = ok && !sh.holds(ClassKind::EP) && sh.holds(ClassKind::NEP, 2) && closed_form <= 1e-12;
    detail << "shift pinv closed-form residual " << closed_form;
    report(3, ok, "golden profiles of the three fixed witnesses match", detail.str());
}

// 4. Normal <=> EP and SD, exercised from both sides.
void criterion_4() {
    bool ok = true;
    int trials = 0;
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const Matrix t = random_normal(2 + static_cast<int>(seed % 5), seed);
        const OperatorProfile p = classify(t, 1);
        ok = ok && p.holds(ClassKind::Normal) && p.holds(ClassKind::EP) && p.holds(ClassKind::SD);
        ++trials;
    }
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        const Matrix t = nonnormal_ep(2 + static_cast<int>(seed % 5), seed);
        const OperatorProfile p = classify(t, 1);
        ok = ok && !p.holds(ClassKind::Normal) && p.holds(ClassKind::EP) && !p.holds(ClassKind::SD);
        ++trials;
    }
    report(4, ok, "normal iff EP and SD on 200 normal + 200 non-normal EP draws",
           std::to_string(trials) + " trials");
}

// 5. The CLI suite with default flags: exit 0, all claims pass, none weakly
//    exercised, under 60 s.
void criterion_5() {
    const auto start = std::chrono::steady_clock::now();
    const auto result = oracles::run_command(cli + " --format json suite 2>/dev/null");
    const double elapsed = seconds_since(start);
    bool ok = result.exit_code == 0;
    int weak = 0;
    std::string verdicts = "exit " + std::to_string(result.exit_code);
    if (ok) {
        const json rep = json::parse(result.output, nullptr, false);
        ok = !rep.is_discarded() && rep.value("all_passed", false);
        if (ok)
            for (const auto& [id, stats] : rep["claims"].items()) {
                ok = ok && stats["passes"] == stats["hypothesis_hits"];
                if (stats["weakly_exercised"].get<bool>()) ++weak;
            }
        ok = ok && weak == 0;
    }
    std::ostringstream detail;
    detail << verdicts << ", " << weak << " weakly exercised, " << elapsed << " s";
    report(5, ok && elapsed < 60.0, "default CLI theorem suite passes every claim", detail.str());
}

// 6. Ascent/descent bounded by n on every n-EP trial; bound tight at n = 2, 3.
void criterion_6() {
    EnsembleConfig config;
    config.master_seed = 711;
    config.dims = {2, 3, 4, 5, 6};
    config.trials_per_family = 50;
    const TheoremReport rep = run_suite(config);
    const ClaimStats& stats = rep.claims.at("ascent_descent");
    bool ok = stats.hypothesis_hits > 0 && stats.passes == stats.hypothesis_hits;

    bool tight = true;
    for (int n : {2, 3}) {
        const Matrix t = nilpotent_nep(n + 2, n, 5);
        const OperatorProfile p = classify(t);
        tight = tight && p.holds(ClassKind::NEP, n) && !p.holds(ClassKind::NEP, n - 1) &&
                p.ascent == n && p.descent == n;
    }
    std::ostringstream detail;
    detail << stats.passes << "/" << stats.hypothesis_hits << " bounded, tightness at n=2,3 "
           << (tight ? "confirmed" : "broken");
    report(6, ok && tight, "n-EP forces ascent and descent <= n, bound attained", detail.str());
}

// 7. Positivity transfer between T^{2n} and T^{2n-1} w(T) on n-EP draws.
void criterion_7() {
    const std::vector<std::string> families = {"nonnormal_ep", "random_normal", "singular_normal",
                                               "random_projection", "nilpotent_nep",
                                               "involution_2x2"};
    int hits = 0;
    bool ok = true;
    for (std::uint64_t seed = 1; seed <= 400 && ok; ++seed) {
        DrawSpec spec;
        spec.family = families[seed % families.size()];
        spec.dim = 2 + static_cast<int>(seed % 5);
        spec.seed = seed;
        spec.n = 2;
        spec.rank = 1 + static_cast<int>(seed % 2);
        if (spec.family == "nilpotent_nep") spec.dim = std::max(spec.dim, spec.n);
        const Matrix t = generate(spec);
        const Matrix dual = cauchy_dual(t);
        for (int n = 1; n <= 2; ++n) {
            if (!is_n_ep(t, n).holds) continue;
            ++hits;
            const bool even = is_psd(mat_power(t, 2 * n)).psd;
            const bool mixed = is_psd(mat_power(t, 2 * n - 1) * dual).psd;
            ok = ok && even == mixed;
        }
    }
    report(7, ok && hits >= 200, "T^{2n} >= 0 iff T^{2n-1} w(T) >= 0 on n-EP draws",
           std::to_string(hits) + " n-EP (T, n) pairs");
}

// 8. hypo-EP route agreement and the six-way n-hypo-EP agreement; Douglas
//    constants finite exactly on range inclusion.
void criterion_8() {
    bool ok = true;
    int finite_cases = 0, infinite_cases = 0, trials = 0;
    const std::vector<std::string> families = {"nonnormal_ep", "random_general", "rank_one",
                                               "nilpotent_nep", "random_projection", "nhep_asym",
                                               "anchored_shift", "random_normal"};
    for (std::uint64_t seed = 1; seed <= 100 && ok; ++seed) {
        DrawSpec spec;
        spec.family = families[seed % families.size()];
        spec.dim = 2 + static_cast<int>(seed % 5);
        spec.seed = seed;
        spec.n = 2;
        spec.rank = std::max(1, spec.dim - static_cast<int>(seed % 2));
        spec.condition_cap = 100.0;
        if (spec.family == "anchored_shift") {
            spec.dim = std::max(3, spec.dim | 1);
            spec.alpha = 2.0;
        }
        if (spec.family == "nhep_asym") spec.dim = std::max(3, spec.dim);
        const Matrix t = generate(spec);
        try {
            is_hypo_ep(t);  // three-route agreement; throws on conflict
        } catch (const RouteDisagreement&) {
            ok = false;
            break;
        }
        for (int n = 1; n <= 4; ++n) {
            const TrialOutcome out =
                evaluate_claim("caractnHEP", TrialInput{t, std::nullopt, n, ToleranceConfig{}, seed});
            ok = ok && out.pass;
            const Matrix power = mat_power(t, n);
            const double c = douglas_constant(power, Matrix(t.adjoint()));
            const bool included = range_included(power, Matrix(t.adjoint())).included;
            ok = ok && (std::isfinite(c) == included);
            (std::isfinite(c) ? finite_cases : infinite_cases) += 1;
            ++trials;
        }
    }
    std::ostringstream detail;
    detail << trials << " (T, n) trials, " << finite_cases << " finite / " << infinite_cases
           << " infinite Douglas constants";
    report(8, ok && finite_cases > 0 && infinite_cases > 0,
           "hypo-EP and n-hypo-EP route agreement, Douglas finiteness matches inclusion",
           detail.str());
}

// 9. Determinism of the CLI suite and the gen -> classify round trip.
void criterion_9() {
    const std::string flags = " --format json suite --trials 8 --dims 2-5 --seed 2718 2>/dev/null";
    const auto a = oracles::run_command(cli + flags);
    const auto b = oracles::run_command(cli + flags);
    bool ok = a.exit_code == 0 && a.output == b.output && !a.output.empty();

    struct Expectation {
        std::string command;
        ClassKind want;
        int n;
        bool value;
    };
    const std::vector<Expectation> table = {
        {" gen random_normal --dim 4 --seed 9", ClassKind::Normal, 0, true},
        {" gen random_unitary --dim 4 --seed 9", ClassKind::PartialIsometry, 0, true},
        {" gen random_projection --dim 4 --rank 2 --seed 9", ClassKind::EP, 0, true},
        {" gen random_partial_isometry --dim 4 --rank 2 --seed 9", ClassKind::PartialIsometry, 0, true},
        {" gen nonnormal_ep --dim 4 --seed 9", ClassKind::Normal, 0, false},
        {" gen nonnormal_ep --dim 4 --seed 9", ClassKind::EP, 0, true},
        {" gen nilpotent_nep --dim 4 --n 3 --seed 9", ClassKind::NEP, 3, true},
        {" gen nilpotent_nep --dim 4 --n 3 --seed 9", ClassKind::NEP, 2, false},
        {" gen involution_2x2", ClassKind::SD, 0, false},
        {" gen anchored_shift --dim 9 --alpha 2", ClassKind::NEP, 2, true},
        {" gen const_shift --dim 4 --alpha 1.5", ClassKind::SD, 0, true},
        {" gen rank_one --x e1 --y e2", ClassKind::PartialIsometry, 0, true},
        {" gen nhep_asym --dim 3 --seed 9", ClassKind::NHypoEP, 2, true},
        {" gen nhep_asym --dim 3 --seed 9", ClassKind::NEP, 2, false},
        {" gen zero --dim 3", ClassKind::EP, 0, true},
        {" gen identity --dim 3", ClassKind::Regular, 0, true},
    };
    const std::string path = oracles::temp_path("acceptance_gen.json");
    for (const auto& expectation : table) {
        const auto gen =
            oracles::run_command(cli + expectation.command + " --out " + path + " 2>/dev/null");
        if (gen.exit_code != 0) {
            ok = false;
            break;
        }
        const OperatorProfile p = classify(load_matrix(path));
        ok = ok && p.holds(expectation.want, expectation.n) == expectation.value;
    }
    report(9, ok, "byte-identical suite reruns; gen/classify round trip matches adverts",
           "suite bytes " + std::to_string(a.output.size()));
}

// 10. A sign fault injected into pinv is caught by the defining-equation gate
//     and by at least five distinct claims, with replayable witnesses.
void criterion_10() {
    double clean_worst = 0.0;
    for (const DrawSpec& spec : mp_ensemble(50))
        clean_worst = std::max(clean_worst, worst_mp_residual_of(generate(spec)));

    double faulty_worst = 0.0;
    int failing_claims = 0;
    bool witnesses_ok = true;
    {
        detail::PinvFaultGuard guard;
        for (const DrawSpec& spec : mp_ensemble(50))
            faulty_worst = std::max(faulty_worst, worst_mp_residual_of(generate(spec)));

        EnsembleConfig config;
        config.master_seed = 7;
        config.dims = {2, 3, 4};
        config.trials_per_family = 2;
        config.n_max = 3;
        const TheoremReport rep = run_suite(config);
        for (const auto& [id, stats] : rep.claims) {
            if (stats.passes == stats.hypothesis_hits) continue;
            ++failing_claims;
            witnesses_ok = witnesses_ok && !stats.witnesses.empty();
            for (const Witness& w : stats.witnesses)
                if (w.kind == "failure")
                    witnesses_ok = witnesses_ok && generate(w.trace) == w.matrix;
        }
    }
    double restored_worst = 0.0;
    for (const DrawSpec& spec : mp_ensemble(50))
        restored_worst = std::max(restored_worst, worst_mp_residual_of(generate(spec)));

    const bool ok = clean_worst <= 1e-10 && faulty_worst > 1e-10 && failing_claims >= 5 &&
                    witnesses_ok && restored_worst <= 1e-10;
    std::ostringstream detail;
    detail << "faulty worst " << faulty_worst << ", " << failing_claims
           << " claims failing with witnesses";
    report(10, ok, "an injected pinv sign error trips the equation gate and >= 5 claims",
           detail.str());
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    if (failures == 0)
        std::puts("acceptance: all criteria pass");
    else
        std::printf("acceptance: %d criterion(s) failing\n", failures);
    return failures == 0 ? 0 : 1;
}
