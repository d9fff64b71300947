#pragma once

#include "eplab/generators.hpp"
#include "eplab/matrix.hpp"

#include <nlohmann/json_fwd.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace eplab {

inline constexpr const char* kSuiteVersion = "1.0.0";

/// A registered claim: a checkable statement evaluated over ensembles.
struct ClaimInfo {
    std::string id;           // unique key, canonical ordering of the report
    std::string description;  // what the claim asserts, in words
    std::string statement;    // the formula(s) under test; always nonempty
    bool n_parameterized = false;
    bool needs_partner = false;  // draws an auxiliary operator (e.g. a unitary)
};

/// One (operator[, partner], n) evaluation.
struct TrialInput {
    Matrix t;
    std::optional<Matrix> partner;
    int n = 1;
    ToleranceConfig tol;
    std::uint64_t seed = 0;  // stream for sampling-style sub-checks
};

struct TrialOutcome {
    bool hypothesis = true;
    bool pass = true;
    std::vector<std::pair<std::string, double>> residuals;

    double worst() const;
};

/// Counterexample (or diagnostic) record; the trace replays the exact draw.
struct Witness {
    std::string claim;
    std::string kind;  // "failure" or "hypothesis_miss"
    int n = 1;
    DrawSpec trace;
    std::optional<DrawSpec> partner_trace;
    Matrix matrix;
    std::vector<std::pair<std::string, double>> residuals;
};

struct ClaimStats {
    long trials = 0;
    long passes = 0;           // hypothesis-satisfying trials where the claim held
    long hypothesis_hits = 0;  // trials where the hypothesis held
    double worst_residual = 0.0;
    bool weakly_exercised = false;  // hypothesis satisfied on < 10% of trials
    std::vector<Witness> witnesses;
};

struct TheoremReport {
    std::string suite_version = kSuiteVersion;
    EnsembleConfig config;
    ToleranceConfig tol;
    std::map<std::string, ClaimStats> claims;

    bool all_passed() const;
};

/// The registry, in canonical (report) order.
const std::vector<ClaimInfo>& claim_registry();

/// Evaluates one claim on one prepared input. Unknown ids throw InvalidInput.
TrialOutcome evaluate_claim(const std::string& id, const TrialInput& input);

/// Draws per-claim populations, sweeps n where applicable, aggregates.
/// Deterministic for a fixed config; claim-by-trial evaluation order is fixed.
TheoremReport run_suite(const EnsembleConfig& config, const ToleranceConfig& tol = {});

nlohmann::json report_to_json(const TheoremReport& report);
std::string report_to_text(const TheoremReport& report);

}  // namespace eplab
