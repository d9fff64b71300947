#include "eplab/classes.hpp"
#include "eplab/generators.hpp"
#include "eplab/matrix_io.hpp"
#include "eplab/theorems.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using eplab::ClassKind;
using eplab::ClassLabel;
using eplab::Matrix;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitClaimFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

void emit(const std::string& payload, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << payload;
        if (!payload.empty() && payload.back() != '\n') std::cout << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw eplab::InvalidInput("cannot write output file: " + out_path);
    out << payload;
    if (!payload.empty() && payload.back() != '\n') out << "\n";
}

std::vector<int> parse_dims(const std::string& text) {
    std::vector<int> dims;
    const auto range_pos = text.find('-');
    if (range_pos != std::string::npos && text.find(',') == std::string::npos) {
        const int lo = std::stoi(text.substr(0, range_pos));
        const int hi = std::stoi(text.substr(range_pos + 1));
        if (lo > hi) throw eplab::InvalidInput("dims: empty range " + text);
        for (int d = lo; d <= hi; ++d) dims.push_back(d);
        return dims;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) dims.push_back(std::stoi(item));
    if (dims.empty()) throw eplab::InvalidInput("dims: no values in " + text);
    return dims;
}

eplab::Vector parse_vector(const std::string& text, int dim_hint) {
    if (text.size() >= 2 && text[0] == 'e') {
        const int k = std::stoi(text.substr(1));
        const int dim = std::max(dim_hint, k);
        if (k < 1) throw eplab::InvalidInput("basis vector index must be >= 1");
        return eplab::Vector::Unit(dim, k - 1);
    }
    std::vector<eplab::Complex> entries;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto sep = item.find(':');
        if (sep == std::string::npos)
            entries.emplace_back(std::stod(item), 0.0);
        else
            entries.emplace_back(std::stod(item.substr(0, sep)), std::stod(item.substr(sep + 1)));
    }
    if (entries.empty()) throw eplab::InvalidInput("empty vector literal");
    eplab::Vector v(static_cast<int>(entries.size()));
    for (std::size_t i = 0; i < entries.size(); ++i) v(static_cast<int>(i)) = entries[i];
    return v;
}

json profile_to_json(const eplab::OperatorProfile& profile) {
    json memberships = json::object();
    for (const auto& [label, verdict] : profile.memberships)
        memberships[eplab::to_string(label)] = json{{"holds", verdict.holds},
                                                    {"residual", verdict.residual}};
    return json{{"dim", profile.dim},
                {"n_max", profile.n_max},
                {"ascent", profile.ascent},
                {"descent", profile.descent},
                {"memberships", std::move(memberships)}};
}

std::string profile_to_text(const eplab::OperatorProfile& profile) {
    std::ostringstream os;
    os << "dim " << profile.dim << ", ascent " << profile.ascent << ", descent " << profile.descent
       << ", n_max " << profile.n_max << "\n";
    for (const auto& [label, verdict] : profile.memberships) {
        os << "  " << eplab::to_string(label);
        for (std::size_t pad = eplab::to_string(label).size(); pad < 20; ++pad) os << ' ';
        os << (verdict.holds ? "yes" : "no ") << "  (residual " << verdict.residual << ")\n";
    }
    return os.str();
}

std::optional<ClassLabel> parse_class_label(const std::string& text) {
    static const std::vector<std::pair<std::string, ClassKind>> plain = {
        {"Normal", ClassKind::Normal},
        {"QuasiNormal", ClassKind::QuasiNormal},
        {"Hyponormal", ClassKind::Hyponormal},
        {"PartialIsometry", ClassKind::PartialIsometry},
        {"EP", ClassKind::EP},
        {"SD", ClassKind::SD},
        {"HEP", ClassKind::HypoEP},
        {"Regular", ClassKind::Regular},
    };
    for (const auto& [name, kind] : plain)
        if (text == name) return ClassLabel{kind, 0};
    static const std::vector<std::pair<std::string, ClassKind>> ranked = {
        {"NEP", ClassKind::NEP},
        {"NHEP", ClassKind::NHypoEP},
        {"NNormal", ClassKind::NNormal},
    };
    for (const auto& [prefix, kind] : ranked) {
        if (text.size() > prefix.size() && text.rfind(prefix, 0) == 0) {
            const std::string digits = text.substr(prefix.size());
            if (digits.find_first_not_of("0123456789") != std::string::npos) continue;
            const int n = std::stoi(digits);
            if (n >= 1 && n <= 9) return ClassLabel{kind, n};
        }
    }
    return std::nullopt;
}

// Directed candidates per separation target; the general sweep runs after.
std::vector<std::string> witness_candidates(const ClassLabel& want, const ClassLabel& avoid) {
    std::vector<std::string> fams;
    const auto add = [&fams](std::initializer_list<const char*> names) {
        for (const char* n : names) fams.emplace_back(n);
    };
    if (want.kind == ClassKind::NEP || want.kind == ClassKind::NHypoEP)
        add({"nilpotent_nep", "anchored_shift", "rank_one_orthonormal", "nhep_asym"});
    if (want.kind == ClassKind::EP &&
        (avoid.kind == ClassKind::Normal || avoid.kind == ClassKind::SD ||
         avoid.kind == ClassKind::QuasiNormal))
        add({"nonnormal_ep", "involution_2x2"});
    if (want.kind == ClassKind::SD || want.kind == ClassKind::PartialIsometry)
        add({"rank_one_orthonormal", "const_shift", "random_partial_isometry", "rank_one"});
    if (want.kind == ClassKind::NNormal) add({"involution_2x2", "nilpotent_nep"});
    for (const auto& f : eplab::family_names()) fams.push_back(f);
    return fams;
}

int run_classify(const std::string& path, int n_max, const eplab::ToleranceConfig& tol,
                 const std::string& format, const std::string& out_path) {
    const Matrix m = eplab::load_matrix(path);
    eplab::require_square(m, "classify");
    const eplab::OperatorProfile profile = eplab::classify(m, n_max, tol);
    emit(format == "json" ? profile_to_json(profile).dump(2) : profile_to_text(profile), out_path);
    return kExitOk;
}

int run_suite_cmd(const eplab::EnsembleConfig& config, const eplab::ToleranceConfig& tol,
                  const std::string& format, const std::string& out_path) {
    const eplab::TheoremReport report = eplab::run_suite(config, tol);
    emit(format == "json" ? eplab::report_to_json(report).dump(2) : eplab::report_to_text(report),
         out_path);
    return report.all_passed() ? kExitOk : kExitClaimFailure;
}

int run_witness(const std::string& pair, const eplab::EnsembleConfig& config,
                const eplab::ToleranceConfig& tol, const std::string& out_path) {
    const auto sep = pair.find("-not-");
    if (sep == std::string::npos)
        throw eplab::InvalidInput("witness: expected a pair like NEP2-not-EP");
    const auto want = parse_class_label(pair.substr(0, sep));
    const auto avoid = parse_class_label(pair.substr(sep + 5));
    if (!want || !avoid) throw eplab::InvalidInput("witness: unknown class label in " + pair);
    if (*want == *avoid) throw eplab::InvalidInput("witness: contradictory pair " + pair);

    const int n_max = std::max({config.n_max, want->n, avoid->n});
    const auto candidates = witness_candidates(*want, *avoid);
    int budget = std::max(1, config.trials_per_family);
    for (int trial = 0; trial < budget; ++trial) {
        for (const auto& family : candidates) {
            const int dim = config.dims[static_cast<std::size_t>(trial) % config.dims.size()];
            eplab::DrawSpec spec;
            spec.family = family;
            spec.dim = dim;
            spec.seed = eplab::derive_seed(config.master_seed, 0xB0B, static_cast<std::uint64_t>(trial));
            spec.alpha = family == "anchored_shift" ? 2.0 : (family == "const_shift" ? 1.5 : 0.0);
            if (family == "anchored_shift") spec.dim = std::max(3, dim % 2 == 0 ? dim + 1 : dim);
            if (family == "nilpotent_nep") spec.n = std::min(std::max(2, want->n), spec.dim);
            if (family == "nhep_asym") spec.dim = std::max(3, dim);
            if (family == "rank_one_orthonormal" || family == "singular_normal")
                spec.dim = std::max(2, dim);
            if (family == "random_projection" || family == "random_partial_isometry")
                spec.rank = 1 + static_cast<int>(spec.seed % static_cast<std::uint64_t>(spec.dim));
            if (family == "random_general") {
                spec.rank = spec.dim - static_cast<int>((spec.seed >> 16) % 2);
                spec.condition_cap = std::min(100.0, config.condition_cap);
            }
            Matrix m;
            eplab::OperatorProfile profile;
            try {
                m = eplab::generate(spec);
                profile = eplab::classify(m, n_max, tol);
            } catch (const eplab::InvalidInput&) {
                continue;  // family/dim combination not applicable
            }
            if (profile.holds(want->kind, want->n) && !profile.holds(avoid->kind, avoid->n)) {
                emit(eplab::matrix_to_json(m).dump(2), out_path);
                std::cerr << "witness for " << pair << ": family " << family << ", dim " << spec.dim
                          << ", seed " << spec.seed << "\n";
                return kExitOk;
            }
        }
    }
    std::cerr << "no witness for " << pair << " within the trial budget\n";
    return kExitClaimFailure;
}

int run_gen(const std::string& family, int dim, int rank, int n, double alpha,
            const std::string& weights_text, const std::string& x_text, const std::string& y_text,
            std::uint64_t seed, double condition_cap, const std::string& out_path) {
    Matrix m;
    if (family == "rank_one") {
        if (x_text.empty() || y_text.empty())
            throw eplab::InvalidInput("gen rank_one: --x and --y are required");
        eplab::Vector x = parse_vector(x_text, dim);
        eplab::Vector y = parse_vector(y_text, dim);
        const int full = static_cast<int>(std::max(x.size(), y.size()));
        if (x.size() < full) {
            eplab::Vector padded = eplab::Vector::Zero(full);
            padded.head(x.size()) = x;
            x = padded;
        }
        if (y.size() < full) {
            eplab::Vector padded = eplab::Vector::Zero(full);
            padded.head(y.size()) = y;
            y = padded;
        }
        m = eplab::rank_one(x, y);
    } else if (family == "weighted_shift" || family == "random_weighted_shift") {
        if (family == "weighted_shift" || !weights_text.empty()) {
            std::vector<double> weights;
            std::stringstream ss(weights_text);
            std::string item;
            while (std::getline(ss, item, ',')) weights.push_back(std::stod(item));
            m = eplab::weighted_shift(weights);
        } else {
            eplab::DrawSpec spec;
            spec.family = family;
            spec.dim = dim;
            spec.seed = seed;
            m = eplab::generate(spec);
        }
    } else {
        eplab::DrawSpec spec;
        spec.family = family;
        spec.dim = dim;
        spec.rank = rank;
        spec.n = n;
        spec.seed = seed;
        spec.alpha = alpha;
        spec.condition_cap = condition_cap;
        m = eplab::generate(spec);
    }
    emit(eplab::matrix_to_json(m).dump(2), out_path);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical laboratory for EP, SD, hypo-EP, n-EP and n-hypo-EP matrix classes"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand

    eplab::ToleranceConfig tol;
    std::string format = "text";
    std::string out_path;
    app.add_option("--rank-tol-factor", tol.rank_tol_factor, "rank cutoff factor")->capture_default_str();
    app.add_option("--residual-tol", tol.residual_tol, "relative equality threshold")->capture_default_str();
    app.add_option("--psd-tol", tol.psd_tol, "PSD slack")->capture_default_str();
    app.add_option("--format", format, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--out", out_path, "write the report to a file instead of stdout");

    auto* classify_cmd = app.add_subcommand("classify", "classify a matrix file");
    std::string matrix_path;
    int n_max = 4;
    classify_cmd->add_option("file", matrix_path, "matrix JSON file")->required();
    classify_cmd->add_option("--n-max", n_max, "profile depth")->capture_default_str();

    auto* suite_cmd = app.add_subcommand("suite", "run the theorem suite");
    std::string dims_text = "2-6";
    std::uint64_t seed = 42;
    int trials = 50;
    int suite_n_max = 4;
    double condition_cap = 1e6;
    std::vector<std::string> families;
    suite_cmd->add_option("--dims", dims_text, "dimensions, e.g. 2-6 or 2,4,8")->capture_default_str();
    suite_cmd->add_option("--seed", seed, "master seed")->capture_default_str();
    suite_cmd->add_option("--trials", trials, "trials per family per claim")->capture_default_str();
    suite_cmd->add_option("--n-max", suite_n_max, "n sweep depth")->capture_default_str();
    suite_cmd->add_option("--condition-cap", condition_cap, "condition cap for random draws")
        ->capture_default_str();
    suite_cmd->add_option("--families", families, "restrict generator families")->delimiter(',');

    auto* witness_cmd = app.add_subcommand("witness", "search for a class-separating matrix");
    std::string pair;
    std::string witness_dims = "2-6";
    int witness_trials = 40;
    std::uint64_t witness_seed = 42;
    witness_cmd->add_option("pair", pair, "separation, e.g. NEP2-not-EP")->required();
    witness_cmd->add_option("--dims", witness_dims, "dimensions to try")->capture_default_str();
    witness_cmd->add_option("--trials", witness_trials, "search budget per family")->capture_default_str();
    witness_cmd->add_option("--seed", witness_seed, "search seed")->capture_default_str();

    auto* gen_cmd = app.add_subcommand("gen", "emit a generated matrix");
    std::string family;
    int gen_dim = 4, gen_rank = 0, gen_n = 2;
    double gen_alpha = 2.0, gen_cap = 1e6;
    std::uint64_t gen_seed = 42;
    std::string weights_text, x_text, y_text;
    gen_cmd->add_option("family", family, "generator family")->required();
    gen_cmd->add_option("--dim", gen_dim, "dimension")->capture_default_str();
    gen_cmd->add_option("--N", gen_dim, "dimension (alias)");
    gen_cmd->add_option("--rank", gen_rank, "rank for ranked families");
    gen_cmd->add_option("--n", gen_n, "nilpotency index")->capture_default_str();
    gen_cmd->add_option("--alpha", gen_alpha, "shift scale")->capture_default_str();
    gen_cmd->add_option("--weights", weights_text, "comma-separated shift weights");
    gen_cmd->add_option("--x", x_text, "left vector (e1 or comma list, re:im entries)");
    gen_cmd->add_option("--y", y_text, "right vector");
    gen_cmd->add_option("--seed", gen_seed, "seed")->capture_default_str();
    gen_cmd->add_option("--condition-cap", gen_cap, "condition cap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        tol.validate();
        if (classify_cmd->parsed()) return run_classify(matrix_path, n_max, tol, format, out_path);
        if (suite_cmd->parsed()) {
            eplab::EnsembleConfig config;
            config.master_seed = seed;
            config.dims = parse_dims(dims_text);
            config.trials_per_family = trials;
            config.n_max = suite_n_max;
            config.condition_cap = condition_cap;
            if (!families.empty()) config.families = families;
            return run_suite_cmd(config, tol, format, out_path);
        }
        if (witness_cmd->parsed()) {
            eplab::EnsembleConfig config;
            config.master_seed = witness_seed;
            config.dims = parse_dims(witness_dims);
            config.trials_per_family = witness_trials;
            return run_witness(pair, config, tol, out_path);
        }
        if (gen_cmd->parsed())
            return run_gen(family, gen_dim, gen_rank, gen_n, gen_alpha, weights_text, x_text, y_text,
                           gen_seed, gen_cap, out_path);
    } catch (const eplab::RouteDisagreement& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const eplab::ConsistencyError& e) {
        std::cerr << "internal consistency error: " << e.what() << "\n";
        return kExitInternal;
    } catch (const eplab::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
