#pragma once

#include "koiso/identities.hpp"
#include "koiso/obstruction.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace koiso {

inline constexpr std::string_view kToolVersion = "1.0.0";

enum class OutputFormat { Json, Markdown };

struct EtaModeConfig {
    bool random = false;
    int count = 1;  // number of random etas for obstruction runs

    std::string to_string() const;
    /// parses "gamma" or "random:<k>"; throws std::invalid_argument
    static EtaModeConfig parse(const std::string& text);
};

/// Full run configuration; mirrors the CLI flags one-to-one. Environment
/// variables are never consulted.
struct RunConfig {
    std::vector<int> n_list{2};
    std::vector<IdentityId> checks;  // empty = all
    std::uint64_t samples = 200000;
    std::uint64_t seed = 1;
    int partitions = 1;
    double tol_pointwise_rel = 1e-4;
    double tol_mc_sigma = 3.0;
    double tol_mc_rel = 0.02;
    EtaModeConfig eta;
    OutputFormat format = OutputFormat::Json;
    std::string output_path;  // empty = stdout

    /// throws std::invalid_argument on violated invariants
    void validate() const;

    CheckConfig check_config() const;
};

struct RunSummary {
    int total = 0;
    int passed = 0;
    int failed = 0;
};

struct RunReport {
    RunConfig config;
    std::string version{kToolVersion};
    std::vector<CheckReport> checks;
    std::vector<ObstructionResult> obstructions;
    std::vector<RemarkCheck> remark_checks;  // parallel to obstruction n values
    std::vector<int> remark_n;
    RunSummary summary;
    double wall_time_s = 0.0;

    void recompute_summary();
    /// 0 when everything passed, 1 otherwise
    int exit_code() const { return summary.failed == 0 ? 0 : 1; }
};

/// Deterministic JSON rendering (key order fixed; byte-identical across runs
/// with the same config apart from wall_time_s).
std::string to_json_string(const RunReport& report);

/// Human-readable rendering of the same data.
std::string to_markdown(const RunReport& report);

/// Parse the JSON produced by to_json_string back into exact values for
/// round-trip checks. Returns the serialized coeff/pi_pow of every exact lhs
/// in order of appearance.
std::vector<ExactValue> exact_values_in_json(const std::string& json_text);

/// The integrals table (I_n^r for r = 0..3, the volume, and int f_gamma^3)
/// rendered as aligned text rows of exact values.
std::string integrals_table(int n_max);

}  // namespace koiso
