/**@file   harness.hpp
 * @brief  Experiment runs classified against baseline branch-and-bound optima
 */
#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "deltadb/bnb.hpp"
#include "deltadb/decbranch.hpp"
#include "deltadb/model.hpp"

namespace deltadb {

enum class RunState { TimeLimit, FinishedOpt, FinishedNoSol, FinishedSubopt };

std::string_view to_string(RunState s);

struct RunRecord {
    std::string instance;
    std::string variant;
    RunState state = RunState::TimeLimit;
    std::optional<Rational> value;
    Rational oracle_value;
    std::uint64_t nodes = 0;
    double time_sec = 0.0;
};

/// Pure function of the report state, the incumbent value and the oracle value.
/// Node and time limits both map to TimeLimit. Throws InvariantViolation if a
/// claimed value is below the oracle optimum.
RunState classify(const SolveReport& report, const Rational& oracle_value);

struct NamedInstance {
    std::string id;
    DecomposedMip mip;
};

struct ExperimentSummary {
    std::vector<std::string> variants;
    /// counts[variant][state]
    std::map<std::string, std::map<RunState, std::size_t>> counts;
    std::vector<std::string> excluded;  ///< instance ids without an oracle optimum, with reason
};

struct Experiment {
    std::vector<RunRecord> records;  ///< ordered by (instance, variant) as given
    ExperimentSummary summary;
};

/// One solve per (instance, variant) after a baseline oracle solve per instance.
/// Instances whose oracle does not prove an optimum within oracle_limits are excluded.
Experiment run_experiment(const std::vector<NamedInstance>& instances, const std::vector<DbConfig>& variants,
                          const MipLimits& oracle_limits = {});

/// Loads every *.dmip file of dir, sorted by file name; the id is the file stem.
std::vector<NamedInstance> load_instance_dir(const std::filesystem::path& dir);

/// "delta", "delta:3", "eps:1/10", comma separated; limits are applied to every entry.
std::vector<DbConfig> parse_variants(const std::string& spec, std::uint64_t node_limit, double time_limit);

/// Columns: instance, variant, state, value, oracle_value, nodes, time_sec.
std::string records_csv(const std::vector<RunRecord>& records);

/// One row per instance: instance, then <variant>_nodes and <variant>_state for each variant.
std::string scatter_csv(const Experiment& e);

/// State counts per variant as a fixed-width table.
std::string summary_table(const ExperimentSummary& s);

/// Geometric mean of nodes(a) / nodes(b) over instances where both finished
/// (finished_opt, finished_subopt or finished_nosol); nullopt if there are none.
std::optional<double> geometric_mean_node_ratio(const std::vector<RunRecord>& records, const std::string& variant_a,
                                                const std::string& variant_b);

}  // namespace deltadb
