#ifndef WDSIM_SCENARIO_HPP
#define WDSIM_SCENARIO_HPP

#include <optional>
#include <string>
#include <vector>

#include "wdsim/engine.hpp"

namespace wdsim {

struct ScenarioError {
    int line = 0; // 1-based; 0 for whole-file problems
    std::string message;
};

struct ParseResult {
    std::optional<ExperimentSpec> spec;
    std::vector<ScenarioError> errors;

    bool ok() const { return spec.has_value() && errors.empty(); }
};

// Parses the flat key=value scenario format. Blank lines and lines
// starting with '#' are ignored. Unknown keys are rejected with their
// line number; missing keys take the documented defaults (time-sharing
// GM/GM, 10 MB, 50 runs, seed 0).
ParseResult parse_scenario(const std::string& text);

// Inverse of parse_scenario: emits every core key plus the complete cost
// and link parameter set, such that reparsing yields an equal spec.
std::string emit_scenario(const ExperimentSpec& spec);

// Fixed CSV header, one row per run, ordered by run_id.
extern const char* const kCsvHeader;
std::string emit_csv(const std::vector<TransferReport>& reports);

struct RankingRow {
    Strategy strategy;
    std::string config;
    double mean_t_total_s = 0.0;
    double mean_e_total_j = 0.0;
};

// Runs every spec and ranks strategies by mean total time (ties broken by
// mean energy). All specs must share the payload size; fewer than two
// specs or mismatched payloads are rejected with InvalidArgument.
std::vector<RankingRow> compare_strategies(const std::vector<ExperimentSpec>& specs);

std::string format_ranking(const std::vector<RankingRow>& rows);

} // namespace wdsim

#endif
