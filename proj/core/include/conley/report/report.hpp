#pragma once

#include "conley/dynamics/transition_graph.hpp"
#include "conley/index/connection.hpp"
#include "conley/report/config.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <vector>

namespace conley::report {

inline constexpr const char* kVersion = "conley " CONLEY_VERSION_STRING;

/// Diagnostics codes, one per error kind.
enum class Code {
    IrregularConstruction = 10,
    NonIsomorphicInclusion = 11,
    NotStabilized = 12,
    NoConnection = 13,
    NotIsolating = 14,
    Precondition = 15,
    UnsupportedRing = 16,
    InternalConsistency = 20,
    SizeLimit = 21,
    Other = 29,
};

struct NamedPath {
    std::string name;
    index::Path path;
};

struct BettiRow {
    std::string pair;
    std::size_t slice = 0;
    std::vector<std::size_t> ranks;
};

struct ReportDocument {
    nlohmann::json body;
    std::vector<NamedPath> witnesses;
    std::vector<BettiRow> betti;
    dynamics::Grid grid;
    bool hard_error = false;
};

/// Runs every stage of the pipeline. Stage failures become diagnostics; the
/// sweep runs when the config lists amplitudes and `with_sweep` is set.
ReportDocument run_scenario(const ScenarioConfig& config, bool with_sweep = true);

/// One row per amplitude; the forcing amplitude is replaced by epsilon
/// (sinusoid with frequency 1 when the base has no forcing).
nlohmann::json run_sweep(const ScenarioConfig& config);

/// Transition graph of the configured field, grid and slicing.
dynamics::TransitionGraph build_graph(const ScenarioConfig& config);

/// Sorted keys, two-space indent, trailing newline.
std::string render_report(const ReportDocument& doc);

/// Header: step,slice,cube,c0..,lower0..,upper0..
std::string witness_csv(const index::Path& path, const dynamics::Grid& grid);
/// Header: pair,slice,b0..b{d}
std::string betti_csv(const std::vector<BettiRow>& rows);

/// Writes the report and, when enabled, <stem>.betti.csv and one
/// <stem>.witness_<name>.csv per witness. Returns the paths written.
std::vector<std::string> emit_report(const ReportDocument& doc, const std::string& path, bool witness_csvs);

}  // namespace conley::report
