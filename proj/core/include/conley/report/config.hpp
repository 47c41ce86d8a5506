#pragma once

#include "conley/dynamics/grid.hpp"
#include "conley/dynamics/vector_field.hpp"
#include "conley/homology/ring.hpp"
#include "conley/pairs/sliced_cube_set.hpp"

#include <nlohmann/json.hpp>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace conley::report {

struct Box {
    std::vector<double> lower;
    std::vector<double> upper;
};

/// Either one box list for every slice or one list per slice.
struct RegionSpec {
    std::vector<Box> constant;
    std::vector<std::vector<Box>> per_slice;

    bool is_per_slice() const noexcept { return !per_slice.empty(); }
    pairs::SlicedCubeSet realize(const dynamics::Grid& grid, std::size_t slice_count) const;
};

struct ScenarioConfig {
    std::string name;
    std::map<std::string, double> params;
    dynamics::ForcingSpec forcing;

    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<int> divisions;
    int padding = 1;

    double tau = 0.0;
    std::size_t slices = 0;  // last slice index K
    std::size_t burn_in = 0;
    std::size_t margin = 1;
    int rk4_steps = 8;

    RegionSpec N;
    std::optional<RegionSpec> N_A, N_R, U_A, U_R;

    homology::Ring ring = homology::Ring::F2;
    std::uint32_t thickening = 1;

    std::vector<double> sweep;

    std::string output_path;
    bool emit_matrices = false;
    bool emit_witness_csv = true;

    /// Canonical re-serialization with every default filled in.
    nlohmann::json echo() const;
    dynamics::Grid grid() const;
};

/// Parses and validates a scenario. Collects every problem found and throws
/// ConfigError listing them by key path.
ScenarioConfig parse_config(const std::string& text);
ScenarioConfig load_config(const std::string& path);

/// 64-bit FNV-1a of a string, as 16 hex digits.
std::string fnv1a_hex(const std::string& text);

}  // namespace conley::report
