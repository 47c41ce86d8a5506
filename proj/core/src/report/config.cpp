#include "conley/report/config.hpp"

#include "conley/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace conley::report {

using nlohmann::json;

namespace {

class Checker {
public:
    void error(const std::string& path, const std::string& message) { errors_.push_back(path + ": " + message); }
    bool ok() const { return errors_.empty(); }
    const std::vector<std::string>& errors() const { return errors_; }

    bool object(const json& j, const std::string& path, std::initializer_list<const char*> allowed) {
        if (!j.is_object()) {
            error(path, "must be an object");
            return false;
        }
        const std::set<std::string> keys(allowed.begin(), allowed.end());
        for (const auto& [key, value] : j.items())
            if (!keys.contains(key)) error(path + "." + key, "unknown key");
        return true;
    }

    std::optional<double> number(const json& j, const std::string& path) {
        if (!j.is_number()) {
            error(path, "must be a number");
            return std::nullopt;
        }
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            error(path, "must be finite");
            return std::nullopt;
        }
        return v;
    }

    std::optional<long long> integer(const json& j, const std::string& path) {
        if (!j.is_number_integer()) {
            error(path, "must be an integer");
            return std::nullopt;
        }
        return j.get<long long>();
    }

    std::optional<bool> boolean(const json& j, const std::string& path) {
        if (!j.is_boolean()) {
            error(path, "must be true or false");
            return std::nullopt;
        }
        return j.get<bool>();
    }

    std::optional<std::string> string(const json& j, const std::string& path) {
        if (!j.is_string()) {
            error(path, "must be a string");
            return std::nullopt;
        }
        return j.get<std::string>();
    }

    std::vector<double> numbers(const json& j, const std::string& path) {
        std::vector<double> out;
        if (!j.is_array()) {
            error(path, "must be a list of numbers");
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i)
            if (auto v = number(j[i], path + "[" + std::to_string(i) + "]")) out.push_back(*v);
        return out;
    }

private:
    std::vector<std::string> errors_;
};

const json* member(const json& j, const char* key) {
    if (!j.is_object()) return nullptr;
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

std::optional<Box> parse_box(Checker& c, const json& j, const std::string& path, const ScenarioConfig& cfg) {
    if (!c.object(j, path, {"lower", "upper"})) return std::nullopt;
    const auto* lo = member(j, "lower");
    const auto* hi = member(j, "upper");
    if (!lo || !hi) {
        c.error(path, "a box needs lower and upper");
        return std::nullopt;
    }
    Box b{c.numbers(*lo, path + ".lower"), c.numbers(*hi, path + ".upper")};
    const std::size_t d = cfg.lower.size();
    if (b.lower.size() != d || b.upper.size() != d) {
        c.error(path, "box dimension must match the grid");
        return std::nullopt;
    }
    for (std::size_t i = 0; i < d; ++i) {
        const double slack = 1e-9 * (cfg.upper[i] - cfg.lower[i]);
        if (b.lower[i] >= b.upper[i]) c.error(path, "lower must be below upper on every axis");
        if (b.lower[i] < cfg.lower[i] - slack || b.upper[i] > cfg.upper[i] + slack)
            c.error(path, "box lies outside the grid");
    }
    return b;
}

std::vector<Box> parse_box_list(Checker& c, const json& j, const std::string& path, const ScenarioConfig& cfg) {
    std::vector<Box> out;
    if (!j.is_array()) {
        c.error(path, "must be a list of boxes");
        return out;
    }
    for (std::size_t i = 0; i < j.size(); ++i)
        if (auto b = parse_box(c, j[i], path + "[" + std::to_string(i) + "]", cfg)) out.push_back(*b);
    return out;
}

std::optional<RegionSpec> parse_region(Checker& c, const json& j, const std::string& path,
                                       const ScenarioConfig& cfg) {
    RegionSpec r;
    if (j.is_array()) {
        r.constant = parse_box_list(c, j, path, cfg);
        return r;
    }
    if (!c.object(j, path, {"per_slice"})) return std::nullopt;
    const auto* ps = member(j, "per_slice");
    if (!ps || !ps->is_array()) {
        c.error(path + ".per_slice", "must be a list of box lists");
        return std::nullopt;
    }
    if (ps->size() != cfg.slices + 1)
        c.error(path + ".per_slice", "needs one box list per slice (" + std::to_string(cfg.slices + 1) + ")");
    for (std::size_t k = 0; k < ps->size(); ++k)
        r.per_slice.push_back(parse_box_list(c, (*ps)[k], path + ".per_slice[" + std::to_string(k) + "]", cfg));
    if (r.per_slice.empty()) return std::nullopt;
    return r;
}

json box_json(const Box& b) { return {{"lower", b.lower}, {"upper", b.upper}}; }

json region_json(const RegionSpec& r) {
    auto list = [](const std::vector<Box>& boxes) {
        json out = json::array();
        for (const auto& b : boxes) out.push_back(box_json(b));
        return out;
    };
    if (!r.is_per_slice()) return list(r.constant);
    json ps = json::array();
    for (const auto& s : r.per_slice) ps.push_back(list(s));
    return {{"per_slice", ps}};
}

}  // namespace

pairs::SlicedCubeSet RegionSpec::realize(const dynamics::Grid& grid, std::size_t slice_count) const {
    pairs::SlicedCubeSet out(slice_count, grid.cube_count());
    for (std::size_t k = 0; k < slice_count; ++k) {
        const auto& boxes = is_per_slice() ? per_slice.at(k) : constant;
        for (const auto& b : boxes)
            for (auto q : grid.cells_in_box(b.lower, b.upper)) out.insert(k, q);
    }
    return out;
}

dynamics::Grid ScenarioConfig::grid() const { return dynamics::Grid(lower, upper, divisions); }

json ScenarioConfig::echo() const {
    json forcing_json = {{"kind", forcing.kind == dynamics::ForcingSpec::Kind::None ? "none" : "sinusoid"},
                         {"amplitude", forcing.amplitude},
                         {"frequency", forcing.frequency},
                         {"h_embedded", forcing.h_embedded}};
    json regions = {{"N", region_json(N)}};
    if (N_A) regions["N_A"] = region_json(*N_A);
    if (N_R) regions["N_R"] = region_json(*N_R);
    if (U_A) regions["U_A"] = region_json(*U_A);
    if (U_R) regions["U_R"] = region_json(*U_R);
    json j = {
        {"system", {{"name", name}, {"params", params}, {"forcing", forcing_json}}},
        {"grid", {{"lower", lower}, {"upper", upper}, {"divisions", divisions}, {"padding", padding}}},
        {"time", {{"tau", tau}, {"slices", slices}, {"burn_in", burn_in}, {"margin", margin}, {"rk4_steps", rk4_steps}}},
        {"regions", regions},
        {"homology", {{"ring", homology::to_string(ring)}, {"thickening_m", thickening}}},
        {"output", {{"path", output_path}, {"emit_matrices", emit_matrices}, {"emit_witness_csv", emit_witness_csv}}},
    };
    if (!sweep.empty()) j["sweep"] = {{"amplitudes", sweep}};
    return j;
}

ScenarioConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    Checker c;
    ScenarioConfig cfg;
    if (!c.object(root, "config", {"system", "grid", "time", "regions", "homology", "sweep", "output"}))
        throw ConfigError(c.errors().front());

    auto require = [&](const json& parent, const char* key, const std::string& path) -> const json* {
        const auto* m = member(parent, key);
        if (!m) c.error(path + "." + key, "missing");
        return m;
    };

    if (const auto* sys = require(root, "system", "config"); sys && c.object(*sys, "system", {"name", "params", "forcing"})) {
        if (const auto* n = require(*sys, "name", "system"))
            if (auto s = c.string(*n, "system.name")) cfg.name = *s;
        if (const auto* p = member(*sys, "params")) {
            if (!p->is_object()) c.error("system.params", "must be an object");
            else
                for (const auto& [key, value] : p->items())
                    if (auto v = c.number(value, "system.params." + key)) cfg.params[key] = *v;
        }
        if (const auto* f = member(*sys, "forcing");
            f && c.object(*f, "system.forcing", {"kind", "amplitude", "frequency", "h_embedded"})) {
            std::string kind = "sinusoid";
            if (const auto* k = member(*f, "kind"))
                if (auto s = c.string(*k, "system.forcing.kind")) kind = *s;
            double amplitude = 0.0, frequency = 1.0;
            if (const auto* a = member(*f, "amplitude"))
                if (auto v = c.number(*a, "system.forcing.amplitude")) amplitude = *v;
            if (const auto* w = member(*f, "frequency"))
                if (auto v = c.number(*w, "system.forcing.frequency")) frequency = *v;
            bool embedded = false;
            if (const auto* h = member(*f, "h_embedded"))
                if (auto v = c.boolean(*h, "system.forcing.h_embedded")) embedded = *v;
            if (amplitude < 0.0) c.error("system.forcing.amplitude", "must be nonnegative");
            if (kind == "none") {
                cfg.forcing = {};
                cfg.forcing.h_embedded = embedded;
            } else if (kind == "sinusoid") {
                cfg.forcing = dynamics::ForcingSpec::sinusoid(amplitude, frequency);
                if (embedded) cfg.forcing = dynamics::f_dot_h(cfg.forcing);
            } else {
                c.error("system.forcing.kind", "must be none or sinusoid");
            }
        }
    }

    bool grid_ok = false;
    if (const auto* g = require(root, "grid", "config");
        g && c.object(*g, "grid", {"lower", "upper", "divisions", "padding"})) {
        const std::size_t before = c.errors().size();
        if (const auto* lo = require(*g, "lower", "grid")) cfg.lower = c.numbers(*lo, "grid.lower");
        if (const auto* hi = require(*g, "upper", "grid")) cfg.upper = c.numbers(*hi, "grid.upper");
        if (const auto* dv = require(*g, "divisions", "grid")) {
            if (!dv->is_array()) c.error("grid.divisions", "must be a list of integers");
            else
                for (std::size_t i = 0; i < dv->size(); ++i)
                    if (auto v = c.integer((*dv)[i], "grid.divisions[" + std::to_string(i) + "]")) {
                        if (*v < 1 || *v > 100000) c.error("grid.divisions[" + std::to_string(i) + "]", "must be in [1, 100000]");
                        else cfg.divisions.push_back(static_cast<int>(*v));
                    }
        }
        if (const auto* p = member(*g, "padding"))
            if (auto v = c.integer(*p, "grid.padding")) {
                if (*v < 0 || *v > 16) c.error("grid.padding", "must be in [0, 16]");
                else cfg.padding = static_cast<int>(*v);
            }
        if (c.errors().size() == before) {
            const std::size_t d = cfg.lower.size();
            if (d < 1 || d > 7) c.error("grid.lower", "dimension must be between 1 and 7");
            else if (cfg.upper.size() != d || cfg.divisions.size() != d)
                c.error("grid", "lower, upper and divisions must have the same length");
            else {
                grid_ok = true;
                for (std::size_t i = 0; i < d; ++i)
                    if (cfg.lower[i] >= cfg.upper[i]) {
                        c.error("grid.upper", "must exceed grid.lower on every axis");
                        grid_ok = false;
                    }
            }
        }
    }

    bool time_ok = false;
    if (const auto* t = require(root, "time", "config");
        t && c.object(*t, "time", {"tau", "slices", "burn_in", "margin", "rk4_steps"})) {
        const std::size_t before = c.errors().size();
        if (const auto* tau = require(*t, "tau", "time"))
            if (auto v = c.number(*tau, "time.tau")) {
                cfg.tau = *v;
                if (*v <= 0.0) c.error("time.tau", "time.tau must be positive");
            }
        if (const auto* s = require(*t, "slices", "time"))
            if (auto v = c.integer(*s, "time.slices")) {
                if (*v < 2 || *v > 10000) c.error("time.slices", "must be in [2, 10000]");
                else cfg.slices = static_cast<std::size_t>(*v);
            }
        if (const auto* m = member(*t, "margin"))
            if (auto v = c.integer(*m, "time.margin")) {
                if (*v < 0) c.error("time.margin", "must be nonnegative");
                else cfg.margin = static_cast<std::size_t>(*v);
            }
        if (const auto* r = member(*t, "rk4_steps"))
            if (auto v = c.integer(*r, "time.rk4_steps")) {
                if (*v < 1 || *v > 100000) c.error("time.rk4_steps", "must be in [1, 100000]");
                else cfg.rk4_steps = static_cast<int>(*v);
            }
        cfg.burn_in = cfg.slices / 2;
        if (const auto* b = member(*t, "burn_in"))
            if (auto v = c.integer(*b, "time.burn_in")) {
                if (*v < 0) c.error("time.burn_in", "must be nonnegative");
                else cfg.burn_in = static_cast<std::size_t>(*v);
            }
        if (c.errors().size() == before) {
            time_ok = true;
            if (cfg.burn_in >= cfg.slices) {
                c.error("time.burn_in", "must be below time.slices");
                time_ok = false;
            }
            if (2 * cfg.margin >= cfg.slices) {
                c.error("time.margin", "twice the margin must be below time.slices");
                time_ok = false;
            }
        }
    }

    if (const auto* h = member(root, "homology"); h && c.object(*h, "homology", {"ring", "thickening_m"})) {
        if (const auto* r = member(*h, "ring"))
            if (auto s = c.string(*r, "homology.ring")) {
                try {
                    cfg.ring = homology::parse_ring(*s);
                } catch (const ConfigError&) {
                    c.error("homology.ring", "must be F2, Q or Z");
                }
            }
        if (const auto* m = member(*h, "thickening_m"))
            if (auto v = c.integer(*m, "homology.thickening_m")) {
                if (*v < 0 || *v > 1000) c.error("homology.thickening_m", "must be in [0, 1000]");
                else cfg.thickening = static_cast<std::uint32_t>(*v);
            }
    }

    if (const auto* s = member(root, "sweep"); s && c.object(*s, "sweep", {"amplitudes"})) {
        if (const auto* a = require(*s, "amplitudes", "sweep")) {
            cfg.sweep = c.numbers(*a, "sweep.amplitudes");
            for (double v : cfg.sweep)
                if (v < 0.0) c.error("sweep.amplitudes", "amplitudes must be nonnegative");
        }
    }

    if (const auto* o = member(root, "output");
        o && c.object(*o, "output", {"path", "emit_matrices", "emit_witness_csv"})) {
        if (const auto* p = member(*o, "path"))
            if (auto s = c.string(*p, "output.path")) cfg.output_path = *s;
        if (const auto* m = member(*o, "emit_matrices"))
            if (auto v = c.boolean(*m, "output.emit_matrices")) cfg.emit_matrices = *v;
        if (const auto* w = member(*o, "emit_witness_csv"))
            if (auto v = c.boolean(*w, "output.emit_witness_csv")) cfg.emit_witness_csv = *v;
    }

    if (grid_ok && !cfg.name.empty()) {
        try {
            const auto field = dynamics::VectorField::from_catalog(cfg.name, cfg.params, cfg.forcing);
            if (field.dimension() != cfg.lower.size())
                c.error("system", "field dimension " + std::to_string(field.dimension()) +
                                      " does not match the grid dimension " + std::to_string(cfg.lower.size()));
        } catch (const ConfigError& e) {
            c.error("system", e.what());
        }
    }

    if (const auto* r = require(root, "regions", "config");
        r && c.object(*r, "regions", {"N", "N_A", "N_R", "U_A", "U_R"}) && grid_ok && time_ok) {
        auto region = [&](const char* key) -> std::optional<RegionSpec> {
            const auto* m = member(*r, key);
            if (!m) return std::nullopt;
            return parse_region(c, *m, std::string("regions.") + key, cfg);
        };
        if (!member(*r, "N")) c.error("regions.N", "missing");
        else if (auto n = region("N")) cfg.N = *n;
        cfg.N_A = region("N_A");
        cfg.N_R = region("N_R");
        cfg.U_A = region("U_A");
        cfg.U_R = region("U_R");
        if (cfg.N_A.has_value() != cfg.N_R.has_value()) c.error("regions", "N_A and N_R must be given together");
        if (cfg.U_A.has_value() != cfg.U_R.has_value()) c.error("regions", "U_A and U_R must be given together");
        if (c.ok() && cfg.U_A) {
            const auto grid = cfg.grid();
            const auto ua = cfg.U_A->realize(grid, cfg.slices + 1);
            const auto ur = cfg.U_R->realize(grid, cfg.slices + 1);
            const auto both = ua.intersected_with(ur);
            for (std::size_t k = 0; k <= cfg.slices; ++k)
                if (both.slice_size(k) > 0) {
                    c.error("regions.U_A", "U_A and U_R must be disjoint neighbourhoods (they share cells at slice " +
                                               std::to_string(k) + ")");
                    break;
                }
        }
    }

    if (!c.ok()) {
        std::string message;
        for (const auto& e : c.errors()) message += (message.empty() ? "" : "\n") + e;
        throw ConfigError(message);
    }
    return cfg;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

std::string fnv1a_hex(const std::string& text) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

}  // namespace conley::report
