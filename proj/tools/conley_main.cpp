#include "CLI11.hpp"

#include "conley/errors.hpp"
#include "conley/index/conley_index.hpp"
#include "conley/report/report.hpp"

#include <iostream>

using namespace conley;

namespace {

constexpr int kOk = 0;
constexpr int kHard = 1;
constexpr int kConfig = 2;

int cmd_validate(const std::string& path) {
    report::load_config(path);
    std::cout << "ok: " << path << "\n";
    return kOk;
}

int cmd_run(const std::string& path, std::string out) {
    const auto cfg = report::load_config(path);
    if (out.empty()) out = cfg.output_path.empty() ? "report.json" : cfg.output_path;
    const auto doc = report::run_scenario(cfg);
    for (const auto& f : report::emit_report(doc, out, cfg.emit_witness_csv)) std::cerr << "wrote " << f << "\n";
    for (const auto& d : doc.body["diagnostics"])
        std::cerr << "[" << d["code"].get<int>() << "] " << d["stage"].get<std::string>() << ": "
                  << d["message"].get<std::string>() << "\n";
    return doc.hard_error ? kHard : kOk;
}

int cmd_homology(const std::string& path, std::size_t slice) {
    const auto cfg = report::load_config(path);
    if (slice > cfg.slices) throw ConfigError("--slice must be at most time.slices");
    const auto G = report::build_graph(cfg);
    const auto N = cfg.N.realize(G.grid(), G.slice_count());
    const auto P = pairs::thicken_exit(pairs::build_index_pair(N, G, cfg.margin), G, cfg.thickening);
    const auto h = index::slice_pair_homology(P, G.grid(), slice, cfg.ring);
    nlohmann::json j = {{"slice", slice}, {"ring", homology::to_string(cfg.ring)}, {"ranks", h.ranks()},
                        {"N1_cubes", P.N1.slice_size(slice)}, {"N2_cubes", P.N2.slice_size(slice)}};
    if (cfg.ring == homology::Ring::Z) {
        nlohmann::json t = nlohmann::json::array();
        for (std::size_t n = 0; n < h.degree_count(); ++n) t.push_back(h.torsion(n));
        j["torsion"] = t;
    }
    std::cout << j.dump(2) << "\n";
    return kOk;
}

int cmd_sweep(const std::string& path, const std::string& out) {
    const auto cfg = report::load_config(path);
    if (cfg.sweep.empty()) throw ConfigError("sweep.amplitudes: missing or empty");
    nlohmann::json doc = {{"version", report::kVersion},
                          {"config_hash", report::fnv1a_hex(cfg.echo().dump())},
                          {"scenario", cfg.echo()},
                          {"sweep", report::run_sweep(cfg)}};
    const auto text = doc.dump(2) + "\n";
    if (out.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(out, std::ios::binary | std::ios::trunc);
        if (!(f << text)) throw Error("cannot write " + out);
        std::cerr << "wrote " << out << "\n";
    }
    return kOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Nonautonomous Conley index computations on cubical grids"};
    app.set_version_flag("--version", report::kVersion);
    app.require_subcommand(1);

    std::string config, out;
    std::size_t slice = 0;

    auto* run = app.add_subcommand("run", "Run the full pipeline and write a report");
    run->add_option("--config", config, "Scenario file")->required();
    run->add_option("--out", out, "Report path (default: output.path or report.json)");

    auto* validate = app.add_subcommand("validate", "Parse and validate a scenario");
    validate->add_option("--config", config, "Scenario file")->required();

    auto* hom = app.add_subcommand("homology", "Homology of the index pair at one slice");
    hom->add_option("--config", config, "Scenario file")->required();
    hom->add_option("--slice", slice, "Slice index")->required();

    auto* sweep = app.add_subcommand("sweep", "Perturbation sweep over forcing amplitudes");
    sweep->add_option("--config", config, "Scenario file")->required();
    sweep->add_option("--out", out, "Output path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (*run) return cmd_run(config, out);
        if (*validate) return cmd_validate(config);
        if (*hom) return cmd_homology(config, slice);
        if (*sweep) return cmd_sweep(config, out);
    } catch (const ConfigError& e) {
        std::cerr << "config error:\n" << e.what() << "\n";
        return kConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kHard;
    }
    return kHard;
}
