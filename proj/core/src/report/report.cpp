#include "conley/report/report.hpp"

#include "conley/dynamics/metrics.hpp"
#include "conley/errors.hpp"
#include "conley/parallel.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>

namespace conley::report {

using nlohmann::json;
using homology::GradedMap;
using homology::Matrix;
using pairs::SlicedCubeSet;

namespace {

struct Diagnostics {
    json entries = json::array();
    bool hard = false;

    bool stage(const std::string& name, const std::function<void()>& body) {
        try {
            body();
            return true;
        } catch (const IrregularConstruction& e) {
            add(name, Code::IrregularConstruction, "IrregularConstruction", e.what());
        } catch (const NonIsomorphicInclusion& e) {
            add(name, Code::NonIsomorphicInclusion, "NonIsomorphicInclusion", e.what());
        } catch (const NotStabilized& e) {
            add(name, Code::NotStabilized, "NotStabilized", e.what());
        } catch (const NoConnection& e) {
            add(name, Code::NoConnection, "NoConnection", e.what());
        } catch (const NotIsolating& e) {
            add(name, Code::NotIsolating, "NotIsolating", e.what());
        } catch (const PreconditionError& e) {
            add(name, Code::Precondition, "PreconditionError", e.what());
        } catch (const UnsupportedRing& e) {
            add(name, Code::UnsupportedRing, "UnsupportedRing", e.what());
        } catch (const InternalConsistencyError& e) {
            add(name, Code::InternalConsistency, "InternalConsistencyError", e.what());
            hard = true;
        } catch (const SizeLimitExceeded& e) {
            add(name, Code::SizeLimit, "SizeLimitExceeded", e.what());
            hard = true;
        } catch (const Error& e) {
            add(name, Code::Other, "Error", e.what());
            hard = true;
        }
        return false;
    }

    void add(const std::string& stage, Code code, const char* kind, const std::string& message) {
        entries.push_back({{"stage", stage}, {"code", static_cast<int>(code)}, {"kind", kind}, {"message", message}});
    }
};

json matrix_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(homology::scalar_to_string(m(r, c)));
        rows.push_back(row);
    }
    return rows;
}

json graded_map_json(const GradedMap& g) {
    json blocks = json::array();
    for (std::size_t n = 0; n < g.domain_ranks().size(); ++n) blocks.push_back(matrix_json(g.block(n)));
    return {{"shift", g.shift()}, {"domain_ranks", g.domain_ranks()}, {"codomain_ranks", g.codomain_ranks()},
            {"blocks", blocks}};
}

json path_json(const index::Path& p, const dynamics::Grid& grid) {
    json out = json::array();
    for (const auto& s : p) out.push_back({{"slice", s.slice}, {"cube", s.cube}, {"coords", grid.coords(s.cube)}});
    return out;
}

bool all_zero(const std::vector<std::size_t>& v) {
    return std::all_of(v.begin(), v.end(), [](std::size_t x) { return x == 0; });
}

dynamics::ForcingSpec swept_forcing(const dynamics::ForcingSpec& base, double eps) {
    const double w = base.kind == dynamics::ForcingSpec::Kind::Sinusoid ? base.frequency : 1.0;
    auto f = dynamics::ForcingSpec::sinusoid(eps, w);
    return base.h_embedded ? dynamics::f_dot_h(f) : f;
}

struct BlockResult {
    bool isolating = false;
    std::optional<pairs::IndexPair> pair;
    std::optional<index::ConleyIndexResult> limit;
    std::optional<index::Path> orbit;
    json doc = json::object();
};

class Analysis {
public:
    Analysis(const ScenarioConfig& cfg, const dynamics::TransitionGraph& G) : cfg_(cfg), G_(G) {}

    json run(bool detailed) {
        const std::size_t slices = G_.slice_count();
        const auto& grid = G_.grid();
        const auto N = cfg_.N.realize(grid, slices);
        json out;

        auto K = block("K", N, detailed);
        out["index"]["K"] = K.doc;
        std::optional<BlockResult> A, R;
        std::optional<SlicedCubeSet> NA, NR;
        if (cfg_.N_A) {
            NA = cfg_.N_A->realize(grid, slices);
            NR = cfg_.N_R->realize(grid, slices);
            A = block("A", *NA, detailed);
            R = block("R", *NR, detailed);
            out["index"]["A"] = A->doc;
            out["index"]["R"] = R->doc;
        }

        std::optional<std::vector<std::size_t>> boundary;
        if (NA) {
            std::size_t s = cfg_.burn_in;
            for (const auto* b : {&K, &*A, &*R})
                if (b->limit) s = std::max(s, b->limit->k0);
            json les_doc;
            diag_.stage("les", [&] {
                const auto T = pairs::build_index_triple(N, *NA, G_, cfg_.margin);
                const auto les = index::les_of_triple(T, G_, cfg_.thickening, cfg_.ring, s);
                boundary = les.boundary_ranks();
                les_doc = {{"slice", s},
                           {"ranks_N1_N3", les.ranks13},
                           {"ranks_N2_N3", les.ranks23},
                           {"ranks_N1_N2", les.ranks12},
                           {"i_ranks", les.i.ranks()},
                           {"p_ranks", les.p.ranks()},
                           {"boundary_ranks", les.boundary_ranks()},
                           {"exact", les.exactness.exact},
                           {"nodes_checked", les.exactness.nodes.size()}};
                if (cfg_.emit_matrices && detailed) les_doc["boundary_map"] = graded_map_json(les.d);
            });
            out["les"] = les_doc;
            out["boundary_ranks"] = boundary ? json(*boundary) : json(nullptr);
        }

        const auto Kinv = pairs::invariant_part(N, G_, cfg_.margin);
        const std::size_t last = G_.last_slice() - std::min(cfg_.margin, G_.last_slice());
        const std::size_t first = std::min(cfg_.burn_in, last);
        std::optional<SlicedCubeSet> Ainv, Rinv;
        if (NA) {
            Ainv = pairs::invariant_part(*NA, G_, cfg_.margin);
            Rinv = pairs::invariant_part(*NR, G_, cfg_.margin);
            diag_.stage("attractor_repeller", [&] {
                const auto v = pairs::verify_ar_decomposition(Kinv, Ainv->intersected_with(Kinv),
                                                              Rinv->intersected_with(Kinv), G_);
                out["attractor_repeller"] = {{"ok", v.ok}, {"violations", v.violations}};
            });
        }

        std::optional<bool> uniformly;
        if (cfg_.U_A) {
            const auto UA = cfg_.U_A->realize(grid, slices);
            const auto UR = cfg_.U_R->realize(grid, slices);
            diag_.stage("uniform_connectedness", [&] {
                const auto uc = index::uniform_connectedness(Kinv, UA, UR, first, last);
                uniformly = uc.uniformly_connected;
                json gaps = json::array();
                for (const auto& g : uc.gap_cubes) gaps.push_back({{"slice", g.slice}, {"cube", g.cube}});
                out["uniform_connectedness"] = {
                    {"verdict", uc.uniformly_connected ? "uniformly connected" : "not uniformly connected"},
                    {"uniformly_connected", uc.uniformly_connected},
                    {"degenerate", uc.degenerate},
                    {"witness_slice", uc.witness_slice ? json(*uc.witness_slice) : json(nullptr)},
                    {"gap_cubes", gaps},
                    {"first_slice", uc.first},
                    {"last_slice", uc.last}};
            });
        }

        if (NA) {
            const SlicedCubeSet none(slices, grid.cube_count());
            const auto UA = cfg_.U_A ? cfg_.U_A->realize(grid, slices) : none;
            const auto UR = cfg_.U_R ? cfg_.U_R->realize(grid, slices) : none;
            json cw = {{"found", false}};
            diag_.stage("connection_witness", [&] {
                const auto path = index::connection_witness(Kinv, Ainv->intersected_with(Kinv),
                                                            Rinv->intersected_with(Kinv), UA, UR, G_,
                                                            std::min(cfg_.margin, last), last);
                std::optional<std::size_t> gap;
                for (const auto& s : path)
                    if (!UA.contains(s.slice, s.cube) && !UR.contains(s.slice, s.cube)) {
                        gap = s.slice;
                        break;
                    }
                cw = {{"found", true}, {"length", path.size()}, {"first_gap_slice", *gap}};
                witnesses_.push_back({"connection", path});
            });
            out["connection_witness"] = cw;
            connection_found_ = cw["found"].get<bool>();
        }

        json checks = json::object();
        if (boundary && uniformly)
            checks["not_uniformly_connected_implies_trivial_boundary"] = *uniformly || all_zero(*boundary);
        if (K.limit) checks["detector_consistent"] = all_zero(K.limit->ranks) || K.orbit.has_value();
        out["checks"] = checks;

        boundary_ = boundary;
        uniformly_ = uniformly;
        orbit_A_ = A && A->orbit;
        orbit_R_ = R && R->orbit;
        isolating_ = {{"K", K.isolating}};
        if (A) isolating_["A"] = A->isolating;
        if (R) isolating_["R"] = R->isolating;
        limits_ = {{"K", K.limit ? json(K.limit->ranks) : json(nullptr)}};
        if (A) limits_["A"] = A->limit ? json(A->limit->ranks) : json(nullptr);
        if (R) limits_["R"] = R->limit ? json(R->limit->ranks) : json(nullptr);
        return out;
    }

    Diagnostics diag_;
    std::vector<NamedPath> witnesses_;
    std::vector<BettiRow> betti_;
    std::optional<std::vector<std::size_t>> boundary_;
    std::optional<bool> uniformly_;
    bool orbit_A_ = false, orbit_R_ = false, connection_found_ = false;
    json limits_, isolating_;

private:
    BlockResult block(const std::string& label, const SlicedCubeSet& N, bool detailed) {
        BlockResult b;
        const auto& grid = G_.grid();
        const std::string stage = "index." + label;
        const auto iso = pairs::isolating_check(N, G_, cfg_.margin);
        b.isolating = iso.isolating;
        json touching = json::array();
        for (std::size_t i = 0; i < std::min<std::size_t>(iso.touching.size(), 20); ++i)
            touching.push_back({{"slice", iso.touching[i].first}, {"cube", iso.touching[i].second}});
        b.doc["isolation"] = {{"isolating", iso.isolating}, {"touching", touching},
                              {"touching_count", iso.touching.size()}};
        if (!iso.isolating) {
            diag_.add(stage, Code::NotIsolating, "NotIsolating",
                      "invariant part touches the boundary of N at slice " + std::to_string(iso.touching[0].first) +
                          ", cube " + std::to_string(iso.touching[0].second));
            b.doc["status"] = "failed";
            return b;
        }
        pairs::IndexPair thick;
        if (!diag_.stage(stage, [&] {
                b.pair = pairs::build_index_pair(N, G_, cfg_.margin);
                thick = pairs::thicken_exit(*b.pair, G_, cfg_.thickening);
            })) {
            b.doc["status"] = "failed";
            return b;
        }
        b.doc["pair_sizes"] = {{"N1", b.pair->N1.size()}, {"N2", b.pair->N2.size()}, {"N2_thickened", thick.N2.size()}};

        const std::size_t slices = G_.slice_count();
        std::vector<std::optional<homology::GradedHomology>> hs(slices);
        const bool ok = diag_.stage(stage + ".slices", [&] {
            parallel_for(slices, [&](std::size_t k) { hs[k] = index::slice_pair_homology(thick, grid, k, cfg_.ring); });
        });
        if (ok) {
            json betti = json::array();
            for (std::size_t k = 0; k < slices; ++k) {
                betti.push_back(hs[k]->ranks());
                if (detailed) betti_.push_back({label, k, hs[k]->ranks()});
            }
            b.doc["slice_betti"] = betti;
            if (cfg_.ring == homology::Ring::Z) {
                json torsion = json::array();
                for (std::size_t k = 0; k < slices; ++k) {
                    json t = json::array();
                    for (std::size_t n = 0; n < hs[k]->degree_count(); ++n) t.push_back(hs[k]->torsion(n));
                    torsion.push_back(t);
                }
                b.doc["slice_torsion"] = torsion;
            }
        }

        diag_.stage(stage + ".limit", [&] {
            const auto system = index::slice_homology_system(thick, grid, cfg_.burn_in, cfg_.ring);
            const auto laws = index::check_direct_system_laws(system);
            b.doc["laws"] = {{"identities", laws.identities},
                             {"functorial", laws.functorial},
                             {"checked", laws.checked},
                             {"failures", laws.failures}};
            std::size_t failed = 0;
            for (const auto& t : system.transitions) failed += t.map ? 0 : 1;
            b.doc["transitions"] = {{"computed", system.transitions.size()}, {"non_invertible", failed}};
            if (cfg_.emit_matrices && detailed) {
                json maps = json::array();
                for (const auto& t : system.transitions)
                    if (t.l == t.k + 1 && t.map)
                        maps.push_back({{"k", t.k}, {"l", t.l}, {"map", graded_map_json(*t.map)}});
                b.doc["transition_matrices"] = maps;
            }
            b.limit = index::direct_limit(system);
            b.doc["k0"] = b.limit->k0;
            b.doc["ranks"] = b.limit->ranks;
            b.doc["stabilization_witnesses"] = b.limit->witnesses.size();
            if (cfg_.ring == homology::Ring::F2) {
                const auto q = index::slice_pair_homology(thick, grid, b.limit->k0, homology::Ring::Q).ranks();
                b.doc["q_ranks"] = q;
                b.doc["mod2_discrepancy"] = q != b.limit->ranks;
            }
        });
        b.doc["status"] = b.limit ? "ok" : "failed";

        b.orbit = index::orbit_detector(*b.pair, G_, cfg_.burn_in);
        b.doc["orbit_witness"] = b.orbit ? json{{"found", true}, {"start_slice", b.orbit->front().slice},
                                                {"length", b.orbit->size()}}
                                         : json{{"found", false}};
        if (b.orbit) witnesses_.push_back({"orbit_" + label, *b.orbit});
        return b;
    }

    const ScenarioConfig& cfg_;
    const dynamics::TransitionGraph& G_;
};

json sweep_row(const ScenarioConfig& base, double eps) {
    auto cfg = base;
    cfg.forcing = swept_forcing(base.forcing, eps);
    cfg.emit_matrices = false;
    const auto g0 = dynamics::ScalarForcing::from_spec(base.forcing);
    const auto g1 = dynamics::ScalarForcing::from_spec(cfg.forcing);
    json row = {{"amplitude", eps}, {"d", dynamics::metric_d(g0, g1)}, {"d_unif", dynamics::metric_d_unif(g0, g1)},
                {"d_unif_sampled_lower_bound", true}};
    Diagnostics outer;
    outer.stage("sweep", [&] {
        const auto G = build_graph(cfg);
        Analysis a(cfg, G);
        a.run(false);
        bool all = true;
        for (const auto& [name, value] : a.isolating_.items()) all = all && value.get<bool>();
        row["isolating"] = all;
        row["isolating_blocks"] = a.isolating_;
        row["limit_ranks"] = a.limits_;
        row["boundary_ranks"] = a.boundary_ ? json(*a.boundary_) : json(nullptr);
        row["uniformly_connected"] = a.uniformly_ ? json(*a.uniformly_) : json(nullptr);
        row["orbit_in_N_R"] = a.orbit_R_;
        row["orbit_in_N_A"] = a.orbit_A_;
        row["connection_witness"] = a.connection_found_;
        row["diagnostics"] = a.diag_.entries;
    });
    if (!outer.entries.empty()) row["diagnostics"] = outer.entries;
    return row;
}

}  // namespace

dynamics::TransitionGraph build_graph(const ScenarioConfig& config) {
    const auto field = dynamics::VectorField::from_catalog(config.name, config.params, config.forcing);
    return dynamics::TransitionGraph::build(field, config.grid(), {config.tau, config.slices, config.rk4_steps},
                                            config.padding);
}

json run_sweep(const ScenarioConfig& config) {
    json rows = json::array();
    for (double eps : config.sweep) rows.push_back(sweep_row(config, eps));
    return rows;
}

ReportDocument run_scenario(const ScenarioConfig& config, bool with_sweep) {
    ReportDocument doc;
    doc.grid = config.grid();
    const auto echo = config.echo();
    doc.body["version"] = kVersion;
    doc.body["scenario"] = echo;
    doc.body["config_hash"] = fnv1a_hex(echo.dump());

    const auto G = build_graph(config);
    std::size_t escaped = 0;
    for (std::size_t k = 0; k < G.slice_count(); ++k)
        for (auto e : G.slice_map(k).escaped) escaped += e ? 1 : 0;
    doc.body["graph"] = {{"slices", G.slice_count()}, {"cubes", G.grid().cube_count()}, {"escaped_cubes", escaped}};

    Analysis a(config, G);
    doc.body.update(a.run(true));
    doc.witnesses = a.witnesses_;
    doc.betti = a.betti_;
    json wj = json::object();
    for (const auto& w : doc.witnesses) wj[w.name] = path_json(w.path, doc.grid);
    doc.body["witnesses"] = wj;
    if (with_sweep && !config.sweep.empty()) doc.body["sweep"] = run_sweep(config);
    doc.body["diagnostics"] = a.diag_.entries;
    doc.hard_error = a.diag_.hard;
    return doc;
}

std::string render_report(const ReportDocument& doc) { return doc.body.dump(2) + "\n"; }

std::string witness_csv(const index::Path& path, const dynamics::Grid& grid) {
    std::ostringstream out;
    out.precision(17);
    const std::size_t d = grid.dimension();
    out << "step,slice,cube";
    for (std::size_t i = 0; i < d; ++i) out << ",c" << i;
    for (std::size_t i = 0; i < d; ++i) out << ",lower" << i;
    for (std::size_t i = 0; i < d; ++i) out << ",upper" << i;
    out << "\n";
    for (std::size_t s = 0; s < path.size(); ++s) {
        out << s << "," << path[s].slice << "," << path[s].cube;
        for (auto c : grid.coords(path[s].cube)) out << "," << c;
        const auto [lo, hi] = grid.box_of(path[s].cube);
        for (double v : lo) out << "," << v;
        for (double v : hi) out << "," << v;
        out << "\n";
    }
    return out.str();
}

std::string betti_csv(const std::vector<BettiRow>& rows) {
    std::size_t degrees = 0;
    for (const auto& r : rows) degrees = std::max(degrees, r.ranks.size());
    std::ostringstream out;
    out << "pair,slice";
    for (std::size_t n = 0; n < degrees; ++n) out << ",b" << n;
    out << "\n";
    for (const auto& r : rows) {
        out << r.pair << "," << r.slice;
        for (std::size_t n = 0; n < degrees; ++n) out << "," << (n < r.ranks.size() ? r.ranks[n] : 0);
        out << "\n";
    }
    return out.str();
}

std::vector<std::string> emit_report(const ReportDocument& doc, const std::string& path, bool witness_csvs) {
    namespace fs = std::filesystem;
    std::vector<std::pair<std::string, std::string>> files{{path, render_report(doc)}};
    if (witness_csvs) {
        const fs::path p(path);
        const auto stem = (p.parent_path() / p.stem()).string();
        files.emplace_back(stem + ".betti.csv", betti_csv(doc.betti));
        for (const auto& w : doc.witnesses)
            files.emplace_back(stem + ".witness_" + w.name + ".csv", witness_csv(w.path, doc.grid));
    }
    std::vector<std::string> written;
    for (const auto& [name, text] : files) {
        std::ofstream out(name, std::ios::binary | std::ios::trunc);
        if (!out) throw Error("cannot open " + name + " for writing");
        out << text;
        if (!out) throw Error("write failed: " + name);
        written.push_back(name);
    }
    return written;
}

}  // namespace conley::report
