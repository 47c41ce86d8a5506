#include "oracles.hpp"

#include "conley/dynamics/metrics.hpp"
#include "conley/errors.hpp"
#include "conley/homology/homology.hpp"
#include "conley/homology/smith.hpp"
#include "conley/index/connection.hpp"
#include "conley/report/report.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

using namespace conley;
using nlohmann::json;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream note;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            note << " [failed: " << what << "]";
        }
    }
};

std::string scenario(const std::string& name) { return std::string(CONLEY_SCENARIO_DIR) + "/" + name + ".json"; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct TripleSlice {
    homology::CubicalSet N1, N2, N3;
};

TripleSlice triple_slice(const report::ScenarioConfig& cfg, std::size_t s) {
    const auto G = report::build_graph(cfg);
    const auto n = G.slice_count();
    const auto T = pairs::build_index_triple(cfg.N.realize(G.grid(), n), cfg.N_A->realize(G.grid(), n), G, cfg.margin);
    const auto TT = pairs::thicken_triple(T, G, cfg.thickening);
    return {TT.N1.closure(s, G.grid()), TT.N2.closure(s, G.grid()), TT.N3.closure(s, G.grid())};
}

bool all_zero(const json& ranks) {
    for (const auto& r : ranks)
        if (r.get<std::size_t>() != 0) return false;
    return true;
}

Outcome saddle_index() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto cfg = report::load_config(scenario("saddle2d"));
    const auto doc = report::run_scenario(cfg);
    const double t = seconds_since(t0);
    const auto& K = doc.body["index"]["K"];
    o.require(K["status"] == "ok", "index computed");
    o.require(K["ranks"] == json({0, 1, 0}), "ranks [0,1,0]");
    o.require(K["k0"] == cfg.burn_in, "k0 = burn_in");
    o.require(t < 30.0, "runtime < 30 s");

    // Independent ranks of the stabilized slice pair.
    const auto G = report::build_graph(cfg);
    const auto N = cfg.N.realize(G.grid(), G.slice_count());
    const auto P = pairs::thicken_exit(pairs::build_index_pair(N, G, cfg.margin), G, cfg.thickening);
    const std::size_t k0 = cfg.burn_in;
    const auto betti = oracle::relative_betti_mod2(P.N1.closure(k0, G.grid()), P.N2.closure(k0, G.grid()), 2);
    o.require(betti == std::vector<std::size_t>{0, 1, 0}, "oracle ranks of the slice pair");
    o.note << "ranks " << K["ranks"].dump() << ", k0 " << K["k0"] << ", oracle " << json(betti).dump() << ", "
           << t << " s";
    return o;
}

Outcome logistic_connection() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    auto cfg = report::load_config(scenario("logistic1d"));
    const auto doc = report::run_scenario(cfg, false);
    const double t = seconds_since(t0);
    const auto& b = doc.body;
    o.require(b["boundary_ranks"] == json({0, 1}), "boundary rank exactly 1 in degree 1");
    o.require(b["les"]["exact"] == true, "LES exact");
    o.require(b["index"]["K"]["orbit_witness"]["found"] == true, "orbit witness in K");
    o.require(b["index"]["A"]["orbit_witness"]["found"] == true, "orbit witness in A");
    o.require(b["index"]["R"]["orbit_witness"]["found"] == true, "orbit witness in R");
    o.require(b["connection_witness"]["found"] == true, "connection witness");
    o.require(t < 30.0, "runtime < 30 s");

    // Hand model with 11 generators: N1 = [0,5], N2 = [0,1] u [3,5], N3 = [0,1].
    auto seg = [](int a, int b) {
        std::vector<homology::ElementaryCube> e;
        for (int i = a; i < b; ++i) e.push_back(homology::ElementaryCube{{i, false}});
        return homology::CubicalSet::closure_of(1, e);
    };
    const auto h1 = seg(0, 5), h2 = seg(0, 1).united_with(seg(3, 5)), h3 = seg(0, 1);
    const auto model = oracle::connecting_rank_mod2(h1, h2, h3, 1, 1);
    o.require(model == 1, "hand model rank 1");
    o.require(homology::snake_connecting(h1, h2, h3, homology::Ring::F2).rank(1) == model, "library on hand model");

    const auto slice = b["les"]["slice"].get<std::size_t>();
    const auto ts = triple_slice(cfg, slice);
    const auto pipeline = oracle::connecting_rank_mod2(ts.N1, ts.N2, ts.N3, 1, 1);
    o.require(pipeline == 1, "oracle on the pipeline triple");
    o.note << "boundary ranks " << b["boundary_ranks"].dump() << ", oracle " << pipeline << ", " << t << " s";
    return o;
}

Outcome disconnected() {
    Outcome o;
    const auto cfg = report::load_config(scenario("disconnected"));
    const auto doc = report::run_scenario(cfg, false);
    const auto& b = doc.body;
    o.require(b["boundary_ranks"].is_array() && all_zero(b["boundary_ranks"]), "boundary zero in all degrees");
    const auto& uc = b["uniform_connectedness"];
    o.require(uc["verdict"] == "not uniformly connected", "verdict");
    o.require(uc["witness_slice"].is_number(), "witness slice present");
    if (uc["witness_slice"].is_number()) {
        const auto k = uc["witness_slice"].get<std::size_t>();
        o.require(k >= cfg.burn_in, "witness slice after burn-in");
        const auto G = report::build_graph(cfg);
        const auto n = G.slice_count();
        const auto K = pairs::invariant_part(cfg.N.realize(G.grid(), n), G, cfg.margin);
        const auto UA = cfg.U_A->realize(G.grid(), n), UR = cfg.U_R->realize(G.grid(), n);
        bool covered = true;
        for (auto q : K.slice(k)) covered = covered && (UA.contains(k, q) || UR.contains(k, q));
        o.require(covered, "K inside U_A u U_R at the witness slice");
        const auto ts = triple_slice(cfg, b["les"]["slice"].get<std::size_t>());
        o.require(oracle::connecting_rank_mod2(ts.N1, ts.N2, ts.N3, 1, 1) == 0, "oracle boundary rank 0");
    }
    o.note << "boundary ranks " << b["boundary_ranks"].dump() << ", witness slice " << uc["witness_slice"];
    return o;
}

Outcome perturbation() {
    Outcome o;
    const auto base = report::load_config(scenario("logistic1d"));
    const std::vector<double> eps{0.0, 0.01, 0.02, 0.05};
    for (double e : eps) {
        auto cfg = base;
        cfg.sweep = {e};
        const auto t0 = std::chrono::steady_clock::now();
        const auto row = report::run_sweep(cfg).at(0);
        const double t = seconds_since(t0);
        const std::string tag = "eps " + std::to_string(e) + ": ";
        o.require(row["boundary_ranks"] == json({0, 1}), tag + "boundary rank 1");
        o.require(row["orbit_in_N_R"] == true, tag + "solution in N_R");
        o.require(row["orbit_in_N_A"] == true, tag + "solution in N_A");
        o.require(row["connection_witness"] == true, tag + "connection witness outside U_A u U_R");
        o.require(t < 60.0, tag + "runtime < 60 s");
        o.note << " eps=" << e << " d_unif=" << row["d_unif"].get<double>() << " (" << t << " s)";
    }
    return o;
}

Outcome h_embedding() {
    Outcome o;
    double worst = 0.0;
    for (int n = 2; n <= 4; ++n)
        for (int i = -10000; i <= 10000; ++i) {
            const double s = i * 1e-3;
            worst = std::max(worst, std::abs(dynamics::h_eval(dynamics::t_n(n) + s) - s));
        }
    o.require(worst <= 1e-3, "|h(t_n + s) - s| <= 1e-3");
    bool zero = true;
    for (double t : {0.0, -0.0, -1e-300, -1e-9, -0.5, -1.0, -3.0, -1e6})
        zero = zero && dynamics::h_eval(t) == 0.0;
    for (int i = 0; i <= 1000; ++i) zero = zero && dynamics::h_eval(-i * 0.01) == 0.0;
    o.require(zero, "h(t) = 0 for t <= 0");
    o.note << "max deviation " << worst;
    return o;
}

Outcome metrics() {
    Outcome o;
    using dynamics::ScalarForcing;
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> amp(-2.0, 2.0), freq(0.05, 4.0), phase(0.0, 6.283185307179586);
    auto random_forcing = [&] {
        const double a = amp(rng), w = freq(rng), p = phase(rng), c = amp(rng);
        return ScalarForcing::of_time([=](double t) { return a * std::sin(w * t + p) + c; });
    };
    bool self = true;
    for (int i = 0; i < 10; ++i) {
        const auto g = random_forcing();
        self = self && dynamics::metric_d(g, g) == 0.0;
    }
    o.require(self, "d(g,g) = 0");
    const auto one = ScalarForcing::of_time([](double t) { return std::cos(t) + 1.0; });
    const auto zero = ScalarForcing::of_time([](double t) { return std::cos(t); });
    const double half = dynamics::metric_d(one, zero);
    o.require(std::abs(half - 0.5) <= std::ldexp(1.0, -40), "constant offset gives 0.5");
    std::size_t violations = 0;
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const auto a = random_forcing(), b = random_forcing(), c = random_forcing();
        const double excess = dynamics::metric_d(a, b) - dynamics::metric_d(a, c) - dynamics::metric_d(c, b);
        worst = std::max(worst, excess);
        if (excess > 1e-12) ++violations;
    }
    o.require(violations == 0, "triangle inequality on 1000 triples");
    o.note << "offset d = " << half << ", worst triangle excess " << worst;
    return o;
}

Outcome homological_algebra() {
    Outcome o;
    std::mt19937 rng(500);
    std::size_t dd_fail = 0, euler_fail = 0, sets = 0;
    while (sets < 500) {
        const std::size_t dim = 1 + sets % 3;
        const int side = dim == 1 ? 12 : (dim == 2 ? 5 : 3);
        std::bernoulli_distribution keep(0.35);
        std::vector<homology::ElementaryCube> tops;
        std::vector<std::int32_t> idx(dim, 0);
        for (;;) {
            if (keep(rng)) tops.push_back(homology::ElementaryCube::full(idx));
            std::size_t k = 0;
            while (k < dim && ++idx[k] == side) idx[k++] = 0;
            if (k == dim) break;
        }
        const auto set = homology::CubicalSet::closure_of(dim, tops);
        if (set.size() > 200) continue;
        ++sets;
        for (std::size_t n = 2; n <= dim; ++n) {
            const auto dd = homology::boundary_matrix(set, n - 1) * homology::boundary_matrix(set, n);
            for (std::size_t i = 0; i < dd.rows(); ++i)
                for (std::size_t j = 0; j < dd.cols(); ++j)
                    if (dd(i, j) != 0) {
                        ++dd_fail;
                        i = dd.rows();
                        break;
                    }
        }
        long chi_cells = 0, chi_q = 0, chi_z = 0;
        const auto hq = homology::relative_homology(set, homology::CubicalSet(dim), homology::Ring::Q);
        const auto hz = homology::relative_homology(set, homology::CubicalSet(dim), homology::Ring::Z);
        for (std::size_t n = 0; n <= dim; ++n) {
            const long sign = n % 2 == 0 ? 1 : -1;
            chi_cells += sign * static_cast<long>(set.cubes_of_dimension(n).size());
            chi_q += sign * static_cast<long>(hq.rank(n));
            chi_z += sign * static_cast<long>(hz.rank(n));
        }
        if (chi_cells != chi_q || chi_cells != chi_z) ++euler_fail;
    }
    o.require(dd_fail == 0, "boundary of boundary vanishes");
    o.require(euler_fail == 0, "Euler characteristic identity");

    std::uniform_int_distribution<int> entry(-3, 3);
    std::size_t snf_fail = 0;
    for (int trial = 0; trial < 200; ++trial) {
        homology::IntMatrix m(4, 4);
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j) m(i, j) = entry(rng);
        const auto snf = homology::smith_normal_form(m);
        bool ok = snf.U * m * snf.V == snf.S;
        std::int64_t prev = 1;
        std::size_t k = 1;
        for (auto d : snf.invariant_factors()) {
            const auto dk = oracle::determinantal_divisor(m, k);
            ok = ok && d * prev == dk;
            prev = dk;
            ++k;
        }
        if (k <= 4) ok = ok && oracle::determinantal_divisor(m, k) == 0;
        if (!ok) ++snf_fail;
    }
    o.require(snf_fail == 0, "Smith normal form against determinantal divisors");

    // Every LES produced by the pipeline on the bundled scenarios and the sweep.
    std::size_t sequences = 0, inexact = 0;
    for (const char* name : {"logistic1d", "disconnected"}) {
        const auto cfg = report::load_config(scenario(name));
        const auto doc = report::run_scenario(cfg, true);
        const auto& les = doc.body["les"];
        ++sequences;
        if (!(les.contains("exact") && les["exact"] == true)) ++inexact;
        if (doc.body.contains("sweep"))
            for (const auto& row : doc.body["sweep"]) {
                ++sequences;
                for (const auto& d : row["diagnostics"])
                    if (d["stage"] == "les") ++inexact;
                if (row["boundary_ranks"].is_null()) ++inexact;
            }
    }
    o.require(inexact == 0, "pipeline sequences exact");
    o.note << sets << " sets, 200 SNF checks, " << sequences << " pipeline sequences";
    return o;
}

Outcome direct_system_laws() {
    Outcome o;
    std::size_t checked = 0;
    for (const char* name : {"saddle2d", "logistic1d", "disconnected", "attractor1d"}) {
        const auto doc = report::run_scenario(report::load_config(scenario(name)), false);
        for (const auto& [label, block] : doc.body["index"].items()) {
            const std::string tag = std::string(name) + "/" + label;
            o.require(block.contains("laws"), tag + " laws computed");
            if (!block.contains("laws")) continue;
            o.require(block["laws"]["identities"] == true, tag + " identities");
            o.require(block["laws"]["functorial"] == true, tag + " functoriality");
            checked += block["laws"]["checked"].get<std::size_t>();
        }
    }
    o.note << checked << " matrix identities checked";
    return o;
}

Outcome determinism() {
    Outcome o;
    for (const char* name : {"saddle2d", "logistic1d", "disconnected", "attractor1d"}) {
        const auto cfg = report::load_config(scenario(name));
        std::vector<std::string> texts;
        for (const char* threads : {"1", "1", "4", "4"}) {
            setenv("CONLEY_THREADS", threads, 1);
            texts.push_back(report::render_report(report::run_scenario(cfg)));
        }
        bool same = true;
        for (const auto& t : texts) same = same && t == texts[0];
        o.require(same, std::string(name) + " byte-identical");
    }
    unsetenv("CONLEY_THREADS");
    o.note << "4 scenarios x (2 runs at 1 thread + 2 runs at 4 threads)";
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"saddle index", saddle_index},
        {"nontrivial connecting homomorphism", logistic_connection},
        {"trivial boundary without uniform connectedness", disconnected},
        {"perturbation persistence", perturbation},
        {"h-embedding", h_embedding},
        {"metric suite", metrics},
        {"homological algebra properties", homological_algebra},
        {"direct-system laws", direct_system_laws},
        {"determinism", determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.note << " [exception: " << e.what() << "]";
        }
        failures += o.pass ? 0 : 1;
        std::cout << (o.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first << ": " << o.note.str()
                  << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
