#include "doctest.h"

#include "conley/dynamics/metrics.hpp"
#include "conley/dynamics/transition_graph.hpp"
#include "conley/errors.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <set>

using namespace conley::dynamics;

namespace {

VectorField decay(double lambda, int dim = 1) {
    return VectorField::from_catalog("decay", {{"lambda", lambda}, {"dim", dim}});
}

std::set<CubeId> compose(const SliceMap& first, const SliceMap& second, CubeId q) {
    std::set<CubeId> out;
    for (auto a : first.images[q])
        for (auto b : second.images[a]) out.insert(b);
    return out;
}

}  // namespace

TEST_CASE("rk4 on constant fields") {
    const std::vector<double> x0{0.3};
    CHECK(rk4_integrate(decay(0.0), 0.0, x0, 2.5, 7).state[0] == 0.3);
    const auto one = VectorField::from_catalog("translation", {{"v", 1.0}});
    CHECK(rk4_integrate(one, 0.0, x0, 0.5, 1).state[0] == 0.8);
}

TEST_CASE("rk4 matches the exponential") {
    const auto grow = VectorField::from_catalog("polynomial1d", {{"c1", 1.0}});
    const std::vector<double> x0{1.0};
    CHECK(std::abs(rk4_integrate(grow, 0.0, x0, 0.1, 1).state[0] - std::exp(0.1)) < 1e-7);
}

TEST_CASE("rk4 flags blow-up as escape") {
    const auto blow = VectorField::from_catalog("polynomial1d", {{"c2", 1.0}});
    const std::vector<double> x0{10.0};
    CHECK(rk4_integrate(blow, 0.0, x0, 1.0, 50).escaped);
    CHECK_THROWS_AS(rk4_integrate(blow, 0.0, x0, 1.0, 0), conley::PreconditionError);
}

TEST_CASE("catalog validation") {
    CHECK_THROWS_AS(VectorField::from_catalog("lorenz", {}), conley::ConfigError);
    CHECK_THROWS_AS(VectorField::from_catalog("saddle2d", {{"r", 1.0}}), conley::ConfigError);
    CHECK(VectorField::from_catalog("saddle2d", {}).dimension() == 2);
    CHECK(decay(1.0, 3).dimension() == 3);
}

TEST_CASE("grid cells and boxes") {
    const Grid g({-1.0, -1.0}, {1.0, 1.0}, {16, 16});
    CHECK(g.cube_count() == 256);
    const std::vector<std::int32_t> c{3, 5};
    CHECK(g.coords(g.id(c)) == c);
    CHECK(g.id(c) == 3 * 16 + 5);
    const auto [lo, hi] = g.box_of(g.id(c));
    CHECK(lo[0] == doctest::Approx(-0.625));
    CHECK(hi[1] == doctest::Approx(-0.25));
    const std::vector<double> blo{-0.25, -0.25}, bhi{0.25, 0.25};
    CHECK(g.cells_in_box(blo, bhi).size() == 16);
    for (std::size_t i = 1; i < 256; ++i) CHECK(g.cube(static_cast<CubeId>(i - 1)) < g.cube(static_cast<CubeId>(i)));
}

TEST_CASE("identity dynamics maps every cube to itself without padding") {
    const Grid g({0.0}, {2.0}, {8});
    const auto m = outer_approximation(decay(0.0), g, 0, 0.5, 0);
    for (CubeId q = 0; q < 8; ++q) CHECK(m.images[q] == std::vector<CubeId>{q});
    const auto p = outer_approximation(decay(0.0), g, 0, 0.5, 1);
    CHECK(p.images[4] == std::vector<CubeId>{3, 4, 5});
    CHECK(p.images[0] == std::vector<CubeId>{0, 1});
}

TEST_CASE("contraction image follows the corner oracle") {
    const Grid g({-1.0}, {1.0}, {8});
    const auto m = outer_approximation(decay(1.0), g, 0, 0.5, 0);
    const double lo = std::exp(-0.5) * 0.75, hi = std::exp(-0.5) * 1.0;
    std::vector<CubeId> expected;
    for (CubeId j = 0; j < 8; ++j) {
        const double a = -1.0 + 0.25 * j, b = a + 0.25;
        if (a < hi && b > lo) expected.push_back(j);
    }
    CHECK(m.images[7] == expected);
    CHECK_FALSE(m.escaped[7]);
}

TEST_CASE("padding enlarges images monotonically") {
    const Grid g({-1.0, -1.0}, {1.0, 1.0}, {8, 8});
    const auto f = VectorField::from_catalog("saddle2d", {});
    const auto m0 = outer_approximation(f, g, 0, 0.2, 0);
    const auto m1 = outer_approximation(f, g, 0, 0.2, 1);
    for (CubeId q = 0; q < g.cube_count(); ++q) {
        CHECK(m0.escaped[q] == m1.escaped[q]);
        CHECK(std::includes(m1.images[q].begin(), m1.images[q].end(), m0.images[q].begin(), m0.images[q].end()));
    }
}

TEST_CASE("escaping cubes are flagged") {
    const Grid g({0.0}, {1.0}, {4});
    const auto m = outer_approximation(VectorField::from_catalog("translation", {{"v", 1.0}}), g, 0, 0.3, 0);
    CHECK(m.escaped[3]);
    CHECK(m.images[3].empty());
    CHECK_FALSE(m.escaped[0]);
}

TEST_CASE("two half steps cover one full step for exponential growth") {
    const Grid g({-1.0, -1.0}, {1.0, 1.0}, {16, 16});
    const auto f = VectorField::from_catalog("saddle2d", {});
    const auto full = outer_approximation(f, g, 0, 0.2, 1);
    const auto half0 = outer_approximation(f, g, 0, 0.1, 1);
    const auto half1 = outer_approximation(f, g, 1, 0.1, 1);
    for (CubeId q = 0; q < g.cube_count(); ++q) {
        if (full.escaped[q]) continue;
        bool any_escape = half0.escaped[q];
        for (auto a : half0.images[q]) any_escape = any_escape || half1.escaped[a];
        if (any_escape) continue;
        const auto two = compose(half0, half1, q);
        for (auto c : full.images[q]) CHECK(two.contains(c));
    }
}

TEST_CASE("transition graph build is deterministic") {
    const Grid g({-0.5}, {1.5}, {40});
    const auto f = VectorField::from_catalog("logistic1d", {}, ForcingSpec::sinusoid(0.02));
    const TimeSlicing s{0.25, 6, 8};
    const auto a = TransitionGraph::build(f, g, s, 0);
    const auto b = TransitionGraph::build(f, g, s, 0);
    CHECK(a == b);
    CHECK(a.slice_count() == 7);
    CHECK(a.successor_slice(6) == 6);
    CHECK(a.successor_slice(2) == 3);
}

TEST_CASE("h vanishes on the nonpositive axis and near the zeros t_n") {
    for (double t : {-5.0, -1.0, -1e-300, 0.0}) CHECK(h_eval(t) == 0.0);
    for (int n = 1; n <= 4; ++n) CHECK(std::abs(h_eval(t_n(n))) < 1e-6 * t_n(n));
    for (int n = 2; n <= 4; ++n) {
        double worst = 0.0;
        for (int i = 0; i <= 2000; ++i) {
            const double s = -10.0 + 0.01 * i;
            worst = std::max(worst, std::abs(h_eval(t_n(n) + s) - s));
        }
        CHECK(worst <= 1e-3);
    }
}

TEST_CASE("f.h composes forcing with h") {
    const auto base = ForcingSpec::sinusoid(1.0);
    const auto fh = f_dot_h(base);
    CHECK(fh.h_embedded);
    CHECK_THROWS_AS(f_dot_h(fh), conley::PreconditionError);
    CHECK(std::abs(fh.value(t_n(2))) < 1e-6);
    CHECK(fh.value(1.7) == std::sin(h_eval(1.7)));
    const ForcingSpec none;
    CHECK(f_dot_h(none).value(123.0) == none.value(123.0));
    for (int n = 2; n <= 4; ++n)
        for (double s = -10.0; s <= 10.0; s += 0.5) CHECK(std::abs(fh.value(t_n(n) + s) - base.value(s)) <= 1e-3);
}

TEST_CASE("seminorms and metrics on closed-form cases") {
    const auto zero = ScalarForcing::of_time([](double) { return 0.0; });
    const auto one = ScalarForcing::of_time([](double) { return 1.0; });
    const auto sine = ScalarForcing::of_time([](double t) { return std::sin(t); });
    CHECK(seminorm_delta(3, sine, sine) == 0.0);
    for (int n = 1; n <= 5; ++n) CHECK(seminorm_delta(n, one, zero) == 1.0);
    CHECK(std::abs(seminorm_delta(1, sine, zero) - std::sin(1.0)) < 1e-4);
    CHECK(metric_d(sine, sine) == 0.0);
    CHECK(std::abs(metric_d(one, zero) - 0.5) <= std::ldexp(1.0, -40));
    CHECK(metric_d_unif(sine, sine) == 0.0);
    CHECK(metric_d_unif(one, zero) == 1.0);
    const auto eps = ScalarForcing::of_time([](double t) { return 0.05 * std::sin(t); });
    CHECK(std::abs(metric_d_unif(eps, zero) - 0.05) < 1e-4);
}

TEST_CASE("metric d is symmetric, bounded and satisfies the triangle inequality") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> amp(-2.0, 2.0), freq(0.1, 3.0), phase(0.0, 6.28);
    auto random_forcing = [&] {
        const double a = amp(rng), w = freq(rng), p = phase(rng), c = amp(rng);
        return ScalarForcing::of_time([=](double t) { return a * std::sin(w * t + p) + c; });
    };
    for (int i = 0; i < 20; ++i) {
        const auto a = random_forcing(), b = random_forcing(), c = random_forcing();
        const double ab = metric_d(a, b);
        CHECK(ab == metric_d(b, a));
        CHECK(ab <= 1.0);
        CHECK(ab <= metric_d(a, c) + metric_d(c, b) + 1e-12);
    }
}

TEST_CASE("seminorm samples u when the forcing depends on it") {
    const ScalarForcing gu{[](double, double u) { return u; }, true};
    const auto zero = ScalarForcing::of_time([](double) { return 0.0; });
    CHECK(seminorm_delta(2, gu, zero) == 2.0);
}
