#include "conley/dynamics/metrics.hpp"

#include "conley/errors.hpp"

#include <algorithm>
#include <cmath>

namespace conley::dynamics {

ScalarForcing ScalarForcing::of_time(std::function<double(double)> g) {
    return {[g = std::move(g)](double t, double) { return g(t); }, false};
}

ScalarForcing ScalarForcing::from_spec(const ForcingSpec& spec) {
    return {[spec](double t, double) { return spec.value(t); }, false};
}

double seminorm_delta(int n, const ScalarForcing& g1, const ScalarForcing& g2) {
    if (n < 1) throw PreconditionError("seminorm index must be >= 1");
    const bool with_u = g1.depends_on_u || g2.depends_on_u;
    const int us = with_u ? kSeminormSamples : 1;
    double sup = 0.0;
    for (int i = 0; i < kSeminormSamples; ++i) {
        const double t = -n + 2.0 * n * i / (kSeminormSamples - 1);
        for (int j = 0; j < us; ++j) {
            const double u = with_u ? -n + 2.0 * n * j / (kSeminormSamples - 1) : 0.0;
            sup = std::max(sup, std::abs(g1(t, u) - g2(t, u)));
        }
    }
    return sup;
}

double metric_d(const ScalarForcing& g1, const ScalarForcing& g2) {
    double sum = 0.0;
    for (int n = 1; n <= kMetricTerms; ++n) {
        const double delta = seminorm_delta(n, g1, g2);
        sum += std::ldexp(1.0, -n) * delta / (1.0 + delta);
    }
    return sum;
}

double metric_d_unif(const ScalarForcing& g1, const ScalarForcing& g2) {
    // Nested sample grids of growing radius up to kUniformRadius.
    double sup = 0.0;
    for (int n : {1, 2, 5, 10, 20, 50, kUniformRadius}) sup = std::max(sup, seminorm_delta(n, g1, g2));
    return sup;
}

}  // namespace conley::dynamics
