#pragma once

#include "conley/dynamics/vector_field.hpp"

#include <functional>

namespace conley::dynamics {

inline constexpr int kSeminormSamples = 2001;
/// metric_d sums n = 1..kMetricTerms; the neglected tail is at most 2^-40.
inline constexpr int kMetricTerms = 40;
/// metric_d_unif samples |t|, |u| <= kUniformRadius.
inline constexpr int kUniformRadius = 100;

/// Scalar forcing g(t, u); the u argument is ignored unless depends_on_u.
struct ScalarForcing {
    std::function<double(double, double)> fn;
    bool depends_on_u = false;

    static ScalarForcing of_time(std::function<double(double)> g);
    static ScalarForcing from_spec(const ForcingSpec& spec);

    double operator()(double t, double u) const { return fn(t, u); }
};

/// Sampled sup of |g1 - g2| over |t|, |u| <= n.
double seminorm_delta(int n, const ScalarForcing& g1, const ScalarForcing& g2);

/// Sum over n of 2^-n delta_n / (1 + delta_n), truncated at kMetricTerms.
double metric_d(const ScalarForcing& g1, const ScalarForcing& g2);

/// Sampled sup of |g1 - g2| over |t|, |u| <= kUniformRadius (a lower bound).
double metric_d_unif(const ScalarForcing& g1, const ScalarForcing& g2);

}  // namespace conley::dynamics
