#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace conley::dynamics {

/// h(t) = (t+1) sin ln(t+1) for t > 0 and 0 for t <= 0.
double h_eval(double t);
/// t_n = e^{2 pi n} - 1, the zeros of h used for shifted evaluation.
double t_n(int n);

/// Time-dependent additive forcing, added to every component of the field.
struct ForcingSpec {
    enum class Kind { None, Sinusoid };

    Kind kind = Kind::None;
    double amplitude = 0.0;  // state units per time unit
    double frequency = 1.0;  // radians per time unit
    bool h_embedded = false;

    static ForcingSpec sinusoid(double amplitude, double frequency = 1.0);

    /// epsilon * sin(omega * s) with s = h(t) when embedded, s = t otherwise.
    double value(double t) const;
    bool is_autonomous() const noexcept { return kind == Kind::None || amplitude == 0.0; }

    friend bool operator==(const ForcingSpec&, const ForcingSpec&) = default;
};

/// Evaluation at time t delegates to the base forcing at h(t).
/// Throws PreconditionError when the forcing is already embedded.
ForcingSpec f_dot_h(const ForcingSpec& base);

/// Builtin polynomial vector fields plus a forcing term.
///
///   saddle2d      x' = lambda_u x, y' = -lambda_s y       (lambda_u, lambda_s; default 1)
///   logistic1d    x' = r x (1 - x)                        (r; default 1)
///   twowell1d     x' = -scale x (x - 1)(x - 2)            (scale; default 1)
///   decay         x' = -lambda x in every component        (lambda, dim; default 1, 1)
///   translation   x' = v in every component                (v, dim; default 1, 1)
///   polynomial1d  x' = c0 + c1 x + ... + c5 x^5            (c0..c5; default 0)
class VectorField {
public:
    /// Throws ConfigError on an unknown name, unknown parameter or bad value.
    static VectorField from_catalog(const std::string& name, const std::map<std::string, double>& params,
                                    ForcingSpec forcing = {});
    static std::vector<std::string> catalog();

    const std::string& name() const noexcept { return name_; }
    const std::map<std::string, double>& params() const noexcept { return params_; }
    const ForcingSpec& forcing() const noexcept { return forcing_; }
    std::size_t dimension() const noexcept { return dim_; }

    VectorField with_forcing(ForcingSpec forcing) const;

    void evaluate(double t, std::span<const double> x, std::span<double> dx) const;

private:
    enum class Kind { Saddle2d, Logistic1d, Twowell1d, Decay, Translation, Polynomial1d };

    std::string name_;
    Kind kind_ = Kind::Decay;
    std::map<std::string, double> params_;
    std::vector<double> coeffs_;
    std::size_t dim_ = 1;
    ForcingSpec forcing_;
};

struct IntegrationResult {
    std::vector<double> state;
    bool escaped = false;
};

/// Classical RK4 with `steps` equal substeps over [t0, t0 + tau]. Non-finite
/// values or states beyond `safety_bound` in any component set the escape flag.
IntegrationResult rk4_integrate(const VectorField& field, double t0, std::span<const double> x0, double tau,
                                int steps, double safety_bound = 1e6);

}  // namespace conley::dynamics
