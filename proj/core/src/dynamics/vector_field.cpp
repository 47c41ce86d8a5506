#include "conley/dynamics/vector_field.hpp"

#include "conley/errors.hpp"

#include <cmath>
#include <numbers>

namespace conley::dynamics {

double h_eval(double t) {
    if (t <= 0.0) return 0.0;
    const long double s = static_cast<long double>(t) + 1.0L;
    return static_cast<double>(s * std::sin(std::log(s)));
}

double t_n(int n) { return std::expm1(2.0 * std::numbers::pi * n); }

ForcingSpec ForcingSpec::sinusoid(double amplitude, double frequency) {
    ForcingSpec f;
    f.kind = Kind::Sinusoid;
    f.amplitude = amplitude;
    f.frequency = frequency;
    return f;
}

double ForcingSpec::value(double t) const {
    if (kind == Kind::None) return 0.0;
    const double s = h_embedded ? h_eval(t) : t;
    return amplitude * std::sin(frequency * s);
}

ForcingSpec f_dot_h(const ForcingSpec& base) {
    if (base.h_embedded) throw PreconditionError("forcing is already h-embedded");
    ForcingSpec out = base;
    out.h_embedded = true;
    return out;
}

namespace {

struct Entry {
    const char* name;
    std::map<std::string, double> defaults;
};

const std::vector<Entry>& entries() {
    static const std::vector<Entry> table{
        {"saddle2d", {{"lambda_u", 1.0}, {"lambda_s", 1.0}}},
        {"logistic1d", {{"r", 1.0}}},
        {"twowell1d", {{"scale", 1.0}}},
        {"decay", {{"lambda", 1.0}, {"dim", 1.0}}},
        {"translation", {{"v", 1.0}, {"dim", 1.0}}},
        {"polynomial1d", {{"c0", 0.0}, {"c1", 0.0}, {"c2", 0.0}, {"c3", 0.0}, {"c4", 0.0}, {"c5", 0.0}}},
    };
    return table;
}

}  // namespace

std::vector<std::string> VectorField::catalog() {
    std::vector<std::string> out;
    for (const auto& e : entries()) out.emplace_back(e.name);
    return out;
}

VectorField VectorField::from_catalog(const std::string& name, const std::map<std::string, double>& params,
                                      ForcingSpec forcing) {
    const Entry* entry = nullptr;
    std::size_t index = 0;
    for (std::size_t i = 0; i < entries().size(); ++i) {
        if (name == entries()[i].name) {
            entry = &entries()[i];
            index = i;
        }
    }
    if (!entry) throw ConfigError("unknown system '" + name + "'");

    VectorField f;
    f.name_ = name;
    f.kind_ = static_cast<Kind>(index);
    f.params_ = entry->defaults;
    for (const auto& [key, value] : params) {
        if (!entry->defaults.contains(key))
            throw ConfigError("system '" + name + "' has no parameter '" + key + "'");
        if (!std::isfinite(value)) throw ConfigError("parameter '" + key + "' must be finite");
        f.params_[key] = value;
    }
    if (forcing.amplitude < 0.0 || !std::isfinite(forcing.amplitude))
        throw ConfigError("forcing amplitude must be a nonnegative number");
    f.forcing_ = forcing;

    switch (f.kind_) {
        case Kind::Saddle2d: f.dim_ = 2; break;
        case Kind::Decay:
        case Kind::Translation: {
            const double d = f.params_.at("dim");
            if (d < 1 || d > 7 || d != std::floor(d)) throw ConfigError("parameter 'dim' must be an integer in [1, 7]");
            f.dim_ = static_cast<std::size_t>(d);
            break;
        }
        default: f.dim_ = 1;
    }
    switch (f.kind_) {
        case Kind::Saddle2d: f.coeffs_ = {f.params_.at("lambda_u"), f.params_.at("lambda_s")}; break;
        case Kind::Logistic1d: f.coeffs_ = {f.params_.at("r")}; break;
        case Kind::Twowell1d: f.coeffs_ = {f.params_.at("scale")}; break;
        case Kind::Decay: f.coeffs_ = {f.params_.at("lambda")}; break;
        case Kind::Translation: f.coeffs_ = {f.params_.at("v")}; break;
        case Kind::Polynomial1d:
            for (int i = 0; i <= 5; ++i) f.coeffs_.push_back(f.params_.at("c" + std::to_string(i)));
            break;
    }
    return f;
}

VectorField VectorField::with_forcing(ForcingSpec forcing) const {
    VectorField f = *this;
    f.forcing_ = forcing;
    return f;
}

void VectorField::evaluate(double t, std::span<const double> x, std::span<double> dx) const {
    const double g = forcing_.value(t);
    switch (kind_) {
        case Kind::Saddle2d:
            dx[0] = coeffs_[0] * x[0];
            dx[1] = -coeffs_[1] * x[1];
            break;
        case Kind::Logistic1d: dx[0] = coeffs_[0] * x[0] * (1.0 - x[0]); break;
        case Kind::Twowell1d: dx[0] = -coeffs_[0] * x[0] * (x[0] - 1.0) * (x[0] - 2.0); break;
        case Kind::Decay: {
            const double l = coeffs_[0];
            for (std::size_t i = 0; i < dim_; ++i) dx[i] = -l * x[i];
            break;
        }
        case Kind::Translation: {
            const double v = coeffs_[0];
            for (std::size_t i = 0; i < dim_; ++i) dx[i] = v;
            break;
        }
        case Kind::Polynomial1d: {
            double acc = 0.0;
            for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x[0] + *it;
            dx[0] = acc;
            break;
        }
    }
    for (std::size_t i = 0; i < dim_; ++i) dx[i] += g;
}

IntegrationResult rk4_integrate(const VectorField& field, double t0, std::span<const double> x0, double tau,
                                int steps, double safety_bound) {
    if (steps < 1) throw PreconditionError("rk4_integrate needs at least one step");
    const std::size_t d = field.dimension();
    if (x0.size() != d) throw PreconditionError("rk4_integrate: state has the wrong dimension");

    IntegrationResult out{std::vector<double>(x0.begin(), x0.end()), false};
    std::vector<double> k1(d), k2(d), k3(d), k4(d), tmp(d);
    auto& x = out.state;
    const double h = tau / steps;
    auto bad = [&](const std::vector<double>& v) {
        for (double c : v)
            if (!std::isfinite(c) || std::abs(c) > safety_bound) return true;
        return false;
    };
    for (int s = 0; s < steps; ++s) {
        const double t = t0 + s * h;
        field.evaluate(t, x, k1);
        for (std::size_t i = 0; i < d; ++i) tmp[i] = x[i] + 0.5 * h * k1[i];
        field.evaluate(t + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < d; ++i) tmp[i] = x[i] + 0.5 * h * k2[i];
        field.evaluate(t + 0.5 * h, tmp, k3);
        for (std::size_t i = 0; i < d; ++i) tmp[i] = x[i] + h * k3[i];
        field.evaluate(t + h, tmp, k4);
        for (std::size_t i = 0; i < d; ++i) x[i] += h * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) / 6.0;
        if (bad(x)) {
            out.escaped = true;
            return out;
        }
    }
    return out;
}

}  // namespace conley::dynamics
