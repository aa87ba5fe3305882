#include "lohseg/model.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "lohseg/errors.hpp"

namespace lohseg {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void check_prob(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw ValidationError(std::string(name) + " must lie in [0,1], got " +
                              std::to_string(v));
}

void check_shape(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ValidationError(std::string(name) +
                              " must be a positive finite real, got " +
                              std::to_string(v));
}

// log(exp(a) + exp(b)); either argument may be -inf.
double log_add(double a, double b) {
    if (a == kNegInf) return b;
    if (b == kNegInf) return a;
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

} // namespace

void MixtureModel::validate() const {
    check_prob(hetWeight, "hetWeight");
    check_prob(lower.theta0, "theta0");
    check_prob(upper.theta1, "theta1");
    check_shape(lower.shapeB, "shapeB");
    check_shape(upper.shapeA, "shapeA");
}

TBafSequence::TBafSequence(std::vector<double> values, double snapEps)
    : values_(std::move(values)) {
    for (std::size_t i = 0; i < values_.size(); ++i) {
        double& v = values_[i];
        if (!(v >= -snapEps && v <= 1.0 + snapEps))
            throw ValidationError("tBAF value out of range at index " +
                                  std::to_string(i) + ": " + std::to_string(v));
        if (v <= snapEps)
            v = 0.0;
        else if (v >= 1.0 - snapEps)
            v = 1.0;
    }
}

TBafSequence tbaf_transform(const std::vector<double>& baf, double snapEps) {
    std::vector<double> out;
    out.reserve(baf.size());
    for (std::size_t i = 0; i < baf.size(); ++i) {
        const double x = baf[i];
        if (!(x >= -snapEps && x <= 1.0 + snapEps))
            throw ValidationError("BAF value out of range at index " +
                                  std::to_string(i) + ": " + std::to_string(x));
        double y = 2.0 * std::abs(x - 0.5);
        if (y > 1.0) y = 1.0; // only reachable through the snap allowance
        out.push_back(y);
    }
    return TBafSequence(std::move(out), snapEps);
}

double log_density(const MixtureModel& model, double y) {
    if (!(y >= 0.0 && y <= 1.0))
        throw ValidationError("tBAF value outside [0,1]: " + std::to_string(y));
    const double w = model.hetWeight;
    if (y == 0.0) return std::log(w * model.lower.theta0);
    if (y == 1.0) return std::log((1.0 - w) * model.upper.theta1);
    const double b = model.lower.shapeB;
    const double a = model.upper.shapeA;
    const double logLower = std::log(w) + std::log1p(-model.lower.theta0) +
                            std::log(b) + (b - 1.0) * std::log1p(-y);
    const double logUpper = std::log(1.0 - w) + std::log1p(-model.upper.theta1) +
                            std::log(a) + (a - 1.0) * std::log(y);
    return log_add(logLower, logUpper);
}

TBafSequence sample(const MixtureModel& model, std::size_t n, Rng& rng) {
    std::vector<double> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.bernoulli(model.hetWeight)) {
            if (rng.bernoulli(model.lower.theta0))
                out.push_back(0.0);
            else
                out.push_back(1.0 - std::pow(rng.uniform_open(),
                                             1.0 / model.lower.shapeB));
        } else {
            if (rng.bernoulli(model.upper.theta1))
                out.push_back(1.0);
            else
                out.push_back(std::pow(rng.uniform_open(),
                                       1.0 / model.upper.shapeA));
        }
    }
    return TBafSequence(std::move(out));
}

MixtureModel derive_loh_model(const MixtureModel& base, double delta) {
    if (!(delta >= 0.0 && delta < 1.0))
        throw ValidationError("delta must lie in [0,1), got " +
                              std::to_string(delta));
    MixtureModel out = base;
    out.hetWeight = delta * base.hetWeight;
    return out;
}

MixtureModel floored(const MixtureModel& model) {
    const auto clamp = [](double v) {
        if (v < kProbEps) return kProbEps;
        if (v > 1.0 - kProbEps) return 1.0 - kProbEps;
        return v;
    };
    MixtureModel out = model;
    out.hetWeight = clamp(out.hetWeight);
    out.lower.theta0 = clamp(out.lower.theta0);
    out.upper.theta1 = clamp(out.upper.theta1);
    return out;
}

} // namespace lohseg
