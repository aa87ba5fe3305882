#include "lohseg/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "lohseg/errors.hpp"

namespace lohseg {

namespace {

// Clamp for logs of continuous observations.
constexpr double kLogGuard = 1e-12;

struct Prepared {
    std::vector<double> y; // ascending copy; makes the fit permutation-invariant
    std::size_t zeros = 0;
    std::size_t ones = 0;
    std::size_t contBegin = 0; // continuous observations occupy [contBegin, contEnd)
    std::size_t contEnd = 0;
};

Prepared prepare(const TBafSequence& data) {
    Prepared p;
    p.y = data.values();
    std::sort(p.y.begin(), p.y.end());
    p.contBegin = static_cast<std::size_t>(
        std::upper_bound(p.y.begin(), p.y.end(), 0.0) - p.y.begin());
    p.contEnd = static_cast<std::size_t>(
        std::lower_bound(p.y.begin(), p.y.end(), 1.0) - p.y.begin());
    p.zeros = p.contBegin;
    p.ones = p.y.size() - p.contEnd;
    return p;
}

double clamp_unit(double y) {
    if (y < kLogGuard) return kLogGuard;
    if (y > 1.0 - kLogGuard) return 1.0 - kLogGuard;
    return y;
}

MixtureModel default_init(const Prepared& p) {
    const double n = static_cast<double>(p.y.size());
    const std::size_t below = static_cast<std::size_t>(
        std::lower_bound(p.y.begin(), p.y.end(), 0.5) - p.y.begin());
    MixtureModel m;
    m.hetWeight = static_cast<double>(below) / n;
    m.lower.theta0 =
        (p.zeros > 0 && below > 0)
            ? static_cast<double>(p.zeros) / static_cast<double>(below)
            : 0.05;
    const std::size_t atLeastHalf = p.y.size() - below;
    m.upper.theta1 =
        (p.ones > 0 && atLeastHalf > 0)
            ? static_cast<double>(p.ones) / static_cast<double>(atLeastHalf)
            : 0.05;
    m.lower.shapeB = 2.0;
    m.upper.shapeA = 2.0;
    return m;
}

double log_likelihood(const MixtureModel& m, const Prepared& p) {
    double sum = 0.0;
    double carry = 0.0; // Kahan compensation
    for (double y : p.y) {
        const double term = log_density(m, y);
        const double adj = term - carry;
        const double next = sum + adj;
        carry = (next - sum) - adj;
        sum = next;
    }
    return sum;
}

MixtureModel em_update(const MixtureModel& m, const Prepared& p) {
    const double logW = std::log(m.hetWeight);
    const double log1mW = std::log(1.0 - m.hetWeight);
    const double logT0c = std::log1p(-m.lower.theta0);
    const double logT1c = std::log1p(-m.upper.theta1);
    const double b = m.lower.shapeB;
    const double a = m.upper.shapeA;
    const double logB = std::log(b);
    const double logA = std::log(a);

    double sumG = static_cast<double>(p.ones); // atoms carry responsibility 0 or 1
    double contG = 0.0, contGLogY = 0.0;
    double contH = 0.0, contHLog1mY = 0.0;
    for (std::size_t i = p.contBegin; i < p.contEnd; ++i) {
        const double y = clamp_unit(p.y[i]);
        const double logY = std::log(y);
        const double log1mY = std::log1p(-y);
        const double lw = logW + logT0c + logB + (b - 1.0) * log1mY;
        const double uw = log1mW + logT1c + logA + (a - 1.0) * logY;
        const double diff = lw - uw;
        double g;
        if (std::isnan(diff))
            g = 0.5; // both components carry zero mass here
        else
            g = 1.0 / (1.0 + std::exp(diff));
        sumG += g;
        contG += g;
        contGLogY += g * logY;
        contH += 1.0 - g;
        contHLog1mY += (1.0 - g) * log1mY;
    }

    const double n = static_cast<double>(p.y.size());
    const double sumH = n - sumG;
    MixtureModel next = m;
    next.hetWeight = sumH / n;
    if (sumG > 0.0) next.upper.theta1 = static_cast<double>(p.ones) / sumG;
    if (sumH > 0.0) next.lower.theta0 = static_cast<double>(p.zeros) / sumH;
    if (contG > 0.0 && contGLogY < 0.0) next.upper.shapeA = -contG / contGLogY;
    if (contH > 0.0 && contHLog1mY < 0.0) next.lower.shapeB = -contH / contHLog1mY;
    return next;
}

} // namespace

void EmConfig::validate() const {
    if (maxIter < 1) throw ValidationError("maxIter must be >= 1");
    if (!(llTol > 0.0)) throw ValidationError("llTol must be > 0");
    if (init) init->validate();
}

EmReport fit_em(const TBafSequence& data, const EmConfig& cfg) {
    cfg.validate();
    if (data.size() < 10)
        throw ValidationError("fit_em requires at least 10 observations, got " +
                              std::to_string(data.size()));
    const Prepared p = prepare(data);
    if (p.zeros == p.y.size())
        throw ComputationError("degenerate fit: every observation is at the atom 0");
    if (p.ones == p.y.size())
        throw ComputationError("degenerate fit: every observation is at the atom 1");

    EmReport report;
    MixtureModel model = cfg.init ? *cfg.init : default_init(p);
    double llPrev = log_likelihood(model, p);
    report.logLikTrace.push_back(llPrev);
    for (std::size_t iter = 1; iter <= cfg.maxIter; ++iter) {
        model = em_update(model, p);
        const double ll = log_likelihood(model, p);
        report.logLikTrace.push_back(ll);
        report.iterations = iter;
        if (std::abs(ll - llPrev) <= cfg.llTol * (1.0 + std::abs(llPrev))) {
            report.converged = true;
            break;
        }
        llPrev = ll;
    }
    report.model = floored(model);
    return report;
}

} // namespace lohseg
