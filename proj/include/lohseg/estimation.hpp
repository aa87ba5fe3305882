#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lohseg/model.hpp"

namespace lohseg {

struct EmConfig {
    std::size_t maxIter = 500;
    // Relative log-likelihood improvement below which iteration stops.
    double llTol = 1e-8;
    std::optional<MixtureModel> init;

    void validate() const;
};

struct EmReport {
    MixtureModel model;
    std::size_t iterations = 0;
    // Observed-data log-likelihood: initial model first, then one entry per
    // EM update. Non-decreasing within 1e-10 per step.
    std::vector<double> logLikTrace;
    bool converged = false;
};

// Fits the mixture to a non-LOH training segment. Atom observations belong
// exclusively to the component owning the atom; continuous observations are
// shared through posterior responsibilities. The returned model has weight
// floors applied. Requires at least 10 observations; data entirely at one
// atom is a degenerate fit.
EmReport fit_em(const TBafSequence& data, const EmConfig& cfg = {});

} // namespace lohseg
