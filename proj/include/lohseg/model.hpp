#pragma once

#include <cstddef>
#include <vector>

#include "lohseg/rng.hpp"

namespace lohseg {

// Values within this distance of 0 or 1 snap to the exact atom.
inline constexpr double kSnapEps = 1e-9;
// Floor for mixture/atom weights when a model feeds likelihood ratios.
inline constexpr double kProbEps = 1e-6;

// Upper-band component: point mass theta1 at 1 plus a Beta(shapeA, 1)
// continuous part, density (1 - theta1) * shapeA * y^(shapeA - 1) on (0,1).
struct OneInflatedBeta {
    double theta1 = 0.0;
    double shapeA = 1.0;
};

// Lower-band component: point mass theta0 at 0 plus a Beta(1, shapeB)
// continuous part, density (1 - theta0) * shapeB * (1-y)^(shapeB - 1) on (0,1).
struct ZeroInflatedBeta {
    double theta0 = 0.0;
    double shapeB = 1.0;
};

// Two-component mixture over [0,1] under the dominating measure
// Lebesgue + unit atoms at 0 and 1. hetWeight multiplies the lower band.
struct MixtureModel {
    double hetWeight = 0.5;
    ZeroInflatedBeta lower;
    OneInflatedBeta upper;

    // Throws ValidationError when any field is non-finite or out of range.
    void validate() const;
};

// Transformed-BAF sequence. All values lie in [0,1]; exact 0 and 1 are the
// atoms, there is no separate flag storage.
class TBafSequence {
public:
    TBafSequence() = default;
    // Validates range and snaps values within snapEps of 0 or 1 to the atom.
    explicit TBafSequence(std::vector<double> values, double snapEps = kSnapEps);

    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    double operator[](std::size_t i) const { return values_[i]; }

private:
    std::vector<double> values_;
};

// y_i = 2*|x_i - 1/2|. Inputs outside [-snapEps, 1+snapEps] raise
// ValidationError naming the offending index.
TBafSequence tbaf_transform(const std::vector<double>& baf,
                            double snapEps = kSnapEps);

// Log of the mixture mass/density at y: the owning component's weighted atom
// mass at y = 0 or 1, the weighted sum of continuous densities on (0,1).
// Returns -infinity only where the evaluated mass is exactly zero.
double log_density(const MixtureModel& model, double y);

// n i.i.d. draws. Continuous parts use inverse-CDF draws from an open-interval
// uniform, so they never collide with the atoms.
TBafSequence sample(const MixtureModel& model, std::size_t n, Rng& rng);

// LOH counterpart of base: hetWeight scaled by delta, components unchanged.
MixtureModel derive_loh_model(const MixtureModel& base, double delta);

// Copy with hetWeight, theta0, theta1 pushed inside [kProbEps, 1 - kProbEps].
// Applied to models used in likelihood ratios so no increment is infinite.
MixtureModel floored(const MixtureModel& model);

} // namespace lohseg
