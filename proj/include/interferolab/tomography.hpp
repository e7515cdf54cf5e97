#pragma once

#include <span>
#include <vector>

#include "interferolab/hv_experiment.hpp"

namespace interferolab {

/// One measured setting of the detection arrangement.
struct DeltaMeasurement {
    LinearFilter a1;
    LinearFilter a2;
    double delta;
};

/// A1 = I with A2 running over {I, X, Y, Z}, each multiplied by the unit
/// phase conj(kappa)/|kappa| so that the functionals see |kappa| rather than
/// Re kappa. Falls back to the unrotated basis when kappa = 0.
std::vector<std::pair<LinearFilter, LinearFilter>> default_design(const Apparatus& apparatus);

/// Forward model of the inference: the Delta values an exact density matrix
/// would produce under the given settings.
std::vector<DeltaMeasurement> simulate_measurements(
    const Apparatus& apparatus, const DensityMatrix& rho,
    std::span<const std::pair<LinearFilter, LinearFilter>> settings);

struct DensityEstimate {
    DensityMatrix rho;
    double residual_norm = 0.0;
    std::size_t rank = 0;
};

/// Ordinary least squares over rho = [[x0, x2 + i x3], [x2 - i x3, x1]].
/// The raw estimate is returned without projection onto the PSD cone.
/// Throws EstimationError naming the unresolved Hermitian directions when the
/// settings do not span all four parameters.
DensityEstimate infer_density(std::span<const DeltaMeasurement> measurements,
                              const Apparatus& apparatus);

}  // namespace interferolab
