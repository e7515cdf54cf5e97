#pragma once

#include <cstdint>

#include "interferolab/hv_experiment.hpp"

namespace interferolab {

/// Sample budget and stream layout of a Monte Carlo run. The n samples are
/// split into `workers` contiguous blocks, each drawn from its own substream
/// of `seed`, so results depend only on (seed, samples, workers).
struct McOptions {
    std::uint64_t samples = 1'000'000;
    std::uint64_t seed = 0;
    unsigned workers = 1;
};

/// Hidden-variable estimate of Delta. The three runs share one lambda and one
/// uniform variate per photon (common random numbers).
struct HvEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    double p_both = 0.0;
    double p_1 = 0.0;
    double p_2 = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;
    /// Photons for which p1 + p2 > 1 and the joint probability was clamped.
    std::uint64_t clamp_warnings = 0;

    friend bool operator==(const HvEstimate&, const HvEstimate&) = default;
};

struct BernoulliEstimate {
    double estimate = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    unsigned workers = 1;

    friend bool operator==(const BernoulliEstimate&, const BernoulliEstimate&) = default;
};

/// OpenMP: one thread per worker block.
HvEstimate mc_hv(const HVModel& model, const LinearFilter& a1, const LinearFilter& a2,
                 const McOptions& opts);
/// Reference implementation walking the worker blocks in order on the calling
/// thread. Must agree bit-for-bit with mc_hv.
HvEstimate mc_hv_serial(const HVModel& model, const LinearFilter& a1, const LinearFilter& a2,
                        const McOptions& opts);

/// Counts detections of photons detected with probability p.
BernoulliEstimate mc_bernoulli(double p, const McOptions& opts);
BernoulliEstimate mc_bernoulli_serial(double p, const McOptions& opts);

/// Photon-counting estimate of p_quantum(cfg, a1, a2). Throws
/// ValidationError if that probability lies outside [0, 1].
BernoulliEstimate mc_quantum(const ExperimentConfig& cfg, const LinearFilter& a1,
                             const LinearFilter& a2, const McOptions& opts);
BernoulliEstimate mc_quantum(const MixedExperimentConfig& cfg, const LinearFilter& a1,
                             const LinearFilter& a2, const McOptions& opts);

}  // namespace interferolab
