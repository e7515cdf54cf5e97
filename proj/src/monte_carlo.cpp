#include "interferolab/monte_carlo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <vector>

#include <omp.h>

#include "interferolab/errors.hpp"

namespace interferolab {

namespace {

struct Block {
    std::uint64_t begin;
    std::uint64_t end;
};

Block worker_block(const McOptions& opts, unsigned worker) {
    const std::uint64_t base = opts.samples / opts.workers;
    const std::uint64_t extra = opts.samples % opts.workers;
    const std::uint64_t w = worker;
    const std::uint64_t begin = w * base + std::min(w, extra);
    return {begin, begin + base + (w < extra ? 1 : 0)};
}

void check_options(const McOptions& opts) {
    if (opts.samples == 0) throw ValidationError("Monte Carlo run needs at least one sample");
    if (opts.workers == 0) throw ValidationError("Monte Carlo run needs at least one worker");
}

struct HvCounts {
    std::uint64_t joint = 0;
    std::uint64_t single1 = 0;
    std::uint64_t single2 = 0;
    // per-photon D = joint - single1 - single2 takes values in {-1, 0, 1}
    std::int64_t sum_d = 0;
    std::uint64_t sum_d2 = 0;
    std::uint64_t clamps = 0;

    void merge(const HvCounts& o) {
        joint += o.joint;
        single1 += o.single1;
        single2 += o.single2;
        sum_d += o.sum_d;
        sum_d2 += o.sum_d2;
        clamps += o.clamps;
    }
};

HvCounts hv_kernel(const HVModel& model, const LinearFilter& a1, const LinearFilter& a2,
                   const McOptions& opts, unsigned worker) {
    const Block block = worker_block(opts, worker);
    Rng rng(substream_seed(opts.seed, worker));
    HvCounts c;
    for (std::uint64_t i = block.begin; i < block.end; ++i) {
        const double lambda = model.sample_lambda(rng);
        const double u = uniform01(rng);
        const double p1 = model.p1(a1, lambda);
        const double p2 = model.p2(a2, lambda);
        double joint_p = p1 + p2;
        if (joint_p > 1.0) {
            joint_p = 1.0;
            ++c.clamps;
        }
        const int joint = u < joint_p;
        const int s1 = u < p1;
        const int s2 = u < p2;
        const int d = joint - s1 - s2;
        c.joint += joint;
        c.single1 += s1;
        c.single2 += s2;
        c.sum_d += d;
        c.sum_d2 += static_cast<std::uint64_t>(d * d);
    }
    return c;
}

HvEstimate finish(const HvCounts& c, const McOptions& opts) {
    const double n = static_cast<double>(opts.samples);
    HvEstimate e;
    e.p_both = static_cast<double>(c.joint) / n;
    e.p_1 = static_cast<double>(c.single1) / n;
    e.p_2 = static_cast<double>(c.single2) / n;
    e.estimate = static_cast<double>(c.sum_d) / n;
    const double var = std::max(0.0, static_cast<double>(c.sum_d2) / n - e.estimate * e.estimate);
    e.std_error = std::sqrt(var / n);
    e.samples = opts.samples;
    e.seed = opts.seed;
    e.workers = opts.workers;
    e.clamp_warnings = c.clamps;
    return e;
}

std::uint64_t bernoulli_kernel(double p, const McOptions& opts, unsigned worker) {
    const Block block = worker_block(opts, worker);
    Rng rng(substream_seed(opts.seed, worker));
    std::uint64_t hits = 0;
    for (std::uint64_t i = block.begin; i < block.end; ++i) hits += uniform01(rng) < p;
    return hits;
}

BernoulliEstimate finish(std::uint64_t hits, const McOptions& opts) {
    const double n = static_cast<double>(opts.samples);
    BernoulliEstimate e;
    e.estimate = static_cast<double>(hits) / n;
    e.std_error = std::sqrt(e.estimate * (1.0 - e.estimate) / n);
    e.samples = opts.samples;
    e.seed = opts.seed;
    e.workers = opts.workers;
    return e;
}

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0 + kElementTol)) {
        std::ostringstream msg;
        msg << "detection probability " << p << " outside [0, 1]; photon counting needs a "
            << "single-photon source";
        throw ValidationError(msg.str());
    }
}

}  // namespace

HvEstimate mc_hv(const HVModel& model, const LinearFilter& a1, const LinearFilter& a2,
                 const McOptions& opts) {
    check_options(opts);
    std::vector<HvCounts> per_worker(opts.workers);
    const auto workers = static_cast<std::int64_t>(opts.workers);
#pragma omp parallel for num_threads(opts.workers) schedule(static, 1)
    for (std::int64_t w = 0; w < workers; ++w) {
        per_worker[static_cast<std::size_t>(w)] =
            hv_kernel(model, a1, a2, opts, static_cast<unsigned>(w));
    }
    HvCounts total;
    for (const auto& c : per_worker) total.merge(c);
    return finish(total, opts);
}

HvEstimate mc_hv_serial(const HVModel& model, const LinearFilter& a1, const LinearFilter& a2,
                        const McOptions& opts) {
    check_options(opts);
    HvCounts total;
    for (unsigned w = 0; w < opts.workers; ++w) total.merge(hv_kernel(model, a1, a2, opts, w));
    return finish(total, opts);
}

BernoulliEstimate mc_bernoulli(double p, const McOptions& opts) {
    check_options(opts);
    check_probability(p);
    std::vector<std::uint64_t> per_worker(opts.workers);
    const auto workers = static_cast<std::int64_t>(opts.workers);
#pragma omp parallel for num_threads(opts.workers) schedule(static, 1)
    for (std::int64_t w = 0; w < workers; ++w) {
        per_worker[static_cast<std::size_t>(w)] =
            bernoulli_kernel(p, opts, static_cast<unsigned>(w));
    }
    std::uint64_t hits = 0;
    for (auto h : per_worker) hits += h;
    return finish(hits, opts);
}

BernoulliEstimate mc_bernoulli_serial(double p, const McOptions& opts) {
    check_options(opts);
    check_probability(p);
    std::uint64_t hits = 0;
    for (unsigned w = 0; w < opts.workers; ++w) hits += bernoulli_kernel(p, opts, w);
    return finish(hits, opts);
}

BernoulliEstimate mc_quantum(const ExperimentConfig& cfg, const LinearFilter& a1,
                             const LinearFilter& a2, const McOptions& opts) {
    return mc_bernoulli(p_quantum(cfg, a1, a2), opts);
}

BernoulliEstimate mc_quantum(const MixedExperimentConfig& cfg, const LinearFilter& a1,
                             const LinearFilter& a2, const McOptions& opts) {
    if (const auto verdict = validate_density(cfg.rho1); !verdict) {
        throw StructuralError("source density matrix rejected: " + verdict.diagnostic);
    }
    return mc_bernoulli(p_quantum(cfg, a1, a2), opts);
}

}  // namespace interferolab
