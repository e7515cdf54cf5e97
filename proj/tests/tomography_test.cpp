#include "interferolab/tomography.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "interferolab/errors.hpp"
#include "support/random_ops.hpp"

using namespace interferolab;
using namespace interferolab::testing;

namespace {

std::vector<DeltaMeasurement> with_deltas(const Apparatus& ap, const std::vector<double>& deltas) {
    const auto design = default_design(ap);
    std::vector<DeltaMeasurement> out;
    for (std::size_t i = 0; i < design.size(); ++i) {
        out.push_back({design[i].first, design[i].second, deltas[i]});
    }
    return out;
}

// Delta through the three detection probabilities, independent of the closed form.
std::vector<DeltaMeasurement> measured_by_probabilities(const Apparatus& ap, const DensityMatrix& rho) {
    const MixedExperimentConfig cfg{ap, rho};
    std::vector<DeltaMeasurement> out;
    for (const auto& [a1, a2] : default_design(ap)) {
        const auto dark = LinearFilter::absorber();
        out.push_back({a1, a2, p_quantum(cfg, a1, a2) - p_quantum(cfg, a1, dark) - p_quantum(cfg, dark, a2)});
    }
    return out;
}

}  // namespace

TEST(DefaultDesign, PhaseAlignedPaulis) {
    const auto design = default_design(Apparatus{});
    ASSERT_EQ(design.size(), 4u);
    // kappa = -1/4, so every A2 is the negated Pauli operator.
    EXPECT_LE(max_diff(design[1].second.matrix(), Mat2(-pauli_x())), 1e-15);
    EXPECT_LE(max_diff(design[0].first.matrix(), Mat2(Mat2::Identity())), 0.0);
}

TEST(InferDensity, RecoversBasisProjectorFromFrozenDeltas) {
    // tr(rho {I, X, Y, Z}) = {1, 0, 0, 1}, times 2q|kappa| = 1/2.
    const Apparatus ap;
    const auto est = infer_density(with_deltas(ap, {0.5, 0.0, 0.0, 0.5}), ap);
    EXPECT_LE(max_diff(est.rho.matrix(), Mat2((Mat2() << 1, 0, 0, 0).finished())), 1e-12);
    EXPECT_LE(est.residual_norm, 1e-12);
}

TEST(InferDensity, RecoversMaximallyMixed) {
    const Apparatus ap;
    const auto est = infer_density(with_deltas(ap, {0.5, 0.0, 0.0, 0.0}), ap);
    EXPECT_LE(max_diff(est.rho.matrix(), Mat2(Mat2::Identity() / 2.0)), 1e-12);
}

TEST(InferDensity, RecoversRandomStatesOnRandomApparatus) {
    TestRng rng(21);
    for (int i = 0; i < 200; ++i) {
        const Apparatus ap = random_apparatus(rng);
        if (ap.q() < 0.05) continue;
        const DensityMatrix rho(random_density(rng, uniform(rng, 0.1, 3.0)));
        const auto est = infer_density(measured_by_probabilities(ap, rho), ap);
        ASSERT_LE(max_diff(est.rho.matrix(), rho.matrix()), 1e-8);
    }
}

TEST(InferDensity, WorksWhenKappaIsImaginary) {
    // sb = diag(1, i) S puts a quarter-wave phase on r2^b.
    Mat2 sb = BeamSplitter::symmetric().matrix();
    sb.col(1) *= kI;
    const Apparatus ap{BeamSplitter::symmetric(), BeamSplitter(sb), Detector(0.9)};
    ASSERT_NEAR(ap.kappa().real(), 0.0, 1e-15);
    TestRng rng(22);
    const DensityMatrix rho(random_density(rng));
    const auto est = infer_density(simulate_measurements(ap, rho, default_design(ap)), ap);
    EXPECT_LE(max_diff(est.rho.matrix(), rho.matrix()), 1e-8);
}

TEST(InferDensity, RankDeficientDesignsAreRejected) {
    const Apparatus ap;
    const auto id = LinearFilter::identity();
    std::vector<DeltaMeasurement> same(4, DeltaMeasurement{id, id, -0.5});
    try {
        infer_density(same, ap);
        FAIL() << "expected EstimationError";
    } catch (const EstimationError& e) {
        const std::string msg = e.what();
        EXPECT_NE(msg.find("rank 1 of 4"), std::string::npos) << msg;
        EXPECT_NE(msg.find("unresolved directions"), std::string::npos) << msg;
    }

    std::vector<DeltaMeasurement> one{{id, id, -0.5}};
    EXPECT_THROW(infer_density(one, ap), EstimationError);
    EXPECT_THROW(infer_density(std::vector<DeltaMeasurement>{}, ap), EstimationError);

    const Apparatus blind{BeamSplitter::identity(), BeamSplitter::symmetric(), Detector(1.0)};
    ASSERT_EQ(blind.kappa(), Complex(0.0));
    EXPECT_THROW(infer_density(simulate_measurements(blind, DensityMatrix(), default_design(blind)), blind),
                 EstimationError);
}

TEST(InferDensity, RawEstimateIsNotProjected) {
    // Deltas of the indefinite Hermitian matrix diag(1.2, -0.2) come back as is.
    const Apparatus ap;
    const auto est = infer_density(with_deltas(ap, {0.5, 0.0, 0.0, 0.7}), ap);
    EXPECT_NEAR(est.rho.matrix()(1, 1).real(), -0.2, 1e-12);
    EXPECT_EQ(validate_density(est.rho).violation, DensityViolation::not_positive_semidefinite);
}
