#include "interferolab/circuit_engine.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "interferolab/errors.hpp"
#include "support/random_ops.hpp"

using namespace interferolab;
using namespace interferolab::testing;

namespace {

NBeamState random_state(std::size_t n, TestRng& rng) {
    std::vector<JonesVector> beams;
    for (std::size_t k = 0; k < n; ++k) beams.push_back(random_jones(rng, 1.0 / std::sqrt(n)));
    return NBeamState(std::move(beams));
}

double state_diff(const NBeamState& a, const NBeamState& b) {
    double d = 0.0;
    for (std::size_t k = 1; k <= a.size(); ++k) {
        d = std::max(d, max_diff(a.beam(k).amplitudes(), b.beam(k).amplitudes()));
    }
    return d;
}

Netlist random_unitary_netlist(std::size_t n, TestRng& rng) {
    Netlist net;
    net.n_beams = n;
    for (int i = 0; i < 12; ++i) {
        const std::size_t a = 1 + rng() % n;
        std::size_t b = 1 + rng() % n;
        if (b == a) b = a % n + 1;
        net.add_beamsplitter(a, b, BeamSplitter(haar_unitary2(rng)));
        net.add_mirror(1 + rng() % n, Mirror(std::polar(1.0, uniform(rng, 0.0, 6.3))));
    }
    return net;
}

}  // namespace

TEST(Evolve, EmptyNetlistIsIdentity) {
    Netlist net;
    net.n_beams = 3;
    TestRng rng(6);
    const NBeamState in = random_state(3, rng);
    EXPECT_EQ(evolve(net, in), in);
}

TEST(Evolve, InterferometerMatchesHandExpansion) {
    TestRng rng(7);
    for (int i = 0; i < 1000; ++i) {
        const Mat2 sa = haar_unitary2(rng);
        const Mat2 sb = haar_unitary2(rng);
        const Mat2 a1 = random_subunitary2(rng);
        const Mat2 a2 = random_subunitary2(rng);
        const JonesVector psi1 = random_jones(rng);
        const Netlist net = interferometer_netlist(BeamSplitter(sa), BeamSplitter(sb),
                                                   LinearFilter(a1), LinearFilter(a2), Detector());
        const NBeamState out = evolve(net, NBeamState(TwoBeamState{psi1, {}}));
        // psi_D = t1^a t1^b A1 psi1 + r1^a r2^b A2 psi1
        const Vec2 expected =
            sa(0, 0) * sb(0, 0) * a1 * psi1.amplitudes() + sa(1, 0) * sb(0, 1) * a2 * psi1.amplitudes();
        ASSERT_LE(max_diff(out.beam(1).amplitudes(), expected), 1e-12);
    }
}

TEST(Evolve, SymmetricInterferometerHasDarkPort) {
    const auto s = BeamSplitter::symmetric();
    const auto id = LinearFilter::identity();
    const Netlist net = interferometer_netlist(s, s, id, id, Detector(1.0));
    const NBeamState in(TwoBeamState{{1.0, 0.0}, {}});
    EXPECT_LE(presence_probability(evolve(net, in).beam(1)), 1e-30);

    const auto probs = detection_probabilities(net, in);
    ASSERT_EQ(probs.size(), 1u);
    EXPECT_EQ(probs[0].beam, 1u);
    EXPECT_NEAR(probs[0].probability, 0.0, 1e-15);

    const Netlist blocked = interferometer_netlist(s, s, id, LinearFilter::absorber(), Detector(1.0));
    EXPECT_NEAR(detection_probabilities(blocked, in)[0].probability, 0.25, 1e-15);
}

TEST(DetectionProbabilities, NoDetectorsNoResults) {
    Netlist net;
    net.n_beams = 2;
    net.add_beamsplitter(1, 2, BeamSplitter::symmetric());
    EXPECT_TRUE(detection_probabilities(net, NBeamState(2)).empty());
}

TEST(DetectionProbabilities, TapsDoNotDisturbState) {
    Netlist net;
    net.n_beams = 2;
    net.add_beamsplitter(1, 2, BeamSplitter::symmetric())
        .add_detector(1, Detector(1.0))
        .add_detector(2, Detector(0.5))
        .add_detector(1, Detector(0.5));
    const auto probs = detection_probabilities(net, NBeamState(TwoBeamState{{1.0, 0.0}, {}}));
    ASSERT_EQ(probs.size(), 3u);
    EXPECT_NEAR(probs[0].probability, 0.5, 1e-15);
    EXPECT_NEAR(probs[1].probability, 0.25, 1e-15);
    EXPECT_NEAR(probs[2].probability, 0.25, 1e-15);
}

TEST(Evolve, StructuralErrorsNameTheElement) {
    Netlist net;
    net.n_beams = 2;
    net.add_filter(1, LinearFilter::identity(), "ok").add_beamsplitter(1, 3, BeamSplitter::symmetric(), "far");
    try {
        evolve(net, NBeamState(2));
        FAIL() << "expected StructuralError";
    } catch (const StructuralError& e) {
        EXPECT_NE(std::string(e.what()).find("beamsplitter #2 (far)"), std::string::npos) << e.what();
    }

    Netlist same;
    same.n_beams = 2;
    same.add_beamsplitter(2, 2, BeamSplitter::symmetric());
    EXPECT_THROW(evolve(same, NBeamState(2)), StructuralError);

    Netlist tap;
    tap.n_beams = 1;
    tap.add_detector(2, Detector());
    EXPECT_THROW(evolve(tap, NBeamState(1)), StructuralError);

    Netlist ok;
    ok.n_beams = 2;
    EXPECT_THROW(evolve(ok, NBeamState(3)), StructuralError);
}

TEST(Evolve, UnitaryNetlistsConservePresence) {
    TestRng rng(8);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + rng() % 5;
        const Netlist net = random_unitary_netlist(n, rng);
        const NBeamState in = random_state(n, rng);
        EXPECT_NEAR(evolve(net, in).total_presence(), in.total_presence(), 1e-12);
    }
}

TEST(Evolve, IsLinear) {
    TestRng rng(9);
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + rng() % 4;
        Netlist net = random_unitary_netlist(n, rng);
        net.add_filter(1 + rng() % n, LinearFilter(random_subunitary2(rng)));
        const NBeamState x = random_state(n, rng);
        const NBeamState y = random_state(n, rng);
        const Complex alpha = complex_gaussian(rng);
        const Complex beta = complex_gaussian(rng);
        const NBeamState lhs = evolve(net, alpha * x + beta * y);
        const NBeamState rhs = alpha * evolve(net, x) + beta * evolve(net, y);
        EXPECT_LE(state_diff(lhs, rhs), 1e-12);
    }
}

TEST(NBeamState, ComponentViewRoundTrips) {
    TestRng rng(10);
    NBeamState s = random_state(4, rng);
    const NBeamState copy = s;
    s.set_component(1, s.component(1));
    EXPECT_EQ(s, copy);
    EXPECT_EQ(s.component(0)(2), s.beam(3).h());
}
