#pragma once

#include <functional>
#include <string>

#include "interferolab/circuit_engine.hpp"
#include "interferolab/optical_elements.hpp"
#include "interferolab/photonic_state.hpp"
#include "interferolab/random.hpp"

namespace interferolab {

/// The fixed part of the interferometer: both splitters and the detector.
/// Beam 2 enters dark.
struct Apparatus {
    BeamSplitter sa = BeamSplitter::symmetric();
    BeamSplitter sb = BeamSplitter::symmetric();
    Detector detector{1.0};

    /// Amplitude of the path through filter 1: t1^a t1^b.
    Complex direct_path() const { return sa.t1() * sb.t1(); }
    /// Amplitude of the path through filter 2: r1^a r2^b.
    Complex crossed_path() const { return sa.r1() * sb.r2(); }
    /// kappa = conj(t1^a t1^b) r1^a r2^b, the interference coefficient.
    Complex kappa() const { return std::conj(direct_path()) * crossed_path(); }
    double q() const { return detector.efficiency(); }
};

struct ExperimentConfig {
    Apparatus apparatus;
    JonesVector psi1{1.0, 0.0};
};

struct MixedExperimentConfig {
    Apparatus apparatus;
    DensityMatrix rho1{Mat2::Identity() / 2.0};
};

/// Interference witness p(A1,A2) - p(A1,0) - p(0,A2) together with the three
/// detection probabilities. For quantum predictions `delta` holds the closed
/// form 2q Re[kappa tr(rho A1* A2)]; difference() recomputes it from the
/// probabilities.
struct DeltaResult {
    double p_both = 0.0;
    double p_1 = 0.0;
    double p_2 = 0.0;
    double delta = 0.0;

    double difference() const { return p_both - p_1 - p_2; }
};

/// q |t1^a t1^b A1 psi1 + r1^a r2^b A2 psi1|^2
double p_quantum(const ExperimentConfig& cfg, const LinearFilter& a1, const LinearFilter& a2);
/// q tr(M rho M*), M = t1^a t1^b A1 + r1^a r2^b A2
double p_quantum(const MixedExperimentConfig& cfg, const LinearFilter& a1,
                 const LinearFilter& a2);

/// 2 q Re[kappa psi1* A1* A2 psi1]
double delta_closed_form(const ExperimentConfig& cfg, const LinearFilter& a1,
                         const LinearFilter& a2);
/// 2 q Re[kappa tr(rho A1* A2)]; linear in rho, so tr rho > 1 reads as a mean
/// photon count.
double delta_closed_form(const Apparatus& apparatus, const DensityMatrix& rho,
                         const LinearFilter& a1, const LinearFilter& a2);

DeltaResult delta_quantum(const ExperimentConfig& cfg, const LinearFilter& a1,
                          const LinearFilter& a2);
/// Throws StructuralError if rho1 fails validate_density().
DeltaResult delta_quantum_mixed(const MixedExperimentConfig& cfg, const LinearFilter& a1,
                                const LinearFilter& a2);

/// The interferometer as a circuit-engine netlist for the given settings.
Netlist experiment_netlist(const Apparatus& apparatus, const LinearFilter& a1,
                           const LinearFilter& a2);

/// Local hidden-variable theory over a scalar lambda. The photon's state
/// lambda is drawn once at the source; whether it reaches the detector
/// through filter k depends only on A_k and lambda.
struct HVModel {
    std::string name;
    std::function<double(Rng&)> sample_lambda;
    /// p(lambda) on [lambda_min, lambda_max]; used for exact expectations.
    std::function<double(double)> density;
    double lambda_min = 0.0;
    double lambda_max = 1.0;
    std::function<double(const LinearFilter&, double)> p1;
    std::function<double(const LinearFilter&, double)> p2;
};

/// The additivity consequence of the hidden-variable assumptions: always 0.
inline double delta_hv(const HVModel&, const LinearFilter&, const LinearFilter&) { return 0.0; }

/// Expected Delta obtained by integrating min(1, p1 + p2), p1 and p2 against
/// the lambda density (adaptive Gauss-Kronrod).
DeltaResult expected_delta_hv(const HVModel& model, const LinearFilter& a1,
                              const LinearFilter& a2);

/// Polarization-angle model: lambda uniform on [0, pi), photon polarized
/// along e = (cos lambda, sin lambda), p_k(A, lambda) = w_k q |A e|^2 with
/// w_1 = |t1^a t1^b|^2 and w_2 = |r1^a r2^b|^2. Its single-filter
/// predictions coincide with the quantum ones for an unpolarized source.
HVModel malus_model(const Apparatus& apparatus);

/// Half-interferometer preparation with beam 1 dark:
/// (A1 r2^a psi2, A2 t2^a psi2).
TwoBeamState prepare_entangled(const BeamSplitter& sa, const LinearFilter& a1,
                               const LinearFilter& a2, const JonesVector& psi2);

}  // namespace interferolab
