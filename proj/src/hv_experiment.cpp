#include "interferolab/hv_experiment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "interferolab/errors.hpp"

namespace interferolab {

namespace {

// M = t1^a t1^b A1 + r1^a r2^b A2 maps psi1 to the amplitude at the detector.
Mat2 detector_map(const Apparatus& ap, const LinearFilter& a1, const LinearFilter& a2) {
    return ap.direct_path() * a1.matrix() + ap.crossed_path() * a2.matrix();
}

void require_valid(const DensityMatrix& rho) {
    if (const auto verdict = validate_density(rho); !verdict) {
        throw StructuralError("source density matrix rejected: " + verdict.diagnostic);
    }
}

}  // namespace

double p_quantum(const ExperimentConfig& cfg, const LinearFilter& a1, const LinearFilter& a2) {
    const Vec2 psi_d = detector_map(cfg.apparatus, a1, a2) * cfg.psi1.amplitudes();
    return cfg.apparatus.q() * psi_d.squaredNorm();
}

double p_quantum(const MixedExperimentConfig& cfg, const LinearFilter& a1,
                 const LinearFilter& a2) {
    const Mat2 m = detector_map(cfg.apparatus, a1, a2);
    return cfg.apparatus.q() * (m * cfg.rho1.matrix() * m.adjoint()).trace().real();
}

double delta_closed_form(const ExperimentConfig& cfg, const LinearFilter& a1,
                         const LinearFilter& a2) {
    const Vec2& psi = cfg.psi1.amplitudes();
    const Complex overlap = psi.dot(a1.matrix().adjoint() * a2.matrix() * psi);
    return 2.0 * cfg.apparatus.q() * (cfg.apparatus.kappa() * overlap).real();
}

double delta_closed_form(const Apparatus& apparatus, const DensityMatrix& rho,
                         const LinearFilter& a1, const LinearFilter& a2) {
    const Complex tr = (rho.matrix() * a1.matrix().adjoint() * a2.matrix()).trace();
    return 2.0 * apparatus.q() * (apparatus.kappa() * tr).real();
}

DeltaResult delta_quantum(const ExperimentConfig& cfg, const LinearFilter& a1,
                          const LinearFilter& a2) {
    const auto dark = LinearFilter::absorber();
    return {p_quantum(cfg, a1, a2), p_quantum(cfg, a1, dark), p_quantum(cfg, dark, a2),
            delta_closed_form(cfg, a1, a2)};
}

DeltaResult delta_quantum_mixed(const MixedExperimentConfig& cfg, const LinearFilter& a1,
                                const LinearFilter& a2) {
    require_valid(cfg.rho1);
    const auto dark = LinearFilter::absorber();
    return {p_quantum(cfg, a1, a2), p_quantum(cfg, a1, dark), p_quantum(cfg, dark, a2),
            delta_closed_form(cfg.apparatus, cfg.rho1, a1, a2)};
}

Netlist experiment_netlist(const Apparatus& apparatus, const LinearFilter& a1,
                           const LinearFilter& a2) {
    return interferometer_netlist(apparatus.sa, apparatus.sb, a1, a2, apparatus.detector);
}

DeltaResult expected_delta_hv(const HVModel& model, const LinearFilter& a1,
                              const LinearFilter& a2) {
    using Quadrature = boost::math::quadrature::gauss_kronrod<double, 61>;
    constexpr unsigned kMaxDepth = 15;
    constexpr double kTol = 1e-14;
    auto integrate = [&](auto&& integrand) {
        return Quadrature::integrate(
            [&](double lambda) { return model.density(lambda) * integrand(lambda); },
            model.lambda_min, model.lambda_max, kMaxDepth, kTol);
    };
    DeltaResult r;
    r.p_both = integrate([&](double l) { return std::min(1.0, model.p1(a1, l) + model.p2(a2, l)); });
    r.p_1 = integrate([&](double l) { return model.p1(a1, l); });
    r.p_2 = integrate([&](double l) { return model.p2(a2, l); });
    r.delta = r.difference();
    return r;
}

HVModel malus_model(const Apparatus& apparatus) {
    const double q = apparatus.q();
    const double w1 = std::norm(apparatus.direct_path());
    const double w2 = std::norm(apparatus.crossed_path());
    auto transmitted = [](const LinearFilter& a, double lambda) {
        const Vec2 e(std::cos(lambda), std::sin(lambda));
        return (a.matrix() * e).squaredNorm();
    };
    HVModel m;
    m.name = "malus";
    m.sample_lambda = [](Rng& rng) { return std::numbers::pi * uniform01(rng); };
    m.density = [](double) { return 1.0 / std::numbers::pi; };
    m.lambda_min = 0.0;
    m.lambda_max = std::numbers::pi;
    m.p1 = [=](const LinearFilter& a, double lambda) { return w1 * q * transmitted(a, lambda); };
    m.p2 = [=](const LinearFilter& a, double lambda) { return w2 * q * transmitted(a, lambda); };
    return m;
}

TwoBeamState prepare_entangled(const BeamSplitter& sa, const LinearFilter& a1,
                               const LinearFilter& a2, const JonesVector& psi2) {
    return {apply_filter(a1, sa.r2() * psi2), apply_filter(a2, sa.t2() * psi2)};
}

}  // namespace interferolab
