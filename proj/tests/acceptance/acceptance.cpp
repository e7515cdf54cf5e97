// Acceptance suite: one line per criterion, nonzero exit if any fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include <Eigen/Dense>

#include "interferolab/cli.hpp"
#include "interferolab/hv_experiment.hpp"
#include "interferolab/monte_carlo.hpp"
#include "interferolab/reck_compiler.hpp"
#include "interferolab/tomography.hpp"
#include "support/random_ops.hpp"

using namespace interferolab;
using namespace interferolab::testing;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

// p at beam 1 from the circuit engine.
double engine_p(const Apparatus& ap, const JonesVector& psi, const LinearFilter& a1,
                const LinearFilter& a2) {
    const Netlist net = experiment_netlist(ap, a1, a2);
    const NBeamState in(std::vector<JonesVector>{psi, JonesVector()});
    return detection_probabilities(net, in).at(0).probability;
}

Outcome triple_agreement() {
    TestRng rng(1001);
    const auto zero = LinearFilter::absorber();
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const ExperimentConfig cfg{random_apparatus(rng), random_jones(rng)};
        const LinearFilter a1(random_subunitary2(rng));
        const LinearFilter a2(random_subunitary2(rng));
        const double closed = delta_closed_form(cfg, a1, a2);
        const double diff = delta_quantum(cfg, a1, a2).difference();
        const double engine = engine_p(cfg.apparatus, cfg.psi1, a1, a2) -
                              engine_p(cfg.apparatus, cfg.psi1, a1, zero) -
                              engine_p(cfg.apparatus, cfg.psi1, zero, a2);
        worst = std::max({worst, std::abs(closed - diff), std::abs(closed - engine),
                          std::abs(diff - engine)});
    }
    return {worst <= 1e-12, fmt("1000 configs, max pairwise gap %.3g", worst)};
}

Outcome hv_null() {
    TestRng rng(2002);
    std::vector<HVModel> models{malus_model(Apparatus{})};
    for (std::uint64_t s = 0; s < 20; ++s) models.push_back(random_hv_model(500 + s));
    double worst_quad = 0.0;
    double worst_z = 0.0;
    bool ok = true;
    for (std::size_t m = 0; m < models.size(); ++m) {
        const LinearFilter a1(random_subunitary2(rng));
        const LinearFilter a2(random_subunitary2(rng));
        const double quad = std::abs(expected_delta_hv(models[m], a1, a2).difference());
        const HvEstimate est = mc_hv(models[m], a1, a2, {1'000'000, 7000 + m, 1});
        const double z = est.std_error > 0 ? std::abs(est.estimate) / est.std_error
                                           : (est.estimate == 0.0 ? 0.0 : 1e300);
        worst_quad = std::max(worst_quad, quad);
        worst_z = std::max(worst_z, z);
        ok = ok && quad <= 1e-10 && z <= 4.0;
    }
    return {ok, fmt("21 models, max |quadrature delta| %.3g, max |mc|/stderr %.3g", worst_quad, worst_z)};
}

Outcome dark_port() {
    const ExperimentConfig cfg;
    const auto id = LinearFilter::identity();
    const auto zero = LinearFilter::absorber();
    const DeltaResult r = delta_quantum(cfg, id, id);
    const double err = std::max({std::abs(r.p_both), std::abs(r.p_1 - 0.25), std::abs(r.p_2 - 0.25),
                                 std::abs(r.delta + 0.5), std::abs(r.difference() + 0.5),
                                 std::abs(engine_p(cfg.apparatus, cfg.psi1, id, id)),
                                 std::abs(engine_p(cfg.apparatus, cfg.psi1, id, zero) - 0.25)});
    return {err <= 1e-15, fmt("p(I,I)=%.3g p(I,0)=%.17g delta=%.17g", r.p_both, r.p_1, r.delta)};
}

Outcome phase_fringe() {
    TestRng rng(4004);
    double worst_resid = 0.0;
    double worst_amp = 0.0;
    for (int c = 0; c < 10; ++c) {
        const ExperimentConfig cfg = c == 0 ? ExperimentConfig{} : ExperimentConfig{random_apparatus(rng), random_jones(rng)};
        const LinearFilter a1 = c == 0 ? LinearFilter::identity() : LinearFilter(random_subunitary2(rng));
        const LinearFilter a2 = c == 0 ? LinearFilter::identity() : LinearFilter(random_subunitary2(rng));
        const int steps = 64;
        Eigen::MatrixXd design(steps, 3);
        Eigen::VectorXd y(steps);
        for (int k = 0; k < steps; ++k) {
            const double theta = 2.0 * std::numbers::pi * k / steps;
            const LinearFilter a2t(Mat2(std::polar(1.0, theta) * a2.matrix()));
            y(k) = delta_quantum(cfg, a1, a2t).difference();
            design(k, 0) = std::cos(theta);
            design(k, 1) = std::sin(theta);
            design(k, 2) = 1.0;
        }
        const Eigen::VectorXd coef = design.colPivHouseholderQr().solve(y);
        const double resid = (design * coef - y).cwiseAbs().maxCoeff();
        const Complex overlap = cfg.psi1.amplitudes().dot(a1.matrix().adjoint() * a2.matrix() * cfg.psi1.amplitudes());
        const double amp = 2.0 * cfg.apparatus.q() * std::abs(cfg.apparatus.kappa()) * std::abs(overlap);
        worst_resid = std::max(worst_resid, resid);
        worst_amp = std::max({worst_amp, std::abs(std::hypot(coef(0), coef(1)) - amp), std::abs(coef(2))});
    }
    return {worst_resid <= 1e-10 && worst_amp <= 1e-10,
            fmt("10 fringes x 64 steps, max fit residual %.3g, amplitude/offset error %.3g", worst_resid, worst_amp)};
}

Outcome mixed_consistency() {
    TestRng rng(5005);
    double worst = 0.0;
    double worst_scale = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const Apparatus ap = random_apparatus(rng);
        const JonesVector psi = random_jones(rng);
        const LinearFilter a1(random_subunitary2(rng));
        const LinearFilter a2(random_subunitary2(rng));
        const DeltaResult pure = delta_quantum({ap, psi}, a1, a2);
        const DeltaResult mixed = delta_quantum_mixed({ap, pure_density(psi)}, a1, a2);
        worst = std::max({worst, std::abs(pure.delta - mixed.delta),
                          std::abs(pure.difference() - mixed.difference())});
        const DensityMatrix rho(random_density(rng));
        const double base = delta_closed_form(ap, rho, a1, a2);
        for (double m : {2.0, 10.0}) {
            worst_scale = std::max(worst_scale, std::abs(delta_closed_form(ap, m * rho, a1, a2) - m * base));
        }
    }
    return {worst <= 1e-12 && worst_scale <= 1e-12,
            fmt("1000 cases, pure vs mixed gap %.3g, scaling gap %.3g", worst, worst_scale)};
}

Outcome tomography() {
    TestRng rng(6006);
    double worst_exact = 0.0;
    for (int i = 0; i < 100; ++i) {
        const Apparatus ap = random_apparatus(rng);
        const DensityMatrix rho(random_density(rng, uniform(rng, 0.1, 1.0)));
        const auto design = default_design(ap);
        const auto ms = simulate_measurements(ap, rho, design);
        const double err = max_diff(infer_density(ms, ap).rho.matrix(), rho.matrix());
        worst_exact = std::max(worst_exact, err);
    }

    const Apparatus ap;
    const auto design = default_design(ap);
    const auto dark = LinearFilter::absorber();
    int good = 0;
    double worst_mc = 0.0;
    for (int t = 0; t < 100; ++t) {
        const MixedExperimentConfig cfg{ap, DensityMatrix(random_density(rng))};
        std::vector<DeltaMeasurement> ms;
        std::uint64_t seed = 10'000 + 10 * static_cast<std::uint64_t>(t);
        for (const auto& [a1, a2] : design) {
            const double both = mc_quantum(cfg, a1, a2, {1'000'000, seed++, 1}).estimate;
            const double one = mc_quantum(cfg, a1, dark, {1'000'000, seed++, 1}).estimate;
            const double two = mc_quantum(cfg, dark, a2, {1'000'000, seed++, 1}).estimate;
            ms.push_back({a1, a2, both - one - two});
        }
        const double err = max_diff(infer_density(ms, ap).rho.matrix(), cfg.rho1.matrix());
        worst_mc = std::max(worst_mc, err);
        if (err <= 0.01) ++good;
    }
    return {worst_exact <= 1e-8 && good >= 99,
            fmt("exact max error %.3g; counted: %g/100 trials within 0.01 (worst %.3g)", worst_exact,
                static_cast<double>(good), worst_mc)};
}

Outcome compiler() {
    TestRng rng(7007);
    double worst = 0.0;
    bool counts_ok = true;
    for (std::size_t n = 2; n <= 8; ++n) {
        for (int i = 0; i < 100; ++i) {
            const TargetOperator u(haar_unitary(n, rng));
            const CompiledCircuit c = decompose_unitary(u);
            worst = std::max(worst, verify(c, u).max_error);
            counts_ok = counts_ok && c.mixer_count() <= n * (n - 1) / 2;
        }
    }
    double worst_sub = 0.0;
    bool atten_ok = true;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + rng() % 7;
        const TargetOperator s(random_subunitary(n, rng));
        const CompiledCircuit c = decompose_subunitary(s);
        worst_sub = std::max(worst_sub, verify(c, s).max_error);
        for (const Stage& st : c.stages) {
            if (const auto* a = std::get_if<AttenuationStage>(&st)) {
                atten_ok = atten_ok && a->amplitude >= 0.0 && a->amplitude <= 1.0;
            }
        }
    }
    return {worst <= 1e-10 && counts_ok && worst_sub <= 1e-10 && atten_ok,
            fmt("700 unitaries max error %.3g; 100 subunitary max error %.3g", worst, worst_sub) +
                (counts_ok ? "" : "; mixer bound violated") + (atten_ok ? "" : "; attenuation out of range")};
}

Outcome conservation() {
    TestRng rng(8008);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        Netlist net;
        net.n_beams = 2 + rng() % 6;
        for (int e = 0; e < 20; ++e) {
            const std::size_t a = 1 + rng() % net.n_beams;
            if (rng() % 2) {
                std::size_t b = 1 + rng() % net.n_beams;
                if (b == a) b = a % net.n_beams + 1;
                net.add_beamsplitter(a, b, BeamSplitter(haar_unitary2(rng)));
            } else {
                net.add_mirror(a, Mirror(std::polar(1.0, uniform(rng, -4.0, 4.0))));
            }
        }
        std::vector<JonesVector> beams;
        for (std::size_t b = 0; b < net.n_beams; ++b) beams.push_back(random_jones(rng, 1.0 / std::sqrt(net.n_beams)));
        const NBeamState in(beams);
        worst = std::max(worst, std::abs(evolve(net, in).total_presence() - in.total_presence()));
    }
    double worst_gain = -1.0;
    for (int i = 0; i < 100; ++i) {
        const LinearFilter f(random_subunitary2(rng));
        for (int k = 0; k < 10; ++k) {
            const JonesVector s = random_jones(rng);
            worst_gain = std::max(worst_gain, presence_probability(apply_filter(f, s)) - presence_probability(s));
        }
    }
    return {worst <= 1e-12 && worst_gain <= 1e-12,
            fmt("unitary netlists max drift %.3g; filters max gain %.3g", worst, worst_gain)};
}

std::string cli_output(std::vector<std::string> args) {
    args.insert(args.begin(), "interferolab");
    std::ostringstream out;
    std::ostringstream err;
    const int status = run_cli(args, out, err);
    return std::to_string(status) + "\n" + out.str();
}

Outcome determinism() {
    bool ok = true;
    std::size_t checked = 0;
    for (const char* workers : {"1", "4"}) {
        const std::vector<std::vector<std::string>> cmds{
            {"mc-hv", "--samples", "200000", "--seed", "42", "--workers", workers},
            {"mc-quantum", "--samples", "200000", "--seed", "42", "--workers", workers},
            {"sweep", "--steps", "8", "--range", "0:2pi", "--samples", "50000", "--seed", "3", "--workers", workers},
        };
        for (const auto& cmd : cmds) {
            const std::string first = cli_output(cmd);
            ok = ok && first.rfind("0\n", 0) == 0 && first == cli_output(cmd);
            ++checked;
        }
    }
    const HVModel model = malus_model(Apparatus{});
    const auto id = LinearFilter::identity();
    for (unsigned w : {1u, 3u, 8u}) {
        const McOptions o{300'001, 99, w};
        ok = ok && mc_hv(model, id, id, o) == mc_hv_serial(model, id, id, o);
        ok = ok && mc_bernoulli(0.3, o) == mc_bernoulli_serial(0.3, o);
        checked += 2;
    }
    return {ok, fmt("%g repeat/serial-vs-parallel comparisons", static_cast<double>(checked))};
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        std::function<Outcome()> run;
        double time_limit;  // seconds, 0 = none
    };
    const std::vector<Criterion> criteria{
        {1, "quantum prediction triple agreement", triple_agreement, 5.0},
        {2, "hidden-variable null", hv_null, 30.0},
        {3, "dark-port worked example", dark_port, 0.0},
        {4, "phase fringe", phase_fringe, 0.0},
        {5, "density-matrix consistency", mixed_consistency, 0.0},
        {6, "tomography", tomography, 0.0},
        {7, "compiler", compiler, 60.0},
        {8, "conservation", conservation, 0.0},
        {9, "determinism", determinism, 0.0},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = Clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - start).count();
        if (c.time_limit > 0 && secs >= c.time_limit) {
            o.ok = false;
            o.detail += fmt("; over time limit %.0f s", c.time_limit);
        }
        if (!o.ok) ++failures;
        std::printf("[%s] %d %s (%s; %.2f s)\n", o.ok ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
