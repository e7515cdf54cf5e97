#include "interferolab/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "interferolab/csv.hpp"
#include "interferolab/errors.hpp"
#include "interferolab/monte_carlo.hpp"
#include "interferolab/netlist_io.hpp"
#include "interferolab/reck_compiler.hpp"
#include "interferolab/tomography.hpp"

namespace interferolab {

namespace {

struct Options {
    std::string config;
    std::string a1;
    std::string a2;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
    unsigned workers = 1;
    std::size_t steps = 0;
    std::string range;
    std::string param = "phase";
    std::string out;
    bool check = false;
    std::string input;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Json parse_json_text(const std::string& text, std::string_view what) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw ValidationError(std::string(what) + ": malformed JSON: " + e.what());
    }
}

ExperimentFile load_experiment(const Options& o) {
    ExperimentFile e = o.config.empty() ? default_experiment()
                                        : experiment_from_json(parse_json_text(read_file(o.config), "config"));
    auto filter_arg = [](const std::string& text, const char* name) {
        const Mat2 m = mat2_from_json(parse_json_text(text, name), name);
        try {
            return LinearFilter(m);
        } catch (const ValidationError& err) {
            throw ValidationError(std::string("filter ") + name + ": " + err.what());
        }
    };
    if (!o.a1.empty()) e.a1 = filter_arg(o.a1, "a1");
    if (!o.a2.empty()) e.a2 = filter_arg(o.a2, "a2");
    return e;
}

std::uint64_t resolve_seed(const Options& o) {
    if (o.seed) return *o.seed;
    if (const char* env = std::getenv("INTERFEROLAB_SEED"); env != nullptr && *env != '\0') {
        char* end = nullptr;
        errno = 0;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (errno != 0 || end == env || *end != '\0' || env[0] == '-') {
            throw ValidationError("INTERFEROLAB_SEED is not an unsigned integer");
        }
        return v;
    }
    throw ValidationError("missing --seed (or INTERFEROLAB_SEED) for a stochastic command");
}

McOptions mc_options(const Options& o) {
    McOptions mc;
    mc.samples = o.samples.value_or(1'000'000);
    mc.seed = resolve_seed(o);
    mc.workers = o.workers;
    if (mc.samples == 0) throw ValidationError("--samples must be at least 1");
    if (mc.workers == 0) throw ValidationError("--workers must be at least 1");
    return mc;
}

DeltaResult quantum_delta(const ExperimentFile& e, const LinearFilter& a1, const LinearFilter& a2) {
    return e.mixed() ? delta_quantum_mixed(e.mixed_config(), a1, a2)
                     : delta_quantum(e.pure_config(), a1, a2);
}

BernoulliEstimate quantum_counts(const ExperimentFile& e, const LinearFilter& a1,
                                 const LinearFilter& a2, const McOptions& mc) {
    return e.mixed() ? mc_quantum(e.mixed_config(), a1, a2, mc)
                     : mc_quantum(e.pure_config(), a1, a2, mc);
}

// "LO:HI" or "[LO:HI]" includes HI; "[LO:HI)" excludes it. Each bound is a
// decimal number optionally followed by "pi".
struct Range {
    double lo;
    double hi;
    bool include_hi;
};

double parse_bound(std::string s) {
    double factor = 1.0;
    if (s.size() >= 2 && s.substr(s.size() - 2) == "pi") {
        factor = std::numbers::pi;
        s.resize(s.size() - 2);
        if (s.empty() || s == "+") s = "1";
        if (s == "-") s = "-1";
    }
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw ValidationError("--range: cannot parse bound \"" + s + "\"");
    }
    if (used != s.size()) throw ValidationError("--range: cannot parse bound \"" + s + "\"");
    return v * factor;
}

Range parse_range(std::string s) {
    Range r{0.0, 0.0, true};
    if (!s.empty() && s.front() == '[') s.erase(0, 1);
    if (!s.empty() && (s.back() == ']' || s.back() == ')')) {
        r.include_hi = s.back() == ']';
        s.pop_back();
    }
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw ValidationError("--range must be LO:HI");
    r.lo = parse_bound(s.substr(0, colon));
    r.hi = parse_bound(s.substr(colon + 1));
    if (!std::isfinite(r.lo) || !std::isfinite(r.hi) || !(r.hi > r.lo)) {
        throw ValidationError("--range is empty");
    }
    return r;
}

Json seeded(Json j, const McOptions& mc) {
    j["n"] = mc.samples;
    j["seed"] = mc.seed;
    return j;
}

int cmd_delta(const Options& o, std::ostream& out) {
    const ExperimentFile e = load_experiment(o);
    const DeltaResult r = quantum_delta(e, e.a1, e.a2);
    Json j;
    j["p_both"] = r.p_both;
    j["p_1"] = r.p_1;
    j["p_2"] = r.p_2;
    j["delta"] = r.delta;
    j["delta_hv"] = delta_hv(malus_model(e.apparatus), e.a1, e.a2);
    out << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out) {
    const ExperimentFile e = load_experiment(o);
    if (o.steps < 2) throw ValidationError("--steps must be at least 2");
    if (o.range.empty()) throw ValidationError("--range is required");
    if (o.param != "phase" && o.param != "angle") {
        throw ValidationError("--param must be \"phase\" or \"angle\"");
    }
    const Range range = parse_range(o.range);
    const std::optional<McOptions> mc =
        o.samples ? std::optional<McOptions>(mc_options(o)) : std::nullopt;
    const double denom = static_cast<double>(range.include_hi ? o.steps - 1 : o.steps);

    out << "setting,p_both,p_1,p_2,delta_qm,delta_hv,stderr\n";
    const auto dark = LinearFilter::absorber();
    for (std::size_t k = 0; k < o.steps; ++k) {
        const double theta = range.lo + (range.hi - range.lo) * static_cast<double>(k) / denom;
        LinearFilter a1 = e.a1;
        LinearFilter a2 = e.a2;
        if (o.param == "phase") {
            a2 = LinearFilter(Mat2(std::polar(1.0, theta) * e.a2.matrix()));
        } else {
            a1 = LinearFilter::polarizer(theta);
        }
        const double hv = delta_hv(malus_model(e.apparatus), a1, a2);
        out << format_double17(theta) << ',';
        if (!mc) {
            const DeltaResult r = quantum_delta(e, a1, a2);
            out << format_double17(r.p_both) << ',' << format_double17(r.p_1) << ','
                << format_double17(r.p_2) << ',' << format_double17(r.delta) << ','
                << format_double17(hv) << ",\n";
        } else {
            // Three independent counting runs per setting, one substream each.
            auto run = [&](const LinearFilter& f1, const LinearFilter& f2, std::uint64_t j) {
                McOptions sub = *mc;
                sub.seed = substream_seed(mc->seed, 3 * k + j);
                return quantum_counts(e, f1, f2, sub);
            };
            const auto both = run(a1, a2, 0);
            const auto one = run(a1, dark, 1);
            const auto two = run(dark, a2, 2);
            const double se = std::sqrt(both.std_error * both.std_error +
                                        one.std_error * one.std_error +
                                        two.std_error * two.std_error);
            out << format_double17(both.estimate) << ',' << format_double17(one.estimate) << ','
                << format_double17(two.estimate) << ','
                << format_double17(both.estimate - one.estimate - two.estimate) << ','
                << format_double17(hv) << ',' << format_double17(se) << '\n';
        }
    }
    return kExitOk;
}

int cmd_mc_hv(const Options& o, std::ostream& out) {
    const ExperimentFile e = load_experiment(o);
    const McOptions mc = mc_options(o);
    const HvEstimate r = mc_hv(malus_model(e.apparatus), e.a1, e.a2, mc);
    Json j;
    j["estimate"] = r.estimate;
    j["stderr"] = r.std_error;
    j = seeded(std::move(j), mc);
    j["clamp_warnings"] = r.clamp_warnings;
    j["workers"] = r.workers;
    j["model"] = "malus";
    j["p_both"] = r.p_both;
    j["p_1"] = r.p_1;
    j["p_2"] = r.p_2;
    out << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_mc_quantum(const Options& o, std::ostream& out) {
    const ExperimentFile e = load_experiment(o);
    const McOptions mc = mc_options(o);
    const BernoulliEstimate r = quantum_counts(e, e.a1, e.a2, mc);
    Json j;
    j["estimate"] = r.estimate;
    j["stderr"] = r.std_error;
    j = seeded(std::move(j), mc);
    j["clamp_warnings"] = 0;
    j["workers"] = r.workers;
    out << j.dump(2) << "\n";
    return kExitOk;
}

int cmd_compile(const Options& o, std::ostream& out, std::ostream& report) {
    if (o.input.empty()) throw ValidationError("compile needs a matrix file");
    Json j = parse_json_text(read_file(o.input), "matrix");
    if (j.is_object() && j.contains("matrix")) j = j.at("matrix");
    const TargetOperator target(matrix_from_json(j, "matrix"));
    const CompiledCircuit circuit = target.kind() == OperatorKind::unitary
                                        ? decompose_unitary(target)
                                        : decompose_subunitary(target);
    out << serialize_netlist(to_netlist(circuit));
    if (!o.check) return kExitOk;

    const Verification v = verify(circuit, target);
    Json r;
    r["n_modes"] = circuit.n_modes;
    r["kind"] = target.kind() == OperatorKind::unitary ? "unitary" : "subunitary";
    r["mixers"] = circuit.mixer_count();
    r["max_error"] = v.max_error;
    r["pass"] = v.ok;
    report << r.dump(2) << "\n";
    return v.ok ? kExitOk : kExitRuntime;
}

const LinearFilter& column_filter(const CsvRow& row, std::size_t col,
                                  std::vector<LinearFilter>& store, std::size_t line,
                                  const char* name) {
    const std::string what = "csv line " + std::to_string(line) + " " + name;
    const Mat2 m = mat2_from_json(parse_json_text(row.at(col), what), what);
    try {
        store.emplace_back(m);
    } catch (const ValidationError& err) {
        throw ValidationError(what + ": " + err.what());
    }
    return store.back();
}

int cmd_tomo(const Options& o, std::ostream& out) {
    if (o.input.empty()) throw ValidationError("tomo needs a measurement CSV file");
    const ExperimentFile e = load_experiment(o);
    std::istringstream text(read_file(o.input));
    const auto rows = read_csv(text);
    if (rows.empty()) throw ValidationError("measurement CSV is empty");
    const CsvRow& header = rows.front();
    auto column = [&](const char* name) {
        for (std::size_t c = 0; c < header.size(); ++c) {
            if (header[c] == name) return c;
        }
        throw ValidationError(std::string("measurement CSV lacks column ") + name);
    };
    const std::size_t c1 = column("a1");
    const std::size_t c2 = column("a2");
    const std::size_t cd = column("delta");
    std::vector<DeltaMeasurement> ms;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const CsvRow& row = rows[i];
        if (row.size() == 1 && row[0].empty()) continue;
        if (row.size() != header.size()) {
            throw ValidationError("csv line " + std::to_string(i + 1) + ": wrong field count");
        }
        std::vector<LinearFilter> store;
        store.reserve(2);
        const LinearFilter a1 = column_filter(row, c1, store, i + 1, "a1");
        const LinearFilter a2 = column_filter(row, c2, store, i + 1, "a2");
        double delta = 0.0;
        try {
            std::size_t used = 0;
            delta = std::stod(row[cd], &used);
            if (used != row[cd].size()) throw std::invalid_argument("trailing");
        } catch (const std::exception&) {
            throw ValidationError("csv line " + std::to_string(i + 1) + ": delta is not a number");
        }
        ms.push_back({a1, a2, delta});
    }
    const DensityEstimate est = infer_density(ms, e.apparatus);
    const DensityVerdict verdict = validate_density(est.rho);
    Json j;
    j["rho"] = matrix_to_json(est.rho.matrix());
    j["valid"] = verdict.ok();
    j["diagnostic"] = verdict.diagnostic;
    j["residual_norm"] = est.residual_norm;
    j["measurements"] = ms.size();
    out << j.dump(2) << "\n";
    return kExitOk;
}

void add_experiment_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--config", o.config, "Interferometer config file (JSON)");
    cmd->add_option("--a1", o.a1, "Filter on beam 1, 2x2 complex matrix as JSON");
    cmd->add_option("--a2", o.a2, "Filter on beam 2, 2x2 complex matrix as JSON");
}

void add_mc_flags(CLI::App* cmd, Options& o) {
    cmd->add_option("--samples", o.samples, "Number of photons");
    cmd->add_option("--seed", o.seed, "Master seed (falls back to INTERFEROLAB_SEED)");
    cmd->add_option("--workers", o.workers, "Worker substreams")->default_val(1);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Single-photon interference experiments, hidden-variable checks and "
                 "operator compilation"};
    app.require_subcommand(1);
    Options o;

    auto* delta = app.add_subcommand("delta", "Quantum and hidden-variable predictions of Delta");
    add_experiment_flags(delta, o);

    auto* sweep = app.add_subcommand("sweep", "Sweep a filter phase or polarizer angle (CSV)");
    add_experiment_flags(sweep, o);
    sweep->add_option("--param", o.param, "phase (A2 -> e^{i theta} A2) or angle (A1 polarizer)");
    sweep->add_option("--steps", o.steps, "Number of settings")->required();
    sweep->add_option("--range", o.range, "LO:HI in radians; [LO:HI) excludes HI")->required();
    sweep->add_option("--samples", o.samples, "Photon-count each setting instead of closed form");
    sweep->add_option("--seed", o.seed, "Master seed for counted sweeps");
    sweep->add_option("--workers", o.workers, "Worker substreams")->default_val(1);

    auto* mchv = app.add_subcommand("mc-hv", "Monte Carlo Delta under the Malus hidden-variable model");
    add_experiment_flags(mchv, o);
    add_mc_flags(mchv, o);

    auto* mcq = app.add_subcommand("mc-quantum", "Photon-counting estimate of p(A1, A2)");
    add_experiment_flags(mcq, o);
    add_mc_flags(mcq, o);

    auto* compile = app.add_subcommand("compile", "Compile a (sub)unitary matrix into a netlist");
    compile->add_option("matrix", o.input, "Matrix file (JSON array of rows)")->required();
    compile->add_flag("--check", o.check, "Verify the reconstruction (tolerance 1e-10)");

    auto* tomo = app.add_subcommand("tomo", "Infer the source density matrix from Delta data");
    tomo->add_option("measurements", o.input, "CSV with columns a1,a2,delta")->required();
    tomo->add_option("--config", o.config, "Interferometer config file (JSON)");

    for (auto* cmd : {delta, sweep, mchv, mcq, compile, tomo}) {
        cmd->add_option("--out", o.out, "Write results to PATH instead of standard output");
    }

    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitValidation;
    }

    try {
        std::ostringstream buffer;
        int status = kExitOk;
        std::ostream& report = o.out.empty() ? err : out;
        if (delta->parsed()) status = cmd_delta(o, buffer);
        else if (sweep->parsed()) status = cmd_sweep(o, buffer);
        else if (mchv->parsed()) status = cmd_mc_hv(o, buffer);
        else if (mcq->parsed()) status = cmd_mc_quantum(o, buffer);
        else if (compile->parsed()) status = cmd_compile(o, buffer, report);
        else if (tomo->parsed()) status = cmd_tomo(o, buffer);

        if (o.out.empty()) {
            out << buffer.str();
        } else {
            std::ofstream file(o.out, std::ios::binary);
            if (!file) throw std::runtime_error("cannot write " + o.out);
            file << buffer.str();
        }
        return status;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const EstimationError& e) {
        err << "estimation error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
}

}  // namespace interferolab
