#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include <json.hpp>

#include "interferolab/circuit_engine.hpp"
#include "interferolab/hv_experiment.hpp"

namespace interferolab {

using Json = nlohmann::ordered_json;

// Complex scalars are [re, im]; a bare number is read as a real scalar.
// Matrices are arrays of rows. Jones vectors are [c_h, c_v].

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j, std::string_view what);
Json matrix_to_json(const MatX& m);
MatX matrix_from_json(const Json& j, std::string_view what);
Mat2 mat2_from_json(const Json& j, std::string_view what);
Json jones_to_json(const JonesVector& v);
JonesVector jones_from_json(const Json& j, std::string_view what);

/// {"n_beams": n, "elements": [{type, beams, params[, name][, comment]}...]}
/// with detectors written after the optical elements.
Json netlist_to_json(const Netlist& net);
/// Throws ValidationError naming the offending element, then runs
/// Netlist::validate().
Netlist netlist_from_json(const Json& j);

/// Pretty-prints a top-level object with one array element per line.
std::string format_document(const Json& j);

std::string serialize_netlist(const Netlist& net);
Netlist parse_netlist(std::string_view text);

/// Interferometer description: a netlist-shaped file holding the two splitters
/// (named "sa"/"sb", or the first and second beamsplitter), the detector,
/// optional default filters "a1"/"a2", and a "source" object with either
/// "psi1" (Jones vector) or "rho1" (density matrix).
struct ExperimentFile {
    Apparatus apparatus;
    std::variant<JonesVector, DensityMatrix> source = JonesVector(1.0, 0.0);
    LinearFilter a1 = LinearFilter::identity();
    LinearFilter a2 = LinearFilter::identity();

    bool mixed() const { return std::holds_alternative<DensityMatrix>(source); }
    ExperimentConfig pure_config() const;
    MixedExperimentConfig mixed_config() const;
};

/// Symmetric 50/50 splitters, q = 1, psi1 = (1, 0), open filters: the
/// dark-port demonstrator.
ExperimentFile default_experiment();

ExperimentFile experiment_from_json(const Json& j);
Json experiment_to_json(const ExperimentFile& e);

}  // namespace interferolab
