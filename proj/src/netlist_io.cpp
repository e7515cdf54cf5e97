#include "interferolab/netlist_io.hpp"

#include <sstream>

#include "interferolab/errors.hpp"

namespace interferolab {

namespace {

[[noreturn]] void fail(std::string_view what, std::string_view problem) {
    throw ValidationError(std::string(what) + ": " + std::string(problem));
}

template <typename Build>
auto with_context(std::string_view what, Build&& build) {
    try {
        return build();
    } catch (const StructuralError&) {
        throw;
    } catch (const ValidationError& e) {
        fail(what, e.what());
    }
}

const Json& member(const Json& obj, const char* key, std::string_view what) {
    if (!obj.is_object() || !obj.contains(key)) {
        fail(what, std::string("missing field \"") + key + "\"");
    }
    return obj.at(key);
}

double real_from_json(const Json& j, std::string_view what) {
    if (!j.is_number()) fail(what, "expected a number");
    return j.get<double>();
}

std::size_t beam_from_json(const Json& j, std::string_view what) {
    if (!j.is_number_integer() || j.get<long long>() < 1) {
        fail(what, "beam indices must be positive integers");
    }
    return j.get<std::size_t>();
}

std::vector<std::size_t> beams_from_json(const Json& e, std::size_t expected,
                                         std::string_view what) {
    const Json& beams = member(e, "beams", what);
    if (!beams.is_array() || beams.size() != expected) {
        fail(what, "expected " + std::to_string(expected) + " beam index(es)");
    }
    std::vector<std::size_t> out;
    for (const auto& b : beams) out.push_back(beam_from_json(b, what));
    return out;
}

std::string optional_string(const Json& e, const char* key) {
    if (e.contains(key) && e.at(key).is_string()) return e.at(key).get<std::string>();
    return {};
}

std::string element_label(const Json& e, std::size_t position) {
    const std::string type = e.is_object() && e.contains("type") && e.at("type").is_string()
                                 ? e.at("type").get<std::string>()
                                 : std::string("element");
    const std::string name = e.is_object() ? optional_string(e, "name") : std::string();
    return type + " " + (name.empty() ? "#" + std::to_string(position + 1) : name);
}

Json element_json(const char* type, std::vector<std::size_t> beams, Json params,
                  const std::string& name, const std::string& comment) {
    Json e;
    e["type"] = type;
    e["beams"] = beams;
    e["params"] = std::move(params);
    if (!name.empty()) e["name"] = name;
    if (!comment.empty()) e["comment"] = comment;
    return e;
}

// Adds one parsed element to `net`; `label` prefixes validation messages.
void add_element(Netlist& net, const Json& e, const std::string& label) {
    if (!e.is_object()) fail(label, "element must be an object");
    const std::string type = member(e, "type", label).is_string()
                                 ? e.at("type").get<std::string>()
                                 : std::string();
    const Json& params = member(e, "params", label);
    const std::string name = optional_string(e, "name");
    const std::string comment = optional_string(e, "comment");
    if (type == "beamsplitter") {
        const auto beams = beams_from_json(e, 2, label);
        const Mat2 s = mat2_from_json(member(params, "s", label), label);
        net.add_beamsplitter(beams[0], beams[1], with_context(label, [&] { return BeamSplitter(s); }),
                             name, comment);
    } else if (type == "filter") {
        const auto beams = beams_from_json(e, 1, label);
        const Mat2 a = mat2_from_json(member(params, "a", label), label);
        net.add_filter(beams[0], with_context(label, [&] { return LinearFilter(a); }), name,
                       comment);
    } else if (type == "mirror") {
        const auto beams = beams_from_json(e, 1, label);
        const Complex phase = complex_from_json(member(params, "phase", label), label);
        net.add_mirror(beams[0], with_context(label, [&] { return Mirror(phase); }), name, comment);
    } else if (type == "detector") {
        const auto beams = beams_from_json(e, 1, label);
        const double q = real_from_json(member(params, "q", label), label);
        net.add_detector(beams[0], with_context(label, [&] { return Detector(q); }), name);
    } else {
        fail(label, "unknown element type \"" + type + "\"");
    }
}

std::size_t n_beams_from_json(const Json& j) {
    const Json& n = member(j, "n_beams", "netlist");
    if (!n.is_number_integer() || n.get<long long>() < 1) {
        fail("netlist", "n_beams must be a positive integer");
    }
    return n.get<std::size_t>();
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, std::string_view what) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        fail(what, "complex numbers must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

Json matrix_to_json(const MatX& m) {
    Json rows = Json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

MatX matrix_from_json(const Json& j, std::string_view what) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        fail(what, "matrix must be a non-empty array of rows");
    }
    const std::size_t cols = j[0].size();
    MatX m(static_cast<Eigen::Index>(j.size()), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < j.size(); ++r) {
        if (!j[r].is_array() || j[r].size() != cols) fail(what, "matrix rows differ in length");
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from_json(j[r][c], what);
        }
    }
    return m;
}

Mat2 mat2_from_json(const Json& j, std::string_view what) {
    const MatX m = matrix_from_json(j, what);
    if (m.rows() != 2 || m.cols() != 2) fail(what, "expected a 2x2 matrix");
    return m;
}

Json jones_to_json(const JonesVector& v) {
    return Json::array({complex_to_json(v.h()), complex_to_json(v.v())});
}

JonesVector jones_from_json(const Json& j, std::string_view what) {
    if (!j.is_array() || j.size() != 2) fail(what, "Jones vector must be [c_h, c_v]");
    return {complex_from_json(j[0], what), complex_from_json(j[1], what)};
}

Json netlist_to_json(const Netlist& net) {
    Json elements = Json::array();
    for (const auto& e : net.elements) {
        if (const auto* bs = std::get_if<PlacedBeamSplitter>(&e.op)) {
            elements.push_back(element_json("beamsplitter", {bs->beam_a, bs->beam_b},
                                            Json{{"s", matrix_to_json(bs->splitter.matrix())}},
                                            e.name, e.comment));
        } else if (const auto* f = std::get_if<PlacedFilter>(&e.op)) {
            elements.push_back(element_json("filter", {f->beam},
                                            Json{{"a", matrix_to_json(f->filter.matrix())}},
                                            e.name, e.comment));
        } else {
            const auto& m = std::get<PlacedMirror>(e.op);
            elements.push_back(element_json("mirror", {m.beam},
                                            Json{{"phase", complex_to_json(m.mirror.phase())}},
                                            e.name, e.comment));
        }
    }
    for (const auto& d : net.detectors) {
        elements.push_back(element_json("detector", {d.beam},
                                        Json{{"q", d.detector.efficiency()}}, d.name, {}));
    }
    Json j;
    j["n_beams"] = net.n_beams;
    j["elements"] = std::move(elements);
    return j;
}

Netlist netlist_from_json(const Json& j) {
    if (!j.is_object()) fail("netlist", "top level must be an object");
    Netlist net;
    net.n_beams = n_beams_from_json(j);
    const Json& elements = member(j, "elements", "netlist");
    if (!elements.is_array()) fail("netlist", "elements must be an array");
    for (std::size_t i = 0; i < elements.size(); ++i) {
        add_element(net, elements[i], element_label(elements[i], i));
    }
    net.validate();
    return net;
}

std::string format_document(const Json& j) {
    if (!j.is_object()) return j.dump() + "\n";
    std::string out = "{\n";
    std::size_t k = 0;
    for (const auto& [key, value] : j.items()) {
        out += "  " + Json(key).dump() + ": ";
        if (value.is_array() && !value.empty() && value.front().is_object()) {
            out += "[\n";
            for (std::size_t i = 0; i < value.size(); ++i) {
                out += "    " + value[i].dump() + (i + 1 < value.size() ? ",\n" : "\n");
            }
            out += "  ]";
        } else {
            out += value.dump();
        }
        out += ++k < j.size() ? ",\n" : "\n";
    }
    return out + "}\n";
}

std::string serialize_netlist(const Netlist& net) { return format_document(netlist_to_json(net)); }

Netlist parse_netlist(std::string_view text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::parse_error& e) {
        fail("netlist", std::string("malformed JSON: ") + e.what());
    }
    return netlist_from_json(j);
}

ExperimentConfig ExperimentFile::pure_config() const {
    if (mixed()) throw ValidationError("experiment source is a density matrix, not a pure state");
    return {apparatus, std::get<JonesVector>(source)};
}

MixedExperimentConfig ExperimentFile::mixed_config() const {
    if (mixed()) return {apparatus, std::get<DensityMatrix>(source)};
    return {apparatus, pure_density(std::get<JonesVector>(source))};
}

ExperimentFile default_experiment() { return {}; }

ExperimentFile experiment_from_json(const Json& j) {
    if (!j.is_object()) fail("config", "top level must be an object");
    const Json& elements = member(j, "elements", "config");
    if (!elements.is_array()) fail("config", "elements must be an array");

    // Beam splitters without names take the roles sa, sb in order of
    // appearance; filters default to a1/a2 by the beam they sit on.
    Json named = Json::array();
    std::size_t splitters = 0;
    for (const auto& e : elements) {
        Json copy = e;
        if (copy.is_object() && optional_string(copy, "name").empty()) {
            const std::string type = optional_string(copy, "type");
            if (type == "beamsplitter") {
                copy["name"] = splitters == 0 ? "sa" : (splitters == 1 ? "sb" : "bs");
            } else if (type == "filter" && copy.contains("beams") && copy["beams"].is_array() &&
                       copy["beams"].size() == 1) {
                copy["name"] = copy["beams"][0] == 1 ? "a1" : "a2";
            }
        }
        if (optional_string(copy, "type") == "beamsplitter") ++splitters;
        named.push_back(std::move(copy));
    }

    Netlist net;
    net.n_beams = j.contains("n_beams") ? n_beams_from_json(j) : 2;
    if (net.n_beams != 2) fail("config", "the interferometer has exactly 2 beams");
    for (std::size_t i = 0; i < named.size(); ++i) add_element(net, named[i], element_label(named[i], i));
    net.validate();

    ExperimentFile out;
    const BeamSplitter* sa = nullptr;
    const BeamSplitter* sb = nullptr;
    for (const auto& e : net.elements) {
        if (const auto* bs = std::get_if<PlacedBeamSplitter>(&e.op)) {
            if (e.name == "sa") sa = &bs->splitter;
            if (e.name == "sb") sb = &bs->splitter;
        } else if (const auto* f = std::get_if<PlacedFilter>(&e.op)) {
            if (e.name == "a1") out.a1 = f->filter;
            if (e.name == "a2") out.a2 = f->filter;
        } else if (std::get<PlacedMirror>(e.op).mirror.phase() != Complex(1.0)) {
            // A differential path phase would rotate kappa; not modeled here.
            fail("config", "interferometer mirrors must have phase 1; use a netlist for "
                           "asymmetric arrangements");
        }
    }
    if (sa == nullptr) fail("config", "missing beamsplitter sa");
    if (sb == nullptr) fail("config", "missing beamsplitter sb");
    if (net.detectors.size() != 1) fail("config", "expected exactly one detector");
    out.apparatus = Apparatus{*sa, *sb, net.detectors.front().detector};

    if (j.contains("source")) {
        const Json& src = j.at("source");
        if (src.contains("psi1") && src.contains("rho1")) {
            fail("source", "give either psi1 or rho1, not both");
        } else if (src.contains("psi1")) {
            out.source = jones_from_json(src.at("psi1"), "source psi1");
        } else if (src.contains("rho1")) {
            DensityMatrix rho(mat2_from_json(src.at("rho1"), "source rho1"));
            if (const auto verdict = validate_density(rho); !verdict) {
                fail("source rho1", verdict.diagnostic);
            }
            out.source = rho;
        } else {
            fail("source", "expected psi1 or rho1");
        }
    }
    return out;
}

Json experiment_to_json(const ExperimentFile& e) {
    Netlist net = experiment_netlist(e.apparatus, e.a1, e.a2);
    Json j = netlist_to_json(net);
    Json source;
    if (e.mixed()) {
        source["rho1"] = matrix_to_json(std::get<DensityMatrix>(e.source).matrix());
    } else {
        source["psi1"] = jones_to_json(std::get<JonesVector>(e.source));
    }
    j["source"] = std::move(source);
    return j;
}

}  // namespace interferolab
