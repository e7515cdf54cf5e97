#include "interferolab/circuit_engine.hpp"

#include <sstream>

#include "interferolab/errors.hpp"

namespace interferolab {

double NBeamState::total_presence() const {
    double total = 0.0;
    for (const auto& b : beams_) total += presence_probability(b);
    return total;
}

VecX NBeamState::component(int polarization) const {
    VecX out(static_cast<Eigen::Index>(beams_.size()));
    for (std::size_t k = 0; k < beams_.size(); ++k) {
        out(static_cast<Eigen::Index>(k)) = beams_[k].amplitudes()(polarization);
    }
    return out;
}

void NBeamState::set_component(int polarization, const VecX& amps) {
    for (std::size_t k = 0; k < beams_.size(); ++k) {
        Vec2 v = beams_[k].amplitudes();
        v(polarization) = amps(static_cast<Eigen::Index>(k));
        beams_[k] = JonesVector(v);
    }
}

NBeamState operator+(const NBeamState& a, const NBeamState& b) {
    if (a.size() != b.size()) throw StructuralError("adding states of different beam counts");
    std::vector<JonesVector> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a.beams_[k] + b.beams_[k];
    return NBeamState(std::move(out));
}

NBeamState operator*(Complex s, const NBeamState& a) {
    std::vector<JonesVector> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = s * a.beams_[k];
    return NBeamState(std::move(out));
}

const char* element_type_name(const NetlistElement& e) {
    struct Namer {
        const char* operator()(const PlacedBeamSplitter&) const { return "beamsplitter"; }
        const char* operator()(const PlacedFilter&) const { return "filter"; }
        const char* operator()(const PlacedMirror&) const { return "mirror"; }
    };
    return std::visit(Namer{}, e.op);
}

namespace {

std::string describe(std::size_t position, const char* type, const std::string& name) {
    std::ostringstream out;
    out << type << " #" << position + 1;
    if (!name.empty()) out << " (" << name << ")";
    return out.str();
}

}  // namespace

void Netlist::validate() const {
    if (n_beams == 0) throw StructuralError("netlist must have at least one beam");
    auto in_range = [this](std::size_t beam) { return beam >= 1 && beam <= n_beams; };
    for (std::size_t i = 0; i < elements.size(); ++i) {
        const auto& e = elements[i];
        const auto where = describe(i, element_type_name(e), e.name);
        if (const auto* bs = std::get_if<PlacedBeamSplitter>(&e.op)) {
            if (!in_range(bs->beam_a) || !in_range(bs->beam_b)) {
                throw StructuralError(where + ": beam index out of range [1, " +
                                      std::to_string(n_beams) + "]");
            }
            if (bs->beam_a == bs->beam_b) {
                throw StructuralError(where + ": beam pair must be two distinct beams");
            }
        } else {
            const std::size_t beam = std::holds_alternative<PlacedFilter>(e.op)
                                         ? std::get<PlacedFilter>(e.op).beam
                                         : std::get<PlacedMirror>(e.op).beam;
            if (!in_range(beam)) {
                throw StructuralError(where + ": beam index out of range [1, " +
                                      std::to_string(n_beams) + "]");
            }
        }
    }
    for (std::size_t i = 0; i < detectors.size(); ++i) {
        if (!in_range(detectors[i].beam)) {
            throw StructuralError(describe(i, "detector", detectors[i].name) +
                                  ": beam index out of range [1, " + std::to_string(n_beams) +
                                  "]");
        }
    }
}

Netlist& Netlist::add_beamsplitter(std::size_t a, std::size_t b, const BeamSplitter& s,
                                   std::string name, std::string comment) {
    elements.push_back({PlacedBeamSplitter{a, b, s}, std::move(name), std::move(comment)});
    return *this;
}

Netlist& Netlist::add_filter(std::size_t beam, const LinearFilter& f, std::string name,
                             std::string comment) {
    elements.push_back({PlacedFilter{beam, f}, std::move(name), std::move(comment)});
    return *this;
}

Netlist& Netlist::add_mirror(std::size_t beam, const Mirror& m, std::string name,
                             std::string comment) {
    elements.push_back({PlacedMirror{beam, m}, std::move(name), std::move(comment)});
    return *this;
}

Netlist& Netlist::add_detector(std::size_t beam, const Detector& d, std::string name) {
    detectors.push_back({beam, d, std::move(name)});
    return *this;
}

NBeamState evolve(const Netlist& net, const NBeamState& input) {
    net.validate();
    if (input.size() != net.n_beams) {
        throw StructuralError("input state has " + std::to_string(input.size()) +
                              " beams, netlist expects " + std::to_string(net.n_beams));
    }
    NBeamState state = input;
    for (const auto& e : net.elements) {
        if (const auto* bs = std::get_if<PlacedBeamSplitter>(&e.op)) {
            const auto out = apply_beamsplitter(
                bs->splitter, TwoBeamState{state.beam(bs->beam_a), state.beam(bs->beam_b)});
            state.beam(bs->beam_a) = out.beam1;
            state.beam(bs->beam_b) = out.beam2;
        } else if (const auto* f = std::get_if<PlacedFilter>(&e.op)) {
            state.beam(f->beam) = apply_filter(f->filter, state.beam(f->beam));
        } else {
            const auto& m = std::get<PlacedMirror>(e.op);
            state.beam(m.beam) = apply_mirror(m.mirror, state.beam(m.beam));
        }
    }
    return state;
}

std::vector<DetectionProbability> detection_probabilities(const Netlist& net,
                                                          const NBeamState& input) {
    const NBeamState out = evolve(net, input);
    std::vector<DetectionProbability> probs;
    probs.reserve(net.detectors.size());
    for (const auto& tap : net.detectors) {
        probs.push_back({tap.beam, detect(tap.detector, out.beam(tap.beam))});
    }
    return probs;
}

Netlist interferometer_netlist(const BeamSplitter& sa, const BeamSplitter& sb,
                               const LinearFilter& a1, const LinearFilter& a2,
                               const Detector& detector) {
    Netlist net;
    net.n_beams = 2;
    net.add_beamsplitter(1, 2, sa, "sa")
        .add_mirror(1, Mirror{}, "m1")
        .add_mirror(2, Mirror{}, "m2")
        .add_filter(1, a1, "a1")
        .add_filter(2, a2, "a2")
        .add_beamsplitter(1, 2, sb, "sb")
        .add_detector(1, detector, "d");
    return net;
}

}  // namespace interferolab
