#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "interferolab/optical_elements.hpp"

namespace interferolab {

/// Polarization amplitudes of n spatial beams. The full state space is the
/// direct sum of the per-beam C^2 spaces.
class NBeamState {
public:
    NBeamState() = default;
    explicit NBeamState(std::size_t n_beams) : beams_(n_beams) {}
    explicit NBeamState(std::vector<JonesVector> beams) : beams_(std::move(beams)) {}
    explicit NBeamState(const TwoBeamState& s) : beams_{s.beam1, s.beam2} {}

    std::size_t size() const { return beams_.size(); }
    const JonesVector& beam(std::size_t index) const { return beams_.at(index - 1); }
    JonesVector& beam(std::size_t index) { return beams_.at(index - 1); }
    const std::vector<JonesVector>& beams() const { return beams_; }

    double total_presence() const;

    /// All h (or v) components as one n-vector over spatial modes.
    VecX component(int polarization) const;
    void set_component(int polarization, const VecX& amps);

    friend NBeamState operator+(const NBeamState& a, const NBeamState& b);
    friend NBeamState operator*(Complex s, const NBeamState& a);
    friend bool operator==(const NBeamState&, const NBeamState&) = default;

private:
    std::vector<JonesVector> beams_;
};

// Beam indices are 1-based throughout, matching the netlist file format.

struct PlacedBeamSplitter {
    std::size_t beam_a;
    std::size_t beam_b;
    BeamSplitter splitter;
};

struct PlacedFilter {
    std::size_t beam;
    LinearFilter filter;
};

struct PlacedMirror {
    std::size_t beam;
    Mirror mirror;
};

struct NetlistElement {
    std::variant<PlacedBeamSplitter, PlacedFilter, PlacedMirror> op;
    std::string name;
    std::string comment;
};

struct DetectorTap {
    std::size_t beam;
    Detector detector;
    std::string name;
};

/// Feed-forward arrangement: elements are applied once, in order. Detectors
/// are terminal taps that read the final state without altering it.
struct Netlist {
    std::size_t n_beams = 0;
    std::vector<NetlistElement> elements;
    std::vector<DetectorTap> detectors;

    /// Throws StructuralError naming the first offending element.
    void validate() const;

    Netlist& add_beamsplitter(std::size_t a, std::size_t b, const BeamSplitter& s,
                              std::string name = {}, std::string comment = {});
    Netlist& add_filter(std::size_t beam, const LinearFilter& f, std::string name = {},
                        std::string comment = {});
    Netlist& add_mirror(std::size_t beam, const Mirror& m, std::string name = {},
                        std::string comment = {});
    Netlist& add_detector(std::size_t beam, const Detector& d, std::string name = {});
};

const char* element_type_name(const NetlistElement& e);

NBeamState evolve(const Netlist& net, const NBeamState& input);

struct DetectionProbability {
    std::size_t beam;
    double probability;
};

std::vector<DetectionProbability> detection_probabilities(const Netlist& net,
                                                          const NBeamState& input);

/// The two-splitter interferometer: sa mixes beams 1 and 2, a1 and a2 filter
/// beams 1 and 2, sb recombines, and the detector reads beam 1 (the port
/// fed by t1^b and r2^b).
Netlist interferometer_netlist(const BeamSplitter& sa, const BeamSplitter& sb,
                               const LinearFilter& a1, const LinearFilter& a2,
                               const Detector& detector);

}  // namespace interferolab
