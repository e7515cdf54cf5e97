#include "interferolab/optical_elements.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "interferolab/errors.hpp"

namespace interferolab {

BeamSplitter::BeamSplitter(const Mat2& s) : s_(s) {
    const double defect = s.allFinite() ? unitarity_defect(s) : INFINITY;
    if (!(defect <= kElementTol)) {
        std::ostringstream msg;
        msg << "beam splitter matrix is not unitary: max |S*S - I| = " << defect;
        throw ValidationError(msg.str());
    }
}

BeamSplitter BeamSplitter::symmetric() {
    Mat2 s;
    s << 1.0, kI, kI, 1.0;
    return BeamSplitter(Mat2(s * (std::numbers::sqrt2 / 2.0)));
}

LinearFilter::LinearFilter(const Mat2& a) : a_(a) {
    if (!a.allFinite()) throw ValidationError("filter matrix has non-finite entries");
    const auto check = is_subunitary(a);
    if (!check) {
        std::ostringstream msg;
        msg << "filter matrix is not subunitary: largest eigenvalue of A*A is "
            << check.max_eigenvalue;
        throw ValidationError(msg.str());
    }
}

LinearFilter LinearFilter::polarizer(double angle) {
    const Vec2 e(std::cos(angle), std::sin(angle));
    return LinearFilter(Mat2(e * e.adjoint()));
}

LinearFilter LinearFilter::attenuator(double amplitude) {
    if (!(amplitude >= 0.0 && amplitude <= 1.0)) {
        throw ValidationError("attenuation factor must lie in [0, 1]");
    }
    return LinearFilter(Mat2(amplitude * Mat2::Identity()));
}

Detector::Detector(double q) : q_(q) {
    if (!(q >= 0.0 && q <= 1.0)) {
        std::ostringstream msg;
        msg << "detector efficiency " << q << " outside [0, 1]";
        throw ValidationError(msg.str());
    }
}

Mirror::Mirror(Complex phase) : phase_(phase) {
    if (!(std::abs(std::abs(phase) - 1.0) <= kElementTol)) {
        std::ostringstream msg;
        msg << "mirror phase must have unit modulus, got |phase| = " << std::abs(phase);
        throw ValidationError(msg.str());
    }
}

TwoBeamState apply_beamsplitter(const BeamSplitter& b, const TwoBeamState& s) {
    const Mat2& m = b.matrix();
    return {JonesVector(Vec2(m(0, 0) * s.beam1.amplitudes() + m(0, 1) * s.beam2.amplitudes())),
            JonesVector(Vec2(m(1, 0) * s.beam1.amplitudes() + m(1, 1) * s.beam2.amplitudes()))};
}

JonesVector apply_filter(const LinearFilter& f, const JonesVector& s) {
    return JonesVector(Vec2(f.matrix() * s.amplitudes()));
}

JonesVector apply_mirror(const Mirror& m, const JonesVector& s) {
    return m.phase() * s;
}

double detect(const Detector& d, const JonesVector& s) {
    return d.efficiency() * presence_probability(s);
}

SubunitarityCheck is_subunitary(const MatX& a, double tol) {
    const double top = max_gram_eigenvalue(a);
    return {top <= 1.0 + tol, top};
}

}  // namespace interferolab
