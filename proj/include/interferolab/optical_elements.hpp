#pragma once

#include "interferolab/photonic_state.hpp"

namespace interferolab {

/// Non-polarizing two-port beam splitter. The scattering matrix acts on the
/// spatial pair (beam1, beam2) and is applied to each polarization component:
///
///     | t1  r2 |
///     | r1  t2 |
class BeamSplitter {
public:
    /// Throws ValidationError unless ||s* s - I||_max <= 1e-12.
    explicit BeamSplitter(const Mat2& s);

    static BeamSplitter identity() { return BeamSplitter(Mat2::Identity()); }
    /// (1/sqrt 2) [[1, i], [i, 1]]
    static BeamSplitter symmetric();

    const Mat2& matrix() const { return s_; }
    Complex t1() const { return s_(0, 0); }
    Complex r2() const { return s_(0, 1); }
    Complex r1() const { return s_(1, 0); }
    Complex t2() const { return s_(1, 1); }

private:
    Mat2 s_;
};

/// Polarization filter psi -> A psi with A subunitary (largest singular value
/// at most 1 + 1e-12). Rank-one polarizer stacks A = u v* are a special case.
class LinearFilter {
public:
    /// Throws ValidationError if A is not subunitary.
    explicit LinearFilter(const Mat2& a);

    static LinearFilter identity() { return LinearFilter(Mat2::Identity()); }
    static LinearFilter absorber() { return LinearFilter(Mat2::Zero()); }
    /// Ideal linear polarizer transmitting (cos angle, sin angle).
    static LinearFilter polarizer(double angle);
    /// Polarization-independent amplitude factor in [0, 1].
    static LinearFilter attenuator(double amplitude);

    const Mat2& matrix() const { return a_; }

private:
    Mat2 a_;
};

class Detector {
public:
    /// Throws ValidationError unless 0 <= q <= 1.
    explicit Detector(double q = 1.0);
    double efficiency() const { return q_; }

private:
    double q_;
};

/// Common phase factor picked up on reflection; defaults to 1.
class Mirror {
public:
    /// Throws ValidationError unless |phase| = 1 within 1e-12.
    explicit Mirror(Complex phase = 1.0);
    Complex phase() const { return phase_; }

private:
    Complex phase_;
};

TwoBeamState apply_beamsplitter(const BeamSplitter& b, const TwoBeamState& s);
JonesVector apply_filter(const LinearFilter& f, const JonesVector& s);
JonesVector apply_mirror(const Mirror& m, const JonesVector& s);

/// q |psi|^2. A probability for single-photon inputs, a mean count otherwise.
double detect(const Detector& d, const JonesVector& s);

struct SubunitarityCheck {
    bool ok = false;
    double max_eigenvalue = 0.0;  // of a* a
    explicit operator bool() const { return ok; }
};

/// Passes iff the largest eigenvalue of a* a is at most 1 + tol.
SubunitarityCheck is_subunitary(const MatX& a, double tol = kElementTol);

}  // namespace interferolab
