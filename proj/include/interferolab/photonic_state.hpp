#pragma once

#include <string>

#include "interferolab/linalg.hpp"

namespace interferolab {

/// Unnormalized polarization amplitude of one beam. The squared norm is the
/// probability that a photon is present in the beam during the reference
/// interval; the zero vector is a dark beam. Amplitudes are never
/// renormalized.
class JonesVector {
public:
    JonesVector() = default;
    JonesVector(Complex h, Complex v) : amp_(h, v) {}
    explicit JonesVector(const Vec2& amp) : amp_(amp) {}

    static JonesVector dark() { return {}; }

    Complex h() const { return amp_(0); }
    Complex v() const { return amp_(1); }
    const Vec2& amplitudes() const { return amp_; }

    friend JonesVector operator+(const JonesVector& a, const JonesVector& b) {
        return JonesVector(Vec2(a.amp_ + b.amp_));
    }
    friend JonesVector operator-(const JonesVector& a, const JonesVector& b) {
        return JonesVector(Vec2(a.amp_ - b.amp_));
    }
    friend JonesVector operator*(Complex s, const JonesVector& a) {
        return JonesVector(Vec2(s * a.amp_));
    }
    friend bool operator==(const JonesVector& a, const JonesVector& b) {
        return a.amp_ == b.amp_;
    }

private:
    Vec2 amp_ = Vec2::Zero();
};

/// |c_h|^2 + |c_v|^2
double presence_probability(const JonesVector& s);

/// The two spatial beams of a two-port arrangement.
struct TwoBeamState {
    JonesVector beam1;
    JonesVector beam2;

    /// Builds a state for a single-photon experiment input, rejecting a total
    /// presence probability above 1 + 1e-12.
    static TwoBeamState single_photon(const JonesVector& beam1, const JonesVector& beam2);

    double total_presence() const;

    friend bool operator==(const TwoBeamState&, const TwoBeamState&) = default;
};

/// 2x2 polarization density matrix, trace = mean photon number per reference
/// interval. Holds any matrix; use validate_density() before trusting it.
class DensityMatrix {
public:
    DensityMatrix() : m_(Mat2::Zero()) {}
    explicit DensityMatrix(const Mat2& m) : m_(m) {}

    const Mat2& matrix() const { return m_; }
    Complex trace() const { return m_.trace(); }

    friend DensityMatrix operator*(double s, const DensityMatrix& r) {
        return DensityMatrix(Mat2(s * r.m_));
    }

private:
    Mat2 m_;
};

/// Outer product s s*.
DensityMatrix pure_density(const JonesVector& s);

enum class DensityViolation { none, not_hermitian, trace_not_real, not_positive_semidefinite };

struct DensityVerdict {
    DensityViolation violation = DensityViolation::none;
    std::string diagnostic;

    bool ok() const { return violation == DensityViolation::none; }
    explicit operator bool() const { return ok(); }
};

/// Checks Hermiticity, real trace and positive semidefiniteness within 1e-12.
DensityVerdict validate_density(const DensityMatrix& rho);

}  // namespace interferolab
