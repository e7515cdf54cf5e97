#include "interferolab/photonic_state.hpp"

#include <cmath>
#include <sstream>

#include "interferolab/errors.hpp"

namespace interferolab {

double presence_probability(const JonesVector& s) {
    return std::norm(s.h()) + std::norm(s.v());
}

TwoBeamState TwoBeamState::single_photon(const JonesVector& beam1, const JonesVector& beam2) {
    TwoBeamState s{beam1, beam2};
    const double total = s.total_presence();
    if (!(total <= 1.0 + kElementTol)) {
        std::ostringstream msg;
        msg << "single-photon input has total presence probability " << total << " > 1";
        throw ValidationError(msg.str());
    }
    return s;
}

double TwoBeamState::total_presence() const {
    return presence_probability(beam1) + presence_probability(beam2);
}

DensityMatrix pure_density(const JonesVector& s) {
    const Vec2& psi = s.amplitudes();
    return DensityMatrix(Mat2(psi * psi.adjoint()));
}

DensityVerdict validate_density(const DensityMatrix& rho) {
    const Mat2& m = rho.matrix();
    if (!m.allFinite()) {
        return {DensityViolation::not_hermitian, "density matrix has non-finite entries"};
    }
    const double asym = max_abs(Mat2(m - m.adjoint()));
    if (asym > kElementTol) {
        std::ostringstream msg;
        msg << "not Hermitian: max |rho - rho*| = " << asym;
        return {DensityViolation::not_hermitian, msg.str()};
    }
    const Complex tr = m.trace();
    if (std::abs(tr.imag()) > kElementTol) {
        std::ostringstream msg;
        msg << "trace is not real: Im tr rho = " << tr.imag();
        return {DensityViolation::trace_not_real, msg.str()};
    }
    const auto [low, high] = hermitian_eigenvalues(m);
    if (low < -kElementTol) {
        std::ostringstream msg;
        msg << "not positive semidefinite: eigenvalues " << low << " and " << high;
        return {DensityViolation::not_positive_semidefinite, msg.str()};
    }
    return {};
}

}  // namespace interferolab
