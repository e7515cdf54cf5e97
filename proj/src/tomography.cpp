#include "interferolab/tomography.hpp"

#include <array>
#include <cmath>
#include <sstream>

#include "interferolab/errors.hpp"

namespace interferolab {

namespace {

// Real coordinates of a Hermitian 2x2 matrix:
// [[x0, x2 + i x3], [x2 - i x3, x1]].
std::array<Mat2, 4> hermitian_basis() {
    std::array<Mat2, 4> e;
    e[0] << 1.0, 0.0, 0.0, 0.0;
    e[1] << 0.0, 0.0, 0.0, 1.0;
    e[2] << 0.0, 1.0, 1.0, 0.0;
    e[3] << 0.0, kI, -kI, 0.0;
    return e;
}

std::string format_direction(const Eigen::Vector4d& x) {
    std::ostringstream out;
    out << "[[" << x(0) << ", " << Complex(x(2), x(3)) << "], [" << Complex(x(2), -x(3)) << ", "
        << x(1) << "]]";
    return out.str();
}

// Relative singular-value floor below which a direction counts as unresolved.
constexpr double kRankTol = 1e-9;

}  // namespace

std::vector<std::pair<LinearFilter, LinearFilter>> default_design(const Apparatus& apparatus) {
    const Complex kappa = apparatus.kappa();
    const Complex align = std::abs(kappa) > 0.0 ? std::conj(kappa) / std::abs(kappa) : Complex(1.0);
    const auto id = LinearFilter::identity();
    std::vector<std::pair<LinearFilter, LinearFilter>> design;
    for (const Mat2& p : {Mat2(Mat2::Identity()), pauli_x(), pauli_y(), pauli_z()}) {
        design.emplace_back(id, LinearFilter(Mat2(align * p)));
    }
    return design;
}

std::vector<DeltaMeasurement> simulate_measurements(
    const Apparatus& apparatus, const DensityMatrix& rho,
    std::span<const std::pair<LinearFilter, LinearFilter>> settings) {
    std::vector<DeltaMeasurement> out;
    out.reserve(settings.size());
    for (const auto& [a1, a2] : settings) {
        out.push_back({a1, a2, delta_closed_form(apparatus, rho, a1, a2)});
    }
    return out;
}

DensityEstimate infer_density(std::span<const DeltaMeasurement> measurements,
                              const Apparatus& apparatus) {
    if (measurements.empty()) throw EstimationError("no measurements supplied");
    const auto basis = hermitian_basis();
    const auto rows = static_cast<Eigen::Index>(measurements.size());
    Eigen::MatrixXd design(rows, 4);
    Eigen::VectorXd observed(rows);
    const double scale = 2.0 * apparatus.q();
    const Complex kappa = apparatus.kappa();
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& m = measurements[static_cast<std::size_t>(r)];
        const Mat2 prod = m.a1.matrix().adjoint() * m.a2.matrix();
        for (int k = 0; k < 4; ++k) {
            design(r, k) = scale * (kappa * (basis[static_cast<std::size_t>(k)] * prod).trace()).real();
        }
        observed(r) = m.delta;
    }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double top = sv.size() > 0 ? sv(0) : 0.0;
    std::vector<Eigen::Vector4d> null_dirs;
    for (int k = 0; k < 4; ++k) {
        if (k >= sv.size() || sv(k) <= kRankTol * top || top == 0.0) {
            null_dirs.emplace_back(svd.matrixV().col(k));
        }
    }
    if (!null_dirs.empty()) {
        std::ostringstream msg;
        msg << "measurement settings do not determine the density matrix (rank "
            << 4 - null_dirs.size() << " of 4); unresolved directions:";
        for (const auto& d : null_dirs) msg << ' ' << format_direction(d);
        throw EstimationError(msg.str());
    }

    const Eigen::Vector4d x = svd.solve(observed);
    Mat2 rho;
    rho << x(0), Complex(x(2), x(3)), Complex(x(2), -x(3)), x(1);
    return {DensityMatrix(rho), (design * x - observed).norm(), 4};
}

}  // namespace interferolab
