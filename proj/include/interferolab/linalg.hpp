#pragma once

#include <complex>

#include <Eigen/Dense>

namespace interferolab {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;
using MatX = Eigen::MatrixXcd;
using Vec2 = Eigen::Vector2cd;
using VecX = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

/// Tolerance for structural checks on 2x2 element matrices.
inline constexpr double kElementTol = 1e-12;

/// Largest |entry| of a complex matrix; 0 for an empty matrix.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

/// max |(m* m - I)_ij|
double unitarity_defect(const MatX& m);

/// Largest eigenvalue of m* m, i.e. the squared largest singular value.
double max_gram_eigenvalue(const MatX& m);

/// Eigenvalues (ascending) of a Hermitian 2x2 matrix, from its
/// closed-form characteristic polynomial.
std::pair<double, double> hermitian_eigenvalues(const Mat2& h);

Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

}  // namespace interferolab
