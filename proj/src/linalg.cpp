#include "interferolab/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace interferolab {

double unitarity_defect(const MatX& m) {
    const MatX gram = m.adjoint() * m;
    return max_abs(gram - MatX::Identity(m.cols(), m.cols()));
}

double max_gram_eigenvalue(const MatX& m) {
    if (m.size() == 0) return 0.0;
    if (m.rows() == 2 && m.cols() == 2) {
        return hermitian_eigenvalues(Mat2(m.adjoint() * m)).second;
    }
    Eigen::SelfAdjointEigenSolver<MatX> solver(m.adjoint() * m, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().maxCoeff();
}

std::pair<double, double> hermitian_eigenvalues(const Mat2& h) {
    // lambda^2 - (a + d) lambda + (ad - |b|^2) = 0, written in the
    // cancellation-free form (a+d)/2 -+ sqrt(((a-d)/2)^2 + |b|^2).
    const double a = h(0, 0).real();
    const double d = h(1, 1).real();
    const Complex b = 0.5 * (h(0, 1) + std::conj(h(1, 0)));
    const double mean = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(b));
    return {mean - radius, mean + radius};
}

Mat2 pauli_x() {
    Mat2 m;
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Mat2 pauli_y() {
    Mat2 m;
    m << 0.0, -kI, kI, 0.0;
    return m;
}

Mat2 pauli_z() {
    Mat2 m;
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

}  // namespace interferolab
