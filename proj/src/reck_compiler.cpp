#include "interferolab/reck_compiler.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "interferolab/errors.hpp"

namespace interferolab {

namespace {

// Sub-diagonal entries at or below this modulus are treated as already nulled.
constexpr double kNullEntry = 1e-14;

struct Rotation {
    std::size_t row_a;
    std::size_t row_b;
    Mat2 g;
    std::size_t eliminated_row;
    std::size_t eliminated_col;
};

}  // namespace

TargetOperator::TargetOperator(MatX m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0) {
        std::ostringstream msg;
        msg << "target operator must be a non-empty square matrix, got " << m_.rows() << "x"
            << m_.cols();
        throw ValidationError(msg.str());
    }
    if (!m_.allFinite()) throw ValidationError("target operator has non-finite entries");
    const double top = max_gram_eigenvalue(m_);
    if (!(top <= 1.0 + kCompileTol)) {
        std::ostringstream msg;
        msg << "target operator is not subunitary: largest eigenvalue of S*S is " << top;
        throw ValidationError(msg.str());
    }
    kind_ = unitarity_defect(m_) <= kCompileTol ? OperatorKind::unitary : OperatorKind::subunitary;
}

std::size_t CompiledCircuit::mixer_count() const {
    return static_cast<std::size_t>(std::count_if(stages.begin(), stages.end(), [](const Stage& s) {
        return std::holds_alternative<MixerStage>(s);
    }));
}

MatX embed(const Stage& stage, std::size_t n_modes) {
    const auto n = static_cast<Eigen::Index>(n_modes);
    MatX m = MatX::Identity(n, n);
    if (const auto* mix = std::get_if<MixerStage>(&stage)) {
        const auto a = static_cast<Eigen::Index>(mix->mode_a);
        const auto b = static_cast<Eigen::Index>(mix->mode_b);
        m(a, a) = mix->matrix(0, 0);
        m(a, b) = mix->matrix(0, 1);
        m(b, a) = mix->matrix(1, 0);
        m(b, b) = mix->matrix(1, 1);
    } else if (const auto* ph = std::get_if<PhaseStage>(&stage)) {
        const auto k = static_cast<Eigen::Index>(ph->mode);
        m(k, k) = ph->phase;
    } else {
        const auto& at = std::get<AttenuationStage>(stage);
        const auto k = static_cast<Eigen::Index>(at.mode);
        m(k, k) = at.amplitude;
    }
    return m;
}

MatX CompiledCircuit::reconstruct() const {
    const auto n = static_cast<Eigen::Index>(n_modes);
    MatX product = MatX::Identity(n, n);
    for (const auto& s : stages) product = embed(s, n_modes) * product;
    return product;
}

CompiledCircuit decompose_unitary(const TargetOperator& u) {
    if (u.kind() != OperatorKind::unitary) {
        std::ostringstream msg;
        msg << "operator is not unitary: max |U*U - I| = " << unitarity_defect(u.matrix());
        throw ValidationError(msg.str());
    }
    const std::size_t n = u.size();
    MatX w = u.matrix();
    std::vector<Rotation> rotations;

    // G_N ... G_1 U = D with each G a rotation on adjacent rows (r-1, r)
    // chosen to null w(r, c).
    for (std::size_t c = 0; c + 1 < n; ++c) {
        for (std::size_t r = n - 1; r > c; --r) {
            const auto ri = static_cast<Eigen::Index>(r);
            const auto ci = static_cast<Eigen::Index>(c);
            const Complex b = w(ri, ci);
            if (std::abs(b) <= kNullEntry) continue;
            const Complex a = w(ri - 1, ci);
            const double norm = std::hypot(std::abs(a), std::abs(b));
            Mat2 g;
            g << std::conj(a), std::conj(b), -b, a;
            g /= norm;
            const MatX rows = w.middleRows(ri - 1, 2);
            w.middleRows(ri - 1, 2) = g * rows;
            w(ri, ci) = 0.0;
            rotations.push_back({r - 1, r, g, r, c});
        }
    }

    // U = G_1* ... G_N* D, so D acts first and G_1* last.
    CompiledCircuit out;
    out.n_modes = n;
    for (std::size_t k = 0; k < n; ++k) {
        const Complex d = w(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k));
        out.stages.emplace_back(PhaseStage{k, d / std::abs(d)});
    }
    for (auto it = rotations.rbegin(); it != rotations.rend(); ++it) {
        std::ostringstream label;
        label << "eliminates (" << it->eliminated_row + 1 << "," << it->eliminated_col + 1 << ")";
        out.stages.emplace_back(MixerStage{it->row_a, it->row_b, it->g.adjoint(), label.str()});
    }
    return out;
}

CompiledCircuit decompose_subunitary(const TargetOperator& s) {
    const std::size_t n = s.size();
    Eigen::JacobiSVD<MatX> svd(s.matrix(), Eigen::ComputeFullU | Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    if (sigma.size() > 0 && sigma(0) > 1.0 + kCompileTol) {
        std::ostringstream msg;
        msg << "singular value " << sigma(0) << " exceeds 1";
        throw ValidationError(msg.str());
    }

    CompiledCircuit out;
    out.n_modes = n;
    const auto right = decompose_unitary(TargetOperator(MatX(svd.matrixV().adjoint())));
    out.stages = right.stages;
    for (std::size_t k = 0; k < n; ++k) {
        const double amp = std::clamp(sigma(static_cast<Eigen::Index>(k)), 0.0, 1.0);
        out.stages.emplace_back(AttenuationStage{k, amp});
    }
    const auto left = decompose_unitary(TargetOperator(svd.matrixU()));
    out.stages.insert(out.stages.end(), left.stages.begin(), left.stages.end());
    return out;
}

Verification verify(const CompiledCircuit& c, const TargetOperator& target) {
    if (c.n_modes != target.size()) {
        std::ostringstream msg;
        msg << "circuit has " << c.n_modes << " modes, target is " << target.size() << "x"
            << target.size();
        throw ValidationError(msg.str());
    }
    const double err = max_abs(MatX(c.reconstruct() - target.matrix()));
    return {err <= kCompileTol, err};
}

Netlist to_netlist(const CompiledCircuit& c) {
    Netlist net;
    net.n_beams = c.n_modes;
    for (std::size_t k = 0; k < c.stages.size(); ++k) {
        const std::string prefix = "stage " + std::to_string(k + 1) + ": ";
        if (const auto* mix = std::get_if<MixerStage>(&c.stages[k])) {
            net.add_beamsplitter(mix->mode_a + 1, mix->mode_b + 1, BeamSplitter(mix->matrix), {},
                                 prefix + mix->provenance);
        } else if (const auto* ph = std::get_if<PhaseStage>(&c.stages[k])) {
            if (ph->phase == Complex(1.0)) continue;
            net.add_mirror(ph->mode + 1, Mirror(ph->phase), {}, prefix + "phase");
        } else {
            const auto& at = std::get<AttenuationStage>(c.stages[k]);
            if (at.amplitude == 1.0) continue;
            net.add_filter(at.mode + 1, LinearFilter::attenuator(at.amplitude), {},
                           prefix + "attenuation");
        }
    }
    return net;
}

}  // namespace interferolab
