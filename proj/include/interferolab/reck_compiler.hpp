#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "interferolab/circuit_engine.hpp"
#include "interferolab/linalg.hpp"

namespace interferolab {

/// Input validation and reconstruction tolerance of the compiler.
inline constexpr double kCompileTol = 1e-10;

enum class OperatorKind { unitary, subunitary };

/// Square operator to realize on n spatial modes. The kind is detected from
/// the matrix.
class TargetOperator {
public:
    /// Throws ValidationError if m is not square or if the largest eigenvalue
    /// of m* m exceeds 1 + 1e-10.
    explicit TargetOperator(MatX m);

    const MatX& matrix() const { return m_; }
    OperatorKind kind() const { return kind_; }
    std::size_t size() const { return static_cast<std::size_t>(m_.rows()); }

private:
    MatX m_;
    OperatorKind kind_;
};

/// Unitary on modes (mode_a, mode_b), 0-based.
struct MixerStage {
    std::size_t mode_a;
    std::size_t mode_b;
    Mat2 matrix;
    std::string provenance;
};

struct PhaseStage {
    std::size_t mode;
    Complex phase;
};

struct AttenuationStage {
    std::size_t mode;
    double amplitude;  // in [0, 1]
};

using Stage = std::variant<MixerStage, PhaseStage, AttenuationStage>;

/// Stages act in order: the first stage acts first on the input, so the
/// realized operator is stage_k ... stage_2 stage_1.
struct CompiledCircuit {
    std::size_t n_modes = 0;
    std::vector<Stage> stages;

    std::size_t mixer_count() const;
    /// Product of the embedded stage matrices.
    MatX reconstruct() const;
};

/// Stage matrix embedded into n x n.
MatX embed(const Stage& stage, std::size_t n_modes);

/// Triangular elimination: nulls the sub-diagonal column by column with
/// adjacent-mode rotations, leaving a diagonal of phases. Emits at most
/// n(n-1)/2 mixers (entries that are already zero are skipped) and n phases.
CompiledCircuit decompose_unitary(const TargetOperator& u);

/// s = U diag(sigma) V*: circuit of V*, per-mode attenuations sigma, circuit
/// of U. Accepts unitary targets too (all attenuations 1).
CompiledCircuit decompose_subunitary(const TargetOperator& s);

struct Verification {
    bool ok = false;
    double max_error = 0.0;
    explicit operator bool() const { return ok; }
};

/// Throws ValidationError on a dimension mismatch.
Verification verify(const CompiledCircuit& c, const TargetOperator& target);

/// Mixers become beam splitters, phases become mirrors, attenuations become
/// scalar filters. Unit phases and unit attenuations are dropped.
Netlist to_netlist(const CompiledCircuit& c);

}  // namespace interferolab
