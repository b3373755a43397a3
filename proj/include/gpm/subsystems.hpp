#pragma once

// Symplectic subspaces as subsystems: Gram matrices, symplectic projectors,
// complements, symplectic orthonormalization, restriction of J, the
// uncorrelated-subsystem test and correlation blocks.

#include <vector>

#include "gpm/gaussian_state.hpp"
#include "gpm/phase_space.hpp"

namespace gpm {

enum class SubspaceKind { bosonic, fermionic };

// A subsystem, identified with a symplectic subspace rather than any one
// basis.  Stored in normalized form: basis() lists gamma_1..gamma_M followed
// by their conjugates, so the Gram matrix is diag(1,...,1,-1,...,-1).
//
// The fermionic kind reuses the container with a real orthonormal basis and a
// Euclidean Gram matrix; mixing kinds in one call is an error.
class ModeSubspace {
  public:
    // Raw user vectors: closed under conjugation, rank-revealed and
    // symplectically orthonormalized on construction.
    static ModeSubspace from_vectors(const std::vector<PhaseVector>& vectors,
                                     Eigen::Index ambient_modes);

    // Whole phase space (normalized basis = canonical annihilation modes).
    static ModeSubspace full(Eigen::Index n_modes);

    // Span of the canonical modes with the given 0-based indices.
    static ModeSubspace canonical_modes(Eigen::Index n_modes,
                                        const std::vector<Eigen::Index>& modes);

    static ModeSubspace empty(Eigen::Index ambient_modes);

    // Fermionic subsystem: real vectors, orthonormalized in the Euclidean
    // metric; must have even rank.
    static ModeSubspace fermionic_from_vectors(const std::vector<RealVector>& vectors,
                                               Eigen::Index ambient_modes);

    // Trusted constructor for a basis already in normalized form.
    static ModeSubspace from_normalized(std::vector<PhaseVector> basis,
                                        Eigen::Index ambient_modes, SubspaceKind kind);

    const std::vector<PhaseVector>& basis() const { return basis_; }
    Eigen::Index mode_count() const { return static_cast<Eigen::Index>(basis_.size()) / 2; }
    Eigen::Index dim() const { return static_cast<Eigen::Index>(basis_.size()); }
    Eigen::Index ambient_modes() const { return ambient_modes_; }
    Eigen::Index ambient_dim() const { return 2 * ambient_modes_; }
    SubspaceKind kind() const { return kind_; }
    bool is_empty() const { return basis_.empty(); }

    // gamma_k for k in [0, mode_count); the conjugate partners are implied.
    const PhaseVector& mode_vector(Eigen::Index k) const;

  private:
    ModeSubspace(std::vector<PhaseVector> basis, Eigen::Index ambient_modes, SubspaceKind kind)
        : basis_(std::move(basis)), ambient_modes_(ambient_modes), kind_(kind) {}

    std::vector<PhaseVector> basis_;
    Eigen::Index ambient_modes_ = 0;
    SubspaceKind kind_ = SubspaceKind::bosonic;
};

struct SymplecticProjector {
    ComplexMatrix matrix;  // 2N x 2N; real-valued for conjugation-closed subspaces
    ModeSubspace source;
};

// G_ij = <xi_i, xi_j>.
ComplexMatrix gram_matrix(const std::vector<PhaseVector>& basis, const SymplecticForm& form);

SymplecticProjector symplectic_projector(const ModeSubspace& sub);

// Projector onto the symplectic orthogonal complement, I - Pi_A.
ComplexMatrix complement_projector(const ModeSubspace& sub);

ModeSubspace symplectic_complement(const ModeSubspace& sub);

// Normalized basis {gamma_I, conj(gamma_I)} spanning the same subspace as the
// inputs (closed under conjugation); linearly dependent inputs are dropped.
ModeSubspace symplectic_gram_schmidt(const std::vector<PhaseVector>& vectors,
                                     Eigen::Index ambient_modes);

// Pi_A J Pi_A in normalized-basis coordinates (ordering: gamma's, then
// conjugates), a 2M x 2M complex matrix whose symplectic spectrum is the
// reduced state's spectrum.
ComplexMatrix restrict_map(const ComplexStructure& j, const ModeSubspace& sub);

// Same restriction expressed on a standalone M-mode canonical phase space
// (gamma_k -> e_k); feeds the spectrum/purity/partial-transpose machinery.
ComplexStructure restricted_structure(const ComplexStructure& j, const ModeSubspace& sub);

// Reduced Gaussian state on the subsystem (mean restricted, covariance from
// the restricted complex structure).
GaussianState reduced_state(const GaussianState& state, const ModeSubspace& sub);

struct UncorrelatedTest {
    bool uncorrelated = false;
    double residual = 0.0;  // ||Pi_A J - J Pi_A|| / ||J||
};

UncorrelatedTest is_uncorrelated(const ModeSubspace& sub, const ComplexStructure& j);

// Matrix sigma(conj(gamma_i), conj(delta_j)) over the two normalized bases;
// vanishes iff A and B are mutually uncorrelated.
ComplexMatrix correlation_block(const GaussianState& state, const ModeSubspace& a,
                                const ModeSubspace& b);

// Frobenius distance between the symplectic projectors of two subspaces; the
// library's basis-independent span comparison.
double span_distance(const ModeSubspace& a, const ModeSubspace& b);

// Direct sum of two symplectically orthogonal subsystems.
ModeSubspace direct_sum(const ModeSubspace& a, const ModeSubspace& b);

}  // namespace gpm
