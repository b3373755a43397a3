#pragma once

// Constructive partner subsystems: the pure-state partner Pi_A_perp(J Gamma_A),
// eigenspace projectors of J, and the correlation partner for mixed states.

#include <vector>

#include "gpm/gaussian_state.hpp"
#include "gpm/subsystems.hpp"

namespace gpm {

enum class PartnerKind { pure, correlation, entanglement };

struct PartnerResult {
    ModeSubspace partner;
    PartnerKind kind = PartnerKind::pure;
    Eigen::Index mode_count = 0;
    // Residual of the check the partner promises: the uncorrelated test on
    // A (+) partner for pure/correlation kinds, the restricted-vs-global
    // subunity spectrum mismatch for the entanglement kind.
    double diagnostics = 0.0;
    // Distinguishes "input was uncorrelated / PPT" from errors.
    bool empty = false;
};

struct EigenspaceProjectors {
    struct Group {
        double nu = 0.0;
        ComplexMatrix plus;   // onto the +i*nu eigenspace
        ComplexMatrix minus;  // onto the -i*nu eigenspace
    };
    std::vector<Group> groups;

    ComplexMatrix plus_total() const;
};

// Partner of a correlated subsystem in a pure state: span Pi_A_perp(J Gamma_A),
// symplectically orthonormalized.  The reduced state on A (+) partner is pure
// and carries all correlations with A.
PartnerResult pure_partner(const ModeSubspace& a, const ComplexStructure& j);

// Symplectic projectors onto the eigenspaces of J, grouped by degenerate nu.
EigenspaceProjectors eigenspace_projectors(const ComplexStructure& j);

// Smallest subsystem making A (+) partner uncorrelated; may span several
// modes for mixed states, and is empty iff A is uncorrelated.
PartnerResult correlation_partner(const ModeSubspace& a, const ComplexStructure& j);

}  // namespace gpm
