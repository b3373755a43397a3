#pragma once

// Brute-force verifiers written against the raw definitions.  They share no
// eigensolver configuration or projector code with the main modules: adapted
// frames are built by a sequential pairing pass, complements by real null
// spaces, and spectra by a real general eigensolver on explicitly constructed
// matrices.  Deliberately slow and literal.

#include <string>
#include <vector>

#include "gpm/entanglement.hpp"
#include "gpm/gaussian_state.hpp"
#include "gpm/partners.hpp"
#include "gpm/subsystems.hpp"

namespace gpm::oracle {

struct VerificationReport {
    struct Check {
        std::string name;
        bool passed = false;
        double residual = 0.0;
        double tolerance = 0.0;
    };
    std::vector<Check> checks;

    bool all_passed() const;
    void add(std::string name, double residual, double tolerance);
};

// Real Darboux frame adapted to A (+) complement(A), built independently of
// the main projector machinery.  Columns: x_1, p_1, ..., ordered A first.
RealMatrix adapted_frame(const GaussianState& state, const ModeSubspace& a);

// Direct check of the block decomposition of sigma in an adapted frame.
VerificationReport verify_uncorrelated_blockform(const GaussianState& state,
                                                 const ModeSubspace& a);

// Checks that P is the kind-partner of A for the given state.
VerificationReport verify_partner(const GaussianState& state, const ModeSubspace& a,
                                  const ModeSubspace& p, PartnerKind kind);

// Independent eigen-route for the partial-transpose spectrum: sigma^{T_A} is
// assembled explicitly in the adapted frame and handed to a real dense solver.
PTSpectrum dense_pt_eigensolve(const GaussianState& state, const ModeSubspace& a);

// Symplectic eigenvalues via the Williamson route (singular values of
// sqrt(sigma) Omega sqrt(sigma)); used to cross-check the main spectrum path.
std::vector<double> williamson_values(const RealMatrix& sigma);

}  // namespace gpm::oracle
