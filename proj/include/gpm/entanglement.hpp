#pragma once

// Partial transpose, PT spectrum, logarithmic negativity and entanglement
// partners, plus the subunity-count bound check.

#include <vector>

#include "gpm/gaussian_state.hpp"
#include "gpm/partners.hpp"
#include "gpm/subsystems.hpp"

namespace gpm {

// J^{T_A} = -hbar * Omega * T_A sigma T_A where T_A flips the momenta of a
// Darboux basis adapted to A and acts as the identity on the complement.
struct PartialTranspose {
    ModeSubspace flipped;
    RealMatrix flip;  // T_A in canonical components; involutive
    RealMatrix map;   // J^{T_A}
    SymplecticForm form;
};

PartialTranspose partial_transpose(const ComplexStructure& j, const ModeSubspace& a);

struct PTSpectrum {
    std::vector<SymplecticSpectrum::Pair> pairs;  // nu ascending
    std::vector<std::size_t> subunity;            // indices with nu < 1 - tol

    std::vector<double> values() const;
    std::vector<double> subunity_values() const;
};

PTSpectrum pt_spectrum(const PartialTranspose& pt);

double log_negativity(const ComplexStructure& j, const ModeSubspace& a);
double log_negativity(const GaussianState& state, const ModeSubspace& a);

bool is_non_ppt(const ComplexStructure& j, const ModeSubspace& a);
bool is_non_ppt(const GaussianState& state, const ModeSubspace& a);

// Projection of the subunity eigenspace of J^{T_A} onto the complement of A;
// empty for PPT inputs.  diagnostics reports how far the subunity spectrum of
// J restricted to A (+) partner sits from the global one.
PartnerResult entanglement_partner(const ModeSubspace& a, const ComplexStructure& j);

struct SubunityCountReport {
    Eigen::Index count = 0;
    Eigen::Index bound = 0;   // N_A
    double margin = 0.0;      // 1 - largest subunity value (1.0 when none)
    std::vector<double> subunity;
};

// Asserts |subunity(J^{T_A})| <= N_A; a violation indicates a numerical or
// input problem and is raised as an internal-consistency error.
SubunityCountReport subunity_count_check(const ComplexStructure& j, const ModeSubspace& a);

}  // namespace gpm
