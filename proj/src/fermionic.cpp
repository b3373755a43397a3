#include "gpm/fermionic.hpp"

#include <cmath>

#include "gpm/tolerances.hpp"

namespace gpm {

namespace {

void require_fermionic(const ModeSubspace& sub, const char* who) {
    if (sub.kind() != SubspaceKind::fermionic) {
        throw DimensionError(std::string(who) + ": expected a fermionic subspace");
    }
}

}  // namespace

FermionicState fermionic_state(RealMatrix omega) {
    if (omega.rows() != omega.cols() || omega.rows() % 2 != 0 || omega.rows() == 0) {
        throw DimensionError("fermionic_state: omega must be square with even size");
    }
    if ((omega + omega.transpose()).norm() > 1e-9 * std::max(1.0, omega.norm())) {
        throw DimensionError("fermionic_state: omega must be antisymmetric");
    }
    return FermionicState{omega.rows() / 2, std::move(omega)};
}

FermionicState fermionic_vacuum(Eigen::Index n_modes) {
    return fermionic_state(symplectic_form(n_modes).matrix);
}

FermionicComplexStructure fermionic_complex_structure(const FermionicState& state) {
    RealMatrix j = -state.omega;  // indices raised with g = I
    const RealMatrix jj = j * j;
    const RealMatrix minus_i = -RealMatrix::Identity(j.rows(), j.cols());
    if ((jj - minus_i).norm() > 1e-9 * std::max<double>(1, j.rows())) {
        throw WrongPurityError(
            "fermionic_complex_structure: omega does not define a pure state (J^2 != -I)");
    }
    return FermionicComplexStructure{std::move(j)};
}

RealMatrix fermionic_projector(const ModeSubspace& a) {
    require_fermionic(a, "fermionic_projector");
    RealMatrix pi = RealMatrix::Zero(a.ambient_dim(), a.ambient_dim());
    for (const auto& v : a.basis()) {
        const RealVector r = v.real();
        pi += r * r.transpose();
    }
    return pi;
}

ModeSubspace fermionic_partner(const ModeSubspace& a, const FermionicComplexStructure& j) {
    require_fermionic(a, "fermionic_partner");
    if (a.ambient_dim() != j.dim()) {
        throw DimensionError("fermionic_partner: subspace does not live in the map's space");
    }
    if (a.is_empty()) {
        return ModeSubspace::fermionic_from_vectors({}, a.ambient_modes());
    }
    const RealMatrix project_out =
        RealMatrix::Identity(a.ambient_dim(), a.ambient_dim()) - fermionic_projector(a);
    std::vector<RealVector> images;
    for (const auto& v : a.basis()) {
        RealVector w = project_out * (j.map * v.real());
        if (w.norm() > tol::rank) images.push_back(std::move(w));
    }
    return ModeSubspace::fermionic_from_vectors(images, a.ambient_modes());
}

}  // namespace gpm
