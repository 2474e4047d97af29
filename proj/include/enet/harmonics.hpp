#pragma once

#include <map>
#include <span>

#include "enet/energy.hpp"
#include "enet/network.hpp"

namespace enet {

/// u = fin_part + harm_part, with fin_part in span{δ_x : x in interior} and
/// harm_part energy-orthogonal to it (equivalently, harmonic on interior).
struct HarmonicSplit {
    EnergyVector fin_part;
    EnergyVector harm_part;
    double orthogonality_defect = 0;   // |⟨fin_part, harm_part⟩_E|
    double reconstruction_defect = 0;  // ‖fin_part + harm_part - u‖_E
};

/// Throws NumericalError when the δ-Gram matrix on the interior is
/// numerically singular. If interior is all of V the base point is dropped,
/// since Σ_x δ_x is constant and therefore 0 in H_E.
HarmonicSplit decompose(const Network& net, const EnergyVector& u, std::span<const VertexId> interior);

/// Dirichlet problem: Δh = 0 off the boundary, h = data on it. The result is
/// the minimal-energy extension, returned gauge-fixed (so all values are
/// shifted by the solution's value at the base point).
EnergyVector solve_harmonic_truncation(const Network& net, const std::map<VertexId, double>& boundary);

/// ‖h‖²_E.
double harmonic_energy(const Network& net, const EnergyVector& h);

/// max_{x in interior} |(Δh)(x)|.
double max_interior_laplacian(const Network& net, const EnergyVector& h, std::span<const VertexId> interior);

}  // namespace enet
