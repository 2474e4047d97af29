#pragma once

#include "enet/energy.hpp"
#include "enet/linalg.hpp"
#include "enet/network.hpp"

namespace enet {

/// (Δu)(x) = Σ_{y~x} c_xy (u(x) - u(y)) at every vertex.
Vector apply_laplacian(const Network& net, const Vector& u);

/// The same operator written as C(I - P)u with C = diag(c(x)) and P the
/// Markov transition operator.
Vector apply_laplacian_markov(const Network& net, const Vector& u);

/// Full |V| x |V| Laplacian.
SparseMatrix build_laplacian(const Network& net);

/// Θ': Laplacian on l2(V') with the base-point row and column removed.
/// Diagonal c(x), off-diagonal -c_xy on edges.
SparseMatrix build_l2_laplacian(const Network& net);

/// ⟨δ_x, δ_y⟩_E: c(x) on the diagonal, -c_xy for neighbours, 0 otherwise.
double delta_inner(const Network& net, VertexId x, VertexId y);

/// δ_x as an element of H_E (gauge-fixed at the base point).
EnergyVector delta_vector(const Network& net, VertexId x);

/// c(x) v_x - Σ_{y~x} c_xy v_y evaluated from dipole solves (v_o = 0).
EnergyVector delta_in_dipole_basis(const EnergySpace& space, VertexId x);
EnergyVector delta_in_dipole_basis(const Network& net, VertexId x);

/// L ξ = Σ_{x ∈ V'} ξ_x δ_x, i.e. the gauge-fixed function equal to ξ on V'.
EnergyVector op_L_apply(const Network& net, const L2Vector& xi);

/// L ξ through its dipole expansion Σ_x ξ_x c(x) v_x - Σ_y (Σ_{x~y} ξ_x c_xy) v_y.
EnergyVector op_L_apply_dipole_form(const EnergySpace& space, const L2Vector& xi);

/// L* u = (Δu)|_{V'}.
L2Vector op_Lstar_apply(const Network& net, const EnergyVector& u);

/// The Krein realization LL* of the Laplacian on H_E.
EnergyVector krein_apply(const Network& net, const EnergyVector& u);

/// Pointwise Δu read as an element of H_E. On a finite network this differs
/// from LL* u by (Δu)(o) δ_o.
EnergyVector energy_laplacian(const Network& net, const EnergyVector& u);

struct QuadraticForm {
    double direct = 0.0;       // ⟨φ, Δφ⟩_E
    double frame_sum = 0.0;    // Σ_{(xy) ∈ E} c_xy² |⟨v_xy, φ⟩_E|²
    double discrepancy = 0.0;  // |direct - frame_sum|
};

/// Evaluates ⟨φ, Δφ⟩_E directly and as the weighted sum of squared dipole
/// coefficients, and reports both.
QuadraticForm quadratic_form(const EnergySpace& space, const EnergyVector& phi);

/// Returns the direct value; throws NumericalError when the two evaluations
/// differ by more than tol * max(1, direct).
double quadratic_form_checked(const EnergySpace& space, const EnergyVector& phi, double tol = 1e-9);

}  // namespace enet
