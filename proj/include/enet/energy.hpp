#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "enet/linalg.hpp"
#include "enet/network.hpp"

namespace enet {

/// Element of the energy space H_E: a vertex function modulo constants,
/// represented by the representative that vanishes at the base point.
class EnergyVector {
public:
    EnergyVector() = default;

    /// Subtracts values[base] so the result is gauge-fixed.
    static EnergyVector gauge_fixed(const Network& net, Vector values);
    /// Coordinates on V' (see Network::reduced_index), zero at the base point.
    static EnergyVector from_reduced(const Network& net, const Vector& coords);
    static EnergyVector zero(const Network& net);

    const Vector& values() const noexcept { return values_; }
    double operator[](VertexId v) const { return values_(static_cast<Eigen::Index>(v)); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.size()); }
    VertexId base_point() const noexcept { return base_; }

    Vector reduced() const;

    EnergyVector& operator+=(const EnergyVector& other);
    EnergyVector& operator-=(const EnergyVector& other);
    EnergyVector& operator*=(double s);

    friend EnergyVector operator+(EnergyVector a, const EnergyVector& b) { return a += b; }
    friend EnergyVector operator-(EnergyVector a, const EnergyVector& b) { return a -= b; }
    friend EnergyVector operator*(double s, EnergyVector a) { return a *= s; }

private:
    Vector values_;
    VertexId base_ = 0;
};

/// Vector in l2(V'), indexed by reduced coordinates.
struct L2Vector {
    Vector values;
};

/// ⟨u, v⟩_E = (1/2) Σ_x Σ_y c_xy (u(x) - u(y)) (v(x) - v(y)), summed edge by edge.
double energy_inner(const Network& net, const EnergyVector& u, const EnergyVector& v);
double energy_norm_squared(const Network& net, const EnergyVector& u);

/// A network together with a factorization of its reduced Laplacian Θ', for
/// repeated dipole solves. Operators on H_E throughout the library are
/// matrices acting on reduced coordinates, where ⟨u, v⟩_E = uᵀ Θ' v.
class EnergySpace {
public:
    explicit EnergySpace(Network net, const SolverOptions& options = {});

    const Network& network() const noexcept { return net_; }
    std::size_t dimension() const noexcept { return net_.reduced_size(); }
    const SparseMatrix& reduced_laplacian() const noexcept { return solver_.matrix(); }
    const SpdSolver& solver() const noexcept { return solver_; }

    double inner(const EnergyVector& u, const EnergyVector& v) const { return energy_inner(net_, u, v); }
    double norm_squared(const EnergyVector& u) const { return energy_norm_squared(net_, u); }

    /// Gauge-fixed h with Θ' h = rhs on V'.
    EnergyVector solve(const Vector& rhs) const;

    /// v_xy: the unique gauge-fixed solution of Δ v = δ_x - δ_y.
    EnergyVector dipole(VertexId x, VertexId y) const;

    /// v_x := v_{x,o}.
    EnergyVector based_dipole(VertexId x) const { return dipole(x, net_.base_point()); }

    /// Effective resistance ‖v_xy‖²_E = v_xy(x) - v_xy(y).
    double resistance(VertexId x, VertexId y) const;

    /// Full Gramian G(x, y) = ⟨v_x, v_y⟩_E on V' x V' (equals Θ'^{-1}).
    Matrix gramian() const;

private:
    Network net_;
    SpdSolver solver_;
};

EnergyVector solve_dipole(const Network& net, VertexId x, VertexId y, double tol = 1e-12);
double resistance_distance(const Network& net, VertexId x, VertexId y);

/// G(x, y) = ⟨v_{x,o}, v_{y,o}⟩_E. Both vertices must differ from the base point.
double gramian(const Network& net, VertexId x, VertexId y);

struct OrientedEdge {
    VertexId x;
    VertexId y;
};

/// Parseval frame {w_xy = √c_xy v_xy} over one orientation (x < y) per edge.
struct FrameSystem {
    Network network;
    std::vector<OrientedEdge> oriented;
    std::vector<EnergyVector> dipoles;
    std::vector<double> scales;

    std::size_t size() const noexcept { return oriented.size(); }
    EnergyVector frame_vector(std::size_t i) const { return scales.at(i) * dipoles.at(i); }
};

FrameSystem build_frame(const Network& net, double tol = 1e-12);

/// Analysis operator: coefficient ⟨w_xy, u⟩_E = √c_xy (u(x) - u(y)) per oriented edge.
std::vector<double> frame_analyze(const FrameSystem& fs, const EnergyVector& u);

/// Synthesis operator: Σ_j γ_j w_j.
EnergyVector frame_synthesize(const FrameSystem& fs, std::span<const double> coeffs);

}  // namespace enet
