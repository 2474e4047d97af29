#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "enet/energy.hpp"
#include "enet/linalg.hpp"
#include "enet/network.hpp"

namespace enet {

/// Two conductance functions c <= c_A on one edge set, with the energy
/// spaces H_C and H_A ready for solves.
///
/// The inclusion j_A: H_A -> H_C is the identity on vertex functions. Its
/// adjoint j_A* ("pullback") is realized by solving Θ'_A h = Θ'_C w.
class ConductancePair {
public:
    const Network& base() const noexcept { return base_.network(); }
    const Network& upper() const noexcept { return upper_.network(); }
    const EnergySpace& base_space() const noexcept { return base_; }
    const EnergySpace& upper_space() const noexcept { return upper_; }

private:
    friend ConductancePair make_pair(Network base, Network upper, const SolverOptions& options);
    ConductancePair(EnergySpace base, EnergySpace upper) : base_(std::move(base)), upper_(std::move(upper)) {}

    EnergySpace base_;
    EnergySpace upper_;
};

/// Throws ValidationError on a topology or base-point mismatch, or when
/// c_A < c on some edge.
ConductancePair make_pair(Network base, Network upper, const SolverOptions& options = {});

/// j_A* w: the gauge-fixed h in H_A with ⟨h, u⟩_A = ⟨w, u⟩_C for all u.
EnergyVector pullback(const ConductancePair& pair, const EnergyVector& w);

struct PullbackDeltaReport {
    EnergyVector pullback;            // j_A* δ_x
    double dipole_sum_residual = 0;   // ‖j_A* δ_x - Σ_{y~x} c_xy v^A_xy‖_A
    double difference_residual = 0;   // ‖(j_A* δ_x - δ_x) - [(c(x) - c_A(x)) v^A_x - Σ_{y~x} (c_xy - c^A_xy) v^A_y]‖_A
                                      // with the bracket evaluated as Σ_{y~x} (c_xy - c^A_xy) v^A_xy
    double tolerance = 1e-9;
    bool ok = false;
};

PullbackDeltaReport pullback_delta(const ConductancePair& pair, VertexId x);

struct IntertwineReport {
    std::size_t samples = 0;
    double pointwise_residual = 0;  // with the pointwise Laplacians
    double krein_residual = 0;      // with the Krein realizations LL*
    double max_residual = 0;
};

/// Max ‖j_A Δ_A j_A* v_xy - Δ v_xy‖_C over `samples` edge dipoles of H_C,
/// spread evenly over the edge list.
IntertwineReport intertwine_check(const ConductancePair& pair, std::size_t samples);

struct GramOperator {
    Matrix op;                        // j_A j_A* on reduced coordinates of H_C
    Vector spectrum;                  // ascending, selfadjoint in ⟨·,·⟩_C
    double selfadjoint_defect = 0;    // ‖J - J*‖_C
    double gramian_defect = 0;        // max_{x,y} |⟨v_x, J v_y⟩_C - G^A(x, y)|
};

GramOperator gram_operator(const ConductancePair& pair);

struct TraceReport {
    double trace = 0;              // over the Θ'_C eigenbasis, normalized in H_C
    double trace_dipole_basis = 0; // over a Gram-Schmidt basis built from edge dipoles
    double basis_gap = 0;
};

TraceReport trace_gram(const ConductancePair& pair);

struct IsometricFactor {
    Matrix w;                        // H_A -> H_C, reduced coordinates
    double isometry_defect = 0;      // ‖W*W - I‖_A
    double polar_residual = 0;       // ‖j_A - W |j_A|‖ / ‖j_A‖
    double condition = 0;            // of j_A* j_A
    bool ill_conditioned = false;    // condition > 1e12
    double conjugation_residual = 0; // ‖W Δ_A W* - Δ‖_C (Krein realizations)
    double commutation_residual = 0; // ‖W Δ_A - Δ W‖
};

/// W = j_A (j_A* j_A)^{-1/2}.
IsometricFactor isometric_factor(const ConductancePair& pair);

struct Interval {
    double a;
    double b;  // half-open (a, b]
};

/// Intervals (k h 2^-l, (k+1) h 2^-l] over (0, upper] for levels l = 0..levels.
std::vector<Interval> dyadic_intervals(double upper, int levels);

struct DominationRow {
    Interval interval;
    double mu_c = 0;   // μ_u(S) for Δ_Kr on H_C
    double mu_a = 0;   // μ_{j*u}(S) for Δ_Kr^A on H_A
    bool dominated = false;
};

struct DominationReport {
    std::vector<DominationRow> rows;
    double moment_c[4] = {0, 0, 0, 0};  // ⟨u, Δ^n u⟩_C, n = 1..4
    double moment_a[4] = {0, 0, 0, 0};  // ⟨j*u, Δ_A^n j*u⟩_A
    bool moment_ok[4] = {false, false, false, false};
    double tolerance = 1e-9;
    bool all_intervals_dominated = false;
    bool all_moments_dominated = false;
};

/// Compares the spectral measures of u and j_A* u interval by interval, and
/// the moment chain for n = 1..4. Interval flags are observations; nothing
/// here throws on a violated inequality.
DominationReport spectral_domination(const ConductancePair& pair, const EnergyVector& u,
                                     std::span<const Interval> intervals);

/// max_{x in interior} |Δ_A(j_A* h)(x)|. Throws PreconditionError unless h is
/// Δ_C-harmonic on the interior within 1e-9.
double harmonic_pullback_check(const ConductancePair& pair, const EnergyVector& h,
                               std::span<const VertexId> interior);

}  // namespace enet
