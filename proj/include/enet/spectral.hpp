#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "enet/energy.hpp"
#include "enet/linalg.hpp"
#include "enet/network.hpp"

namespace enet {

enum class Realization {
    L2,      // Δ_{l2} = L*L on l2(V')
    Energy,  // Δ_Kr = LL* on H_E
};

struct EigenOptions {
    std::size_t dense_limit = 2000;    // vertex count; Lanczos above
    std::size_t iterative_pairs = 32;  // pairs returned by the iterative path
    bool smallest = true;              // which end of the spectrum the iterative path returns
    double tolerance = 1e-8;           // residual acceptance for Lanczos
};

/// Eigenpairs in reduced coordinates. Eigenvectors are orthonormal in the
/// inner product of the realization: the Euclidean one for L2, uᵀΘ'v for
/// Energy.
struct EigenSystem {
    Realization realization = Realization::L2;
    Vector eigenvalues;   // ascending
    Matrix eigenvectors;  // one column per eigenvalue
    Vector residuals;     // ‖T v - λ v‖ in the realization's norm
    bool complete = true; // false when only part of the spectrum was computed
};

EigenSystem eig_l2(const Network& net, const EigenOptions& options = {});
EigenSystem eig_energy(const Network& net, const EigenOptions& options = {});

struct SpectrumComparison {
    std::size_t matched_pairs = 0;
    bool matched = false;
    double max_dev = 0.0;      // max |λ_l2 - λ_E| / max(1, |λ_l2|)
    double max_abs_dev = 0.0;  // max |λ_l2 - λ_E|
    double tolerance = 0.0;
    bool zero_l2 = false;
    bool zero_energy = false;
    Vector l2;
    Vector energy;
};

/// Pairs the sorted nonzero spectra of both realizations. The deviation is
/// scaled by max(1, |λ|) because a backward-stable eigensolver resolves
/// eigenvalues to roughly eps * ‖T‖. Zero flags refer to the finite
/// truncation only.
SpectrumComparison compare_spectra(const Network& net, double tol = 1e-8, const EigenOptions& options = {});

/// Polar factor U of L: L = U (L*L)^{1/2} = (LL*)^{1/2} U.
struct PolarIsometry {
    Matrix u;                   // l2(V') -> H_E, reduced coordinates
    double isometry_defect;     // ‖U*U - I‖
    double projection_defect;   // ‖(UU*)² - UU*‖ + ‖UU* - (UU*)*‖ in H_E
    double left_residual;       // ‖L - U (L*L)^{1/2}‖
    double right_residual;      // ‖L - (LL*)^{1/2} U‖
};

PolarIsometry polar_isometry(const Network& net);

/// B = U (Δ_{l2} + I)^{-1} U*, the contraction that specifies the Krein
/// extension through B(φ + Δφ) = φ.
struct KreinContraction {
    Matrix b;                   // H_E -> H_E, reduced coordinates
    Vector spectrum;            // eigenvalues of B, ascending
    double selfadjoint_defect;  // ‖B - B*‖ in H_E
};

KreinContraction krein_contraction(const Network& net);

/// ‖B(φ + Δ_Kr φ) - φ‖_E.
double krein_identity_residual(const Network& net, const KreinContraction& kc, const EnergyVector& phi);

struct SpectralAtom {
    double lambda;
    double weight;
};

/// Point masses of the spectral measure of a vector with respect to one of
/// the two realizations.
struct SpectralMeasure {
    Realization realization = Realization::L2;
    std::vector<SpectralAtom> atoms;  // ascending λ
    double norm_squared = 0.0;        // ‖u‖² in the realization's space
    double form_value = 0.0;          // ⟨u, T u⟩, computed without the eigenbasis
    double form_norm_squared = 0.0;   // ‖T u‖², computed without the eigenbasis

    double mass() const;
    /// Σ λ^k w.
    double moment(int k) const;
    /// μ((a, b]).
    double mass_in(double a, double b) const;
};

SpectralMeasure spectral_measure(const Network& net, const L2Vector& u);
SpectralMeasure spectral_measure(const Network& net, const EnergyVector& u);
/// Same, reusing a precomputed eigensystem of the matching realization.
SpectralMeasure spectral_measure(const Network& net, const EigenSystem& eig, const EnergyVector& u);

struct DefectProbe {
    ChainProfile profile;
    std::vector<double> partial_sums;  // S_N for N = 1..n_max
    double relative_increment = 0.0;   // (S_N - S_{N/2}) / S_N at N = n_max
    bool plateau = false;
};

/// Solves (Δu)(n) = i u(n) forward from u(0) = 1 on the half-line chain and
/// accumulates S_N = Σ_{n<N} c_n |u(n+1) - u(n)|². A plateau of S_N signals a
/// finite-energy defect solution.
DefectProbe defect_probe_chain(const ChainProfile& profile, std::size_t n_max);

}  // namespace enet
