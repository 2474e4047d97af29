#include "enet/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

#include "enet/error.hpp"
#include "enet/laplacian.hpp"

namespace enet {

namespace {

Matrix dense_l2_laplacian(const Network& net) { return Matrix(build_l2_laplacian(net)); }

// Upper triangular R with Θ' = RᵀR. Reduced coordinates u map to
// energy-orthonormal coordinates R u.
Matrix energy_factor(const Network& net) {
    SolverOptions dense;
    dense.kind = SolverKind::Dense;
    return EnergySpace(net, dense).solver().factor();
}

// Operator norm of M: H_E -> H_E given the factor R.
double energy_operator_norm(const Matrix& r, const Matrix& m) {
    const Matrix conj = r * m * r.triangularView<Eigen::Upper>().solve(Matrix::Identity(r.rows(), r.cols()));
    return spectral_norm(conj);
}

Vector krein_reduced(const Network& net, const Vector& coords) {
    return krein_apply(net, EnergyVector::from_reduced(net, coords)).reduced();
}

double energy_dot(const Network& net, const Vector& a, const Vector& b) {
    return energy_inner(net, EnergyVector::from_reduced(net, a), EnergyVector::from_reduced(net, b));
}

Vector l2_laplacian_via_l(const Network& net, const Vector& xi) {
    return op_Lstar_apply(net, op_L_apply(net, L2Vector{xi})).values;
}

}  // namespace

EigenSystem eig_l2(const Network& net, const EigenOptions& options) {
    EigenSystem out;
    out.realization = Realization::L2;
    if (net.num_vertices() <= options.dense_limit) {
        const Matrix theta = dense_l2_laplacian(net);
        Eigen::SelfAdjointEigenSolver<Matrix> es(theta);
        if (es.info() != Eigen::Success) {
            throw NumericalError("dense symmetric eigensolver failed");
        }
        out.eigenvalues = es.eigenvalues();
        out.eigenvectors = es.eigenvectors();
        out.residuals.resize(out.eigenvalues.size());
        for (Eigen::Index k = 0; k < out.eigenvalues.size(); ++k) {
            out.residuals(k) = (theta * out.eigenvectors.col(k) - out.eigenvalues(k) * out.eigenvectors.col(k)).norm();
        }
        return out;
    }

    const SparseMatrix theta = build_l2_laplacian(net);
    LanczosOptions lo;
    lo.num_pairs = options.iterative_pairs;
    lo.tolerance = options.tolerance;
    lo.smallest = options.smallest;
    const auto res = lanczos([&](const Vector& v) -> Vector { return theta * v; },
                             [](const Vector& a, const Vector& b) { return a.dot(b); }, net.reduced_size(), lo);
    out.eigenvalues = res.values;
    out.eigenvectors = res.vectors;
    out.residuals = res.residuals;
    out.complete = static_cast<std::size_t>(res.values.size()) == net.reduced_size();
    return out;
}

EigenSystem eig_energy(const Network& net, const EigenOptions& options) {
    EigenSystem out;
    out.realization = Realization::Energy;
    if (net.num_vertices() <= options.dense_limit) {
        // With Θ' = RᵀR, R is the matrix of L from the standard basis of
        // l2(V') to an orthonormal basis of H_E, so LL* there is R Rᵀ.
        const Matrix r = energy_factor(net);
        const Matrix s = r * r.transpose();
        Eigen::SelfAdjointEigenSolver<Matrix> es(s);
        if (es.info() != Eigen::Success) {
            throw NumericalError("dense symmetric eigensolver failed");
        }
        out.eigenvalues = es.eigenvalues();
        out.eigenvectors = r.triangularView<Eigen::Upper>().solve(es.eigenvectors());
        out.residuals.resize(out.eigenvalues.size());
        for (Eigen::Index k = 0; k < out.eigenvalues.size(); ++k) {
            const Vector v = out.eigenvectors.col(k);
            const Vector res = krein_reduced(net, v) - out.eigenvalues(k) * v;
            out.residuals(k) = std::sqrt(std::max(energy_dot(net, res, res), 0.0));
        }
        return out;
    }

    LanczosOptions lo;
    lo.num_pairs = options.iterative_pairs;
    lo.tolerance = options.tolerance;
    lo.smallest = options.smallest;
    const auto res = lanczos([&](const Vector& v) { return krein_reduced(net, v); },
                             [&](const Vector& a, const Vector& b) { return energy_dot(net, a, b); },
                             net.reduced_size(), lo);
    out.eigenvalues = res.values;
    out.eigenvectors = res.vectors;
    out.residuals = res.residuals;
    out.complete = static_cast<std::size_t>(res.values.size()) == net.reduced_size();
    return out;
}

SpectrumComparison compare_spectra(const Network& net, double tol, const EigenOptions& options) {
    const EigenSystem a = eig_l2(net, options);
    const EigenSystem b = eig_energy(net, options);

    SpectrumComparison rep;
    rep.tolerance = tol;
    const double top = std::max({1.0, a.eigenvalues.size() ? a.eigenvalues.cwiseAbs().maxCoeff() : 0.0,
                                 b.eigenvalues.size() ? b.eigenvalues.cwiseAbs().maxCoeff() : 0.0});
    const double zero_tol = 1e-12 * top;
    auto nonzero = [&](const Vector& v, bool& has_zero) {
        std::vector<double> keep;
        has_zero = false;
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            if (std::abs(v(i)) <= zero_tol) {
                has_zero = true;
            } else {
                keep.push_back(v(i));
            }
        }
        std::sort(keep.begin(), keep.end());
        return Vector(Eigen::Map<Vector>(keep.data(), static_cast<Eigen::Index>(keep.size())));
    };
    rep.l2 = nonzero(a.eigenvalues, rep.zero_l2);
    rep.energy = nonzero(b.eigenvalues, rep.zero_energy);
    if (rep.l2.size() != rep.energy.size()) {
        throw NumericalError("nonzero spectra have different sizes: " + std::to_string(rep.l2.size()) + " vs " +
                             std::to_string(rep.energy.size()));
    }
    rep.matched_pairs = static_cast<std::size_t>(rep.l2.size());
    for (Eigen::Index i = 0; i < rep.l2.size(); ++i) {
        const double d = std::abs(rep.l2(i) - rep.energy(i));
        rep.max_abs_dev = std::max(rep.max_abs_dev, d);
        rep.max_dev = std::max(rep.max_dev, d / std::max(1.0, std::abs(rep.l2(i))));
    }
    rep.matched = rep.max_dev <= tol;
    return rep;
}

PolarIsometry polar_isometry(const Network& net) {
    const auto n = static_cast<Eigen::Index>(net.reduced_size());
    const Matrix metric = dense_l2_laplacian(net);  // Gram matrix of ⟨·,·⟩_E in reduced coordinates
    const Matrix r = energy_factor(net);
    const Matrix identity = Matrix::Identity(n, n);

    Matrix l(n, n);
    Matrix lsl(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Vector e = identity.col(j);
        l.col(j) = op_L_apply(net, L2Vector{e}).reduced();
        lsl.col(j) = l2_laplacian_via_l(net, e);
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (lsl + lsl.transpose()));
    const Matrix& q = es.eigenvectors();
    const Vector lam = es.eigenvalues();
    if (lam.size() > 0 && lam.minCoeff() <= 0.0) {
        throw NumericalError("L*L is singular; the network is not connected");
    }
    const Matrix sqrt_lsl = q * lam.cwiseSqrt().asDiagonal() * q.transpose();
    const Matrix inv_sqrt_lsl = q * lam.cwiseSqrt().cwiseInverse().asDiagonal() * q.transpose();

    PolarIsometry p;
    p.u = l * inv_sqrt_lsl;
    const Matrix u_adj = p.u.transpose() * metric;
    p.isometry_defect = spectral_norm(u_adj * p.u - identity);

    const Matrix proj = p.u * u_adj;
    const Matrix proj_adj = metric.llt().solve(proj.transpose() * metric);
    p.projection_defect = energy_operator_norm(r, proj * proj - proj) + energy_operator_norm(r, proj - proj_adj);

    const EigenSystem ee = eig_energy(net);
    const Matrix sqrt_llstar =
        ee.eigenvectors * ee.eigenvalues.cwiseSqrt().asDiagonal() * ee.eigenvectors.transpose() * metric;
    // Operators l2(V') -> H_E are measured through R.
    p.left_residual = spectral_norm(r * (l - p.u * sqrt_lsl));
    p.right_residual = spectral_norm(r * (l - sqrt_llstar * p.u));
    return p;
}

KreinContraction krein_contraction(const Network& net) {
    const Matrix metric = dense_l2_laplacian(net);
    const Matrix r = energy_factor(net);
    const PolarIsometry polar = polar_isometry(net);
    const EigenSystem el2 = eig_l2(net);
    const Matrix resolvent = el2.eigenvectors *
                             (el2.eigenvalues.array() + 1.0).inverse().matrix().asDiagonal() *
                             el2.eigenvectors.transpose();

    KreinContraction kc;
    kc.b = polar.u * resolvent * polar.u.transpose() * metric;
    const Matrix b_adj = metric.llt().solve(kc.b.transpose() * metric);
    kc.selfadjoint_defect = energy_operator_norm(r, kc.b - b_adj);

    const Matrix conj = r * kc.b * r.triangularView<Eigen::Upper>().solve(Matrix::Identity(r.rows(), r.cols()));
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (conj + conj.transpose()), Eigen::EigenvaluesOnly);
    kc.spectrum = es.eigenvalues();
    return kc;
}

double krein_identity_residual(const Network& net, const KreinContraction& kc, const EnergyVector& phi) {
    const EnergyVector psi = phi + krein_apply(net, phi);
    const Vector diff = kc.b * psi.reduced() - phi.reduced();
    return std::sqrt(std::max(energy_dot(net, diff, diff), 0.0));
}

double SpectralMeasure::mass() const {
    double s = 0.0;
    for (const auto& a : atoms) {
        s += a.weight;
    }
    return s;
}

double SpectralMeasure::moment(int k) const {
    double s = 0.0;
    for (const auto& a : atoms) {
        s += std::pow(a.lambda, k) * a.weight;
    }
    return s;
}

double SpectralMeasure::mass_in(double a, double b) const {
    double s = 0.0;
    for (const auto& atom : atoms) {
        if (atom.lambda > a && atom.lambda <= b) {
            s += atom.weight;
        }
    }
    return s;
}

SpectralMeasure spectral_measure(const Network& net, const L2Vector& u) {
    if (static_cast<std::size_t>(u.values.size()) != net.reduced_size()) {
        throw PreconditionError("spectral_measure: l2(V') vector has wrong dimension");
    }
    if (u.values.squaredNorm() == 0.0) {
        throw PreconditionError("spectral_measure needs a nonzero vector");
    }
    const EigenSystem eig = eig_l2(net);
    SpectralMeasure m;
    m.realization = Realization::L2;
    const Vector coeff = eig.eigenvectors.transpose() * u.values;
    for (Eigen::Index i = 0; i < coeff.size(); ++i) {
        m.atoms.push_back({eig.eigenvalues(i), coeff(i) * coeff(i)});
    }
    const Vector tu = l2_laplacian_via_l(net, u.values);
    m.norm_squared = u.values.squaredNorm();
    m.form_value = u.values.dot(tu);
    m.form_norm_squared = tu.squaredNorm();
    return m;
}

SpectralMeasure spectral_measure(const Network& net, const EigenSystem& eig, const EnergyVector& u) {
    if (eig.realization != Realization::Energy) {
        throw PreconditionError("spectral_measure: energy vector needs the energy eigensystem");
    }
    if (u.size() != net.num_vertices()) {
        throw PreconditionError("spectral_measure: energy vector has wrong dimension");
    }
    const double norm2 = energy_norm_squared(net, u);
    if (norm2 == 0.0) {
        throw PreconditionError("spectral_measure needs a nonzero vector");
    }
    SpectralMeasure m;
    m.realization = Realization::Energy;
    for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
        const double c = energy_inner(net, EnergyVector::from_reduced(net, eig.eigenvectors.col(i)), u);
        m.atoms.push_back({eig.eigenvalues(i), c * c});
    }
    const EnergyVector tu = krein_apply(net, u);
    m.norm_squared = norm2;
    m.form_value = energy_inner(net, u, tu);
    m.form_norm_squared = energy_norm_squared(net, tu);
    return m;
}

SpectralMeasure spectral_measure(const Network& net, const EnergyVector& u) {
    return spectral_measure(net, eig_energy(net), u);
}

DefectProbe defect_probe_chain(const ChainProfile& profile, std::size_t n_max) {
    if (n_max < 10) {
        throw PreconditionError("defect probe needs a horizon n_max >= 10");
    }
    if (profile.kind == ChainProfile::Kind::TwoSidedGeometric) {
        throw PreconditionError("defect probe runs on half-line chains only");
    }
    if (profile.kind == ChainProfile::Kind::Geometric && !(profile.ratio > 1.0)) {
        throw PreconditionError("geometric profile needs A > 1");
    }

    using cd = std::complex<double>;
    const cd i_unit(0.0, 1.0);
    DefectProbe probe;
    probe.profile = profile;
    probe.partial_sums.reserve(n_max);

    // Flux form of the recursion. With f_n = c_n (u(n+1) - u(n)), vertex n
    // gives f_n = f_{n-1} - i u(n) (f_{-1} = 0). Stepping the flux instead of
    // differencing u keeps rounding from being amplified by c_n.
    cd u = 1.0;
    cd flux = 0.0;
    double sum = 0.0;
    for (std::size_t n = 0; n < n_max; ++n) {
        const double c = profile.conductance(static_cast<std::int64_t>(n));
        flux -= i_unit * u;
        u += flux / c;
        sum += std::norm(flux) / c;
        if (!std::isfinite(sum) || sum > 1e300 || std::abs(u) > 1e300) {
            throw NumericalError("defect recursion overflowed at n = " + std::to_string(n));
        }
        probe.partial_sums.push_back(sum);
    }
    const double s_full = probe.partial_sums.back();
    const double s_half = probe.partial_sums[n_max / 2 - 1];
    probe.relative_increment = s_full > 0.0 ? (s_full - s_half) / s_full : 0.0;
    probe.plateau = (s_full - s_half) <= 1e-6 * s_full;
    return probe;
}

}  // namespace enet
