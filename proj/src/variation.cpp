#include "enet/variation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "enet/error.hpp"
#include "enet/laplacian.hpp"
#include "enet/spectral.hpp"

namespace enet {

namespace {

// Upper triangular F with Θ' = FᵀF, from the subtraction-free elimination.
Matrix orthonormal_factor(const EnergySpace& space) {
    if (space.solver().is_dense()) {
        return space.solver().factor();
    }
    SolverOptions dense;
    dense.kind = SolverKind::Dense;
    return EnergySpace(space.network(), dense).solver().factor();
}

Matrix inverse_upper(const Matrix& r) {
    return r.triangularView<Eigen::Upper>().solve(Matrix::Identity(r.rows(), r.cols()));
}

// Norm of D: (H_1 -> H_2) given the Cholesky factors of both Gram matrices.
double mixed_norm(const Matrix& r_to, const Matrix& d, const Matrix& r_from) {
    return spectral_norm(r_to * d * inverse_upper(r_from));
}

std::string edge_text(const Network& net, const Edge& e) {
    std::ostringstream s;
    s << "(" << net.label(e.x) << ", " << net.label(e.y) << ")";
    return s.str();
}

}  // namespace

ConductancePair make_pair(Network base, Network upper, const SolverOptions& options) {
    if (base.num_vertices() != upper.num_vertices() || base.num_edges() != upper.num_edges()) {
        throw ValidationError("conductance pair: networks have different vertex or edge counts");
    }
    if (base.base_point() != upper.base_point()) {
        throw ValidationError("conductance pair: base points differ");
    }
    for (VertexId v = 0; v < base.num_vertices(); ++v) {
        if (base.label(v) != upper.label(v)) {
            throw ValidationError("conductance pair: vertex labels differ");
        }
    }
    for (std::size_t i = 0; i < base.num_edges(); ++i) {
        const Edge& e = base.edge(i);
        const Edge& f = upper.edge(i);
        if (e.x != f.x || e.y != f.y) {
            throw ValidationError("conductance pair: edge sets differ at " + edge_text(base, e));
        }
        if (f.c < e.c) {
            std::ostringstream s;
            s << "conductance pair: ordering c <= c_A violated at edge " << edge_text(base, e) << " (" << e.c
              << " > " << f.c << ")";
            throw ValidationError(s.str());
        }
    }
    EnergySpace b(std::move(base), options);
    EnergySpace u(std::move(upper), options);
    return ConductancePair(std::move(b), std::move(u));
}

EnergyVector pullback(const ConductancePair& pair, const EnergyVector& w) {
    // Θ'_C w computed as L_C* w, then solved against Θ'_A.
    return pair.upper_space().solve(op_Lstar_apply(pair.base(), w).values);
}

PullbackDeltaReport pullback_delta(const ConductancePair& pair, VertexId x) {
    const Network& c = pair.base();
    const Network& a = pair.upper();
    const EnergySpace& ha = pair.upper_space();
    if (!c.contains(x)) {
        throw PreconditionError("pullback_delta: vertex out of range");
    }

    PullbackDeltaReport rep;
    const EnergyVector delta = delta_vector(c, x);
    rep.pullback = pullback(pair, delta);

    // (c(x) - c_A(x)) v_x - Σ_y (c_xy - c^A_xy) v_y, regrouped with
    // c(x) = Σ_y c_xy and v_x - v_y = v_xy. The ungrouped sum cancels
    // terms of size c_A(x) and loses all accuracy on steep profiles.
    EnergyVector dipole_sum = EnergyVector::zero(a);
    EnergyVector predicted = EnergyVector::zero(a);
    for (const auto& nb : c.neighbors(x)) {
        const EnergyVector v = ha.dipole(x, nb.vertex);
        dipole_sum += nb.c * v;
        predicted += (nb.c - a.conductance(x, nb.vertex)) * v;
    }
    rep.dipole_sum_residual = std::sqrt(ha.norm_squared(rep.pullback - dipole_sum));
    rep.difference_residual = std::sqrt(ha.norm_squared((rep.pullback - delta) - predicted));
    rep.ok = rep.dipole_sum_residual <= rep.tolerance && rep.difference_residual <= rep.tolerance;
    return rep;
}

IntertwineReport intertwine_check(const ConductancePair& pair, std::size_t samples) {
    if (samples == 0) {
        throw PreconditionError("intertwine_check needs at least one sample");
    }
    const Network& c = pair.base();
    const Network& a = pair.upper();
    const std::size_t m = c.num_edges();
    const std::size_t count = std::min(samples, m);

    IntertwineReport rep;
    rep.samples = count;
    for (std::size_t k = 0; k < count; ++k) {
        const Edge& e = c.edge(k * m / count);
        const EnergyVector v = pair.base_space().dipole(e.x, e.y);
        const EnergyVector h = pullback(pair, v);
        // j_A is the identity on vertex functions; read Δ_A h back in H_C.
        const EnergyVector lhs = EnergyVector::gauge_fixed(c, energy_laplacian(a, h).values());
        const EnergyVector rhs = energy_laplacian(c, v);
        rep.pointwise_residual = std::max(rep.pointwise_residual, std::sqrt(energy_norm_squared(c, lhs - rhs)));

        const EnergyVector lhs_kr = EnergyVector::gauge_fixed(c, krein_apply(a, h).values());
        const EnergyVector rhs_kr = krein_apply(c, v);
        rep.krein_residual = std::max(rep.krein_residual, std::sqrt(energy_norm_squared(c, lhs_kr - rhs_kr)));
    }
    rep.max_residual = std::max(rep.pointwise_residual, rep.krein_residual);
    return rep;
}

GramOperator gram_operator(const ConductancePair& pair) {
    const Network& c = pair.base();
    const auto n = static_cast<Eigen::Index>(c.reduced_size());
    const Matrix metric = Matrix(pair.base_space().reduced_laplacian());
    const Matrix r = orthonormal_factor(pair.base_space());

    GramOperator g;
    g.op.resize(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
        g.op.col(j) = pullback(pair, EnergyVector::from_reduced(c, Matrix::Identity(n, n).col(j))).reduced();
    }
    const Matrix adj = pair.base_space().solver().solve(Matrix(g.op.transpose() * metric));
    g.selfadjoint_defect = mixed_norm(r, g.op - adj, r);

    const Matrix conj = r * g.op * inverse_upper(r);
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (conj + conj.transpose()), Eigen::EigenvaluesOnly);
    g.spectrum = es.eigenvalues();

    const Matrix ga = pair.upper_space().gramian();
    std::vector<EnergyVector> dipoles;
    dipoles.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        dipoles.push_back(pair.base_space().based_dipole(c.vertex_at(static_cast<std::size_t>(i))));
    }
    for (Eigen::Index j = 0; j < n; ++j) {
        const EnergyVector jv = EnergyVector::from_reduced(c, g.op * dipoles[static_cast<std::size_t>(j)].reduced());
        for (Eigen::Index i = 0; i < n; ++i) {
            const double lhs = energy_inner(c, dipoles[static_cast<std::size_t>(i)], jv);
            g.gramian_defect = std::max(g.gramian_defect, std::abs(lhs - ga(i, j)));
        }
    }
    return g;
}

TraceReport trace_gram(const ConductancePair& pair) {
    const Network& c = pair.base();
    const EnergySpace& hc = pair.base_space();
    const auto n = static_cast<Eigen::Index>(c.reduced_size());

    auto diagonal_term = [&](const EnergyVector& b) { return hc.inner(b, EnergyVector::gauge_fixed(c, pullback(pair, b).values())); };

    TraceReport rep;
    // Eigenvectors of Θ'_C are ⟨·,·⟩_C-orthogonal; rescale them to unit energy.
    Eigen::SelfAdjointEigenSolver<Matrix> es{Matrix(hc.reduced_laplacian())};
    for (Eigen::Index i = 0; i < n; ++i) {
        const Vector q = es.eigenvectors().col(i) / std::sqrt(es.eigenvalues()(i));
        rep.trace += diagonal_term(EnergyVector::from_reduced(c, q));
    }

    // Gram-Schmidt in H_C over the edge dipoles (they span H_C).
    std::vector<EnergyVector> basis;
    for (const auto& e : c.edges()) {
        if (static_cast<Eigen::Index>(basis.size()) == n) {
            break;
        }
        EnergyVector v = hc.dipole(e.x, e.y);
        const double original = std::sqrt(hc.norm_squared(v));
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                v -= hc.inner(b, v) * b;
            }
        }
        const double norm = std::sqrt(hc.norm_squared(v));
        if (norm <= 1e-10 * original) {
            continue;
        }
        v *= 1.0 / norm;
        basis.push_back(v);
    }
    for (const auto& b : basis) {
        rep.trace_dipole_basis += diagonal_term(b);
    }
    rep.basis_gap = std::abs(rep.trace - rep.trace_dipole_basis);
    return rep;
}

IsometricFactor isometric_factor(const ConductancePair& pair) {
    // In orthonormal coordinates y = F u of each space, j_A: H_A -> H_C is
    // K = F_C F_A^{-1}, and W = j_A (j_A* j_A)^{-1/2} is the orthogonal polar
    // factor of K. Taking it from the SVD keeps W isometric to rounding even
    // when j_A* j_A is badly conditioned.
    const Matrix f_c = orthonormal_factor(pair.base_space());
    const Matrix f_a = orthonormal_factor(pair.upper_space());
    const Matrix k = f_c * inverse_upper(f_a);

    IsometricFactor f;
    const auto n = k.rows();
    if (n == 0) {
        return f;
    }
    Eigen::JacobiSVD<Matrix> svd(k, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const Vector& s = svd.singularValues();
    if (!(s(n - 1) > 0.0)) {
        throw NumericalError("j_A* j_A is singular");
    }
    f.condition = (s(0) / s(n - 1)) * (s(0) / s(n - 1));
    f.ill_conditioned = f.condition > 1e12;

    const Matrix q = svd.matrixU() * svd.matrixV().transpose();
    f.w = f_c.triangularView<Eigen::Upper>().solve(q * f_a);
    f.isometry_defect = spectral_norm(q.transpose() * q - Matrix::Identity(n, n));
    const Matrix modulus = svd.matrixV() * s.asDiagonal() * svd.matrixV().transpose();
    f.polar_residual = spectral_norm(k - q * modulus) / s(0);

    // Krein realizations LL* are Θ' in reduced coordinates, F Fᵀ in orthonormal ones.
    const Matrix s_c = f_c * f_c.transpose();
    const Matrix s_a = f_a * f_a.transpose();
    f.conjugation_residual = spectral_norm(q * s_a * q.transpose() - s_c);
    f.commutation_residual = spectral_norm(q * s_a - s_c * q);
    return f;
}

std::vector<Interval> dyadic_intervals(double upper, int levels) {
    if (!(upper > 0.0) || levels < 0) {
        throw PreconditionError("dyadic_intervals needs upper > 0 and levels >= 0");
    }
    std::vector<Interval> out;
    for (int l = 0; l <= levels; ++l) {
        const std::size_t parts = std::size_t{1} << l;
        const double h = upper / static_cast<double>(parts);
        for (std::size_t k = 0; k < parts; ++k) {
            out.push_back({h * static_cast<double>(k), k + 1 == parts ? upper : h * static_cast<double>(k + 1)});
        }
    }
    return out;
}

DominationReport spectral_domination(const ConductancePair& pair, const EnergyVector& u,
                                     std::span<const Interval> intervals) {
    const Network& c = pair.base();
    const Network& a = pair.upper();
    if (energy_norm_squared(c, u) == 0.0) {
        throw PreconditionError("spectral_domination needs a nonzero vector");
    }
    const EnergyVector h = pullback(pair, u);
    if (energy_norm_squared(a, h) == 0.0) {
        throw PreconditionError("spectral_domination: pullback of u vanishes");
    }

    const SpectralMeasure mu_c = spectral_measure(c, u);
    const SpectralMeasure mu_a = spectral_measure(a, h);

    DominationReport rep;
    rep.all_intervals_dominated = true;
    for (const auto& s : intervals) {
        DominationRow row{s, mu_c.mass_in(s.a, s.b), mu_a.mass_in(s.a, s.b), false};
        row.dominated = row.mu_c <= row.mu_a + rep.tolerance;
        rep.all_intervals_dominated = rep.all_intervals_dominated && row.dominated;
        rep.rows.push_back(row);
    }

    rep.all_moments_dominated = true;
    EnergyVector tu = u;
    EnergyVector th = h;
    for (int k = 0; k < 4; ++k) {
        tu = krein_apply(c, tu);
        th = krein_apply(a, th);
        rep.moment_c[k] = energy_inner(c, u, tu);
        rep.moment_a[k] = energy_inner(a, h, th);
        rep.moment_ok[k] = rep.moment_c[k] <= rep.moment_a[k] + rep.tolerance;
        rep.all_moments_dominated = rep.all_moments_dominated && rep.moment_ok[k];
    }
    return rep;
}

double harmonic_pullback_check(const ConductancePair& pair, const EnergyVector& h,
                               std::span<const VertexId> interior) {
    const Network& c = pair.base();
    const Vector lap_c = apply_laplacian(c, h.values());
    for (VertexId x : interior) {
        if (!c.contains(x)) {
            throw PreconditionError("harmonic_pullback_check: interior vertex out of range");
        }
        if (std::abs(lap_c(static_cast<Eigen::Index>(x))) > 1e-9) {
            throw PreconditionError("harmonic_pullback_check: h is not harmonic at vertex " +
                                    std::to_string(c.label(x)));
        }
    }
    const Vector lap_a = apply_laplacian(pair.upper(), pullback(pair, h).values());
    double worst = 0.0;
    for (VertexId x : interior) {
        worst = std::max(worst, std::abs(lap_a(static_cast<Eigen::Index>(x))));
    }
    return worst;
}

}  // namespace enet
