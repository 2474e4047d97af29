#include "enet/linalg.hpp"

#include <Eigen/IterativeLinearSolvers>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "enet/error.hpp"
#include "enet/random.hpp"

namespace enet {

namespace {

// Star-mesh elimination of a grounded Laplacian given by its edge weights w
// (symmetric, zero diagonal) and ground conductances g. Every update adds
// nonnegative terms.
void eliminate_grounded(Matrix w, Vector g, Matrix& unit_lower, Vector& pivots) {
    const Eigen::Index n = w.rows();
    unit_lower = Matrix::Identity(n, n);
    pivots.resize(n);
    std::vector<Eigen::Index> nbrs;
    for (Eigen::Index k = 0; k < n; ++k) {
        nbrs.clear();
        double p = g(k);
        for (Eigen::Index i = k + 1; i < n; ++i) {
            if (w(i, k) > 0.0) {
                nbrs.push_back(i);
                p += w(i, k);
            }
        }
        if (!(p > 0.0)) {
            throw NumericalError("elimination hit a zero pivot: network part is not connected to the base point");
        }
        pivots(k) = p;
        for (Eigen::Index i : nbrs) {
            const double a = w(i, k) / p;
            unit_lower(i, k) = -a;
            g(i) += a * g(k);
            for (Eigen::Index j : nbrs) {
                if (j != i) {
                    w(i, j) += a * w(j, k);
                }
            }
        }
    }
}

}  // namespace

SpdSolver::SpdSolver(const SparseMatrix& matrix, const SolverOptions& options, const Vector* grounding)
    : matrix_(matrix), options_(options) {
    const auto n = static_cast<std::size_t>(matrix.rows());
    switch (options.kind) {
        case SolverKind::Dense: dense_ = true; break;
        case SolverKind::ConjugateGradient: dense_ = false; break;
        case SolverKind::Automatic: dense_ = n < options.dense_threshold; break;
    }
    if (dense_ && grounding != nullptr) {
        if (grounding->size() != matrix.rows()) {
            throw PreconditionError("grounding vector has the wrong dimension");
        }
        Matrix w = -Matrix(matrix);
        w.diagonal().setZero();
        if ((w.array() < 0.0).any() || (grounding->array() < 0.0).any()) {
            throw PreconditionError("grounded elimination needs nonpositive off-diagonals and nonnegative grounding");
        }
        eliminate_grounded(std::move(w), *grounding, unit_lower_, pivots_);
        laplacian_ = true;
    } else if (dense_) {
        llt_.compute(Matrix(matrix));
        if (llt_.info() != Eigen::Success) {
            throw NumericalError("Cholesky factorization failed: matrix is not positive definite");
        }
    }
}

Vector SpdSolver::solve(const Vector& rhs) const {
    if (laplacian_) {
        Vector y = unit_lower_.triangularView<Eigen::UnitLower>().solve(rhs);
        y.array() /= pivots_.array();
        return unit_lower_.transpose().triangularView<Eigen::UnitUpper>().solve(y);
    }
    if (dense_) {
        return llt_.solve(rhs);
    }
    Eigen::ConjugateGradient<SparseMatrix, Eigen::Lower | Eigen::Upper, Eigen::DiagonalPreconditioner<double>> cg;
    const auto cap = options_.max_iterations != 0 ? options_.max_iterations : 20 * dimension();
    cg.setMaxIterations(static_cast<Eigen::Index>(std::max<std::size_t>(cap, 1)));
    cg.setTolerance(options_.tolerance);
    cg.compute(matrix_);
    Vector x = cg.solve(rhs);
    if (cg.info() != Eigen::Success) {
        throw NumericalError("conjugate gradient did not converge in " + std::to_string(cg.iterations()) +
                             " iterations (relative residual " + std::to_string(cg.error()) + ")");
    }
    return x;
}

Matrix SpdSolver::solve(const Matrix& rhs) const {
    if (laplacian_) {
        Matrix y = unit_lower_.triangularView<Eigen::UnitLower>().solve(rhs);
        y = pivots_.cwiseInverse().asDiagonal() * y;
        return unit_lower_.transpose().triangularView<Eigen::UnitUpper>().solve(y);
    }
    if (dense_) {
        return llt_.solve(rhs);
    }
    Matrix out(rhs.rows(), rhs.cols());
    for (Eigen::Index j = 0; j < rhs.cols(); ++j) {
        out.col(j) = solve(Vector(rhs.col(j)));
    }
    return out;
}

Matrix SpdSolver::factor() const {
    if (laplacian_) {
        return pivots_.cwiseSqrt().asDiagonal() * unit_lower_.transpose();
    }
    if (dense_) {
        return llt_.matrixU();
    }
    Eigen::LLT<Matrix> llt{Matrix(matrix_)};
    if (llt.info() != Eigen::Success) {
        throw NumericalError("Cholesky factorization failed: matrix is not positive definite");
    }
    return llt.matrixU();
}

Matrix spd_sqrt(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    return es.operatorSqrt();
}

Matrix spd_inv_sqrt(const Matrix& a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(a);
    if (es.eigenvalues().size() > 0 && es.eigenvalues().minCoeff() <= 0.0) {
        throw NumericalError("inverse square root of a singular matrix");
    }
    return es.operatorInverseSqrt();
}

double spectral_norm(const Matrix& a) {
    if (a.size() == 0) {
        return 0.0;
    }
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
}

LanczosResult lanczos(const LinearOperator& apply, const InnerProduct& inner, std::size_t dimension,
                      const LanczosOptions& options) {
    if (dimension == 0) {
        return {};
    }
    const std::size_t wanted = std::min(options.num_pairs, dimension);
    const std::size_t max_steps = options.max_steps == 0 ? dimension : std::min(options.max_steps, dimension);
    const auto n = static_cast<Eigen::Index>(dimension);

    Rng rng(options.seed);
    Vector q(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        q(i) = rng.normal();
    }
    q /= std::sqrt(inner(q, q));

    Matrix basis(n, static_cast<Eigen::Index>(max_steps));
    std::vector<double> alpha;
    std::vector<double> beta;

    auto ritz = [&](std::size_t m, Eigen::SelfAdjointEigenSolver<Matrix>& es) {
        Matrix t = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
        for (std::size_t i = 0; i < m; ++i) {
            t(i, i) = alpha[i];
            if (i + 1 < m) {
                t(i, i + 1) = t(i + 1, i) = beta[i];
            }
        }
        es.compute(t);
    };

    LanczosResult result;
    std::size_t m = 0;
    bool exhausted = false;
    while (m < max_steps) {
        basis.col(static_cast<Eigen::Index>(m)) = q;
        Vector w = apply(q);
        const double a = inner(q, w);
        alpha.push_back(a);
        ++m;
        // Full reorthogonalization against every stored Lanczos vector.
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < m; ++j) {
                const auto col = basis.col(static_cast<Eigen::Index>(j));
                w -= inner(Vector(col), w) * col;
            }
        }
        const double b = std::sqrt(std::max(inner(w, w), 0.0));
        const double scale = std::max(1.0, std::abs(a));
        if (b <= 1e-14 * scale || m == max_steps) {
            exhausted = b <= 1e-14 * scale;
            break;
        }
        if (m >= wanted && (m % 10 == 0)) {
            Eigen::SelfAdjointEigenSolver<Matrix> es;
            ritz(m, es);
            std::size_t converged = 0;
            for (std::size_t k = 0; k < wanted; ++k) {
                const auto idx = static_cast<Eigen::Index>(options.smallest ? k : m - 1 - k);
                const double theta = es.eigenvalues()(idx);
                const double est = std::abs(b * es.eigenvectors()(static_cast<Eigen::Index>(m - 1), idx));
                if (est <= 0.1 * options.tolerance * std::max(1.0, std::abs(theta))) {
                    ++converged;
                }
            }
            if (converged == wanted) {
                break;
            }
        }
        beta.push_back(b);
        q = w / b;
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es;
    ritz(m, es);
    const auto mi = static_cast<Eigen::Index>(m);
    const std::size_t take = std::min(wanted, m);
    result.values.resize(static_cast<Eigen::Index>(take));
    result.vectors.resize(n, static_cast<Eigen::Index>(take));
    result.residuals.resize(static_cast<Eigen::Index>(take));
    result.steps = m;
    for (std::size_t k = 0; k < take; ++k) {
        const auto idx = static_cast<Eigen::Index>(options.smallest ? k : m - 1 - k);
        const auto out = static_cast<Eigen::Index>(options.smallest ? k : take - 1 - k);
        Vector v = basis.leftCols(mi) * es.eigenvectors().col(idx);
        v /= std::sqrt(inner(v, v));
        const double theta = es.eigenvalues()(idx);
        Vector r = apply(v) - theta * v;
        result.values(out) = theta;
        result.vectors.col(out) = v;
        result.residuals(out) = std::sqrt(std::max(inner(r, r), 0.0));
        if (result.residuals(out) > options.tolerance * std::max(1.0, std::abs(theta)) && !exhausted) {
            throw NumericalError("Lanczos did not converge: residual " + std::to_string(result.residuals(out)) +
                                 " for Ritz value " + std::to_string(theta) + " after " + std::to_string(m) +
                                 " steps");
        }
    }
    return result;
}

}  // namespace enet
