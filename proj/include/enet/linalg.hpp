#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstddef>
#include <cstdint>
#include <functional>

namespace enet {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double>;

enum class SolverKind {
    Automatic,          // dense below SolverOptions::dense_threshold, CG above
    Dense,
    ConjugateGradient,
};

struct SolverOptions {
    double tolerance = 1e-12;            // relative residual for CG
    SolverKind kind = SolverKind::Automatic;
    std::size_t dense_threshold = 200;   // vertex count
    std::size_t max_iterations = 0;      // 0 means 20 * dimension
};

/// Solver for a symmetric positive definite system, used for the reduced
/// Laplacian Θ' (base-point row and column removed). Dense problems are
/// factored once; large ones run Jacobi-preconditioned CG per right-hand side.
///
/// If `grounding` is given, the matrix must be a grounded Laplacian
/// (off-diagonals <= 0) whose row sums are exactly `grounding`. The dense
/// path then eliminates without subtraction: pivots are sums of positive
/// edge weights, so a small conductance next to a huge one keeps its relative
/// accuracy. Plain Cholesky forms the pivot c_small + c_big and loses it.
class SpdSolver {
public:
    SpdSolver() = default;
    SpdSolver(const SparseMatrix& matrix, const SolverOptions& options, const Vector* grounding = nullptr);

    std::size_t dimension() const noexcept { return static_cast<std::size_t>(matrix_.rows()); }
    bool is_dense() const noexcept { return dense_; }
    const SparseMatrix& matrix() const noexcept { return matrix_; }

    /// Throws NumericalError when CG exceeds its iteration cap.
    Vector solve(const Vector& rhs) const;
    Matrix solve(const Matrix& rhs) const;

    /// Upper triangular F with Fᵀ F = matrix. Maps coordinates to an
    /// orthonormal frame of the inner product uᵀ matrix v.
    Matrix factor() const;

private:
    SparseMatrix matrix_;
    SolverOptions options_;
    bool dense_ = true;
    bool laplacian_ = false;
    Eigen::LLT<Matrix> llt_;
    Matrix unit_lower_;  // Θ' = L D Lᵀ from subtraction-free elimination
    Vector pivots_;
};

/// Symmetric square root and inverse square root of an SPD matrix, from its
/// eigendecomposition.
Matrix spd_sqrt(const Matrix& a);
Matrix spd_inv_sqrt(const Matrix& a);

/// Largest singular value.
double spectral_norm(const Matrix& a);

struct LanczosOptions {
    std::size_t num_pairs = 16;
    std::size_t max_steps = 0;      // 0 means the full dimension
    double tolerance = 1e-8;        // residual relative to max(1, |theta|)
    std::uint64_t seed = 1;
    bool smallest = true;           // otherwise largest
};

struct LanczosResult {
    Vector values;                  // ascending
    Matrix vectors;                 // columns orthonormal in the supplied inner product
    Vector residuals;               // ||A v - theta v|| in the supplied norm
    std::size_t steps = 0;
};

using LinearOperator = std::function<Vector(const Vector&)>;
using InnerProduct = std::function<double(const Vector&, const Vector&)>;

/// Lanczos iteration with full reorthogonalization (two Gram-Schmidt passes
/// per step) for an operator that is selfadjoint in `inner`. Ritz pairs are
/// accepted on their true residual. Throws NumericalError if fewer than
/// `num_pairs` converge within the step budget.
LanczosResult lanczos(const LinearOperator& apply, const InnerProduct& inner, std::size_t dimension,
                      const LanczosOptions& options);

}  // namespace enet
