#include "nhse/linalg.hpp"

#include "nhse/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace nhse::linalg {

namespace {

constexpr int kMaxEigDim = 2048;

double one_norm(const ComplexMatrix& a) {
    if (a.size() == 0) return 0.0;
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

// Greedy pairing of left eigenvalues (of A^dag) with conj of the right ones.
ComplexMatrix match_left_vectors(const ComplexVector& right_values,
                                 const Eigen::ComplexEigenSolver<ComplexMatrix>& adj) {
    const Eigen::Index n = right_values.size();
    ComplexMatrix left(n, n);
    std::vector<bool> used(static_cast<size_t>(n), false);
    for (Eigen::Index i = 0; i < n; ++i) {
        const Complex target = std::conj(right_values(i));
        Eigen::Index best = -1;
        double best_dist = std::numeric_limits<double>::infinity();
        for (Eigen::Index j = 0; j < n; ++j) {
            if (used[static_cast<size_t>(j)]) continue;
            const double dist = std::abs(adj.eigenvalues()(j) - target);
            if (dist < best_dist) {
                best_dist = dist;
                best = j;
            }
        }
        used[static_cast<size_t>(best)] = true;
        left.col(i) = adj.eigenvectors().col(best);
    }
    return left;
}

} // namespace

void ensure_finite(const ComplexMatrix& a, const std::string& name) {
    if (!a.allFinite())
        throw InvalidSpecError(name + " contains a non-finite entry");
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol * scale;
}

double min_hermitian_eigenvalue(const ComplexMatrix& a) {
    ComplexMatrix sym = 0.5 * (a + a.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(sym, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw NumericalError("Hermitian eigensolver did not converge");
    return solver.eigenvalues().minCoeff();
}

EigenDecomposition eig(const ComplexMatrix& a, bool compute_left, double tol) {
    if (a.rows() != a.cols())
        throw InvalidSpecError("eig requires a square matrix");
    if (a.rows() == 0)
        throw InvalidSpecError("eig requires a nonempty matrix");
    if (a.rows() > kMaxEigDim)
        throw SizeError("eig dimension " + std::to_string(a.rows()) +
                        " exceeds the cap of " + std::to_string(kMaxEigDim));
    ensure_finite(a, "eig input");

    Eigen::ComplexEigenSolver<ComplexMatrix> solver(a, true);
    if (solver.info() != Eigen::Success)
        throw NumericalError("complex eigensolver did not converge");

    EigenDecomposition result;
    result.eigenvalues = solver.eigenvalues();
    result.right_vectors = solver.eigenvectors();

    const double norm_a = a.norm();
    result.max_residual =
        (a * result.right_vectors -
         result.right_vectors * result.eigenvalues.asDiagonal())
            .colwise()
            .norm()
            .maxCoeff();
    if (result.max_residual > tol * std::max(norm_a, 1e-300))
        throw NumericalError("eigenpair residual " + std::to_string(result.max_residual) +
                             " exceeds tolerance");

    // Condition estimate of the eigenvector basis; a defective input shows
    // up here rather than in the residual.
    Eigen::PartialPivLU<ComplexMatrix> lu(result.right_vectors);
    const ComplexMatrix inv = lu.inverse();
    double cond = std::numeric_limits<double>::infinity();
    if (inv.allFinite()) cond = result.right_vectors.norm() * inv.norm();
    result.vector_condition = cond;
    result.ill_conditioned = !(cond < 1e8);

    if (compute_left) {
        Eigen::ComplexEigenSolver<ComplexMatrix> adj(a.adjoint(), true);
        if (adj.info() != Eigen::Success)
            throw NumericalError("complex eigensolver did not converge (adjoint)");
        result.left_vectors = match_left_vectors(result.eigenvalues, adj);
    }
    return result;
}

ComplexMatrix expm(const ComplexMatrix& a) {
    if (a.rows() != a.cols())
        throw InvalidSpecError("expm requires a square matrix");
    ensure_finite(a, "expm input");

    const Eigen::Index n = a.rows();
    const ComplexMatrix id = ComplexMatrix::Identity(n, n);

    // Degree-13 diagonal Pade approximant with 2^s scaling.
    static const double b[] = {
        64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
        1187353796428800.0,  129060195264000.0,   10559470521600.0,
        670442572800.0,      33522128640.0,       1323241920.0,
        40840800.0,          960960.0,            16380.0,
        182.0,               1.0};
    constexpr double theta13 = 5.371920351148152;

    const double norm = one_norm(a);
    int squarings = 0;
    if (norm > theta13) {
        squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
        if (squarings > 1023)
            throw NumericalError("expm input norm too large to scale");
    }
    const ComplexMatrix as = a / std::ldexp(1.0, squarings);

    const ComplexMatrix a2 = as * as;
    const ComplexMatrix a4 = a2 * a2;
    const ComplexMatrix a6 = a2 * a4;
    const ComplexMatrix u =
        as * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
              b[5] * a4 + b[3] * a2 + b[1] * id);
    const ComplexMatrix v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) +
                            b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;

    ComplexMatrix r = (v - u).partialPivLu().solve(v + u);
    for (int i = 0; i < squarings; ++i) r = r * r;
    if (!r.allFinite())
        throw NumericalError("expm produced a non-finite result");
    return r;
}

namespace {

template <typename Matrix>
Matrix solve_impl(const Matrix& a, const Matrix& b, double tol) {
    if (a.rows() != a.cols())
        throw InvalidSpecError("solve requires a square matrix");
    if (a.rows() != b.rows())
        throw InvalidSpecError("solve dimension mismatch between matrix and rhs");

    Eigen::PartialPivLU<Matrix> lu(a);
    const auto diag = lu.matrixLU().diagonal();
    const double max_pivot = diag.cwiseAbs().maxCoeff();
    const double min_pivot = diag.cwiseAbs().minCoeff();
    if (max_pivot == 0.0 || min_pivot <= 1e-14 * max_pivot)
        throw SingularityError("matrix singular to tolerance (smallest pivot " +
                               std::to_string(min_pivot) + ")");

    Matrix x = lu.solve(b);
    const double scale = a.norm() * x.norm() + b.norm();
    const double residual = (a * x - b).norm();
    if (residual > tol * std::max(scale, 1e-300))
        throw NumericalError("linear solve residual " + std::to_string(residual) +
                             " exceeds tolerance");
    return x;
}

} // namespace

ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    ensure_finite(a, "solve input");
    ensure_finite(b, "solve rhs");
    return solve_impl(a, b, tol);
}

RealMatrix solve(const RealMatrix& a, const RealMatrix& b, double tol) {
    if (!a.allFinite() || !b.allFinite())
        throw InvalidSpecError("solve input contains a non-finite entry");
    return solve_impl(a, b, tol);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

} // namespace nhse::linalg
