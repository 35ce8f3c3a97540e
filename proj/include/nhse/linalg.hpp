#pragma once

#include "nhse/types.hpp"

namespace nhse::linalg {

/// Full eigendecomposition of a dense complex matrix. Columns of
/// right_vectors are unit 2-norm eigenvectors; left_vectors is filled only
/// on request and pairs column j with eigenvalue j.
struct EigenDecomposition {
    ComplexVector eigenvalues;
    ComplexMatrix right_vectors;
    ComplexMatrix left_vectors;     // empty unless requested
    double max_residual = 0.0;      // max_j ||A v_j - lambda_j v_j||_2
    double vector_condition = 0.0;  // condition estimate of right_vectors
    bool ill_conditioned = false;   // eigenvector basis close to singular
};

/// Eigendecomposition of a general complex square matrix, N <= 2048.
/// Throws NumericalError if the residual ||A v - lambda v|| exceeds
/// tol * ||A||_F for any eigenpair. Defective inputs still return
/// (with ill_conditioned set); only residual failures throw.
EigenDecomposition eig(const ComplexMatrix& a, bool compute_left = false,
                       double tol = 1e-10);

/// Matrix exponential e^A by Pade-13 scaling and squaring.
ComplexMatrix expm(const ComplexMatrix& a);

/// Solve a x = b (b may have several columns) by LU with partial pivoting.
/// Throws SingularityError when the factorization is singular to tolerance.
ComplexMatrix solve(const ComplexMatrix& a, const ComplexMatrix& b,
                    double tol = 1e-10);
RealMatrix solve(const RealMatrix& a, const RealMatrix& b, double tol = 1e-10);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// Shared validation helpers.
void ensure_finite(const ComplexMatrix& a, const std::string& name);
bool is_hermitian(const ComplexMatrix& a, double tol = 1e-12);

/// Smallest eigenvalue of a Hermitian matrix (input is symmetrized first).
double min_hermitian_eigenvalue(const ComplexMatrix& a);

} // namespace nhse::linalg
