#pragma once

#include "nhse/dynamics.hpp"
#include "nhse/model.hpp"
#include "nhse/types.hpp"

#include <utility>
#include <vector>

namespace nhse::liouville {

/// Bosonic Fock space truncated at total occupation <= cutoff, enumerated
/// grade by grade (total occupation ascending) and lexicographically within
/// a grade. The enumeration order is part of the contract.
struct FockSpec {
    int n_sites = 0;
    int cutoff = 0;
    std::vector<std::vector<int>> basis;  // occupation tuples, basis[i][site]

    static FockSpec build(int n_sites, int cutoff);
    int dimension() const { return static_cast<int>(basis.size()); }
    /// Index of an occupation tuple, -1 when outside the cutoff.
    int index_of(const std::vector<int>& occ) const;
};

/// Density matrix in a truncated Fock basis: Hermitian, unit trace, PSD
/// within validation tolerance.
struct DensityMatrix {
    ComplexMatrix rho;

    static DensityMatrix validated(const FockSpec& fock, ComplexMatrix rho);
    static DensityMatrix vacuum(const FockSpec& fock);
    /// One magnon on the given 1-based site.
    static DensityMatrix single_excitation(const FockSpec& fock, int site);
};

/// Structure matrix of the quadratic Lindblad generator in normal-mode form,
/// X = 1/2 diag(H, conj(H)) with H the single-particle generator, plus the
/// scalar trace offset s Tr(gamma_mat).
struct StructureMatrixX {
    ComplexMatrix x_mat;  // 2N x 2N block diagonal
    double trace_offset = 0.0;
};

/// Report of matching every superoperator eigenvalue against the closed-form
/// combinations -sum_j (n_j lambda_j + m_j conj(lambda_j)) built from the
/// rapidities lambda_j, with sum(n) and sum(m) each bounded by the cutoff.
struct CombinationReport {
    ComplexVector liouvillian_eigenvalues;
    ComplexVector matched_combinations;
    RealVector distances;
    double max_distance = 0.0;
    int n_orphans = 0;  // eigenvalues farther than the tolerance from any combination
    double tolerance = 0.0;
};

StructureMatrixX third_quantization_x(const model::ChainSpec& spec);

/// Rapidities: eigenvalues of the single-particle generator sorted by real
/// part (ties broken by imaginary part). All real parts are >= 0 for a PSD
/// decay matrix. Requires zero pump.
ComplexVector rapidity_spectrum(const model::ChainSpec& spec);

/// Dense column-stacked superoperator of the number-truncated master
/// equation: coherent hopping plus decay jumps 2 s gamma_ab
/// (a_b rho a^dag_a - 1/2 {a^dag_a a_b, rho}). Requires zero pump; the
/// stored matrix is capped at 4e6 entries.
ComplexMatrix truncated_liouvillian(const model::ChainSpec& spec, const FockSpec& fock);

/// Eigenvalues of the truncated superoperator checked against the rapidity
/// combination rule.
CombinationReport combination_rule_check(const model::ChainSpec& spec,
                                         const FockSpec& fock,
                                         double tolerance = 1e-8);

/// Exact propagation of the truncated master equation, sampling the
/// two-point function at the given times (measured from 0). Verifies a
/// structural no-leakage certificate at cutoff+1 before evolving and
/// validates trace and positivity of every sample. Returns the density
/// trajectory and the final density matrix.
std::pair<dynamics::TrajectoryRecord, DensityMatrix>
evolve_exact(const model::ChainSpec& spec, const FockSpec& fock,
             const DensityMatrix& rho0, const RealVector& times);

} // namespace nhse::liouville
