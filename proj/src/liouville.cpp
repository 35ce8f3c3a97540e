#include "nhse/liouville.hpp"

#include "nhse/errors.hpp"
#include "nhse/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace nhse::liouville {

namespace {

int total_occupation(const std::vector<int>& occ) {
    return std::accumulate(occ.begin(), occ.end(), 0);
}

// Grade first (total occupation ascending), then lexicographic.
bool basis_less(const std::vector<int>& a, const std::vector<int>& b) {
    const int ta = total_occupation(a), tb = total_occupation(b);
    if (ta != tb) return ta < tb;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

void enumerate_grade(int sites_left, int budget, std::vector<int>& prefix,
                     std::vector<std::vector<int>>& out) {
    if (sites_left == 1) {
        prefix.push_back(budget);
        out.push_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int n = 0; n <= budget; ++n) {
        prefix.push_back(n);
        enumerate_grade(sites_left - 1, budget - n, prefix, out);
        prefix.pop_back();
    }
}

void require_decay_only(const model::ChainSpec& spec) {
    if (spec.gamma_tilde_mat.cwiseAbs().maxCoeff() > 0.0)
        throw RegimeError("the truncated master equation is implemented for "
                          "the decay-only regime (gamma_tilde_mat must be zero)");
}

// Annihilation operator for one site in the truncated number basis.
ComplexMatrix annihilation(const FockSpec& fock, int site) {
    const int dim = fock.dimension();
    ComplexMatrix op = ComplexMatrix::Zero(dim, dim);
    for (int col = 0; col < dim; ++col) {
        const auto& occ = fock.basis[static_cast<size_t>(col)];
        if (occ[static_cast<size_t>(site)] == 0) continue;
        std::vector<int> lowered = occ;
        lowered[static_cast<size_t>(site)] -= 1;
        const int row = fock.index_of(lowered);
        op(row, col) = std::sqrt(static_cast<double>(occ[static_cast<size_t>(site)]));
    }
    return op;
}

// Coherent magnon Hamiltonian: on-site precession plus exchange hopping.
ComplexMatrix coherent_hamiltonian(const model::ChainSpec& spec, const FockSpec& fock,
                                   const std::vector<ComplexMatrix>& a_ops) {
    const int n = spec.n_sites;
    const int dim = fock.dimension();
    ComplexMatrix single = spec.spin_s * spec.j_mat.conjugate();
    single.diagonal() += spec.omega.cast<Complex>();

    ComplexMatrix h = ComplexMatrix::Zero(dim, dim);
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a) {
            if (single(b, a) == Complex(0, 0)) continue;
            h += single(b, a) * (a_ops[static_cast<size_t>(b)].adjoint() *
                                 a_ops[static_cast<size_t>(a)]);
        }
    return 0.5 * (h + h.adjoint());
}

ComplexMatrix liouvillian_from(const model::ChainSpec& spec, const FockSpec& fock) {
    const int n = spec.n_sites;
    const int dim = fock.dimension();
    const ComplexMatrix id = ComplexMatrix::Identity(dim, dim);

    std::vector<ComplexMatrix> a_ops;
    a_ops.reserve(static_cast<size_t>(n));
    for (int site = 0; site < n; ++site) a_ops.push_back(annihilation(fock, site));

    const ComplexMatrix h = coherent_hamiltonian(spec, fock, a_ops);
    ComplexMatrix l = Complex(0, -1) * (linalg::kron(id, h) -
                                        linalg::kron(h.transpose(), id));

    for (int alpha = 0; alpha < n; ++alpha)
        for (int beta = 0; beta < n; ++beta) {
            const Complex rate = 2.0 * spec.spin_s * spec.gamma_mat(alpha, beta);
            if (rate == Complex(0, 0)) continue;
            const ComplexMatrix& a_b = a_ops[static_cast<size_t>(beta)];
            const ComplexMatrix adag_a = a_ops[static_cast<size_t>(alpha)].adjoint();
            const ComplexMatrix number_like = adag_a * a_b;
            l += rate * (linalg::kron(adag_a.transpose(), a_b) -
                         0.5 * linalg::kron(id, number_like) -
                         0.5 * linalg::kron(number_like.transpose(), id));
        }
    return l;
}

} // namespace

FockSpec FockSpec::build(int n_sites, int cutoff) {
    if (n_sites < 1) throw InvalidSpecError("n_sites must be >= 1");
    if (cutoff < 0) throw InvalidSpecError("cutoff must be >= 0");

    FockSpec fock;
    fock.n_sites = n_sites;
    fock.cutoff = cutoff;
    std::vector<int> prefix;
    for (int grade = 0; grade <= cutoff; ++grade)
        enumerate_grade(n_sites, grade, prefix, fock.basis);
    return fock;
}

int FockSpec::index_of(const std::vector<int>& occ) const {
    if (static_cast<int>(occ.size()) != n_sites) return -1;
    const auto it = std::lower_bound(basis.begin(), basis.end(), occ, basis_less);
    if (it == basis.end() || *it != occ) return -1;
    return static_cast<int>(it - basis.begin());
}

DensityMatrix DensityMatrix::validated(const FockSpec& fock, ComplexMatrix rho) {
    const int dim = fock.dimension();
    if (rho.rows() != dim || rho.cols() != dim)
        throw InvalidSpecError("density matrix size does not match the Fock basis");
    linalg::ensure_finite(rho, "rho");
    if (!linalg::is_hermitian(rho, 1e-9))
        throw InvalidSpecError("density matrix must be Hermitian");
    if (std::abs(rho.trace() - Complex(1, 0)) > 1e-10)
        throw InvalidSpecError("density matrix trace must be 1");
    if (linalg::min_hermitian_eigenvalue(rho) < -1e-9)
        throw InvalidSpecError("density matrix must be positive semidefinite");

    DensityMatrix dm;
    dm.rho = 0.5 * (rho + rho.adjoint());
    return dm;
}

DensityMatrix DensityMatrix::vacuum(const FockSpec& fock) {
    ComplexMatrix rho = ComplexMatrix::Zero(fock.dimension(), fock.dimension());
    rho(0, 0) = 1.0;  // the vacuum is the first basis state by construction
    return validated(fock, std::move(rho));
}

DensityMatrix DensityMatrix::single_excitation(const FockSpec& fock, int site) {
    if (site < 1 || site > fock.n_sites)
        throw InvalidSpecError("excitation site must lie in 1..n_sites");
    std::vector<int> occ(static_cast<size_t>(fock.n_sites), 0);
    occ[static_cast<size_t>(site - 1)] = 1;
    const int idx = fock.index_of(occ);
    if (idx < 0)
        throw InvalidSpecError("cutoff too small for a single excitation");
    ComplexMatrix rho = ComplexMatrix::Zero(fock.dimension(), fock.dimension());
    rho(idx, idx) = 1.0;
    return validated(fock, std::move(rho));
}

StructureMatrixX third_quantization_x(const model::ChainSpec& spec) {
    require_decay_only(spec);
    const ComplexMatrix hm = model::build_hm(spec);
    const int n = spec.n_sites;

    StructureMatrixX x;
    x.x_mat = ComplexMatrix::Zero(2 * n, 2 * n);
    x.x_mat.topLeftCorner(n, n) = 0.5 * hm;
    x.x_mat.bottomRightCorner(n, n) = 0.5 * hm.conjugate();
    x.trace_offset = spec.spin_s * spec.gamma_mat.trace().real();
    return x;
}

ComplexVector rapidity_spectrum(const model::ChainSpec& spec) {
    const auto decomposition = linalg::eig(model::build_hm(spec));
    ComplexVector values = decomposition.eigenvalues;
    std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    });
    return values;
}

ComplexMatrix truncated_liouvillian(const model::ChainSpec& spec, const FockSpec& fock) {
    require_decay_only(spec);
    if (fock.n_sites != spec.n_sites)
        throw InvalidSpecError("Fock basis site count does not match the chain");
    const long dim = fock.dimension();
    const long entries = dim * dim * dim * dim;
    if (entries > 4'000'000)
        throw SizeError("superoperator would hold " + std::to_string(entries) +
                        " entries (budget 4e6); lower the cutoff or site count");
    return liouvillian_from(spec, fock);
}

CombinationReport combination_rule_check(const model::ChainSpec& spec,
                                         const FockSpec& fock, double tolerance) {
    const ComplexMatrix l = truncated_liouvillian(spec, fock);
    const ComplexVector rapidities = rapidity_spectrum(spec);

    // Candidate eigenvalues: -sum_j (n_j lambda_j + m_j conj(lambda_j)) over
    // all occupation pairs within the cutoff. Enumerating both halves with
    // the Fock basis itself bounds the combined order by twice the cutoff.
    std::vector<Complex> combos;
    combos.reserve(fock.basis.size() * fock.basis.size());
    for (const auto& left : fock.basis) {
        Complex left_sum(0, 0);
        for (int j = 0; j < fock.n_sites; ++j)
            left_sum += static_cast<double>(left[static_cast<size_t>(j)]) * rapidities(j);
        for (const auto& right : fock.basis) {
            Complex right_sum(0, 0);
            for (int j = 0; j < fock.n_sites; ++j)
                right_sum += static_cast<double>(right[static_cast<size_t>(j)]) *
                             std::conj(rapidities(j));
            combos.push_back(-(left_sum + right_sum));
        }
    }

    const auto decomposition = linalg::eig(l);

    CombinationReport report;
    report.tolerance = tolerance;
    report.liouvillian_eigenvalues = decomposition.eigenvalues;
    report.matched_combinations.resize(decomposition.eigenvalues.size());
    report.distances.resize(decomposition.eigenvalues.size());
    for (Eigen::Index i = 0; i < decomposition.eigenvalues.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        Complex match(0, 0);
        for (const Complex combo : combos) {
            const double dist = std::abs(decomposition.eigenvalues(i) - combo);
            if (dist < best) {
                best = dist;
                match = combo;
            }
        }
        report.matched_combinations(i) = match;
        report.distances(i) = best;
        report.max_distance = std::max(report.max_distance, best);
        if (best > tolerance) ++report.n_orphans;
    }
    return report;
}

std::pair<dynamics::TrajectoryRecord, DensityMatrix>
evolve_exact(const model::ChainSpec& spec, const FockSpec& fock,
             const DensityMatrix& rho0, const RealVector& times) {
    require_decay_only(spec);
    if (times.size() < 1)
        throw InvalidSpecError("evolve_exact needs at least one sample time");
    for (Eigen::Index j = 0; j < times.size(); ++j) {
        if (!(times(j) >= 0.0) || !std::isfinite(times(j)))
            throw InvalidSpecError("sample times must be finite and >= 0");
        if (j > 0 && !(times(j) > times(j - 1)))
            throw InvalidSpecError("sample times must be strictly increasing");
    }

    // Structural no-leakage certificate: rebuilt one grade higher, the
    // generator must not feed any above-cutoff component from within the
    // cutoff. The decay-only argument is thereby checked, not assumed.
    {
        const FockSpec fock_up = FockSpec::build(fock.n_sites, fock.cutoff + 1);
        const long dim_up = fock_up.dimension();
        if (dim_up * dim_up * dim_up * dim_up <= 4'000'000) {
            const ComplexMatrix l_up = liouvillian_from(spec, fock_up);
            double worst = 0.0;
            for (long col_ket = 0; col_ket < dim_up; ++col_ket) {
                const bool ket_in = total_occupation(fock_up.basis[static_cast<size_t>(
                                        col_ket)]) <= fock.cutoff;
                for (long col_bra = 0; col_bra < dim_up; ++col_bra) {
                    if (!ket_in || total_occupation(fock_up.basis[static_cast<size_t>(
                                       col_bra)]) > fock.cutoff)
                        continue;
                    const long col = col_ket + dim_up * col_bra;
                    for (long row_ket = 0; row_ket < dim_up; ++row_ket) {
                        const bool row_ket_out =
                            total_occupation(fock_up.basis[static_cast<size_t>(
                                row_ket)]) > fock.cutoff;
                        for (long row_bra = 0; row_bra < dim_up; ++row_bra) {
                            const bool row_bra_out =
                                total_occupation(fock_up.basis[static_cast<size_t>(
                                    row_bra)]) > fock.cutoff;
                            if (!row_ket_out && !row_bra_out) continue;
                            worst = std::max(
                                worst, std::abs(l_up(row_ket + dim_up * row_bra, col)));
                        }
                    }
                }
            }
            if (worst >= 1e-12)
                throw NumericalError("truncation leaks above the cutoff "
                                     "(largest feeding element " +
                                     std::to_string(worst) + ")");
        }
    }

    const ComplexMatrix l = truncated_liouvillian(spec, fock);
    const int dim = fock.dimension();
    const int n = spec.n_sites;

    std::vector<ComplexMatrix> number_ops;
    number_ops.reserve(static_cast<size_t>(n));
    for (int site = 0; site < n; ++site) {
        const ComplexMatrix a = annihilation(fock, site);
        number_ops.push_back(a.adjoint() * a);
    }

    ComplexVector vec_rho0(dim * dim);
    for (int col = 0; col < dim; ++col)
        vec_rho0.segment(col * dim, dim) = rho0.rho.col(col);

    dynamics::TrajectoryRecord record;
    record.times = times;
    record.densities.resize(times.size(), n);
    record.total_number.resize(times.size());

    DensityMatrix last = rho0;
    for (Eigen::Index j = 0; j < times.size(); ++j) {
        const ComplexVector vec_t = linalg::expm(times(j) * l) * vec_rho0;
        ComplexMatrix rho_t(dim, dim);
        for (int col = 0; col < dim; ++col)
            rho_t.col(col) = vec_t.segment(col * dim, dim);
        last = DensityMatrix::validated(fock, rho_t);

        for (int site = 0; site < n; ++site)
            record.densities(j, site) =
                (last.rho * number_ops[static_cast<size_t>(site)]).trace().real();
        record.total_number(j) = record.densities.row(j).sum();
    }
    return {std::move(record), std::move(last)};
}

} // namespace nhse::liouville
