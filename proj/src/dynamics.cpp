#include "nhse/dynamics.hpp"

#include "nhse/errors.hpp"
#include "nhse/linalg.hpp"

#include <algorithm>
#include <cmath>

namespace nhse::dynamics {

namespace {

void require_decay_only(const model::ChainSpec& spec) {
    if (spec.gamma_tilde_mat.cwiseAbs().maxCoeff() > 0.0)
        throw RegimeError("two-point propagation is implemented for the "
                          "decay-only regime (gamma_tilde_mat must be zero)");
}

ComplexMatrix propagate(const ComplexMatrix& p, const ComplexMatrix& c) {
    ComplexMatrix next = p * c * p.adjoint();
    return 0.5 * (next + next.adjoint());  // keep roundoff Hermitian
}

// Exact propagator P(t) = expm(-conj(H) t). The eigendecomposition of
// conj(H) is reused across samples when the eigenvector basis is sound;
// defective generators (the unidirectional limit) take the per-sample
// exponential path instead.
class Propagator {
public:
    explicit Propagator(const model::ChainSpec& spec)
        : hm_conj_(model::build_hm(spec).conjugate()) {
        auto decomposition = linalg::eig(hm_conj_);
        if (decomposition.vector_condition < 1e6) {
            eigenvalues_ = decomposition.eigenvalues;
            vectors_ = decomposition.right_vectors;
            vectors_inv_ = vectors_.partialPivLu().inverse();
            use_eig_ = vectors_inv_.allFinite();
        }
    }

    ComplexMatrix at(double t) const {
        if (use_eig_) {
            ComplexVector phases(eigenvalues_.size());
            for (Eigen::Index j = 0; j < eigenvalues_.size(); ++j)
                phases(j) = std::exp(-eigenvalues_(j) * t);
            return vectors_ * phases.asDiagonal() * vectors_inv_;
        }
        return linalg::expm(-t * hm_conj_);
    }

private:
    ComplexMatrix hm_conj_;
    ComplexVector eigenvalues_;
    ComplexMatrix vectors_;
    ComplexMatrix vectors_inv_;
    bool use_eig_ = false;
};

} // namespace

CorrelationState CorrelationState::validated(double time, ComplexMatrix c_mat) {
    if (c_mat.rows() != c_mat.cols() || c_mat.rows() < 1)
        throw InvalidSpecError("c_mat must be square and nonempty");
    linalg::ensure_finite(c_mat, "c_mat");
    if (!linalg::is_hermitian(c_mat, 1e-10))
        throw InvalidSpecError("c_mat must be Hermitian");
    const double scale = std::max(1.0, c_mat.cwiseAbs().maxCoeff());
    if (linalg::min_hermitian_eigenvalue(c_mat) < -1e-10 * scale)
        throw InvalidSpecError("c_mat must be positive semidefinite");

    CorrelationState state;
    state.time = time;
    state.c_mat = 0.5 * (c_mat + c_mat.adjoint());
    return state;
}

CorrelationState CorrelationState::single_excitation(int n_sites, int site) {
    if (site < 1 || site > n_sites)
        throw InvalidSpecError("excitation site must lie in 1..n_sites");
    ComplexMatrix c = ComplexMatrix::Zero(n_sites, n_sites);
    c(site - 1, site - 1) = 1.0;
    return validated(0.0, std::move(c));
}

CorrelationState evolve(const model::ChainSpec& spec, const CorrelationState& c0,
                        double t) {
    require_decay_only(spec);
    if (c0.c_mat.rows() != spec.n_sites)
        throw InvalidSpecError("correlation matrix size does not match the chain");
    if (!(t >= 0.0) || !std::isfinite(t))
        throw InvalidSpecError("evolution time must be finite and >= 0");

    const ComplexMatrix p = linalg::expm(-t * model::build_hm(spec).conjugate());
    return CorrelationState::validated(c0.time + t, propagate(p, c0.c_mat));
}

TrajectoryRecord density_trajectory(const model::ChainSpec& spec,
                                    const CorrelationState& c0,
                                    const RealVector& times) {
    require_decay_only(spec);
    if (c0.c_mat.rows() != spec.n_sites)
        throw InvalidSpecError("correlation matrix size does not match the chain");
    if (times.size() < 1)
        throw InvalidSpecError("density_trajectory needs at least one sample time");
    for (Eigen::Index j = 0; j < times.size(); ++j) {
        if (!(times(j) >= 0.0) || !std::isfinite(times(j)))
            throw InvalidSpecError("sample times must be finite and >= 0");
        if (j > 0 && !(times(j) > times(j - 1)))
            throw InvalidSpecError("sample times must be strictly increasing");
    }

    const Propagator propagator(spec);
    const int n = spec.n_sites;

    TrajectoryRecord record;
    record.times = times;
    record.densities.resize(times.size(), n);
    record.total_number.resize(times.size());
    for (Eigen::Index j = 0; j < times.size(); ++j) {
        const ComplexMatrix p = propagator.at(times(j));
        const ComplexMatrix c = propagate(p, c0.c_mat);
        for (int a = 0; a < n; ++a) {
            const double density = c(a, a).real();
            if (density < -1e-12)
                throw NumericalError("negative site density along trajectory");
            record.densities(j, a) = density;
        }
        record.total_number(j) = record.densities.row(j).sum();
    }
    return record;
}

RealVector asymmetry(const TrajectoryRecord& record, int center_site) {
    const int n = static_cast<int>(record.densities.cols());
    if (center_site < 1 || center_site > n)
        throw InvalidSpecError("center site must lie in 1..n_sites");
    RealVector result(record.times.size());
    for (Eigen::Index j = 0; j < record.times.size(); ++j) {
        double right = 0.0, left = 0.0;
        for (int a = 0; a < n; ++a) {
            if (a + 1 > center_site) right += record.densities(j, a);
            if (a + 1 < center_site) left += record.densities(j, a);
        }
        result(j) = right - left;
    }
    return result;
}

Figure2Preset figure2_preset(const std::string& variant) {
    model::NNChainSpec nn;
    nn.n_sites = 9;
    nn.spin_s = 1.0;
    nn.omega = 1.0;
    nn.boundary = Boundary::Open;
    if (variant == "a") {
        nn.j_sym = 0.0; nn.d_asym = 1.0; nn.gamma = 1.0; nn.gamma0 = 2.0;
    } else if (variant == "b") {
        nn.j_sym = 1.0; nn.d_asym = 1.0; nn.gamma = 1.0; nn.gamma0 = 2.0;
    } else if (variant == "c") {
        nn.j_sym = 1.0; nn.d_asym = 0.0; nn.gamma = 1.0; nn.gamma0 = 2.0;
    } else if (variant == "d") {
        nn.j_sym = 1.0; nn.d_asym = 1.0; nn.gamma = 1.0; nn.gamma0 = 20.0;
    } else {
        throw InvalidSpecError("unknown dynamics variant '" + variant +
                               "' (expected a, b, c, or d)");
    }

    Figure2Preset preset;
    preset.nn = nn;
    preset.chain = model::nn_to_general(nn);
    preset.initial = CorrelationState::single_excitation(nn.n_sites, 5);
    preset.times.resize(200);
    for (int j = 0; j < 200; ++j) preset.times(j) = 4.0 * j / 199.0;
    preset.source_site = 5;
    return preset;
}

} // namespace nhse::dynamics
