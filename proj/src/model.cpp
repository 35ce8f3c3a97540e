#include "nhse/model.hpp"

#include "nhse/errors.hpp"
#include "nhse/linalg.hpp"

#include <cmath>
#include <sstream>

namespace nhse::model {

namespace {

// PSD acceptance: eigenvalues down to -1e-12 times the largest diagonal
// rate are treated as roundoff.
void check_psd(const ComplexMatrix& mat, const std::string& name) {
    double max_diag = 0.0;
    for (Eigen::Index i = 0; i < mat.rows(); ++i)
        max_diag = std::max(max_diag, mat(i, i).real());
    const double threshold = -1e-12 * std::max(max_diag, 0.0);
    const double min_eig = linalg::min_hermitian_eigenvalue(mat);
    if (min_eig < threshold) {
        std::ostringstream msg;
        msg << name << " is not positive semidefinite: eigenvalue " << min_eig
            << " below threshold " << threshold;
        throw InvalidSpecError(msg.str());
    }
}

void check_coupling_matrix(const ComplexMatrix& mat, int n, const std::string& name,
                           bool require_zero_diagonal, bool require_psd) {
    if (mat.rows() != n || mat.cols() != n)
        throw InvalidSpecError(name + " must be " + std::to_string(n) + "x" +
                               std::to_string(n));
    linalg::ensure_finite(mat, name);
    if (!linalg::is_hermitian(mat))
        throw InvalidSpecError(name + " must be Hermitian");
    if (require_zero_diagonal) {
        const double scale = std::max(1.0, mat.cwiseAbs().maxCoeff());
        if (mat.diagonal().cwiseAbs().maxCoeff() > 1e-12 * scale)
            throw InvalidSpecError(name + " must have zero diagonal");
    }
    if (require_psd) check_psd(mat, name);
}

} // namespace

ChainSpec ChainSpec::validated(int n_sites, double spin_s, RealVector omega,
                               ComplexMatrix j_mat, ComplexMatrix gamma_mat,
                               ComplexMatrix gamma_tilde_mat, Boundary boundary) {
    if (n_sites < 1) throw InvalidSpecError("n_sites must be >= 1");
    if (!(spin_s > 0.0)) throw InvalidSpecError("spin_s must be > 0");
    if (omega.size() != n_sites)
        throw InvalidSpecError("omega must have one entry per site");
    for (Eigen::Index i = 0; i < omega.size(); ++i)
        if (!(omega(i) > 0.0) || !std::isfinite(omega(i)))
            throw InvalidSpecError("omega entries must be finite and > 0");
    if (boundary == Boundary::Periodic && n_sites < 3)
        throw InvalidSpecError("periodic chains need n_sites >= 3 "
                               "(the wrap bond must be distinct)");

    check_coupling_matrix(j_mat, n_sites, "j_mat", true, false);
    check_coupling_matrix(gamma_mat, n_sites, "gamma_mat", false, true);
    check_coupling_matrix(gamma_tilde_mat, n_sites, "gamma_tilde_mat", false, true);

    ChainSpec spec;
    spec.n_sites = n_sites;
    spec.spin_s = spin_s;
    spec.omega = std::move(omega);
    spec.j_mat = std::move(j_mat);
    spec.gamma_mat = std::move(gamma_mat);
    spec.gamma_tilde_mat = std::move(gamma_tilde_mat);
    spec.boundary = boundary;
    return spec;
}

ChainSpec nn_to_general(const NNChainSpec& spec) {
    const int n = spec.n_sites;
    if (n < 1) throw InvalidSpecError("n_sites must be >= 1");
    if (!(spec.omega > 0.0)) throw InvalidSpecError("omega must be > 0");
    if (spec.gamma0 < 0.0) throw InvalidSpecError("gamma0 must be >= 0");

    ComplexMatrix j = ComplexMatrix::Zero(n, n);
    ComplexMatrix gamma = ComplexMatrix::Zero(n, n);
    gamma.diagonal().setConstant(spec.gamma0);

    const Complex bond(spec.j_sym, spec.d_asym);
    const int n_bonds = (spec.boundary == Boundary::Periodic) ? n : n - 1;
    for (int a = 0; a < n_bonds; ++a) {
        const int b = (a + 1) % n;
        j(a, b) = bond;
        j(b, a) = std::conj(bond);
        gamma(a, b) = spec.gamma;
        gamma(b, a) = spec.gamma;
    }

    return ChainSpec::validated(n, spec.spin_s,
                                RealVector::Constant(n, spec.omega), std::move(j),
                                std::move(gamma), ComplexMatrix::Zero(n, n),
                                spec.boundary);
}

ComplexMatrix build_knh(const ChainSpec& spec) {
    return Complex(0, 1) * spec.j_mat.conjugate() + spec.gamma_mat +
           spec.gamma_tilde_mat.conjugate();
}

ComplexMatrix build_kl(const ChainSpec& spec) {
    return Complex(0, -1) * spec.j_mat + spec.gamma_mat.conjugate() -
           spec.gamma_tilde_mat;
}

ComplexMatrix build_hm(const ChainSpec& spec) {
    if (spec.gamma_tilde_mat.cwiseAbs().maxCoeff() > 0.0)
        throw RegimeError("the quadratic generator is implemented for the "
                          "decay-only regime (gamma_tilde_mat must be zero)");
    ComplexMatrix hm = Complex(0, 1) * spec.j_mat.conjugate() + spec.gamma_mat;
    hm *= spec.spin_s;
    hm.diagonal() += Complex(0, 1) * spec.omega.cast<Complex>();
    return hm;
}

HoppingAmplitudes hopping_amplitudes(const NNChainSpec& spec) {
    HoppingAmplitudes amps;
    amps.gamma_r = spec.spin_s * Complex(spec.j_sym, spec.d_asym - spec.gamma);
    amps.gamma_l = spec.spin_s * Complex(spec.j_sym, -(spec.d_asym + spec.gamma));
    amps.eps0 = Complex(spec.omega, -spec.spin_s * spec.gamma0);
    return amps;
}

} // namespace nhse::model
