#include "nhse/spectra.hpp"

#include "nhse/errors.hpp"
#include "nhse/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace nhse::spectra {

namespace {

Complex loop_centroid(const DispersionLoop& loop) {
    return loop.energies.mean();
}

double loop_scale(const DispersionLoop& loop) {
    const Complex c = loop_centroid(loop);
    double scale = 0.0;
    for (Eigen::Index j = 0; j < loop.energies.size(); ++j)
        scale = std::max(scale, std::abs(loop.energies(j) - c));
    return scale;
}

// Distance from point p to segment [a, b] in the complex plane.
double point_segment_distance(Complex p, Complex a, Complex b) {
    const Complex ab = b - a;
    const double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a) * std::conj(ab)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

} // namespace

DispersionLoop pbc_dispersion(const model::NNChainSpec& spec, int n_k) {
    if (n_k < 3) throw InvalidSpecError("pbc_dispersion needs n_k >= 3");
    const auto amps = model::hopping_amplitudes(spec);
    const double two_s = 2.0 * spec.spin_s;

    DispersionLoop loop;
    loop.k_values.resize(n_k);
    loop.energies.resize(n_k);
    for (int j = 0; j < n_k; ++j) {
        const double k = 2.0 * kPi * j / n_k;
        loop.k_values(j) = k;
        const double re = spec.j_sym * std::cos(k) + spec.d_asym * std::sin(k);
        const double im = -spec.gamma * std::cos(k);
        loop.energies(j) = amps.eps0 + two_s * Complex(re, im);
    }
    loop.params = spec;
    return loop;
}

std::vector<std::pair<Complex, SkinProfile>> obc_modes(const model::ChainSpec& spec) {
    if (spec.boundary != Boundary::Open)
        throw InvalidSpecError("obc_modes requires an open chain");

    // Single-particle hopping matrix of the quadratic generator.
    const ComplexMatrix h = Complex(0, -1) * model::build_hm(spec);
    auto decomposition = linalg::eig(h);

    // Small chains are returned regardless of eigenvector conditioning:
    // the unidirectional limit is maximally defective yet its profiles
    // (all weight on one edge) are the correct physics. Large strongly
    // nonreciprocal chains lose eigenvalue accuracy, so refuse those and
    // point at the closed-form route.
    if (spec.n_sites > 24 && decomposition.vector_condition > 1e12)
        throw NumericalError(
            "open-boundary eigenvectors too ill conditioned at this size; "
            "use analytic_skin_profile / obc_similarity_eigenvalues");

    std::vector<std::pair<Complex, SkinProfile>> modes;
    modes.reserve(static_cast<size_t>(spec.n_sites));
    for (int j = 0; j < spec.n_sites; ++j) {
        SkinProfile profile;
        profile.densities = decomposition.right_vectors.col(j).cwiseAbs2();
        profile.densities /= profile.densities.sum();
        profile.normalized = true;
        modes.emplace_back(decomposition.eigenvalues(j), std::move(profile));
    }
    std::sort(modes.begin(), modes.end(), [](const auto& a, const auto& b) {
        if (a.first.real() != b.first.real()) return a.first.real() < b.first.real();
        return a.first.imag() < b.first.imag();
    });
    for (int j = 0; j < spec.n_sites; ++j) modes[static_cast<size_t>(j)].second.mode_index = j + 1;
    return modes;
}

SkinProfile analytic_skin_profile(const model::NNChainSpec& spec, int mode_index,
                                  bool normalize) {
    if (spec.boundary != Boundary::Open)
        throw InvalidSpecError("analytic_skin_profile requires an open chain");
    const int n = spec.n_sites;
    if (mode_index < 1 || mode_index > n)
        throw InvalidSpecError("mode_index must lie in 1..n_sites");

    const auto amps = model::hopping_amplitudes(spec);
    if (std::abs(amps.gamma_l) == 0.0)
        throw InvalidSpecError("closed-form profile undefined at gamma_l = 0; "
                               "use obc_modes (all weight sits on one edge)");
    if (std::abs(amps.gamma_r) == 0.0)
        throw InvalidSpecError("closed-form profile vanishes identically at "
                               "gamma_r = 0; use obc_modes");

    // Evaluate r^alpha sin^2 with the exponential factored against its peak
    // so extreme nonreciprocity cannot overflow.
    const double log_r = std::log(std::abs(amps.gamma_r / amps.gamma_l));
    const double peak = std::max(log_r, n * log_r);

    SkinProfile profile;
    profile.mode_index = mode_index;
    profile.densities.resize(n);
    for (int alpha = 1; alpha <= n; ++alpha) {
        const double s = std::sin(mode_index * alpha * kPi / (n + 1));
        profile.densities(alpha - 1) = s * s * std::exp(alpha * log_r - peak);
    }
    if (normalize) {
        profile.densities /= profile.densities.sum();
        profile.normalized = true;
    } else {
        // Undo the overflow guard to report the bare formula values.
        profile.densities *= std::exp(peak);
        profile.normalized = false;
    }
    return profile;
}

ComplexVector obc_similarity_eigenvalues(const model::NNChainSpec& spec) {
    if (spec.boundary != Boundary::Open)
        throw InvalidSpecError("obc_similarity_eigenvalues requires an open chain");
    const auto amps = model::hopping_amplitudes(spec);
    const Complex root = std::sqrt(amps.gamma_r * amps.gamma_l);
    const int n = spec.n_sites;
    ComplexVector values(n);
    for (int mode = 1; mode <= n; ++mode)
        values(mode - 1) = amps.eps0 + 2.0 * root * std::cos(mode * kPi / (n + 1));
    return values;
}

WindingResult winding_number(const DispersionLoop& loop, Complex e_ref) {
    const Eigen::Index n = loop.energies.size();
    if (n < 3) throw InvalidSpecError("winding_number needs at least 3 loop points");

    const double scale = std::max(loop_scale(loop), 1e-300);
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex a = loop.energies(j);
        const Complex b = loop.energies((j + 1) % n);
        if (point_segment_distance(e_ref, a, b) <= 1e-9 * scale)
            throw InvalidSpecError("reference energy lies on the dispersion loop");
    }

    double accumulated = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex a = loop.energies(j) - e_ref;
        const Complex b = loop.energies((j + 1) % n) - e_ref;
        accumulated += std::arg(b / a);
    }
    const double turns = accumulated / (2.0 * kPi);
    const double rounded = std::round(turns);
    if (std::abs(turns - rounded) > 0.01) {
        std::ostringstream msg;
        msg << "winding phase sum " << turns << " is not close to an integer";
        throw NumericalError(msg.str());
    }

    WindingResult result;
    result.reference_energy = e_ref;
    result.winding = static_cast<int>(rounded);
    result.loop = loop;
    return result;
}

double loop_signed_area(const DispersionLoop& loop) {
    const Eigen::Index n = loop.energies.size();
    const Complex c = loop_centroid(loop);
    double area2 = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex a = loop.energies(j) - c;
        const Complex b = loop.energies((j + 1) % n) - c;
        area2 += a.real() * b.imag() - b.real() * a.imag();
    }
    return 0.5 * area2;
}

Complex point_gap_reference(const DispersionLoop& loop) {
    if (loop.energies.size() < 3)
        throw InvalidSpecError("point_gap_reference needs at least 3 loop points");
    const double scale = loop_scale(loop);
    const double area = std::abs(loop_signed_area(loop));
    if (area <= 1e-9 * scale * scale)
        throw InvalidSpecError("dispersion loop is degenerate (no enclosed area, "
                               "hence no point gap)");
    return loop_centroid(loop);
}

} // namespace nhse::spectra
