#include "nhse/verify.hpp"

#include "nhse/dynamics.hpp"
#include "nhse/errors.hpp"
#include "nhse/linalg.hpp"
#include "nhse/liouville.hpp"
#include "nhse/llg.hpp"
#include "nhse/model.hpp"
#include "nhse/runner.hpp"
#include "nhse/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

namespace nhse::verify {

namespace {

std::string num(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.3g", v);
    return buffer;
}

model::NNChainSpec nn_chain(int n, double j, double d, double gamma, double gamma0,
                            Boundary boundary) {
    model::NNChainSpec spec;
    spec.n_sites = n;
    spec.spin_s = 1.0;
    spec.omega = 1.0;
    spec.j_sym = j;
    spec.d_asym = d;
    spec.gamma = gamma;
    spec.gamma0 = gamma0;
    spec.boundary = boundary;
    return spec;
}

llg::MultilayerSpec llg_stack(int n, double j, double d, double alpha_l,
                              double alpha_nl, double h, Boundary boundary) {
    llg::MultilayerSpec spec;
    spec.n_layers = n;
    spec.j_ex = j;
    spec.d_dmi = d;
    spec.alpha_l = alpha_l;
    spec.alpha_nl = alpha_nl;
    spec.h_field = h;
    spec.boundary = boundary;
    return llg::MultilayerSpec::validated(spec);
}

RealVector linspace(double lo, double hi, int n) {
    RealVector v(n);
    for (int j = 0; j < n; ++j)
        v(j) = n == 1 ? lo : lo + (hi - lo) * j / (n - 1);
    return v;
}

// Ratio of minor to major principal extent of the sampled loop.
double minor_major_ratio(const spectra::DispersionLoop& loop) {
    const Complex c = loop.energies.mean();
    Eigen::Matrix2d cov = Eigen::Matrix2d::Zero();
    for (Eigen::Index j = 0; j < loop.energies.size(); ++j) {
        const Complex d = loop.energies(j) - c;
        const Eigen::Vector2d p(d.real(), d.imag());
        cov += p * p.transpose();
    }
    cov /= static_cast<double>(loop.energies.size());
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(cov);
    const double lo = std::max(es.eigenvalues()(0), 0.0);
    const double hi = std::max(es.eigenvalues()(1), 1e-300);
    return std::sqrt(lo / hi);
}

// ---- 1: closed-form boundary-mode profiles ---------------------------------

CheckResult check_skin_profile() {
    CheckResult result{1, "skin-profile-formula", false, ""};
    double worst = 0.0;
    for (int n_sites : {5, 9, 15}) {
        const auto nn = nn_chain(n_sites, 1.0, 1.0, 1.0, 2.0, Boundary::Open);
        const auto modes = spectra::obc_modes(model::nn_to_general(nn));
        const ComplexVector closed = spectra::obc_similarity_eigenvalues(nn);
        for (int mode : {1, 2, n_sites}) {
            const Complex target = closed(mode - 1);
            size_t best = 0;
            double best_dist = std::numeric_limits<double>::infinity();
            for (size_t j = 0; j < modes.size(); ++j) {
                const double dist = std::abs(modes[j].first - target);
                if (dist < best_dist) {
                    best_dist = dist;
                    best = j;
                }
            }
            const auto analytic = spectra::analytic_skin_profile(nn, mode);
            const double diff = (modes[best].second.densities - analytic.densities)
                                    .cwiseAbs()
                                    .maxCoeff();
            worst = std::max(worst, diff);
        }
    }
    result.passed = worst <= 1e-8;
    result.detail = "max per-site density deviation " + num(worst) + " (bound 1e-08)";
    return result;
}

// ---- 2: Bloch formula vs circulant eigenvalues ------------------------------

CheckResult check_pbc_dispersion() {
    CheckResult result{2, "pbc-dispersion-sets", false, ""};
    double worst = 0.0;
    for (int n : {8, 64}) {
        const auto nn = nn_chain(n, 1.0, 1.0, 1.0, 2.0, Boundary::Periodic);
        const auto loop = spectra::pbc_dispersion(nn, n);
        const ComplexMatrix h =
            Complex(0, -1) * model::build_hm(model::nn_to_general(nn));
        const auto decomposition = linalg::eig(h);

        std::vector<bool> used(static_cast<size_t>(n), false);
        for (int j = 0; j < n; ++j) {
            double best = std::numeric_limits<double>::infinity();
            int best_idx = -1;
            for (int i = 0; i < n; ++i) {
                if (used[static_cast<size_t>(i)]) continue;
                const double dist =
                    std::abs(decomposition.eigenvalues(i) - loop.energies(j));
                if (dist < best) {
                    best = dist;
                    best_idx = i;
                }
            }
            used[static_cast<size_t>(best_idx)] = true;
            worst = std::max(worst, best);
        }
    }
    result.passed = worst <= 1e-10;
    result.detail = "max set-matching distance " + num(worst) + " (bound 1e-10)";
    return result;
}

// ---- 3: winding numbers and the point gap ----------------------------------

CheckResult check_winding() {
    CheckResult result{3, "winding-point-gap", false, ""};
    const int n_k = 401;

    const auto loop_a =
        spectra::pbc_dispersion(nn_chain(9, 0.0, 1.0, 1.0, 2.0, Boundary::Periodic),
                                n_k);
    const auto loop_b =
        spectra::pbc_dispersion(nn_chain(9, 1.0, 1.0, 1.0, 2.0, Boundary::Periodic),
                                n_k);
    const auto loop_c =
        spectra::pbc_dispersion(nn_chain(9, 1.0, 0.0, 1.0, 2.0, Boundary::Periodic),
                                n_k);

    const int w_a =
        spectra::winding_number(loop_a, spectra::point_gap_reference(loop_a)).winding;
    const int w_b =
        spectra::winding_number(loop_b, spectra::point_gap_reference(loop_b)).winding;

    // The reciprocal loop collapses onto a segment: no interior point exists.
    bool degenerate_rejected = false;
    try {
        (void)spectra::point_gap_reference(loop_c);
    } catch (const InvalidSpecError&) {
        degenerate_rejected = true;
    }

    // Winding about a reference displaced off the segment must vanish.
    const Complex centroid = loop_c.energies.mean();
    double scale = 0.0;
    for (Eigen::Index j = 0; j < loop_c.energies.size(); ++j)
        scale = std::max(scale, std::abs(loop_c.energies(j) - centroid));
    const Complex direction = loop_c.energies(0) - centroid;
    const Complex perpendicular =
        Complex(0, 1) * direction / std::abs(direction) * (0.5 * scale);
    const int w_c = spectra::winding_number(loop_c, centroid + perpendicular).winding;

    double radius_spread = 0.0;
    {
        const Complex c = loop_a.energies.mean();
        double lo = std::numeric_limits<double>::infinity();
        double hi = 0.0;
        for (Eigen::Index j = 0; j < loop_a.energies.size(); ++j) {
            const double r = std::abs(loop_a.energies(j) - c);
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        radius_spread = hi - lo;
    }

    result.passed = std::abs(w_a) == 1 && std::abs(w_b) == 1 && w_c == 0 &&
                    degenerate_rejected && radius_spread <= 1e-10;
    result.detail = "|w|=" + std::to_string(std::abs(w_a)) + "," +
                    std::to_string(std::abs(w_b)) + " (want 1,1), w=" +
                    std::to_string(w_c) + " (want 0), circle radius spread " +
                    num(radius_spread) + " (bound 1e-10), degenerate loop " +
                    (degenerate_rejected ? "rejected" : "NOT rejected");
    return result;
}

// ---- 4: damping kernels of the two routes coincide without pumping ----------

CheckResult check_k_equivalence(std::uint64_t seed) {
    CheckResult result{4, "k-matrix-equivalence", false, ""};
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uniform(-1.0, 1.0);
    std::uniform_int_distribution<int> size_dist(1, 6);
    std::uniform_real_distribution<double> positive(0.25, 2.0);

    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const int n = size_dist(rng);
        ComplexMatrix raw(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) raw(r, c) = Complex(uniform(rng), uniform(rng));
        ComplexMatrix j_mat = 0.5 * (raw + raw.adjoint());
        j_mat.diagonal().setZero();

        ComplexMatrix a(n, n);
        for (int r = 0; r < n; ++r)
            for (int c = 0; c < n; ++c) a(r, c) = Complex(uniform(rng), uniform(rng));
        ComplexMatrix gamma = (a * a.adjoint()) / static_cast<double>(n);

        RealVector omega(n);
        for (int r = 0; r < n; ++r) omega(r) = positive(rng);

        const auto spec = model::ChainSpec::validated(
            n, positive(rng), omega, j_mat, gamma, ComplexMatrix::Zero(n, n),
            Boundary::Open);
        const ComplexMatrix knh = model::build_knh(spec);
        const ComplexMatrix kl = model::build_kl(spec);
        worst = std::max(worst, (kl - knh.conjugate()).cwiseAbs().maxCoeff());
    }
    result.passed = worst <= 1e-14;
    result.detail = "max entrywise |K_avg - conj(K_cond)| over 100 specs " +
                    num(worst) + " (bound 1e-14)";
    return result;
}

// ---- 5: correlation-matrix route vs truncated exact master equation ---------

CheckResult check_gaussian_exact() {
    CheckResult result{5, "gaussian-exact-equivalence", false, ""};
    const auto nn = nn_chain(3, 1.0, 1.0, 1.0, 2.0, Boundary::Open);
    const auto chain = model::nn_to_general(nn);
    const RealVector times = linspace(0.0, 2.0, 50);

    const auto gaussian = dynamics::density_trajectory(
        chain, dynamics::CorrelationState::single_excitation(3, 2), times);

    const auto fock = liouville::FockSpec::build(3, 1);
    const auto [exact, rho_final] = liouville::evolve_exact(
        chain, fock, liouville::DensityMatrix::single_excitation(fock, 2), times);
    (void)rho_final;

    const double worst = (gaussian.densities - exact.densities).cwiseAbs().maxCoeff();
    result.passed = worst <= 1e-8;
    result.detail = "max density difference over 50 samples " + num(worst) +
                    " (bound 1e-08)";
    return result;
}

// ---- 6: rapidity combination rule ------------------------------------------

CheckResult check_combination_rule() {
    CheckResult result{6, "liouvillian-combination-rule", false, ""};
    const auto nn = nn_chain(2, 1.0, 1.0, 1.0, 2.0, Boundary::Open);
    const auto fock = liouville::FockSpec::build(2, 2);
    const auto report =
        liouville::combination_rule_check(model::nn_to_general(nn), fock, 1e-8);
    result.passed = report.n_orphans == 0 && report.max_distance <= 1e-8;
    result.detail = "max distance to a combination " + num(report.max_distance) +
                    " (bound 1e-08), orphans " + std::to_string(report.n_orphans);
    return result;
}

// ---- 7: qualitative transport signatures -----------------------------------

CheckResult check_fig2_qualitative() {
    CheckResult result{7, "fig2-qualitative", false, ""};

    const auto run = [](const std::string& variant) {
        const auto preset = dynamics::figure2_preset(variant);
        return dynamics::density_trajectory(preset.chain, preset.initial, preset.times);
    };

    const auto rec_a = run("a");
    double right_leak = 0.0;
    for (Eigen::Index j = 0; j < rec_a.times.size(); ++j)
        for (int site = 5; site < 9; ++site)  // 0-based sites 5..8 = labels 6..9
            right_leak = std::max(right_leak, std::abs(rec_a.densities(j, site)));

    const auto rec_c = run("c");
    double mirror = 0.0;
    for (Eigen::Index j = 0; j < rec_c.times.size(); ++j)
        for (int site = 0; site < 9; ++site)
            mirror = std::max(mirror, std::abs(rec_c.densities(j, site) -
                                               rec_c.densities(j, 8 - site)));

    const auto rec_b = run("b");
    const auto rec_d = run("d");
    const double peak_b = rec_b.densities.col(0).maxCoeff();
    const double peak_d = rec_d.densities.col(0).maxCoeff();

    const bool suppressed = peak_d <= 1e-3 * peak_b;
    result.passed = right_leak <= 1e-12 && mirror <= 1e-12 && suppressed;
    result.detail = "rightward leak " + num(right_leak) +
                    " (bound 1e-12), mirror asymmetry " + num(mirror) +
                    " (bound 1e-12), edge peak ratio " + num(peak_d / peak_b) +
                    " (bound 1e-03)";
    return result;
}

// ---- 8: total occupation never grows under pure decay -----------------------

CheckResult check_monotone_total() {
    CheckResult result{8, "monotone-total-number", false, ""};
    double worst_rise = 0.0;
    for (const std::string variant : {"a", "b", "c", "d"}) {
        const auto preset = dynamics::figure2_preset(variant);
        const auto record =
            dynamics::density_trajectory(preset.chain, preset.initial, preset.times);
        for (Eigen::Index j = 0; j + 1 < record.total_number.size(); ++j) {
            const double slack = 1e-12 * std::max(1.0, record.total_number(j));
            const double rise =
                record.total_number(j + 1) - record.total_number(j) - slack;
            worst_rise = std::max(worst_rise, rise);
        }
    }
    result.passed = worst_rise <= 0.0;
    result.detail = "worst slack-adjusted increase " + num(worst_rise) +
                    " (bound 0 after 1e-12 relative slack)";
    return result;
}

// ---- 9: macrospin integrator and linearized loop ----------------------------

CheckResult check_llg_integrity() {
    CheckResult result{9, "llg-integrity", false, ""};

    // Per-step norm drift at dt = 1e-2 / (frequency scale).
    double drift = 0.0;
    {
        const auto spec = llg_stack(1, 0.0, 0.0, 0.1, 0.0, 1.0, Boundary::Open);
        const auto initial = llg::MagnetizationState::validated(
            0.0, {Vec3(std::sin(kPi / 3.0), 0.0, std::cos(kPi / 3.0))});
        llg::IntegrateOptions options;
        options.record_stride = 1000;
        const auto trajectory = llg::integrate(spec, initial, 1e-2, 10.0, options);
        drift = std::max(drift, trajectory.max_norm_drift);
    }
    {
        const auto spec = llg_stack(5, 1.0, 0.5, 0.002, 0.001, 1.0, Boundary::Open);
        std::vector<Vec3> m(5, Vec3::UnitZ());
        m[2] = Vec3(std::sin(0.3), 0.0, std::cos(0.3));
        const auto initial = llg::MagnetizationState::validated(0.0, std::move(m));
        llg::IntegrateOptions options;
        options.record_stride = 1000;
        const auto trajectory =
            llg::integrate(spec, initial, 1e-2 / 7.0, 2.0, options);
        drift = std::max(drift, trajectory.max_norm_drift);
    }

    // Damped single-spin precession against the closed form.
    double precession_error = 0.0;
    {
        const double lambda = 0.1;
        const double w0 = 1.0;
        const double theta0 = kPi / 3.0;
        const double rate = w0 / (1.0 + lambda * lambda);
        const auto spec = llg_stack(1, 0.0, 0.0, lambda, 0.0, 1.0, Boundary::Open);
        const auto initial = llg::MagnetizationState::validated(
            0.0, {Vec3(std::sin(theta0), 0.0, std::cos(theta0))});
        const double t_end = 10.0 * 2.0 * kPi / rate;
        llg::IntegrateOptions options;
        options.record_stride = 50;
        const auto trajectory = llg::integrate(spec, initial, 1e-2, t_end, options);
        for (const auto& state : trajectory.states) {
            const double phi = rate * state.time;
            const double tan_half =
                std::tan(0.5 * theta0) * std::exp(-lambda * rate * state.time);
            const double theta = 2.0 * std::atan(tan_half);
            const Vec3 reference(std::sin(theta) * std::cos(phi),
                                 std::sin(theta) * std::sin(phi), std::cos(theta));
            precession_error =
                std::max(precession_error, (state.m[0] - reference).norm());
        }
    }

    // Linearized periodic loop: chiral exchange plus nonlocal damping encloses
    // area; killing either collapses it.
    const int n_k = 1024;
    const auto loop = llg::llg_pbc_spectrum(
        llg_stack(3, 1.0, 0.5, 0.002, 0.001, 1.0, Boundary::Periodic), n_k);
    const int winding =
        spectra::winding_number(loop, spectra::point_gap_reference(loop)).winding;
    const double area = std::abs(spectra::loop_signed_area(loop));
    const double ratio = minor_major_ratio(loop);

    const double area_no_dmi = std::abs(spectra::loop_signed_area(llg::llg_pbc_spectrum(
        llg_stack(3, 1.0, 0.0, 0.002, 0.001, 1.0, Boundary::Periodic), n_k)));
    const double area_local = std::abs(spectra::loop_signed_area(llg::llg_pbc_spectrum(
        llg_stack(3, 1.0, 0.5, 0.002, 0.0, 1.0, Boundary::Periodic), n_k)));

    result.passed = drift < 1e-8 && precession_error <= 1e-6 &&
                    std::abs(winding) == 1 && area > 1e-6 && ratio > 1e-3 &&
                    area_no_dmi <= 1e-12 && area_local <= 1e-12;
    result.detail = "drift " + num(drift) + " (bound 1e-08), precession error " +
                    num(precession_error) + " (bound 1e-06), |w|=" +
                    std::to_string(std::abs(winding)) + ", area " + num(area) +
                    " (floor 1e-06), axis ratio " + num(ratio) +
                    " (floor 1e-03), collapsed areas " + num(area_no_dmi) + "/" +
                    num(area_local) + " (bound 1e-12)";
    return result;
}

// ---- 10: chiral exchange balancing nonlocal damping --------------------------

CheckResult check_bilayer_balance() {
    CheckResult result{10, "bilayer-balance", false, ""};
    const auto spec = llg_stack(2, 0.0, 0.0, 0.002, 0.001, 1.0, Boundary::Open);
    const auto report = llg::bilayer_balance_check(spec);
    const double bound = 10.0 * (spec.alpha_l + spec.alpha_nl);
    result.passed = report.relative_deviation < bound &&
                    std::abs(std::abs(report.d_star_m21) - report.reference) /
                            report.reference <
                        bound;
    result.detail = "relative deviation " + num(report.relative_deviation) +
                    " (bound " + num(bound) + "), balancing couplings " +
                    num(report.d_star_m12) + "/" + num(report.d_star_m21) +
                    ", residuals " + num(report.residual_m12) + "/" +
                    num(report.residual_m21);
    return result;
}

// ---- 11: byte-identical reruns ----------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw NumericalError("cannot reopen artifact '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

CheckResult check_cli_determinism(const std::string& scratch_dir) {
    CheckResult result{11, "cli-determinism", false, ""};
    namespace fs = std::filesystem;
    fs::create_directories(scratch_dir);

    struct Job {
        runner::Command command;
        std::string preset;
        runner::Format format;
        std::string stem;
    };
    const std::vector<Job> jobs = {
        {runner::Command::Spectrum, "fig1c-nonreciprocal", runner::Format::Csv,
         "spectrum"},
        {runner::Command::Dynamics, "fig2b", runner::Format::Csv, "dynamics"},
        {runner::Command::LlgDynamics, "bilayer-balanced", runner::Format::Json,
         "llg"},
    };

    bool identical = true;
    bool clean_exit = true;
    for (const Job& job : jobs) {
        std::string contents[2];
        for (int pass = 0; pass < 2; ++pass) {
            runner::RunConfig config;
            config.command = job.command;
            config.preset = job.preset;
            config.format = job.format;
            config.out_path = (fs::path(scratch_dir) /
                               (job.stem + "-" + std::to_string(pass) +
                                (job.format == runner::Format::Csv ? ".csv" : ".json")))
                                  .string();
            if (runner::run(config) != 0) clean_exit = false;
            contents[pass] = slurp(config.out_path);
        }
        if (contents[0] != contents[1] || contents[0].empty()) identical = false;
    }
    result.passed = identical && clean_exit;
    result.detail = std::string("three command reruns ") +
                    (identical ? "byte-identical" : "DIFFER") + ", exit codes " +
                    (clean_exit ? "clean" : "nonzero");
    return result;
}

CheckResult guarded(const std::function<CheckResult()>& check, int number,
                    const std::string& name) {
    try {
        return check();
    } catch (const std::exception& e) {
        return CheckResult{number, name, false, std::string("exception: ") + e.what()};
    }
}

} // namespace

std::vector<CheckResult> run_all(std::uint64_t seed, const std::string& scratch_dir) {
    std::vector<CheckResult> results;
    results.push_back(guarded(check_skin_profile, 1, "skin-profile-formula"));
    results.push_back(guarded(check_pbc_dispersion, 2, "pbc-dispersion-sets"));
    results.push_back(guarded(check_winding, 3, "winding-point-gap"));
    results.push_back(
        guarded([seed] { return check_k_equivalence(seed); }, 4,
                "k-matrix-equivalence"));
    results.push_back(guarded(check_gaussian_exact, 5, "gaussian-exact-equivalence"));
    results.push_back(
        guarded(check_combination_rule, 6, "liouvillian-combination-rule"));
    results.push_back(guarded(check_fig2_qualitative, 7, "fig2-qualitative"));
    results.push_back(guarded(check_monotone_total, 8, "monotone-total-number"));
    results.push_back(guarded(check_llg_integrity, 9, "llg-integrity"));
    results.push_back(guarded(check_bilayer_balance, 10, "bilayer-balance"));
    results.push_back(guarded(
        [&scratch_dir] { return check_cli_determinism(scratch_dir); }, 11,
        "cli-determinism"));
    return results;
}

int report(const std::vector<CheckResult>& results) {
    int failures = 0;
    for (const auto& r : results) {
        if (!r.passed) ++failures;
        std::cout << "check " << r.number << " " << r.name << ": "
                  << (r.passed ? "pass" : "FAIL") << " (" << r.detail << ")\n";
    }
    std::cout << (failures == 0 ? "all checks passed"
                                : std::to_string(failures) + " check(s) failed")
              << "\n";
    return failures;
}

} // namespace nhse::verify
