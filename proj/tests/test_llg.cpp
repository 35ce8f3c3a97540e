#include "nhse/errors.hpp"
#include "nhse/linalg.hpp"
#include "nhse/llg.hpp"
#include "nhse/spectra.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>
#include <vector>

using namespace nhse;
using oracles::set_match_distance;

namespace {

llg::MultilayerSpec stack(int n, double j, double d, double al, double anl, double h,
                          Boundary boundary = Boundary::Open) {
    llg::MultilayerSpec spec;
    spec.n_layers = n;
    spec.j_ex = j;
    spec.d_dmi = d;
    spec.alpha_l = al;
    spec.alpha_nl = anl;
    spec.h_field = h;
    spec.boundary = boundary;
    return llg::MultilayerSpec::validated(spec);
}

std::vector<Vec3> uniform_tilt(int n, double tilt) {
    return std::vector<Vec3>(static_cast<size_t>(n),
                             Vec3(std::sin(tilt), 0.0, std::cos(tilt)));
}

} // namespace

TEST_CASE("stack validation guards each structural invariant") {
    CHECK_THROWS_AS(static_cast<void>(stack(0, 1, 0, 0, 0, 1)), InvalidSpecError);
    CHECK_THROWS_AS(static_cast<void>(stack(2, 1, 0, 0, 0, 1, Boundary::Periodic)),
                    InvalidSpecError);
    CHECK_THROWS_AS(static_cast<void>(stack(2, 1, 0, -0.1, 0, 1)), InvalidSpecError);
    CHECK_THROWS_AS(static_cast<void>(stack(2, 1, 0, 0.5, 0.3, 1)), InvalidSpecError);
    CHECK_THROWS_AS(static_cast<void>(stack(2, 1, 0, 0, 0, -1)), InvalidSpecError);

    auto bad_ms = stack(2, 1, 0, 0, 0, 1);
    bad_ms.ms = 0.0;
    CHECK_THROWS_AS(static_cast<void>(llg::MultilayerSpec::validated(bad_ms)),
                    InvalidSpecError);
}

TEST_CASE("magnetization states must be nonempty unit vectors") {
    CHECK_THROWS_AS(static_cast<void>(llg::MagnetizationState::validated(0.0, {})),
                    InvalidSpecError);
    CHECK_THROWS_AS(static_cast<void>(llg::MagnetizationState::validated(
                        0.0, {Vec3(0.5, 0, 0)})),
                    InvalidSpecError);
    CHECK_NOTHROW(static_cast<void>(llg::MagnetizationState::validated(
        0.0, {Vec3(0, 0, 1), Vec3(1, 0, 0)})));
}

TEST_CASE("effective field sums exchange, chiral, and applied terms") {
    auto spec = stack(2, 0.7, 0.0, 0, 0, 1.2);
    spec.ms = 2.0;
    spec.mu0 = 0.8;
    const std::vector<Vec3> m = {Vec3(1, 0, 0), Vec3(0, 1, 0)};
    const Vec3 field = llg::effective_field(spec, m, 0);
    CHECK((field - Vec3(0.0, 0.7, 0.8 * 2.0 * 1.2)).norm() < 1e-15);

    CHECK_THROWS_AS(static_cast<void>(llg::effective_field(spec, m, 2)), InvalidSpecError);
}

TEST_CASE("chiral exchange contributes nothing for uniform configurations") {
    const auto with_dmi = stack(3, 0.0, 0.5, 0, 0, 1.0, Boundary::Periodic);
    const auto without = stack(3, 0.0, 0.0, 0, 0, 1.0, Boundary::Periodic);
    const Vec3 direction = Vec3(0.3, 0.2, 0.93).normalized();
    const std::vector<Vec3> m(3, direction);
    for (int site = 0; site < 3; ++site)
        CHECK((llg::effective_field(with_dmi, m, site) -
               llg::effective_field(without, m, site))
                  .norm() < 1e-15);
}

TEST_CASE("collinear stacks feel a purely axial field and stay put") {
    const auto spec = stack(3, 1.0, 0.5, 0.01, 0.002, 2.0);
    const std::vector<Vec3> m(3, Vec3(0, 0, 1));
    const Vec3 bulk = llg::effective_field(spec, m, 1);
    CHECK((bulk - Vec3(0, 0, 4.0)).norm() < 1e-15);

    const auto state = llg::MagnetizationState::validated(0.0, m);
    for (const Vec3& v : llg::implicit_rhs(spec, state)) CHECK(v.norm() == 0.0);

    const auto trajectory = llg::integrate(spec, state, 0.05, 1.0);
    CHECK((trajectory.states.back().m[1] - Vec3(0, 0, 1)).norm() < 1e-15);
    CHECK(trajectory.max_norm_drift == 0.0);
}

TEST_CASE("zero damping reduces the implicit solve to the bare torque") {
    const auto spec = stack(3, 1.0, 0.4, 0, 0, 1.0);
    const auto state = llg::MagnetizationState::validated(
        0.0, {Vec3(1, 0, 0), Vec3(0, 0, 1), Vec3(0, 1, 0)});
    const auto v = llg::implicit_rhs(spec, state);
    for (int a = 0; a < 3; ++a) {
        const Vec3 torque =
            -(spec.gyro / spec.ms) *
            state.m[static_cast<size_t>(a)].cross(
                llg::effective_field(spec, state.m, a));
        CHECK((v[static_cast<size_t>(a)] - torque).norm() < 1e-14);
    }
}

TEST_CASE("a single damped spin follows the closed-form spiral") {
    const double lambda = 0.1, theta0 = kPi / 3.0;
    const auto spec = stack(1, 0, 0, lambda, 0, 1.0);
    const auto initial = llg::MagnetizationState::validated(
        0.0, {Vec3(std::sin(theta0), 0.0, std::cos(theta0))});

    const double w_eff = 1.0 / (1.0 + lambda * lambda);
    const double period = 2.0 * kPi / w_eff;
    llg::IntegrateOptions options;
    options.record_stride = 25;
    const auto trajectory = llg::integrate(spec, initial, 1e-2, 3.0 * period, options);

    double worst = 0.0;
    for (const auto& state : trajectory.states) {
        const double phi = w_eff * state.time;
        const double theta =
            2.0 * std::atan(std::tan(0.5 * theta0) *
                            std::exp(-lambda * w_eff * state.time));
        const Vec3 closed(std::sin(theta) * std::cos(phi),
                          std::sin(theta) * std::sin(phi), std::cos(theta));
        worst = std::max(worst, (state.m[0] - closed).norm());
    }
    CHECK(worst < 1e-6);
    // Damping pushes the spin toward the field axis.
    CHECK(trajectory.states.back().m[0].z() > initial.m[0].z());
}

TEST_CASE("undamped chains conserve energy and norm") {
    const auto spec = stack(3, 1.0, 0.5, 0, 0, 1.0);
    const auto initial = llg::MagnetizationState::validated(
        0.0, {Vec3(0.6, 0, 0.8), Vec3(0, 0.6, 0.8), Vec3(-0.6, 0, 0.8)});
    const double e0 = llg::multilayer_energy(spec, initial);

    const auto trajectory = llg::integrate(spec, initial, 1e-3, 5.0);
    const double e1 = llg::multilayer_energy(spec, trajectory.states.back());
    CHECK(std::abs(e1 - e0) < 1e-8);
    CHECK(trajectory.max_norm_drift < 1e-10);
}

TEST_CASE("energy of a collinear bilayer adds bond and Zeeman terms") {
    auto spec = stack(2, 0.7, 0.3, 0, 0, 1.2);
    spec.ms = 2.0;
    spec.mu0 = 0.8;
    const auto state = llg::MagnetizationState::validated(
        0.0, {Vec3(0, 0, 1), Vec3(0, 0, 1)});
    // -J - mu0 Ms H per layer; the chiral term vanishes for parallel layers.
    CHECK(llg::multilayer_energy(spec, state) ==
          doctest::Approx(-0.7 - 2.0 * 0.8 * 2.0 * 1.2).epsilon(1e-14));
}

TEST_CASE("integration rejects bad stepping parameters and blow-ups") {
    const auto spec = stack(1, 0, 0, 0.1, 0, 1.0);
    const auto initial = llg::MagnetizationState::validated(
        0.0, uniform_tilt(1, kPi / 3.0));
    CHECK_THROWS_AS(static_cast<void>(llg::integrate(spec, initial, 0.0, 1.0)),
                    InvalidSpecError);
    CHECK_THROWS_AS(static_cast<void>(llg::integrate(spec, initial, 0.1, -1.0)),
                    InvalidSpecError);
    llg::IntegrateOptions bad_stride;
    bad_stride.record_stride = 0;
    CHECK_THROWS_AS(static_cast<void>(llg::integrate(spec, initial, 0.1, 1.0, bad_stride)),
                    InvalidSpecError);
    // A two-time-unit step cannot hold the norm of a precessing spin.
    CHECK_THROWS_AS(static_cast<void>(llg::integrate(spec, initial, 2.0, 4.0)),
                    NumericalError);
}

TEST_CASE("fixed-step recording covers every stride and the endpoint") {
    const auto spec = stack(1, 0, 0, 0.1, 0, 1.0);
    const auto initial = llg::MagnetizationState::validated(
        0.0, uniform_tilt(1, kPi / 3.0));
    const auto dense = llg::integrate(spec, initial, 0.1, 1.0);
    CHECK(dense.states.size() == 11);

    llg::IntegrateOptions sparse;
    sparse.record_stride = 3;
    const auto strided = llg::integrate(spec, initial, 0.1, 1.0, sparse);
    REQUIRE(strided.states.size() >= 2);
    CHECK(strided.states.back().time ==
          doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("linearized matrix carries the documented entries") {
    auto spec = stack(3, 0.7, 0.3, 0, 0, 1.2);
    spec.ms = 2.0;
    spec.gyro = 1.5;
    spec.mu0 = 0.8;
    const double w_h = 1.5 * 0.8 * 1.2;
    const double w_j = 1.5 * 0.7 / 2.0;
    const double w_d = 1.5 * 0.3 / 2.0;

    const auto system = llg::linearized_dynamical_matrix(spec);
    const ComplexMatrix& m = system.dyn_matrix;
    CHECK(std::abs(m(0, 0) - Complex(w_h + w_j, 0)) < 1e-13);
    CHECK(std::abs(m(1, 1) - Complex(w_h + 2.0 * w_j, 0)) < 1e-13);
    CHECK(std::abs(m(0, 1) - Complex(-w_j, -w_d)) < 1e-13);
    CHECK(std::abs(m(1, 0) - Complex(-w_j, w_d)) < 1e-13);
    CHECK(std::abs(m(0, 2)) < 1e-15);

    // No damping: Hermitian dynamical matrix, purely real spectrum.
    CHECK(linalg::eig(m).eigenvalues.imag().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("local damping alone divides the Hermitian matrix by 1 + i alpha") {
    const auto damped = stack(4, 1.0, 0.0, 0.05, 0, 1.0);
    const auto bare = stack(4, 1.0, 0.0, 0, 0, 1.0);
    const ComplexMatrix lhs = llg::linearized_dynamical_matrix(damped).dyn_matrix *
                              Complex(1.0, 0.05);
    const ComplexMatrix rhs = llg::linearized_dynamical_matrix(bare).dyn_matrix;
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-12);

    const ComplexMatrix& m = llg::linearized_dynamical_matrix(damped).dyn_matrix;
    CHECK(std::abs(m(0, 1)) == doctest::Approx(std::abs(m(1, 0))).epsilon(1e-13));
}

TEST_CASE("nonlocal damping generates next-nearest couplings") {
    const auto spec = stack(4, 1.0, 0.5, 0.004, 0.002, 1.0);
    const ComplexMatrix& m = llg::linearized_dynamical_matrix(spec).dyn_matrix;
    CHECK(std::abs(m(0, 2)) > 1e-5);
}

TEST_CASE("linearization demands a stable uniform ground state") {
    CHECK_THROWS_AS(static_cast<void>(llg::linearized_dynamical_matrix(
                        stack(3, 1.0, 0, 0, 0, 0.0))),
                    InvalidSpecError);
    CHECK_THROWS_AS(static_cast<void>(llg::linearized_dynamical_matrix(
                        stack(3, -1.0, 0, 0, 0, 1.0))),
                    InvalidSpecError);
}

TEST_CASE("damped spectra stay in the lower half plane when local dominates") {
    struct Combo {
        double j, d, al, anl;
    };
    const std::vector<Combo> combos = {
        {0.0, 0.3, 0.004, 0.002}, {1.0, 0.5, 0.02, 0.01}, {2.0, 0.0, 0.01, 0.0}};
    for (const auto& c : combos) {
        for (const Boundary boundary : {Boundary::Open, Boundary::Periodic}) {
            const auto spec = stack(6, c.j, c.d, c.al, c.anl, 1.0, boundary);
            const auto d = linalg::eig(llg::linearized_dynamical_matrix(spec).dyn_matrix);
            CHECK(d.eigenvalues.imag().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("Bloch frequencies match the ring dynamical matrix") {
    const auto spec = stack(6, 1.0, 0.5, 0.002, 0.001, 1.0, Boundary::Periodic);
    const auto loop = llg::llg_pbc_spectrum(spec, 6);
    const auto d = linalg::eig(llg::linearized_dynamical_matrix(spec).dyn_matrix);
    CHECK(set_match_distance(loop.energies, d.eigenvalues) < 1e-10);
}

TEST_CASE("Bloch loop spot values and input guards") {
    const auto spec = stack(3, 1.0, 0.5, 0.002, 0.001, 1.0, Boundary::Periodic);
    const auto loop = llg::llg_pbc_spectrum(spec, 8);
    // k = pi: damping phases cancel, frequency is real w_h + 4 w_j.
    CHECK(std::abs(loop.energies(4) - Complex(5.0, 0.0)) < 1e-14);

    CHECK_THROWS_AS(static_cast<void>(llg::llg_pbc_spectrum(
                        stack(3, 1, 0.5, 0, 0, 1.0), 8)),
                    InvalidSpecError);
    CHECK_THROWS_AS(static_cast<void>(llg::llg_pbc_spectrum(spec, 2)), InvalidSpecError);
}

TEST_CASE("chirality opens a frequency loop whose area tracks nonlocal damping") {
    const auto spec = stack(3, 1.0, 0.5, 0.002, 0.001, 1.0, Boundary::Periodic);
    const double area =
        spectra::loop_signed_area(llg::llg_pbc_spectrum(spec, 512));
    // Leading order 4 pi alpha_nl w_d (w_h + 2 w_j).
    CHECK(area == doctest::Approx(4.0 * kPi * 0.001 * 0.5 * 3.0).epsilon(1e-3));

    const auto local_only = stack(3, 1.0, 0.5, 0.002, 0.0, 1.0, Boundary::Periodic);
    CHECK(std::abs(spectra::loop_signed_area(
              llg::llg_pbc_spectrum(local_only, 512))) < 1e-12);

    const auto no_dmi = stack(3, 1.0, 0.0, 0.002, 0.001, 1.0, Boundary::Periodic);
    CHECK(std::abs(spectra::loop_signed_area(
              llg::llg_pbc_spectrum(no_dmi, 512))) < 1e-12);
}

TEST_CASE("small-amplitude rings follow the linearized uniform mode") {
    const auto spec = stack(3, 1.0, 0.5, 0.002, 0.001, 1.0, Boundary::Periodic);
    const double tilt = 1e-3;
    const auto initial =
        llg::MagnetizationState::validated(0.0, uniform_tilt(3, tilt));

    const Complex w0 = llg::llg_pbc_spectrum(spec, 4).energies(0);
    const double t_end = 5.0 * 2.0 * kPi / w0.real();
    llg::IntegrateOptions options;
    options.record_stride = 100;
    const auto trajectory = llg::integrate(spec, initial, 2e-3, t_end, options);

    const Complex psi0(std::sin(tilt), 0.0);
    double worst = 0.0;
    for (const auto& state : trajectory.states) {
        const Complex reference =
            psi0 * std::exp(Complex(0, -1) * w0 * state.time);
        for (const Vec3& m : state.m) {
            const Complex psi(m.x(), -m.y());
            worst = std::max(worst, std::abs(psi - reference) / std::abs(reference));
        }
    }
    CHECK(worst < 1e-4);
}

TEST_CASE("bilayer balance finds opposite chiral exchange for the two couplings") {
    const auto spec = stack(2, 0.0, 0.0, 0.002, 0.001, 1.0);
    const auto report = llg::bilayer_balance_check(spec);

    CHECK(report.reference == doctest::Approx(0.001).epsilon(1e-12));
    CHECK(report.d_star_m12 < 0.0);
    CHECK(report.d_star_m21 > 0.0);
    CHECK(std::abs(report.d_star_m12 + report.d_star_m21) < 1e-12);

    // Exact minimizer sits at -reference / (1 + alpha_l^2).
    const double expected_dev = 0.002 * 0.002 / (1.0 + 0.002 * 0.002);
    CHECK(report.relative_deviation == doctest::Approx(expected_dev).epsilon(1e-4));
    CHECK(report.residual_m12 >= 0.0);
    CHECK(report.residual_m12 < 1e-5);
    CHECK(report.residual_m21 < 1e-5);
}

TEST_CASE("balance without nonlocal damping needs no chiral compensation") {
    const auto spec = stack(2, 1.0, 0.0, 0.01, 0.0, 1.0);
    const auto report = llg::bilayer_balance_check(spec);
    CHECK(report.reference == 0.0);
    CHECK(std::abs(report.d_star_m12) < 1e-12);
    CHECK(std::abs(report.d_star_m21) < 1e-12);

    CHECK_THROWS_AS(static_cast<void>(llg::bilayer_balance_check(
                        stack(3, 1, 0, 0.01, 0, 1.0))),
                    InvalidSpecError);
}
