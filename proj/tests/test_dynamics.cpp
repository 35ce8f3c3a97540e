#include "nhse/dynamics.hpp"
#include "nhse/errors.hpp"
#include "nhse/linalg.hpp"
#include "nhse/model.hpp"

#include "doctest.h"
#include "oracles.hpp"

#include <cmath>

using namespace nhse;
using oracles::linspace;
using oracles::nn_chain;
using oracles::rk4_correlation;

TEST_CASE("single excitation is a one-hot diagonal correlation") {
    const auto state = dynamics::CorrelationState::single_excitation(4, 3);
    CHECK(state.time == 0.0);
    CHECK(std::abs(state.c_mat(2, 2) - Complex(1, 0)) == 0.0);
    CHECK(state.c_mat.cwiseAbs().sum() == 1.0);
    CHECK_THROWS_AS(static_cast<void>(dynamics::CorrelationState::single_excitation(4, 0)),
                    InvalidSpecError);
    CHECK_THROWS_AS(static_cast<void>(dynamics::CorrelationState::single_excitation(4, 5)),
                    InvalidSpecError);
}

TEST_CASE("correlation validation enforces Hermitian PSD structure") {
    ComplexMatrix good(2, 2);
    good << 1.0, Complex(0.2, 0.1), Complex(0.2, -0.1), 0.5;
    CHECK_NOTHROW(static_cast<void>(dynamics::CorrelationState::validated(0.0, good)));

    ComplexMatrix non_hermitian(2, 2);
    non_hermitian << 1.0, 0.5, 0.0, 1.0;
    CHECK_THROWS_AS(static_cast<void>(dynamics::CorrelationState::validated(
                        0.0, non_hermitian)),
                    InvalidSpecError);

    ComplexMatrix negative = ComplexMatrix::Identity(2, 2);
    negative(1, 1) = -0.5;
    CHECK_THROWS_AS(static_cast<void>(dynamics::CorrelationState::validated(0.0, negative)),
                    InvalidSpecError);
}

TEST_CASE("a single lossy site decays at twice s gamma0") {
    const auto spec = model::nn_to_general(nn_chain(1, 0, 0, 0, 0.7, Boundary::Open,
                                                    1.3, 0.5));
    const auto c0 = dynamics::CorrelationState::single_excitation(1, 1);
    const double t = 1.3;
    const auto ct = dynamics::evolve(spec, c0, t);
    CHECK(ct.time == doctest::Approx(t));
    CHECK(ct.c_mat(0, 0).real() ==
          doctest::Approx(std::exp(-2.0 * 0.5 * 0.7 * t)).epsilon(1e-12));
}

TEST_CASE("zero-duration evolution is the identity") {
    const auto spec = model::nn_to_general(nn_chain(3, 1, 1, 1, 2));
    const auto c0 = dynamics::CorrelationState::single_excitation(3, 2);
    const auto ct = dynamics::evolve(spec, c0, 0.0);
    CHECK((ct.c_mat - c0.c_mat).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("exact propagation matches an independent explicit integrator") {
    const auto spec = model::nn_to_general(nn_chain(3, 1, 1, 1, 2));
    const auto c0 = dynamics::CorrelationState::single_excitation(3, 2);
    const auto ct = dynamics::evolve(spec, c0, 0.3);

    const ComplexMatrix reference =
        rk4_correlation(model::build_hm(spec), c0.c_mat, 0.3, 1e-3);
    CHECK((ct.c_mat - reference).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("propagation composes as a semigroup") {
    const auto spec = model::nn_to_general(nn_chain(4, 1, 1, 1, 2));
    const auto c0 = dynamics::CorrelationState::single_excitation(4, 2);
    const auto two_step = dynamics::evolve(spec, dynamics::evolve(spec, c0, 0.4), 0.35);
    const auto direct = dynamics::evolve(spec, c0, 0.75);
    CHECK((two_step.c_mat - direct.c_mat).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("evolution preserves Hermitian positivity") {
    const auto spec = model::nn_to_general(nn_chain(4, 1, 1, 1, 2));
    const auto c0 = dynamics::CorrelationState::single_excitation(4, 1);
    const auto ct = dynamics::evolve(spec, c0, 1.7);
    CHECK(linalg::is_hermitian(ct.c_mat, 1e-12));
    CHECK(linalg::min_hermitian_eigenvalue(ct.c_mat) > -1e-10);
}

TEST_CASE("the vacuum stays empty") {
    const auto spec = model::nn_to_general(nn_chain(3, 1, 1, 1, 2));
    const auto c0 = dynamics::CorrelationState::validated(0.0, ComplexMatrix::Zero(3, 3));
    const auto record = dynamics::density_trajectory(spec, c0, linspace(0.0, 2.0, 9));
    CHECK(record.densities.cwiseAbs().maxCoeff() == 0.0);
    CHECK(record.total_number.cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("evolution rejects bad durations, sizes, and the pump regime") {
    const auto spec = model::nn_to_general(nn_chain(3, 1, 1, 1, 2));
    const auto c0 = dynamics::CorrelationState::single_excitation(3, 1);
    CHECK_THROWS_AS(static_cast<void>(dynamics::evolve(spec, c0, -0.1)), InvalidSpecError);
    CHECK_THROWS_AS(static_cast<void>(dynamics::evolve(
                        spec, dynamics::CorrelationState::single_excitation(4, 1), 1.0)),
                    InvalidSpecError);

    auto pumped = spec;
    pumped.gamma_tilde_mat = ComplexMatrix::Identity(3, 3);
    CHECK_THROWS_AS(static_cast<void>(dynamics::evolve(pumped, c0, 1.0)), RegimeError);
}

TEST_CASE("trajectory sampling requires strictly increasing nonnegative times") {
    const auto spec = model::nn_to_general(nn_chain(3, 1, 1, 1, 2));
    const auto c0 = dynamics::CorrelationState::single_excitation(3, 1);

    RealVector decreasing(2);
    decreasing << 1.0, 0.5;
    CHECK_THROWS_AS(static_cast<void>(dynamics::density_trajectory(spec, c0, decreasing)),
                    InvalidSpecError);
    RealVector negative(1);
    negative << -1.0;
    CHECK_THROWS_AS(static_cast<void>(dynamics::density_trajectory(spec, c0, negative)),
                    InvalidSpecError);
}

TEST_CASE("trajectory densities match pointwise evolution") {
    const auto spec = model::nn_to_general(nn_chain(5, 1, 1, 1, 2));
    const auto c0 = dynamics::CorrelationState::single_excitation(5, 3);
    const RealVector times = linspace(0.0, 2.0, 11);
    const auto record = dynamics::density_trajectory(spec, c0, times);

    for (Eigen::Index j = 0; j < times.size(); ++j) {
        const auto ct = dynamics::evolve(spec, c0, times(j));
        for (int a = 0; a < 5; ++a)
            CHECK(record.densities(j, a) ==
                  doctest::Approx(ct.c_mat(a, a).real()).epsilon(1e-10));
    }
}

TEST_CASE("total number decays monotonically under pure loss") {
    const auto preset = dynamics::figure2_preset("b");
    const auto record =
        dynamics::density_trajectory(preset.chain, preset.initial, preset.times);
    for (Eigen::Index j = 1; j < record.total_number.size(); ++j)
        CHECK(record.total_number(j) <=
              record.total_number(j - 1) + 1e-12 * record.total_number(j - 1));
}

TEST_CASE("unidirectional hopping never leaks to the right of the source") {
    const auto preset = dynamics::figure2_preset("a");
    REQUIRE(std::abs(model::hopping_amplitudes(preset.nn).gamma_r) == 0.0);
    const auto record =
        dynamics::density_trajectory(preset.chain, preset.initial, preset.times);
    double right = 0.0;
    for (Eigen::Index j = 0; j < record.times.size(); ++j)
        for (int a = preset.source_site; a < 9; ++a)
            right = std::max(right, record.densities(j, a));
    CHECK(right < 1e-12);

    const auto asym = dynamics::asymmetry(record, preset.source_site);
    CHECK(std::abs(asym(0)) < 1e-12);
    CHECK(asym(asym.size() - 1) < 0.0);
}

TEST_CASE("reciprocal spreading is mirror symmetric about the source") {
    const auto preset = dynamics::figure2_preset("c");
    const auto amps = model::hopping_amplitudes(preset.nn);
    REQUIRE(std::abs(amps.gamma_r) == std::abs(amps.gamma_l));
    const auto record =
        dynamics::density_trajectory(preset.chain, preset.initial, preset.times);
    double mirror = 0.0;
    for (Eigen::Index j = 0; j < record.times.size(); ++j)
        for (int a = 0; a < 4; ++a)
            mirror = std::max(mirror, std::abs(record.densities(j, a) -
                                               record.densities(j, 8 - a)));
    CHECK(mirror < 1e-12);

    const auto asym = dynamics::asymmetry(record, preset.source_site);
    CHECK(asym.cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("canned dynamical scenarios carry the documented shape") {
    const auto preset = dynamics::figure2_preset("b");
    CHECK(preset.nn.n_sites == 9);
    CHECK(preset.source_site == 5);
    CHECK(preset.times.size() == 200);
    CHECK(preset.times(0) == 0.0);
    CHECK(preset.times(199) == doctest::Approx(4.0));
    CHECK(preset.initial.c_mat(4, 4).real() == 1.0);
    CHECK_THROWS_AS(static_cast<void>(dynamics::figure2_preset("z")), InvalidSpecError);
}
