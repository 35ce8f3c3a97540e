#pragma once

#include "nhse/spectra.hpp"
#include "nhse/types.hpp"

#include <vector>

namespace nhse::llg {

/// Stack of N macrospin layers coupled by symmetric exchange j_ex and
/// interfacial chiral exchange d_dmi (both in field times Ms units), with
/// local Gilbert damping alpha_l and nearest-neighbour nonlocal damping
/// alpha_nl. h_field is the applied field along z.
struct MultilayerSpec {
    int n_layers = 0;
    double j_ex = 0.0;
    double d_dmi = 0.0;
    double alpha_l = 0.0;
    double alpha_nl = 0.0;
    double h_field = 0.0;
    double ms = 1.0;
    double gyro = 1.0;
    double mu0 = 1.0;
    Boundary boundary = Boundary::Open;

    static MultilayerSpec validated(MultilayerSpec spec);
};

/// Unit magnetization directions of every layer at one instant.
struct MagnetizationState {
    double time = 0.0;
    std::vector<Vec3> m;

    static MagnetizationState validated(double time, std::vector<Vec3> m);
};

/// Linearization about the uniform ground state m = z in the circular
/// variable psi = m^x - i m^y; modes evolve as exp(-i omega t), so
/// eigenvalues of dyn_matrix are complex frequencies (negative imaginary
/// part means decay).
struct LinearizedSystem {
    ComplexMatrix dyn_matrix;
    MultilayerSpec params;
};

/// Fixed-step trajectory, one state per recorded step; max_norm_drift is
/// the largest per-step deviation of any |m_alpha| from 1 before the
/// per-step renormalization.
struct LlgTrajectory {
    std::vector<MagnetizationState> states;
    double max_norm_drift = 0.0;
};

struct IntegrateOptions {
    double drift_bound = 1e-6;  // reject a step whose pre-renormalization drift exceeds this
    int record_stride = 1;
};

/// Effective field J(m_prev + m_next) + D(m_next x z + z x m_prev)
/// + mu0 Ms H z acting on layer `site` (0-based).
Vec3 effective_field(const MultilayerSpec& spec,
                     const std::vector<Vec3>& m, int site);

/// Time derivatives of all layers from the implicit damping form:
/// solves (I - G) v = f where f stacks -(gyro/Ms) m x H_eff and G carries
/// the local and nonlocal damping cross-product blocks.
std::vector<Vec3> implicit_rhs(const MultilayerSpec& spec,
                               const MagnetizationState& state);

/// Classical fourth-order fixed-step integration to t_end with per-step
/// renormalization. Throws NumericalError when the pre-renormalization norm
/// drift of a step exceeds options.drift_bound.
LlgTrajectory integrate(const MultilayerSpec& spec, const MagnetizationState& initial,
                        double dt, double t_end, const IntegrateOptions& options = {});

/// Dynamical matrix A^{-1} B of the linearized stack; A = I + i(alpha_l I
/// + alpha_nl T) with T the neighbour adjacency, B the Hermitian coherent
/// matrix. Requires j_ex >= 0 and h_field > 0 (stable ground state).
LinearizedSystem linearized_dynamical_matrix(const MultilayerSpec& spec);

/// Bloch frequencies omega(k) = B(k)/A(k) of the periodic stack on an
/// n_k-point grid covering [0, 2pi).
spectra::DispersionLoop llg_pbc_spectrum(const MultilayerSpec& spec, int n_k);

/// Balance analysis of a two-layer stack: sweeps the chiral exchange and
/// reports the value minimizing each off-diagonal of the linearized
/// dynamical matrix, the residual coupling there, and the comparison point
/// alpha_nl mu0 Ms H.
struct BalanceReport {
    double d_star_m12 = 0.0;      // chiral exchange minimizing |M_12|
    double d_star_m21 = 0.0;      // chiral exchange minimizing |M_21|
    double reference = 0.0;       // alpha_nl mu0 Ms H
    double residual_m12 = 0.0;    // |M_12| at d_star_m12
    double residual_m21 = 0.0;    // |M_21| at d_star_m21
    double relative_deviation = 0.0;  // | |d_star_m12| - reference | / reference
};
BalanceReport bilayer_balance_check(const MultilayerSpec& spec);

/// Energy of a configuration: -sum_bonds [J m.m' + D z.(m x m')]
/// - mu0 Ms H sum_a m_a^z. Conserved by the undamped flow.
double multilayer_energy(const MultilayerSpec& spec, const MagnetizationState& state);

} // namespace nhse::llg
