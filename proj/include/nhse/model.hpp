#pragma once

#include "nhse/types.hpp"

namespace nhse::model {

/// Dissipative spin chain in the magnon (large-spin) regime, fully general
/// couplings. j_mat is the Hermitian coherent exchange matrix with zero
/// diagonal; gamma_mat (decay) and gamma_tilde_mat (pump) are the Hermitian
/// PSD dissipative coupling matrices, local rates on the diagonal and
/// nonlocal ones off it.
struct ChainSpec {
    int n_sites = 0;
    double spin_s = 0.0;
    RealVector omega;               // on-site precession frequencies, all > 0
    ComplexMatrix j_mat;            // Hermitian, zero diagonal
    ComplexMatrix gamma_mat;        // Hermitian PSD
    ComplexMatrix gamma_tilde_mat;  // Hermitian PSD, zero in the decay-only regime
    Boundary boundary = Boundary::Open;

    /// Validates every structural invariant and throws InvalidSpecError on
    /// the first violation (the message names the offending quantity).
    static ChainSpec validated(int n_sites, double spin_s, RealVector omega,
                               ComplexMatrix j_mat, ComplexMatrix gamma_mat,
                               ComplexMatrix gamma_tilde_mat, Boundary boundary);
};

/// Uniform nearest-neighbour chain: symmetric exchange j_sym, antisymmetric
/// (DMI-like) exchange d_asym, local decay gamma0, symmetric nonlocal decay
/// gamma, identical on-site frequency omega.
struct NNChainSpec {
    int n_sites = 0;
    double spin_s = 0.0;
    double omega = 0.0;
    double gamma0 = 0.0;
    double gamma = 0.0;
    double j_sym = 0.0;
    double d_asym = 0.0;
    Boundary boundary = Boundary::Open;
};

/// Effective hopping amplitudes of the single-particle non-Hermitian
/// Hamiltonian of a uniform chain: rightward gamma_r, leftward gamma_l,
/// on-site eps0 = omega - i s gamma0.
struct HoppingAmplitudes {
    Complex gamma_r;
    Complex gamma_l;
    Complex eps0;
};

/// Expand a nearest-neighbour spec into general coupling matrices.
/// Bond alpha -> alpha+1 carries j_sym + i d_asym; periodic chains wrap
/// (and require n_sites >= 3 so the wrap bond is distinct).
ChainSpec nn_to_general(const NNChainSpec& spec);

/// Damping kernel of the postselected (no-jump) sector:
/// i conj(j_mat) + gamma_mat + conj(gamma_tilde_mat), entrywise conjugates.
ComplexMatrix build_knh(const ChainSpec& spec);

/// Damping kernel of the averaged (full Lindblad) dynamics:
/// -i j_mat + conj(gamma_mat) - gamma_tilde_mat.
/// Equals conj(build_knh) when gamma_tilde_mat = 0.
ComplexMatrix build_kl(const ChainSpec& spec);

/// Single-particle generator of the quadratic magnon master equation,
/// i diag(omega) + s (i conj(j_mat) + gamma_mat). Requires zero pump;
/// satisfies H + H^dagger = 2 s gamma_mat.
ComplexMatrix build_hm(const ChainSpec& spec);

/// Closed-form hopping amplitudes of a nearest-neighbour chain:
/// gamma_r = s (J + i (D - Gamma)), gamma_l = s (J - i (D + Gamma)).
HoppingAmplitudes hopping_amplitudes(const NNChainSpec& spec);

} // namespace nhse::model
