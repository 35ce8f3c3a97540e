#pragma once

#include "nhse/model.hpp"
#include "nhse/types.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace nhse::spectra {

/// Complex single-particle spectrum sampled along the Brillouin zone.
/// params carries the generating nearest-neighbour spec when there is one
/// (loops produced by other models leave it unset).
struct DispersionLoop {
    RealVector k_values;  // momenta in [0, 2pi)
    ComplexVector energies;
    std::optional<model::NNChainSpec> params;
};

/// Site-resolved density of one boundary mode, unit total weight when
/// normalized is set.
struct SkinProfile {
    int mode_index = 0;  // 1-based
    RealVector densities;
    bool normalized = true;
};

/// Winding of a dispersion loop around a reference energy.
struct WindingResult {
    Complex reference_energy;
    int winding = 0;
    DispersionLoop loop;
};

/// Bloch dispersion eps0 + 2s[(J cos k + D sin k) - i Gamma cos k] on a
/// uniform k-grid of n_k >= 3 points covering [0, 2pi).
DispersionLoop pbc_dispersion(const model::NNChainSpec& spec, int n_k);

/// Diagonalize the open-chain single-particle generator and return
/// (eigenvalue, density profile) pairs sorted by Re eigenvalue.
/// Requires an open boundary and zero pump.
std::vector<std::pair<Complex, SkinProfile>> obc_modes(const model::ChainSpec& spec);

/// Closed-form boundary-mode density profile of a uniform open chain,
/// |gamma_r/gamma_l|^alpha sin^2(n alpha pi / (N+1)), normalized to unit sum
/// unless normalize is false. Errors when either hopping amplitude vanishes
/// (the unidirectional limit is handled by obc_modes).
SkinProfile analytic_skin_profile(const model::NNChainSpec& spec, int mode_index,
                                  bool normalize = true);

/// Closed-form open-chain eigenvalues eps0 + 2 sqrt(gamma_r gamma_l)
/// cos(n pi / (N+1)), n = 1..N, via the diagonal similarity transform that
/// symmetrizes the hopping matrix.
ComplexVector obc_similarity_eigenvalues(const model::NNChainSpec& spec);

/// Integer winding number of the loop around e_ref, counterclockwise
/// positive, by summed argument increments. Errors when e_ref sits on the
/// sampled loop or the phase sum is not within 0.01 of an integer.
WindingResult winding_number(const DispersionLoop& loop, Complex e_ref);

/// Interior reference energy (the vertex centroid) for winding computations.
/// Errors when the loop is degenerate (encloses no area) and hence has no
/// point gap.
Complex point_gap_reference(const DispersionLoop& loop);

/// Signed polygon area enclosed by the sampled loop (counterclockwise
/// positive), computed about the vertex centroid for stability.
double loop_signed_area(const DispersionLoop& loop);

} // namespace nhse::spectra
