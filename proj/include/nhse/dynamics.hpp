#pragma once

#include "nhse/model.hpp"
#include "nhse/types.hpp"

#include <array>
#include <string>
#include <vector>

namespace nhse::dynamics {

/// Equal-time two-point function C_ab = <a^dag_a a_b> at one instant.
/// Hermitian and PSD within validation tolerance; diagonal holds the
/// site-resolved magnon densities.
struct CorrelationState {
    double time = 0.0;
    ComplexMatrix c_mat;

    static CorrelationState validated(double time, ComplexMatrix c_mat);
    /// One magnon on the given 1-based site, vacuum elsewhere.
    static CorrelationState single_excitation(int n_sites, int site);
};

/// Site densities sampled along a trajectory; densities is time x site.
struct TrajectoryRecord {
    RealVector times;
    RealMatrix densities;
    RealVector total_number;
};

/// Closed-form propagation of the two-point function over duration t >= 0:
/// C(t) = P C P^dag with P = expm(-conj(H) t), H the single-particle
/// generator. Requires zero pump.
CorrelationState evolve(const model::ChainSpec& spec, const CorrelationState& c0,
                        double t);

/// Sample site densities at strictly increasing times >= 0 (measured from
/// c0.time). Reuses one eigendecomposition of the generator across samples
/// and falls back to per-sample exponentials when the eigenvector basis is
/// ill conditioned (defective generators included).
TrajectoryRecord density_trajectory(const model::ChainSpec& spec,
                                    const CorrelationState& c0,
                                    const RealVector& times);

/// Right-minus-left weight about a 1-based center site,
/// sum_{a > c} n_a - sum_{a < c} n_a per sample.
RealVector asymmetry(const TrajectoryRecord& record, int center_site);

/// Canned dynamical scenarios on a 9-site open chain with one magnon on
/// site 5 and 200 samples over [0, 4]: variants "a" (unidirectional),
/// "b" (nonreciprocal), "c" (reciprocal), "d" (strong local decay).
struct Figure2Preset {
    model::NNChainSpec nn;
    model::ChainSpec chain;
    CorrelationState initial;
    RealVector times;
    int source_site = 5;
};
Figure2Preset figure2_preset(const std::string& variant);

} // namespace nhse::dynamics
