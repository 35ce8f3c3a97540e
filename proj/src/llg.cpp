#include "nhse/llg.hpp"

#include "nhse/errors.hpp"
#include "nhse/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nhse::llg {

namespace {

Eigen::Matrix3d cross_matrix(const Vec3& u) {
    Eigen::Matrix3d m;
    m << 0.0, -u.z(), u.y(),
         u.z(), 0.0, -u.x(),
         -u.y(), u.x(), 0.0;
    return m;
}

int left_neighbor(const MultilayerSpec& spec, int site) {
    if (site > 0) return site - 1;
    return spec.boundary == Boundary::Periodic ? spec.n_layers - 1 : -1;
}

int right_neighbor(const MultilayerSpec& spec, int site) {
    if (site + 1 < spec.n_layers) return site + 1;
    return spec.boundary == Boundary::Periodic ? 0 : -1;
}

std::vector<Vec3> stacked_to_vecs(const RealVector& v, int n) {
    std::vector<Vec3> out(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) out[static_cast<size_t>(a)] = v.segment<3>(3 * a);
    return out;
}

// One classical fourth-order step; returns the unrenormalized end state.
std::vector<Vec3> rk4_step(const MultilayerSpec& spec, const MagnetizationState& state,
                           double dt) {
    const int n = spec.n_layers;
    const auto deriv = [&](double t, const std::vector<Vec3>& m) {
        MagnetizationState s;
        s.time = t;
        s.m = m;
        return implicit_rhs(spec, s);
    };

    const auto advance = [&](const std::vector<Vec3>& m, const std::vector<Vec3>& k,
                             double factor) {
        std::vector<Vec3> out(m.size());
        for (size_t a = 0; a < m.size(); ++a) out[a] = m[a] + factor * k[a];
        return out;
    };

    const auto k1 = deriv(state.time, state.m);
    const auto k2 = deriv(state.time + 0.5 * dt, advance(state.m, k1, 0.5 * dt));
    const auto k3 = deriv(state.time + 0.5 * dt, advance(state.m, k2, 0.5 * dt));
    const auto k4 = deriv(state.time + dt, advance(state.m, k3, dt));

    std::vector<Vec3> out(static_cast<size_t>(n));
    for (int a = 0; a < n; ++a) {
        const size_t i = static_cast<size_t>(a);
        out[i] = state.m[i] + (dt / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    return out;
}

} // namespace

MultilayerSpec MultilayerSpec::validated(MultilayerSpec spec) {
    if (spec.n_layers < 1) throw InvalidSpecError("n_layers must be >= 1");
    if (spec.boundary == Boundary::Periodic && spec.n_layers < 3)
        throw InvalidSpecError("periodic stacks need n_layers >= 3 "
                               "(the wrap bond must be distinct)");
    if (spec.alpha_l < 0.0 || spec.alpha_nl < 0.0)
        throw InvalidSpecError("damping constants must be >= 0");
    if (!(spec.alpha_l + 2.0 * spec.alpha_nl < 1.0))
        throw InvalidSpecError("alpha_l + 2 alpha_nl must stay below 1 "
                               "(implicit damping solve otherwise loses invertibility)");
    if (spec.h_field < 0.0) throw InvalidSpecError("h_field must be >= 0");
    if (!(spec.ms > 0.0)) throw InvalidSpecError("ms must be > 0");
    if (!(spec.gyro > 0.0)) throw InvalidSpecError("gyro must be > 0");
    if (!(spec.mu0 > 0.0)) throw InvalidSpecError("mu0 must be > 0");
    for (double v : {spec.j_ex, spec.d_dmi, spec.alpha_l, spec.alpha_nl,
                     spec.h_field, spec.ms, spec.gyro, spec.mu0})
        if (!std::isfinite(v)) throw InvalidSpecError("spec values must be finite");
    return spec;
}

MagnetizationState MagnetizationState::validated(double time, std::vector<Vec3> m) {
    if (m.empty()) throw InvalidSpecError("magnetization state must be nonempty");
    for (const Vec3& v : m) {
        if (!v.allFinite())
            throw InvalidSpecError("magnetization entries must be finite");
        if (std::abs(v.norm() - 1.0) > 1e-9)
            throw InvalidSpecError("magnetization directions must be unit vectors");
    }
    MagnetizationState state;
    state.time = time;
    state.m = std::move(m);
    return state;
}

Vec3 effective_field(const MultilayerSpec& spec, const std::vector<Vec3>& m,
                     int site) {
    if (site < 0 || site >= spec.n_layers)
        throw InvalidSpecError("site out of range");
    const Vec3 z = Vec3::UnitZ();
    Vec3 field = spec.mu0 * spec.ms * spec.h_field * z;
    const int prev = left_neighbor(spec, site);
    const int next = right_neighbor(spec, site);
    if (prev >= 0) {
        field += spec.j_ex * m[static_cast<size_t>(prev)];
        field += spec.d_dmi * z.cross(m[static_cast<size_t>(prev)]);
    }
    if (next >= 0) {
        field += spec.j_ex * m[static_cast<size_t>(next)];
        field += spec.d_dmi * m[static_cast<size_t>(next)].cross(z);
    }
    return field;
}

std::vector<Vec3> implicit_rhs(const MultilayerSpec& spec,
                               const MagnetizationState& state) {
    const int n = spec.n_layers;
    if (static_cast<int>(state.m.size()) != n)
        throw InvalidSpecError("state layer count does not match the spec");

    RealVector f(3 * n);
    for (int a = 0; a < n; ++a)
        f.segment<3>(3 * a) = -(spec.gyro / spec.ms) *
                              state.m[static_cast<size_t>(a)].cross(
                                  effective_field(spec, state.m, a));

    // v = f + G v with cross-product blocks; alpha_l on the diagonal block,
    // alpha_nl toward each neighbour.
    RealMatrix sys = RealMatrix::Identity(3 * n, 3 * n);
    for (int a = 0; a < n; ++a) {
        const Eigen::Matrix3d cross = cross_matrix(state.m[static_cast<size_t>(a)]);
        sys.block<3, 3>(3 * a, 3 * a) -= spec.alpha_l * cross;
        const int prev = left_neighbor(spec, a);
        const int next = right_neighbor(spec, a);
        if (prev >= 0) sys.block<3, 3>(3 * a, 3 * prev) -= spec.alpha_nl * cross;
        if (next >= 0) sys.block<3, 3>(3 * a, 3 * next) -= spec.alpha_nl * cross;
    }

    const RealMatrix solution = linalg::solve(sys, RealMatrix(f));
    return stacked_to_vecs(solution.col(0), n);
}

LlgTrajectory integrate(const MultilayerSpec& spec, const MagnetizationState& initial,
                        double dt, double t_end, const IntegrateOptions& options) {
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw InvalidSpecError("dt must be finite and > 0");
    if (!(t_end >= initial.time))
        throw InvalidSpecError("t_end must be >= the initial time");
    if (options.record_stride < 1)
        throw InvalidSpecError("record_stride must be >= 1");

    LlgTrajectory trajectory;
    trajectory.states.push_back(initial);

    MagnetizationState state = initial;
    long step = 0;
    while (state.time < t_end - 1e-15 * std::max(1.0, std::abs(t_end))) {
        const double step_dt = std::min(dt, t_end - state.time);
        auto next = rk4_step(spec, state, step_dt);

        double drift = 0.0;
        for (auto& v : next) {
            drift = std::max(drift, std::abs(v.norm() - 1.0));
            v.normalize();
        }
        trajectory.max_norm_drift = std::max(trajectory.max_norm_drift, drift);
        if (drift > options.drift_bound)
            throw NumericalError("norm drift " + std::to_string(drift) +
                                 " in one step exceeds the bound; reduce dt");

        state.time += step_dt;
        state.m = std::move(next);
        ++step;
        const bool final_step =
            !(state.time < t_end - 1e-15 * std::max(1.0, std::abs(t_end)));
        if (step % options.record_stride == 0 || final_step)
            trajectory.states.push_back(state);
    }
    return trajectory;
}

LinearizedSystem linearized_dynamical_matrix(const MultilayerSpec& spec) {
    if (spec.j_ex < 0.0 || !(spec.h_field > 0.0))
        throw InvalidSpecError("linearization about m = z needs j_ex >= 0 and "
                               "h_field > 0 (stable uniform ground state)");
    const int n = spec.n_layers;
    const double w_h = spec.gyro * spec.mu0 * spec.h_field;
    const double w_j = spec.gyro * spec.j_ex / spec.ms;
    const double w_d = spec.gyro * spec.d_dmi / spec.ms;

    ComplexMatrix a = ComplexMatrix::Identity(n, n);
    ComplexMatrix b = ComplexMatrix::Zero(n, n);
    for (int site = 0; site < n; ++site) {
        a(site, site) += Complex(0, spec.alpha_l);
        int degree = 0;
        const int prev = left_neighbor(spec, site);
        const int next = right_neighbor(spec, site);
        if (prev >= 0) {
            ++degree;
            a(site, prev) += Complex(0, spec.alpha_nl);
            b(site, prev) = -Complex(w_j, -w_d);
        }
        if (next >= 0) {
            ++degree;
            a(site, next) += Complex(0, spec.alpha_nl);
            b(site, next) = -Complex(w_j, w_d);
        }
        b(site, site) = w_h + degree * w_j;
    }

    LinearizedSystem system;
    system.dyn_matrix = linalg::solve(a, b);
    system.params = spec;
    return system;
}

spectra::DispersionLoop llg_pbc_spectrum(const MultilayerSpec& spec, int n_k) {
    if (spec.boundary != Boundary::Periodic)
        throw InvalidSpecError("llg_pbc_spectrum requires a periodic stack");
    if (n_k < 3) throw InvalidSpecError("llg_pbc_spectrum needs n_k >= 3");
    const double w_h = spec.gyro * spec.mu0 * spec.h_field;
    const double w_j = spec.gyro * spec.j_ex / spec.ms;
    const double w_d = spec.gyro * spec.d_dmi / spec.ms;

    spectra::DispersionLoop loop;
    loop.k_values.resize(n_k);
    loop.energies.resize(n_k);
    for (int j = 0; j < n_k; ++j) {
        const double k = 2.0 * kPi * j / n_k;
        loop.k_values(j) = k;
        const double coherent =
            w_h + 2.0 * w_j * (1.0 - std::cos(k)) + 2.0 * w_d * std::sin(k);
        const Complex damping(1.0, spec.alpha_l + 2.0 * spec.alpha_nl * std::cos(k));
        loop.energies(j) = coherent / damping;
    }
    return loop;
}

BalanceReport bilayer_balance_check(const MultilayerSpec& spec) {
    if (spec.n_layers != 2)
        throw InvalidSpecError("balance analysis is defined for a bilayer");

    const auto coupling = [&](double d_value, int row, int col) {
        MultilayerSpec probe = spec;
        probe.d_dmi = d_value;
        return linearized_dynamical_matrix(probe).dyn_matrix(row, col);
    };

    BalanceReport report;
    report.reference = spec.alpha_nl * spec.mu0 * spec.ms * spec.h_field;

    for (const bool upper : {true, false}) {
        const int row = upper ? 0 : 1;
        const int col = upper ? 1 : 0;

        // Coarse sweep over a window around +-reference, then an exact
        // quadratic minimization: the coupling is affine in the chiral
        // exchange, so |M|^2 is a parabola.
        const double span = 8.0 * std::max(report.reference, 1e-12) +
                            4.0 * std::abs(spec.j_ex) * spec.alpha_nl + 1e-12;
        double best_d = 0.0;
        double best_mag = std::numeric_limits<double>::infinity();
        constexpr int kSweep = 801;
        for (int i = 0; i < kSweep; ++i) {
            const double d = -span + 2.0 * span * i / (kSweep - 1);
            const double mag = std::abs(coupling(d, row, col));
            if (mag < best_mag) {
                best_mag = mag;
                best_d = d;
            }
        }
        const Complex at_zero = coupling(0.0, row, col);
        const Complex slope = coupling(1.0, row, col) - at_zero;
        double refined = best_d;
        if (std::norm(slope) > 0.0)
            refined = -(at_zero * std::conj(slope)).real() / std::norm(slope);
        const double residual = std::abs(coupling(refined, row, col));

        if (upper) {
            report.d_star_m12 = refined;
            report.residual_m12 = residual;
        } else {
            report.d_star_m21 = refined;
            report.residual_m21 = residual;
        }
    }
    if (report.reference > 0.0)
        report.relative_deviation =
            std::abs(std::abs(report.d_star_m12) - report.reference) / report.reference;
    return report;
}

double multilayer_energy(const MultilayerSpec& spec, const MagnetizationState& state) {
    const int n = spec.n_layers;
    if (static_cast<int>(state.m.size()) != n)
        throw InvalidSpecError("state layer count does not match the spec");
    const Vec3 z = Vec3::UnitZ();
    double energy = 0.0;
    const int n_bonds = (spec.boundary == Boundary::Periodic) ? n : n - 1;
    for (int a = 0; a < n_bonds; ++a) {
        const Vec3& ma = state.m[static_cast<size_t>(a)];
        const Vec3& mb = state.m[static_cast<size_t>((a + 1) % n)];
        energy -= spec.j_ex * ma.dot(mb);
        energy -= spec.d_dmi * z.dot(ma.cross(mb));
    }
    for (int a = 0; a < n; ++a)
        energy -= spec.mu0 * spec.ms * spec.h_field * state.m[static_cast<size_t>(a)].z();
    return energy;
}

} // namespace nhse::llg
