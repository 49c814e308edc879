// dynamics.hpp — initial states, exact propagation, and probe observables.
//
// All propagation goes through one eigendecomposition of the Hamiltonian;
// there are no time steppers. Times are in units of 1/J with hbar = 1.

#pragma once

#include "spinchaos/operators.hpp"
#include "spinchaos/rng.hpp"
#include "spinchaos/spectral.hpp"
#include "spinchaos/types.hpp"

#include <array>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace spinchaos::dyn {

// Product of single-qubit states with directions drawn uniformly on each
// Bloch sphere (cos(theta) uniform). angle_uniform switches to uniform
// theta in [0, pi) instead, which biases toward the poles.
Vector random_product_state(int length, rng::Stream& stream, bool angle_uniform = false);

// {0, dt, 2 dt, ..., ~horizon}; the last sample is round(horizon/dt)*dt.
std::vector<double> time_grid(double horizon, double dt);

// |psi(t)> = V exp(-i Lambda t) V† |psi0>, one column per time sample.
Matrix evolve_state(const spectral::SpectralData& data, const Vector& psi0,
                    std::span<const double> times);

// rho(t) = U rho0 U† with U = V exp(-i Lambda t) V†.
std::vector<Matrix> evolve_density(const spectral::SpectralData& data, const Matrix& rho0,
                                   std::span<const double> times);

// Partial trace over sites (n_sites+1)..L; the leading sites are the most
// significant bits, so blocks are contiguous.
Matrix reduce_to_leading_sites(const Vector& state, int length, int n_sites);
Matrix reduce_to_probe(const Vector& state, int length);
Matrix reduce_to_probe(const Matrix& rho, int length);

struct BlochPurity {
    Eigen::Vector3d bloch;
    double purity;
};

// r_i = Tr(sigma_i rho), P = Tr(rho^2); P = (1 + |r|^2)/2 for valid states.
BlochPurity bloch_and_purity(const Matrix& rho);

struct ProbeTrajectory {
    std::vector<double> times;
    std::vector<Eigen::Vector3d> bloch;
    std::vector<double> purity;
};

// Probe-reduced dynamics under a fixed Hamiltonian. Works in the eigenbasis:
// pure states cost one dense GEMV per time sample; mixed states use the
// cached overlap blocks W_ab = V_b† V_a so each sample is O(dim^2) instead
// of the O(dim^3) of a full density-matrix conjugation.
class ProbeEvolver {
public:
    ProbeEvolver(spectral::SpectralData data, int length);

    ProbeTrajectory trajectory(const Vector& psi0, std::span<const double> times) const;
    ProbeTrajectory trajectory(const Matrix& rho0, std::span<const double> times) const;

    const spectral::SpectralData& data() const { return data_; }
    int length() const { return length_; }

private:
    void ensure_overlap_blocks() const;

    spectral::SpectralData data_;
    int length_ = 0;
    Eigen::Index half_ = 0;
    mutable std::once_flag overlap_once_;
    mutable std::array<Matrix, 3> overlap_;  // W_00, W_11, W_01
};

// Trapezoidal time average of the purity over [window_begin, window_end].
double time_averaged_purity(const ProbeTrajectory& trajectory, double window_begin,
                            double window_end);

// Population standard deviation.
double fluctuation(std::span<const double> samples);

// Indices of trajectory samples with window_begin <= t <= window_end.
std::vector<std::size_t> window_indices(std::span<const double> times, double window_begin,
                                        double window_end);

struct EnsembleOptions {
    int realizations = 50;
    double horizon = 50.0;
    double dt = 0.1;
    bool angle_uniform = false;
    // When set, the environment starts in its Gibbs state at this inverse
    // temperature and only the probe is drawn at random.
    std::optional<double> environment_beta;
    int workers = 1;
    std::size_t dim_cap = kDefaultDimCap;
};

struct EnsembleStats {
    double mean = 0.0;
    double stddev = 0.0;  // across realizations
    int realizations = 0;
};

// Double average: time average over [0, horizon], then mean over
// `realizations` independent random initial states. Heisenberg models
// redraw their random fields per realization.
EnsembleStats ensemble_averaged_purity(const ops::SpinModel& model,
                                       const EnsembleOptions& options, rng::Stream stream);

// (v - min) / (max - min); throws numeric_error when max == min.
std::vector<double> normalize_curve(std::span<const double> values);

// The chain restricted to sites 2..L (couplings and fields among them only).
ops::SpinModel environment_model(const ops::SpinModel& model);

// exp(-beta H_env)/Z over sites 2..L, computed from the shifted spectrum.
Matrix gibbs_environment_state(const ops::SpinModel& model, double beta,
                               std::size_t dim_cap = kDefaultDimCap);

// Bloch vector split into its stationary part and oscillatory modes,
// r_i(t) = sum_n |C_n|^2 B_i(n,n) + sum_{m != n} C_m* C_n B_i(m,n) e^{-i(E_n-E_m)t}.
struct EigenbasisExpansion {
    Vector overlaps;  // C_n = <n|psi0>
    Eigen::Vector3d stationary;
    struct Mode {
        Eigen::Index row, col;  // (m, n)
        double frequency;       // E_n - E_m
        std::array<Complex, 3> amplitude;
    };
    std::vector<Mode> modes;

    Eigen::Vector3d evaluate(double t) const;
};

EigenbasisExpansion bloch_eigenbasis_expansion(const spectral::SpectralData& data,
                                               const Vector& psi0, int length);

}  // namespace spinchaos::dyn
