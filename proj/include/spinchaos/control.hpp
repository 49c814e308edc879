// control.hpp — piecewise-constant control of the probe spin and
// multi-start fidelity maximization.

#pragma once

#include "spinchaos/dynamics.hpp"
#include "spinchaos/operators.hpp"
#include "spinchaos/rng.hpp"
#include "spinchaos/spectral.hpp"
#include "spinchaos/types.hpp"

#include <span>
#include <unordered_map>
#include <vector>

namespace spinchaos::ctrl {

struct ControlProblem {
    ops::SpinModel model;      // drift Hamiltonian
    Matrix control_operator;   // empty -> sigma_1^z
    Vector target;             // dim 2 (probe), 4 (sites 1-2), or full chain
    Vector initial_state;      // full chain
    double horizon = 20.0;
    int steps = 20;
    double amplitude_min = -2.0;
    double amplitude_max = 2.0;

    Matrix resolved_control_operator() const;
    void validate() const;
};

// Exact step propagators exp(-i (H0 + a Hc) dt), memoized by quantized
// amplitude so repeated values skip the diagonalization.
class PiecewisePropagator {
public:
    explicit PiecewisePropagator(const ControlProblem& problem,
                                 std::size_t dim_cap = kDefaultDimCap);

    Vector propagate(std::span<const double> amplitudes) const;

    long evaluations() const { return evaluations_; }

private:
    const spectral::SpectralData& step_data(double amplitude) const;

    Matrix drift_;
    Matrix control_;
    Vector initial_;
    double step_dt_ = 0.0;
    int steps_ = 0;
    double amplitude_min_ = 0.0;
    double amplitude_max_ = 0.0;
    std::size_t cache_cap_ = 0;
    mutable std::unordered_map<long long, spectral::SpectralData> cache_;
    mutable long evaluations_ = 0;
};

Vector propagate_piecewise(const ControlProblem& problem, std::span<const double> amplitudes);

// Overlap with the target: |<target|psi>|^2 for a full-chain target,
// <target| rho_sub |target> after reduction otherwise.
double fidelity(const Vector& final_state, const ControlProblem& problem);

struct ControlResult {
    std::vector<double> best_amplitudes;
    double best_fidelity = 0.0;
    std::vector<double> start_fidelities;  // index 0 is the zero-vector start
    long evaluations = 0;
};

struct OptimizeOptions {
    int random_starts = 10;
    int max_iterations = 200;
    double gradient_step = 1e-6;     // central finite differences
    double relative_tolerance = 1e-8;
};

// Multi-start local maximization of the fidelity over the amplitude box.
// The zero vector is always among the starts, so the result never falls
// below the uncontrolled baseline. Deterministic given (problem, options,
// stream seed).
ControlResult optimize(const ControlProblem& problem, const OptimizeOptions& options,
                       rng::Stream stream);

struct EtaFidelityRow {
    double parameter;
    double eta_value;
    double fidelity_value;
};

// Joins an optimal-fidelity curve with an eta curve over the same grid.
std::vector<EtaFidelityRow> fidelity_vs_eta(std::span<const double> grid,
                                            std::span<const double> fidelities,
                                            std::span<const double> eta_grid,
                                            std::span<const double> eta_values);

}  // namespace spinchaos::ctrl
