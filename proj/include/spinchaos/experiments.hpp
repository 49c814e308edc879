// experiments.hpp — parameter-sweep orchestration: grid iteration,
// realization fan-out, aggregation, normalization, CSV serialization.
//
// Seeds form a hierarchy master -> lane -> grid point -> realization, all
// derived by counter-based hashing, so adding grid points or changing the
// worker count never reshuffles other points' draws.

#pragma once

#include "spinchaos/control.hpp"
#include "spinchaos/dynamics.hpp"
#include "spinchaos/operators.hpp"
#include "spinchaos/spectral.hpp"
#include "spinchaos/symmetry.hpp"
#include "spinchaos/types.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spinchaos::sweep {

// Sets the swept parameter on a model copy. Valid names: "h_x", "h_z"
// (Ising), "theta" (tilted Ising), "field_bound" (Heisenberg),
// "anisotropy", "perturbation" (XXZ).
void apply_parameter(ops::SpinModel& model, const std::string& name, double value);

// The same model resized to a different chain length. Non-uniform Ising
// couplings cannot be resized and raise config_error.
ops::SpinModel with_length(const ops::SpinModel& model, int length);

// Settings for the spectral indicator attached to a sweep. The eta chain
// usually differs in length from the dynamics chain, and for Ising its
// couplings are pinned to a uniform reference value so parity sectors stay
// valid even when the dynamics chain uses random couplings.
struct EtaSettings {
    bool enabled = false;
    int length = 12;
    sym::SectorPolicy sector = sym::SectorPolicy::parity_sector(sym::Parity::Odd);
    int disorder_realizations = 50;
    double ising_coupling = 1.0;
};

ops::SpinModel eta_reference_model(const ops::SpinModel& base, const EtaSettings& settings);

struct SweepSpec {
    ops::SpinModel model;      // template; the swept parameter is applied per point
    std::string parameter;     // parameter name, or "length" for fluctuation scaling
    std::vector<double> grid;  // non-empty, strictly increasing
    int realizations = 50;
    double horizon = 50.0;
    double dt = 0.1;
    // Fluctuation window; negative values mean the defaults [T/2, T].
    double window_begin = -1.0;
    double window_end = -1.0;
    bool angle_uniform = false;
    EtaSettings eta;
    std::uint64_t seed = 0;
    int workers = 1;
    std::size_t dim_cap = kDefaultDimCap;

    double resolved_window_begin() const { return window_begin < 0.0 ? 0.5 * horizon : window_begin; }
    double resolved_window_end() const { return window_end < 0.0 ? horizon : window_end; }
    void validate() const;
};

struct SweepMetadata {
    std::uint64_t seed = 0;
    std::string config_hash;
    std::string version;
    std::map<std::string, double> stats;  // derived quantities (slopes, correlations)
};

struct SweepResult {
    std::vector<std::string> columns;
    std::vector<std::vector<std::optional<double>>> rows;
    SweepMetadata metadata;
    std::vector<std::string> warnings;

    std::vector<double> column_values(const std::string& name) const;
};

// CSV per the output contract: 12 significant digits, LF endings, NA for
// absent optional values.
std::string to_csv(const SweepResult& result);

// A grid point failed; `partial` holds the rows completed before it.
struct sweep_failure : std::runtime_error {
    sweep_failure(const std::string& message, SweepResult partial_result,
                  std::size_t failed_index)
        : std::runtime_error(message),
          partial(std::move(partial_result)),
          grid_index(failed_index) {}

    SweepResult partial;
    std::size_t grid_index;
};

// Ensemble-averaged probe purity per grid point, normalized over the grid;
// optionally joined with the eta curve of the reference chain.
SweepResult run_purity_sweep(const SweepSpec& spec);

// eta and 1-eta per grid point on the configured symmetry sector.
SweepResult run_eta_sweep(const SweepSpec& spec);

// Purity and Bloch-component fluctuations versus chain length; emits the
// log2 regression slope in the metadata.
SweepResult run_fluctuation_scaling(const SweepSpec& spec);

struct ControlSettings {
    enum class Target { Transfer, Bell };
    enum class InitialState { ProbeZeroRestRandom, AllRandom };

    Target target = Target::Transfer;
    InitialState initial = InitialState::ProbeZeroRestRandom;
    double horizon = 20.0;
    int steps = 20;
    double amplitude_min = -2.0;
    double amplitude_max = 2.0;
    int random_starts = 10;
    int max_iterations = 200;
};

// Optimal control fidelity per grid point; joined with eta when enabled.
SweepResult run_control_sweep(const SweepSpec& spec, const ControlSettings& settings);

// Normalized purity curves for a Gibbs-state environment at each beta.
SweepResult run_temperature_sweep(const SweepSpec& spec, std::span<const double> betas);

}  // namespace spinchaos::sweep
