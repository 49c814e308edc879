#include "spinchaos/experiments.hpp"

#include "spinchaos/parallel.hpp"
#include "spinchaos/stats.hpp"
#include "spinchaos/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace spinchaos::sweep {

namespace {

using Index = Eigen::Index;

// Seed lanes of the master stream; children are keyed by grid index so
// extending the grid never reshuffles existing points.
constexpr std::uint64_t kLaneDynamics = 0;
constexpr std::uint64_t kLaneEta = 1;
constexpr std::uint64_t kLaneControlState = 2;
constexpr std::uint64_t kLaneOptimizer = 3;

std::string format_value(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.12g", value);
    return buffer;
}

// Runs fn(0..n-1) in parallel, capturing per-index failures; reports the
// lowest failed index so partial results stay deterministic.
template <typename Fn>
std::optional<std::pair<std::size_t, std::string>> run_indexed(int n, int workers, Fn&& fn) {
    std::vector<std::optional<std::string>> errors(static_cast<std::size_t>(n));
    parallel_for(n, workers, [&](int i) {
        try {
            fn(i);
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    });
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (errors[i]) return std::make_pair(i, *errors[i]);
    }
    return std::nullopt;
}

SweepMetadata base_metadata(const SweepSpec& spec) {
    SweepMetadata meta;
    meta.seed = spec.seed;
    meta.version = kVersionString;
    return meta;
}

[[noreturn]] void fail_at(const char* runner, const SweepSpec& spec, std::size_t index,
                          const std::string& what, SweepResult partial) {
    std::ostringstream message;
    message << runner << " failed at grid index " << index << " (" << spec.parameter << "="
            << format_value(spec.grid[index]) << "): " << what;
    throw sweep_failure(message.str(), std::move(partial), index);
}

SweepResult prefix_rows(const SweepResult& staged, std::size_t count) {
    SweepResult partial = staged;
    partial.rows.assign(staged.rows.begin(),
                        staged.rows.begin() + static_cast<std::ptrdiff_t>(
                                                  std::min(count, staged.rows.size())));
    return partial;
}

std::optional<std::vector<double>> try_normalize(std::span<const double> values,
                                                 std::vector<std::string>& warnings) {
    try {
        return dyn::normalize_curve(values);
    } catch (const std::exception& e) {
        warnings.emplace_back(std::string("normalization skipped: ") + e.what());
        return std::nullopt;
    }
}

// eta curve over the grid for the reference chain; parallel over points.
std::vector<double> eta_curve(const SweepSpec& spec, rng::Stream master,
                              const char* runner) {
    const auto reference = eta_reference_model(spec.model, spec.eta);
    spectral::EtaOptions options;
    options.sector = spec.eta.sector;
    options.disorder_realizations = spec.eta.disorder_realizations;
    options.dim_cap = spec.dim_cap;

    const auto n = static_cast<int>(spec.grid.size());
    std::vector<double> values(static_cast<std::size_t>(n));
    auto failure = run_indexed(n, spec.workers, [&](int i) {
        ops::SpinModel point = reference;
        apply_parameter(point, spec.parameter, spec.grid[static_cast<std::size_t>(i)]);
        values[static_cast<std::size_t>(i)] = spectral::eta_for_model(
            point, options, master.child(kLaneEta).child(static_cast<std::uint64_t>(i)));
    });
    if (failure) {
        SweepResult empty;
        fail_at(runner, spec, failure->first, failure->second, std::move(empty));
    }
    return values;
}

}  // namespace

void apply_parameter(ops::SpinModel& model, const std::string& name, double value) {
    using ops::ModelKind;
    const ModelKind kind = model.kind();
    if (name == "h_x" && kind == ModelKind::IsingLongTrans) {
        std::get<ops::IsingParams>(model.params).h_x = value;
    } else if (name == "h_z" && kind == ModelKind::IsingLongTrans) {
        std::get<ops::IsingParams>(model.params).h_z = value;
    } else if (name == "theta" && kind == ModelKind::TiltedIsing) {
        std::get<ops::TiltedIsingParams>(model.params).theta = value;
    } else if (name == "field_bound" && kind == ModelKind::HeisenbergRandomField) {
        if (value < 0.0) throw config_error("field_bound must be nonnegative");
        std::get<ops::HeisenbergParams>(model.params).field_bound = value;
    } else if (name == "anisotropy" && kind == ModelKind::PerturbedXxz) {
        std::get<ops::XxzParams>(model.params).anisotropy = value;
    } else if (name == "perturbation" && kind == ModelKind::PerturbedXxz) {
        std::get<ops::XxzParams>(model.params).perturbation = value;
    } else {
        throw config_error("sweep parameter '" + name + "' is not valid for this model");
    }
}

ops::SpinModel with_length(const ops::SpinModel& model, int length) {
    ops::SpinModel resized = model;
    resized.length = length;
    switch (model.kind()) {
        case ops::ModelKind::IsingLongTrans: {
            const auto& couplings = model.ising().couplings;
            double uniform = 1.0;
            if (!couplings.empty()) {
                uniform = couplings.front();
                for (const double j : couplings) {
                    if (j != uniform) {
                        throw config_error(
                            "cannot resize a chain with non-uniform couplings");
                    }
                }
            }
            std::get<ops::IsingParams>(resized.params).couplings
                .assign(static_cast<std::size_t>(std::max(length - 1, 0)), uniform);
            break;
        }
        case ops::ModelKind::HeisenbergRandomField:
            std::get<ops::HeisenbergParams>(resized.params)
                .fields.assign(static_cast<std::size_t>(length), 0.0);
            break;
        default: break;
    }
    resized.validate();
    return resized;
}

ops::SpinModel eta_reference_model(const ops::SpinModel& base, const EtaSettings& settings) {
    ops::SpinModel reference = base;
    if (base.kind() == ops::ModelKind::IsingLongTrans) {
        auto params = base.ising();
        params.couplings.assign(static_cast<std::size_t>(std::max(settings.length - 1, 0)),
                                settings.ising_coupling);
        reference.params = std::move(params);
        reference.length = settings.length;
    } else {
        reference = with_length(base, settings.length);
    }
    // The spectral indicator always describes the closed chain.
    reference.include_probe_hamiltonian = true;
    reference.validate();
    return reference;
}

void SweepSpec::validate() const {
    model.validate();
    if (grid.empty()) throw config_error("sweep grid must be non-empty");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (!(grid[i] < grid[i + 1])) {
            throw config_error("sweep grid must be strictly increasing");
        }
    }
    if (realizations < 1) throw config_error("realizations must be >= 1");
    if (!(dt > 0.0)) throw config_error("dt must be positive");
    if (!(horizon > 0.0)) throw config_error("horizon must be positive");
    if (workers < 1) throw config_error("workers must be >= 1");
    const double wb = resolved_window_begin();
    const double we = resolved_window_end();
    if (!(wb >= 0.0) || !(we <= horizon * (1.0 + 1e-12)) || !(wb < we)) {
        throw config_error("fluctuation window must satisfy 0 <= begin < end <= horizon");
    }
    if (parameter != "length") {
        ops::SpinModel probe_model = model;
        apply_parameter(probe_model, parameter, grid.front());  // validates the name
    } else {
        for (const double value : grid) {
            if (value != std::floor(value) || value < 2.0) {
                throw config_error("length grid entries must be integers >= 2");
            }
        }
    }
    if (eta.enabled) {
        const auto reference = eta_reference_model(model, eta);
        sym::require_policy_compatible(reference, eta.sector);
    }
}

std::vector<double> SweepResult::column_values(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) {
        throw std::invalid_argument("column_values: no column named " + name);
    }
    const auto k = static_cast<std::size_t>(it - columns.begin());
    std::vector<double> values;
    values.reserve(rows.size());
    for (const auto& row : rows) {
        if (!row[k]) throw std::invalid_argument("column_values: missing value in " + name);
        values.push_back(*row[k]);
    }
    return values;
}

std::string to_csv(const SweepResult& result) {
    std::string out;
    for (std::size_t c = 0; c < result.columns.size(); ++c) {
        if (c > 0) out += ',';
        out += result.columns[c];
    }
    out += '\n';
    for (const auto& row : result.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out += ',';
            out += row[c] ? format_value(*row[c]) : "NA";
        }
        out += '\n';
    }
    return out;
}

SweepResult run_purity_sweep(const SweepSpec& spec) {
    spec.validate();
    if (spec.parameter == "length") {
        throw config_error("purity sweep cannot sweep 'length'");
    }
    rng::Stream master(spec.seed);
    const auto n = spec.grid.size();

    SweepResult result;
    result.columns = {"param", "mean_purity", "std_purity", "purity_norm",
                      "eta",   "one_minus_eta"};
    result.metadata = base_metadata(spec);

    dyn::EnsembleOptions options;
    options.realizations = spec.realizations;
    options.horizon = spec.horizon;
    options.dt = spec.dt;
    options.angle_uniform = spec.angle_uniform;
    options.workers = spec.workers;
    options.dim_cap = spec.dim_cap;

    std::vector<dyn::EnsembleStats> ensemble(n);
    for (std::size_t i = 0; i < n; ++i) {
        ops::SpinModel point = spec.model;
        try {
            apply_parameter(point, spec.parameter, spec.grid[i]);
            ensemble[i] = dyn::ensemble_averaged_purity(
                point, options, master.child(kLaneDynamics).child(i));
        } catch (const std::exception& e) {
            SweepResult partial = result;
            for (std::size_t k = 0; k < i; ++k) {
                partial.rows.push_back({spec.grid[k], ensemble[k].mean, ensemble[k].stddev,
                                        std::nullopt, std::nullopt, std::nullopt});
            }
            fail_at("purity-sweep", spec, i, e.what(), std::move(partial));
        }
    }

    std::vector<double> means(n);
    for (std::size_t i = 0; i < n; ++i) means[i] = ensemble[i].mean;
    const auto normalized = try_normalize(means, result.warnings);

    std::vector<double> etas;
    if (spec.eta.enabled) etas = eta_curve(spec, master, "purity-sweep");

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::optional<double>> row(6);
        row[0] = spec.grid[i];
        row[1] = ensemble[i].mean;
        row[2] = ensemble[i].stddev;
        if (normalized) row[3] = (*normalized)[i];
        if (!etas.empty()) {
            row[4] = etas[i];
            row[5] = 1.0 - etas[i];
        }
        result.rows.push_back(std::move(row));
    }

    if (normalized && !etas.empty()) {
        std::vector<double> one_minus_eta(n);
        for (std::size_t i = 0; i < n; ++i) one_minus_eta[i] = 1.0 - etas[i];
        result.metadata.stats["pearson_one_minus_eta_vs_purity_norm"] =
            stats::pearson(one_minus_eta, *normalized);
    }
    return result;
}

SweepResult run_eta_sweep(const SweepSpec& spec) {
    spec.validate();
    if (spec.parameter == "length") {
        throw config_error("eta sweep cannot sweep 'length'");
    }
    sym::require_policy_compatible(spec.model, spec.eta.sector);
    rng::Stream master(spec.seed);
    const auto n = spec.grid.size();

    SweepResult result;
    result.columns = {"param", "eta", "one_minus_eta"};
    result.metadata = base_metadata(spec);

    spectral::EtaOptions options;
    options.sector = spec.eta.sector;
    options.disorder_realizations = spec.eta.disorder_realizations;
    options.dim_cap = spec.dim_cap;

    std::vector<double> values(n);
    auto failure = run_indexed(static_cast<int>(n), spec.workers, [&](int i) {
        ops::SpinModel point = spec.model;
        apply_parameter(point, spec.parameter, spec.grid[static_cast<std::size_t>(i)]);
        values[static_cast<std::size_t>(i)] = spectral::eta_for_model(
            point, options, master.child(kLaneEta).child(static_cast<std::uint64_t>(i)));
    });
    if (failure) {
        SweepResult partial = result;
        for (std::size_t k = 0; k < failure->first; ++k) {
            partial.rows.push_back({spec.grid[k], values[k], 1.0 - values[k]});
        }
        fail_at("eta-sweep", spec, failure->first, failure->second, std::move(partial));
    }

    for (std::size_t i = 0; i < n; ++i) {
        result.rows.push_back({spec.grid[i], values[i], 1.0 - values[i]});
    }
    return result;
}

SweepResult run_fluctuation_scaling(const SweepSpec& spec) {
    spec.validate();
    if (spec.parameter != "length") {
        throw config_error("fluctuation scaling sweeps 'length'");
    }
    rng::Stream master(spec.seed);
    const auto n = spec.grid.size();
    const auto full_grid = dyn::time_grid(spec.horizon, spec.dt);
    const auto window = dyn::window_indices(full_grid, spec.resolved_window_begin(),
                                            spec.resolved_window_end());
    std::vector<double> window_times;
    window_times.reserve(window.size());
    for (const auto i : window) window_times.push_back(full_grid[i]);
    if (window_times.size() < 2) {
        throw config_error("fluctuation window holds fewer than 2 samples");
    }

    SweepResult result;
    result.columns = {"param", "delta_p", "delta_rx", "delta_ry", "delta_rz"};
    result.metadata = base_metadata(spec);

    std::vector<std::array<double, 4>> deltas(n);
    for (std::size_t i = 0; i < n; ++i) {
        try {
            const auto length = static_cast<int>(spec.grid[i]);
            const ops::SpinModel model = with_length(spec.model, length);
            const bool disorder =
                model.kind() == ops::ModelKind::HeisenbergRandomField;

            std::optional<dyn::ProbeEvolver> shared;
            if (!disorder) {
                shared.emplace(spectral::eigendecompose(
                                   ops::build_hamiltonian(model, spec.dim_cap), true),
                               length);
            }

            const auto point_stream = master.child(kLaneDynamics).child(i);
            std::vector<std::array<double, 4>> per_realization(
                static_cast<std::size_t>(spec.realizations));
            parallel_for(spec.realizations, spec.workers, [&](int r) {
                const auto realization = point_stream.child(static_cast<std::uint64_t>(r));
                auto state_stream = realization.child(0);
                auto disorder_stream = realization.child(1);

                std::optional<dyn::ProbeEvolver> local;
                if (disorder) {
                    ops::SpinModel instance = model;
                    auto& params = std::get<ops::HeisenbergParams>(instance.params);
                    params.fields = ops::sample_random_fields(length, params.field_bound,
                                                              disorder_stream);
                    local.emplace(spectral::eigendecompose(
                                      ops::build_hamiltonian(instance, spec.dim_cap), true),
                                  length);
                }
                const dyn::ProbeEvolver& evolver = disorder ? *local : *shared;
                const Vector psi0 =
                    dyn::random_product_state(length, state_stream, spec.angle_uniform);
                const auto traj = evolver.trajectory(psi0, window_times);

                std::array<std::vector<double>, 4> series;
                for (auto& s : series) s.reserve(traj.times.size());
                for (std::size_t k = 0; k < traj.times.size(); ++k) {
                    series[0].push_back(traj.purity[k]);
                    series[1].push_back(traj.bloch[k][0]);
                    series[2].push_back(traj.bloch[k][1]);
                    series[3].push_back(traj.bloch[k][2]);
                }
                auto& slot = per_realization[static_cast<std::size_t>(r)];
                for (std::size_t c = 0; c < 4; ++c) slot[c] = dyn::fluctuation(series[c]);
            });

            auto& row = deltas[i];
            row.fill(0.0);
            for (const auto& value : per_realization) {
                for (std::size_t c = 0; c < 4; ++c) row[c] += value[c];
            }
            for (std::size_t c = 0; c < 4; ++c) {
                row[c] /= static_cast<double>(spec.realizations);
            }
        } catch (const std::exception& e) {
            SweepResult partial = result;
            for (std::size_t k = 0; k < i; ++k) {
                partial.rows.push_back({spec.grid[k], deltas[k][0], deltas[k][1],
                                        deltas[k][2], deltas[k][3]});
            }
            fail_at("fluctuations", spec, i, e.what(), std::move(partial));
        }
    }

    for (std::size_t i = 0; i < n; ++i) {
        result.rows.push_back(
            {spec.grid[i], deltas[i][0], deltas[i][1], deltas[i][2], deltas[i][3]});
    }

    if (n >= 2) {
        std::vector<double> log2_delta(n);
        bool positive = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (deltas[i][0] <= 0.0) {
                positive = false;
                break;
            }
            log2_delta[i] = std::log2(deltas[i][0]);
        }
        if (positive) {
            result.metadata.stats["slope_log2_delta_p_vs_length"] =
                stats::linear_slope(spec.grid, log2_delta);
        } else {
            result.warnings.emplace_back("slope skipped: nonpositive fluctuation value");
        }
    }
    return result;
}

SweepResult run_control_sweep(const SweepSpec& spec, const ControlSettings& settings) {
    spec.validate();
    if (spec.parameter == "length") {
        throw config_error("control sweep cannot sweep 'length'");
    }
    if (settings.steps < 1) throw config_error("control steps must be >= 1");
    if (!(settings.horizon > 0.0)) throw config_error("control horizon must be positive");
    if (settings.amplitude_min > settings.amplitude_max) {
        throw config_error("control amplitude bounds inverted");
    }
    if (settings.random_starts < 0) throw config_error("random_starts must be >= 0");
    if (settings.max_iterations < 1) throw config_error("max_iterations must be >= 1");
    if (settings.target == ControlSettings::Target::Bell && spec.model.length < 2) {
        throw config_error("entangling target needs at least 2 sites");
    }

    rng::Stream master(spec.seed);
    const auto n = spec.grid.size();
    const int length = spec.model.length;

    // One fixed random environment draw for the whole sweep.
    auto state_stream = master.child(kLaneControlState);
    Vector initial;
    if (settings.initial == ControlSettings::InitialState::ProbeZeroRestRandom) {
        if (length < 2) throw config_error("transfer initial state needs at least 2 sites");
        const Vector rest =
            dyn::random_product_state(length - 1, state_stream, spec.angle_uniform);
        initial = Vector::Zero(Index{1} << length);
        initial.head(rest.size()) = rest;  // probe |0> occupies the top block
    } else {
        initial = dyn::random_product_state(length, state_stream, spec.angle_uniform);
    }

    Vector target;
    if (settings.target == ControlSettings::Target::Transfer) {
        target = Vector::Zero(2);
        target(1) = 1.0;
    } else {
        target = Vector::Zero(4);
        target(0) = target(3) = 1.0 / std::numbers::sqrt2;
    }

    ctrl::OptimizeOptions optimize_options;
    optimize_options.random_starts = settings.random_starts;
    optimize_options.max_iterations = settings.max_iterations;

    SweepResult result;
    result.columns = {"param", "best_fidelity", "eta", "one_minus_eta"};
    result.metadata = base_metadata(spec);

    std::vector<double> fidelities(n);
    auto failure = run_indexed(static_cast<int>(n), spec.workers, [&](int i) {
        ops::SpinModel point = spec.model;
        apply_parameter(point, spec.parameter, spec.grid[static_cast<std::size_t>(i)]);
        ctrl::ControlProblem problem;
        problem.model = point;
        problem.target = target;
        problem.initial_state = initial;
        problem.horizon = settings.horizon;
        problem.steps = settings.steps;
        problem.amplitude_min = settings.amplitude_min;
        problem.amplitude_max = settings.amplitude_max;
        const auto control_result = ctrl::optimize(
            problem, optimize_options,
            master.child(kLaneOptimizer).child(static_cast<std::uint64_t>(i)));
        fidelities[static_cast<std::size_t>(i)] = control_result.best_fidelity;
    });
    if (failure) {
        SweepResult partial = result;
        for (std::size_t k = 0; k < failure->first; ++k) {
            partial.rows.push_back({spec.grid[k], fidelities[k], std::nullopt, std::nullopt});
        }
        fail_at("control-sweep", spec, failure->first, failure->second, std::move(partial));
    }

    std::vector<double> etas;
    if (spec.eta.enabled) etas = eta_curve(spec, master, "control-sweep");

    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::optional<double>> row(4);
        row[0] = spec.grid[i];
        row[1] = fidelities[i];
        if (!etas.empty()) {
            row[2] = etas[i];
            row[3] = 1.0 - etas[i];
        }
        result.rows.push_back(std::move(row));
    }

    if (!etas.empty() && n >= 2) {
        result.metadata.stats["spearman_eta_vs_fidelity"] =
            stats::spearman(etas, fidelities);
    }
    return result;
}

SweepResult run_temperature_sweep(const SweepSpec& spec, std::span<const double> betas) {
    spec.validate();
    if (spec.parameter == "length") {
        throw config_error("temperature sweep cannot sweep 'length'");
    }
    if (spec.model.kind() != ops::ModelKind::IsingLongTrans) {
        throw config_error("temperature sweep requires the Ising model");
    }
    if (betas.empty()) throw config_error("temperature sweep needs at least one beta");
    for (const double beta : betas) {
        if (!(beta >= 0.0)) throw config_error("beta values must be nonnegative");
    }

    rng::Stream master(spec.seed);
    const auto n = spec.grid.size();

    SweepResult result;
    result.columns = {"beta", "param",         "mean_purity", "std_purity",
                      "purity_norm", "eta",    "one_minus_eta"};
    result.metadata = base_metadata(spec);

    std::vector<double> etas;
    if (spec.eta.enabled) etas = eta_curve(spec, master, "temperature-sweep");

    dyn::EnsembleOptions options;
    options.realizations = spec.realizations;
    options.horizon = spec.horizon;
    options.dt = spec.dt;
    options.angle_uniform = spec.angle_uniform;
    options.workers = spec.workers;
    options.dim_cap = spec.dim_cap;

    for (std::size_t b = 0; b < betas.size(); ++b) {
        options.environment_beta = betas[b];
        std::vector<dyn::EnsembleStats> ensemble(n);
        for (std::size_t i = 0; i < n; ++i) {
            ops::SpinModel point = spec.model;
            try {
                apply_parameter(point, spec.parameter, spec.grid[i]);
                ensemble[i] = dyn::ensemble_averaged_purity(
                    point, options, master.child(kLaneDynamics).child(b).child(i));
            } catch (const std::exception& e) {
                fail_at("temperature-sweep", spec, i, e.what(),
                        prefix_rows(result, result.rows.size()));
            }
        }

        std::vector<double> means(n);
        for (std::size_t i = 0; i < n; ++i) means[i] = ensemble[i].mean;
        const auto normalized = try_normalize(means, result.warnings);

        for (std::size_t i = 0; i < n; ++i) {
            std::vector<std::optional<double>> row(7);
            row[0] = betas[b];
            row[1] = spec.grid[i];
            row[2] = ensemble[i].mean;
            row[3] = ensemble[i].stddev;
            if (normalized) row[4] = (*normalized)[i];
            if (!etas.empty()) {
                row[5] = etas[i];
                row[6] = 1.0 - etas[i];
            }
            result.rows.push_back(std::move(row));
        }

        if (normalized && !etas.empty() && n >= 2) {
            std::vector<double> one_minus_eta(n);
            for (std::size_t i = 0; i < n; ++i) one_minus_eta[i] = 1.0 - etas[i];
            result.metadata.stats["spearman_purity_norm_vs_one_minus_eta_beta" +
                                  std::to_string(b)] =
                stats::spearman(*normalized, one_minus_eta);
        }
    }
    return result;
}

}  // namespace spinchaos::sweep
