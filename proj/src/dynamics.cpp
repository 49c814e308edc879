#include "spinchaos/dynamics.hpp"

#include "spinchaos/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinchaos::dyn {

namespace {

using Index = Eigen::Index;

constexpr Index kTimeChunk = 256;

BlochPurity bloch_from_entries(double rho00, double rho11, Complex rho01) {
    BlochPurity out;
    out.bloch[0] = 2.0 * rho01.real();
    out.bloch[1] = -2.0 * rho01.imag();
    out.bloch[2] = rho00 - rho11;
    out.purity = rho00 * rho00 + rho11 * rho11 + 2.0 * std::norm(rho01);
    return out;
}

void append_sample(ProbeTrajectory& traj, double t, const BlochPurity& bp) {
    traj.times.push_back(t);
    traj.bloch.push_back(bp.bloch);
    traj.purity.push_back(bp.purity);
}

void require_vectors(const spectral::SpectralData& data, const char* where) {
    if (!data.has_vectors()) {
        throw std::invalid_argument(std::string(where) + ": eigenvectors required");
    }
}

}  // namespace

Vector random_product_state(int length, rng::Stream& stream, bool angle_uniform) {
    if (length < 1) throw std::invalid_argument("random_product_state: length must be >= 1");
    Vector state = Vector::Ones(1);
    for (int site = 1; site <= length; ++site) {
        const double u = stream.uniform();
        const double theta =
            angle_uniform ? u * std::numbers::pi : std::acos(1.0 - 2.0 * u);
        const double phi = stream.uniform(0.0, 2.0 * std::numbers::pi);
        Eigen::Vector2cd qubit;
        qubit << std::cos(0.5 * theta),
            std::polar(std::sin(0.5 * theta), phi);
        Vector next(state.size() * 2);
        next.head(state.size()) = state * qubit(0);
        next.tail(state.size()) = state * qubit(1);
        state.swap(next);
    }
    return state;
}

std::vector<double> time_grid(double horizon, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("time_grid: dt must be positive");
    if (horizon < 0.0) throw std::invalid_argument("time_grid: horizon must be nonnegative");
    const auto steps = static_cast<std::size_t>(std::llround(horizon / dt));
    std::vector<double> times(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i) times[i] = static_cast<double>(i) * dt;
    return times;
}

Matrix evolve_state(const spectral::SpectralData& data, const Vector& psi0,
                    std::span<const double> times) {
    require_vectors(data, "evolve_state");
    if (psi0.size() != data.dim()) {
        throw std::invalid_argument("evolve_state: state dimension mismatch");
    }
    const Index dim = data.dim();
    const auto n_times = static_cast<Index>(times.size());
    const Vector coeffs = data.eigenvectors.adjoint() * psi0;

    Matrix result(dim, n_times);
    Matrix phases(dim, std::min(kTimeChunk, n_times));
    for (Index start = 0; start < n_times; start += kTimeChunk) {
        const Index chunk = std::min(kTimeChunk, n_times - start);
        for (Index k = 0; k < chunk; ++k) {
            const double t = times[static_cast<std::size_t>(start + k)];
            for (Index m = 0; m < dim; ++m) {
                phases(m, k) = std::polar(1.0, -data.eigenvalues(m) * t) * coeffs(m);
            }
        }
        result.middleCols(start, chunk) = data.eigenvectors * phases.leftCols(chunk);
    }
    return result;
}

std::vector<Matrix> evolve_density(const spectral::SpectralData& data, const Matrix& rho0,
                                   std::span<const double> times) {
    require_vectors(data, "evolve_density");
    if (rho0.rows() != data.dim() || rho0.cols() != data.dim()) {
        throw std::invalid_argument("evolve_density: state dimension mismatch");
    }
    const Index dim = data.dim();
    const Matrix rho_eig = data.eigenvectors.adjoint() * rho0 * data.eigenvectors;

    std::vector<Matrix> result;
    result.reserve(times.size());
    Vector phase(dim);
    for (const double t : times) {
        for (Index m = 0; m < dim; ++m) phase(m) = std::polar(1.0, -data.eigenvalues(m) * t);
        const Matrix rotated =
            phase.asDiagonal() * rho_eig * phase.conjugate().asDiagonal();
        result.push_back(data.eigenvectors * rotated * data.eigenvectors.adjoint());
    }
    return result;
}

Matrix reduce_to_leading_sites(const Vector& state, int length, int n_sites) {
    if (n_sites < 1 || n_sites > length) {
        throw std::invalid_argument("reduce_to_leading_sites: n_sites out of range");
    }
    const Index dim = Index{1} << length;
    if (state.size() != dim) {
        throw std::invalid_argument("reduce_to_leading_sites: state dimension mismatch");
    }
    const Index sub = Index{1} << n_sites;
    const Index env = dim / sub;
    Matrix rho(sub, sub);
    for (Index a = 0; a < sub; ++a) {
        for (Index b = 0; b <= a; ++b) {
            // Eigen's dot conjugates its left argument.
            const Complex value = state.segment(b * env, env).dot(state.segment(a * env, env));
            rho(a, b) = value;
            rho(b, a) = std::conj(value);
        }
    }
    return rho;
}

Matrix reduce_to_probe(const Vector& state, int length) {
    return reduce_to_leading_sites(state, length, 1);
}

Matrix reduce_to_probe(const Matrix& rho, int length) {
    const Index dim = Index{1} << length;
    if (rho.rows() != dim || rho.cols() != dim) {
        throw std::invalid_argument("reduce_to_probe: density matrix dimension mismatch");
    }
    const Index half = dim / 2;
    Matrix out(2, 2);
    for (Index a = 0; a < 2; ++a) {
        for (Index b = 0; b < 2; ++b) {
            out(a, b) = rho.block(a * half, b * half, half, half).trace();
        }
    }
    return out;
}

BlochPurity bloch_and_purity(const Matrix& rho) {
    if (rho.rows() != 2 || rho.cols() != 2) {
        throw std::invalid_argument("bloch_and_purity: expected a 2x2 density matrix");
    }
    return bloch_from_entries(rho(0, 0).real(), rho(1, 1).real(), rho(0, 1));
}

ProbeEvolver::ProbeEvolver(spectral::SpectralData data, int length)
    : data_(std::move(data)), length_(length) {
    require_vectors(data_, "ProbeEvolver");
    if (data_.dim() != (Index{1} << length)) {
        throw std::invalid_argument("ProbeEvolver: dimension does not match 2^L");
    }
    half_ = data_.dim() / 2;
}

void ProbeEvolver::ensure_overlap_blocks() const {
    std::call_once(overlap_once_, [this] {
        const auto& v = data_.eigenvectors;
        const Matrix top = v.topRows(half_);     // probe up
        const Matrix bottom = v.bottomRows(half_);  // probe down
        overlap_[0] = top.adjoint() * top;        // W_00
        overlap_[1] = bottom.adjoint() * bottom;  // W_11
        overlap_[2] = bottom.adjoint() * top;     // W_01 = V_1† V_0
    });
}

ProbeTrajectory ProbeEvolver::trajectory(const Vector& psi0,
                                         std::span<const double> times) const {
    if (psi0.size() != data_.dim()) {
        throw std::invalid_argument("ProbeEvolver::trajectory: state dimension mismatch");
    }
    const Index dim = data_.dim();
    const auto n_times = static_cast<Index>(times.size());
    const Vector coeffs = data_.eigenvectors.adjoint() * psi0;

    ProbeTrajectory traj;
    traj.times.reserve(times.size());
    traj.bloch.reserve(times.size());
    traj.purity.reserve(times.size());

    Matrix phases(dim, std::min(kTimeChunk, n_times));
    for (Index start = 0; start < n_times; start += kTimeChunk) {
        const Index chunk = std::min(kTimeChunk, n_times - start);
        for (Index k = 0; k < chunk; ++k) {
            const double t = times[static_cast<std::size_t>(start + k)];
            for (Index m = 0; m < dim; ++m) {
                phases(m, k) = std::polar(1.0, -data_.eigenvalues(m) * t) * coeffs(m);
            }
        }
        const Matrix states = data_.eigenvectors * phases.leftCols(chunk);
        for (Index k = 0; k < chunk; ++k) {
            const auto up = states.col(k).head(half_);
            const auto down = states.col(k).tail(half_);
            const Complex rho01 = down.dot(up);  // sum_j psi_up conj(psi_down)
            append_sample(traj, times[static_cast<std::size_t>(start + k)],
                          bloch_from_entries(up.squaredNorm(), down.squaredNorm(), rho01));
        }
    }
    return traj;
}

ProbeTrajectory ProbeEvolver::trajectory(const Matrix& rho0,
                                         std::span<const double> times) const {
    if (rho0.rows() != data_.dim() || rho0.cols() != data_.dim()) {
        throw std::invalid_argument("ProbeEvolver::trajectory: state dimension mismatch");
    }
    ensure_overlap_blocks();
    const Index dim = data_.dim();
    const auto n_times = static_cast<Index>(times.size());
    const Matrix rho_eig = data_.eigenvectors.adjoint() * rho0 * data_.eigenvectors;

    // rho~_ab(t) = u(t)† M_ab u(t) with u_n = exp(+i E_n t) and
    // M_ab = rho_eig ⊙ W_ab^T.
    std::array<Matrix, 3> weighted;
    for (int i = 0; i < 3; ++i) {
        weighted[static_cast<std::size_t>(i)] =
            rho_eig.cwiseProduct(overlap_[static_cast<std::size_t>(i)].transpose());
    }

    ProbeTrajectory traj;
    traj.times.reserve(times.size());
    traj.bloch.reserve(times.size());
    traj.purity.reserve(times.size());

    Matrix u(dim, std::min(kTimeChunk, n_times));
    for (Index start = 0; start < n_times; start += kTimeChunk) {
        const Index chunk = std::min(kTimeChunk, n_times - start);
        for (Index k = 0; k < chunk; ++k) {
            const double t = times[static_cast<std::size_t>(start + k)];
            for (Index m = 0; m < dim; ++m) {
                u(m, k) = std::polar(1.0, data_.eigenvalues(m) * t);
            }
        }
        std::array<Matrix, 3> projected;
        for (std::size_t i = 0; i < 3; ++i) projected[i] = weighted[i] * u.leftCols(chunk);
        for (Index k = 0; k < chunk; ++k) {
            const Complex rho00 = u.col(k).dot(projected[0].col(k));
            const Complex rho11 = u.col(k).dot(projected[1].col(k));
            const Complex rho01 = u.col(k).dot(projected[2].col(k));
            append_sample(traj, times[static_cast<std::size_t>(start + k)],
                          bloch_from_entries(rho00.real(), rho11.real(), rho01));
        }
    }
    return traj;
}

std::vector<std::size_t> window_indices(std::span<const double> times, double window_begin,
                                        double window_end) {
    const double eps = 1e-9 * std::max(1.0, std::abs(window_end));
    std::vector<std::size_t> indices;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] >= window_begin - eps && times[i] <= window_end + eps) {
            indices.push_back(i);
        }
    }
    return indices;
}

double time_averaged_purity(const ProbeTrajectory& trajectory, double window_begin,
                            double window_end) {
    const auto indices = window_indices(trajectory.times, window_begin, window_end);
    if (indices.size() < 2) {
        throw std::invalid_argument("time_averaged_purity: window holds fewer than 2 samples");
    }
    double integral = 0.0;
    for (std::size_t k = 0; k + 1 < indices.size(); ++k) {
        const std::size_t i = indices[k];
        const std::size_t j = indices[k + 1];
        integral += 0.5 * (trajectory.purity[i] + trajectory.purity[j]) *
                    (trajectory.times[j] - trajectory.times[i]);
    }
    const double span = trajectory.times[indices.back()] - trajectory.times[indices.front()];
    if (span <= 0.0) {
        throw std::invalid_argument("time_averaged_purity: empty window");
    }
    return integral / span;
}

double fluctuation(std::span<const double> samples) {
    if (samples.size() < 2) {
        throw std::invalid_argument("fluctuation: need at least 2 samples");
    }
    double mean = 0.0;
    for (const double x : samples) mean += x;
    mean /= static_cast<double>(samples.size());
    double var = 0.0;
    for (const double x : samples) var += (x - mean) * (x - mean);
    var /= static_cast<double>(samples.size());
    return std::sqrt(std::max(var, 0.0));
}

EnsembleStats ensemble_averaged_purity(const ops::SpinModel& model,
                                       const EnsembleOptions& options, rng::Stream stream) {
    if (options.realizations < 1) {
        throw std::invalid_argument("ensemble_averaged_purity: realizations must be >= 1");
    }
    model.validate();
    const auto times = time_grid(options.horizon, options.dt);
    const bool disorder = model.kind() == ops::ModelKind::HeisenbergRandomField;

    // Deterministic models share one diagonalization across realizations.
    std::optional<ProbeEvolver> shared_evolver;
    std::optional<Matrix> shared_env;
    if (!disorder) {
        shared_evolver.emplace(
            spectral::eigendecompose(ops::build_hamiltonian(model, options.dim_cap), true),
            model.length);
        if (options.environment_beta) {
            shared_env = gibbs_environment_state(model, *options.environment_beta,
                                                 options.dim_cap);
        }
    }

    std::vector<double> values(static_cast<std::size_t>(options.realizations));
    parallel_for(options.realizations, options.workers, [&](int r) {
        const auto realization = stream.child(static_cast<std::uint64_t>(r));
        auto state_stream = realization.child(0);
        auto disorder_stream = realization.child(1);

        ops::SpinModel instance = model;
        std::optional<ProbeEvolver> local_evolver;
        std::optional<Matrix> local_env;
        if (disorder) {
            auto& params = std::get<ops::HeisenbergParams>(instance.params);
            params.fields = ops::sample_random_fields(instance.length, params.field_bound,
                                                      disorder_stream);
            local_evolver.emplace(
                spectral::eigendecompose(ops::build_hamiltonian(instance, options.dim_cap),
                                         true),
                instance.length);
            if (options.environment_beta) {
                local_env = gibbs_environment_state(instance, *options.environment_beta,
                                                    options.dim_cap);
            }
        }
        const ProbeEvolver& evolver = disorder ? *local_evolver : *shared_evolver;

        ProbeTrajectory traj;
        if (options.environment_beta) {
            const Matrix& env = disorder ? *local_env : *shared_env;
            const Vector probe =
                random_product_state(1, state_stream, options.angle_uniform);
            const Index half = env.rows();
            Matrix rho0(2 * half, 2 * half);
            for (Index a = 0; a < 2; ++a) {
                for (Index b = 0; b < 2; ++b) {
                    rho0.block(a * half, b * half, half, half) =
                        (probe(a) * std::conj(probe(b))) * env;
                }
            }
            traj = evolver.trajectory(rho0, times);
        } else {
            const Vector psi0 =
                random_product_state(instance.length, state_stream, options.angle_uniform);
            traj = evolver.trajectory(psi0, times);
        }
        values[static_cast<std::size_t>(r)] = time_averaged_purity(traj, 0.0, options.horizon);
    });

    EnsembleStats stats;
    stats.realizations = options.realizations;
    stats.mean = 0.0;
    for (const double v : values) stats.mean += v;
    stats.mean /= static_cast<double>(values.size());
    double var = 0.0;
    for (const double v : values) var += (v - stats.mean) * (v - stats.mean);
    stats.stddev = std::sqrt(var / static_cast<double>(values.size()));
    return stats;
}

std::vector<double> normalize_curve(std::span<const double> values) {
    if (values.size() < 2) {
        throw std::invalid_argument("normalize_curve: need at least 2 values");
    }
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (!(hi > lo)) {
        throw numeric_error("normalize_curve: degenerate range (max == min)");
    }
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - lo) / (hi - lo);
    return out;
}

ops::SpinModel environment_model(const ops::SpinModel& model) {
    using ops::ModelKind;
    const int env_length = model.length - 1;
    switch (model.kind()) {
        case ModelKind::IsingLongTrans: {
            const auto& p = model.ising();
            std::vector<double> couplings(p.couplings.begin() + (p.couplings.empty() ? 0 : 1),
                                          p.couplings.end());
            return ops::SpinModel::ising(env_length, p.h_x, p.h_z, std::move(couplings));
        }
        case ModelKind::TiltedIsing: {
            const auto& p = model.tilted();
            return ops::SpinModel::tilted_ising(env_length, p.field, p.theta, p.coupling);
        }
        case ModelKind::HeisenbergRandomField: {
            const auto& p = model.heisenberg();
            return ops::SpinModel::heisenberg(
                env_length, p.field_bound,
                std::vector<double>(p.fields.begin() + 1, p.fields.end()));
        }
        case ModelKind::PerturbedXxz: {
            const auto& p = model.xxz();
            return ops::SpinModel::xxz(env_length, p.anisotropy, p.perturbation);
        }
    }
    throw std::invalid_argument("environment_model: unknown model kind");
}

Matrix gibbs_environment_state(const ops::SpinModel& model, double beta,
                               std::size_t dim_cap) {
    if (beta < 0.0) {
        throw std::invalid_argument("gibbs_environment_state: beta must be >= 0");
    }
    const auto env = environment_model(model);
    const auto data =
        spectral::eigendecompose(ops::build_hamiltonian(env, dim_cap), true);
    const Index dim = data.dim();
    // Shifted spectrum: weights exp(-beta (E - E_min)) never overflow.
    Eigen::VectorXd weights(dim);
    const double ground = data.eigenvalues(0);
    for (Index m = 0; m < dim; ++m) {
        weights(m) = std::exp(-beta * (data.eigenvalues(m) - ground));
    }
    const double partition = weights.sum();
    if (!(partition > 0.0) || !std::isfinite(partition)) {
        throw numeric_error("gibbs_environment_state: partition function not finite");
    }
    return data.eigenvectors * (weights / partition).asDiagonal() *
           data.eigenvectors.adjoint();
}

Eigen::Vector3d EigenbasisExpansion::evaluate(double t) const {
    std::array<Complex, 3> sum{};
    for (const auto& mode : modes) {
        const Complex phase = std::polar(1.0, -mode.frequency * t);
        for (std::size_t i = 0; i < 3; ++i) sum[i] += mode.amplitude[i] * phase;
    }
    Eigen::Vector3d r = stationary;
    for (std::size_t i = 0; i < 3; ++i) r[static_cast<Index>(i)] += sum[i].real();
    return r;
}

EigenbasisExpansion bloch_eigenbasis_expansion(const spectral::SpectralData& data,
                                               const Vector& psi0, int length) {
    require_vectors(data, "bloch_eigenbasis_expansion");
    if (psi0.size() != data.dim()) {
        throw std::invalid_argument("bloch_eigenbasis_expansion: state dimension mismatch");
    }
    const Index dim = data.dim();

    EigenbasisExpansion expansion;
    expansion.overlaps = data.eigenvectors.adjoint() * psi0;

    std::array<Matrix, 3> pauli_eig;
    const std::array<ops::Axis, 3> axes{ops::Axis::X, ops::Axis::Y, ops::Axis::Z};
    for (std::size_t i = 0; i < 3; ++i) {
        const Matrix op = ops::site_operator(axes[i], 1, length);
        pauli_eig[i] = data.eigenvectors.adjoint() * op * data.eigenvectors;
    }

    expansion.stationary.setZero();
    for (Index n = 0; n < dim; ++n) {
        const double weight = std::norm(expansion.overlaps(n));
        for (std::size_t i = 0; i < 3; ++i) {
            expansion.stationary[static_cast<Index>(i)] +=
                weight * pauli_eig[i](n, n).real();
        }
    }

    constexpr double kAmplitudeFloor = 1e-14;
    for (Index m = 0; m < dim; ++m) {
        for (Index n = 0; n < dim; ++n) {
            if (m == n) continue;
            const Complex weight = std::conj(expansion.overlaps(m)) * expansion.overlaps(n);
            std::array<Complex, 3> amplitude;
            double magnitude = 0.0;
            for (std::size_t i = 0; i < 3; ++i) {
                amplitude[i] = weight * pauli_eig[i](m, n);
                magnitude = std::max(magnitude, std::abs(amplitude[i]));
            }
            if (magnitude <= kAmplitudeFloor) continue;
            expansion.modes.push_back(EigenbasisExpansion::Mode{
                m, n, data.eigenvalues(n) - data.eigenvalues(m), amplitude});
        }
    }
    return expansion;
}

}  // namespace spinchaos::dyn
