#include "spinchaos/control.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinchaos::ctrl {

namespace {

using Index = Eigen::Index;

constexpr double kAmplitudeQuantum = 1e-12;

long long quantize(double amplitude) {
    return std::llround(amplitude / kAmplitudeQuantum);
}

// Minimizes f over the amplitude box with projected BFGS and central
// finite-difference gradients. Returns the best iterate seen.
struct BoxedBfgs {
    double lo, hi;
    int max_iterations;
    double gradient_step;
    double relative_tolerance;

    template <typename F>
    std::pair<Eigen::VectorXd, double> minimize(const F& f, Eigen::VectorXd x) const {
        const auto n = x.size();
        clamp(x);
        double fx = f(x);
        Eigen::VectorXd grad = gradient(f, x);
        Eigen::MatrixXd inv_hessian = Eigen::MatrixXd::Identity(n, n);

        Eigen::VectorXd best_x = x;
        double best_f = fx;

        for (int iter = 0; iter < max_iterations; ++iter) {
            Eigen::VectorXd direction = -(inv_hessian * grad);
            if (direction.dot(grad) > -1e-15) direction = -grad;  // keep descent

            // Backtracking line search on the projected step.
            double step = 1.0;
            Eigen::VectorXd x_new;
            double f_new = fx;
            bool improved = false;
            for (int ls = 0; ls < 40; ++ls) {
                x_new = x + step * direction;
                clamp(x_new);
                const Eigen::VectorXd displacement = x_new - x;
                if (displacement.lpNorm<Eigen::Infinity>() == 0.0) break;
                f_new = f(x_new);
                if (f_new <= fx + 1e-4 * grad.dot(displacement)) {
                    improved = true;
                    break;
                }
                step *= 0.5;
            }
            if (!improved) break;

            const Eigen::VectorXd s = x_new - x;
            const Eigen::VectorXd grad_new = gradient(f, x_new);
            const Eigen::VectorXd y = grad_new - grad;

            const bool converged =
                std::abs(fx - f_new) <= relative_tolerance * std::max(1.0, std::abs(fx));

            x = x_new;
            fx = f_new;
            grad = grad_new;
            if (fx < best_f) {
                best_f = fx;
                best_x = x;
            }
            if (converged) break;

            const double sy = s.dot(y);
            if (sy > 1e-12 * s.norm() * y.norm()) {
                const double rho = 1.0 / sy;
                const Eigen::MatrixXd identity = Eigen::MatrixXd::Identity(n, n);
                inv_hessian = (identity - rho * s * y.transpose()) * inv_hessian *
                                  (identity - rho * y * s.transpose()) +
                              rho * s * s.transpose();
            }
        }
        return {best_x, best_f};
    }

    void clamp(Eigen::VectorXd& x) const {
        for (Index i = 0; i < x.size(); ++i) x(i) = std::clamp(x(i), lo, hi);
    }

    template <typename F>
    Eigen::VectorXd gradient(const F& f, const Eigen::VectorXd& x) const {
        Eigen::VectorXd grad(x.size());
        Eigen::VectorXd probe = x;
        for (Index i = 0; i < x.size(); ++i) {
            const double up = std::min(gradient_step, hi - x(i));
            const double down = std::min(gradient_step, x(i) - lo);
            if (up + down <= 0.0) {
                grad(i) = 0.0;
                continue;
            }
            probe(i) = x(i) + up;
            const double f_up = f(probe);
            probe(i) = x(i) - down;
            const double f_down = f(probe);
            probe(i) = x(i);
            grad(i) = (f_up - f_down) / (up + down);
        }
        return grad;
    }
};

}  // namespace

Matrix ControlProblem::resolved_control_operator() const {
    if (control_operator.size() != 0) return control_operator;
    return ops::site_operator(ops::Axis::Z, 1, model.length);
}

void ControlProblem::validate() const {
    model.validate();
    if (steps < 1) throw std::invalid_argument("ControlProblem: steps must be >= 1");
    if (amplitude_min > amplitude_max) {
        throw std::invalid_argument("ControlProblem: amplitude bounds inverted");
    }
    if (!(horizon > 0.0)) throw std::invalid_argument("ControlProblem: horizon must be > 0");
    const auto dim = Index{1} << model.length;
    if (initial_state.size() != dim) {
        throw std::invalid_argument("ControlProblem: initial state dimension mismatch");
    }
    if (target.size() != 2 && target.size() != 4 && target.size() != dim) {
        throw std::invalid_argument("ControlProblem: target must live on 1 or 2 sites or "
                                    "the full chain");
    }
    if (std::abs(target.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("ControlProblem: target must be normalized");
    }
    const Matrix hc = resolved_control_operator();
    if (hc.rows() != dim || hc.cols() != dim) {
        throw std::invalid_argument("ControlProblem: control operator dimension mismatch");
    }
}

PiecewisePropagator::PiecewisePropagator(const ControlProblem& problem, std::size_t dim_cap) {
    problem.validate();
    drift_ = ops::build_hamiltonian(problem.model, dim_cap);
    control_ = problem.resolved_control_operator();
    require_hermitian(control_, 1e-12);
    initial_ = problem.initial_state;
    step_dt_ = problem.horizon / problem.steps;
    steps_ = problem.steps;
    amplitude_min_ = problem.amplitude_min;
    amplitude_max_ = problem.amplitude_max;
    // Large enough to hold a full finite-difference sweep around one iterate.
    cache_cap_ = static_cast<std::size_t>(8 * problem.steps + 16);
}

const spectral::SpectralData& PiecewisePropagator::step_data(double amplitude) const {
    const long long key = quantize(amplitude);
    if (const auto found = cache_.find(key); found != cache_.end()) return found->second;
    if (cache_.size() >= cache_cap_) cache_.clear();
    const double quantized = static_cast<double>(key) * kAmplitudeQuantum;
    auto [it, inserted] =
        cache_.emplace(key, spectral::eigendecompose(drift_ + quantized * control_, true));
    return it->second;
}

Vector PiecewisePropagator::propagate(std::span<const double> amplitudes) const {
    if (static_cast<int>(amplitudes.size()) != steps_) {
        throw std::invalid_argument("propagate: amplitude count must equal steps");
    }
    const double slack = 1e-9 * std::max(1.0, std::abs(amplitude_max_ - amplitude_min_));
    for (const double a : amplitudes) {
        if (a < amplitude_min_ - slack || a > amplitude_max_ + slack) {
            throw std::invalid_argument("propagate: amplitude outside bounds");
        }
    }
    ++evaluations_;
    Vector state = initial_;
    Vector rotated(state.size());
    for (const double a : amplitudes) {
        const auto& data = step_data(a);
        rotated = data.eigenvectors.adjoint() * state;
        for (Index m = 0; m < rotated.size(); ++m) {
            rotated(m) *= std::polar(1.0, -data.eigenvalues(m) * step_dt_);
        }
        state = data.eigenvectors * rotated;
    }
    return state;
}

Vector propagate_piecewise(const ControlProblem& problem,
                           std::span<const double> amplitudes) {
    return PiecewisePropagator(problem).propagate(amplitudes);
}

double fidelity(const Vector& final_state, const ControlProblem& problem) {
    const auto dim = Index{1} << problem.model.length;
    if (final_state.size() != dim) {
        throw std::invalid_argument("fidelity: state dimension mismatch");
    }
    const auto& target = problem.target;
    double value;
    if (target.size() == dim) {
        value = std::norm(target.dot(final_state));
    } else {
        const int n_sites = target.size() == 2 ? 1 : 2;
        const Matrix rho =
            dyn::reduce_to_leading_sites(final_state, problem.model.length, n_sites);
        value = (target.adjoint() * rho * target)(0).real();
    }
    return std::clamp(value, 0.0, 1.0);
}

ControlResult optimize(const ControlProblem& problem, const OptimizeOptions& options,
                       rng::Stream stream) {
    if (options.random_starts < 0) {
        throw std::invalid_argument("optimize: random_starts must be >= 0");
    }
    problem.validate();
    PiecewisePropagator propagator(problem);

    std::vector<double> buffer(static_cast<std::size_t>(problem.steps));
    const auto objective = [&](const Eigen::VectorXd& amplitudes) {
        for (Index i = 0; i < amplitudes.size(); ++i) {
            buffer[static_cast<std::size_t>(i)] = amplitudes(i);
        }
        return -fidelity(propagator.propagate(buffer), problem);
    };

    const BoxedBfgs search{problem.amplitude_min, problem.amplitude_max,
                           options.max_iterations, options.gradient_step,
                           options.relative_tolerance};

    ControlResult result;
    result.start_fidelities.reserve(static_cast<std::size_t>(options.random_starts + 1));
    for (int start = 0; start <= options.random_starts; ++start) {
        Eigen::VectorXd x0(problem.steps);
        if (start == 0) {
            x0.setZero();
        } else {
            auto start_stream = stream.child(static_cast<std::uint64_t>(start));
            for (Index i = 0; i < x0.size(); ++i) {
                x0(i) = start_stream.uniform(problem.amplitude_min, problem.amplitude_max);
            }
        }
        const auto [best_x, best_neg] = search.minimize(objective, x0);
        const double best = -best_neg;
        result.start_fidelities.push_back(best);
        if (start == 0 || best > result.best_fidelity) {
            result.best_fidelity = best;
            result.best_amplitudes.assign(best_x.data(), best_x.data() + best_x.size());
        }
    }
    result.evaluations = propagator.evaluations();
    return result;
}

std::vector<EtaFidelityRow> fidelity_vs_eta(std::span<const double> grid,
                                            std::span<const double> fidelities,
                                            std::span<const double> eta_grid,
                                            std::span<const double> eta_values) {
    if (grid.size() != fidelities.size() || eta_grid.size() != eta_values.size()) {
        throw std::invalid_argument("fidelity_vs_eta: curve lengths mismatch");
    }
    if (grid.size() != eta_grid.size() ||
        !std::equal(grid.begin(), grid.end(), eta_grid.begin())) {
        throw std::invalid_argument("fidelity_vs_eta: curves do not share a grid");
    }
    std::vector<EtaFidelityRow> rows;
    rows.reserve(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        rows.push_back({grid[i], eta_values[i], fidelities[i]});
    }
    return rows;
}

}  // namespace spinchaos::ctrl
