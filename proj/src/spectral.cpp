#include "spinchaos/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace spinchaos::spectral {

namespace {

using Index = Eigen::Index;

bool effectively_real(const Matrix& h) {
    return h.imag().cwiseAbs().maxCoeff() <= 1e-14;
}

}  // namespace

SpectralData eigendecompose(const Eigen::MatrixXd& h_symmetric, bool want_vectors) {
    if (h_symmetric.rows() != h_symmetric.cols()) {
        throw std::invalid_argument("eigendecompose: matrix is not square");
    }
    if ((h_symmetric - h_symmetric.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
        throw std::invalid_argument("eigendecompose: matrix is not symmetric");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(
        h_symmetric, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw numeric_error("eigendecompose: real symmetric solver failed to converge");
    }
    SpectralData data;
    data.eigenvalues = solver.eigenvalues();
    if (want_vectors) data.eigenvectors = solver.eigenvectors().cast<Complex>();
    return data;
}

SpectralData eigendecompose(const Matrix& h, bool want_vectors) {
    require_hermitian(h, 1e-12);
    if (effectively_real(h)) {
        // All chain models here are real symmetric; the real solver is
        // several times faster at large dimension.
        return eigendecompose(Eigen::MatrixXd(h.real()), want_vectors);
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(
        h, want_vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw numeric_error("eigendecompose: Hermitian solver failed to converge");
    }
    SpectralData data;
    data.eigenvalues = solver.eigenvalues();
    if (want_vectors) data.eigenvectors = solver.eigenvectors();
    return data;
}

SpacingRatios spacing_ratios(std::span<const double> eigenvalues) {
    if (eigenvalues.size() < 3) {
        throw std::invalid_argument("spacing_ratios: need at least 3 levels");
    }
    SpacingRatios out;
    out.values.reserve(eigenvalues.size() - 2);
    double previous = eigenvalues[1] - eigenvalues[0];
    if (previous == 0.0) ++out.zero_spacing_count;
    for (std::size_t n = 1; n + 1 < eigenvalues.size(); ++n) {
        const double current = eigenvalues[n + 1] - eigenvalues[n];
        if (current == 0.0) ++out.zero_spacing_count;
        double ratio;
        if (previous == 0.0 && current == 0.0) {
            ratio = 1.0;
        } else if (previous == 0.0 || current == 0.0) {
            ratio = 0.0;
        } else {
            ratio = std::min(previous, current) / std::max(previous, current);
        }
        out.values.push_back(ratio);
        previous = current;
    }
    return out;
}

std::vector<double> r_tilde(std::span<const double> eigenvalues) {
    return spacing_ratios(eigenvalues).values;
}

double mean_spacing_ratio(std::span<const double> eigenvalues) {
    const auto ratios = spacing_ratios(eigenvalues);
    double sum = 0.0;
    for (const double r : ratios.values) sum += r;
    return sum / static_cast<double>(ratios.values.size());
}

double eta_from_mean_ratio(double mean_ratio) {
    return (mean_ratio - kPoissonMeanRatio) / (kWignerDysonMeanRatio - kPoissonMeanRatio);
}

double eta(std::span<const double> eigenvalues) {
    return eta_from_mean_ratio(mean_spacing_ratio(eigenvalues));
}

double eta_for_model(const ops::SpinModel& model, const EtaOptions& options,
                     rng::Stream stream) {
    sym::require_policy_compatible(model, options.sector);

    const bool disorder = model.kind() == ops::ModelKind::HeisenbergRandomField;
    const int realizations = disorder ? std::max(1, options.disorder_realizations) : 1;

    double sum = 0.0;
    for (int r = 0; r < realizations; ++r) {
        ops::SpinModel instance = model;
        if (disorder) {
            auto fields_stream = stream.child(static_cast<std::uint64_t>(r));
            auto& params = std::get<ops::HeisenbergParams>(instance.params);
            params.fields =
                ops::sample_random_fields(model.length, params.field_bound, fields_stream);
        }
        const Matrix h = ops::build_hamiltonian(instance, options.dim_cap);
        const Matrix sector = sym::apply_sector(h, instance.length, options.sector);
        const auto data = eigendecompose(sector, false);
        sum += eta(std::span<const double>(data.eigenvalues.data(),
                                           static_cast<std::size_t>(data.eigenvalues.size())));
    }
    return sum / static_cast<double>(realizations);
}

Eigen::MatrixXd sample_goe(Eigen::Index n, rng::Stream& stream) {
    if (n < 2) throw std::invalid_argument("sample_goe: n must be >= 2");
    Eigen::MatrixXd a(n, n);
    constexpr double inv_sqrt2 = 0.7071067811865476;
    for (Index i = 0; i < n; ++i) {
        a(i, i) = stream.normal();
        for (Index j = i + 1; j < n; ++j) {
            const double value = stream.normal() * inv_sqrt2;
            a(i, j) = value;
            a(j, i) = value;
        }
    }
    return a;
}

}  // namespace spinchaos::spectral
