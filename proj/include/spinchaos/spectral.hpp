// spectral.hpp — dense Hermitian diagonalization and the spacing-ratio
// chaos indicator.

#pragma once

#include "spinchaos/operators.hpp"
#include "spinchaos/rng.hpp"
#include "spinchaos/symmetry.hpp"
#include "spinchaos/types.hpp"

#include <span>
#include <vector>

namespace spinchaos::spectral {

// Mean adjacent-spacing ratio of the reference ensembles. The Poisson value
// is the analytic 2 ln 2 - 1; the Wigner-Dyson value is the accepted
// numerical constant.
inline constexpr double kPoissonMeanRatio = 0.38629436111989062;
inline constexpr double kWignerDysonMeanRatio = 0.5307;

struct SpectralData {
    Eigen::VectorXd eigenvalues;  // ascending
    Matrix eigenvectors;          // empty unless requested

    bool has_vectors() const { return eigenvectors.size() != 0; }
    Eigen::Index dim() const { return eigenvalues.size(); }
};

// Full spectrum of a Hermitian matrix; orthonormal eigenvectors on request.
// Real-symmetric inputs take a faster real solver path internally.
SpectralData eigendecompose(const Matrix& h, bool want_vectors);
SpectralData eigendecompose(const Eigen::MatrixXd& h_symmetric, bool want_vectors);

struct SpacingRatios {
    std::vector<double> values;   // one per interior level, each in [0, 1]
    int zero_spacing_count = 0;   // exact degeneracies seen (diagnostic)
};

// min/max ratio of adjacent spacings per interior level. Exact-zero
// spacings: both zero -> 1, exactly one zero -> 0.
SpacingRatios spacing_ratios(std::span<const double> eigenvalues);

std::vector<double> r_tilde(std::span<const double> eigenvalues);

double mean_spacing_ratio(std::span<const double> eigenvalues);

// Mean ratio mapped affinely so Poisson -> 0 and Wigner-Dyson -> 1.
// Unclamped: small samples may fall outside [0, 1].
double eta(std::span<const double> eigenvalues);
double eta_from_mean_ratio(double mean_ratio);

struct EtaOptions {
    sym::SectorPolicy sector = sym::SectorPolicy::parity_sector(sym::Parity::Odd);
    int disorder_realizations = 50;  // used by models with random fields
    std::size_t dim_cap = kDefaultDimCap;
};

// Build, project to the configured sector, diagonalize, return eta. Models
// with random fields (Heisenberg) are averaged over fresh disorder draws
// from `stream`; other models ignore it.
double eta_for_model(const ops::SpinModel& model, const EtaOptions& options,
                     rng::Stream stream);

// Random GOE matrix: standard-normal diagonal, off-diagonals scaled by
// 1/sqrt(2). Reference ensemble for the Wigner-Dyson end of eta.
Eigen::MatrixXd sample_goe(Eigen::Index n, rng::Stream& stream);

}  // namespace spinchaos::spectral
