// symmetry.hpp — parity and total-Sz sector structure.
//
// Sector bases are lists of at-most-two-term combinations of computational
// basis states, built in ascending basis-index order so projected matrices
// are bit-reproducible across runs.

#pragma once

#include "spinchaos/operators.hpp"
#include "spinchaos/types.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace spinchaos::sym {

enum class Parity { Even, Odd };

// Reverse the lowest `length` bits (the chain-reversal permutation on indices).
std::uint64_t reverse_bits(std::uint64_t basis, int length);

// Orthonormal basis of a symmetry sector. Every vector is either a single
// computational basis state or c_a|a> + c_b|b> with real coefficients.
struct SectorBasis {
    std::vector<std::uint32_t> index_a;
    std::vector<std::uint32_t> index_b;  // == index_a for single-term vectors
    std::vector<double> coeff_a;
    std::vector<double> coeff_b;  // 0 for single-term vectors
    Eigen::Index full_dim = 0;
    std::string label;

    Eigen::Index dim() const { return static_cast<Eigen::Index>(index_a.size()); }

    // Dense full_dim x dim column matrix (intended for small-L checks).
    Matrix materialize() const;

    // B† H B using the two-term structure; O(4 dim^2) entry accesses.
    Matrix project(const Matrix& h) const;
};

SectorBasis parity_basis(int length, Parity parity);
SectorBasis sz_basis(int length, int n_up);
SectorBasis composed_basis(int length, int n_up, Parity parity);

// Permutation matrix of the chain reversal; involutive and Hermitian.
Matrix parity_operator(int length);

// max_ij |(H Pi - Pi H)_ij| without forming the products.
double parity_commutator_defect(const Matrix& h, int length);

// max_ij |(H Sz - Sz H)_ij| with Sz = sum_k S^z_k (spin-1/2 units).
double sz_commutator_defect(const Matrix& h, int length);

// H projected onto the parity eigenspaces; throws symmetry_error when
// [H, Pi] exceeds tolerance (e.g. unequal couplings).
std::pair<Matrix, Matrix> parity_sectors(const Matrix& h, int length,
                                         double commutator_tol = 1e-10);

// H restricted to basis states with exactly n_up up spins; dim = C(L, n_up).
Matrix sz_sector(const Matrix& h, int length, int n_up, double commutator_tol = 1e-10);

// Sz sector split by parity inside it (models conserving both).
Matrix composed_sector(const Matrix& h, int length, int n_up, Parity parity,
                       double commutator_tol = 1e-10);

// Which sector a spectral analysis runs on.
struct SectorPolicy {
    enum class Kind { Full, ParitySector, SzSector, SzParitySector };
    Kind kind = Kind::ParitySector;
    Parity parity = Parity::Odd;
    int n_up = 0;

    static SectorPolicy full() { return {Kind::Full, Parity::Even, 0}; }
    static SectorPolicy parity_sector(Parity p) { return {Kind::ParitySector, p, 0}; }
    static SectorPolicy sz(int n_up) { return {Kind::SzSector, Parity::Even, n_up}; }
    static SectorPolicy sz_parity(int n_up, Parity p) {
        return {Kind::SzParitySector, p, n_up};
    }

    std::string describe() const;
};

// Project H according to the policy (identity for Kind::Full).
Matrix apply_sector(const Matrix& h, int length, const SectorPolicy& policy);

// Static compatibility check between a model and a sector policy; throws
// config_error with a description when the combination cannot work.
void require_policy_compatible(const ops::SpinModel& model, const SectorPolicy& policy);

}  // namespace spinchaos::sym
