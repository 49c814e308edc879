// operators.hpp — chain models and dense operator construction.
//
// Basis convention: site 1 is the leftmost (most significant) tensor factor.
// Basis index b encodes |b_1 b_2 ... b_L> with bit value 0 = up, so the
// probe's bit is the top bit and its partial trace is a contiguous block
// operation.

#pragma once

#include "spinchaos/rng.hpp"
#include "spinchaos/types.hpp"

#include <cstdint>
#include <variant>
#include <vector>

namespace spinchaos::ops {

enum class Axis { X, Y, Z };

// Pauli matrices sigma vs spin-1/2 operators S = sigma/2.
enum class SpinConvention { Pauli, Half };

enum class ModelKind { IsingLongTrans, TiltedIsing, HeisenbergRandomField, PerturbedXxz };

// H = sum_k (h_x sx_k + h_z sz_k) - sum_k J_k sz_k sz_{k+1}, Pauli operators.
struct IsingParams {
    double h_x = 0.0;
    double h_z = 0.0;
    std::vector<double> couplings;  // exactly L-1 entries
};

// H = B sum_k (sin(theta) Sx_k + cos(theta) Sz_k) + J sum_k Sz_k Sz_{k+1}.
struct TiltedIsingParams {
    double field = 0.0;  // B
    double theta = 0.0;  // radians
    double coupling = 0.0;  // J
};

// H = sum_k (Sx_k Sx_{k+1} + Sy_k Sy_{k+1} + Sz_k Sz_{k+1}) + sum_k h_k Sz_k.
struct HeisenbergParams {
    double field_bound = 0.0;    // h; site fields drawn uniformly from [-h, h]
    std::vector<double> fields;  // exactly L entries
};

// H = H_nn + lambda * H_nnn with XY exchange and anisotropic ZZ part.
struct XxzParams {
    double anisotropy = 0.0;    // mu
    double perturbation = 0.0;  // lambda
};

struct SpinModel {
    int length = 2;
    bool include_probe_hamiltonian = true;
    std::variant<IsingParams, TiltedIsingParams, HeisenbergParams, XxzParams> params;

    ModelKind kind() const noexcept;
    std::size_t dim() const noexcept { return std::size_t{1} << length; }

    const IsingParams& ising() const { return std::get<IsingParams>(params); }
    const TiltedIsingParams& tilted() const { return std::get<TiltedIsingParams>(params); }
    const HeisenbergParams& heisenberg() const { return std::get<HeisenbergParams>(params); }
    const XxzParams& xxz() const { return std::get<XxzParams>(params); }

    // True when equal couplings / uniform fields make bit-reversal a symmetry.
    bool parity_symmetric() const;
    // True when total Sz is conserved (Heisenberg, XXZ).
    bool conserves_total_sz() const noexcept;

    // Throws std::invalid_argument when the invariants do not hold.
    void validate() const;

    static SpinModel ising(int length, double h_x, double h_z, std::vector<double> couplings);
    static SpinModel ising_uniform(int length, double h_x, double h_z, double coupling = 1.0);
    static SpinModel tilted_ising(int length, double field, double theta, double coupling);
    static SpinModel heisenberg(int length, double field_bound, std::vector<double> fields);
    static SpinModel xxz(int length, double anisotropy, double perturbation);
};

// I x ... x sigma^axis x ... x I with the single-site factor at `site` (1-based).
Matrix site_operator(Axis axis, int site, int length,
                     SpinConvention convention = SpinConvention::Pauli);

// Dense 2^L x 2^L Hamiltonian with open boundary conditions. When
// include_probe_hamiltonian is false, single-site terms acting on site 1
// are omitted. Throws capacity_error when 2^L exceeds dim_cap.
Matrix build_hamiltonian(const SpinModel& model, std::size_t dim_cap = kDefaultDimCap);

// L-1 i.i.d. uniform draws in [lo, hi].
std::vector<double> sample_random_couplings(int length, double lo, double hi,
                                            rng::Stream& stream);

// L i.i.d. uniform draws in [-bound, bound].
std::vector<double> sample_random_fields(int length, double bound, rng::Stream& stream);

}  // namespace spinchaos::ops
