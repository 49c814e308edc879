#include "spinchaos/operators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace spinchaos::ops {

namespace {

using Index = Eigen::Index;

// Bit position of `site` (1-based, site 1 = most significant).
std::uint64_t site_mask(int site, int length) {
    return std::uint64_t{1} << (length - site);
}

bool bit_is_down(std::uint64_t basis, std::uint64_t mask) {
    return (basis & mask) != 0;  // bit value 1 = down
}

// coeff * sigma_z(site)
void add_z(Matrix& h, int length, int site, double coeff) {
    if (coeff == 0.0) return;
    const std::uint64_t mask = site_mask(site, length);
    const Index dim = h.rows();
    for (Index b = 0; b < dim; ++b) {
        h(b, b) += bit_is_down(static_cast<std::uint64_t>(b), mask) ? -coeff : coeff;
    }
}

// coeff * sigma_x(site)
void add_x(Matrix& h, int length, int site, double coeff) {
    if (coeff == 0.0) return;
    const std::uint64_t mask = site_mask(site, length);
    const Index dim = h.rows();
    for (Index b = 0; b < dim; ++b) {
        h(static_cast<Index>(b ^ static_cast<Index>(mask)), b) += coeff;
    }
}

// coeff * sigma_z(s1) sigma_z(s2)
void add_zz(Matrix& h, int length, int s1, int s2, double coeff) {
    if (coeff == 0.0) return;
    const std::uint64_t m1 = site_mask(s1, length);
    const std::uint64_t m2 = site_mask(s2, length);
    const Index dim = h.rows();
    for (Index b = 0; b < dim; ++b) {
        const auto u = static_cast<std::uint64_t>(b);
        const double sign =
            (bit_is_down(u, m1) ? -1.0 : 1.0) * (bit_is_down(u, m2) ? -1.0 : 1.0);
        h(b, b) += coeff * sign;
    }
}

// coeff * sigma_x(s1) sigma_x(s2)
void add_xx(Matrix& h, int length, int s1, int s2, double coeff) {
    if (coeff == 0.0) return;
    const auto flip = static_cast<Index>(site_mask(s1, length) ^ site_mask(s2, length));
    const Index dim = h.rows();
    for (Index b = 0; b < dim; ++b) {
        h(b ^ flip, b) += coeff;
    }
}

// coeff * sigma_y(s1) sigma_y(s2); sigma_y |up> = i |down>, sigma_y |down> = -i |up>
void add_yy(Matrix& h, int length, int s1, int s2, double coeff) {
    if (coeff == 0.0) return;
    const std::uint64_t m1 = site_mask(s1, length);
    const std::uint64_t m2 = site_mask(s2, length);
    const auto flip = static_cast<Index>(m1 ^ m2);
    const Index dim = h.rows();
    for (Index b = 0; b < dim; ++b) {
        const auto u = static_cast<std::uint64_t>(b);
        const Complex f1 = bit_is_down(u, m1) ? -kImaginaryUnit : kImaginaryUnit;
        const Complex f2 = bit_is_down(u, m2) ? -kImaginaryUnit : kImaginaryUnit;
        h(b ^ flip, b) += coeff * f1 * f2;
    }
}

// Isotropic-in-xy exchange block S^x S^x + S^y S^y + aniso * S^z S^z between s1, s2.
void add_exchange(Matrix& h, int length, int s1, int s2, double scale, double aniso) {
    add_xx(h, length, s1, s2, 0.25 * scale);
    add_yy(h, length, s1, s2, 0.25 * scale);
    add_zz(h, length, s1, s2, 0.25 * scale * aniso);
}

void check_capacity(int length, std::size_t dim_cap) {
    if (length >= 63 || (std::size_t{1} << length) > dim_cap) {
        throw capacity_error("build_hamiltonian: dimension 2^" + std::to_string(length) +
                             " exceeds cap " + std::to_string(dim_cap));
    }
}

}  // namespace

ModelKind SpinModel::kind() const noexcept {
    switch (params.index()) {
        case 0: return ModelKind::IsingLongTrans;
        case 1: return ModelKind::TiltedIsing;
        case 2: return ModelKind::HeisenbergRandomField;
        default: return ModelKind::PerturbedXxz;
    }
}

bool SpinModel::parity_symmetric() const {
    switch (kind()) {
        case ModelKind::IsingLongTrans: {
            const auto& p = ising();
            if (!include_probe_hamiltonian && (p.h_x != 0.0 || p.h_z != 0.0)) return false;
            for (std::size_t k = 0; k < p.couplings.size(); ++k) {
                if (p.couplings[k] != p.couplings[p.couplings.size() - 1 - k]) return false;
            }
            return true;
        }
        case ModelKind::TiltedIsing:
            return include_probe_hamiltonian || tilted().field == 0.0;
        case ModelKind::HeisenbergRandomField: {
            const auto& p = heisenberg();
            if (!include_probe_hamiltonian && p.fields.front() != 0.0) return false;
            for (std::size_t k = 0; k < p.fields.size(); ++k) {
                if (p.fields[k] != p.fields[p.fields.size() - 1 - k]) return false;
            }
            return true;
        }
        case ModelKind::PerturbedXxz: return true;
    }
    return false;
}

bool SpinModel::conserves_total_sz() const noexcept {
    return kind() == ModelKind::HeisenbergRandomField || kind() == ModelKind::PerturbedXxz;
}

void SpinModel::validate() const {
    const int min_length = kind() == ModelKind::IsingLongTrans ? 1 : 2;
    if (length < min_length) {
        throw std::invalid_argument("SpinModel: length must be >= " +
                                    std::to_string(min_length));
    }
    switch (kind()) {
        case ModelKind::IsingLongTrans:
            if (ising().couplings.size() != static_cast<std::size_t>(length - 1)) {
                throw std::invalid_argument("SpinModel: couplings list must have L-1 entries");
            }
            break;
        case ModelKind::HeisenbergRandomField: {
            const auto& p = heisenberg();
            if (p.field_bound < 0.0) {
                throw std::invalid_argument("SpinModel: field bound must be nonnegative");
            }
            if (p.fields.size() != static_cast<std::size_t>(length)) {
                throw std::invalid_argument("SpinModel: fields list must have L entries");
            }
            break;
        }
        default: break;
    }
}

SpinModel SpinModel::ising(int length, double h_x, double h_z, std::vector<double> couplings) {
    SpinModel m;
    m.length = length;
    m.params = IsingParams{h_x, h_z, std::move(couplings)};
    m.validate();
    return m;
}

SpinModel SpinModel::ising_uniform(int length, double h_x, double h_z, double coupling) {
    return ising(length, h_x, h_z,
                 std::vector<double>(static_cast<std::size_t>(length > 0 ? length - 1 : 0),
                                     coupling));
}

SpinModel SpinModel::tilted_ising(int length, double field, double theta, double coupling) {
    SpinModel m;
    m.length = length;
    m.params = TiltedIsingParams{field, theta, coupling};
    m.validate();
    return m;
}

SpinModel SpinModel::heisenberg(int length, double field_bound, std::vector<double> fields) {
    SpinModel m;
    m.length = length;
    m.params = HeisenbergParams{field_bound, std::move(fields)};
    m.validate();
    return m;
}

SpinModel SpinModel::xxz(int length, double anisotropy, double perturbation) {
    SpinModel m;
    m.length = length;
    m.params = XxzParams{anisotropy, perturbation};
    m.validate();
    return m;
}

Matrix site_operator(Axis axis, int site, int length, SpinConvention convention) {
    if (length < 1) throw std::invalid_argument("site_operator: length must be >= 1");
    if (site < 1 || site > length) {
        throw std::invalid_argument("site_operator: site out of range 1..L");
    }
    const auto dim = Index{1} << length;
    Matrix op = Matrix::Zero(dim, dim);
    const double coeff = convention == SpinConvention::Half ? 0.5 : 1.0;
    switch (axis) {
        case Axis::X: add_x(op, length, site, coeff); break;
        case Axis::Z: add_z(op, length, site, coeff); break;
        case Axis::Y: {
            const std::uint64_t mask = site_mask(site, length);
            for (Index b = 0; b < dim; ++b) {
                const bool down = bit_is_down(static_cast<std::uint64_t>(b), mask);
                op(b ^ static_cast<Index>(mask), b) =
                    coeff * (down ? -kImaginaryUnit : kImaginaryUnit);
            }
            break;
        }
    }
    return op;
}

Matrix build_hamiltonian(const SpinModel& model, std::size_t dim_cap) {
    model.validate();
    check_capacity(model.length, dim_cap);
    const int length = model.length;
    const auto dim = Index{1} << length;
    Matrix h = Matrix::Zero(dim, dim);

    switch (model.kind()) {
        case ModelKind::IsingLongTrans: {
            const auto& p = model.ising();
            const int first = model.include_probe_hamiltonian ? 1 : 2;
            for (int k = first; k <= length; ++k) {
                add_x(h, length, k, p.h_x);
                add_z(h, length, k, p.h_z);
            }
            for (int k = 1; k < length; ++k) {
                add_zz(h, length, k, k + 1, -p.couplings[static_cast<std::size_t>(k - 1)]);
            }
            break;
        }
        case ModelKind::TiltedIsing: {
            const auto& p = model.tilted();
            const int first = model.include_probe_hamiltonian ? 1 : 2;
            for (int k = first; k <= length; ++k) {
                add_x(h, length, k, 0.5 * p.field * std::sin(p.theta));
                add_z(h, length, k, 0.5 * p.field * std::cos(p.theta));
            }
            for (int k = 1; k < length; ++k) {
                add_zz(h, length, k, k + 1, 0.25 * p.coupling);
            }
            break;
        }
        case ModelKind::HeisenbergRandomField: {
            const auto& p = model.heisenberg();
            for (int k = 1; k < length; ++k) {
                add_exchange(h, length, k, k + 1, 1.0, 1.0);
            }
            const int first = model.include_probe_hamiltonian ? 1 : 2;
            for (int k = first; k <= length; ++k) {
                add_z(h, length, k, 0.5 * p.fields[static_cast<std::size_t>(k - 1)]);
            }
            break;
        }
        case ModelKind::PerturbedXxz: {
            const auto& p = model.xxz();
            for (int k = 1; k < length; ++k) {
                add_exchange(h, length, k, k + 1, 1.0, p.anisotropy);
            }
            for (int k = 1; k + 2 <= length; ++k) {
                add_exchange(h, length, k, k + 2, p.perturbation, p.anisotropy);
            }
            break;
        }
    }
    return h;
}

std::vector<double> sample_random_couplings(int length, double lo, double hi,
                                            rng::Stream& stream) {
    if (length < 1) throw std::invalid_argument("sample_random_couplings: length must be >= 1");
    if (lo > hi) throw std::invalid_argument("sample_random_couplings: lo must be <= hi");
    std::vector<double> couplings(static_cast<std::size_t>(length - 1));
    for (auto& value : couplings) value = stream.uniform(lo, hi);
    return couplings;
}

std::vector<double> sample_random_fields(int length, double bound, rng::Stream& stream) {
    if (length < 1) throw std::invalid_argument("sample_random_fields: length must be >= 1");
    if (bound < 0.0) throw std::invalid_argument("sample_random_fields: bound must be >= 0");
    std::vector<double> fields(static_cast<std::size_t>(length));
    for (auto& value : fields) value = stream.uniform(-bound, bound);
    return fields;
}

}  // namespace spinchaos::ops
