#include "spinchaos/symmetry.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinchaos::sym {

namespace {

using Index = Eigen::Index;

constexpr double kInvSqrt2 = std::numbers::sqrt2 / 2.0;

int up_spin_count(std::uint64_t basis, int length) {
    // bit value 0 = up
    return length - std::popcount(basis);
}

void check_square(const Matrix& h, int length, const char* where) {
    const auto dim = Index{1} << length;
    if (h.rows() != dim || h.cols() != dim) {
        throw std::invalid_argument(std::string(where) + ": operator dim does not match 2^L");
    }
}

// Append the parity combinations of orbit {b, reverse(b)} restricted to the
// provided membership test. Iterating representatives in ascending order
// fixes the sector basis ordering.
template <typename Member>
SectorBasis build_parity_like(int length, Parity parity, Member&& member,
                              std::string label) {
    SectorBasis basis;
    basis.full_dim = Index{1} << length;
    basis.label = std::move(label);
    const auto dim = static_cast<std::uint64_t>(basis.full_dim);
    for (std::uint64_t b = 0; b < dim; ++b) {
        if (!member(b)) continue;
        const std::uint64_t r = reverse_bits(b, length);
        if (r < b) continue;  // handled at its representative
        if (r == b) {
            if (parity == Parity::Even) {
                basis.index_a.push_back(static_cast<std::uint32_t>(b));
                basis.index_b.push_back(static_cast<std::uint32_t>(b));
                basis.coeff_a.push_back(1.0);
                basis.coeff_b.push_back(0.0);
            }
        } else {
            basis.index_a.push_back(static_cast<std::uint32_t>(b));
            basis.index_b.push_back(static_cast<std::uint32_t>(r));
            basis.coeff_a.push_back(kInvSqrt2);
            basis.coeff_b.push_back(parity == Parity::Even ? kInvSqrt2 : -kInvSqrt2);
        }
    }
    return basis;
}

}  // namespace

std::uint64_t reverse_bits(std::uint64_t basis, int length) {
    std::uint64_t reversed = 0;
    for (int i = 0; i < length; ++i) {
        reversed = (reversed << 1) | ((basis >> i) & 1u);
    }
    return reversed;
}

Matrix SectorBasis::materialize() const {
    Matrix b = Matrix::Zero(full_dim, dim());
    for (Index col = 0; col < dim(); ++col) {
        const auto c = static_cast<std::size_t>(col);
        b(static_cast<Index>(index_a[c]), col) += coeff_a[c];
        if (index_b[c] != index_a[c]) {
            b(static_cast<Index>(index_b[c]), col) += coeff_b[c];
        }
    }
    return b;
}

Matrix SectorBasis::project(const Matrix& h) const {
    if (h.rows() != full_dim || h.cols() != full_dim) {
        throw std::invalid_argument("SectorBasis::project: operator dim mismatch");
    }
    const Index d = dim();
    Matrix sub(d, d);
    for (Index q = 0; q < d; ++q) {
        const auto cq = static_cast<std::size_t>(q);
        const Index qa = static_cast<Index>(index_a[cq]);
        const Index qb = static_cast<Index>(index_b[cq]);
        const double ca_q = coeff_a[cq];
        const double cb_q = coeff_b[cq];
        for (Index p = 0; p < d; ++p) {
            const auto cp = static_cast<std::size_t>(p);
            const Index pa = static_cast<Index>(index_a[cp]);
            const Index pb = static_cast<Index>(index_b[cp]);
            const double ca_p = coeff_a[cp];
            const double cb_p = coeff_b[cp];
            Complex value = ca_p * ca_q * h(pa, qa);
            if (cb_q != 0.0) value += ca_p * cb_q * h(pa, qb);
            if (cb_p != 0.0) {
                value += cb_p * ca_q * h(pb, qa);
                if (cb_q != 0.0) value += cb_p * cb_q * h(pb, qb);
            }
            sub(p, q) = value;
        }
    }
    return sub;
}

SectorBasis parity_basis(int length, Parity parity) {
    if (length < 2) throw std::invalid_argument("parity_basis: length must be >= 2");
    return build_parity_like(length, parity, [](std::uint64_t) { return true; },
                             parity == Parity::Even ? "parity:even" : "parity:odd");
}

SectorBasis sz_basis(int length, int n_up) {
    if (length < 1) throw std::invalid_argument("sz_basis: length must be >= 1");
    if (n_up < 0 || n_up > length) {
        throw std::invalid_argument("sz_basis: n_up out of range 0..L");
    }
    SectorBasis basis;
    basis.full_dim = Index{1} << length;
    basis.label = "sz:" + std::to_string(n_up);
    const auto dim = static_cast<std::uint64_t>(basis.full_dim);
    for (std::uint64_t b = 0; b < dim; ++b) {
        if (up_spin_count(b, length) != n_up) continue;
        basis.index_a.push_back(static_cast<std::uint32_t>(b));
        basis.index_b.push_back(static_cast<std::uint32_t>(b));
        basis.coeff_a.push_back(1.0);
        basis.coeff_b.push_back(0.0);
    }
    return basis;
}

SectorBasis composed_basis(int length, int n_up, Parity parity) {
    if (length < 2) throw std::invalid_argument("composed_basis: length must be >= 2");
    if (n_up < 0 || n_up > length) {
        throw std::invalid_argument("composed_basis: n_up out of range 0..L");
    }
    auto basis = build_parity_like(
        length, parity,
        [length, n_up](std::uint64_t b) { return up_spin_count(b, length) == n_up; },
        "sz:" + std::to_string(n_up) +
            (parity == Parity::Even ? ",parity:even" : ",parity:odd"));
    return basis;
}

Matrix parity_operator(int length) {
    if (length < 2) throw std::invalid_argument("parity_operator: length must be >= 2");
    const auto dim = Index{1} << length;
    Matrix pi = Matrix::Zero(dim, dim);
    for (Index b = 0; b < dim; ++b) {
        pi(static_cast<Index>(reverse_bits(static_cast<std::uint64_t>(b), length)), b) = 1.0;
    }
    return pi;
}

double parity_commutator_defect(const Matrix& h, int length) {
    check_square(h, length, "parity_commutator_defect");
    const Index dim = h.rows();
    std::vector<Index> rev(static_cast<std::size_t>(dim));
    for (Index b = 0; b < dim; ++b) {
        rev[static_cast<std::size_t>(b)] =
            static_cast<Index>(reverse_bits(static_cast<std::uint64_t>(b), length));
    }
    double defect = 0.0;
    for (Index j = 0; j < dim; ++j) {
        for (Index i = 0; i < dim; ++i) {
            // (H Pi)(i,j) = H(i, rev(j)),  (Pi H)(i,j) = H(rev(i), j)
            const double diff = std::abs(h(i, rev[static_cast<std::size_t>(j)]) -
                                         h(rev[static_cast<std::size_t>(i)], j));
            if (diff > defect) defect = diff;
        }
    }
    return defect;
}

double sz_commutator_defect(const Matrix& h, int length) {
    check_square(h, length, "sz_commutator_defect");
    const Index dim = h.rows();
    std::vector<double> sz(static_cast<std::size_t>(dim));
    for (Index b = 0; b < dim; ++b) {
        sz[static_cast<std::size_t>(b)] =
            0.5 * (2 * up_spin_count(static_cast<std::uint64_t>(b), length) - length);
    }
    double defect = 0.0;
    for (Index j = 0; j < dim; ++j) {
        for (Index i = 0; i < dim; ++i) {
            const double diff =
                std::abs(h(i, j)) * std::abs(sz[static_cast<std::size_t>(j)] -
                                             sz[static_cast<std::size_t>(i)]);
            if (diff > defect) defect = diff;
        }
    }
    return defect;
}

std::pair<Matrix, Matrix> parity_sectors(const Matrix& h, int length, double commutator_tol) {
    check_square(h, length, "parity_sectors");
    const double defect = parity_commutator_defect(h, length);
    if (defect > commutator_tol) {
        throw symmetry_error("parity_sectors: [H, Pi] defect " + std::to_string(defect) +
                             " exceeds tolerance");
    }
    return {parity_basis(length, Parity::Even).project(h),
            parity_basis(length, Parity::Odd).project(h)};
}

Matrix sz_sector(const Matrix& h, int length, int n_up, double commutator_tol) {
    check_square(h, length, "sz_sector");
    const double defect = sz_commutator_defect(h, length);
    if (defect > commutator_tol) {
        throw symmetry_error("sz_sector: [H, Sz] defect " + std::to_string(defect) +
                             " exceeds tolerance");
    }
    return sz_basis(length, n_up).project(h);
}

Matrix composed_sector(const Matrix& h, int length, int n_up, Parity parity,
                       double commutator_tol) {
    check_square(h, length, "composed_sector");
    const double sz_defect = sz_commutator_defect(h, length);
    if (sz_defect > commutator_tol) {
        throw symmetry_error("composed_sector: [H, Sz] defect " + std::to_string(sz_defect) +
                             " exceeds tolerance");
    }
    const double parity_defect = parity_commutator_defect(h, length);
    if (parity_defect > commutator_tol) {
        throw symmetry_error("composed_sector: [H, Pi] defect " +
                             std::to_string(parity_defect) + " exceeds tolerance");
    }
    return composed_basis(length, n_up, parity).project(h);
}

std::string SectorPolicy::describe() const {
    switch (kind) {
        case Kind::Full: return "full";
        case Kind::ParitySector: return parity == Parity::Even ? "parity:even" : "parity:odd";
        case Kind::SzSector: return "sz:" + std::to_string(n_up);
        case Kind::SzParitySector:
            return "sz:" + std::to_string(n_up) +
                   (parity == Parity::Even ? ",parity:even" : ",parity:odd");
    }
    return "unknown";
}

Matrix apply_sector(const Matrix& h, int length, const SectorPolicy& policy) {
    switch (policy.kind) {
        case SectorPolicy::Kind::Full: return h;
        case SectorPolicy::Kind::ParitySector: {
            auto [even, odd] = parity_sectors(h, length);
            return policy.parity == Parity::Even ? std::move(even) : std::move(odd);
        }
        case SectorPolicy::Kind::SzSector: return sz_sector(h, length, policy.n_up);
        case SectorPolicy::Kind::SzParitySector:
            return composed_sector(h, length, policy.n_up, policy.parity);
    }
    throw std::invalid_argument("apply_sector: unknown policy");
}

void require_policy_compatible(const ops::SpinModel& model, const SectorPolicy& policy) {
    using Kind = SectorPolicy::Kind;
    if (policy.kind == Kind::Full) return;
    if (policy.kind == Kind::ParitySector || policy.kind == Kind::SzParitySector) {
        if (!model.parity_symmetric()) {
            throw config_error("sector policy '" + policy.describe() +
                               "' requires a parity-symmetric model (equal couplings and "
                               "mirror-symmetric fields)");
        }
    }
    if (policy.kind == Kind::SzSector || policy.kind == Kind::SzParitySector) {
        if (!model.conserves_total_sz()) {
            throw config_error("sector policy '" + policy.describe() +
                               "' requires a model conserving total Sz");
        }
        if (policy.n_up < 0 || policy.n_up > model.length) {
            throw config_error("sector policy: n_up out of range 0..L");
        }
    }
}

}  // namespace spinchaos::sym
