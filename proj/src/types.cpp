#include "spinchaos/types.hpp"

namespace spinchaos {

double hermiticity_defect(const Matrix& a) {
    if (a.rows() != a.cols()) return std::numeric_limits<double>::infinity();
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& a, double tol) {
    return a.rows() == a.cols() && hermiticity_defect(a) <= tol;
}

void require_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) {
        throw std::invalid_argument("require_hermitian: matrix is not square");
    }
    if (hermiticity_defect(a) > tol) {
        throw std::invalid_argument("require_hermitian: hermiticity defect exceeds tolerance");
    }
}

bool is_normalized(const Vector& v, double tol) {
    return std::abs(v.norm() - 1.0) <= tol;
}

}  // namespace spinchaos
