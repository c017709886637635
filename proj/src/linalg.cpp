#include "dysonsim/linalg.hpp"

#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "dysonsim/errors.hpp"

namespace dysonsim {

namespace {

std::string shape(const ComplexMatrix& a) {
    return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

Eigen::VectorXd singular_values(const ComplexMatrix& a) {
    if (a.rows() <= 16) {
        return Eigen::JacobiSVD<ComplexMatrix>(a).singularValues();
    }
    return Eigen::BDCSVD<ComplexMatrix>(a).singularValues();
}

} // namespace

void require_square(const ComplexMatrix& a, const char* what) {
    if (a.rows() == 0 || a.rows() != a.cols()) {
        throw DimensionError("linalg", std::string(what) + ": expected a non-empty square matrix, got " + shape(a));
    }
}

void require_conformable(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    require_square(a, what);
    require_square(b, what);
    if (a.rows() != b.rows()) {
        throw DimensionError("linalg", std::string(what) + ": dimension mismatch " + shape(a) + " vs " + shape(b));
    }
}

bool is_finite(const ComplexMatrix& a) {
    return a.allFinite();
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    if (a.rows() != a.cols()) {
        return false;
    }
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix matexp(const ComplexMatrix& a, Complex scale) {
    require_square(a, "matexp");
    if (!a.allFinite() || !std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
        throw RangeError("linalg", "matexp: non-finite input");
    }
    const ComplexMatrix scaled = scale * a;
    const double norm = scaled.cwiseAbs().rowwise().sum().maxCoeff();
    if (norm > kMatexpNormLimit) {
        throw RangeError("linalg", "matexp: ||scale*A||_inf = " + std::to_string(norm) + " exceeds the supported range");
    }
    ComplexMatrix result = scaled.exp();
    if (!result.allFinite()) {
        throw RangeError("linalg", "matexp: result overflowed");
    }
    return result;
}

double trace_norm(const ComplexMatrix& a) {
    require_square(a, "trace_norm");
    return singular_values(a).sum();
}

double spectral_norm(const ComplexMatrix& a) {
    require_square(a, "spectral_norm");
    return singular_values(a).maxCoeff();
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    return a.adjoint();
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_conformable(a, b, "commutator");
    return a * b - b * a;
}

ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_conformable(a, b, "anticommutator");
    return a * b + b * a;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

} // namespace dysonsim
