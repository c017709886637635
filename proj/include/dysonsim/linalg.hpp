#pragma once

#include <complex>

#include <Eigen/Dense>

namespace dysonsim {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

inline constexpr Complex kI{0.0, 1.0};

// Largest ||scale * A||_inf (max row sum) accepted by matexp before it reports
// a range error instead of returning overflowed entries.
inline constexpr double kMatexpNormLimit = 700.0;

// e^{scale * A} by scaling and squaring around a degree-13 Pade approximant.
ComplexMatrix matexp(const ComplexMatrix& a, Complex scale = 1.0);

// Sum of singular values.
double trace_norm(const ComplexMatrix& a);

// Largest singular value.
double spectral_norm(const ComplexMatrix& a);

ComplexMatrix dagger(const ComplexMatrix& a);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

// Kronecker product a (x) b, with a acting on the more significant factor.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_finite(const ComplexMatrix& a);
bool is_hermitian(const ComplexMatrix& a, double tol);

// Throws DimensionError unless `a` is a non-empty square matrix.
void require_square(const ComplexMatrix& a, const char* what);
// Throws DimensionError unless both operands are square with equal size.
void require_conformable(const ComplexMatrix& a, const ComplexMatrix& b, const char* what);

} // namespace dysonsim
