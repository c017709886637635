#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "dysonsim/linalg.hpp"

namespace dysonsim {

namespace pauli {

ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
// (X - iY)/2 = [[0, 0], [1, 0]]: maps the sigma_z = +1 state to the -1 state.
ComplexMatrix lowering();
ComplexMatrix raising();

} // namespace pauli

// Tensor products of {I, X, Y, Z} on `qubits` qubits. Element j is the base-4
// word of j with the leftmost (most significant) digit acting on the first
// tensor factor, and I < X < Y < Z.
class PauliBasis {
public:
    explicit PauliBasis(int qubits);

    // Shared, lazily constructed basis; valid for the program lifetime.
    static const PauliBasis& for_qubits(int qubits);

    int qubits() const noexcept { return qubits_; }
    int dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return elements_.size(); }

    const ComplexMatrix& element(std::size_t index) const;
    std::string word(std::size_t index) const;
    // Throws ValidationError naming the word if it is malformed or has the
    // wrong length.
    std::size_t index(std::string_view word) const;

    // Tr(Q_index * a)
    Complex trace_product(std::size_t index, const ComplexMatrix& a) const;

private:
    int qubits_;
    int dim_;
    std::vector<ComplexMatrix> elements_;
};

struct PauliTerm {
    std::size_t index;
    Complex coeff;
};

class PauliDecomposition {
public:
    PauliDecomposition() = default;
    PauliDecomposition(int qubits, std::vector<PauliTerm> terms);

    int qubits() const noexcept { return qubits_; }
    const std::vector<PauliTerm>& terms() const noexcept { return terms_; }
    std::size_t support_size() const noexcept { return terms_.size(); }

    ComplexMatrix reconstruct() const;

private:
    int qubits_ = 0;
    std::vector<PauliTerm> terms_;
};

// Smallest power of two >= d.
int embedded_dimension(int d);

// Zero-pads `a` to the next power-of-two dimension; identity when d already is
// a power of two. Trace is preserved.
ComplexMatrix embed_dimension(const ComplexMatrix& a);

// q_k = Tr(Q_k A) / d, terms below the pruning threshold dropped.
PauliDecomposition decompose(const ComplexMatrix& a, const PauliBasis& basis);

struct CoefficientBounds {
    double l2;            // sum |q_k|^2
    double l1;            // sum |q_k|
    double sqrt_support;  // sqrt(M)
};

CoefficientBounds coefficient_bounds(const PauliDecomposition& dec);

// Number of qubits needed for dimension d after embedding.
int qubits_for_dimension(int d);

} // namespace dysonsim
