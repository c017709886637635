#include "dysonsim/pauli.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "dysonsim/errors.hpp"
#include "dysonsim/tolerances.hpp"

namespace dysonsim {

namespace pauli {

ComplexMatrix identity() {
    return ComplexMatrix::Identity(2, 2);
}

ComplexMatrix x() {
    ComplexMatrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

ComplexMatrix y() {
    ComplexMatrix m(2, 2);
    m << 0.0, -kI, kI, 0.0;
    return m;
}

ComplexMatrix z() {
    ComplexMatrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

ComplexMatrix lowering() {
    return 0.5 * (x() - kI * y());
}

ComplexMatrix raising() {
    return 0.5 * (x() + kI * y());
}

} // namespace pauli

namespace {

constexpr int kMaxQubits = 4;

const ComplexMatrix& single(int letter) {
    static const ComplexMatrix mats[4] = {pauli::identity(), pauli::x(), pauli::y(), pauli::z()};
    return mats[letter];
}

} // namespace

PauliBasis::PauliBasis(int qubits) : qubits_(qubits), dim_(1 << qubits) {
    if (qubits < 1 || qubits > kMaxQubits) {
        throw ValidationError("pauli", "qubit count must lie in [1, " + std::to_string(kMaxQubits) + "]");
    }
    const std::size_t count = std::size_t{1} << (2 * qubits);
    elements_.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        ComplexMatrix m = ComplexMatrix::Identity(1, 1);
        for (int q = qubits - 1; q >= 0; --q) {
            const int letter = static_cast<int>((j >> (2 * q)) & 3u);
            m = kron(m, single(letter));
        }
        elements_.push_back(std::move(m));
    }
}

const PauliBasis& PauliBasis::for_qubits(int qubits) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<PauliBasis>> cache;
    std::lock_guard lock(mutex);
    auto& slot = cache[qubits];
    if (!slot) {
        slot = std::make_unique<PauliBasis>(qubits);
    }
    return *slot;
}

const ComplexMatrix& PauliBasis::element(std::size_t index) const {
    if (index >= elements_.size()) {
        throw ValidationError("pauli", "basis index " + std::to_string(index) + " out of range");
    }
    return elements_[index];
}

std::string PauliBasis::word(std::size_t index) const {
    if (index >= elements_.size()) {
        throw ValidationError("pauli", "basis index " + std::to_string(index) + " out of range");
    }
    std::string w(static_cast<std::size_t>(qubits_), 'I');
    for (int q = 0; q < qubits_; ++q) {
        w[static_cast<std::size_t>(qubits_ - 1 - q)] = "IXYZ"[(index >> (2 * q)) & 3u];
    }
    return w;
}

std::size_t PauliBasis::index(std::string_view word) const {
    if (word.size() != static_cast<std::size_t>(qubits_)) {
        throw ValidationError("pauli", "Pauli word \"" + std::string(word) + "\" has length " +
                                           std::to_string(word.size()) + ", expected " + std::to_string(qubits_));
    }
    std::size_t idx = 0;
    for (char c : word) {
        std::size_t letter = 0;
        switch (c) {
        case 'I':
            letter = 0;
            break;
        case 'X':
            letter = 1;
            break;
        case 'Y':
            letter = 2;
            break;
        case 'Z':
            letter = 3;
            break;
        default:
            throw ValidationError("pauli", "malformed Pauli word \"" + std::string(word) + "\"");
        }
        idx = 4 * idx + letter;
    }
    return idx;
}

Complex PauliBasis::trace_product(std::size_t index, const ComplexMatrix& a) const {
    const ComplexMatrix& q = element(index);
    // Tr(QA) = sum_ij Q_ij A_ji
    return (q.transpose().cwiseProduct(a)).sum();
}

PauliDecomposition::PauliDecomposition(int qubits, std::vector<PauliTerm> terms)
    : qubits_(qubits), terms_(std::move(terms)) {
    const std::size_t limit = std::size_t{1} << (2 * qubits);
    for (const auto& term : terms_) {
        if (term.index >= limit) {
            throw ValidationError("pauli", "decomposition term index out of range");
        }
    }
}

ComplexMatrix PauliDecomposition::reconstruct() const {
    const PauliBasis& basis = PauliBasis::for_qubits(qubits_);
    ComplexMatrix out = ComplexMatrix::Zero(basis.dim(), basis.dim());
    for (const auto& term : terms_) {
        out += term.coeff * basis.element(term.index);
    }
    return out;
}

int embedded_dimension(int d) {
    if (d < 1) {
        throw DimensionError("pauli", "dimension must be positive");
    }
    int e = 1;
    while (e < d) {
        e <<= 1;
    }
    return e;
}

int qubits_for_dimension(int d) {
    const int e = embedded_dimension(d);
    int q = 0;
    while ((1 << q) < e) {
        ++q;
    }
    return std::max(q, 1);
}

ComplexMatrix embed_dimension(const ComplexMatrix& a) {
    require_square(a, "embed_dimension");
    const int d = static_cast<int>(a.rows());
    const int e = embedded_dimension(d);
    if (e == d) {
        return a;
    }
    ComplexMatrix out = ComplexMatrix::Zero(e, e);
    out.topLeftCorner(d, d) = a;
    return out;
}

PauliDecomposition decompose(const ComplexMatrix& a, const PauliBasis& basis) {
    if (a.rows() != basis.dim() || a.cols() != basis.dim()) {
        throw DimensionError("pauli", "operator dimension " + std::to_string(a.rows()) +
                                          " does not match basis dimension " + std::to_string(basis.dim()));
    }
    std::vector<PauliTerm> terms;
    const double inv_d = 1.0 / basis.dim();
    for (std::size_t k = 0; k < basis.size(); ++k) {
        const Complex q = basis.trace_product(k, a) * inv_d;
        if (std::abs(q) >= tol::pauli_prune) {
            terms.push_back({k, q});
        }
    }
    return PauliDecomposition(basis.qubits(), std::move(terms));
}

CoefficientBounds coefficient_bounds(const PauliDecomposition& dec) {
    CoefficientBounds b{0.0, 0.0, std::sqrt(static_cast<double>(dec.support_size()))};
    for (const auto& term : dec.terms()) {
        const double m = std::abs(term.coeff);
        b.l2 += m * m;
        b.l1 += m;
    }
    return b;
}

} // namespace dysonsim
