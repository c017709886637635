#pragma once

#include <span>
#include <string>
#include <vector>

#include "dysonsim/linalg.hpp"
#include "dysonsim/rate.hpp"

namespace dysonsim {

struct LindbladChannel {
    ComplexMatrix op;
    RateFunction rate;
    std::string label;
};

// d rho/dt = -i[H, rho] + sum_i gamma_i(t) (L_i rho L_i^+ - 1/2 {L_i^+ L_i, rho})
// with a time-independent Hamiltonian and Lindblad operators.
class LindbladModel {
public:
    LindbladModel(ComplexMatrix hamiltonian, std::vector<LindbladChannel> channels);

    int dim() const noexcept { return static_cast<int>(hamiltonian_.rows()); }
    const ComplexMatrix& hamiltonian() const noexcept { return hamiltonian_; }
    std::span<const LindbladChannel> channels() const noexcept { return channels_; }
    std::size_t channel_count() const noexcept { return channels_.size(); }
    const LindbladChannel& channel(std::size_t i) const;

    // True when every ||L_i||_inf equals 1 within `tol`.
    bool is_normalized(double tol = 1e-10) const;

    // max_{i, s in [0,t]} |gamma_i(s)|
    double gamma_bar(double t) const;

    LindbladModel with_rate(std::size_t channel, RateFunction rate) const;

private:
    ComplexMatrix hamiltonian_;
    std::vector<LindbladChannel> channels_;
};

// H - i Gamma with H and Gamma Hermitian.
class NonHermitianModel {
public:
    NonHermitianModel(ComplexMatrix hamiltonian, ComplexMatrix gamma);

    int dim() const noexcept { return static_cast<int>(hamiltonian_.rows()); }
    const ComplexMatrix& hamiltonian() const noexcept { return hamiltonian_; }
    const ComplexMatrix& gamma() const noexcept { return gamma_; }
    // Gamma >= 0 is what makes ||rho(t)||_1 non-increasing.
    bool gamma_positive_semidefinite() const noexcept { return gamma_psd_; }
    double gamma_norm() const noexcept { return gamma_norm_; }

private:
    ComplexMatrix hamiltonian_;
    ComplexMatrix gamma_;
    bool gamma_psd_ = false;
    double gamma_norm_ = 0.0;
};

// Hermitian, unit trace, positive semidefinite (all within tolerance).
class DensityMatrix {
public:
    explicit DensityMatrix(ComplexMatrix m, double tol = 1e-10);

    static DensityMatrix pure(const ComplexVector& psi);

    const ComplexMatrix& matrix() const noexcept { return m_; }
    int dim() const noexcept { return static_cast<int>(m_.rows()); }

private:
    ComplexMatrix m_;
};

// L_i -> L_i / ||L_i||, gamma_i -> ||L_i||^2 gamma_i. The generator is unchanged.
LindbladModel normalize_lindblads(const LindbladModel& model);

ComplexMatrix lindblad_rhs(const LindbladModel& model, const ComplexMatrix& rho, double s);

// Dissipator restricted to the listed channels, without the Hamiltonian term.
ComplexMatrix dissipator_only(const LindbladModel& model, const ComplexMatrix& rho, double s,
                              std::span<const std::size_t> which);

// Full dissipator L_D^s rho.
ComplexMatrix dissipator(const LindbladModel& model, const ComplexMatrix& rho, double s);

// Heisenberg-picture adjoint of one channel without its rate:
// L^+ X L - 1/2 {L^+ L, X}.
ComplexMatrix adjoint_channel_unit(const ComplexMatrix& op, const ComplexMatrix& x);

// Heisenberg-picture adjoint of the full dissipator, sum_i gamma_i(s) (...).
ComplexMatrix adjoint_dissipator(const LindbladModel& model, const ComplexMatrix& x, double s);

// -i[H, rho] - {Gamma, rho}
ComplexMatrix non_hermitian_rhs(const NonHermitianModel& model, const ComplexMatrix& rho);

} // namespace dysonsim
