#pragma once

#include <array>
#include <span>
#include <vector>

#include "dysonsim/linalg.hpp"
#include "dysonsim/model.hpp"
#include "dysonsim/oracle.hpp"

namespace dysonsim {

// One of the three pieces of a single-channel adjoint dissipator,
// gamma_i(s) (L^+ X L - 1/2 L^+L X - 1/2 X L^+L).
enum class DissipatorVariant { sandwich, left, right };

struct DissipatorTerm {
    std::size_t channel;
    DissipatorVariant variant;
    double weight;  // +1, -1/2, -1/2; multiplied by gamma_i(s) at use
};

std::array<DissipatorTerm, 3> dissipator_terms(std::size_t channel);

const char* to_string(DissipatorVariant v);

// weight * (L^+ X L | L^+L X | X L^+L), without the rate.
ComplexMatrix apply_adjoint_term(const DissipatorTerm& term, const ComplexMatrix& op, const ComplexMatrix& x);

struct VolterraOptions {
    int grid_steps = 4096;
    // Maximum accepted trace-norm discrepancy estimate between the trapezoid
    // results on the full and the half grid.
    double tolerance = 1e-6;
};

// Partial sums rho~_0(t), ..., rho~_n(t) of the iterated Volterra series.
struct VolterraSeries {
    std::vector<ComplexMatrix> partial_sums;
    double quadrature_error = 0.0;

    // rho_i(t) = rho~_i - rho~_{i-1}; rho_0 = rho~_0.
    ComplexMatrix term(int i) const;
    const ComplexMatrix& truncated() const { return partial_sums.back(); }
};

// Applies rho~_k(t) = e^{t L_H} rho(0) + int_0^t e^{(t-s) L_H} L_D^s rho~_{k-1}(s) ds
// n times on a uniform grid with trapezoidal quadrature.
VolterraSeries volterra_series(const LindbladModel& model, const DensityMatrix& rho0, double t, int n,
                               const VolterraOptions& options = {});

ComplexMatrix volterra_truncated(const LindbladModel& model, const DensityMatrix& rho0, double t, int n,
                                 const VolterraOptions& options = {});

// Same recursion with the perturbation L_Gamma rho = -{Gamma, rho}.
VolterraSeries volterra_series_non_hermitian(const NonHermitianModel& model, const ComplexMatrix& rho0, double t,
                                             int n, const VolterraOptions& options = {});

// A_[i_1..i_n](s_1..s_n): the observable propagated backwards through the
// interleaved Heisenberg evolutions and adjoint single-channel dissipators.
struct AdjointChainSpec {
    std::vector<std::size_t> channels;  // i_1, ..., i_n (0-based)
    std::vector<double> times;          // t >= s_1 >= ... >= s_n >= 0
    double t = 0.0;
    ComplexMatrix observable;

    int order() const noexcept { return static_cast<int>(channels.size()); }
    // Throws ValidationError for unsorted times, out-of-range channels or a
    // length mismatch.
    void validate(std::size_t channel_count) const;
};

ComplexMatrix build_adjoint_chain(const AdjointChainSpec& spec, const LindbladModel& model);

// Evaluates <A_[i](s)> = Tr(rho0 A) repeatedly for one (model, rho0, O) triple,
// working in the Hamiltonian eigenbasis.
class AdjointChainEvaluator {
public:
    AdjointChainEvaluator(const LindbladModel& model, const ComplexMatrix& rho0, const ComplexMatrix& observable);

    Complex expectation(std::span<const std::size_t> channels, std::span<const double> times, double t) const;

    const LindbladModel& model() const noexcept { return model_; }
    const Propagator& propagator() const noexcept { return propagator_; }

    // Building blocks for nested quadrature in the eigenframe.
    const ComplexMatrix& observable_frame() const noexcept { return observable_; }
    const ComplexMatrix& state_frame() const noexcept { return rho0_; }
    const ComplexMatrix& channel_frame(std::size_t i) const { return ops_.at(i); }
    // Tr(rho0 * heisenberg(x, s)) with x in the frame.
    Complex close(const ComplexMatrix& x, double s) const;

private:
    LindbladModel model_;
    Propagator propagator_;
    ComplexMatrix rho0_;
    ComplexMatrix observable_;
    std::vector<ComplexMatrix> ops_;
};

struct DysonOptions {
    int quad_points = 24;
    // When positive, the result is recomputed with quad_points/2 nodes and a
    // QuadratureError is thrown if the two differ by more than this.
    double tolerance = 1e-6;
};

inline constexpr int kMaxDysonOrder = 4;

// Order-n contribution sum_[i] int dV_n <A_[i](s)> by iterated Gauss-Legendre
// quadrature over the simplex t >= s_1 >= ... >= s_n >= 0.
double dyson_expectation_exact(const LindbladModel& model, const DensityMatrix& rho0, const ComplexMatrix& observable,
                               double t, int n, const DysonOptions& options = {});

// First-order correction written out as two-time correlation functions of the
// Lindblad operators and the observable.
double first_order_expanded(const LindbladModel& model, const DensityMatrix& rho0, const ComplexMatrix& observable,
                            double t, int quad_points = 24);

} // namespace dysonsim
