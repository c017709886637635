#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dysonsim/linalg.hpp"
#include "dysonsim/model.hpp"
#include "dysonsim/oracle.hpp"
#include "dysonsim/pauli.hpp"
#include "dysonsim/rng.hpp"

namespace dysonsim {

struct ChainFactor {
    std::size_t basis_index;
    double time;
};

// Product B = Q_{k_1}(tau_1) Q_{k_2}(tau_2) ... of Heisenberg-picture basis
// elements, weighted by a complex prefactor.
struct CorrelatorChain {
    std::vector<ChainFactor> factors;
    Complex prefactor{1.0, 0.0};
};

// One Hadamard-test repetition for the real part and one for the imaginary part.
struct ShotOutcome {
    int real_part = 1;
    int imag_part = 1;
    std::uint64_t sample_index = 0;
    std::uint32_t stream_id = 0;
};

// Tr(rho0 B) with every Q(tau) = e^{iH tau} Q e^{-iH tau}.
Complex exact_chain_expectation(const CorrelatorChain& chain, const PauliBasis& basis, const ComplexMatrix& rho0,
                                const Propagator& propagator);

// +/-1 outcomes with means Re<B> and Im<B>. The chain prefactor is not applied.
ShotOutcome draw_shot(Complex mean, CounterRng& rng);

ShotOutcome single_shot(const CorrelatorChain& chain, const PauliBasis& basis, const ComplexMatrix& rho0,
                        const Propagator& propagator, CounterRng& rng);

// Pauli-decomposed view of a (model, initial state, observable) triple, with
// every operator embedded into a power-of-two dimension. Expands adjoint
// chains into correlator chains and emulates their single-shot measurement.
//
// Chains are enumerated from the outermost dissipator (s_n) inwards; at each
// level the variants come in the order sandwich, left, right and the Pauli
// pairs (a, b) in decomposition order, with the observable terms innermost.
class ShotProtocol {
public:
    ShotProtocol(const LindbladModel& model, const DensityMatrix& rho0, const ComplexMatrix& observable);

    const LindbladModel& model() const noexcept { return model_; }
    const PauliBasis& basis() const noexcept { return *basis_; }
    const Propagator& propagator() const noexcept { return propagator_; }
    const ComplexMatrix& state() const noexcept { return rho0_; }
    const ComplexMatrix& observable() const noexcept { return observable_; }
    const PauliDecomposition& observable_decomposition() const noexcept { return observable_dec_; }
    const PauliDecomposition& channel_decomposition(std::size_t i) const { return channel_dec_.at(i); }

    std::size_t channel_count() const noexcept { return model_.channel_count(); }
    // M = max_i M_i and M_O.
    std::size_t max_support() const noexcept { return max_support_; }
    std::size_t observable_support() const noexcept { return observable_dec_.support_size(); }
    double observable_norm() const noexcept { return observable_norm_; }

    std::size_t chains_per_sample(std::span<const std::size_t> channels) const;

    std::vector<CorrelatorChain> expand(std::span<const std::size_t> channels, std::span<const double> times,
                                        double t) const;

    // Sum of prefactor * <B> over all chains, i.e. <A_[i](s)>.
    Complex exact_mean(std::span<const std::size_t> channels, std::span<const double> times, double t) const;

    // One independent (real, imag) shot per chain, combined with the complex
    // prefactors; returns the real part of the aggregate.
    double single_shot_A(std::span<const std::size_t> channels, std::span<const double> times, double t,
                         CounterRng& rng) const;

    // 2 sqrt(M_O) ||O|| (2 gamma_bar M)^n
    double magnitude_bound(int n, double gamma_bar) const;

private:
    template <class Leaf>
    void enumerate(std::span<const std::size_t> channels, std::span<const double> times, double t, Leaf&& leaf) const;

    LindbladModel model_;
    const PauliBasis* basis_;
    Propagator propagator_;
    ComplexMatrix rho0_;
    ComplexMatrix observable_;
    PauliDecomposition observable_dec_;
    std::vector<PauliDecomposition> channel_dec_;
    std::vector<double> channel_factor_;  // M_i ||L_i||^2
    std::vector<ComplexMatrix> basis_frame_;  // basis elements in the energy eigenframe
    ComplexMatrix rho0_frame_;
    std::size_t max_support_ = 0;
    double observable_norm_ = 0.0;
    double observable_l1_ = 0.0;
};

// Free-function form of ShotProtocol::single_shot_A for a fully specified chain.
double single_shot_A(const ShotProtocol& protocol, std::span<const std::size_t> channels,
                     std::span<const double> times, double t, CounterRng& rng);

} // namespace dysonsim
