#include "dysonsim/shots.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dysonsim/dyson.hpp"
#include "dysonsim/errors.hpp"
#include "dysonsim/tolerances.hpp"

namespace dysonsim {

Complex exact_chain_expectation(const CorrelatorChain& chain, const PauliBasis& basis, const ComplexMatrix& rho0,
                                const Propagator& propagator) {
    require_conformable(rho0, basis.element(0), "exact_chain_expectation");
    ComplexMatrix product = ComplexMatrix::Identity(basis.dim(), basis.dim());
    for (const ChainFactor& f : chain.factors) {
        product = product * propagator.heisenberg(basis.element(f.basis_index), f.time);
    }
    return (rho0 * product).trace();
}

namespace {

int bernoulli_sign(double mean, CounterRng& rng) {
    if (std::abs(mean) > 1.0 + tol::shot_probability || !std::isfinite(mean)) {
        throw NumericalError("shots", "correlator mean " + std::to_string(mean) + " lies outside [-1, 1]");
    }
    const double p_plus = 0.5 * (1.0 + std::clamp(mean, -1.0, 1.0));
    return rng.uniform() < p_plus ? 1 : -1;
}

} // namespace

ShotOutcome draw_shot(Complex mean, CounterRng& rng) {
    ShotOutcome out;
    out.sample_index = rng.sample();
    out.stream_id = rng.stream();
    out.real_part = bernoulli_sign(mean.real(), rng);
    out.imag_part = bernoulli_sign(mean.imag(), rng);
    return out;
}

ShotOutcome single_shot(const CorrelatorChain& chain, const PauliBasis& basis, const ComplexMatrix& rho0,
                        const Propagator& propagator, CounterRng& rng) {
    return draw_shot(exact_chain_expectation(chain, basis, rho0, propagator), rng);
}

ShotProtocol::ShotProtocol(const LindbladModel& model, const DensityMatrix& rho0, const ComplexMatrix& observable)
    : model_([&model] {
          std::vector<LindbladChannel> channels;
          for (const auto& c : model.channels()) {
              channels.push_back({embed_dimension(c.op), c.rate, c.label});
          }
          return LindbladModel(embed_dimension(model.hamiltonian()), std::move(channels));
      }()),
      basis_(&PauliBasis::for_qubits(qubits_for_dimension(model.dim()))),
      propagator_(model_.hamiltonian()),
      rho0_(embed_dimension(rho0.matrix())),
      observable_(embed_dimension(observable)) {
    require_conformable(model.hamiltonian(), rho0.matrix(), "ShotProtocol");
    require_conformable(model.hamiltonian(), observable, "ShotProtocol");
    observable_dec_ = decompose(observable_, *basis_);
    observable_norm_ = spectral_norm(observable_);
    observable_l1_ = coefficient_bounds(observable_dec_).l1;
    for (const auto& c : model_.channels()) {
        channel_dec_.push_back(decompose(c.op, *basis_));
        const double norm = spectral_norm(c.op);
        channel_factor_.push_back(static_cast<double>(channel_dec_.back().support_size()) * norm * norm);
        max_support_ = std::max(max_support_, channel_dec_.back().support_size());
    }
    basis_frame_.reserve(basis_->size());
    for (std::size_t k = 0; k < basis_->size(); ++k) {
        basis_frame_.push_back(propagator_.to_frame(basis_->element(k)));
    }
    rho0_frame_ = propagator_.to_frame(rho0_);
}

std::size_t ShotProtocol::chains_per_sample(std::span<const std::size_t> channels) const {
    std::size_t count = observable_dec_.support_size();
    for (std::size_t i : channels) {
        const std::size_t m = channel_dec_.at(i).support_size();
        count *= 3 * m * m;
    }
    return count;
}

double ShotProtocol::magnitude_bound(int n, double gamma_bar) const {
    return 2.0 * std::sqrt(static_cast<double>(observable_support())) * observable_norm_ *
           std::pow(2.0 * gamma_bar * static_cast<double>(max_support_), n);
}

namespace {

struct LevelOps {
    std::size_t channel;
    double time;
    double rate;
    const std::vector<PauliTerm>* terms;
    std::vector<ComplexMatrix> heis;  // Q_a(s) in the frame, one per term
};

} // namespace

template <class Leaf>
void ShotProtocol::enumerate(std::span<const std::size_t> channels, std::span<const double> times, double t,
                             Leaf&& leaf) const {
    if (channels.size() != times.size()) {
        throw ValidationError("shots", "adjoint chain needs one time per channel");
    }
    double prev = t;
    for (std::size_t k = 0; k < times.size(); ++k) {
        if (channels[k] >= channel_count()) {
            throw ValidationError("shots", "channel index " + std::to_string(channels[k]) + " out of range");
        }
        if (times[k] > prev || times[k] < 0.0) {
            throw ValidationError("shots", "chain times must satisfy t >= s_1 >= ... >= s_n >= 0");
        }
        prev = times[k];
    }

    std::vector<LevelOps> levels;
    levels.reserve(channels.size());
    for (std::size_t k = 0; k < channels.size(); ++k) {
        LevelOps lv{channels[k], times[k], model_.channel(channels[k]).rate(times[k]),
                    &channel_dec_[channels[k]].terms(), {}};
        for (const PauliTerm& term : *lv.terms) {
            ComplexMatrix q = basis_frame_[term.index];
            propagator_.heisenberg_in_frame(q, lv.time);
            lv.heis.push_back(std::move(q));
        }
        levels.push_back(std::move(lv));
    }
    std::vector<ComplexMatrix> observable_terms;
    for (const PauliTerm& term : observable_dec_.terms()) {
        ComplexMatrix q = basis_frame_[term.index];
        propagator_.heisenberg_in_frame(q, t);
        observable_terms.push_back(std::move(q));
    }

    // W_n = rho, W_{k-1} = R_k W_k P_k and <B> = Tr(W_0 Q_l(t)). `left` collects
    // P_n ... P_1 in order; `right_rev` collects R_n ... R_1 with each group
    // reversed, so reversing it yields R_1 ... R_n.
    std::vector<ChainFactor> left;
    std::vector<ChainFactor> right_rev;
    const auto visit = [&](auto&& self, int level, const ComplexMatrix& w, Complex coeff) -> void {
        if (level < 0) {
            for (std::size_t l = 0; l < observable_terms.size(); ++l) {
                const PauliTerm& term = observable_dec_.terms()[l];
                const Complex mean = (w.transpose().cwiseProduct(observable_terms[l])).sum();
                leaf(coeff * term.coeff, mean, left, ChainFactor{term.index, t}, right_rev);
            }
            return;
        }
        const LevelOps& lv = levels[static_cast<std::size_t>(level)];
        const auto& terms = *lv.terms;
        for (const DissipatorTerm& dt : dissipator_terms(lv.channel)) {
            for (std::size_t a = 0; a < terms.size(); ++a) {
                for (std::size_t b = 0; b < terms.size(); ++b) {
                    const Complex c = coeff * (dt.weight * lv.rate) * std::conj(terms[a].coeff) * terms[b].coeff;
                    const ChainFactor fa{terms[a].index, lv.time};
                    const ChainFactor fb{terms[b].index, lv.time};
                    const ComplexMatrix& qa = lv.heis[a];
                    const ComplexMatrix& qb = lv.heis[b];
                    switch (dt.variant) {
                    case DissipatorVariant::sandwich:
                        left.push_back(fa);
                        right_rev.push_back(fb);
                        self(self, level - 1, qb * w * qa, c);
                        left.pop_back();
                        right_rev.pop_back();
                        break;
                    case DissipatorVariant::left:
                        left.push_back(fa);
                        left.push_back(fb);
                        self(self, level - 1, (w * qa) * qb, c);
                        left.resize(left.size() - 2);
                        break;
                    case DissipatorVariant::right:
                        right_rev.push_back(fb);
                        right_rev.push_back(fa);
                        self(self, level - 1, qa * (qb * w), c);
                        right_rev.resize(right_rev.size() - 2);
                        break;
                    }
                }
            }
        }
    };
    visit(visit, static_cast<int>(levels.size()) - 1, rho0_frame_, Complex(1.0, 0.0));
}

std::vector<CorrelatorChain> ShotProtocol::expand(std::span<const std::size_t> channels,
                                                  std::span<const double> times, double t) const {
    std::vector<CorrelatorChain> chains;
    enumerate(channels, times, t,
              [&chains](Complex prefactor, Complex, const std::vector<ChainFactor>& left, ChainFactor center,
                        const std::vector<ChainFactor>& right_rev) {
                  CorrelatorChain chain;
                  chain.prefactor = prefactor;
                  chain.factors = left;
                  chain.factors.push_back(center);
                  chain.factors.insert(chain.factors.end(), right_rev.rbegin(), right_rev.rend());
                  chains.push_back(std::move(chain));
              });
    return chains;
}

Complex ShotProtocol::exact_mean(std::span<const std::size_t> channels, std::span<const double> times,
                                 double t) const {
    Complex total{0.0, 0.0};
    enumerate(channels, times, t,
              [&total](Complex prefactor, Complex mean, const auto&, ChainFactor, const auto&) {
                  total += prefactor * mean;
              });
    return total;
}

double ShotProtocol::single_shot_A(std::span<const std::size_t> channels, std::span<const double> times, double t,
                                   CounterRng& rng) const {
    double value = 0.0;
    enumerate(channels, times, t,
              [&value, &rng](Complex prefactor, Complex mean, const auto&, ChainFactor, const auto&) {
                  const ShotOutcome shot = draw_shot(mean, rng);
                  // Re(c (r + i m)) = Re(c) r - Im(c) m
                  value += prefactor.real() * shot.real_part - prefactor.imag() * shot.imag_part;
              });
    double bound = 2.0 * observable_l1_;
    for (std::size_t k = 0; k < channels.size(); ++k) {
        bound *= 2.0 * std::abs(model_.channel(channels[k]).rate(times[k])) * channel_factor_[channels[k]];
    }
    if (std::abs(value) > bound * (1.0 + 1e-12) + 1e-300) {
        throw NumericalError("shots", "single-shot value " + std::to_string(value) + " exceeds its magnitude bound " +
                                          std::to_string(bound));
    }
    return value;
}

double single_shot_A(const ShotProtocol& protocol, std::span<const std::size_t> channels,
                     std::span<const double> times, double t, CounterRng& rng) {
    return protocol.single_shot_A(channels, times, t, rng);
}

} // namespace dysonsim
