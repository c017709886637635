#include "dysonsim/model.hpp"

#include <algorithm>
#include <string>

#include <Eigen/Eigenvalues>

#include "dysonsim/errors.hpp"
#include "dysonsim/tolerances.hpp"

namespace dysonsim {

LindbladModel::LindbladModel(ComplexMatrix hamiltonian, std::vector<LindbladChannel> channels)
    : hamiltonian_(std::move(hamiltonian)), channels_(std::move(channels)) {
    require_square(hamiltonian_, "LindbladModel hamiltonian");
    if (!is_finite(hamiltonian_)) {
        throw ValidationError("model", "Hamiltonian has non-finite entries");
    }
    if (!is_hermitian(hamiltonian_, tol::hermiticity)) {
        throw ValidationError("model", "Hamiltonian is not Hermitian");
    }
    for (std::size_t i = 0; i < channels_.size(); ++i) {
        const ComplexMatrix& op = channels_[i].op;
        if (op.rows() != hamiltonian_.rows() || op.cols() != hamiltonian_.cols()) {
            throw DimensionError("model", "Lindblad operator " + std::to_string(i) + " does not match the system dimension");
        }
        if (!is_finite(op)) {
            throw ValidationError("model", "Lindblad operator " + std::to_string(i) + " has non-finite entries");
        }
    }
}

const LindbladChannel& LindbladModel::channel(std::size_t i) const {
    if (i >= channels_.size()) {
        throw ValidationError("model", "channel index " + std::to_string(i) + " out of range");
    }
    return channels_[i];
}

bool LindbladModel::is_normalized(double tol) const {
    return std::all_of(channels_.begin(), channels_.end(),
                       [tol](const LindbladChannel& c) { return std::abs(spectral_norm(c.op) - 1.0) <= tol; });
}

double LindbladModel::gamma_bar(double t) const {
    double best = 0.0;
    for (const auto& c : channels_) {
        best = std::max(best, c.rate.max_abs(t));
    }
    return best;
}

LindbladModel LindbladModel::with_rate(std::size_t channel, RateFunction rate) const {
    std::vector<LindbladChannel> copy = channels_;
    if (channel >= copy.size()) {
        throw ValidationError("model", "channel index " + std::to_string(channel) + " out of range");
    }
    copy[channel].rate = std::move(rate);
    return LindbladModel(hamiltonian_, std::move(copy));
}

NonHermitianModel::NonHermitianModel(ComplexMatrix hamiltonian, ComplexMatrix gamma)
    : hamiltonian_(std::move(hamiltonian)), gamma_(std::move(gamma)) {
    require_conformable(hamiltonian_, gamma_, "NonHermitianModel");
    if (!is_hermitian(hamiltonian_, tol::hermiticity)) {
        throw ValidationError("model", "Hamiltonian is not Hermitian");
    }
    if (!is_hermitian(gamma_, tol::hermiticity)) {
        throw ValidationError("model", "Gamma is not Hermitian");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gamma_, Eigen::EigenvaluesOnly);
    gamma_psd_ = solver.eigenvalues().minCoeff() >= -tol::positivity;
    gamma_norm_ = solver.eigenvalues().cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(ComplexMatrix m, double tol) : m_(std::move(m)) {
    require_square(m_, "DensityMatrix");
    if (!is_finite(m_)) {
        throw ValidationError("model", "density matrix has non-finite entries");
    }
    if (!is_hermitian(m_, tol)) {
        throw ValidationError("model", "density matrix is not Hermitian");
    }
    if (std::abs(m_.trace() - Complex(1.0)) > tol) {
        throw ValidationError("model", "density matrix trace differs from 1");
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(m_, Eigen::EigenvaluesOnly);
    if (solver.eigenvalues().minCoeff() < -tol) {
        throw ValidationError("model", "density matrix has a negative eigenvalue");
    }
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
    const double norm = psi.norm();
    if (psi.size() == 0 || !(norm > 0.0)) {
        throw ValidationError("model", "state vector must be non-zero");
    }
    const ComplexVector unit = psi / norm;
    return DensityMatrix(unit * unit.adjoint());
}

LindbladModel normalize_lindblads(const LindbladModel& model) {
    std::vector<LindbladChannel> channels;
    channels.reserve(model.channel_count());
    for (std::size_t i = 0; i < model.channel_count(); ++i) {
        const LindbladChannel& c = model.channel(i);
        const double norm = spectral_norm(c.op);
        if (!(norm > 0.0)) {
            throw ValidationError("model", "Lindblad operator " + std::to_string(i) + " is zero");
        }
        // gamma multiplies L twice in the generator, hence the square.
        channels.push_back({c.op / norm, c.rate.scaled(norm * norm), c.label});
    }
    return LindbladModel(model.hamiltonian(), std::move(channels));
}

namespace {

void add_channel(ComplexMatrix& out, const ComplexMatrix& op, double gamma, const ComplexMatrix& rho) {
    if (gamma == 0.0) {
        return;
    }
    const ComplexMatrix ldl = op.adjoint() * op;
    out.noalias() += gamma * (op * rho * op.adjoint());
    out.noalias() -= (0.5 * gamma) * (ldl * rho + rho * ldl);
}

void require_state_dim(const LindbladModel& model, const ComplexMatrix& rho, const char* what) {
    require_square(rho, what);
    if (rho.rows() != model.dim()) {
        throw DimensionError("model", std::string(what) + ": state dimension " + std::to_string(rho.rows()) +
                                          " does not match model dimension " + std::to_string(model.dim()));
    }
}

} // namespace

ComplexMatrix dissipator(const LindbladModel& model, const ComplexMatrix& rho, double s) {
    require_state_dim(model, rho, "dissipator");
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (const auto& c : model.channels()) {
        add_channel(out, c.op, c.rate(s), rho);
    }
    return out;
}

ComplexMatrix lindblad_rhs(const LindbladModel& model, const ComplexMatrix& rho, double s) {
    require_state_dim(model, rho, "lindblad_rhs");
    const ComplexMatrix& h = model.hamiltonian();
    ComplexMatrix out = -kI * (h * rho - rho * h);
    for (const auto& c : model.channels()) {
        add_channel(out, c.op, c.rate(s), rho);
    }
    return out;
}

ComplexMatrix dissipator_only(const LindbladModel& model, const ComplexMatrix& rho, double s,
                              std::span<const std::size_t> which) {
    require_state_dim(model, rho, "dissipator_only");
    ComplexMatrix out = ComplexMatrix::Zero(rho.rows(), rho.cols());
    for (std::size_t i : which) {
        const LindbladChannel& c = model.channel(i);
        add_channel(out, c.op, c.rate(s), rho);
    }
    return out;
}

ComplexMatrix adjoint_channel_unit(const ComplexMatrix& op, const ComplexMatrix& x) {
    const ComplexMatrix ldl = op.adjoint() * op;
    return op.adjoint() * x * op - 0.5 * (ldl * x + x * ldl);
}

ComplexMatrix adjoint_dissipator(const LindbladModel& model, const ComplexMatrix& x, double s) {
    require_state_dim(model, x, "adjoint_dissipator");
    ComplexMatrix out = ComplexMatrix::Zero(x.rows(), x.cols());
    for (const auto& c : model.channels()) {
        const double g = c.rate(s);
        if (g != 0.0) {
            out += g * adjoint_channel_unit(c.op, x);
        }
    }
    return out;
}

ComplexMatrix non_hermitian_rhs(const NonHermitianModel& model, const ComplexMatrix& rho) {
    require_conformable(model.hamiltonian(), rho, "non_hermitian_rhs");
    const ComplexMatrix& h = model.hamiltonian();
    const ComplexMatrix& g = model.gamma();
    return -kI * (h * rho - rho * h) - (g * rho + rho * g);
}

} // namespace dysonsim
