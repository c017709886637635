#include "dysonsim/oracle.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "dysonsim/errors.hpp"
#include "dysonsim/tolerances.hpp"

namespace dysonsim {

Propagator::Propagator(const ComplexMatrix& hamiltonian) {
    require_square(hamiltonian, "Propagator");
    if (!is_hermitian(hamiltonian, tol::hermiticity)) {
        throw ValidationError("oracle", "propagator requires a Hermitian Hamiltonian");
    }
    const ComplexMatrix h = 0.5 * (hamiltonian + hamiltonian.adjoint());
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw NumericalError("oracle", "Hamiltonian diagonalization failed");
    }
    energies_ = solver.eigenvalues();
    vectors_ = solver.eigenvectors();
}

ComplexMatrix Propagator::unitary(double t) const {
    const ComplexVector phases = (energies_.cast<Complex>() * Complex(0.0, -t)).array().exp();
    return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

ComplexMatrix Propagator::to_frame(const ComplexMatrix& x) const {
    return vectors_.adjoint() * x * vectors_;
}

ComplexMatrix Propagator::from_frame(const ComplexMatrix& x) const {
    return vectors_ * x * vectors_.adjoint();
}

void Propagator::heisenberg_in_frame(ComplexMatrix& x, double s) const {
    if (s == 0.0) {
        return;
    }
    const Eigen::Index d = x.rows();
    const ComplexVector left = (energies_.cast<Complex>() * Complex(0.0, s)).array().exp();
    for (Eigen::Index b = 0; b < d; ++b) {
        const Complex right = std::conj(left(b));
        for (Eigen::Index a = 0; a < d; ++a) {
            x(a, b) *= left(a) * right;
        }
    }
}

void Propagator::evolve_in_frame(ComplexMatrix& x, double t) const {
    heisenberg_in_frame(x, -t);
}

ComplexMatrix Propagator::heisenberg(const ComplexMatrix& x, double s) const {
    require_conformable(vectors_, x, "heisenberg");
    ComplexMatrix f = to_frame(x);
    heisenberg_in_frame(f, s);
    return from_frame(f);
}

ComplexMatrix Propagator::evolve(const ComplexMatrix& rho, double t) const {
    return heisenberg(rho, -t);
}

const ComplexMatrix& PropagatorCache::unitary(double t) const {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(t);
    if (it == cache_.end()) {
        it = cache_.emplace(t, propagator_.unitary(t)).first;
    }
    return it->second;
}

std::size_t PropagatorCache::size() const {
    std::lock_guard lock(mutex_);
    return cache_.size();
}

DensityMatrix evolve_unitary(const ComplexMatrix& hamiltonian, const DensityMatrix& rho0, double t) {
    require_conformable(hamiltonian, rho0.matrix(), "evolve_unitary");
    const Propagator prop(hamiltonian);
    ComplexMatrix rho = prop.evolve(rho0.matrix(), t);
    rho = 0.5 * (rho + rho.adjoint());
    return DensityMatrix(std::move(rho), tol::algebraic);
}

ComplexMatrix heisenberg(const ComplexMatrix& hamiltonian, const ComplexMatrix& xi, double s) {
    require_conformable(hamiltonian, xi, "heisenberg");
    return Propagator(hamiltonian).heisenberg(xi, s);
}

int default_oracle_steps(double t, int steps_per_unit_time) {
    return std::max(16, static_cast<int>(std::ceil(std::abs(t) * steps_per_unit_time)));
}

namespace {

template <class Rhs>
ComplexMatrix rk4_step(const Rhs& rhs, const ComplexMatrix& rho, double s, double h) {
    const ComplexMatrix k1 = rhs(rho, s);
    const ComplexMatrix k2 = rhs(rho + (0.5 * h) * k1, s + 0.5 * h);
    const ComplexMatrix k3 = rhs(rho + (0.5 * h) * k2, s + 0.5 * h);
    const ComplexMatrix k4 = rhs(rho + h * k3, s + h);
    ComplexMatrix next = rho + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    return 0.5 * (next + next.adjoint());
}

void check_positive(const ComplexMatrix& rho, double s) {
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho, Eigen::EigenvaluesOnly);
    const double lowest = solver.eigenvalues().minCoeff();
    if (!std::isfinite(lowest)) {
        throw StiffnessError("oracle", "integrator produced non-finite state at s = " + std::to_string(s));
    }
    if (lowest < -tol::stiffness) {
        throw StiffnessError("oracle", "state eigenvalue " + std::to_string(lowest) + " at s = " + std::to_string(s) +
                                           "; reduce the step size (increase oracle steps)");
    }
}

void require_steps(int steps) {
    if (steps < 1) {
        throw ValidationError("oracle", "integrator needs at least one step");
    }
}

} // namespace

DensityMatrix integrate_master(const LindbladModel& model, const DensityMatrix& rho0, double t, int steps,
                               double t0) {
    require_steps(steps);
    if (rho0.dim() != model.dim()) {
        throw DimensionError("oracle", "initial state dimension does not match the model");
    }
    const auto rhs = [&model](const ComplexMatrix& rho, double s) { return lindblad_rhs(model, rho, s); };
    const double h = t / steps;
    ComplexMatrix rho = rho0.matrix();
    for (int k = 0; k < steps; ++k) {
        const double s = t0 + k * h;
        rho = rk4_step(rhs, rho, s, h);
        check_positive(rho, s + h);
    }
    return DensityMatrix(std::move(rho), tol::stiffness);
}

std::vector<DensityMatrix> integrate_master_at(const LindbladModel& model, const DensityMatrix& rho0,
                                               const std::vector<double>& times, int steps_per_unit_time) {
    std::vector<DensityMatrix> out;
    out.reserve(times.size());
    DensityMatrix current = rho0;
    double now = 0.0;
    for (double target : times) {
        if (target < now) {
            throw ValidationError("oracle", "times must be sorted ascending and non-negative");
        }
        if (target > now) {
            current = integrate_master(model, current, target - now, default_oracle_steps(target - now, steps_per_unit_time), now);
            now = target;
        }
        out.push_back(current);
    }
    return out;
}

std::vector<ComplexMatrix> non_hermitian_trajectory(const NonHermitianModel& model, const ComplexMatrix& rho0,
                                                    double t, int steps, int record_every) {
    require_steps(steps);
    require_conformable(model.hamiltonian(), rho0, "integrate_non_hermitian");
    if (record_every < 1) {
        throw ValidationError("oracle", "record_every must be positive");
    }
    const auto rhs = [&model](const ComplexMatrix& rho, double) { return non_hermitian_rhs(model, rho); };
    const double h = t / steps;
    std::vector<ComplexMatrix> out{rho0};
    ComplexMatrix rho = rho0;
    for (int k = 0; k < steps; ++k) {
        rho = rk4_step(rhs, rho, k * h, h);
        check_positive(rho, (k + 1) * h);
        if ((k + 1) % record_every == 0 || k + 1 == steps) {
            out.push_back(rho);
        }
    }
    return out;
}

ComplexMatrix integrate_non_hermitian(const NonHermitianModel& model, const ComplexMatrix& rho0, double t, int steps) {
    return non_hermitian_trajectory(model, rho0, t, steps, steps).back();
}

double trace_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
    require_conformable(rho1, rho2, "trace_distance");
    return 0.5 * trace_norm(rho1 - rho2);
}

double observable_distance(const ComplexMatrix& observable, const ComplexMatrix& rho1, const ComplexMatrix& rho2) {
    require_conformable(rho1, rho2, "observable_distance");
    require_conformable(observable, rho1, "observable_distance");
    const double norm = spectral_norm(observable);
    if (!(norm > 0.0)) {
        throw ValidationError("oracle", "observable_distance needs a non-zero observable");
    }
    return std::abs((observable * (rho1 - rho2)).trace()) / (2.0 * norm);
}

double expectation(const ComplexMatrix& observable, const ComplexMatrix& rho) {
    require_conformable(observable, rho, "expectation");
    return (observable.transpose().cwiseProduct(rho)).sum().real();
}

} // namespace dysonsim
