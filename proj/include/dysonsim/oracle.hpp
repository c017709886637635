#pragma once

#include <map>
#include <mutex>
#include <vector>

#include <Eigen/Dense>

#include "dysonsim/linalg.hpp"
#include "dysonsim/model.hpp"

namespace dysonsim {

// Unitary dynamics of a fixed Hermitian Hamiltonian through its spectral
// decomposition H = V diag(E) V^+, so U(t) = e^{-iHt} = V diag(e^{-iEt}) V^+.
class Propagator {
public:
    explicit Propagator(const ComplexMatrix& hamiltonian);

    int dim() const noexcept { return static_cast<int>(energies_.size()); }
    const Eigen::VectorXd& energies() const noexcept { return energies_; }
    const ComplexMatrix& eigenvectors() const noexcept { return vectors_; }

    ComplexMatrix unitary(double t) const;
    // e^{iHs} x e^{-iHs}
    ComplexMatrix heisenberg(const ComplexMatrix& x, double s) const;
    // e^{-iHt} rho e^{iHt}
    ComplexMatrix evolve(const ComplexMatrix& rho, double t) const;

    // Operators expressed in the energy eigenbasis, where conjugation by U(t)
    // is an entrywise phase.
    ComplexMatrix to_frame(const ComplexMatrix& x) const;
    ComplexMatrix from_frame(const ComplexMatrix& x) const;
    void heisenberg_in_frame(ComplexMatrix& x, double s) const;
    void evolve_in_frame(ComplexMatrix& x, double t) const;

private:
    Eigen::VectorXd energies_;
    ComplexMatrix vectors_;
};

// Memoized U(t) for one Hamiltonian. Entries are never evicted, so returned
// references stay valid for the cache's lifetime.
class PropagatorCache {
public:
    explicit PropagatorCache(const ComplexMatrix& hamiltonian) : propagator_(hamiltonian) {}

    const ComplexMatrix& unitary(double t) const;
    const Propagator& propagator() const noexcept { return propagator_; }
    std::size_t size() const;

private:
    Propagator propagator_;
    mutable std::mutex mutex_;
    mutable std::map<double, ComplexMatrix> cache_;
};

DensityMatrix evolve_unitary(const ComplexMatrix& hamiltonian, const DensityMatrix& rho0, double t);
ComplexMatrix heisenberg(const ComplexMatrix& hamiltonian, const ComplexMatrix& xi, double s);

// RK4 steps used when the caller does not fix a count: 2000 per unit time.
int default_oracle_steps(double t, int steps_per_unit_time = 2000);

// Fixed-step RK4 for the master equation from t0 to t0 + t, re-Hermitizing
// after each step. Throws StiffnessError if the state develops an eigenvalue
// below -1e-6.
DensityMatrix integrate_master(const LindbladModel& model, const DensityMatrix& rho0, double t, int steps,
                               double t0 = 0.0);

// States at each of the sorted `times` along one RK4 trajectory with
// `steps_per_unit_time` resolution.
std::vector<DensityMatrix> integrate_master_at(const LindbladModel& model, const DensityMatrix& rho0,
                                               const std::vector<double>& times, int steps_per_unit_time = 2000);

ComplexMatrix integrate_non_hermitian(const NonHermitianModel& model, const ComplexMatrix& rho0, double t,
                                      int steps);

// The state after every `record_every` RK4 steps, including the initial one.
std::vector<ComplexMatrix> non_hermitian_trajectory(const NonHermitianModel& model, const ComplexMatrix& rho0,
                                                    double t, int steps, int record_every = 1);

double trace_distance(const ComplexMatrix& rho1, const ComplexMatrix& rho2);

// |Tr(O (rho1 - rho2))| / (2 ||O||_inf)
double observable_distance(const ComplexMatrix& observable, const ComplexMatrix& rho1, const ComplexMatrix& rho2);

// Re Tr(O rho)
double expectation(const ComplexMatrix& observable, const ComplexMatrix& rho);

} // namespace dysonsim
