// model.hpp — parameter bundle for the fibre Hamiltonian and its assembly
// on C^4 tensor the truncated Fock space

#pragma once

#include <array>
#include <memory>
#include <string>

#include "polaron/dirac.hpp"
#include "polaron/fock.hpp"
#include "polaron/operators.hpp"
#include "polaron/polarization.hpp"

namespace polaron {

struct CutoffProfile {
    enum class Kind { sharp, exponential };
    Kind kind = Kind::sharp;
    double kappa = 0.5;   // sharp: inner edge
    double lambda = 2.0;  // sharp: outer edge
    double decay = 1.0;   // exponential: rho(k) = |k| exp(-decay |k|)

    double rho(double knorm) const;
    std::string name() const;
};

struct PolaronModel {
    Vec3 p = Vec3(0, 0, 0);
    double M = 1.0;  // electron mass, any sign
    double m = 0.0;  // photon mass parameter >= 0
    double q = 0.0;  // coupling
    FockBasisPtr basis;
    CutoffProfile cutoff;
    PolarizationField polarization;

    const ModeGrid& grid() const { return basis->grid(); }
    void validate() const;
};

struct PolaronHamiltonian {
    PolaronModel model;
    OperatorMatrix matrix;  // Hermitian, dimension 4 * |basis|
};

// per-mode coupling amplitudes g_j(i) = sqrt(w_i) rho(k_i) |k_i|^{-1/2} e_j(k_i);
// real because the fibre coupling is evaluated at the origin
std::array<Eigen::VectorXd, 3> coupling_amplitudes(const PolaronModel& model);

// Everything except the total momentum is frozen here, so surfaces in p reuse
// the interaction and the photon diagonals; the fibre Hamiltonian depends on p
// only through the spin blocks.
class HamiltonianFamily {
public:
    HamiltonianFamily(FockBasisPtr basis, CutoffProfile cutoff,
                      PolarizationField polarization, double M, double m, double q);

    OperatorMatrix hamiltonian(const Vec3& p) const;

    Eigen::Index dim() const { return 4 * static_cast<Eigen::Index>(basis_->size()); }
    const FockBasis& basis() const { return *basis_; }
    FockBasisPtr basis_ptr() const { return basis_; }
    double M() const { return M_; }
    double m() const { return m_; }
    double q() const { return q_; }
    const CutoffProfile& cutoff() const { return cutoff_; }
    const PolarizationField& polarization() const { return pol_; }

    // omega_m value per mode
    const Eigen::VectorXd& omega() const { return omega_; }
    const std::array<Eigen::VectorXd, 3>& amplitudes() const { return g_; }

private:
    FockBasisPtr basis_;
    CutoffProfile cutoff_;
    PolarizationField pol_;
    double M_, m_, q_;
    Eigen::VectorXd omega_;
    std::array<Eigen::VectorXd, 3> g_;
    Eigen::Matrix<double, Eigen::Dynamic, 3> kappa_;  // sum_i n_i k_i per fock state
    Eigen::VectorXd omega_total_;                     // sum_i n_i omega_m(k_i) per fock state
    OperatorMatrix interaction_;                      // -q sum_j alpha_j (x) Phi_S(g_j)
};

PolaronHamiltonian assemble(const PolaronModel& model);

PolaronModel make_model(const ModeGrid& grid, int n_max, const CutoffProfile& cutoff,
                        PolarizationKind pol_kind, const Vec3& pol_axis, const Vec3& p,
                        double M, double m, double q,
                        std::size_t max_states = 2'000'000);

}  // namespace polaron
