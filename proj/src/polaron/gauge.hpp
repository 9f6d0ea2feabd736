// gauge.hpp — unitaries between polarization choices, the discrete rotation
// representation about the grid axis, angular-momentum sector decomposition,
// and the pairing unitary that forces even eigenvalue multiplicity

#pragma once

#include <optional>
#include <vector>

#include "polaron/dirac.hpp"
#include "polaron/fock.hpp"
#include "polaron/operators.hpp"
#include "polaron/polarization.hpp"
#include "polaron/spectral.hpp"

namespace polaron {

struct GaugeUnitary {
    PolarizationField source;  // e'
    PolarizationField target;  // e
    std::vector<double> theta;  // helicity rotation angle per k-point
    std::vector<bool> flip;     // k-points where the source handedness is flipped
    OperatorMatrix matrix;      // unitary on the Fock factor

    // matrix lifted to C^4 (x) Fock
    OperatorMatrix with_spin() const { return with_spin_identity(matrix); }
};

// U(e <- e'): conjugation carries the Hamiltonian built from e' into the one
// built from e, for identical (p, M, m, q, cutoff).  The target field must be
// right-handed at every node; the source may have any handedness.
GaugeUnitary gauge_unitary(const FockBasis& basis, const PolarizationField& target,
                           const PolarizationField& source);

// R(angle) = u_T (x) Gamma(node rotation) composed with the gauge unitary that
// returns the transported polarization to `pol`.  Requires the azimuthal tag,
// angle a multiple of 2*pi/n_az, and p parallel to the grid axis.
OperatorMatrix rotation_operator(const FockBasis& basis, const PolarizationField& pol,
                                 double angle, const Vec3& p);

struct SectorDecomposition {
    int n_az = 0;
    double angle = 0;                      // 2*pi / n_az
    std::vector<double> labels;            // z = 1/2, 3/2, ..., n_az - 1/2
    std::vector<Eigen::MatrixXcd> bases;   // orthonormal sector bases
    std::vector<SpectrumResult> block_spectra;
    Eigen::Index dim = 0;
    double commutant_residual = 0;         // max |R H R^dagger - H|
    double eigenphase_residual = 0;        // worst |R b - e^{i angle z} b|

    std::size_t sector_of_negative(std::size_t l) const { return labels.size() - 1 - l; }
    OperatorMatrix projector(std::size_t l) const;
    std::vector<double> merged_spectrum() const;
};

// simultaneous block diagonalization over the eigenspaces of R; requires
// [H, R] ~ 0 and R to be the minimal rotation (angle 2*pi/n_az)
SectorDecomposition sector_decompose(const OperatorMatrix& H, const OperatorMatrix& R,
                                     int n_az, double commutant_tol);

struct KramersReport {
    double pairing_residual = 0;      // max |Y H Y^dagger - H|
    double sector_map_residual = 0;   // worst leakage of Y(sector z) outside sector -z
    double spectra_pair_residual = 0; // worst |lambda_i(z) - lambda_i(-z)|
    std::vector<int> cluster_sizes;   // over the full spectrum
    bool all_even = true;
    int clusters_checked = 0;
};

// Y = u_tau (x) Gamma(nu): spinor reflection of the frame k2 axis combined with
// the node reflection and a sign flip on helicity 1
OperatorMatrix kramers_unitary(const FockBasis& basis);

KramersReport kramers_pairing(const OperatorMatrix& H, const SectorDecomposition& dec,
                              const FockBasis& basis, double cluster_tol,
                              int clusters_to_check = -1);

}  // namespace polaron
