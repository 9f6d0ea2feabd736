// spectral.hpp — lowest eigenpairs of sparse Hermitian operators via Lanczos
// with full reorthogonalization, dense full-spectrum oracle, and degeneracy
// clustering

#pragma once

#include <cstdint>
#include <vector>

#include "polaron/operators.hpp"
#include "polaron/types.hpp"

namespace polaron {

struct SolverSettings {
    double tol = 1e-10;       // residual target, relative to the norm estimate
    int max_iter = 600;       // Krylov dimension cap
    std::uint64_t seed = 20260808;
    Eigen::Index dense_threshold = 3000;
    double cluster_tol = 1e-7;  // relative; see degeneracy_clusters
    enum class Mode { automatic, dense, krylov } mode = Mode::automatic;
};

struct SpectrumResult {
    std::vector<double> eigenvalues;  // ascending
    std::vector<double> residuals;    // ||Hv - lambda v|| / scale, per computed vector
    Eigen::MatrixXcd vectors;         // columns, aligned with the first residuals
    std::vector<int> multiplicities;  // cluster sizes over `eigenvalues`
    enum class Solver { dense, krylov } solver = Solver::dense;
    int iterations = 0;
    std::uint64_t seed = 0;
    bool converged = true;
    double scale = 0;  // Gershgorin norm estimate of H

    double lowest() const {
        require(!eigenvalues.empty(), ErrorCode::internal, "empty spectrum");
        return eigenvalues.front();
    }
};

// full spectrum with eigenvectors; the small-instance oracle
SpectrumResult dense_spectrum(const OperatorMatrix& H, Eigen::Index dense_threshold = 3000,
                              double cluster_tol = 1e-7);

// lowest n_eigs Ritz pairs; deterministic for a fixed seed
SpectrumResult krylov_lowest(const OperatorMatrix& H, int n_eigs, double tol,
                             int max_iter, std::uint64_t seed, double cluster_tol = 1e-7);

// greedy clustering of an ascending list; adjacent values within
// tol * (1 + |value|) share a cluster
std::vector<int> degeneracy_clusters(const std::vector<double>& ascending, double tol);

}  // namespace polaron
