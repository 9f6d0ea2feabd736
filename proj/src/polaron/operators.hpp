// operators.hpp — sparse operators on the truncated Fock space (optionally
// with the C^4 spin factor attached) and the second-quantization builders

#pragma once

#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "polaron/fock.hpp"
#include "polaron/types.hpp"

namespace polaron {

using SpMat = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;
using Triplet = Eigen::Triplet<Complex>;

// amplitudes of a one-particle vector, one complex value per mode
using ModeAmplitude = Eigen::VectorXcd;

class OperatorMatrix {
public:
    OperatorMatrix() = default;
    explicit OperatorMatrix(SpMat m, bool hermitian = false);

    static OperatorMatrix from_triplets(Eigen::Index dim, const std::vector<Triplet>& ts,
                                        bool hermitian = false);
    static OperatorMatrix identity(Eigen::Index dim);
    static OperatorMatrix diagonal(const Eigen::VectorXcd& d);

    Eigen::Index dim() const { return mat_.rows(); }
    Eigen::Index nnz() const { return mat_.nonZeros(); }
    bool hermitian() const { return hermitian_; }
    const SpMat& raw() const { return mat_; }

    Eigen::VectorXcd apply(const Eigen::VectorXcd& x) const;
    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(mat_); }

    OperatorMatrix adjoint() const;
    double max_abs() const;
    double hermiticity_residual() const;  // max-norm of A - A^dagger
    double gershgorin_norm() const;       // max row sum of |entries|, >= ||A||_2

    // asserts the hermiticity invariant (residual <= 1e-13 * max_abs)
    void tag_hermitian();

    OperatorMatrix& operator+=(const OperatorMatrix& o);
    OperatorMatrix& operator-=(const OperatorMatrix& o);
    OperatorMatrix& operator*=(Complex c);

    friend OperatorMatrix operator+(OperatorMatrix a, const OperatorMatrix& b) { return a += b; }
    friend OperatorMatrix operator-(OperatorMatrix a, const OperatorMatrix& b) { return a -= b; }
    friend OperatorMatrix operator*(Complex c, OperatorMatrix a) { return a *= c; }
    friend OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b);

    double max_abs_diff(const OperatorMatrix& o) const;

private:
    SpMat mat_;
    bool hermitian_ = false;
};

// a(f) = sum_i conj(f_i) a_i; lowers total occupation by one, kills the vacuum
OperatorMatrix annihilation(const FockBasis& basis, const ModeAmplitude& f);
// a(f)^dagger, entrywise adjoint of annihilation
OperatorMatrix creation(const FockBasis& basis, const ModeAmplitude& f);
// (a(f) + a(f)^dagger)/sqrt(2); always Hermitian in this convention
OperatorMatrix segal_field(const FockBasis& basis, const ModeAmplitude& f);
// diagonal operator with entries sum_i n_i w_i
OperatorMatrix dgamma_multiplier(const FockBasis& basis, const Eigen::VectorXcd& w);
OperatorMatrix number_operator(const FockBasis& basis);
OperatorMatrix vacuum_projector(const FockBasis& basis);
// a_i / sqrt(weight_i), the discrete analog of the pointwise annihilation a_lambda(k_i)
OperatorMatrix pointwise_annihilation(const FockBasis& basis, std::size_t mode);

// A one-particle unitary supported on the grid: a permutation of k-points
// composed with a 2x2 unitary on each source k-point's helicity pair.
struct OneParticleMap {
    std::vector<std::size_t> kpoint_target;        // source k-point -> target k-point
    std::vector<Eigen::Matrix2cd> helicity_block;  // per source k-point

    static OneParticleMap identity(std::size_t kpoints);
    // photon half of the momentum-symmetry unitary for T: node permutation
    // k -> inverse(T) k, helicities untouched
    static OneParticleMap from_symmetry(const ModeGrid& grid, const Mat3& T);

    std::size_t kpoint_count() const { return kpoint_target.size(); }
    Eigen::MatrixXcd dense(std::size_t n_modes) const;
    ModeAmplitude apply(const ModeAmplitude& f) const;
    OneParticleMap compose(const OneParticleMap& rhs) const;  // apply rhs, then this
    OneParticleMap inverse() const;
    double unitarity_residual() const;
};

// functorial lift: Gamma(u) a^dagger(f) Gamma(u)^dagger = a^dagger(u f)
OperatorMatrix gamma_functor(const FockBasis& basis, const OneParticleMap& u);

// ---- spin attachment; combined index = 4 * fock + spin ----
OperatorMatrix kron_spin_fock(const Eigen::Matrix4cd& spin, const OperatorMatrix& fock_op);
OperatorMatrix spin_operator(const Eigen::Matrix4cd& spin, Eigen::Index fock_dim);
OperatorMatrix with_spin_identity(const OperatorMatrix& fock_op);

}  // namespace polaron
