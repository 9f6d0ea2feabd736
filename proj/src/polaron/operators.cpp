#include "polaron/operators.hpp"

#include <cmath>
#include <map>

namespace polaron {

OperatorMatrix::OperatorMatrix(SpMat m, bool hermitian)
    : mat_(std::move(m)), hermitian_(hermitian) {
    require(mat_.rows() == mat_.cols(), ErrorCode::invalid_argument,
            "operator matrices are square");
    if (hermitian_) tag_hermitian();
}

OperatorMatrix OperatorMatrix::from_triplets(Eigen::Index dim,
                                             const std::vector<Triplet>& ts,
                                             bool hermitian) {
    SpMat m(dim, dim);
    m.setFromTriplets(ts.begin(), ts.end());
    m.prune([](Eigen::Index, Eigen::Index, const Complex& v) { return v != Complex(0, 0); });
    return OperatorMatrix(std::move(m), hermitian);
}

OperatorMatrix OperatorMatrix::identity(Eigen::Index dim) {
    SpMat m(dim, dim);
    m.setIdentity();
    return OperatorMatrix(std::move(m), true);
}

OperatorMatrix OperatorMatrix::diagonal(const Eigen::VectorXcd& d) {
    std::vector<Triplet> ts;
    ts.reserve(d.size());
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (d[i] != Complex(0, 0)) ts.emplace_back(i, i, d[i]);
    bool real = d.size() == 0 || d.imag().cwiseAbs().maxCoeff() == 0.0;
    return from_triplets(d.size(), ts, real);
}

Eigen::VectorXcd OperatorMatrix::apply(const Eigen::VectorXcd& x) const {
    require(x.size() == dim(), ErrorCode::dimension_mismatch, "matvec dimension mismatch");
    return mat_ * x;
}

OperatorMatrix OperatorMatrix::adjoint() const {
    SpMat a = mat_.adjoint();
    return OperatorMatrix(std::move(a), hermitian_);
}

double OperatorMatrix::max_abs() const {
    double m = 0;
    for (int r = 0; r < mat_.outerSize(); ++r)
        for (SpMat::InnerIterator it(mat_, r); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

double OperatorMatrix::hermiticity_residual() const {
    SpMat diff = mat_ - SpMat(mat_.adjoint());
    double m = 0;
    for (int r = 0; r < diff.outerSize(); ++r)
        for (SpMat::InnerIterator it(diff, r); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

double OperatorMatrix::gershgorin_norm() const {
    double m = 0;
    for (int r = 0; r < mat_.outerSize(); ++r) {
        double row = 0;
        for (SpMat::InnerIterator it(mat_, r); it; ++it) row += std::abs(it.value());
        m = std::max(m, row);
    }
    return m;
}

void OperatorMatrix::tag_hermitian() {
    double scale = max_abs();
    require(hermiticity_residual() <= 1e-13 * std::max(scale, 1e-300),
            ErrorCode::invalid_argument, "matrix tagged hermitian fails the invariant");
    hermitian_ = true;
}

OperatorMatrix& OperatorMatrix::operator+=(const OperatorMatrix& o) {
    require(dim() == o.dim(), ErrorCode::dimension_mismatch, "operator sum dimension mismatch");
    mat_ = mat_ + o.mat_;
    hermitian_ = hermitian_ && o.hermitian_;
    return *this;
}

OperatorMatrix& OperatorMatrix::operator-=(const OperatorMatrix& o) {
    require(dim() == o.dim(), ErrorCode::dimension_mismatch, "operator sum dimension mismatch");
    mat_ = mat_ - o.mat_;
    hermitian_ = hermitian_ && o.hermitian_;
    return *this;
}

OperatorMatrix& OperatorMatrix::operator*=(Complex c) {
    mat_ *= c;
    hermitian_ = hermitian_ && (c.imag() == 0.0);
    return *this;
}

OperatorMatrix operator*(const OperatorMatrix& a, const OperatorMatrix& b) {
    require(a.dim() == b.dim(), ErrorCode::dimension_mismatch, "operator product mismatch");
    SpMat m = a.mat_ * b.mat_;
    return OperatorMatrix(std::move(m), false);
}

double OperatorMatrix::max_abs_diff(const OperatorMatrix& o) const {
    require(dim() == o.dim(), ErrorCode::dimension_mismatch, "operator diff mismatch");
    SpMat diff = mat_ - o.mat_;
    double m = 0;
    for (int r = 0; r < diff.outerSize(); ++r)
        for (SpMat::InnerIterator it(diff, r); it; ++it) m = std::max(m, std::abs(it.value()));
    return m;
}

namespace {

void check_amplitude(const FockBasis& basis, const Eigen::VectorXcd& f) {
    require(static_cast<std::size_t>(f.size()) == basis.mode_count(),
            ErrorCode::dimension_mismatch, "amplitude dimension does not match grid");
}

}  // namespace

OperatorMatrix annihilation(const FockBasis& basis, const ModeAmplitude& f) {
    check_amplitude(basis, f);
    std::vector<Triplet> ts;
    std::vector<std::uint8_t> occ;
    for (std::size_t s = 0; s < basis.size(); ++s) {
        const auto& n = basis.state(s);
        for (std::size_t i = 0; i < n.size(); ++i) {
            if (n[i] == 0 || f[i] == Complex(0, 0)) continue;
            occ = n;
            occ[i] -= 1;
            auto t = basis.index_of(occ);
            require(t.has_value(), ErrorCode::internal, "lowered state missing from basis");
            ts.emplace_back(static_cast<Eigen::Index>(*t), static_cast<Eigen::Index>(s),
                            std::conj(f[i]) * std::sqrt(static_cast<double>(n[i])));
        }
    }
    return OperatorMatrix::from_triplets(basis.size(), ts, false);
}

OperatorMatrix creation(const FockBasis& basis, const ModeAmplitude& f) {
    return annihilation(basis, f).adjoint();
}

OperatorMatrix segal_field(const FockBasis& basis, const ModeAmplitude& f) {
    OperatorMatrix a = annihilation(basis, f);
    OperatorMatrix phi = a + a.adjoint();
    phi *= Complex(1.0 / std::sqrt(2.0), 0.0);
    phi.tag_hermitian();
    return phi;
}

OperatorMatrix dgamma_multiplier(const FockBasis& basis, const Eigen::VectorXcd& w) {
    check_amplitude(basis, w);
    Eigen::VectorXcd d(basis.size());
    for (std::size_t s = 0; s < basis.size(); ++s) {
        const auto& n = basis.state(s);
        Complex v = 0;
        for (std::size_t i = 0; i < n.size(); ++i)
            if (n[i] != 0) v += static_cast<double>(n[i]) * w[i];
        d[s] = v;
    }
    return OperatorMatrix::diagonal(d);
}

OperatorMatrix number_operator(const FockBasis& basis) {
    return dgamma_multiplier(basis, Eigen::VectorXcd::Ones(basis.mode_count()));
}

OperatorMatrix vacuum_projector(const FockBasis& basis) {
    std::vector<Triplet> ts{Triplet(0, 0, Complex(1, 0))};
    return OperatorMatrix::from_triplets(basis.size(), ts, true);
}

OperatorMatrix pointwise_annihilation(const FockBasis& basis, std::size_t mode) {
    require(mode < basis.mode_count(), ErrorCode::invalid_argument,
            "mode index out of range");
    ModeAmplitude f = ModeAmplitude::Zero(basis.mode_count());
    f[mode] = 1.0 / std::sqrt(basis.grid().mode(mode).weight);
    return annihilation(basis, f);
}

OneParticleMap OneParticleMap::identity(std::size_t kpoints) {
    OneParticleMap u;
    u.kpoint_target.resize(kpoints);
    u.helicity_block.assign(kpoints, Eigen::Matrix2cd::Identity());
    for (std::size_t i = 0; i < kpoints; ++i) u.kpoint_target[i] = i;
    return u;
}

OneParticleMap OneParticleMap::from_symmetry(const ModeGrid& grid, const Mat3& T) {
    // quanta at node k are carried to node inverse(T) k, matching the
    // transformation (u f)(k) = f(T k) of one-particle wave functions
    OneParticleMap u = identity(grid.kpoint_count());
    Mat3 Tinv = T.transpose();  // orthogonal maps only
    auto perm = grid.kpoint_permutation(Tinv);
    u.kpoint_target = perm;
    return u;
}

Eigen::MatrixXcd OneParticleMap::dense(std::size_t n_modes) const {
    require(n_modes == 2 * kpoint_count(), ErrorCode::dimension_mismatch,
            "one-particle map does not match mode count");
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(n_modes, n_modes);
    for (std::size_t i = 0; i < kpoint_count(); ++i) {
        std::size_t t = kpoint_target[i];
        m.block<2, 2>(2 * t, 2 * i) = helicity_block[i];
    }
    return m;
}

ModeAmplitude OneParticleMap::apply(const ModeAmplitude& f) const {
    require(static_cast<std::size_t>(f.size()) == 2 * kpoint_count(),
            ErrorCode::dimension_mismatch, "one-particle map dimension mismatch");
    ModeAmplitude out = ModeAmplitude::Zero(f.size());
    for (std::size_t i = 0; i < kpoint_count(); ++i) {
        std::size_t t = kpoint_target[i];
        const Eigen::Matrix2cd& b = helicity_block[i];
        out[2 * t] += b(0, 0) * f[2 * i] + b(0, 1) * f[2 * i + 1];
        out[2 * t + 1] += b(1, 0) * f[2 * i] + b(1, 1) * f[2 * i + 1];
    }
    return out;
}

OneParticleMap OneParticleMap::compose(const OneParticleMap& rhs) const {
    require(kpoint_count() == rhs.kpoint_count(), ErrorCode::dimension_mismatch,
            "one-particle map composition mismatch");
    OneParticleMap out = identity(kpoint_count());
    for (std::size_t i = 0; i < kpoint_count(); ++i) {
        std::size_t mid = rhs.kpoint_target[i];
        out.kpoint_target[i] = kpoint_target[mid];
        out.helicity_block[i] = helicity_block[mid] * rhs.helicity_block[i];
    }
    return out;
}

OneParticleMap OneParticleMap::inverse() const {
    OneParticleMap out = identity(kpoint_count());
    for (std::size_t i = 0; i < kpoint_count(); ++i) {
        std::size_t t = kpoint_target[i];
        out.kpoint_target[t] = i;
        out.helicity_block[t] = helicity_block[i].adjoint();
    }
    return out;
}

double OneParticleMap::unitarity_residual() const {
    double r = 0;
    for (const auto& b : helicity_block) {
        Eigen::Matrix2cd d = b.adjoint() * b - Eigen::Matrix2cd::Identity();
        r = std::max(r, d.cwiseAbs().maxCoeff());
    }
    return r;
}

OperatorMatrix gamma_functor(const FockBasis& basis, const OneParticleMap& u) {
    require(2 * u.kpoint_count() == basis.mode_count(), ErrorCode::dimension_mismatch,
            "one-particle map does not match basis grid");
    require(u.unitarity_residual() <= 1e-12, ErrorCode::invalid_argument,
            "gamma_functor requires a unitary one-particle map");
    std::vector<bool> hit(u.kpoint_count(), false);
    for (std::size_t t : u.kpoint_target) {
        require(t < u.kpoint_count() && !hit[t], ErrorCode::symmetry_violation,
                "one-particle map does not permute the grid");
        hit[t] = true;
    }

    // Gamma(u) |n> rebuilds each occupied mode through u: every creation
    // operator a^dagger_i becomes sum_j u_{j i} a^dagger_j.  Expansion keeps a
    // map occupation -> amplitude; bosonic sqrt factors accumulate on the way.
    std::vector<Triplet> ts;
    using Partial = std::map<std::vector<std::uint8_t>, Complex>;
    for (std::size_t s = 0; s < basis.size(); ++s) {
        const auto& n = basis.state(s);
        Partial terms{{std::vector<std::uint8_t>(n.size(), 0), Complex(1, 0)}};
        double source_norm = 1.0;  // prod sqrt(n_i!)
        for (std::size_t i = 0; i < n.size(); ++i) {
            std::size_t kp = i / 2;
            std::size_t lam = i % 2;
            std::size_t tkp = u.kpoint_target[kp];
            const Eigen::Matrix2cd& b = u.helicity_block[kp];
            for (int rep = 0; rep < n[i]; ++rep) {
                source_norm *= std::sqrt(static_cast<double>(rep + 1));
                Partial next;
                for (const auto& [occ, amp] : terms) {
                    for (std::size_t mu = 0; mu < 2; ++mu) {
                        Complex c = b(mu, lam);
                        if (c == Complex(0, 0)) continue;
                        std::vector<std::uint8_t> occ2 = occ;
                        std::size_t j = 2 * tkp + mu;
                        double grow = std::sqrt(static_cast<double>(occ2[j] + 1));
                        occ2[j] += 1;
                        next[occ2] += amp * c * grow;
                    }
                }
                terms.swap(next);
            }
        }
        for (const auto& [occ, amp] : terms) {
            if (amp == Complex(0, 0)) continue;
            auto t = basis.index_of(occ);
            require(t.has_value(), ErrorCode::internal, "gamma image missing from basis");
            ts.emplace_back(static_cast<Eigen::Index>(*t), static_cast<Eigen::Index>(s),
                            amp / source_norm);
        }
    }
    return OperatorMatrix::from_triplets(basis.size(), ts, false);
}

OperatorMatrix kron_spin_fock(const Eigen::Matrix4cd& spin, const OperatorMatrix& fock_op) {
    const SpMat& f = fock_op.raw();
    std::vector<Triplet> ts;
    ts.reserve(static_cast<std::size_t>(f.nonZeros()) * 16);
    for (int r = 0; r < f.outerSize(); ++r) {
        for (SpMat::InnerIterator it(f, r); it; ++it) {
            for (int sr = 0; sr < 4; ++sr) {
                for (int sc = 0; sc < 4; ++sc) {
                    Complex v = spin(sr, sc) * it.value();
                    if (v == Complex(0, 0)) continue;
                    ts.emplace_back(4 * it.row() + sr, 4 * it.col() + sc, v);
                }
            }
        }
    }
    return OperatorMatrix::from_triplets(4 * fock_op.dim(), ts, false);
}

OperatorMatrix spin_operator(const Eigen::Matrix4cd& spin, Eigen::Index fock_dim) {
    std::vector<Triplet> ts;
    ts.reserve(static_cast<std::size_t>(fock_dim) * 16);
    for (Eigen::Index fdx = 0; fdx < fock_dim; ++fdx)
        for (int sr = 0; sr < 4; ++sr)
            for (int sc = 0; sc < 4; ++sc)
                if (spin(sr, sc) != Complex(0, 0))
                    ts.emplace_back(4 * fdx + sr, 4 * fdx + sc, spin(sr, sc));
    return OperatorMatrix::from_triplets(4 * fock_dim, ts, false);
}

OperatorMatrix with_spin_identity(const OperatorMatrix& fock_op) {
    return kron_spin_fock(Eigen::Matrix4cd::Identity(), fock_op);
}

}  // namespace polaron
