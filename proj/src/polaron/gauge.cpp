#include "polaron/gauge.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>

namespace polaron {

namespace {

constexpr double kPi = std::numbers::pi;

void require_polarization(const FockBasis& basis, const PolarizationField& f,
                          const char* which) {
    require(f.kpoint_count() == basis.grid().kpoint_count(), ErrorCode::dimension_mismatch,
            std::string(which) + " polarization does not match the grid");
    require(f.orthonormality_residual() <= 1e-10 &&
                f.transversality_residual(basis.grid()) <= 1e-10,
            ErrorCode::invalid_argument,
            std::string(which) + " polarization is not transverse-orthonormal");
}

SpectrumResult dense_block_spectrum(const Eigen::MatrixXcd& block) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block);
    require(es.info() == Eigen::Success, ErrorCode::solver_failure,
            "sector block eigensolve failed");
    SpectrumResult out;
    out.solver = SpectrumResult::Solver::dense;
    out.scale = std::max(block.cwiseAbs().maxCoeff(), 1e-300);
    out.eigenvalues.assign(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());
    out.vectors = es.eigenvectors();
    out.residuals.assign(out.eigenvalues.size(), 0.0);
    for (Eigen::Index i = 0; i < es.eigenvectors().cols(); ++i)
        out.residuals[i] =
            (block * es.eigenvectors().col(i) - es.eigenvalues()[i] * es.eigenvectors().col(i))
                .norm() /
            out.scale;
    out.multiplicities = degeneracy_clusters(out.eigenvalues, 1e-7);
    return out;
}

}  // namespace

GaugeUnitary gauge_unitary(const FockBasis& basis, const PolarizationField& target,
                           const PolarizationField& source) {
    require_polarization(basis, target, "target");
    require_polarization(basis, source, "source");
    const ModeGrid& grid = basis.grid();

    GaugeUnitary g;
    g.source = source;
    g.target = target;
    g.theta.resize(grid.kpoint_count());
    g.flip.resize(grid.kpoint_count());

    OneParticleMap u = OneParticleMap::identity(grid.kpoint_count());
    for (std::size_t kp = 0; kp < grid.kpoint_count(); ++kp) {
        require(target.right_handed(grid, kp), ErrorCode::invalid_argument,
                "gauge target polarization must be right-handed");
        bool flip = !source.right_handed(grid, kp);
        Vec3 epp1 = source.vectors[kp][0];
        Vec3 epp2 = flip ? Vec3(-source.vectors[kp][1]) : source.vectors[kp][1];
        double c = target.vectors[kp][0].dot(epp1);
        double s = -target.vectors[kp][0].dot(epp2);
        double theta = std::atan2(s, c);
        g.theta[kp] = theta;
        g.flip[kp] = flip;
        Eigen::Matrix2cd rot;
        rot << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
        Eigen::Matrix2cd handed = Eigen::Matrix2cd::Identity();
        if (flip) handed(1, 1) = -1;
        u.helicity_block[kp] = rot * handed;
    }
    g.matrix = gamma_functor(basis, u);
    return g;
}

OperatorMatrix rotation_operator(const FockBasis& basis, const PolarizationField& pol,
                                 double angle, const Vec3& p) {
    const ModeGrid& grid = basis.grid();
    require(grid.tags().azimuthal > 0, ErrorCode::symmetry_violation,
            "rotation operator needs the azimuthal symmetry tag");
    double step = 2.0 * kPi / grid.tags().azimuthal;
    double ratio = angle / step;
    require(std::abs(ratio - std::round(ratio)) <= 1e-9, ErrorCode::invalid_argument,
            "rotation angle must be a multiple of 2*pi/n_azimuthal");
    require(p.norm() == 0.0 || p.cross(grid.axis()).norm() <= 1e-12 * p.norm(),
            ErrorCode::invalid_argument, "total momentum must be parallel to the grid axis");

    const DiracAlgebra& dirac = DiracAlgebra::standard();
    Mat3 T = Eigen::AngleAxisd(angle, grid.axis()).toRotationMatrix();
    Mat4 u_spin = dirac.spinor_for_orthogonal(T);
    OneParticleMap u_phot = OneParticleMap::from_symmetry(grid, T);
    OperatorMatrix base = kron_spin_fock(u_spin, gamma_functor(basis, u_phot));

    // transporting the polarization may change it; a gauge unitary returns it
    PolarizationField moved = transported_polarization(pol, grid, T);
    GaugeUnitary back = gauge_unitary(basis, pol, moved);
    return back.with_spin() * base;
}

OperatorMatrix SectorDecomposition::projector(std::size_t l) const {
    const Eigen::MatrixXcd& b = bases.at(l);
    Eigen::MatrixXcd pd = b * b.adjoint();
    std::vector<Triplet> ts;
    for (Eigen::Index r = 0; r < pd.rows(); ++r)
        for (Eigen::Index c = 0; c < pd.cols(); ++c)
            if (std::abs(pd(r, c)) > 0) ts.emplace_back(r, c, pd(r, c));
    return OperatorMatrix::from_triplets(dim, ts, false);
}

std::vector<double> SectorDecomposition::merged_spectrum() const {
    std::vector<double> all;
    for (const auto& s : block_spectra)
        all.insert(all.end(), s.eigenvalues.begin(), s.eigenvalues.end());
    std::sort(all.begin(), all.end());
    return all;
}

SectorDecomposition sector_decompose(const OperatorMatrix& H, const OperatorMatrix& R,
                                     int n_az, double commutant_tol) {
    require(n_az >= 1, ErrorCode::invalid_argument, "n_az must be >= 1");
    require(H.dim() == R.dim(), ErrorCode::dimension_mismatch,
            "H and R act on different spaces");

    SectorDecomposition dec;
    dec.n_az = n_az;
    dec.angle = 2.0 * kPi / n_az;
    dec.dim = H.dim();

    OperatorMatrix conj = R * H * R.adjoint();
    dec.commutant_residual = conj.max_abs_diff(H);
    require(dec.commutant_residual <= commutant_tol, ErrorCode::symmetry_violation,
            "H does not commute with the rotation operator (residual " +
                std::to_string(dec.commutant_residual) + ")");

    // the group generated by R is cyclic of order 2 n_az (R^{n_az} = -1 on the
    // spinor factor); sector projectors are the odd character sums.  R is a
    // monomial-sparse matrix, so its powers stay sparse and cheap.
    std::vector<OperatorMatrix> powers;
    powers.push_back(OperatorMatrix::identity(dec.dim));
    for (int j = 1; j < 2 * n_az; ++j) powers.push_back(R * powers.back());
    require((R * powers.back()).max_abs_diff(powers.front()) <= 1e-9,
            ErrorCode::symmetry_violation, "R^(2 n_az) is not the identity");

    const Eigen::MatrixXcd hd = H.dense();
    Eigen::MatrixXcd assembled = Eigen::MatrixXcd::Zero(dec.dim, dec.dim);
    for (int l = 0; l < n_az; ++l) {
        double z = l + 0.5;
        dec.labels.push_back(z);
        Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(dec.dim, dec.dim);
        for (int j = 0; j < 2 * n_az; ++j) {
            Complex chi = std::exp(Complex(0, -dec.angle * z * j));
            const SpMat& pj = powers[j].raw();
            for (int r = 0; r < pj.outerSize(); ++r)
                for (SpMat::InnerIterator it(pj, r); it; ++it)
                    proj(it.row(), it.col()) += chi * it.value();
        }
        proj /= static_cast<double>(2 * n_az);

        // orthonormal basis of the range by pivoted Gram-Schmidt
        Eigen::Index rank = static_cast<Eigen::Index>(std::llround(proj.trace().real()));
        Eigen::MatrixXcd cols = proj;
        Eigen::MatrixXcd basis(dec.dim, rank);
        Eigen::Index got = 0;
        for (Eigen::Index step = 0; step < rank; ++step) {
            Eigen::Index best = 0;
            double best_norm = 0;
            for (Eigen::Index c = 0; c < cols.cols(); ++c) {
                double nn = cols.col(c).norm();
                if (nn > best_norm) {
                    best_norm = nn;
                    best = c;
                }
            }
            require(best_norm > 1e-7, ErrorCode::internal, "sector projector rank deficient");
            Eigen::VectorXcd v = cols.col(best) / best_norm;
            // one refinement pass keeps the basis orthonormal to machine precision
            if (got > 0) {
                v -= basis.leftCols(got) * (basis.leftCols(got).adjoint() * v);
                v /= v.norm();
            }
            basis.col(got++) = v;
            cols -= v * (v.adjoint() * cols);
        }
        double phase_res = (R.raw() * basis - std::exp(Complex(0, dec.angle * z)) * basis)
                               .cwiseAbs()
                               .maxCoeff();
        dec.eigenphase_residual = std::max(dec.eigenphase_residual, phase_res);

        Eigen::MatrixXcd block = basis.adjoint() * hd * basis;
        block = (block + block.adjoint()) / 2;  // symmetrize roundoff
        dec.block_spectra.push_back(dense_block_spectrum(block));
        dec.bases.push_back(std::move(basis));
        assembled += dec.bases.back() * dec.bases.back().adjoint();
    }

    Eigen::Index total = 0;
    for (const auto& b : dec.bases) total += b.cols();
    require(total == dec.dim, ErrorCode::internal, "sector dimensions do not add up");
    require((assembled - Eigen::MatrixXcd::Identity(dec.dim, dec.dim)).cwiseAbs().maxCoeff() <=
                1e-9,
            ErrorCode::internal, "sector projectors do not sum to the identity");
    return dec;
}

OperatorMatrix kramers_unitary(const FockBasis& basis) {
    const ModeGrid& grid = basis.grid();
    require(grid.tags().reflection_k2, ErrorCode::symmetry_violation,
            "pairing unitary needs the reflection symmetry tag");
    const DiracAlgebra& dirac = DiracAlgebra::standard();
    Mat3 T = grid.reflection_k2_map();
    Mat4 u_spin = dirac.spinor_for_orthogonal(T);
    OneParticleMap nu = OneParticleMap::from_symmetry(grid, T);
    for (auto& block : nu.helicity_block) {
        Eigen::Matrix2cd sign = Eigen::Matrix2cd::Identity();
        sign(0, 0) = -1;  // helicity-1 picks up the sign under the reflection
        block = sign * block;
    }
    return kron_spin_fock(u_spin, gamma_functor(basis, nu));
}

KramersReport kramers_pairing(const OperatorMatrix& H, const SectorDecomposition& dec,
                              const FockBasis& basis, double cluster_tol,
                              int clusters_to_check) {
    KramersReport rep;
    OperatorMatrix Y = kramers_unitary(basis);
    rep.pairing_residual = (Y * H * Y.adjoint()).max_abs_diff(H);

    Eigen::MatrixXcd yd = Y.dense();
    for (std::size_t l = 0; l < dec.bases.size(); ++l) {
        std::size_t lneg = dec.sector_of_negative(l);
        Eigen::MatrixXcd mapped = yd * dec.bases[l];
        // leakage outside the target sector
        Eigen::MatrixXcd inside = dec.bases[lneg] * (dec.bases[lneg].adjoint() * mapped);
        rep.sector_map_residual =
            std::max(rep.sector_map_residual, (mapped - inside).cwiseAbs().maxCoeff());
        const auto& sa = dec.block_spectra[l].eigenvalues;
        const auto& sb = dec.block_spectra[lneg].eigenvalues;
        require(sa.size() == sb.size(), ErrorCode::internal, "paired sector size mismatch");
        for (std::size_t i = 0; i < sa.size(); ++i)
            rep.spectra_pair_residual =
                std::max(rep.spectra_pair_residual, std::abs(sa[i] - sb[i]));
    }

    std::vector<double> merged = dec.merged_spectrum();
    rep.cluster_sizes = degeneracy_clusters(merged, cluster_tol);
    int n = clusters_to_check < 0 ? static_cast<int>(rep.cluster_sizes.size())
                                  : std::min<int>(clusters_to_check, rep.cluster_sizes.size());
    rep.clusters_checked = n;
    for (int i = 0; i < n; ++i)
        if (rep.cluster_sizes[i] % 2 != 0) rep.all_even = false;
    return rep;
}

}  // namespace polaron
