#include "polaron/model.hpp"

#include <cmath>

namespace polaron {

double CutoffProfile::rho(double knorm) const {
    if (kind == Kind::sharp) return (kappa < knorm && knorm < lambda) ? 1.0 : 0.0;
    return knorm * std::exp(-decay * knorm);
}

std::string CutoffProfile::name() const {
    if (kind == Kind::sharp)
        return "sharp(" + std::to_string(kappa) + "," + std::to_string(lambda) + ")";
    return "exponential(" + std::to_string(decay) + ")";
}

void PolaronModel::validate() const {
    require(basis != nullptr, ErrorCode::invalid_argument, "model has no basis");
    require(m >= 0, ErrorCode::invalid_argument, "photon mass parameter must be >= 0");
    require(polarization.kpoint_count() == grid().kpoint_count(),
            ErrorCode::dimension_mismatch, "polarization does not match grid");
    require(polarization.orthonormality_residual() <= 1e-12 &&
                polarization.transversality_residual(grid()) <= 1e-12,
            ErrorCode::invalid_argument, "polarization field is not transverse-orthonormal");
}

std::array<Eigen::VectorXd, 3> coupling_amplitudes(const PolaronModel& model) {
    model.validate();
    const ModeGrid& grid = model.grid();
    std::array<Eigen::VectorXd, 3> g;
    for (auto& v : g) v = Eigen::VectorXd::Zero(grid.mode_count());
    for (std::size_t i = 0; i < grid.mode_count(); ++i) {
        const Mode& mode = grid.mode(i);
        double kn = mode.k.norm();
        double amp = std::sqrt(mode.weight) * model.cutoff.rho(kn) / std::sqrt(kn);
        const Vec3& e = model.polarization.e(i / 2, mode.helicity);
        for (int j = 0; j < 3; ++j) g[j][i] = amp * e[j];
    }
    return g;
}

HamiltonianFamily::HamiltonianFamily(FockBasisPtr basis, CutoffProfile cutoff,
                                     PolarizationField polarization, double M, double m,
                                     double q)
    : basis_(std::move(basis)),
      cutoff_(cutoff),
      pol_(std::move(polarization)),
      M_(M),
      m_(m),
      q_(q) {
    PolaronModel probe{Vec3(0, 0, 0), M, m, q, basis_, cutoff_, pol_};
    probe.validate();

    const ModeGrid& grid = basis_->grid();
    omega_ = Eigen::VectorXd(grid.mode_count());
    for (std::size_t i = 0; i < grid.mode_count(); ++i) {
        double kn = grid.mode(i).k.norm();
        omega_[i] = (1.0 + m_) * kn + m_;  // the regularized dispersion
    }
    g_ = coupling_amplitudes(probe);

    kappa_.resize(basis_->size(), 3);
    omega_total_ = Eigen::VectorXd::Zero(basis_->size());
    for (std::size_t s = 0; s < basis_->size(); ++s) {
        const auto& n = basis_->state(s);
        Vec3 kacc(0, 0, 0);
        double wacc = 0;
        for (std::size_t i = 0; i < n.size(); ++i) {
            if (n[i] == 0) continue;
            kacc += static_cast<double>(n[i]) * grid.mode(i).k;
            wacc += static_cast<double>(n[i]) * omega_[i];
        }
        kappa_.row(s) = kacc.transpose();
        omega_total_[s] = wacc;
    }

    if (q_ != 0.0) {
        const DiracAlgebra& dirac = DiracAlgebra::standard();
        OperatorMatrix v;
        for (int j = 0; j < 3; ++j) {
            OperatorMatrix phi = segal_field(*basis_, g_[j].cast<Complex>());
            OperatorMatrix term = kron_spin_fock(dirac.alpha[j], phi);
            if (j == 0)
                v = std::move(term);
            else
                v += term;
        }
        v *= Complex(-q_, 0);
        interaction_ = std::move(v);
    } else {
        interaction_ = OperatorMatrix::from_triplets(dim(), {}, true);
    }
}

OperatorMatrix HamiltonianFamily::hamiltonian(const Vec3& p) const {
    const DiracAlgebra& dirac = DiracAlgebra::standard();
    std::vector<Triplet> ts;
    ts.reserve(basis_->size() * 16);
    for (std::size_t s = 0; s < basis_->size(); ++s) {
        Vec3 shifted = p - Vec3(kappa_.row(s).transpose());
        Mat4 block = dirac.alpha_dot(shifted) + M_ * dirac.beta;
        block.diagonal().array() += omega_total_[s];
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                if (block(r, c) != Complex(0, 0))
                    ts.emplace_back(4 * s + r, 4 * s + c, block(r, c));
    }
    OperatorMatrix h = OperatorMatrix::from_triplets(dim(), ts, false);
    if (q_ != 0.0) h += interaction_;
    h.tag_hermitian();
    return h;
}

PolaronHamiltonian assemble(const PolaronModel& model) {
    model.validate();
    HamiltonianFamily family(model.basis, model.cutoff, model.polarization, model.M,
                             model.m, model.q);
    return PolaronHamiltonian{model, family.hamiltonian(model.p)};
}

PolaronModel make_model(const ModeGrid& grid, int n_max, const CutoffProfile& cutoff,
                        PolarizationKind pol_kind, const Vec3& pol_axis, const Vec3& p,
                        double M, double m, double q, std::size_t max_states) {
    PolaronModel model;
    model.p = p;
    model.M = M;
    model.m = m;
    model.q = q;
    model.basis = std::make_shared<const FockBasis>(grid, n_max, max_states);
    model.cutoff = cutoff;
    model.polarization = make_polarization(pol_kind, grid, pol_axis);
    model.validate();
    return model;
}

}  // namespace polaron
