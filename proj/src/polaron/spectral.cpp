#include "polaron/spectral.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "polaron/rng.hpp"

namespace polaron {

namespace {

void require_hermitian(const OperatorMatrix& H) {
    double scale = std::max(H.max_abs(), 1e-300);
    require(H.hermitian() || H.hermiticity_residual() <= 1e-12 * scale,
            ErrorCode::invalid_argument, "spectral solvers need a Hermitian operator");
}

std::vector<double> residual_norms(const OperatorMatrix& H, const Eigen::MatrixXcd& vecs,
                                   const std::vector<double>& vals, double scale) {
    std::vector<double> res(vecs.cols());
    for (Eigen::Index i = 0; i < vecs.cols(); ++i) {
        Eigen::VectorXcd v = vecs.col(i);
        res[i] = (H.apply(v) - vals[i] * v).norm() / scale;
    }
    return res;
}

}  // namespace

std::vector<int> degeneracy_clusters(const std::vector<double>& ascending, double tol) {
    std::vector<int> sizes;
    for (std::size_t i = 0; i < ascending.size(); ++i) {
        if (i > 0 && ascending[i] - ascending[i - 1] <=
                         tol * (1.0 + std::abs(ascending[i]))) {
            ++sizes.back();
        } else {
            sizes.push_back(1);
        }
    }
    return sizes;
}

SpectrumResult dense_spectrum(const OperatorMatrix& H, Eigen::Index dense_threshold,
                              double cluster_tol) {
    require_hermitian(H);
    require(H.dim() <= dense_threshold, ErrorCode::budget_exceeded,
            "dense oracle refused: dimension " + std::to_string(H.dim()) +
                " above threshold " + std::to_string(dense_threshold));

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H.dense());
    require(es.info() == Eigen::Success, ErrorCode::solver_failure,
            "dense eigensolver did not converge");

    SpectrumResult out;
    out.solver = SpectrumResult::Solver::dense;
    out.scale = std::max(H.gershgorin_norm(), 1e-300);
    out.eigenvalues.assign(es.eigenvalues().data(),
                           es.eigenvalues().data() + es.eigenvalues().size());
    out.vectors = es.eigenvectors();
    out.residuals = residual_norms(H, out.vectors, out.eigenvalues, out.scale);
    out.multiplicities = degeneracy_clusters(out.eigenvalues, cluster_tol);
    out.iterations = 1;
    return out;
}

SpectrumResult krylov_lowest(const OperatorMatrix& H, int n_eigs, double tol,
                             int max_iter, std::uint64_t seed, double cluster_tol) {
    require_hermitian(H);
    require(n_eigs >= 1, ErrorCode::invalid_argument, "n_eigs must be >= 1");
    const Eigen::Index n = H.dim();
    require(n >= 1, ErrorCode::invalid_argument, "empty operator");
    n_eigs = static_cast<int>(std::min<Eigen::Index>(n_eigs, n));

    const double scale = std::max(H.gershgorin_norm(), 1e-300);
    const int m_max = static_cast<int>(std::min<Eigen::Index>(std::max(max_iter, n_eigs + 2), n));

    Eigen::MatrixXcd V(n, m_max);
    Eigen::VectorXd alpha(m_max), beta(m_max);
    Rng rng(seed);
    V.col(0) = rng.unit_vector(n);

    auto reorthogonalize = [&](Eigen::VectorXcd& w, int upto) {
        for (int pass = 0; pass < 2; ++pass) {
            Eigen::VectorXcd coef = V.leftCols(upto).adjoint() * w;
            w -= V.leftCols(upto) * coef;
        }
    };

    int j = 0;
    bool converged = false;
    bool exhausted = false;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tds;
    int next_check = std::max(2 * n_eigs, 8);

    for (j = 0; j < m_max; ++j) {
        Eigen::VectorXcd w = H.apply(V.col(j));
        alpha[j] = w.dot(V.col(j)).real();
        w -= alpha[j] * V.col(j);
        if (j > 0) w -= beta[j - 1] * V.col(j - 1);
        reorthogonalize(w, j + 1);
        beta[j] = w.norm();

        bool last = (j + 1 == m_max);
        if (j + 1 >= n_eigs && (last || j + 1 >= next_check)) {
            Eigen::MatrixXd T = Eigen::MatrixXd::Zero(j + 1, j + 1);
            for (int i = 0; i <= j; ++i) {
                T(i, i) = alpha[i];
                if (i > 0) {
                    T(i, i - 1) = beta[i - 1];
                    T(i - 1, i) = beta[i - 1];
                }
            }
            tds.compute(T);
            bool ok = true;
            for (int i = 0; i < n_eigs; ++i) {
                double bound = std::abs(beta[j] * tds.eigenvectors()(j, i));
                if (bound > tol * scale) {
                    ok = false;
                    break;
                }
            }
            if (ok) {
                converged = true;
                ++j;
                break;
            }
            next_check = j + 1 + std::max(4, (j + 1) / 8);
        }

        if (beta[j] <= 1e-14 * scale) {
            // invariant subspace hit; either the space is exhausted or we
            // deterministically restart in the orthogonal complement
            if (j + 1 >= n) {
                exhausted = true;
                ++j;
                break;
            }
            Eigen::VectorXcd fresh = rng.unit_vector(n);
            reorthogonalize(fresh, j + 1);
            double nrm = fresh.norm();
            require(nrm > 1e-12, ErrorCode::solver_failure, "lanczos restart failed");
            if (j + 1 < m_max) V.col(j + 1) = fresh / nrm;
            beta[j] = 0.0;
        } else if (j + 1 < m_max) {
            V.col(j + 1) = w / beta[j];
        }
    }

    const int m = j;
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
    for (int i = 0; i < m; ++i) {
        T(i, i) = alpha[i];
        if (i > 0) {
            T(i, i - 1) = beta[i - 1];
            T(i - 1, i) = beta[i - 1];
        }
    }
    tds.compute(T);
    if (exhausted) converged = true;

    SpectrumResult out;
    out.solver = SpectrumResult::Solver::krylov;
    out.scale = scale;
    out.seed = seed;
    out.iterations = m;
    out.converged = converged;
    int n_report = std::min(n_eigs, m);
    out.vectors.resize(n, n_report);
    for (int i = 0; i < n_report; ++i) {
        out.eigenvalues.push_back(tds.eigenvalues()[i]);
        Eigen::VectorXcd ritz = V.leftCols(m) * tds.eigenvectors().col(i).cast<Complex>();
        ritz /= ritz.norm();
        out.vectors.col(i) = ritz;
    }
    out.residuals = residual_norms(H, out.vectors, out.eigenvalues, scale);
    out.multiplicities = degeneracy_clusters(out.eigenvalues, cluster_tol);
    return out;
}

}  // namespace polaron
