#include <doctest.h>

#include <cmath>

#include "polaron/model.hpp"
#include "polaron/rng.hpp"
#include "polaron/spectral.hpp"

using namespace polaron;

namespace {

OperatorMatrix diag3(double a, double b, double c) {
    Eigen::VectorXcd d(3);
    d << a, b, c;
    return OperatorMatrix::diagonal(d);
}

OperatorMatrix random_hermitian(int n, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Triplet> ts;
    for (int r = 0; r < n; ++r) {
        ts.emplace_back(r, r, Complex(rng.symmetric(), 0));
        for (int c = r + 1; c < n; ++c) {
            Complex v = rng.complex_symmetric();
            ts.emplace_back(r, c, v);
            ts.emplace_back(c, r, std::conj(v));
        }
    }
    return OperatorMatrix::from_triplets(n, ts, true);
}

PolaronModel free_model(const Vec3& p, double M) {
    ModeGrid g = build_cylindrical_grid(1, 1, 4, 0.5, 1.5, Vec3(0, 0, 1));
    CutoffProfile c;
    return make_model(g, 2, c, PolarizationKind::xy, Vec3(0, 0, 1), p, M, 0.0, 0.0);
}

}  // namespace

TEST_CASE("dense oracle sorts a diagonal matrix") {
    SpectrumResult r = dense_spectrum(diag3(3, 1, 2));
    CHECK(r.eigenvalues == std::vector<double>{1, 2, 3});
}

TEST_CASE("dense oracle on the free 4x4 block") {
    const DiracAlgebra& d = DiracAlgebra::standard();
    Mat4 h4 = d.alpha_dot(Vec3(0, 0, 1)) + d.beta;
    std::vector<Triplet> ts;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            if (h4(r, c) != Complex(0, 0)) ts.emplace_back(r, c, h4(r, c));
    SpectrumResult r = dense_spectrum(OperatorMatrix::from_triplets(4, ts, true));
    double s = std::sqrt(2.0);
    CHECK(r.eigenvalues[0] == doctest::Approx(-s));
    CHECK(r.eigenvalues[1] == doctest::Approx(-s));
    CHECK(r.eigenvalues[2] == doctest::Approx(s));
    CHECK(r.eigenvalues[3] == doctest::Approx(s));
    CHECK(r.multiplicities == std::vector<int>{2, 2});
}

TEST_CASE("dense oracle: trace identity and residuals on a random matrix") {
    OperatorMatrix h = random_hermitian(50, 4242);
    SpectrumResult r = dense_spectrum(h);
    double trace = 0;
    for (int i = 0; i < 50; ++i) trace += h.dense()(i, i).real();
    double sum = 0;
    for (double v : r.eigenvalues) sum += v;
    CHECK(std::abs(trace - sum) < 1e-10 * (1 + std::abs(trace)));
    for (double res : r.residuals) CHECK(res <= 1e-10);
}

TEST_CASE("dense oracle refuses non-Hermitian input and oversize matrices") {
    std::vector<Triplet> ts{Triplet(0, 1, Complex(1, 0))};
    CHECK_THROWS_AS(dense_spectrum(OperatorMatrix::from_triplets(2, ts, false)), Error);
    CHECK_THROWS_AS(dense_spectrum(random_hermitian(40, 1), 30), Error);
}

TEST_CASE("krylov finds the free polaron ground energy") {
    SpectrumResult r =
        krylov_lowest(assemble(free_model(Vec3(0, 0, 1), 1.0)).matrix, 1, 1e-11, 300, 7);
    CHECK(r.converged);
    CHECK(std::abs(r.lowest() - (-std::sqrt(2.0))) < 1e-10);
}

TEST_CASE("krylov agrees with the dense oracle on coupled instances") {
    Rng rng(123);
    ModeGrid g = build_cylindrical_grid(1, 1, 4, 0.5, 1.5, Vec3(0, 0, 1));
    CutoffProfile cut;
    for (int trial = 0; trial < 5; ++trial) {
        PolaronModel m =
            make_model(g, 2, cut, PolarizationKind::xy, Vec3(0, 0, 1),
                       rng.vec3(-1, 1), rng.uniform(-1.5, 1.5), rng.uniform(0, 0.3),
                       rng.uniform(0, 1));
        OperatorMatrix h = assemble(m).matrix;
        double dense = dense_spectrum(h).lowest();
        SpectrumResult kry = krylov_lowest(h, 1, 1e-11, 400, 1000 + trial);
        CHECK(kry.converged);
        CHECK(std::abs(kry.lowest() - dense) <= 1e-8 * (1 + std::abs(dense)));
    }
}

TEST_CASE("krylov is seed-stable and deterministic") {
    OperatorMatrix h = assemble(free_model(Vec3(0.2, -0.3, 0.8), 0.9)).matrix;
    SpectrumResult a = krylov_lowest(h, 2, 1e-11, 300, 11);
    SpectrumResult b = krylov_lowest(h, 2, 1e-11, 300, 999);
    CHECK(std::abs(a.lowest() - b.lowest()) < 1e-9);

    SpectrumResult c = krylov_lowest(h, 2, 1e-11, 300, 11);
    CHECK(a.iterations == c.iterations);
    CHECK(a.eigenvalues[0] == c.eigenvalues[0]);  // bitwise reproducible
}

TEST_CASE("ritz values decrease monotonically with the iteration budget") {
    OperatorMatrix h = random_hermitian(120, 5150);
    double prev = 1e300;
    for (int m : {6, 12, 24, 48}) {
        SpectrumResult r = krylov_lowest(h, 1, 1e-300, m, 31);
        CHECK(r.lowest() <= prev + 1e-12);
        prev = r.lowest();
    }
}

TEST_CASE("non-convergence is reported, not hidden") {
    OperatorMatrix h = random_hermitian(200, 8);
    SpectrumResult r = krylov_lowest(h, 1, 1e-300, 5, 1);
    CHECK_FALSE(r.converged);
    CHECK(r.eigenvalues.size() == 1);  // best Ritz data still present
}

TEST_CASE("degeneracy clustering") {
    double s = std::sqrt(2.0);
    CHECK(degeneracy_clusters({-s, -s, s, s}, 1e-9) == std::vector<int>{2, 2});
    CHECK(degeneracy_clusters({0, 1, 2}, 1e-9) == std::vector<int>{1, 1, 1});
    CHECK(degeneracy_clusters({}, 1e-9).empty());
}

TEST_CASE("coupled spectrum on a symmetric grid has even clusters") {
    ModeGrid g = build_cylindrical_grid(1, 1, 4, 0.5, 1.5, Vec3(0, 0, 1));
    CutoffProfile cut;
    PolaronModel m = make_model(g, 2, cut, PolarizationKind::xy, Vec3(0, 0, 1),
                                Vec3(0, 0, 0.4), 1.0, 0.0, 0.3);
    SpectrumResult r = dense_spectrum(assemble(m).matrix);
    int counted = 0;
    for (std::size_t i = 0; i < r.multiplicities.size() && counted < 8; ++i) {
        CHECK(r.multiplicities[i] % 2 == 0);
        counted += r.multiplicities[i];
    }
}
