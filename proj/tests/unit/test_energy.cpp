#include <doctest.h>

#include <cmath>

#include "polaron/energy.hpp"
#include "polaron/rng.hpp"

using namespace polaron;

namespace {

CutoffProfile sharp(double kappa, double lambda) {
    CutoffProfile c;
    c.kappa = kappa;
    c.lambda = lambda;
    return c;
}

PolaronModel ring_model(const Vec3& p, double M, double m, double q, int n_max = 2) {
    ModeGrid g = build_cylindrical_grid(1, 1, 4, 0.5, 1.5, Vec3(0, 0, 1));
    return make_model(g, n_max, sharp(0.5, 2.0), PolarizationKind::xy, Vec3(0, 0, 1), p,
                      M, m, q);
}

EnergyLab ring_lab(const Vec3& p, double M, double m, double q, int n_max = 2) {
    return EnergyLab(ring_model(p, M, m, q, n_max));
}

}  // namespace

TEST_CASE("ground energy at q = 0 reproduces the free dispersion") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 1), 1.0, 0.0, 0.0);
    CHECK(lab.energy(Vec3(0, 0, 1)) == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    EnergyLab lab0 = ring_lab(Vec3(0, 0, 0), 0.0, 0.0, 0.0);
    CHECK(std::abs(lab0.energy(Vec3(0, 0, 0))) < 1e-10);
}

TEST_CASE("coupled ground energy sits strictly below the dense-checked free value") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.5);
    double e = lab.energy(Vec3(0, 0, 0));
    CHECK(e < -1.0);
    SpectrumResult oracle = lab.ground_data(Vec3(0, 0, 0), 1.0, 0.0, 0.5);
    CHECK(std::abs(e - oracle.lowest()) < 1e-9);
}

TEST_CASE("scan: single point matches ground_energy; q=0 line is the free curve") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.0);
    ScanSpec one{ScanSpec::Parameter::p, Vec3(0, 0, 1), 0.7, 0.7, 1};
    EnergySurface s1 = scan(lab, one);
    CHECK(s1.samples.size() == 1);
    CHECK(s1.samples[0].energy == doctest::Approx(lab.energy(Vec3(0, 0, 0.7))));

    ScanSpec line{ScanSpec::Parameter::p, Vec3(0, 0, 1), 0.0, 1.2, 7};
    for (const auto& s : scan(lab, line).samples)
        CHECK(s.energy == doctest::Approx(-std::sqrt(s.t * s.t + 1.0)).epsilon(1e-10));
}

TEST_CASE("scan along M matches per-point dense solves") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 0.3), 1.0, 0.0, 0.4);
    ScanSpec line{ScanSpec::Parameter::M, Vec3(0, 0, 1), 0.2, 1.4, 5};
    EnergySurface surf = scan(lab, line);
    for (const auto& s : surf.samples) {
        SpectrumResult oracle = lab.ground_data(s.p, s.M, s.m, s.q);
        CHECK(s.energy == doctest::Approx(oracle.lowest()).epsilon(1e-9));
    }
}

TEST_CASE("concavity: analytic strictness at q=0, equality on degenerate segments") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.0);
    // segment in M through M = 0 at p != 0: E = -sqrt(p^2 + M^2) is strictly concave
    ParamPoint a{Vec3(0, 0, 0.8), -1.0, 0.0};
    ParamPoint b{Vec3(0, 0, 0.8), 1.0, 0.0};
    CheckReport rep = check_concavity(lab, {{a, b}});
    CHECK(rep.status == CheckStatus::pass);
    CHECK(rep.worst_slack > 0.1);  // -sqrt(0.64) vs -sqrt(1.64)

    CheckReport degenerate = check_concavity(lab, {{a, a}});
    CHECK(degenerate.status == CheckStatus::pass);
    CHECK(std::abs(degenerate.worst_slack) < 1e-9);
}

TEST_CASE("concavity holds on random coupled segments") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 0.3), 1.0, 0.0, 0.4, 1);
    CheckReport rep = check_concavity(lab, random_segments(lab, 8, 5));
    CHECK(rep.status == CheckStatus::pass);
}

TEST_CASE("lipschitz bound on free and coupled samples") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.0);
    // the duplicated point exercises the degenerate x = y pair (margin 0)
    CheckReport free_rep = check_lipschitz(
        lab, {{Vec3(0, 0, 0), 1.0}, {Vec3(0, 0, 1), 1.0}, {Vec3(0.4, 0, 0), -0.5},
              {Vec3(0, 0, 1), 1.0}});
    CHECK(free_rep.status == CheckStatus::pass);

    EnergyLab coupled = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.5, 1);
    CheckReport rep = check_lipschitz(coupled, random_pM_samples(coupled, 5, 3));
    CHECK(rep.status == CheckStatus::pass);
}

TEST_CASE("mass reflection: matrix identity and energy ordering") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 0.5), 1.0, 0.0, 0.5, 1);
    CheckReport rep = check_mass_reflection(lab);
    CHECK(rep.status == CheckStatus::pass);

    EnergyLab massless = ring_lab(Vec3(0, 0, 0.5), 0.0, 0.0, 0.5, 1);
    CHECK(check_mass_reflection(massless).status == CheckStatus::pass);
}

TEST_CASE("inverse energy inequality with strict decrease off the origin") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.4, 1);
    CheckReport rep = check_inverse_energy(
        lab, {Vec3(0, 0, 0), Vec3(0, 0, 0.5), Vec3(0.3, 0.2, 0.1), Vec3(0, 0, 1.0)});
    CHECK(rep.status == CheckStatus::pass);
    CHECK(rep.notes.empty());  // decreases are far from the strictness floor

    // a grid without the inversion tag must be refused
    ModeGrid lopsided = make_grid_from_kpoints({{Vec3(1, 0.2, 0.1), 1.0}});
    PolaronModel m = make_model(lopsided, 1, sharp(0.5, 2.0), PolarizationKind::xy,
                                Vec3(0, 0, 1), Vec3(0, 0, 0), 1.0, 0.0, 0.0);
    EnergyLab bad(m);
    CHECK_THROWS_AS(check_inverse_energy(bad, {Vec3(0, 0, 0.5)}), Error);
}

TEST_CASE("mass monotonicity: equality at q=0, monotone when coupled") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 0.6), 1.0, 0.0, 0.0);
    CheckReport rep = check_mass_monotone(lab, {0.0, 0.1, 0.2});
    CHECK(rep.status == CheckStatus::pass);
    // vacuum sector decouples at q=0, so every mass gives the same energy
    CHECK(rep.rows[0][1] == doctest::Approx(rep.rows[2][1]).epsilon(1e-10));

    EnergyLab coupled = ring_lab(Vec3(0, 0, 0.6), 1.0, 0.0, 0.4, 1);
    CHECK(check_mass_monotone(coupled, {0.0, 0.1, 0.3}).status == CheckStatus::pass);

    CheckReport single = check_mass_monotone(coupled, {0.0});
    CHECK(single.status == CheckStatus::pass);  // vacuous
}

TEST_CASE("momentum symmetry under the full grid group") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.4, 1);
    CheckReport rep = check_rotation_symmetry(lab, Vec3(0.3, 0.2, 0.4));
    CHECK(rep.status == CheckStatus::pass);
    CHECK(rep.rows.size() == 16);  // D4h-like ring group
}

TEST_CASE("dispersion report at q = 0 matches the closed form") {
    Vec3 p(0, 0, 0.5);
    EnergyLab lab = ring_lab(p, 1.0, 0.0, 0.0);
    DispersionReport rep = dispersion_report(lab, p);
    REQUIRE(rep.status == CheckStatus::pass);
    REQUIRE(rep.hypothesis_ok);
    auto free_E = [](const Vec3& v) { return -std::sqrt(v.squaredNorm() + 1.0); };
    CHECK(rep.b == doctest::Approx((free_E(p) - free_E(2 * p)) / 0.5).epsilon(1e-9));
    CHECK(rep.b < 1.0);
    for (const auto& e : rep.entries) {
        double gap = free_E(p - e.k) - free_E(p) + e.knorm;
        CHECK(e.gap == doctest::Approx(gap).epsilon(1e-9));
        CHECK(e.gap > 0);
        CHECK(e.slack_lower >= -1e-9);
        CHECK(e.slack_upper >= -1e-9);
    }
}

TEST_CASE("dispersion gap vanishes linearly toward small |k|") {
    // several radii via an exponential cutoff so every node couples
    ModeGrid g = build_cylindrical_grid(4, 1, 4, 0.05, 1.65, Vec3(0, 0, 1));
    CutoffProfile cut;
    cut.kind = CutoffProfile::Kind::exponential;
    cut.decay = 1.0;
    PolaronModel m = make_model(g, 1, cut, PolarizationKind::xy, Vec3(0, 0, 1),
                                Vec3(0, 0, 0), 1.0, 0.0, 0.0);
    EnergyLab lab(m);
    DispersionReport rep = dispersion_report(lab, Vec3(0, 0, 0));
    REQUIRE(rep.status == CheckStatus::pass);
    for (const auto& e : rep.entries) {
        CHECK(e.gap > 0);
        CHECK(e.gap <= 2 * e.knorm + 1e-12);  // gap -> 0 at least linearly in |k|
    }
}

TEST_CASE("dispersion at the origin: a(P) positive and the bound holds when coupled") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.3);
    DispersionReport rep = dispersion_report(lab, Vec3(0, 0, 0), 1.0);
    REQUIRE(rep.status == CheckStatus::pass);
    CHECK(rep.a_P > 0);
    for (const auto& e : rep.entries) CHECK(e.slack_lower >= -1e-7 * lab.scale());
}

TEST_CASE("dispersion at the origin handles multi-orbit grids ray by ray") {
    // nodes at two radii and three polar rings: E(k) differs between orbits of
    // equal |k|, so a(P) must be taken along each node's own direction
    ModeGrid g = build_cylindrical_grid(2, 3, 8, 0.5, 2.0, Vec3(0, 0, 1));
    PolaronModel m = make_model(g, 1, sharp(0.5, 2.0), PolarizationKind::xy,
                                Vec3(0, 0, 1), Vec3(0, 0, 0), 1.0, 0.0, 0.3);
    EnergyLab lab(m);
    DispersionReport rep = dispersion_report(lab, Vec3(0, 0, 0));
    REQUIRE(rep.status == CheckStatus::pass);
    for (const auto& e : rep.entries) {
        CHECK(e.slack_lower >= -1e-7 * lab.scale());
        CHECK(e.gap > 0);
    }
}

TEST_CASE("dispersion skips gracefully when the mass hypothesis fails") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 0.5), 0.0, 0.0, 0.3);  // M = 0
    DispersionReport rep = dispersion_report(lab, Vec3(0, 0, 0.5));
    CHECK(rep.status == CheckStatus::hypothesis_not_satisfied);
    CHECK_FALSE(rep.hypothesis_ok);
}

TEST_CASE("infrared criterion: zero coupling, exact q^2 scaling, oracle quadrature") {
    EnergyLab free = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.0);
    IRCriterionReport rep0 = ir_criterion(free, Vec3(0, 0, 0));
    CHECK(rep0.value == 0.0);
    CHECK(rep0.passes);

    EnergyLab lab = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.3);
    IRCriterionReport rep = ir_criterion(lab, Vec3(0, 0, 0), {0.6});
    CHECK(rep.value_at[1].second == doctest::Approx(4 * rep.value).epsilon(1e-12));
    CHECK(rep.per_helicity_value == doctest::Approx(rep.value / 2));
    CHECK(rep.q0 == doctest::Approx(1.0 / std::sqrt(rep.quad_sum)));

    // independent recomputation of the quadrature from dense-solved energies
    const PolaronModel& b = lab.base();
    double sum = 0;
    double e_p = lab.ground_data(Vec3(0, 0, 0), b.M, b.m, b.q).lowest();
    for (std::size_t kp = 0; kp < b.grid().kpoint_count(); ++kp) {
        const Vec3& k = b.grid().kpoint(kp);
        double gap =
            lab.ground_data(-k, b.M, b.m, b.q).lowest() - e_p + k.norm();
        double rho = b.cutoff.rho(k.norm());
        sum += b.grid().weight(kp) * rho * rho / (gap * gap * k.norm());
    }
    CHECK(rep.quad_sum == doctest::Approx(sum).epsilon(1e-8));
}

TEST_CASE("essential gap: closed form at q=0 and bracket when coupled") {
    for (double m : {0.2, 0.5}) {
        EnergyLab lab = ring_lab(Vec3(0, 0, 0), 1.0, m, 0.0);
        EssentialGapReport rep = essential_gap(lab, Vec3(0, 0, 0));
        // analytic value on this grid: all nodes share |k| = 1
        double analytic = -std::sqrt(2.0) + (1 + m) * 1.0 + m + 1.0;
        CHECK(rep.gap == doctest::Approx(analytic).epsilon(1e-10));
        CHECK(rep.status == CheckStatus::pass);
    }

    EnergyLab coupled = ring_lab(Vec3(0, 0, 0), 1.0, 0.2, 0.3);
    EssentialGapReport rep = essential_gap(coupled, Vec3(0, 0, 0));
    CHECK(rep.status == CheckStatus::pass);
    CHECK(rep.gap >= rep.lower - 1e-9);
    CHECK(rep.gap <= rep.upper + 1e-9);

    EnergyLab massless = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.0);
    CHECK_THROWS_AS(essential_gap(massless, Vec3(0, 0, 0)), Error);
}

TEST_CASE("pull-through residual: zero at q=0, shrinking with n_max") {
    ModeGrid single = make_grid_from_kpoints({{Vec3(0.6, 0, 0.8), 0.005}});
    auto residual_at = [&](int n_max, double q) {
        PolaronModel m = make_model(single, n_max, sharp(0.5, 2.0), PolarizationKind::xy,
                                    Vec3(0, 0, 1), Vec3(0, 0, 0), 1.0, 0.0, q);
        EnergyLab lab(m);
        return pull_through_residual(lab, Vec3(0, 0, 0)).max_residual;
    };
    CHECK(residual_at(2, 0.0) < 1e-13);

    double r1 = residual_at(1, 0.3);
    double r2 = residual_at(2, 0.3);
    double r3 = residual_at(3, 0.3);
    CHECK(r1 > r2);
    CHECK(r2 > r3);
    CHECK(r3 < 1e-6);
}

TEST_CASE("photon number and vacuum overlap bounds") {
    EnergyLab free = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.0);
    PhotonBoundsReport rep0 = photon_bounds(free, Vec3(0, 0, 0));
    CHECK(rep0.n_expect < 1e-12);
    CHECK(rep0.overlap == doctest::Approx(1.0));
    CHECK(rep0.status == CheckStatus::pass);

    EnergyLab lab = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.3);
    PhotonBoundsReport rep = photon_bounds(lab, Vec3(0, 0, 0));
    CHECK(rep.status == CheckStatus::pass);
    CHECK(rep.n_expect <= rep.bound + 1e-9);
    CHECK(rep.overlap >= 1.0 - rep.n_expect - 1e-9);
    // the quadrature bound carries the explicit q^2 factor
    CHECK(rep.bound == doctest::Approx(0.09 * rep.bound_over_q2).epsilon(1e-12));
}

TEST_CASE("energy cache avoids repeated solves") {
    EnergyLab lab = ring_lab(Vec3(0, 0, 0), 1.0, 0.0, 0.3, 1);
    lab.energy(Vec3(0, 0, 0.5));
    std::size_t once = lab.solve_count();
    lab.energy(Vec3(0, 0, 0.5));
    CHECK(lab.solve_count() == once);
}
