// acceptance.cpp — the verification gate: one pass/fail line per criterion.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "polaron/energy.hpp"
#include "polaron/gauge.hpp"
#include "polaron/rng.hpp"

using namespace polaron;

namespace {

constexpr double kPi = std::numbers::pi;
int g_failures = 0;

class Timer {
public:
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void report(int id, const std::string& label, bool pass, const std::string& detail,
            double seconds) {
    std::printf("[%s] criterion %2d: %s (%s; %.1f s)\n", pass ? "PASS" : "FAIL", id,
                label.c_str(), detail.c_str(), seconds);
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

CutoffProfile sharp(double kappa, double lambda) {
    CutoffProfile c;
    c.kappa = kappa;
    c.lambda = lambda;
    return c;
}

SolverSettings solver_settings() {
    SolverSettings s;
    s.tol = 1e-11;
    s.max_iter = 600;
    s.seed = 20260808;
    s.dense_threshold = 3000;
    return s;
}

// instance D1: 48 k-points over the shell (0.5, 2.0), n_max = 1, dim 388
PolaronModel d1_model(const Vec3& p, double M, double m, double q) {
    ModeGrid g = build_cylindrical_grid(2, 3, 8, 0.5, 2.0, Vec3(0, 0, 1));
    return make_model(g, 1, sharp(0.5, 2.0), PolarizationKind::xy, Vec3(0, 0, 1), p, M,
                      m, q);
}

// instance D2: K = 4 equatorial ring at |k| = 1, n_max = 3, dim 660
PolaronModel d2_model(const Vec3& p, double M, double m, double q,
                      double scale_k = 1.0) {
    ModeGrid g = build_cylindrical_grid(1, 1, 4, 0.5 * scale_k, 1.5 * scale_k,
                                        Vec3(0, 0, 1));
    return make_model(g, 3, sharp(0.5, 2.0), PolarizationKind::xy, Vec3(0, 0, 1), p, M,
                      m, q);
}

void criterion_1_free_theory() {
    Timer t;
    Rng rng(101);
    double worst = 0;
    bool pass = true;
    for (int instance = 0; instance < 2; ++instance) {
        std::vector<std::pair<Vec3, double>> samples{{Vec3(0, 0, 0.7), 0.0},
                                                     {Vec3(0, 0, 0), -1.0}};
        while (samples.size() < 10)
            samples.emplace_back(rng.vec3(-1.2, 1.2), rng.uniform(-1.5, 1.5));
        PolaronModel model = instance == 0 ? d1_model(Vec3(0, 0, 0), 1, 0, 0)
                                           : d2_model(Vec3(0, 0, 0), 1, 0, 0);
        EnergyLab lab(model, solver_settings());
        for (const auto& [p, M] : samples) {
            double err = std::abs(lab.energy(p, M, 0.0, 0.0) - free_ground_energy(p, M));
            worst = std::max(worst, err);
            if (err > 1e-10) pass = false;
        }
    }
    double secs = t.seconds();
    if (secs >= 10.0) pass = false;
    report(1, "free-theory exactness on D1 and D2", pass, "max |dE| = " + fmt(worst),
           secs);
}

void criterion_2_oracle_equivalence() {
    Timer t;
    Rng rng(202);
    double worst = 0;
    bool pass = true;
    for (int trial = 0; trial < 20; ++trial) {
        PolaronModel m = d2_model(rng.vec3(-1, 1), rng.uniform(-1.5, 1.5),
                                  rng.uniform(0, 0.3), rng.uniform(0, 1));
        OperatorMatrix h = assemble(m).matrix;
        double dense = dense_spectrum(h, 3000).lowest();
        SpectrumResult kry = krylov_lowest(h, 1, 1e-11, 600, 42 + trial);
        if (!kry.converged) pass = false;
        double rel = std::abs(kry.lowest() - dense) / (1 + std::abs(dense));
        worst = std::max(worst, rel);
        if (rel > 1e-8) pass = false;
    }
    double secs = t.seconds();
    if (secs >= 60.0) pass = false;
    report(2, "krylov matches the dense oracle on 20 random D2 instances", pass,
           "max rel |dE| = " + fmt(worst), secs);
}

void criterion_3_energy_suite() {
    Timer t;
    EnergyLab lab(d2_model(Vec3(0, 0, 0.5), 1.0, 0.0, 0.3), solver_settings());
    double scale = lab.scale();
    bool pass = true;
    std::ostringstream detail;

    CheckReport conc = check_concavity(lab, random_segments(lab, 30, 303));
    if (conc.worst_slack < -1e-8 * scale) pass = false;
    detail << "concavity slack " << fmt(conc.worst_slack);

    CheckReport lip = check_lipschitz(lab, random_pM_samples(lab, 8, 304));
    if (lip.worst_slack < -1e-8 * scale) pass = false;

    CheckReport mass = check_mass_reflection(lab);
    double matrix_residual = mass.rows.at(0).at(0);
    if (matrix_residual > 1e-12 * scale) pass = false;
    if (mass.status != CheckStatus::pass) pass = false;

    std::vector<Vec3> ps{Vec3(0, 0, 0), Vec3(0, 0, 0.3), Vec3(0, 0, 0.7),
                         Vec3(0.4, 0.3, 0.2), Vec3(0, 0, 1.1)};
    CheckReport inv = check_inverse_energy(lab, ps);
    if (inv.status != CheckStatus::pass) pass = false;
    double e0 = lab.energy(Vec3(0, 0, 0));
    double floor = 1e-10 * scale;
    for (const Vec3& p : ps)
        if (p.norm() > 0 && e0 - lab.energy(p) < floor) pass = false;

    CheckReport mono = check_mass_monotone(lab, {0.0, 0.1, 0.3});
    if (mono.status != CheckStatus::pass) pass = false;

    CheckReport rot = check_rotation_symmetry(lab, Vec3(0.3, 0.2, 0.4));
    if (rot.status != CheckStatus::pass) pass = false;
    for (const auto& row : rot.rows)
        if (row.at(1) > 1e-9 * scale) pass = false;  // |E(p) - E(Tp)|
    detail << ", " << rot.rows.size() << " grid maps";

    double secs = t.seconds();
    if (secs >= 300.0) pass = false;
    report(3, "concavity/lipschitz/reflection/inverse/monotone/symmetry on D2", pass,
           detail.str(), secs);
}

void criterion_4_dispersion() {
    Timer t;
    EnergyLab lab(d2_model(Vec3(0, 0, 0.5), 1.0, 0.0, 0.3), solver_settings());
    double scale = lab.scale();
    bool pass = true;
    double worst_lower = 1e300, worst_upper = 1e300;
    for (const Vec3& p : {Vec3(0, 0, 0), Vec3(0, 0, 0.5)}) {
        DispersionReport rep = dispersion_report(lab, p);
        if (!rep.hypothesis_ok || rep.status != CheckStatus::pass) pass = false;
        for (const auto& e : rep.entries) {
            if (!(e.gap > 0)) pass = false;
            if (e.gap > 2 * e.knorm + 1e-8) pass = false;
            if (e.slack_lower < -1e-7 * scale) pass = false;
            worst_lower = std::min(worst_lower, e.slack_lower);
            worst_upper = std::min(worst_upper, e.slack_upper);
        }
    }
    double secs = t.seconds();
    if (secs >= 300.0) pass = false;
    report(4, "dispersion bounds 0 < gap <= 2|k| with piecewise floor", pass,
           "min lower/upper slack = " + fmt(worst_lower) + "/" + fmt(worst_upper), secs);
}

void criterion_5_ir_criterion() {
    Timer t;
    EnergyLab lab(d2_model(Vec3(0, 0, 0), 1.0, 0.0, 0.1), solver_settings());
    IRCriterionReport rep = ir_criterion(lab, Vec3(0, 0, 0), {0.2, 0.4});
    bool pass = rep.status == CheckStatus::pass && rep.hypothesis_ok;
    double worst_ratio_dev = 0;
    for (const auto& [q, value] : rep.value_at) {
        double ratio = value / (q * q);
        worst_ratio_dev =
            std::max(worst_ratio_dev,
                     std::abs(ratio - rep.quad_sum) / std::max(rep.quad_sum, 1e-300));
    }
    if (worst_ratio_dev > 1e-6) pass = false;
    if (!(rep.value < 1.0) || !rep.passes) pass = false;
    report(5, "infrared criterion scales as q^2; value(q=0.1) < 1", pass,
           "value = " + fmt(rep.value) + ", q0 = " + fmt(rep.q0) +
               ", ratio dev = " + fmt(worst_ratio_dev),
           t.seconds());
}

void criterion_6_pull_through() {
    Timer t;
    ModeGrid single = make_grid_from_kpoints({{Vec3(0.6, 0, 0.8), 0.005}});
    std::vector<double> residuals;
    for (int n_max : {1, 2, 3}) {
        PolaronModel m = make_model(single, n_max, sharp(0.5, 2.0), PolarizationKind::xy,
                                    Vec3(0, 0, 1), Vec3(0, 0, 0), 1.0, 0.0, 0.3);
        EnergyLab lab(m, solver_settings());
        residuals.push_back(pull_through_residual(lab, Vec3(0, 0, 0)).max_residual);
    }
    bool pass = residuals[0] > residuals[1] && residuals[1] > residuals[2] &&
                residuals[2] <= 1e-6;
    report(6, "pull-through residual decreases in n_max and ends below 1e-6", pass,
           "residuals = " + fmt(residuals[0]) + " > " + fmt(residuals[1]) + " > " +
               fmt(residuals[2]),
           t.seconds());
}

void criterion_7_photon_bounds() {
    Timer t;
    EnergyLab lab(d2_model(Vec3(0, 0, 0), 1.0, 0.0, 0.3), solver_settings());
    PhotonBoundsReport rep = photon_bounds(lab, Vec3(0, 0, 0));
    bool pass = rep.n_expect <= rep.bound && rep.overlap >= 1.0 - rep.n_expect - 1e-9;
    report(7, "photon number bound and vacuum overlap on D2", pass,
           "<N> = " + fmt(rep.n_expect) + " <= " + fmt(rep.bound) +
               ", overlap = " + fmt(rep.overlap),
           t.seconds());
}

void criterion_8_gauge() {
    Timer t;
    PolaronModel model = d1_model(Vec3(0, 0, 0.5), 1.0, 0.0, 0.3);
    const ModeGrid& grid = model.grid();
    OperatorMatrix h = assemble(model).matrix;
    double scale = h.gershgorin_norm();

    PolarizationField axis_x =
        make_polarization(PolarizationKind::axis, grid, Vec3(1, 0, 0));
    PolarizationField axis_d =
        make_polarization(PolarizationKind::axis, grid, Vec3(1, 1, 1).normalized());
    PolaronModel alt = model;
    alt.polarization = axis_x;
    OperatorMatrix h_alt = assemble(alt).matrix;

    GaugeUnitary u = gauge_unitary(*model.basis, model.polarization, axis_x);
    OperatorMatrix w = u.with_spin();
    double conj = (w * h_alt * w.adjoint()).max_abs_diff(h);

    SpectrumResult sa = dense_spectrum(h, 3000);
    SpectrumResult sb = dense_spectrum(h_alt, 3000);
    double spectra = 0;
    for (std::size_t i = 0; i < sa.eigenvalues.size(); ++i)
        spectra = std::max(spectra, std::abs(sa.eigenvalues[i] - sb.eigenvalues[i]));

    GaugeUnitary u_ed = gauge_unitary(*model.basis, model.polarization, axis_d);
    GaugeUnitary u_dx = gauge_unitary(*model.basis, axis_d, axis_x);
    double chain = (u_ed.matrix * u_dx.matrix).max_abs_diff(u.matrix);

    bool pass = conj <= 1e-11 * scale && spectra <= 1e-9 * scale && chain <= 1e-12;
    report(8, "gauge equivalence of polarization choices on D1", pass,
           "conj = " + fmt(conj) + ", spectra = " + fmt(spectra) +
               ", chain = " + fmt(chain),
           t.seconds());
}

void criterion_9_degeneracy() {
    Timer t;
    bool pass = true;
    std::ostringstream detail;
    for (double q : {0.0, 0.3}) {
        PolaronModel model = d1_model(Vec3(0, 0, 0.5), 1.0, 0.0, q);
        OperatorMatrix h = assemble(model).matrix;
        double scale = h.gershgorin_norm();
        OperatorMatrix r = rotation_operator(*model.basis, model.polarization,
                                             2 * kPi / 8, Vec3(0, 0, 0.5));
        SectorDecomposition dec = sector_decompose(h, r, 8, 1e-10 * scale);
        KramersReport kr = kramers_pairing(h, dec, *model.basis, 1e-7, 12);
        if (dec.commutant_residual > 1e-10 * scale) pass = false;
        if (kr.spectra_pair_residual > 1e-9 * scale) pass = false;
        if (!kr.all_even) pass = false;
        detail << "q=" << q << ": comm " << fmt(dec.commutant_residual) << ", pair "
               << fmt(kr.spectra_pair_residual) << "; ";
    }
    report(9, "rotation sectors and even degeneracy on D1", pass, detail.str(),
           t.seconds());
}

void criterion_10_massive_gap() {
    Timer t;
    bool pass = true;
    std::ostringstream detail;
    for (double q : {0.0, 0.3}) {
        double prev_gap = 1e300;
        for (int level = 0; level < 3; ++level) {
            double f = std::pow(0.5, level);
            PolaronModel m = d2_model(Vec3(0, 0, 0), 1.0, 0.2, q, f);
            EnergyLab lab(m, solver_settings());
            EssentialGapReport rep = essential_gap(lab, Vec3(0, 0, 0), 1e-9);
            if (rep.gap < rep.m - 1e-9) pass = false;
            if (rep.gap > rep.m + (1 + rep.m) * rep.k_min + 1e-9) pass = false;
            if (rep.gap >= prev_gap) pass = false;  // bracket tightens as k_min halves
            prev_gap = rep.gap;
            if (q == 0.3) detail << fmt(rep.gap) << (level < 2 ? " > " : "");
        }
    }
    report(10, "massive gap sits in [m, m+(1+m)k_min] and tightens", pass,
           "gaps(q=0.3): " + detail.str(), t.seconds());
}

// ---- criterion 11 helpers ----

std::vector<std::string> filtered_lines(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        if (line.find("generated") != std::string::npos) continue;  // timestamp line
        lines.push_back(line);
    }
    return lines;
}

void criterion_11_determinism() {
    Timer t;
    const char* cli = std::getenv("POLARON_CLI");
    const char* cfg_dir = std::getenv("POLARON_CONFIG_DIR");
    if (!cli || !cfg_dir) {
        report(11, "byte-identical reruns of `check all`", false,
               "POLARON_CLI / POLARON_CONFIG_DIR not set", t.seconds());
        return;
    }
    std::filesystem::path base = std::filesystem::temp_directory_path() / "polaron-det";
    std::filesystem::remove_all(base);
    std::filesystem::create_directories(base);
    std::string cfg = std::string(cfg_dir) + "/desk.cfg";
    bool pass = true;
    for (int run = 0; run < 2; ++run) {
        std::string cmd = std::string("\"") + cli + "\" check -c \"" + cfg + "\" -o \"" +
                          (base / ("run" + std::to_string(run))).string() +
                          "\" > /dev/null 2>&1";
        if (std::system(cmd.c_str()) != 0) pass = false;
    }
    int compared = 0;
    if (pass) {
        for (const auto& entry : std::filesystem::directory_iterator(base / "run0")) {
            std::filesystem::path other = base / "run1" / entry.path().filename();
            if (!std::filesystem::exists(other)) {
                pass = false;
                break;
            }
            if (filtered_lines(entry.path()) != filtered_lines(other)) {
                pass = false;
                std::fprintf(stderr, "  nondeterministic: %s\n",
                             entry.path().filename().string().c_str());
            }
            ++compared;
        }
        if (compared < 10) pass = false;  // the full check suite writes 14 files
    }
    std::filesystem::remove_all(base);
    report(11, "byte-identical reruns of `check all` (timestamp line aside)", pass,
           std::to_string(compared) + " files compared", t.seconds());
}

}  // namespace

int main() {
    std::printf("acceptance suite: desk-scale instances D1 (dim 388) and D2 (dim 660)\n");
    criterion_1_free_theory();
    criterion_2_oracle_equivalence();
    criterion_3_energy_suite();
    criterion_4_dispersion();
    criterion_5_ir_criterion();
    criterion_6_pull_through();
    criterion_7_photon_bounds();
    criterion_8_gauge();
    criterion_9_degeneracy();
    criterion_10_massive_gap();
    criterion_11_determinism();
    std::printf("acceptance: %d/11 criteria passed\n", 11 - g_failures);
    return g_failures;
}
