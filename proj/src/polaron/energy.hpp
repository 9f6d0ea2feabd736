// energy.hpp — ground-energy surfaces and the numerical verification of the
// provable properties of E_m(p): concavity, Lipschitz continuity, mass
// reflection, inverse energy inequality, mass monotonicity, momentum symmetry,
// dispersion lower bounds, the infrared criterion, the massive essential gap,
// the pull-through identity and the photon-number / vacuum-overlap bounds.

#pragma once

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "polaron/model.hpp"
#include "polaron/spectral.hpp"

namespace polaron {

struct ToleranceModel {
    double atol = 1e-9;
    double rtol = 1e-8;
    double strictness_floor_rel = 1e-10;

    double bound_tol(double scale) const { return atol + rtol * scale; }
    double floor(double scale) const { return strictness_floor_rel * scale; }
};

enum class CheckStatus { pass, fail, hypothesis_not_satisfied };
std::string check_status_name(CheckStatus s);

struct CheckReport {
    std::string name;
    std::string anchor;  // the verified statement, in words
    CheckStatus status = CheckStatus::pass;
    double worst_slack = std::numeric_limits<double>::infinity();
    std::vector<std::string> notes;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    // margin >= -tol passes; worst_slack tracks the smallest margin
    void fold(double margin, double tol);
    void note(const std::string& s) { notes.push_back(s); }
};

struct EnergySample {
    Vec3 p;
    double M, m, q;
    double energy;
    double residual;
    int iterations;
    SpectrumResult::Solver solver;
};

// Ground energies with caching.  Every E(p - k) evaluation reuses the same
// basis with a shifted momentum, so values are exact on the truncated model.
class EnergyLab {
public:
    EnergyLab(PolaronModel base, SolverSettings solver = {}, ToleranceModel tols = {});

    const PolaronModel& base() const { return base_; }
    const SolverSettings& solver() const { return solver_; }
    const ToleranceModel& tolerances() const { return tols_; }

    double scale();  // norm estimate of the base Hamiltonian, cached

    double energy(const Vec3& p);
    double energy(const Vec3& p, double M, double m, double q);
    EnergySample sample(const Vec3& p, double M, double m, double q);

    const HamiltonianFamily& family(double M, double m, double q);

    // dense solve with eigenvectors; the ground cluster columns come first
    SpectrumResult ground_data(const Vec3& p, double M, double m, double q);

    std::size_t solve_count() const { return solves_; }

private:
    PolaronModel base_;
    SolverSettings solver_;
    ToleranceModel tols_;
    std::map<std::array<std::uint64_t, 3>, std::unique_ptr<HamiltonianFamily>> families_;
    std::map<std::array<std::uint64_t, 6>, EnergySample> cache_;
    std::optional<double> scale_;
    std::size_t solves_ = 0;
};

double free_ground_energy(const Vec3& p, double M);  // -sqrt(|p|^2 + M^2)

// ---- surfaces ----
struct ScanSpec {
    enum class Parameter { p, M, q, m } parameter = Parameter::p;
    Vec3 direction = Vec3(0, 0, 1);
    double from = 0.0, to = 1.0;
    int count = 11;
};
std::string scan_parameter_name(ScanSpec::Parameter p);

struct SurfaceSample {
    double t;  // scanned parameter value
    Vec3 p;
    double M, m, q;
    double energy, residual;
    int iterations;
};

struct EnergySurface {
    ScanSpec spec;
    std::vector<SurfaceSample> samples;
    bool ok = true;  // false if any sample's solve failed (surface is partial)
    std::string failure;
};

EnergySurface scan(EnergyLab& lab, const ScanSpec& spec);

// ---- property checks ----
struct ParamPoint {
    Vec3 p = Vec3(0, 0, 0);
    double M = 1.0;
    double q = 0.0;
};

CheckReport check_concavity(EnergyLab& lab,
                            const std::vector<std::pair<ParamPoint, ParamPoint>>& segments);
std::vector<std::pair<ParamPoint, ParamPoint>> random_segments(const EnergyLab& lab,
                                                               int count, std::uint64_t seed);

CheckReport check_lipschitz(EnergyLab& lab, const std::vector<std::pair<Vec3, double>>& pM);
std::vector<std::pair<Vec3, double>> random_pM_samples(const EnergyLab& lab, int count,
                                                       std::uint64_t seed);

CheckReport check_mass_reflection(EnergyLab& lab);

CheckReport check_inverse_energy(EnergyLab& lab, const std::vector<Vec3>& ps);

CheckReport check_mass_monotone(EnergyLab& lab, std::vector<double> ms);

CheckReport check_rotation_symmetry(EnergyLab& lab, const Vec3& p,
                                    const std::vector<Mat3>& maps = {});

// ---- dispersion / infrared machinery ----
struct DispersionEntry {
    Vec3 k;
    double knorm;
    double gap;          // E(p-k) - E(p) + |k|
    double lower_bound;  // applicable piecewise bound
    double slack_lower;  // gap - lower_bound
    double slack_upper;  // 2|k| - gap
};

struct DispersionReport {
    Vec3 p;
    CheckStatus status = CheckStatus::pass;
    bool hypothesis_ok = false;
    double hypothesis_margin = 0;  // E(p,0) - E(p,M)
    double b = std::numeric_limits<double>::quiet_NaN();      // p != 0
    double a_P = std::numeric_limits<double>::quiet_NaN();    // p == 0
    double P = std::numeric_limits<double>::quiet_NaN();
    double E_p = 0, E_2p = std::numeric_limits<double>::quiet_NaN();
    double worst_slack = std::numeric_limits<double>::infinity();
    std::vector<DispersionEntry> entries;
    std::vector<std::string> notes;
};

DispersionReport dispersion_report(EnergyLab& lab, const Vec3& p,
                                   std::optional<double> P = std::nullopt);

struct IRSample {
    Vec3 k;
    double gap;
    double integrand;  // w * rho^2 / (gap^2 |k|), before the q^2 factor
};

struct IRCriterionReport {
    Vec3 p;
    CheckStatus status = CheckStatus::pass;
    bool hypothesis_ok = false;
    double quad_sum = 0;  // sum of integrand samples; value(q) = q^2 * quad_sum
    double value = 0;     // at the model's q
    double per_helicity_value = 0;
    bool passes = false;  // value < 1
    double q0 = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, double>> value_at;  // (q, q^2 * quad_sum)
    std::vector<IRSample> samples;
    std::vector<std::string> notes;
};

IRCriterionReport ir_criterion(EnergyLab& lab, const Vec3& p,
                               const std::vector<double>& extra_qs = {});

struct EssentialGapReport {
    Vec3 p;
    double m = 0;
    double k_min = 0;
    double gap = 0;  // min_k [E(p-k) + omega_m(k)] - E(p)
    double lower = 0, upper = 0;
    CheckStatus status = CheckStatus::pass;
    double worst_slack = 0;
    std::vector<std::pair<double, double>> entries;  // (|k|, value) per k-point
};

EssentialGapReport essential_gap(EnergyLab& lab, const Vec3& p,
                                 double quadrature_slack = 0.0);

struct PullThroughReport {
    Vec3 p;
    int n_max = 0;
    int ground_multiplicity = 0;
    double ground_energy = 0;
    double max_residual = 0;  // worst protected-sector residual over modes
    std::vector<double> per_mode;
};

PullThroughReport pull_through_residual(EnergyLab& lab, const Vec3& p);

struct PhotonBoundsReport {
    Vec3 p;
    CheckStatus status = CheckStatus::pass;
    int ground_multiplicity = 0;
    double n_expect = 0;        // worst <N> over the ground basis
    double bound = 0;           // discrete quadrature bound, scales as q^2
    double bound_over_q2 = 0;
    double overlap = 1;         // worst ||P_Omega Phi||^2
    double slack_number = 0;    // bound - n_expect
    double slack_overlap = 0;   // overlap - (1 - n_expect)
};

PhotonBoundsReport photon_bounds(EnergyLab& lab, const Vec3& p);

}  // namespace polaron
