#include "polaron/energy.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

#include "polaron/gauge.hpp"
#include "polaron/rng.hpp"

namespace polaron {

namespace {

std::array<std::uint64_t, 6> param_key(const Vec3& p, double M, double m, double q) {
    return {std::bit_cast<std::uint64_t>(p.x()), std::bit_cast<std::uint64_t>(p.y()),
            std::bit_cast<std::uint64_t>(p.z()), std::bit_cast<std::uint64_t>(M),
            std::bit_cast<std::uint64_t>(m),     std::bit_cast<std::uint64_t>(q)};
}

std::array<std::uint64_t, 3> family_key(double M, double m, double q) {
    return {std::bit_cast<std::uint64_t>(M), std::bit_cast<std::uint64_t>(m),
            std::bit_cast<std::uint64_t>(q)};
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

}  // namespace

std::string check_status_name(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "pass";
        case CheckStatus::fail: return "fail";
        case CheckStatus::hypothesis_not_satisfied: return "hypothesis_not_satisfied";
    }
    return "?";
}

void CheckReport::fold(double margin, double tol) {
    worst_slack = std::min(worst_slack, margin);
    if (margin < -tol) status = CheckStatus::fail;
}

double free_ground_energy(const Vec3& p, double M) {
    return -std::sqrt(p.squaredNorm() + M * M);
}

EnergyLab::EnergyLab(PolaronModel base, SolverSettings solver, ToleranceModel tols)
    : base_(std::move(base)), solver_(solver), tols_(tols) {
    base_.validate();
}

const HamiltonianFamily& EnergyLab::family(double M, double m, double q) {
    auto key = family_key(M, m, q);
    auto it = families_.find(key);
    if (it == families_.end()) {
        auto fam = std::make_unique<HamiltonianFamily>(base_.basis, base_.cutoff,
                                                       base_.polarization, M, m, q);
        it = families_.emplace(key, std::move(fam)).first;
    }
    return *it->second;
}

double EnergyLab::scale() {
    if (!scale_) {
        OperatorMatrix h = family(base_.M, base_.m, base_.q).hamiltonian(base_.p);
        scale_ = std::max(h.gershgorin_norm(), 1e-300);
    }
    return *scale_;
}

EnergySample EnergyLab::sample(const Vec3& p, double M, double m, double q) {
    auto key = param_key(p, M, m, q);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;

    OperatorMatrix h = family(M, m, q).hamiltonian(p);
    ++solves_;
    EnergySample s{p, M, m, q, 0, 0, 0, SpectrumResult::Solver::krylov};
    bool use_dense = solver_.mode == SolverSettings::Mode::dense ||
                     (solver_.mode == SolverSettings::Mode::automatic && h.dim() <= 320);
    if (use_dense) {
        SpectrumResult r = dense_spectrum(h, solver_.dense_threshold, solver_.cluster_tol);
        s.energy = r.lowest();
        s.residual = r.residuals.front();
        s.iterations = r.iterations;
        s.solver = SpectrumResult::Solver::dense;
    } else {
        SpectrumResult r = krylov_lowest(h, 1, solver_.tol, solver_.max_iter, solver_.seed,
                                         solver_.cluster_tol);
        require(r.converged, ErrorCode::solver_failure,
                "krylov did not converge within " + std::to_string(solver_.max_iter) +
                    " iterations (best value " + fmt(r.lowest()) + ")");
        s.energy = r.lowest();
        s.residual = r.residuals.front();
        s.iterations = r.iterations;
        s.solver = SpectrumResult::Solver::krylov;
    }
    cache_.emplace(key, s);
    return s;
}

double EnergyLab::energy(const Vec3& p, double M, double m, double q) {
    return sample(p, M, m, q).energy;
}

double EnergyLab::energy(const Vec3& p) { return energy(p, base_.M, base_.m, base_.q); }

SpectrumResult EnergyLab::ground_data(const Vec3& p, double M, double m, double q) {
    OperatorMatrix h = family(M, m, q).hamiltonian(p);
    ++solves_;
    return dense_spectrum(h, solver_.dense_threshold, solver_.cluster_tol);
}

std::string scan_parameter_name(ScanSpec::Parameter p) {
    switch (p) {
        case ScanSpec::Parameter::p: return "p";
        case ScanSpec::Parameter::M: return "M";
        case ScanSpec::Parameter::q: return "q";
        case ScanSpec::Parameter::m: return "m";
    }
    return "?";
}

EnergySurface scan(EnergyLab& lab, const ScanSpec& spec) {
    require(spec.count >= 1, ErrorCode::invalid_argument, "scan needs at least one sample");
    EnergySurface surf;
    surf.spec = spec;
    const PolaronModel& base = lab.base();
    for (int i = 0; i < spec.count; ++i) {
        double t = spec.count == 1
                       ? spec.from
                       : spec.from + (spec.to - spec.from) * i / (spec.count - 1);
        Vec3 p = base.p;
        double M = base.M, m = base.m, q = base.q;
        switch (spec.parameter) {
            case ScanSpec::Parameter::p: p = t * spec.direction.normalized(); break;
            case ScanSpec::Parameter::M: M = t; break;
            case ScanSpec::Parameter::q: q = t; break;
            case ScanSpec::Parameter::m: m = t; break;
        }
        try {
            EnergySample s = lab.sample(p, M, m, q);
            surf.samples.push_back({t, p, M, m, q, s.energy, s.residual, s.iterations});
        } catch (const Error& e) {
            surf.ok = false;
            surf.failure = e.what();
            break;
        }
    }
    return surf;
}

std::vector<std::pair<ParamPoint, ParamPoint>> random_segments(const EnergyLab& lab,
                                                               int count,
                                                               std::uint64_t seed) {
    Rng rng(seed);
    const PolaronModel& b = lab.base();
    std::vector<std::pair<ParamPoint, ParamPoint>> segs;
    for (int i = 0; i < count; ++i) {
        ParamPoint a{b.p + rng.vec3(-0.8, 0.8), b.M + rng.uniform(-0.8, 0.8),
                     b.q + rng.uniform(-0.5, 0.5)};
        ParamPoint c{b.p + rng.vec3(-0.8, 0.8), b.M + rng.uniform(-0.8, 0.8),
                     b.q + rng.uniform(-0.5, 0.5)};
        segs.emplace_back(a, c);
    }
    return segs;
}

CheckReport check_concavity(EnergyLab& lab,
                            const std::vector<std::pair<ParamPoint, ParamPoint>>& segments) {
    CheckReport rep;
    rep.name = "concavity";
    rep.anchor = "E(p,M,q) is midpoint-concave in (p,M,q)";
    rep.columns = {"E_a", "E_b", "E_mid", "margin"};
    double m = lab.base().m;
    double tol = lab.tolerances().bound_tol(lab.scale());
    for (const auto& [a, b] : segments) {
        ParamPoint mid{(a.p + b.p) / 2, (a.M + b.M) / 2, (a.q + b.q) / 2};
        double ea = lab.energy(a.p, a.M, m, a.q);
        double eb = lab.energy(b.p, b.M, m, b.q);
        double em = lab.energy(mid.p, mid.M, m, mid.q);
        double margin = em - 0.5 * (ea + eb);
        rep.rows.push_back({ea, eb, em, margin});
        rep.fold(margin, tol);
    }
    return rep;
}

std::vector<std::pair<Vec3, double>> random_pM_samples(const EnergyLab& lab, int count,
                                                       std::uint64_t seed) {
    Rng rng(seed);
    const PolaronModel& b = lab.base();
    std::vector<std::pair<Vec3, double>> pts{{Vec3(0, 0, 0), b.M}, {b.p, b.M}};
    while (static_cast<int>(pts.size()) < count)
        pts.emplace_back(b.p + rng.vec3(-1.0, 1.0), b.M + rng.uniform(-1.0, 1.0));
    return pts;
}

CheckReport check_lipschitz(EnergyLab& lab, const std::vector<std::pair<Vec3, double>>& pM) {
    CheckReport rep;
    rep.name = "lipschitz";
    rep.anchor = "|E(p,M) - E(p',M')| <= sqrt(|p-p'|^2 + (M-M')^2)";
    rep.columns = {"dist", "dE", "margin"};
    const PolaronModel& b = lab.base();
    double tol = lab.tolerances().bound_tol(lab.scale());
    for (std::size_t i = 0; i < pM.size(); ++i) {
        for (std::size_t j = i + 1; j < pM.size(); ++j) {
            double ei = lab.energy(pM[i].first, pM[i].second, b.m, b.q);
            double ej = lab.energy(pM[j].first, pM[j].second, b.m, b.q);
            double dist = std::sqrt((pM[i].first - pM[j].first).squaredNorm() +
                                    (pM[i].second - pM[j].second) *
                                        (pM[i].second - pM[j].second));
            double margin = dist - std::abs(ei - ej);
            rep.rows.push_back({dist, std::abs(ei - ej), margin});
            rep.fold(margin, tol);
        }
    }
    return rep;
}

CheckReport check_mass_reflection(EnergyLab& lab) {
    CheckReport rep;
    rep.name = "mass_reflection";
    rep.anchor = "gamma5 conjugation sends M to -M; E(p,M) = E(p,-M) <= E(p,0)";
    rep.columns = {"matrix_residual", "E_M", "E_negM", "E_0", "margin"};
    const PolaronModel& b = lab.base();
    double scale = lab.scale();
    double tol = lab.tolerances().bound_tol(scale);

    OperatorMatrix hM = lab.family(b.M, b.m, b.q).hamiltonian(b.p);
    OperatorMatrix hNeg = lab.family(-b.M, b.m, b.q).hamiltonian(b.p);
    OperatorMatrix g5 =
        spin_operator(DiracAlgebra::standard().gamma5, static_cast<Eigen::Index>(b.basis->size()));
    double mat_res = (g5 * hM * g5.adjoint()).max_abs_diff(hNeg);
    rep.fold(1e-12 * scale - mat_res, 0.0);

    double eM = lab.energy(b.p, b.M, b.m, b.q);
    double eNeg = lab.energy(b.p, -b.M, b.m, b.q);
    double e0 = lab.energy(b.p, 0.0, b.m, b.q);
    rep.fold(tol - std::abs(eM - eNeg), 0.0);
    rep.fold(e0 - eM, tol);
    rep.rows.push_back({mat_res, eM, eNeg, e0, e0 - eM});
    return rep;
}

CheckReport check_inverse_energy(EnergyLab& lab, const std::vector<Vec3>& ps) {
    CheckReport rep;
    rep.name = "inverse_energy";
    rep.anchor = "E(p) <= E(0); strict for p != 0 when the grid is inversion-symmetric";
    rep.columns = {"px", "py", "pz", "E_p", "margin"};
    require(lab.base().grid().tags().inversion, ErrorCode::symmetry_violation,
            "inverse energy check needs an inversion-symmetric grid");
    double scale = lab.scale();
    double tol = lab.tolerances().bound_tol(scale);
    double floor = lab.tolerances().floor(scale);
    double e0 = lab.energy(Vec3(0, 0, 0));
    for (const Vec3& p : ps) {
        double ep = lab.energy(p);
        double margin = e0 - ep;
        rep.rows.push_back({p.x(), p.y(), p.z(), ep, margin});
        rep.fold(margin, tol);
        if (p.norm() > 0 && margin < floor)
            rep.note("decrease at |p|=" + fmt(p.norm()) +
                     " indistinguishable from equality (margin " + fmt(margin) + ")");
    }
    return rep;
}

CheckReport check_mass_monotone(EnergyLab& lab, std::vector<double> ms) {
    CheckReport rep;
    rep.name = "mass_monotone";
    rep.anchor = "E_m(p) is non-decreasing in m and converges to the massless value";
    rep.columns = {"m", "E_m", "margin"};
    require(!ms.empty(), ErrorCode::invalid_argument, "empty mass list");
    std::sort(ms.begin(), ms.end());
    require(ms.front() >= 0, ErrorCode::invalid_argument, "photon mass must be >= 0");
    const PolaronModel& b = lab.base();
    double tol = lab.tolerances().bound_tol(lab.scale());

    double prev = 0;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        double e = lab.energy(b.p, b.M, ms[i], b.q);
        double margin = i == 0 ? std::numeric_limits<double>::infinity() : e - prev;
        rep.rows.push_back({ms[i], e, i == 0 ? 0.0 : margin});
        if (i > 0) rep.fold(margin, tol);
        prev = e;
    }
    // operator-norm bound on the massless limit at fixed truncation
    if (ms.front() == 0 && ms.size() > 1 && ms[1] > 0) {
        double e0 = lab.energy(b.p, b.M, 0.0, b.q);
        double e1 = lab.energy(b.p, b.M, ms[1], b.q);
        double cap = ms[1] * (1.0 + b.grid().max_knorm()) * b.basis->n_max();
        rep.fold(cap - std::abs(e1 - e0), tol);
        rep.note("massless limit: |E_m - E_0| = " + fmt(std::abs(e1 - e0)) +
                 " <= " + fmt(cap) + " at m = " + fmt(ms[1]));
    }
    return rep;
}

CheckReport check_rotation_symmetry(EnergyLab& lab, const Vec3& p,
                                    const std::vector<Mat3>& maps) {
    CheckReport rep;
    rep.name = "rotation_symmetry";
    rep.anchor = "E(p) = E(Tp) for grid-group T; E non-increasing along rays";
    rep.columns = {"map_index", "dE", "matrix_residual", "margin"};
    const PolaronModel& b = lab.base();
    const ModeGrid& grid = b.grid();
    double scale = lab.scale();
    double tol = lab.tolerances().bound_tol(scale);
    double tol_matrix = std::max(1e-10 * scale, lab.tolerances().atol);

    std::vector<Mat3> group = maps.empty() ? grid.symmetry_group() : maps;
    const DiracAlgebra& dirac = DiracAlgebra::standard();
    const HamiltonianFamily& fam = lab.family(b.M, b.m, b.q);
    OperatorMatrix h_p = fam.hamiltonian(p);

    double ep = lab.energy(p);
    int idx = 0;
    for (const Mat3& T : group) {
        // unitary route: u_T (x) Gamma carries H(p, e) to H(T^{-1} p, e')
        // with the transported polarization; the gauge unitary closes e' -> e
        Mat4 u_spin = dirac.spinor_for_orthogonal(T);
        OneParticleMap u_phot = OneParticleMap::from_symmetry(grid, T);
        OperatorMatrix U = kron_spin_fock(u_spin, gamma_functor(*b.basis, u_phot));
        PolarizationField moved = transported_polarization(b.polarization, grid, T);
        GaugeUnitary back = gauge_unitary(*b.basis, b.polarization, moved);
        OperatorMatrix WU = back.with_spin() * U;
        OperatorMatrix conj = WU * h_p * WU.adjoint();
        OperatorMatrix h_tp = fam.hamiltonian(T.transpose() * p);
        double mat_res = conj.max_abs_diff(h_tp);
        rep.fold(tol_matrix - mat_res, 0.0);

        double etp = lab.energy(T * p);
        double de = std::abs(etp - ep);
        rep.fold(tol - de, 0.0);
        rep.rows.push_back({static_cast<double>(idx), de, mat_res, tol - de});
        ++idx;
    }

    // radial monotonicity along a ray (exact on inversion-symmetric grids)
    if (grid.tags().inversion) {
        Vec3 dir = p.norm() > 0 ? Vec3(p.normalized()) : grid.axis();
        double reach = std::max(p.norm(), 0.5) * 1.25;
        double prev = lab.energy(Vec3(0, 0, 0));
        for (int i = 1; i <= 4; ++i) {
            double t = reach * i / 4;
            double e = lab.energy(t * dir);
            rep.fold(prev - e, tol);
            prev = e;
        }
    } else {
        rep.note("no inversion tag; ray monotonicity skipped");
    }
    return rep;
}

DispersionReport dispersion_report(EnergyLab& lab, const Vec3& p, std::optional<double> P) {
    DispersionReport rep;
    rep.p = p;
    const PolaronModel& b = lab.base();
    const ModeGrid& grid = b.grid();
    double scale = lab.scale();
    double floor = lab.tolerances().floor(scale);

    double eM = lab.energy(p, b.M, b.m, b.q);
    double e0mass = lab.energy(p, 0.0, b.m, b.q);
    rep.E_p = eM;
    rep.hypothesis_margin = e0mass - eM;
    rep.hypothesis_ok = rep.hypothesis_margin > floor;
    if (!rep.hypothesis_ok) {
        rep.status = CheckStatus::hypothesis_not_satisfied;
        rep.notes.push_back("hypothesis E(p,M) < E(p,0) not satisfied (margin " +
                            fmt(rep.hypothesis_margin) + ")");
        return rep;
    }

    bool at_origin = p.norm() == 0.0;
    // The p = 0 bound lives on rays: E is exactly inversion-even and concave
    // along each line through the origin, so s - G(s) is concave and vanishes
    // at s = 0 per direction.  Spherical symmetry holds only orbit-by-orbit on
    // a grid, so a(P) is evaluated on each node's own ray.
    std::map<std::array<long long, 3>, double> ray_a, ray_P;
    if (!at_origin) {
        rep.E_2p = lab.energy(2 * p);
        rep.b = (eM - rep.E_2p) / p.norm();
        if (!(rep.b < 1.0)) {
            rep.status = CheckStatus::hypothesis_not_satisfied;
            rep.notes.push_back("b = " + fmt(rep.b) + " grazes 1; lower bounds skipped");
            return rep;
        }
    } else {
        auto dir_key = [](const Vec3& k) {
            Vec3 d = k.normalized();
            return std::array<long long, 3>{std::llround(d.x() * 1e9),
                                            std::llround(d.y() * 1e9),
                                            std::llround(d.z() * 1e9)};
        };
        for (std::size_t kp = 0; kp < grid.kpoint_count(); ++kp) {
            const Vec3& k = grid.kpoint(kp);
            auto key = dir_key(k);
            double radius = P.value_or(std::max(k.norm(), ray_P.count(key) ? ray_P[key] : 0.0));
            ray_P[key] = radius;
        }
        for (auto& [key, radius] : ray_P) {
            Vec3 dir(key[0] * 1e-9, key[1] * 1e-9, key[2] * 1e-9);
            dir.normalize();
            Vec3 kP = radius * dir;
            double a = lab.energy(-kP) - eM + radius;
            ray_a[key] = a;
            if (!(a > 0)) {
                rep.status = CheckStatus::fail;
                rep.notes.push_back("a(P) = " + fmt(a) + " not positive along (" +
                                    fmt(dir.x()) + "," + fmt(dir.y()) + "," +
                                    fmt(dir.z()) + ")");
            }
        }
        // headline values from the outermost ray
        rep.P = 0;
        for (const auto& [key, radius] : ray_P)
            if (radius > rep.P) {
                rep.P = radius;
                rep.a_P = ray_a[key];
            }
    }

    double tol_lower = std::max(1e-7 * scale, lab.tolerances().atol);
    double tol_upper = lab.tolerances().bound_tol(scale);
    for (std::size_t kp = 0; kp < grid.kpoint_count(); ++kp) {
        const Vec3& k = grid.kpoint(kp);
        double kn = k.norm();
        double gap = lab.energy(p - k) - eM + kn;
        double lb;
        if (at_origin) {
            Vec3 d = k.normalized();
            auto key = std::array<long long, 3>{std::llround(d.x() * 1e9),
                                                std::llround(d.y() * 1e9),
                                                std::llround(d.z() * 1e9)};
            double a = ray_a.at(key);
            double Pd = ray_P.at(key);
            lb = a * (kn <= Pd ? kn / Pd : 1.0);
        } else {
            double shift = (p - k).norm();
            if (shift <= p.norm())
                lb = kn;
            else if (shift <= 2 * p.norm())
                lb = (1.0 - rep.b) * kn;
            else
                lb = (1.0 - rep.b) * p.norm();
        }
        DispersionEntry e{k, kn, gap, lb, gap - lb, 2 * kn - gap};
        rep.entries.push_back(e);
        rep.worst_slack = std::min({rep.worst_slack, e.slack_lower, e.slack_upper});
        if (gap <= floor)
            rep.notes.push_back("gap at |k| = " + fmt(kn) +
                                " indistinguishable from zero (" + fmt(gap) + ")");
        if (gap < -tol_upper || e.slack_lower < -tol_lower || e.slack_upper < -tol_upper)
            rep.status = CheckStatus::fail;
    }
    return rep;
}

IRCriterionReport ir_criterion(EnergyLab& lab, const Vec3& p,
                               const std::vector<double>& extra_qs) {
    IRCriterionReport rep;
    rep.p = p;
    const PolaronModel& b = lab.base();
    const ModeGrid& grid = b.grid();
    double scale = lab.scale();
    double floor = lab.tolerances().floor(scale);

    double eM = lab.energy(p, b.M, b.m, b.q);
    double e0mass = lab.energy(p, 0.0, b.m, b.q);
    rep.hypothesis_ok = (e0mass - eM) > floor;
    if (!rep.hypothesis_ok) {
        rep.status = CheckStatus::hypothesis_not_satisfied;
        rep.notes.push_back("hypothesis E(p,M) < E(p,0) not satisfied");
        return rep;
    }

    for (std::size_t kp = 0; kp < grid.kpoint_count(); ++kp) {
        const Vec3& k = grid.kpoint(kp);
        double kn = k.norm();
        double rho = b.cutoff.rho(kn);
        double gap = lab.energy(p - k) - eM + kn;
        double integrand = 0;
        if (rho != 0.0) {
            if (gap <= floor) {
                rep.status = CheckStatus::fail;
                rep.notes.push_back("vanishing dispersion gap at |k| = " + fmt(kn) +
                                    " inside the cutoff support");
                continue;
            }
            integrand = grid.weight(kp) * rho * rho / (gap * gap * kn);
        }
        rep.samples.push_back({k, gap, integrand});
        rep.quad_sum += integrand;
    }

    rep.value = b.q * b.q * rep.quad_sum;
    rep.per_helicity_value = rep.value / 2;
    rep.passes = rep.value < 1.0;
    if (rep.quad_sum > 0) rep.q0 = 1.0 / std::sqrt(rep.quad_sum);
    rep.value_at.emplace_back(b.q, rep.value);
    for (double q : extra_qs) rep.value_at.emplace_back(q, q * q * rep.quad_sum);
    return rep;
}

EssentialGapReport essential_gap(EnergyLab& lab, const Vec3& p, double quadrature_slack) {
    const PolaronModel& b = lab.base();
    require(b.m > 0, ErrorCode::invalid_argument,
            "essential gap check needs a positive photon mass parameter");
    EssentialGapReport rep;
    rep.p = p;
    rep.m = b.m;
    const ModeGrid& grid = b.grid();
    rep.k_min = grid.min_knorm();

    double ep = lab.energy(p);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t kp = 0; kp < grid.kpoint_count(); ++kp) {
        const Vec3& k = grid.kpoint(kp);
        double kn = k.norm();
        double omega = (1.0 + b.m) * kn + b.m;
        double v = lab.energy(p - k) + omega - ep;
        rep.entries.emplace_back(kn, v);
        best = std::min(best, v);
    }
    rep.gap = best;
    rep.lower = b.m;
    rep.upper = b.m + (1.0 + b.m) * rep.k_min + quadrature_slack;
    double atol = lab.tolerances().atol;
    rep.worst_slack = std::min(rep.gap - rep.lower + atol, rep.upper + atol - rep.gap);
    rep.status = rep.worst_slack >= 0 ? CheckStatus::pass : CheckStatus::fail;
    return rep;
}

PullThroughReport pull_through_residual(EnergyLab& lab, const Vec3& p) {
    const PolaronModel& b = lab.base();
    const FockBasis& basis = *b.basis;
    const ModeGrid& grid = basis.grid();
    const HamiltonianFamily& fam = lab.family(b.M, b.m, b.q);
    const DiracAlgebra& dirac = DiracAlgebra::standard();

    SpectrumResult gs = lab.ground_data(p, b.M, b.m, b.q);
    double e0 = gs.lowest();
    int mult = gs.multiplicities.front();

    PullThroughReport rep;
    rep.p = p;
    rep.n_max = basis.n_max();
    rep.ground_multiplicity = mult;
    rep.ground_energy = e0;
    rep.per_mode.assign(grid.mode_count(), 0.0);

    // Residual of the resolvent identity
    //   a_lambda(k) Phi = (q/sqrt 2) (H(p-k) - E + omega(k))^{-1} alpha.g(k) Phi,
    // restricted to total occupation <= n_max - 1.  The truncation defect sits
    // in the ceiling sector and leaks into the protected ones only through the
    // resolvent, so the restricted residual shrinks as n_max grows.
    Eigen::VectorXd mask = Eigen::VectorXd::Zero(4 * basis.size());
    for (std::size_t f = 0; f < basis.size(); ++f)
        if (basis.total_occupation(f) <= basis.n_max() - 1)
            for (int s = 0; s < 4; ++s) mask[4 * f + s] = 1.0;

    for (std::size_t kp = 0; kp < grid.kpoint_count(); ++kp) {
        double kn = grid.kpoint(kp).norm();
        double omega = (1.0 + b.m) * kn + b.m;
        Eigen::MatrixXcd shifted = fam.hamiltonian(p - grid.kpoint(kp)).dense();
        shifted.diagonal().array() += (omega - e0);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
        for (int lam = 0; lam < 2; ++lam) {
            std::size_t mode = 2 * kp + lam;
            double w = grid.mode(mode).weight;
            OperatorMatrix a_pt = with_spin_identity(pointwise_annihilation(basis, mode));
            Vec3 g_cont(fam.amplitudes()[0][mode], fam.amplitudes()[1][mode],
                        fam.amplitudes()[2][mode]);
            g_cont /= std::sqrt(w);
            OperatorMatrix rhs_op = spin_operator(dirac.alpha_dot(g_cont),
                                                  static_cast<Eigen::Index>(basis.size()));
            double worst = 0;
            for (int col = 0; col < mult; ++col) {
                Eigen::VectorXcd phi = gs.vectors.col(col);
                Eigen::VectorXcd aphi = a_pt.apply(phi);
                Eigen::VectorXcd pulled =
                    lu.solve((b.q / std::sqrt(2.0)) * rhs_op.apply(phi));
                Eigen::VectorXcd resid = (aphi - pulled).cwiseProduct(mask.cast<Complex>());
                worst = std::max(worst, resid.norm());
            }
            rep.per_mode[mode] = worst;
            rep.max_residual = std::max(rep.max_residual, worst);
        }
    }
    return rep;
}

PhotonBoundsReport photon_bounds(EnergyLab& lab, const Vec3& p) {
    const PolaronModel& b = lab.base();
    const FockBasis& basis = *b.basis;
    const ModeGrid& grid = basis.grid();
    const HamiltonianFamily& fam = lab.family(b.M, b.m, b.q);

    PhotonBoundsReport rep;
    rep.p = p;
    SpectrumResult gs = lab.ground_data(p, b.M, b.m, b.q);
    double e0 = gs.lowest();
    rep.ground_multiplicity = gs.multiplicities.front();

    OperatorMatrix n_op = with_spin_identity(number_operator(basis));
    double worst_n = 0, worst_overlap = 1;
    for (int col = 0; col < rep.ground_multiplicity; ++col) {
        Eigen::VectorXcd phi = gs.vectors.col(col);
        double n_exp = phi.dot(n_op.apply(phi)).real();
        double overlap = phi.segment(0, 4).squaredNorm();  // fock ordinal 0 is the vacuum
        worst_n = std::max(worst_n, n_exp);
        worst_overlap = std::min(worst_overlap, overlap);
    }
    rep.n_expect = worst_n;
    rep.overlap = worst_overlap;

    double sum = 0;
    for (std::size_t kp = 0; kp < grid.kpoint_count(); ++kp) {
        const Vec3& k = grid.kpoint(kp);
        double kn = k.norm();
        double denom = lab.energy(p - k) - e0 + (1.0 + b.m) * kn + b.m;
        for (int lam = 0; lam < 2; ++lam) {
            std::size_t mode = 2 * kp + lam;
            double g2 = 0;
            for (int j = 0; j < 3; ++j) g2 += fam.amplitudes()[j][mode] * fam.amplitudes()[j][mode];
            sum += 0.5 * g2 / (denom * denom);
        }
    }
    rep.bound_over_q2 = sum;
    rep.bound = b.q * b.q * sum;
    rep.slack_number = rep.bound - rep.n_expect;
    rep.slack_overlap = rep.overlap - (1.0 - rep.n_expect);
    double tol = lab.tolerances().bound_tol(lab.scale());
    rep.status = (rep.slack_number >= -tol && rep.slack_overlap >= -lab.tolerances().atol)
                     ? CheckStatus::pass
                     : CheckStatus::fail;
    return rep;
}

}  // namespace polaron
