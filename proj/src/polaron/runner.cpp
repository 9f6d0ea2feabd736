#include "polaron/runner.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <set>

#include "polaron/gauge.hpp"
#include "polaron/report.hpp"
#include "polaron/serialize.hpp"

namespace polaron {

namespace {

constexpr double kPi = std::numbers::pi;

std::string prep_dir(const std::string& out_dir) {
    std::filesystem::create_directories(out_dir);
    return out_dir.back() == '/' ? out_dir : out_dir + "/";
}

EnergyLab make_lab(const RunConfig& cfg) {
    return EnergyLab(cfg.build_model(), cfg.solver, cfg.tol);
}

std::vector<int> cluster_ids(const std::vector<int>& sizes) {
    std::vector<int> ids;
    int id = 0;
    for (int s : sizes) {
        for (int i = 0; i < s; ++i) ids.push_back(id);
        ++id;
    }
    return ids;
}

ordered_json spectrum_json(const SpectrumResult& r) {
    ordered_json j;
    j["solver"] = r.solver == SpectrumResult::Solver::dense ? "dense" : "krylov";
    j["iterations"] = r.iterations;
    j["seed"] = r.seed;
    j["converged"] = r.converged;
    j["scale"] = r.scale;
    j["eigenvalues"] = r.eigenvalues;
    j["residuals"] = r.residuals;
    j["multiplicities"] = r.multiplicities;
    return j;
}

void write_spectrum_csv(const std::string& path, const Provenance& prov,
                        const SpectrumResult& r) {
    CsvWriter csv(prov, {"spectrum: eigenvalue, residual, cluster"},
                  {"index", "eigenvalue", "residual", "cluster"});
    auto ids = cluster_ids(r.multiplicities);
    for (std::size_t i = 0; i < r.eigenvalues.size(); ++i) {
        double res = i < r.residuals.size() ? r.residuals[i] : 0.0;
        csv.row({static_cast<double>(i), r.eigenvalues[i], res,
                 static_cast<double>(i < ids.size() ? ids[i] : -1)});
    }
    csv.save(path);
}

DispersionReport run_dispersion_pair(EnergyLab& lab, const RunConfig& cfg,
                                     DispersionReport& at_p) {
    DispersionReport at_zero = dispersion_report(lab, Vec3(0, 0, 0));
    at_p = dispersion_report(lab, cfg.dispersion_p);
    return at_zero;
}

struct PullThroughSweep {
    std::vector<PullThroughReport> reports;
    bool strictly_decreasing = true;
    bool degenerate_zero = false;  // everything at rounding level (e.g. q = 0)
};

PullThroughSweep run_pull_through(const RunConfig& cfg) {
    // a single off-axis k-point with a small weight isolates the ceiling
    // truncation; the model's couplings and masses are reused
    ModeGrid base_grid = cfg.build_grid();
    Vec3 dir = base_grid.kpoint(0).normalized();
    double radius = 0.5 * (cfg.grid.k_min + cfg.grid.k_max);
    ModeGrid single = make_grid_from_kpoints({{radius * dir, cfg.pullthrough_weight}},
                                             base_grid.axis());
    PullThroughSweep sweep;
    double prev = std::numeric_limits<double>::infinity();
    for (int n_max : cfg.pullthrough_nmax) {
        PolaronModel model = make_model(single, n_max, cfg.cutoff, cfg.polarization,
                                        cfg.polarization_axis, Vec3(0, 0, 0), cfg.M,
                                        cfg.m, cfg.q, cfg.max_states);
        EnergyLab lab(model, cfg.solver, cfg.tol);
        PullThroughReport rep = pull_through_residual(lab, model.p);
        if (rep.max_residual >= prev) sweep.strictly_decreasing = false;
        prev = rep.max_residual;
        sweep.reports.push_back(std::move(rep));
    }
    if (!sweep.reports.empty() && sweep.reports.front().max_residual <= 1e-13) {
        sweep.degenerate_zero = true;
        sweep.strictly_decreasing = true;  // identically zero family (q = 0)
    }
    return sweep;
}

struct GaugeCheckData {
    double conj_residual = 0;
    double spectra_residual = 0;
    double chain_residual = 0;
    double inverse_residual = 0;
    double unitarity_residual = 0;
    double scale = 1;
    CheckStatus status = CheckStatus::pass;
    std::vector<std::string> notes;
};

GaugeCheckData run_gauge_check(const RunConfig& cfg) {
    GaugeCheckData out;
    PolaronModel model = cfg.build_model();
    const ModeGrid& grid = model.grid();
    const FockBasis& basis = *model.basis;

    // second and third polarization choices for the conjugation and the chain
    // rule; candidate axes skip any direction parallel to a node
    auto try_axis = [&](const Vec3& axis) -> std::optional<PolarizationField> {
        try {
            return make_polarization(PolarizationKind::axis, grid, axis);
        } catch (const Error&) {
            return std::nullopt;
        }
    };
    std::vector<Vec3> candidates{Vec3(1, 0, 0), Vec3(0, 1, 0), Vec3(1, 1, 1).normalized(),
                                 Vec3(1, 2, 3).normalized(), Vec3(2, -1, 1).normalized()};
    std::vector<PolarizationField> fields;
    for (const Vec3& axis : candidates) {
        if (auto f = try_axis(axis)) fields.push_back(std::move(*f));
        if (fields.size() == 2) break;
    }
    require(fields.size() == 2, ErrorCode::singular_node,
            "no non-singular alternative polarization axis found for this grid");

    PolaronModel alt = model;
    alt.polarization = fields[0];
    OperatorMatrix h = assemble(model).matrix;
    OperatorMatrix h_alt = assemble(alt).matrix;
    out.scale = std::max(h.gershgorin_norm(), 1e-300);

    GaugeUnitary u = gauge_unitary(basis, model.polarization, fields[0]);
    OperatorMatrix w = u.with_spin();
    out.conj_residual = (w * h_alt * w.adjoint()).max_abs_diff(h);
    out.unitarity_residual =
        (u.matrix * u.matrix.adjoint()).max_abs_diff(OperatorMatrix::identity(u.matrix.dim()));

    SpectrumResult sa = dense_spectrum(h, cfg.solver.dense_threshold, cfg.solver.cluster_tol);
    SpectrumResult sb =
        dense_spectrum(h_alt, cfg.solver.dense_threshold, cfg.solver.cluster_tol);
    for (std::size_t i = 0; i < sa.eigenvalues.size(); ++i)
        out.spectra_residual =
            std::max(out.spectra_residual, std::abs(sa.eigenvalues[i] - sb.eigenvalues[i]));

    GaugeUnitary u12 = gauge_unitary(basis, model.polarization, fields[1]);
    GaugeUnitary u2 = gauge_unitary(basis, fields[1], fields[0]);
    out.chain_residual = (u12.matrix * u2.matrix).max_abs_diff(u.matrix);
    GaugeUnitary u_back = gauge_unitary(basis, fields[0], model.polarization);
    out.inverse_residual = u.matrix.adjoint().max_abs_diff(u_back.matrix);

    if (out.conj_residual > 1e-11 * out.scale ||
        out.spectra_residual > 1e-9 * out.scale || out.chain_residual > 1e-12 ||
        out.inverse_residual > 1e-12)
        out.status = CheckStatus::fail;
    return out;
}

struct SectorCheckData {
    CheckStatus status = CheckStatus::pass;
    double commutant_residual = 0;
    double multiset_residual = 0;  // merged sector spectra vs full spectrum
    KramersReport kramers;
    std::vector<double> labels;
    std::vector<Eigen::Index> dims;
    SectorDecomposition dec;
    Vec3 p_used;
    double scale = 1;
};

SectorCheckData run_sector_check(const RunConfig& cfg) {
    SectorCheckData out;
    PolaronModel model = cfg.build_model();
    const ModeGrid& grid = model.grid();
    // the rotation representation needs p along the grid axis
    out.p_used = model.p.dot(grid.axis()) * grid.axis();
    HamiltonianFamily fam(model.basis, model.cutoff, model.polarization, model.M, model.m,
                          model.q);
    OperatorMatrix h = fam.hamiltonian(out.p_used);
    out.scale = std::max(h.gershgorin_norm(), 1e-300);
    int n_az = grid.tags().azimuthal;
    OperatorMatrix r =
        rotation_operator(*model.basis, model.polarization, 2 * kPi / n_az, out.p_used);
    out.dec = sector_decompose(h, r, n_az, 1e-10 * out.scale);
    out.commutant_residual = out.dec.commutant_residual;
    out.labels = out.dec.labels;
    for (const auto& b : out.dec.bases) out.dims.push_back(b.cols());

    SpectrumResult full = dense_spectrum(h, cfg.solver.dense_threshold, cfg.solver.cluster_tol);
    std::vector<double> merged = out.dec.merged_spectrum();
    for (std::size_t i = 0; i < merged.size(); ++i)
        out.multiset_residual =
            std::max(out.multiset_residual, std::abs(merged[i] - full.eigenvalues[i]));

    out.kramers = kramers_pairing(h, out.dec, *model.basis, cfg.solver.cluster_tol,
                                  cfg.sector_clusters);
    if (out.multiset_residual > 1e-9 * out.scale ||
        out.kramers.pairing_residual > 1e-10 * out.scale ||
        out.kramers.spectra_pair_residual > 1e-9 * out.scale || !out.kramers.all_even)
        out.status = CheckStatus::fail;
    return out;
}

}  // namespace

std::vector<std::string> all_check_names() {
    return {"concavity",     "lipschitz",     "mass_reflection", "inverse_energy",
            "mass_monotone", "rotation_symmetry", "dispersion",  "ir",
            "essential_gap", "pull_through",  "photon_bounds",   "gauge",
            "sectors"};
}

void cmd_assemble(const RunConfig& cfg, const std::string& out_dir) {
    Provenance prov{cfg.echo};
    std::string dir = prep_dir(out_dir);
    PolaronModel model = cfg.build_model();
    PolaronHamiltonian h = assemble(model);
    write_json_report(dir + "hamiltonian.json", prov, operator_to_json(h.matrix));
    write_json_report(dir + "basis.json", prov, basis_to_json(*model.basis));
    ordered_json j;
    j["dim"] = h.matrix.dim();
    j["nnz"] = h.matrix.nnz();
    j["hermiticity_residual"] = h.matrix.hermiticity_residual();
    j["scale"] = h.matrix.gershgorin_norm();
    j["kpoints"] = model.grid().kpoint_count();
    j["n_max"] = model.basis->n_max();
    write_json_report(dir + "assemble.json", prov, j);
}

void cmd_solve(const RunConfig& cfg, const std::string& out_dir) {
    Provenance prov{cfg.echo};
    std::string dir = prep_dir(out_dir);
    PolaronModel model = cfg.build_model();
    OperatorMatrix h = assemble(model).matrix;
    SpectrumResult r;
    bool dense = cfg.solver.mode == SolverSettings::Mode::dense ||
                 (cfg.solver.mode == SolverSettings::Mode::automatic &&
                  h.dim() <= cfg.solver.dense_threshold);
    if (dense)
        r = dense_spectrum(h, cfg.solver.dense_threshold, cfg.solver.cluster_tol);
    else
        r = krylov_lowest(h, cfg.n_eigs, cfg.solver.tol, cfg.solver.max_iter,
                          cfg.solver.seed, cfg.solver.cluster_tol);
    write_spectrum_csv(dir + "spectrum.csv", prov, r);
    write_json_report(dir + "spectrum.json", prov, spectrum_json(r));
}

void cmd_scan(const RunConfig& cfg, const std::string& out_dir) {
    Provenance prov{cfg.echo};
    std::string dir = prep_dir(out_dir);
    EnergyLab lab = make_lab(cfg);
    EnergySurface surf = scan(lab, cfg.scan);
    CsvWriter csv(prov, {"energy surface over " + scan_parameter_name(cfg.scan.parameter)},
                  {"t", "px", "py", "pz", "M", "m", "q", "energy", "residual",
                   "iterations"});
    SvgSeries series{"E", {}};
    for (const auto& s : surf.samples) {
        csv.row({s.t, s.p.x(), s.p.y(), s.p.z(), s.M, s.m, s.q, s.energy, s.residual,
                 static_cast<double>(s.iterations)});
        series.points.emplace_back(s.t, s.energy);
    }
    csv.save(dir + "surface.csv");
    write_json_report(dir + "surface.json", prov, surface_to_json(surf));
    write_svg_chart(dir + "surface.svg",
                    "ground energy vs " + scan_parameter_name(cfg.scan.parameter),
                    scan_parameter_name(cfg.scan.parameter), "E", {series});
}

void cmd_dispersion(const RunConfig& cfg, const std::string& out_dir) {
    Provenance prov{cfg.echo};
    std::string dir = prep_dir(out_dir);
    EnergyLab lab = make_lab(cfg);
    DispersionReport at_p;
    DispersionReport at_zero = run_dispersion_pair(lab, cfg, at_p);

    ordered_json j;
    j["at_zero"] = dispersion_to_json(at_zero);
    j["at_p"] = dispersion_to_json(at_p);
    write_json_report(dir + "dispersion.json", prov, j);

    CsvWriter csv(prov, {"dispersion gap and bounds per grid node"},
                  {"which_p", "kx", "ky", "kz", "knorm", "gap", "lower_bound",
                   "slack_lower", "slack_upper"});
    SvgSeries gap_s{"gap", {}}, lb_s{"lower bound", {}}, ub_s{"2|k|", {}};
    auto add = [&](const DispersionReport& rep, double tag) {
        std::vector<DispersionEntry> sorted = rep.entries;
        std::sort(sorted.begin(), sorted.end(),
                  [](const auto& a, const auto& b) { return a.knorm < b.knorm; });
        for (const auto& e : sorted) {
            csv.row({tag, e.k.x(), e.k.y(), e.k.z(), e.knorm, e.gap, e.lower_bound,
                     e.slack_lower, e.slack_upper});
            if (tag == 0) {
                gap_s.points.emplace_back(e.knorm, e.gap);
                lb_s.points.emplace_back(e.knorm, e.lower_bound);
                ub_s.points.emplace_back(e.knorm, 2 * e.knorm);
            }
        }
    };
    add(at_zero, 0);
    add(at_p, 1);
    csv.save(dir + "dispersion.csv");
    write_svg_chart(dir + "dispersion.svg", "dispersion gap vs bounds at p = 0", "|k|",
                    "gap", {gap_s, lb_s, ub_s});
}

void cmd_ir(const RunConfig& cfg, const std::string& out_dir) {
    Provenance prov{cfg.echo};
    std::string dir = prep_dir(out_dir);
    EnergyLab lab = make_lab(cfg);
    IRCriterionReport rep = ir_criterion(lab, lab.base().p, cfg.ir_qs);
    write_json_report(dir + "ir.json", prov, ir_to_json(rep));
    CsvWriter csv(prov, {"infrared criterion integrand samples"},
                  {"kx", "ky", "kz", "gap", "integrand"});
    for (const auto& s : rep.samples)
        csv.row({s.k.x(), s.k.y(), s.k.z(), s.gap, s.integrand});
    csv.save(dir + "ir.csv");
}

void cmd_sectors(const RunConfig& cfg, const std::string& out_dir) {
    Provenance prov{cfg.echo};
    std::string dir = prep_dir(out_dir);
    SectorCheckData data = run_sector_check(cfg);

    CsvWriter csv(prov, {"angular momentum sector spectra"},
                  {"sector_z", "eigenvalue", "residual"});
    for (std::size_t l = 0; l < data.dec.labels.size(); ++l) {
        const auto& blk = data.dec.block_spectra[l];
        for (std::size_t i = 0; i < blk.eigenvalues.size(); ++i)
            csv.row({data.dec.labels[l], blk.eigenvalues[i], blk.residuals[i]});
    }
    csv.save(dir + "sectors.csv");

    ordered_json j;
    j["status"] = check_status_name(data.status);
    j["p"] = {data.p_used.x(), data.p_used.y(), data.p_used.z()};
    j["n_az"] = data.dec.n_az;
    j["labels"] = data.labels;
    ordered_json dims = ordered_json::array();
    for (auto d : data.dims) dims.push_back(d);
    j["dims"] = std::move(dims);
    j["commutant_residual"] = data.commutant_residual;
    j["eigenphase_residual"] = data.dec.eigenphase_residual;
    j["multiset_residual"] = data.multiset_residual;
    j["kramers_pairing_residual"] = data.kramers.pairing_residual;
    j["kramers_sector_map_residual"] = data.kramers.sector_map_residual;
    j["kramers_spectra_pair_residual"] = data.kramers.spectra_pair_residual;
    j["cluster_sizes"] = data.kramers.cluster_sizes;
    j["all_even"] = data.kramers.all_even;
    write_json_report(dir + "sectors.json", prov, j);
}

CheckRunResult cmd_check(const RunConfig& cfg, const std::vector<std::string>& which,
                         const std::string& out_dir) {
    Provenance prov{cfg.echo};
    std::string dir = prep_dir(out_dir);

    std::vector<std::string> selected = which;
    if (selected.empty()) selected = cfg.checks;
    std::set<std::string> want;
    for (const auto& name : selected) {
        if (name == "all") {
            for (const auto& n : all_check_names()) want.insert(n);
        } else if (name == "none") {
            continue;
        } else {
            auto names = all_check_names();
            require(std::find(names.begin(), names.end(), name) != names.end(),
                    ErrorCode::invalid_argument, "unknown check '" + name + "'");
            want.insert(name);
        }
    }

    CheckRunResult result;
    ordered_json consolidated;
    ordered_json entries = ordered_json::array();
    if (want.empty()) {
        consolidated["checks"] = entries;
        consolidated["hard_failures"] = 0;
        write_json_report(dir + "checks.json", prov, consolidated);
        return result;
    }

    EnergyLab lab = make_lab(cfg);
    const PolaronModel& base = lab.base();
    Vec3 generic_p = base.p.norm() > 0 && base.p.cross(base.grid().axis()).norm() > 1e-9
                         ? base.p
                         : Vec3(0.3, 0.2, 0.4);

    auto record = [&](const std::string& name, CheckStatus status, double slack,
                      const ordered_json& payload) {
        write_json_report(dir + "check_" + name + ".json", prov, payload);
        entries.push_back({{"check", name},
                           {"status", check_status_name(status)},
                           {"worst_slack", slack}});
        result.outcomes.push_back({name, status, slack});
        if (status == CheckStatus::fail) ++result.hard_failures;
    };

    for (const std::string& name : all_check_names()) {
        if (!want.count(name)) continue;
        if (name == "concavity") {
            CheckReport rep = check_concavity(
                lab, random_segments(lab, cfg.concavity_segments, cfg.check_seed));
            record(name, rep.status, rep.worst_slack, check_to_json(rep));
        } else if (name == "lipschitz") {
            CheckReport rep = check_lipschitz(
                lab, random_pM_samples(lab, cfg.lipschitz_points, cfg.check_seed + 1));
            record(name, rep.status, rep.worst_slack, check_to_json(rep));
        } else if (name == "mass_reflection") {
            CheckReport rep = check_mass_reflection(lab);
            record(name, rep.status, rep.worst_slack, check_to_json(rep));
        } else if (name == "inverse_energy") {
            std::vector<Vec3> ps{Vec3(0, 0, 0), 0.5 * base.grid().axis(),
                                 base.grid().axis(), generic_p};
            if (base.p.norm() > 0) ps.push_back(base.p);
            CheckReport rep = check_inverse_energy(lab, ps);
            record(name, rep.status, rep.worst_slack, check_to_json(rep));
        } else if (name == "mass_monotone") {
            std::vector<double> ms = cfg.mass_list;
            if (std::find(ms.begin(), ms.end(), 0.0) == ms.end()) ms.push_back(0.0);
            CheckReport rep = check_mass_monotone(lab, ms);
            record(name, rep.status, rep.worst_slack, check_to_json(rep));
        } else if (name == "rotation_symmetry") {
            CheckReport rep = check_rotation_symmetry(lab, generic_p);
            record(name, rep.status, rep.worst_slack, check_to_json(rep));
        } else if (name == "dispersion") {
            DispersionReport at_p;
            DispersionReport at_zero = run_dispersion_pair(lab, cfg, at_p);
            ordered_json j;
            j["at_zero"] = dispersion_to_json(at_zero);
            j["at_p"] = dispersion_to_json(at_p);
            CheckStatus status = at_zero.status == CheckStatus::fail ||
                                         at_p.status == CheckStatus::fail
                                     ? CheckStatus::fail
                                     : (at_zero.status == CheckStatus::pass &&
                                                at_p.status == CheckStatus::pass
                                            ? CheckStatus::pass
                                            : CheckStatus::hypothesis_not_satisfied);
            record(name, status, std::min(at_zero.worst_slack, at_p.worst_slack), j);
        } else if (name == "ir") {
            IRCriterionReport rep = ir_criterion(lab, base.p, cfg.ir_qs);
            record(name, rep.status, rep.value < 1 ? 1 - rep.value : 0.0, ir_to_json(rep));
        } else if (name == "essential_gap") {
            // three refinements with the smallest node norm halving each time
            ordered_json refinements = ordered_json::array();
            CheckStatus status = CheckStatus::pass;
            double worst = std::numeric_limits<double>::infinity();
            double prev_gap = std::numeric_limits<double>::infinity();
            bool tightening = true;
            for (int level = 0; level < 3; ++level) {
                double f = std::pow(0.5, level);
                ModeGrid g = build_cylindrical_grid(
                    cfg.grid.n_radial, cfg.grid.n_polar, cfg.grid.n_azimuthal,
                    cfg.grid.k_min * f, cfg.grid.k_max * f, cfg.grid.axis);
                PolaronModel mm =
                    make_model(g, cfg.n_max, cfg.cutoff, cfg.polarization,
                               cfg.polarization_axis, Vec3(0, 0, 0), cfg.M,
                               cfg.essential_gap_m, cfg.q, cfg.max_states);
                EnergyLab lab_m(mm, cfg.solver, cfg.tol);
                EssentialGapReport rep = essential_gap(lab_m, mm.p);
                refinements.push_back(essential_gap_to_json(rep));
                if (rep.status == CheckStatus::fail) status = CheckStatus::fail;
                worst = std::min(worst, rep.worst_slack);
                if (rep.gap >= prev_gap) tightening = false;
                prev_gap = rep.gap;
            }
            if (!tightening) status = CheckStatus::fail;
            ordered_json j;
            j["check"] = "essential_gap";
            j["statement"] =
                "gap in [m, m+(1+m)k_min]; bracket tightens as k_min is halved";
            j["status"] = check_status_name(status);
            j["tightening"] = tightening;
            j["refinements"] = std::move(refinements);
            record(name, status, worst, j);
        } else if (name == "pull_through") {
            PullThroughSweep sweep = run_pull_through(cfg);
            ordered_json j = pull_through_to_json(sweep.reports, sweep.strictly_decreasing);
            if (sweep.degenerate_zero)
                j["notes"] = {"residuals at rounding level for every n_max"};
            CheckStatus status =
                sweep.strictly_decreasing ? CheckStatus::pass : CheckStatus::fail;
            double slack = sweep.reports.empty() ? 0.0 : -sweep.reports.back().max_residual;
            record(name, status, slack, j);
        } else if (name == "photon_bounds") {
            PhotonBoundsReport rep = photon_bounds(lab, base.p);
            record(name, rep.status, std::min(rep.slack_number, rep.slack_overlap),
                   photon_bounds_to_json(rep));
        } else if (name == "gauge") {
            GaugeCheckData data = run_gauge_check(cfg);
            ordered_json j;
            j["check"] = "gauge";
            j["statement"] =
                "polarization changes are unitary at matrix level; spectra and the "
                "chain rule are preserved";
            j["status"] = check_status_name(data.status);
            j["scale"] = data.scale;
            j["conj_residual"] = data.conj_residual;
            j["spectra_residual"] = data.spectra_residual;
            j["chain_residual"] = data.chain_residual;
            j["inverse_residual"] = data.inverse_residual;
            j["unitarity_residual"] = data.unitarity_residual;
            if (!data.notes.empty()) j["notes"] = data.notes;
            record(name, data.status, 1e-11 * data.scale - data.conj_residual, j);
        } else if (name == "sectors") {
            SectorCheckData data = run_sector_check(cfg);
            ordered_json j;
            j["check"] = "sectors";
            j["statement"] =
                "H commutes with the discrete rotation; sectors z and -z are "
                "isospectral; all eigenvalue clusters have even size";
            j["status"] = check_status_name(data.status);
            j["commutant_residual"] = data.commutant_residual;
            j["multiset_residual"] = data.multiset_residual;
            j["kramers_pairing_residual"] = data.kramers.pairing_residual;
            j["kramers_spectra_pair_residual"] = data.kramers.spectra_pair_residual;
            j["cluster_sizes"] = data.kramers.cluster_sizes;
            j["all_even"] = data.kramers.all_even;
            record(name, data.status,
                   1e-10 * data.scale - data.commutant_residual, j);
        }
    }

    consolidated["checks"] = std::move(entries);
    consolidated["hard_failures"] = result.hard_failures;
    write_json_report(dir + "checks.json", prov, consolidated);
    return result;
}

}  // namespace polaron
