// config.hpp — plain-text run configuration: documented `key = value` lines

#pragma once

#include <string>
#include <vector>

#include "polaron/energy.hpp"
#include "polaron/model.hpp"

namespace polaron {

struct GridSpec {
    int n_radial = 1;
    int n_polar = 1;
    int n_azimuthal = 4;
    double k_min = 0.5;
    double k_max = 1.5;
    Vec3 axis = Vec3(0, 0, 1);
};

struct RunConfig {
    // model
    Vec3 p = Vec3(0, 0, 0);
    double M = 1.0;
    double m = 0.0;
    double q = 0.3;
    GridSpec grid;
    int n_max = 3;
    CutoffProfile cutoff;
    PolarizationKind polarization = PolarizationKind::xy;
    Vec3 polarization_axis = Vec3(0, 0, 1);

    // solver / budgets / tolerances
    SolverSettings solver;
    int n_eigs = 6;  // for the solve pipeline
    ToleranceModel tol;
    std::size_t max_states = 2'000'000;

    // scan
    ScanSpec scan;

    // checks
    std::vector<std::string> checks{"all"};
    int concavity_segments = 10;
    int lipschitz_points = 6;
    std::vector<double> mass_list{0.0, 0.1, 0.3};
    double essential_gap_m = 0.2;
    Vec3 dispersion_p = Vec3(0, 0, 0.5);
    std::vector<double> ir_qs{0.1, 0.2, 0.4};
    std::vector<int> pullthrough_nmax{1, 2, 3};
    double pullthrough_weight = 0.005;
    std::uint64_t check_seed = 1;
    int sector_clusters = 12;

    std::string output_dir = "out";

    // raw lines of the source file, echoed into every report
    std::vector<std::string> echo;

    ModeGrid build_grid() const;
    PolaronModel build_model() const;

    static RunConfig from_file(const std::string& path);
    static RunConfig from_string(const std::string& text);
    // set a single key; used by the C API and CLI overrides
    void set(const std::string& key, const std::string& value);
    std::string get(const std::string& key) const;
};

}  // namespace polaron
