#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "polaron/config.hpp"
#include "polaron/report.hpp"
#include "polaron/runner.hpp"

using namespace polaron;

namespace {

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const char* kSample = R"(# sample
p = 0 0 0.5
electron_mass = 1.25
coupling = 0.4
grid.n_azimuthal = 4
grid.k_min = 0.5
grid.k_max = 1.5
n_max = 2
cutoff.kind = exponential
cutoff.decay = 0.7
solver.seed = 99
checks = concavity lipschitz
output.dir = /tmp/polaron-test-out
)";

}  // namespace

TEST_CASE("config parsing: values, echo, round trip") {
    RunConfig cfg = RunConfig::from_string(kSample);
    CHECK(cfg.p.z() == doctest::Approx(0.5));
    CHECK(cfg.M == doctest::Approx(1.25));
    CHECK(cfg.q == doctest::Approx(0.4));
    CHECK(cfg.n_max == 2);
    CHECK(cfg.cutoff.kind == CutoffProfile::Kind::exponential);
    CHECK(cfg.solver.seed == 99);
    CHECK(cfg.checks == std::vector<std::string>{"concavity", "lipschitz"});
    CHECK(cfg.echo.size() == 13);  // every raw line echoed, comments included
    CHECK(cfg.get("coupling") == "0.4");
    CHECK(cfg.get("cutoff.kind") == "exponential");

    PolaronModel model = cfg.build_model();
    CHECK(model.basis->size() == 45);  // K=4 ring, n_max=2
}

TEST_CASE("config rejects unknown keys and malformed lines") {
    CHECK_THROWS_AS(RunConfig::from_string("nonsense_key = 1\n"), Error);
    CHECK_THROWS_AS(RunConfig::from_string("p 0 0 1\n"), Error);
    CHECK_THROWS_AS(RunConfig::from_string("p = 0 0\n"), Error);
    CHECK_THROWS_AS(RunConfig::from_string("coupling = fast\n"), Error);
    CHECK_THROWS_AS(RunConfig::from_string("cutoff.kind = boxcar\n"), Error);
}

TEST_CASE("csv writer quotes fields with commas and quotes") {
    Provenance prov;
    CsvWriter csv(prov, {}, {"a", "b"});
    csv.raw_row({"plain", "with,comma"});
    csv.raw_row({"with\"quote", "x"});
    std::string path = "/tmp/polaron-test-quote.csv";
    csv.save(path);
    std::string text = slurp(path);
    CHECK(text.find("\"with,comma\"") != std::string::npos);
    CHECK(text.find("\"with\"\"quote\"") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("svg chart renders a polyline per series") {
    std::string path = "/tmp/polaron-test-chart.svg";
    write_svg_chart(path, "title", "x", "y",
                    {{"series", {{0.0, 1.0}, {1.0, 2.0}, {2.0, 0.5}}}});
    std::string text = slurp(path);
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("<polyline") != std::string::npos);
    CHECK(text.find("</svg>") != std::string::npos);
    std::remove(path.c_str());
}

TEST_CASE("empty check selection is a no-op run") {
    RunConfig cfg = RunConfig::from_string(kSample);
    cfg.checks = {"none"};
    std::string dir = "/tmp/polaron-test-none";
    std::filesystem::remove_all(dir);
    CheckRunResult r = cmd_check(cfg, {}, dir);
    CHECK(r.hard_failures == 0);
    CHECK(r.outcomes.empty());
    CHECK(std::filesystem::exists(dir + "/checks.json"));
    std::filesystem::remove_all(dir);
}

TEST_CASE("unknown check names are rejected") {
    RunConfig cfg = RunConfig::from_string(kSample);
    CHECK_THROWS_AS(cmd_check(cfg, {"made_up"}, "/tmp/polaron-test-x"), Error);
}

TEST_CASE("solve pipeline: first CSV eigenvalue is the free dispersion at q = 0") {
    RunConfig cfg = RunConfig::from_string(kSample);
    cfg.q = 0.0;
    cfg.p = Vec3(0, 0, 0.5);
    cfg.M = 1.0;
    std::string dir = "/tmp/polaron-test-solve";
    std::filesystem::remove_all(dir);
    cmd_solve(cfg, dir);
    std::ifstream in(dir + "/spectrum.csv");
    REQUIRE(in.good());
    std::string line;
    std::string first_row;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (first_row.empty() && line.find("index") == std::string::npos) {
            first_row = line;
            break;
        }
    }
    REQUIRE_FALSE(first_row.empty());
    // columns: index, eigenvalue, residual, cluster
    double eig = std::stod(first_row.substr(first_row.find(',') + 1));
    CHECK(eig == doctest::Approx(-std::sqrt(1.25)).epsilon(1e-9));
    std::filesystem::remove_all(dir);
}

TEST_CASE("scan pipeline writes surface files") {
    RunConfig cfg = RunConfig::from_string(kSample);
    cfg.scan.count = 3;
    cfg.scan.to = 0.6;
    std::string dir = "/tmp/polaron-test-scan";
    std::filesystem::remove_all(dir);
    cmd_scan(cfg, dir);
    CHECK(std::filesystem::exists(dir + "/surface.csv"));
    CHECK(std::filesystem::exists(dir + "/surface.json"));
    CHECK(std::filesystem::exists(dir + "/surface.svg"));
    std::string csv = slurp(dir + "/surface.csv");
    CHECK(csv.find("# config: coupling = 0.4") != std::string::npos);  // echo
    std::filesystem::remove_all(dir);
}
