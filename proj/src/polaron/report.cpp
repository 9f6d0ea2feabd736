#include "polaron/report.hpp"

#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace polaron {

std::string Provenance::generated_line() const {
    std::time_t now = std::time(nullptr);
    char iso[32];
    std::strftime(iso, sizeof iso, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
    double runtime =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    char buf[96];
    std::snprintf(buf, sizeof buf, "%s runtime_s=%.3f", iso, runtime);
    return buf;
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    require(out.good(), ErrorCode::io_error, "cannot open " + path + " for writing");
    out << content;
    require(out.good(), ErrorCode::io_error, "write failed for " + path);
}

void write_json_report(const std::string& path, const Provenance& prov,
                       const ordered_json& payload) {
    ordered_json j;
    j["generated"] = prov.generated_line();
    j["config"] = prov.config_echo;
    for (const auto& [key, value] : payload.items()) j[key] = value;
    write_text_file(path, j.dump(2) + "\n");
}

namespace {

std::string csv_quote(const std::string& field) {
    bool needs = field.find_first_of(",\"\n") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

CsvWriter::CsvWriter(const Provenance& prov, std::vector<std::string> header_notes,
                     std::vector<std::string> columns) {
    std::ostringstream os;
    os << "# generated: " << prov.generated_line() << "\n";
    for (const auto& line : prov.config_echo) os << "# config: " << line << "\n";
    for (const auto& line : header_notes) os << "# " << line << "\n";
    for (std::size_t i = 0; i < columns.size(); ++i)
        os << (i ? "," : "") << csv_quote(columns[i]);
    os << "\n";
    body_ = os.str();
}

void CsvWriter::row(const std::vector<double>& values) {
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i)
        os << (i ? "," : "") << format_double(values[i]);
    os << "\n";
    body_ += os.str();
}

void CsvWriter::raw_row(const std::vector<std::string>& fields) {
    std::ostringstream os;
    for (std::size_t i = 0; i < fields.size(); ++i)
        os << (i ? "," : "") << csv_quote(fields[i]);
    os << "\n";
    body_ += os.str();
}

void CsvWriter::save(const std::string& path) const { write_text_file(path, body_); }

void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<SvgSeries>& series) {
    const int W = 820, H = 520, ml = 70, mr = 30, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (xmin > xmax) { xmin = 0; xmax = 1; ymin = 0; ymax = 1; }
    if (xmax == xmin) { xmax = xmin + 1; }
    if (ymax == ymin) { ymax = ymin + 1; }
    double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ymin) / (ymax - ymin) * (H - mt - mb); };
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << W
       << "\" height=\"" << H << "\">\n"
       << "<rect width=\"" << W << "\" height=\"" << H << "\" fill=\"white\"/>\n"
       << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
       << title << "</text>\n";
    // axes with 5 ticks each
    os << "<line x1=\"" << ml << "\" y1=\"" << H - mb << "\" x2=\"" << W - mr << "\" y2=\""
       << H - mb << "\" stroke=\"black\"/>\n"
       << "<line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml << "\" y2=\"" << H - mb
       << "\" stroke=\"black\"/>\n";
    for (int i = 0; i <= 5; ++i) {
        double xv = xmin + (xmax - xmin) * i / 5;
        double yv = ymin + (ymax - ymin) * i / 5;
        char bx[32], by[32];
        std::snprintf(bx, sizeof bx, "%.4g", xv);
        std::snprintf(by, sizeof by, "%.4g", yv);
        os << "<line x1=\"" << px(xv) << "\" y1=\"" << H - mb << "\" x2=\"" << px(xv)
           << "\" y2=\"" << H - mb + 5 << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << px(xv) << "\" y=\"" << H - mb + 20
           << "\" text-anchor=\"middle\" font-size=\"11\">" << bx << "</text>\n"
           << "<line x1=\"" << ml - 5 << "\" y1=\"" << py(yv) << "\" x2=\"" << ml
           << "\" y2=\"" << py(yv) << "\" stroke=\"black\"/>\n"
           << "<text x=\"" << ml - 8 << "\" y=\"" << py(yv) + 4
           << "\" text-anchor=\"end\" font-size=\"11\">" << by << "</text>\n";
    }
    os << "<text x=\"" << (ml + W - mr) / 2 << "\" y=\"" << H - 12
       << "\" text-anchor=\"middle\" font-size=\"13\">" << xlabel << "</text>\n"
       << "<text x=\"18\" y=\"" << (mt + H - mb) / 2
       << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 "
       << (mt + H - mb) / 2 << ")\">" << ylabel << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        os << "<polyline fill=\"none\" stroke=\"" << colors[s % 5]
           << "\" stroke-width=\"1.5\" points=\"";
        for (const auto& [x, y] : series[s].points) os << px(x) << "," << py(y) << " ";
        os << "\"/>\n";
        os << "<text x=\"" << W - mr - 8 << "\" y=\"" << mt + 16 * (s + 1)
           << "\" text-anchor=\"end\" font-size=\"12\" fill=\"" << colors[s % 5] << "\">"
           << series[s].name << "</text>\n";
    }
    os << "</svg>\n";
    write_text_file(path, os.str());
}

ordered_json check_to_json(const CheckReport& rep) {
    ordered_json j;
    j["check"] = rep.name;
    j["statement"] = rep.anchor;
    j["status"] = check_status_name(rep.status);
    j["worst_slack"] = rep.worst_slack;
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    if (!rep.rows.empty()) {
        j["columns"] = rep.columns;
        ordered_json rows = ordered_json::array();
        for (const auto& r : rep.rows) rows.push_back(r);
        j["rows"] = std::move(rows);
    }
    return j;
}

ordered_json surface_to_json(const EnergySurface& surf) {
    ordered_json j;
    j["parameter"] = scan_parameter_name(surf.spec.parameter);
    j["direction"] = {surf.spec.direction.x(), surf.spec.direction.y(),
                      surf.spec.direction.z()};
    j["ok"] = surf.ok;
    if (!surf.ok) j["failure"] = surf.failure;
    ordered_json rows = ordered_json::array();
    for (const auto& s : surf.samples)
        rows.push_back({s.t, s.p.x(), s.p.y(), s.p.z(), s.M, s.m, s.q, s.energy,
                        s.residual, s.iterations});
    j["columns"] = {"t", "px", "py", "pz", "M", "m", "q", "energy", "residual",
                    "iterations"};
    j["rows"] = std::move(rows);
    return j;
}

ordered_json dispersion_to_json(const DispersionReport& rep) {
    ordered_json j;
    j["check"] = "dispersion";
    j["statement"] =
        "0 < E(p-k)-E(p)+|k| <= 2|k| with the piecewise b/a(P) lower bound";
    j["status"] = check_status_name(rep.status);
    j["p"] = {rep.p.x(), rep.p.y(), rep.p.z()};
    j["hypothesis_ok"] = rep.hypothesis_ok;
    j["hypothesis_margin"] = rep.hypothesis_margin;
    j["E_p"] = rep.E_p;
    if (!std::isnan(rep.b)) {
        j["b"] = rep.b;
        j["E_2p"] = rep.E_2p;
    }
    if (!std::isnan(rep.a_P)) {
        j["a_P"] = rep.a_P;
        j["P"] = rep.P;
    }
    j["worst_slack"] = rep.worst_slack;
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    j["columns"] = {"kx", "ky", "kz", "knorm", "gap", "lower_bound", "slack_lower",
                    "slack_upper"};
    ordered_json rows = ordered_json::array();
    for (const auto& e : rep.entries)
        rows.push_back({e.k.x(), e.k.y(), e.k.z(), e.knorm, e.gap, e.lower_bound,
                        e.slack_lower, e.slack_upper});
    j["rows"] = std::move(rows);
    return j;
}

ordered_json ir_to_json(const IRCriterionReport& rep) {
    ordered_json j;
    j["check"] = "ir";
    j["statement"] = "quadrature of q^2 rho(k)^2 / (gap(k)^2 |k|) below 1";
    j["status"] = check_status_name(rep.status);
    j["p"] = {rep.p.x(), rep.p.y(), rep.p.z()};
    j["hypothesis_ok"] = rep.hypothesis_ok;
    j["quad_sum"] = rep.quad_sum;
    j["value"] = rep.value;
    j["per_helicity_value"] = rep.per_helicity_value;
    j["passes"] = rep.passes;
    j["q0"] = rep.q0;
    ordered_json at = ordered_json::array();
    for (const auto& [q, v] : rep.value_at) at.push_back({q, v});
    j["value_at"] = std::move(at);
    if (!rep.notes.empty()) j["notes"] = rep.notes;
    j["columns"] = {"kx", "ky", "kz", "gap", "integrand"};
    ordered_json rows = ordered_json::array();
    for (const auto& s : rep.samples)
        rows.push_back({s.k.x(), s.k.y(), s.k.z(), s.gap, s.integrand});
    j["rows"] = std::move(rows);
    return j;
}

ordered_json essential_gap_to_json(const EssentialGapReport& rep) {
    ordered_json j;
    j["check"] = "essential_gap";
    j["statement"] = "min_k [E(p-k)+omega_m(k)] - E(p) lies in [m, m+(1+m)k_min]";
    j["status"] = check_status_name(rep.status);
    j["p"] = {rep.p.x(), rep.p.y(), rep.p.z()};
    j["m"] = rep.m;
    j["k_min"] = rep.k_min;
    j["gap"] = rep.gap;
    j["lower"] = rep.lower;
    j["upper"] = rep.upper;
    j["worst_slack"] = rep.worst_slack;
    j["columns"] = {"knorm", "value"};
    ordered_json rows = ordered_json::array();
    for (const auto& [kn, v] : rep.entries) rows.push_back({kn, v});
    j["rows"] = std::move(rows);
    return j;
}

ordered_json pull_through_to_json(const std::vector<PullThroughReport>& sweep,
                                  bool strictly_decreasing) {
    ordered_json j;
    j["check"] = "pull_through";
    j["statement"] =
        "resolvent identity for the pointwise annihilation of the ground state; "
        "protected-sector residual decreases with n_max";
    j["status"] = strictly_decreasing ? "pass" : "fail";
    j["columns"] = {"n_max", "max_residual", "ground_multiplicity", "ground_energy"};
    ordered_json rows = ordered_json::array();
    for (const auto& r : sweep)
        rows.push_back({static_cast<double>(r.n_max), r.max_residual,
                        static_cast<double>(r.ground_multiplicity), r.ground_energy});
    j["rows"] = std::move(rows);
    return j;
}

ordered_json photon_bounds_to_json(const PhotonBoundsReport& rep) {
    ordered_json j;
    j["check"] = "photon_bounds";
    j["statement"] =
        "<N> below the discrete quadrature bound; vacuum overlap >= 1 - <N>";
    j["status"] = check_status_name(rep.status);
    j["p"] = {rep.p.x(), rep.p.y(), rep.p.z()};
    j["ground_multiplicity"] = rep.ground_multiplicity;
    j["n_expect"] = rep.n_expect;
    j["bound"] = rep.bound;
    j["bound_over_q2"] = rep.bound_over_q2;
    j["overlap"] = rep.overlap;
    j["slack_number"] = rep.slack_number;
    j["slack_overlap"] = rep.slack_overlap;
    return j;
}

}  // namespace polaron
