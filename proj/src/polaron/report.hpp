// report.hpp — deterministic CSV/JSON report emission and small SVG charts.
// Every file carries the config echo; the timestamp/runtime live in exactly
// one header line ("generated") so reruns are byte-identical elsewhere.

#pragma once

#include <chrono>
#include <string>
#include <vector>

#include <json.hpp>

#include "polaron/energy.hpp"

namespace polaron {

using ordered_json = nlohmann::ordered_json;

struct Provenance {
    std::vector<std::string> config_echo;  // raw config lines
    std::chrono::steady_clock::time_point started = std::chrono::steady_clock::now();

    std::string generated_line() const;  // "<iso8601> runtime_s=<t>"
};

std::string format_double(double v);  // %.17g

void write_text_file(const std::string& path, const std::string& content);

// JSON file with "generated" first, then the config echo, then the payload keys
void write_json_report(const std::string& path, const Provenance& prov,
                       const ordered_json& payload);

class CsvWriter {
public:
    CsvWriter(const Provenance& prov, std::vector<std::string> header_notes,
              std::vector<std::string> columns);
    void row(const std::vector<double>& values);
    void raw_row(const std::vector<std::string>& fields);
    void save(const std::string& path) const;

private:
    std::string body_;
};

// minimal SVG 1.1 polyline chart; series drawn in order with fixed colors
struct SvgSeries {
    std::string name;
    std::vector<std::pair<double, double>> points;
};
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::string& xlabel, const std::string& ylabel,
                     const std::vector<SvgSeries>& series);

// ---- conversions of check/report structures ----
ordered_json check_to_json(const CheckReport& rep);
ordered_json surface_to_json(const EnergySurface& surf);
ordered_json dispersion_to_json(const DispersionReport& rep);
ordered_json ir_to_json(const IRCriterionReport& rep);
ordered_json essential_gap_to_json(const EssentialGapReport& rep);
ordered_json pull_through_to_json(const std::vector<PullThroughReport>& sweep,
                                  bool strictly_decreasing);
ordered_json photon_bounds_to_json(const PhotonBoundsReport& rep);

}  // namespace polaron
