#ifndef SIEGEL_JSON_IO_HPP
#define SIEGEL_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "siegel/carleson.hpp"
#include "siegel/integrate.hpp"
#include "siegel/measure.hpp"
#include "siegel/metric.hpp"
#include "siegel/point.hpp"
#include "siegel/region.hpp"

namespace siegel {

/// Wire formats. Schema errors raise SchemaError with a message naming the
/// offending field; the CLI maps that to its I/O exit code.
struct SchemaError : std::runtime_error {
    explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

nlohmann::json point_to_json(const CPoint& z);
CPoint point_from_json(const nlohmann::json& j);

nlohmann::json region_to_json(const RegionSpec& region);
RegionSpec region_from_json(const nlohmann::json& j);

nlohmann::json measure_to_json(const MeasureSpec& mu);
MeasureSpec measure_from_json(const nlohmann::json& j);
MeasureSpec measure_from_file(const std::string& path);

nlohmann::json integration_result_to_json(const IntegrationResult& r);

nlohmann::json lattice_to_json(const Lattice& lat);

nlohmann::json report_to_json(const DiagnosticsReport& rep);
std::string report_shell_trend_csv(const DiagnosticsReport& rep);

}  // namespace siegel

#endif
