#pragma once

#include <json.hpp>
#include <string>

#include "invgeo/bangert.hpp"
#include "invgeo/optimizer.hpp"

namespace invgeo {

using Json = nlohmann::json;

Json to_json(const Manifold& m);
Manifold manifold_from_json(const Json& j);

Json to_json(const Isometry& iso);
Isometry isometry_from_json(const Json& j, const Manifold& m);

Json to_json(const DiscretePath& path);
DiscretePath path_from_json(const Json& j);

Json to_json(const IndexReport& rep);
IndexReport index_report_from_json(const Json& j);

Json to_json(const GeodesicRecord& rec);
/// Re-validates the record on load (gradient and constant-speed re-check);
/// throws ArgumentError when validation fails and `validate` is set.
GeodesicRecord record_from_json(const Json& j, bool validate = true,
                                double gradient_tolerance = 1e-6);

Json to_json(const LoopPath& lp);
LoopPath loop_path_from_json(const Json& j);

/// Deterministic shortest-round-trip formatting for CSV output.
std::string format_double(double x);

/// CSV writers used by the reporting layer.
std::string records_csv(const std::vector<GeodesicRecord>& records,
                        const std::vector<OrbitFamily>& families);
std::string index_table_csv(const std::vector<std::tuple<int, int, GeodesicRecord>>& rows);
std::string energy_profile_csv(const std::vector<std::pair<double, double>>& profile);
std::string loop_grid_csv(const LoopPath& lp);

void write_file(const std::string& path, const std::string& contents);

}  // namespace invgeo
