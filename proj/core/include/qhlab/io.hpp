#pragma once

#include "qhlab/analysis.hpp"
#include "qhlab/control.hpp"
#include "qhlab/domain.hpp"
#include "qhlab/maps.hpp"
#include "qhlab/metrics.hpp"
#include "qhlab/scenarios.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace qhlab {

inline constexpr int kReportSchemaVersion = 1;

nlohmann::json to_json(const Point& p);
Point point_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DomainSpec& d);
DomainSpec domain_from_json(const nlohmann::json& j);

nlohmann::json to_json(const MapSpec& f);
MapSpec map_from_json(const nlohmann::json& j);

// {kind, params}; Table carries its samples, composites nest.
nlohmann::json to_json(const ControlFunction& f);
ControlFunction control_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ConstantReport& r);
nlohmann::json to_json(const DeltaReport& r);
nlohmann::json to_json(const Scenario& s);

// Header "x,y" or "x,y,z".
void write_points_csv(std::ostream& os, std::span<const Point> pts);
PointList read_points_csv(std::istream& is);

// Square matrix, one row per line, no header.
void write_matrix_csv(std::ostream& os, const MetricOracle& m);
MetricOracle read_matrix_csv(std::istream& is);

// "t,eta_hat" samples of f on the envelope bucket edges.
void write_control_csv(std::ostream& os, const ControlFunction& f);

// scenario,check,computed,bound,pass
void write_summary_csv(std::ostream& os, std::span<const Scenario> scenarios);

} // namespace qhlab
