#include "rehabkin/geometry_json.hpp"

#include <fstream>
#include <sstream>
#include <vector>

#include <json.hpp>

#include "rehabkin/errors.hpp"

namespace rehabkin {

namespace {

using nlohmann::json;

bool read_vec3(const json& doc, const char* field, Eigen::Vector3d& out,
               std::vector<std::string>& issues) {
  if (!doc.contains(field)) {
    issues.push_back(std::string("missing field '") + field + "'");
    return false;
  }
  const json& value = doc[field];
  if (!value.is_array() || value.size() != 3 || !value[0].is_number() || !value[1].is_number() ||
      !value[2].is_number()) {
    issues.push_back(std::string("field '") + field + "' must be an array of 3 numbers");
    return false;
  }
  out = Eigen::Vector3d(value[0].get<double>(), value[1].get<double>(), value[2].get<double>());
  return true;
}

bool read_number(const json& doc, const char* field, double& out,
                 std::vector<std::string>& issues) {
  if (!doc.contains(field)) {
    issues.push_back(std::string("missing field '") + field + "'");
    return false;
  }
  if (!doc[field].is_number()) {
    issues.push_back(std::string("field '") + field + "' must be a number");
    return false;
  }
  out = doc[field].get<double>();
  return true;
}

}  // namespace

MechanismGeometry parse_geometry(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& error) {
    throw InvalidGeometryError({std::string("document is not valid JSON: ") + error.what()});
  }
  if (!doc.is_object()) {
    throw InvalidGeometryError({"document root must be a JSON object"});
  }

  std::vector<std::string> issues;
  MechanismGeometry geometry;

  if (!doc.contains("architecture") || !doc["architecture"].is_string()) {
    issues.push_back("missing or non-string field 'architecture'");
  } else {
    const std::string name = doc["architecture"].get<std::string>();
    if (name == "RPU_3UPS") {
      geometry.architecture = Architecture::RPU_3UPS;
    } else if (name == "PRU_3PUS") {
      geometry.architecture = Architecture::PRU_3PUS;
    } else {
      issues.push_back("unknown architecture '" + name + "' (expected RPU_3UPS or PRU_3PUS)");
    }
  }

  auto read_anchor_triple = [&](const char* field, std::array<Eigen::Vector3d, 3>& out) {
    if (!doc.contains(field) || !doc[field].is_array() || doc[field].size() != 3) {
      issues.push_back(std::string("field '") + field + "' must be an array of 3 points");
      return;
    }
    for (int i = 0; i < 3; ++i) {
      const json& point = doc[field][static_cast<std::size_t>(i)];
      if (!point.is_array() || point.size() != 3 || !point[0].is_number() ||
          !point[1].is_number() || !point[2].is_number()) {
        issues.push_back(std::string("field '") + field + "' entry " + std::to_string(i + 1) +
                         " must be an array of 3 numbers");
        continue;
      }
      out[static_cast<std::size_t>(i)] =
          Eigen::Vector3d(point[0].get<double>(), point[1].get<double>(), point[2].get<double>());
    }
  };
  read_anchor_triple("base_anchors", geometry.base_anchors);
  read_anchor_triple("platform_anchors", geometry.platform_anchors);
  read_vec3(doc, "central_platform_anchor", geometry.central_platform_anchor, issues);

  if (!doc.contains("stroke_limits") || !doc["stroke_limits"].is_array() ||
      doc["stroke_limits"].size() != 4) {
    issues.push_back("field 'stroke_limits' must be an array of 4 [min, max] pairs "
                     "(central joint first)");
  } else {
    for (int i = 0; i < 4; ++i) {
      const json& pair = doc["stroke_limits"][static_cast<std::size_t>(i)];
      if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
        issues.push_back("stroke_limits entry " + std::to_string(i + 1) +
                         " must be a [min, max] pair of numbers");
        continue;
      }
      geometry.stroke_limits[static_cast<std::size_t>(i)] =
          Interval{pair[0].get<double>(), pair[1].get<double>()};
    }
  }

  double u_cone_deg = 0.0;
  double s_cone_deg = 0.0;
  if (read_number(doc, "u_joint_cone_half_angle_deg", u_cone_deg, issues)) {
    geometry.u_cone_half_angle = deg2rad(u_cone_deg);
  }
  if (read_number(doc, "s_joint_cone_half_angle_deg", s_cone_deg, issues)) {
    geometry.s_cone_half_angle = deg2rad(s_cone_deg);
  }
  read_number(doc, "characteristic_length", geometry.characteristic_length, issues);

  if (geometry.architecture == Architecture::PRU_3PUS) {
    read_vec3(doc, "rail_direction", geometry.rail_direction, issues);
    read_number(doc, "strut_length", geometry.strut_length, issues);
    read_number(doc, "central_link_length", geometry.central_link_length, issues);
  }

  if (!issues.empty()) {
    throw InvalidGeometryError(std::move(issues));
  }
  return validate_geometry(geometry);
}

MechanismGeometry load_geometry(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidGeometryError({"cannot open geometry document: " + path.string()});
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_geometry(text.str());
}

}  // namespace rehabkin
