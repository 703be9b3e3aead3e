#pragma once

#include <filesystem>
#include <string>

#include "rehabkin/geometry.hpp"

namespace rehabkin {

/// Parses a geometry document (JSON). Lengths are meters; the two joint-cone
/// half angles are authored in degrees (fields *_deg) and converted on load.
/// The result is validated; schema problems and invariant violations both
/// raise InvalidGeometryError.
MechanismGeometry parse_geometry(const std::string& json_text);

MechanismGeometry load_geometry(const std::filesystem::path& path);

}  // namespace rehabkin
