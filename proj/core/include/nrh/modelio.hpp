#pragma once
#include <string>

#include "nrh/model.hpp"

namespace nrh {

// Parsed model file. When the curvature block is {"solve_for": "curvature"},
// model.R is left empty and solve_for_curvature is set; the caller decides how
// to fill it (typically via curvature_space).
struct ModelFile {
  InfinitesimalModel model;
  bool solve_for_curvature = false;
};

// Parse / serialize the JSON model format. All rationals travel as strings
// ("p/q" or "p") so round trips are exact. Throws SchemaError with a
// field-path diagnostic on malformed input.
ModelFile parse_model(const std::string& json_text);
ModelFile load_model(const std::string& path);
std::string serialize_model(const InfinitesimalModel& m, int indent = 2);
void save_model(const InfinitesimalModel& m, const std::string& path);

}  // namespace nrh
