#pragma once

#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>

#include "scall/model.hpp"

namespace scall::testing {

inline std::string data_path(const std::string& name) { return std::string(SCALL_DATA_DIR) + "/" + name; }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Json e1_doc() { return parse_json(read_file(data_path("e1.json"))); }
inline Json auv_doc() { return parse_json(read_file(data_path("auv.json"))); }

inline ArchitectureModel must_validate(const Json& doc) {
  auto result = validate_model(doc);
  if (auto* report = std::get_if<ValidationReport>(&result)) throw InvalidModel(*report);
  return std::get<ArchitectureModel>(std::move(result));
}

inline ArchitectureModel must_validate(ModelData data) {
  auto result = validate_model(std::move(data));
  if (auto* report = std::get_if<ValidationReport>(&result)) throw InvalidModel(*report);
  return std::get<ArchitectureModel>(std::move(result));
}

inline ArchitectureModel e1_model() { return must_validate(e1_doc()); }
inline ArchitectureModel auv_model() { return must_validate(auv_doc()); }

// E1 with one edit applied to its document.
inline ArchitectureModel e1_with(const std::function<void(Json&)>& edit) {
  Json doc = e1_doc();
  edit(doc);
  return must_validate(doc);
}

}  // namespace scall::testing
