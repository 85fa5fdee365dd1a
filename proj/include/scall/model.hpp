#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"
#include "scall/matrix.hpp"

namespace scall {

using Json = nlohmann::json;
using OrderedJson = nlohmann::ordered_json;

struct ResourceDef {
  std::string id;
  std::string name;
  std::string unit;  // measurement-unit label, e.g. "MB"
  bool operator==(const ResourceDef&) const = default;
};

struct ComputingUnit {
  std::string id;
  std::string name;
  std::string kind;  // CPU, GPU, FPGA, ...
  bool operator==(const ComputingUnit&) const = default;
};

struct SoftwareComponent {
  std::string id;
  std::string name;
  // Empty means the component may be placed on any unit.
  std::vector<std::string> allowed_units;
  bool operator==(const SoftwareComponent&) const = default;
};

// Unvalidated model content, as decoded from a document or built in code.
struct ModelData {
  std::vector<ResourceDef> resources;        // l
  std::vector<ComputingUnit> units;          // m
  std::vector<SoftwareComponent> components;  // n

  Tensor3 consumption;   // T, n x m x l
  Matrix availability;   // R, m x l
  Matrix intensity;      // K, n x n
  Matrix comm_cost;      // C, m x m
  Matrix bandwidth;      // B, m x m, 0 = no physical link
  std::optional<Matrix> comparison;  // (l+1) x (l+1), last criterion is communication

  bool operator==(const ModelData&) const = default;
};

enum class IssueCode {
  kMissingField,
  kWrongType,
  kEmptyList,
  kEmptyId,
  kDuplicateId,
  kDimensionMismatch,
  kNegativeEntry,
  kNonFiniteEntry,
  kAsymmetricK,
  kAsymmetricC,
  kAsymmetricB,
  kNonzeroDiagonal,
  kUnknownUnitRef,
  kEmptyAllowedUnits,
  kComparisonDimension,
  kComparisonNotPositive,
  kComparisonBadDiagonal,
  kComparisonNotReciprocal,
  kComparisonOutOfScale,
};

std::string_view issue_code_name(IssueCode code);

struct ValidationIssue {
  IssueCode code;
  std::string path;  // JSON-pointer-like location, e.g. "/K/0/1"
  std::string message;
};

using ValidationReport = std::vector<ValidationIssue>;

Json report_to_json(const ValidationReport& report);
bool report_has(const ValidationReport& report, IssueCode code);

// Raised when bytes are not a decodable JSON document.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::string message, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Raised by load_model when the document decodes but the model is invalid.
class InvalidModel : public std::runtime_error {
 public:
  explicit InvalidModel(ValidationReport report);
  const ValidationReport& report() const { return report_; }

 private:
  ValidationReport report_;
};

using UnitIndex = std::uint32_t;

// Component mapping: entry i is the index of the unit hosting component i.
class Allocation {
 public:
  Allocation() = default;
  explicit Allocation(std::size_t n, UnitIndex fill = 0) : units_(n, fill) {}
  explicit Allocation(std::vector<UnitIndex> units) : units_(std::move(units)) {}
  Allocation(std::initializer_list<UnitIndex> units) : units_(units) {}

  std::size_t size() const { return units_.size(); }
  UnitIndex operator[](std::size_t i) const { return units_[i]; }
  UnitIndex& operator[](std::size_t i) { return units_[i]; }

  auto begin() const { return units_.begin(); }
  auto end() const { return units_.end(); }
  std::span<const UnitIndex> units() const { return units_; }

  auto operator<=>(const Allocation&) const = default;
  bool operator==(const Allocation&) const = default;

 private:
  std::vector<UnitIndex> units_;
};

struct AllocationHash {
  std::size_t operator()(const Allocation& p) const noexcept;
};

class ArchitectureModel;

std::variant<ArchitectureModel, ValidationReport> validate_model(ModelData data);

// A model that has passed every structural and semantic check. Immutable.
class ArchitectureModel {
 public:
  const ModelData& data() const { return data_; }

  std::size_t num_components() const { return data_.components.size(); }
  std::size_t num_units() const { return data_.units.size(); }
  std::size_t num_resources() const { return data_.resources.size(); }

  double consumption(std::size_t i, std::size_t h, std::size_t k) const {
    return data_.consumption(i, h, k);
  }
  double availability(std::size_t h, std::size_t k) const { return data_.availability(h, k); }
  double intensity(std::size_t i, std::size_t j) const { return data_.intensity(i, j); }
  double comm_cost(std::size_t g, std::size_t h) const { return data_.comm_cost(g, h); }
  double bandwidth(std::size_t g, std::size_t h) const { return data_.bandwidth(g, h); }
  const std::optional<Matrix>& comparison() const { return data_.comparison; }

  // Unit indices component i may occupy, ascending.
  std::span<const UnitIndex> allowed_units(std::size_t i) const { return allowed_[i]; }
  bool is_allowed(std::size_t i, std::size_t h) const {
    return allowed_mask_[i * num_units() + h] != 0;
  }
  bool is_unconstrained(std::size_t i) const {
    return data_.components[i].allowed_units.empty();
  }

  std::optional<UnitIndex> unit_index(std::string_view id) const;
  std::optional<std::size_t> component_index(std::string_view id) const;

  // Pairs (i, j), i < j, with nonzero communication intensity.
  struct Link {
    std::uint32_t i;
    std::uint32_t j;
    double intensity;
  };
  std::span<const Link> links() const { return links_; }

  // m^n, saturating at UINT64_MAX.
  std::uint64_t search_space_size() const;

  // Throws std::invalid_argument unless p has n entries that all name existing units.
  void check_allocation_shape(const Allocation& p) const;
  // True iff every component sits on one of its allowed units.
  bool respects_constraints(const Allocation& p) const;

  bool operator==(const ArchitectureModel& other) const { return data_ == other.data_; }

 private:
  friend std::variant<ArchitectureModel, ValidationReport> validate_model(ModelData data);
  explicit ArchitectureModel(ModelData data);

  ModelData data_;
  std::vector<std::vector<UnitIndex>> allowed_;
  std::vector<unsigned char> allowed_mask_;
  std::vector<Link> links_;
};

// Decodes the canonical JSON document into model content. Structural
// problems (missing keys, wrong types, ragged or mis-sized arrays) are
// reported; semantic checks are left to validate_model.
std::variant<ModelData, ValidationReport> decode_document(const Json& doc);

// decode_document followed by validate_model; all issues from the first
// failing stage are returned.
std::variant<ArchitectureModel, ValidationReport> validate_model(const Json& doc);

// Parses bytes as JSON. Throws ParseError with 1-based line/column.
Json parse_json(std::string_view bytes);

// Throws ParseError or InvalidModel.
ArchitectureModel load_model(std::string_view bytes);
ArchitectureModel load_model_file(const std::string& path);

OrderedJson to_document(const ModelData& data);
std::string save_model(const ArchitectureModel& model);

// Parses a comparison entry: a number, or a string "a/b" or "x".
std::optional<double> parse_ratio(const Json& value);

// Conversions between external unit ids and internal unit indices. Throw
// std::invalid_argument on unknown ids or wrong length.
Allocation allocation_from_ids(const ArchitectureModel& model, const std::vector<std::string>& ids);
std::vector<std::string> allocation_to_ids(const ArchitectureModel& model, const Allocation& p);

}  // namespace scall
