#include "scall/model.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "scall/ahp.hpp"

namespace scall {

std::string_view issue_code_name(IssueCode code) {
  switch (code) {
    case IssueCode::kMissingField: return "MISSING_FIELD";
    case IssueCode::kWrongType: return "WRONG_TYPE";
    case IssueCode::kEmptyList: return "EMPTY_LIST";
    case IssueCode::kEmptyId: return "EMPTY_ID";
    case IssueCode::kDuplicateId: return "DUPLICATE_ID";
    case IssueCode::kDimensionMismatch: return "DIMENSION_MISMATCH";
    case IssueCode::kNegativeEntry: return "NEGATIVE_ENTRY";
    case IssueCode::kNonFiniteEntry: return "NON_FINITE_ENTRY";
    case IssueCode::kAsymmetricK: return "ASYMMETRIC_K";
    case IssueCode::kAsymmetricC: return "ASYMMETRIC_C";
    case IssueCode::kAsymmetricB: return "ASYMMETRIC_B";
    case IssueCode::kNonzeroDiagonal: return "NONZERO_DIAGONAL";
    case IssueCode::kUnknownUnitRef: return "UNKNOWN_UNIT_REF";
    case IssueCode::kEmptyAllowedUnits: return "EMPTY_ALLOWED_UNITS";
    case IssueCode::kComparisonDimension: return "COMPARISON_DIMENSION";
    case IssueCode::kComparisonNotPositive: return "COMPARISON_NOT_POSITIVE";
    case IssueCode::kComparisonBadDiagonal: return "COMPARISON_BAD_DIAGONAL";
    case IssueCode::kComparisonNotReciprocal: return "COMPARISON_NOT_RECIPROCAL";
    case IssueCode::kComparisonOutOfScale: return "COMPARISON_OUT_OF_SCALE";
  }
  return "UNKNOWN";
}

Json report_to_json(const ValidationReport& report) {
  Json out = Json::array();
  for (const auto& issue : report) {
    out.push_back({{"code", issue_code_name(issue.code)},
                   {"path", issue.path},
                   {"message", issue.message}});
  }
  return out;
}

bool report_has(const ValidationReport& report, IssueCode code) {
  return std::any_of(report.begin(), report.end(),
                     [code](const ValidationIssue& i) { return i.code == code; });
}

ParseError::ParseError(std::string message, std::size_t line, std::size_t column)
    : std::runtime_error(std::move(message)), line_(line), column_(column) {}

namespace {

std::string summarize(const ValidationReport& report) {
  std::ostringstream os;
  os << "model has " << report.size() << " validation issue(s)";
  if (!report.empty()) {
    os << "; first: " << issue_code_name(report.front().code) << " at "
       << report.front().path << ": " << report.front().message;
  }
  return os.str();
}

}  // namespace

InvalidModel::InvalidModel(ValidationReport report)
    : std::runtime_error(summarize(report)), report_(std::move(report)) {}

std::size_t AllocationHash::operator()(const Allocation& p) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (UnitIndex u : p) {
    h ^= u;
    h *= 1099511628211ull;
  }
  return h;
}

// ---------------------------------------------------------------------------
// ArchitectureModel

ArchitectureModel::ArchitectureModel(ModelData data) : data_(std::move(data)) {
  const std::size_t n = num_components();
  const std::size_t m = num_units();
  allowed_.resize(n);
  allowed_mask_.assign(n * m, 0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& refs = data_.components[i].allowed_units;
    if (refs.empty()) {
      for (std::size_t h = 0; h < m; ++h) allowed_mask_[i * m + h] = 1;
    } else {
      for (const auto& id : refs) {
        if (auto h = unit_index(id)) allowed_mask_[i * m + *h] = 1;
      }
    }
    for (std::size_t h = 0; h < m; ++h) {
      if (allowed_mask_[i * m + h]) allowed_[i].push_back(static_cast<UnitIndex>(h));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double k = data_.intensity(i, j);
      if (k != 0.0) {
        links_.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), k});
      }
    }
  }
}

std::optional<UnitIndex> ArchitectureModel::unit_index(std::string_view id) const {
  for (std::size_t h = 0; h < data_.units.size(); ++h) {
    if (data_.units[h].id == id) return static_cast<UnitIndex>(h);
  }
  return std::nullopt;
}

std::optional<std::size_t> ArchitectureModel::component_index(std::string_view id) const {
  for (std::size_t i = 0; i < data_.components.size(); ++i) {
    if (data_.components[i].id == id) return i;
  }
  return std::nullopt;
}

std::uint64_t ArchitectureModel::search_space_size() const {
  const std::uint64_t m = num_units();
  std::uint64_t size = 1;
  for (std::size_t i = 0; i < num_components(); ++i) {
    if (size > std::numeric_limits<std::uint64_t>::max() / m) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    size *= m;
  }
  return size;
}

void ArchitectureModel::check_allocation_shape(const Allocation& p) const {
  if (p.size() != num_components()) {
    throw std::invalid_argument("allocation has " + std::to_string(p.size()) +
                                " entries, model has " + std::to_string(num_components()) +
                                " components");
  }
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] >= num_units()) {
      throw std::invalid_argument("allocation entry " + std::to_string(i) +
                                  " references unit index " + std::to_string(p[i]) +
                                  " outside 0.." + std::to_string(num_units() - 1));
    }
  }
}

bool ArchitectureModel::respects_constraints(const Allocation& p) const {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!is_allowed(i, p[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Semantic validation

namespace {

class Reporter {
 public:
  void add(IssueCode code, std::string path, std::string message) {
    report_.push_back({code, std::move(path), std::move(message)});
  }
  bool empty() const { return report_.empty(); }
  ValidationReport take() { return std::move(report_); }

 private:
  ValidationReport report_;
};

std::string at(std::string_view base, std::size_t a) {
  return std::string(base) + "/" + std::to_string(a);
}
std::string at(std::string_view base, std::size_t a, std::size_t b) {
  return at(base, a) + "/" + std::to_string(b);
}
std::string at(std::string_view base, std::size_t a, std::size_t b, std::size_t c) {
  return at(base, a, b) + "/" + std::to_string(c);
}

template <typename Item>
void check_ids(const std::vector<Item>& items, std::string_view list, std::string_view what,
               Reporter& rep) {
  if (items.empty()) {
    rep.add(IssueCode::kEmptyList, "/" + std::string(list),
            "model needs at least one " + std::string(what));
  }
  std::set<std::string_view> seen;
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string& id = items[i].id;
    const std::string path = at("/" + std::string(list), i) + "/id";
    if (id.empty()) {
      rep.add(IssueCode::kEmptyId, path, std::string(what) + " id must be non-empty");
    } else if (!seen.insert(id).second) {
      rep.add(IssueCode::kDuplicateId, path, "duplicate " + std::string(what) + " id '" + id + "'");
    }
  }
}

void check_entry(double x, const std::string& path, Reporter& rep) {
  if (!std::isfinite(x)) {
    rep.add(IssueCode::kNonFiniteEntry, path, "entry must be finite");
  } else if (x < 0.0) {
    rep.add(IssueCode::kNegativeEntry, path, "entry must be non-negative");
  }
}

bool check_dims(const Matrix& mat, std::size_t rows, std::size_t cols, std::string_view name,
                Reporter& rep) {
  if (mat.rows() != rows || mat.cols() != cols) {
    std::ostringstream os;
    os << name << " is " << mat.rows() << "x" << mat.cols() << ", expected " << rows << "x"
       << cols;
    rep.add(IssueCode::kDimensionMismatch, "/" + std::string(name), os.str());
    return false;
  }
  return true;
}

void check_matrix_entries(const Matrix& mat, std::string_view name, Reporter& rep) {
  for (std::size_t a = 0; a < mat.rows(); ++a) {
    for (std::size_t b = 0; b < mat.cols(); ++b) check_entry(mat(a, b), at("/" + std::string(name), a, b), rep);
  }
}

void check_symmetric(const Matrix& mat, std::string_view name, IssueCode asym, Reporter& rep) {
  const std::string base = "/" + std::string(name);
  for (std::size_t a = 0; a < mat.rows(); ++a) {
    if (mat(a, a) != 0.0) {
      rep.add(IssueCode::kNonzeroDiagonal, at(base, a, a),
              std::string(name) + " must have a zero diagonal");
    }
    for (std::size_t b = a + 1; b < mat.cols(); ++b) {
      if (mat(a, b) != mat(b, a)) {
        std::ostringstream os;
        os << name << "[" << a << "][" << b << "] = " << mat(a, b) << " but " << name << "[" << b
           << "][" << a << "] = " << mat(b, a);
        rep.add(asym, at(base, a, b), os.str());
      }
    }
  }
}

void check_comparison(const Matrix& cmp, std::size_t l, Reporter& rep) {
  if (cmp.rows() != l + 1 || cmp.cols() != l + 1) {
    std::ostringstream os;
    os << "comparison is " << cmp.rows() << "x" << cmp.cols() << ", expected " << l + 1 << "x"
       << l + 1 << " (resources plus communication)";
    rep.add(IssueCode::kComparisonDimension, "/comparison", os.str());
    return;
  }
  for (const ComparisonIssue& issue : inspect_comparison(cmp)) {
    const std::string path = at("/comparison", issue.row, issue.col);
    switch (issue.defect) {
      case ComparisonDefect::kNotSquare:
        rep.add(IssueCode::kComparisonDimension, "/comparison", "comparison must be square");
        break;
      case ComparisonDefect::kNotPositive:
        rep.add(IssueCode::kComparisonNotPositive, path, "judgment must be positive");
        break;
      case ComparisonDefect::kBadDiagonal:
        rep.add(IssueCode::kComparisonBadDiagonal, path, "diagonal judgment must be 1");
        break;
      case ComparisonDefect::kNotReciprocal:
        rep.add(IssueCode::kComparisonNotReciprocal, path,
                "judgment is not the reciprocal of its mirror entry");
        break;
      case ComparisonDefect::kOutOfScale:
        rep.add(IssueCode::kComparisonOutOfScale, path, "judgment outside the 1/9..9 scale");
        break;
    }
  }
}

}  // namespace

std::variant<ArchitectureModel, ValidationReport> validate_model(ModelData data) {
  Reporter rep;
  check_ids(data.resources, "resources", "resource", rep);
  check_ids(data.units, "units", "unit", rep);
  check_ids(data.components, "components", "component", rep);

  const std::size_t n = data.components.size();
  const std::size_t m = data.units.size();
  const std::size_t l = data.resources.size();

  std::set<std::string_view> unit_ids;
  for (const auto& u : data.units) unit_ids.insert(u.id);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& refs = data.components[i].allowed_units;
    std::size_t known = 0;
    for (std::size_t r = 0; r < refs.size(); ++r) {
      if (unit_ids.count(refs[r])) {
        ++known;
      } else {
        rep.add(IssueCode::kUnknownUnitRef, at(at("/components", i) + "/allowedUnits", r),
                "component '" + data.components[i].id + "' references unknown unit '" + refs[r] +
                    "'");
      }
    }
    if (!refs.empty() && known == 0) {
      rep.add(IssueCode::kEmptyAllowedUnits, at("/components", i) + "/allowedUnits",
              "component '" + data.components[i].id + "' has no placeable unit");
    }
  }

  const Tensor3& t = data.consumption;
  if (t.dim0() != n || t.dim1() != m || t.dim2() != l) {
    std::ostringstream os;
    os << "T is " << t.dim0() << "x" << t.dim1() << "x" << t.dim2() << ", expected " << n << "x"
       << m << "x" << l;
    rep.add(IssueCode::kDimensionMismatch, "/T", os.str());
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t h = 0; h < m; ++h)
        for (std::size_t k = 0; k < l; ++k) check_entry(t(i, h, k), at("/T", i, h, k), rep);
  }

  if (check_dims(data.availability, m, l, "R", rep)) check_matrix_entries(data.availability, "R", rep);
  if (check_dims(data.intensity, n, n, "K", rep)) {
    check_matrix_entries(data.intensity, "K", rep);
    check_symmetric(data.intensity, "K", IssueCode::kAsymmetricK, rep);
  }
  if (check_dims(data.comm_cost, m, m, "C", rep)) {
    check_matrix_entries(data.comm_cost, "C", rep);
    check_symmetric(data.comm_cost, "C", IssueCode::kAsymmetricC, rep);
  }
  if (check_dims(data.bandwidth, m, m, "B", rep)) {
    check_matrix_entries(data.bandwidth, "B", rep);
    check_symmetric(data.bandwidth, "B", IssueCode::kAsymmetricB, rep);
  }
  if (data.comparison) check_comparison(*data.comparison, l, rep);

  if (!rep.empty()) return rep.take();
  return ArchitectureModel(std::move(data));
}

// ---------------------------------------------------------------------------
// Document decoding

std::optional<double> parse_ratio(const Json& value) {
  if (value.is_number()) return value.get<double>();
  if (!value.is_string()) return std::nullopt;

  const std::string& s = value.get_ref<const std::string&>();
  auto parse_part = [](std::string_view part) -> std::optional<double> {
    while (!part.empty() && part.front() == ' ') part.remove_prefix(1);
    while (!part.empty() && part.back() == ' ') part.remove_suffix(1);
    if (part.empty()) return std::nullopt;
    std::string buf(part);
    char* end = nullptr;
    const double v = std::strtod(buf.c_str(), &end);
    if (end != buf.c_str() + buf.size()) return std::nullopt;
    return v;
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return parse_part(s);
  const auto num = parse_part(std::string_view(s).substr(0, slash));
  const auto den = parse_part(std::string_view(s).substr(slash + 1));
  if (!num || !den || *den == 0.0) return std::nullopt;
  return *num / *den;
}

namespace {

class Decoder {
 public:
  explicit Decoder(Reporter& rep) : rep_(rep) {}

  std::optional<std::string> string_field(const Json& obj, const char* key, const std::string& path,
                                          bool required) {
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) rep_.add(IssueCode::kMissingField, path + "/" + key, std::string("missing '") + key + "'");
      return std::nullopt;
    }
    if (!it->is_string()) {
      rep_.add(IssueCode::kWrongType, path + "/" + key, std::string("'") + key + "' must be a string");
      return std::nullopt;
    }
    return it->get<std::string>();
  }

  const Json* array_field(const Json& doc, const char* key, bool required) {
    auto it = doc.find(key);
    if (it == doc.end()) {
      if (required) rep_.add(IssueCode::kMissingField, std::string("/") + key, std::string("missing '") + key + "'");
      return nullptr;
    }
    if (!it->is_array()) {
      rep_.add(IssueCode::kWrongType, std::string("/") + key, std::string("'") + key + "' must be an array");
      return nullptr;
    }
    return &*it;
  }

  // Reads a rows x cols numeric array. Sizes of zero mean "unknown": the
  // first row fixes the width.
  std::optional<Matrix> matrix(const Json& arr, const std::string& path,
                               std::optional<std::size_t> rows, std::optional<std::size_t> cols,
                               bool allow_ratio = false) {
    if (rows && arr.size() != *rows) {
      dim(path, "expected " + std::to_string(*rows) + " rows, got " + std::to_string(arr.size()));
      return std::nullopt;
    }
    const std::size_t r = arr.size();
    std::size_t c = cols.value_or(r > 0 && arr[0].is_array() ? arr[0].size() : 0);
    Matrix out(r, c);
    bool ok = true;
    for (std::size_t a = 0; a < r; ++a) {
      const Json& row = arr[a];
      if (!row.is_array()) {
        rep_.add(IssueCode::kWrongType, at(path, a), "row must be an array");
        ok = false;
        continue;
      }
      if (row.size() != c) {
        dim(at(path, a), "expected " + std::to_string(c) + " columns, got " + std::to_string(row.size()));
        ok = false;
        continue;
      }
      for (std::size_t b = 0; b < c; ++b) {
        auto v = allow_ratio ? parse_ratio(row[b]) : number(row[b]);
        if (!v) {
          rep_.add(IssueCode::kWrongType, at(path, a, b),
                   allow_ratio ? "entry must be a number or a fraction string like \"1/3\""
                               : "entry must be a number");
          ok = false;
          continue;
        }
        out(a, b) = *v;
      }
    }
    if (!ok) return std::nullopt;
    return out;
  }

  std::optional<Tensor3> tensor(const Json& arr, std::size_t n, std::size_t m, std::size_t l) {
    const std::string path = "/T";
    if (arr.size() != n) {
      dim(path, "expected " + std::to_string(n) + " component rows, got " + std::to_string(arr.size()));
      return std::nullopt;
    }
    Tensor3 out(n, m, l);
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (!arr[i].is_array()) {
        rep_.add(IssueCode::kWrongType, at(path, i), "row must be an array");
        ok = false;
        continue;
      }
      auto slab = matrix(arr[i], at(path, i), m, l);
      if (!slab) {
        ok = false;
        continue;
      }
      for (std::size_t h = 0; h < m; ++h)
        for (std::size_t k = 0; k < l; ++k) out(i, h, k) = (*slab)(h, k);
    }
    if (!ok) return std::nullopt;
    return out;
  }

 private:
  static std::optional<double> number(const Json& v) {
    if (!v.is_number()) return std::nullopt;
    return v.get<double>();
  }

  void dim(const std::string& path, std::string message) {
    rep_.add(IssueCode::kDimensionMismatch, path, std::move(message));
  }

  Reporter& rep_;
};

}  // namespace

std::variant<ModelData, ValidationReport> decode_document(const Json& doc) {
  Reporter rep;
  if (!doc.is_object()) {
    rep.add(IssueCode::kWrongType, "", "model document must be a JSON object");
    return rep.take();
  }
  Decoder dec(rep);
  ModelData data;
  bool lists_ok = true;

  if (const Json* arr = dec.array_field(doc, "resources", true)) {
    for (std::size_t k = 0; k < arr->size(); ++k) {
      const Json& item = (*arr)[k];
      const std::string path = at("/resources", k);
      if (!item.is_object()) {
        rep.add(IssueCode::kWrongType, path, "resource must be an object");
        lists_ok = false;
        continue;
      }
      ResourceDef r;
      auto id = dec.string_field(item, "id", path, true);
      if (!id) lists_ok = false;
      r.id = id.value_or("");
      r.name = dec.string_field(item, "name", path, false).value_or(r.id);
      r.unit = dec.string_field(item, "unit", path, false).value_or("");
      data.resources.push_back(std::move(r));
    }
  } else {
    lists_ok = false;
  }

  if (const Json* arr = dec.array_field(doc, "units", true)) {
    for (std::size_t h = 0; h < arr->size(); ++h) {
      const Json& item = (*arr)[h];
      const std::string path = at("/units", h);
      if (!item.is_object()) {
        rep.add(IssueCode::kWrongType, path, "unit must be an object");
        lists_ok = false;
        continue;
      }
      ComputingUnit u;
      auto id = dec.string_field(item, "id", path, true);
      if (!id) lists_ok = false;
      u.id = id.value_or("");
      u.name = dec.string_field(item, "name", path, false).value_or(u.id);
      u.kind = dec.string_field(item, "kind", path, false).value_or("");
      data.units.push_back(std::move(u));
    }
  } else {
    lists_ok = false;
  }

  if (const Json* arr = dec.array_field(doc, "components", true)) {
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const Json& item = (*arr)[i];
      const std::string path = at("/components", i);
      if (!item.is_object()) {
        rep.add(IssueCode::kWrongType, path, "component must be an object");
        lists_ok = false;
        continue;
      }
      SoftwareComponent c;
      auto id = dec.string_field(item, "id", path, true);
      if (!id) lists_ok = false;
      c.id = id.value_or("");
      c.name = dec.string_field(item, "name", path, false).value_or(c.id);
      if (auto it = item.find("allowedUnits"); it != item.end()) {
        if (!it->is_array()) {
          rep.add(IssueCode::kWrongType, path + "/allowedUnits", "'allowedUnits' must be an array");
        } else {
          for (std::size_t r = 0; r < it->size(); ++r) {
            if (!(*it)[r].is_string()) {
              rep.add(IssueCode::kWrongType, at(path + "/allowedUnits", r), "unit reference must be a string");
              continue;
            }
            c.allowed_units.push_back((*it)[r].get<std::string>());
          }
        }
      }
      data.components.push_back(std::move(c));
    }
  } else {
    lists_ok = false;
  }

  const std::size_t n = data.components.size();
  const std::size_t m = data.units.size();
  const std::size_t l = data.resources.size();
  // An empty list would make every matrix look mis-sized; report the list instead.
  for (auto [name, size] : {std::pair{"resources", l}, {"units", m}, {"components", n}}) {
    if (lists_ok && size == 0) {
      rep.add(IssueCode::kEmptyList, std::string("/") + name, std::string("'") + name + "' must not be empty");
    }
  }
  if (n == 0 || m == 0 || l == 0) lists_ok = false;
  // Without trustworthy lists the matrix sizes are unknown; decode shapes only.
  auto size_if = [&](std::size_t v) -> std::optional<std::size_t> {
    return lists_ok ? std::optional<std::size_t>(v) : std::nullopt;
  };

  if (const Json* arr = dec.array_field(doc, "T", true); arr && lists_ok) {
    if (auto t = dec.tensor(*arr, n, m, l)) data.consumption = std::move(*t);
  }
  if (const Json* arr = dec.array_field(doc, "R", true)) {
    if (auto r = dec.matrix(*arr, "/R", size_if(m), size_if(l))) data.availability = std::move(*r);
  }
  if (const Json* arr = dec.array_field(doc, "K", true)) {
    if (auto k = dec.matrix(*arr, "/K", size_if(n), size_if(n))) data.intensity = std::move(*k);
  }
  if (const Json* arr = dec.array_field(doc, "C", true)) {
    if (auto c = dec.matrix(*arr, "/C", size_if(m), size_if(m))) data.comm_cost = std::move(*c);
  }
  if (const Json* arr = dec.array_field(doc, "B", true)) {
    if (auto b = dec.matrix(*arr, "/B", size_if(m), size_if(m))) data.bandwidth = std::move(*b);
  }
  if (auto it = doc.find("comparison"); it != doc.end() && !it->is_null()) {
    if (!it->is_array()) {
      rep.add(IssueCode::kWrongType, "/comparison", "'comparison' must be an array");
    } else if (auto cmp = dec.matrix(*it, "/comparison", std::nullopt, std::nullopt, true)) {
      data.comparison = std::move(*cmp);
    }
  }

  if (!rep.empty()) return rep.take();
  return data;
}

std::variant<ArchitectureModel, ValidationReport> validate_model(const Json& doc) {
  auto decoded = decode_document(doc);
  if (auto* report = std::get_if<ValidationReport>(&decoded)) return std::move(*report);
  return validate_model(std::move(std::get<ModelData>(decoded)));
}

Json parse_json(std::string_view bytes) {
  try {
    return Json::parse(bytes.begin(), bytes.end());
  } catch (const Json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte == 0 ? 0 : e.byte - 1, bytes.size());
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < upto; ++i) {
      if (bytes[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(e.what(), line, column);
  } catch (const Json::exception& e) {
    throw ParseError(e.what(), 0, 0);
  }
}

ArchitectureModel load_model(std::string_view bytes) {
  auto result = validate_model(parse_json(bytes));
  if (auto* report = std::get_if<ValidationReport>(&result)) throw InvalidModel(std::move(*report));
  return std::move(std::get<ArchitectureModel>(result));
}

ArchitectureModel load_model_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model(buf.str());
}

// ---------------------------------------------------------------------------
// Canonical serialization

namespace {

OrderedJson matrix_json(const Matrix& mat) {
  OrderedJson out = OrderedJson::array();
  for (std::size_t a = 0; a < mat.rows(); ++a) {
    OrderedJson row = OrderedJson::array();
    for (double x : mat.row(a)) row.push_back(x);
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

OrderedJson to_document(const ModelData& data) {
  OrderedJson doc = OrderedJson::object();

  OrderedJson resources = OrderedJson::array();
  for (const auto& r : data.resources) {
    resources.push_back({{"id", r.id}, {"name", r.name}, {"unit", r.unit}});
  }
  doc["resources"] = std::move(resources);

  OrderedJson units = OrderedJson::array();
  for (const auto& u : data.units) {
    units.push_back({{"id", u.id}, {"name", u.name}, {"kind", u.kind}});
  }
  doc["units"] = std::move(units);

  OrderedJson components = OrderedJson::array();
  for (const auto& c : data.components) {
    OrderedJson item = OrderedJson::object();
    item["id"] = c.id;
    item["name"] = c.name;
    item["allowedUnits"] = c.allowed_units;
    components.push_back(std::move(item));
  }
  doc["components"] = std::move(components);

  const Tensor3& t = data.consumption;
  OrderedJson tj = OrderedJson::array();
  for (std::size_t i = 0; i < t.dim0(); ++i) {
    OrderedJson slab = OrderedJson::array();
    for (std::size_t h = 0; h < t.dim1(); ++h) {
      auto fiber = t.fiber(i, h);
      slab.push_back(OrderedJson(std::vector<double>(fiber.begin(), fiber.end())));
    }
    tj.push_back(std::move(slab));
  }
  doc["T"] = std::move(tj);
  doc["R"] = matrix_json(data.availability);
  doc["K"] = matrix_json(data.intensity);
  doc["C"] = matrix_json(data.comm_cost);
  doc["B"] = matrix_json(data.bandwidth);
  if (data.comparison) doc["comparison"] = matrix_json(*data.comparison);
  return doc;
}

std::string save_model(const ArchitectureModel& model) {
  return to_document(model.data()).dump(2) + "\n";
}

Allocation allocation_from_ids(const ArchitectureModel& model, const std::vector<std::string>& ids) {
  if (ids.size() != model.num_components()) {
    throw std::invalid_argument("allocation has " + std::to_string(ids.size()) +
                                " entries, model has " + std::to_string(model.num_components()) +
                                " components");
  }
  Allocation p(ids.size());
  for (std::size_t i = 0; i < ids.size(); ++i) {
    auto h = model.unit_index(ids[i]);
    if (!h) throw std::invalid_argument("unknown unit id '" + ids[i] + "'");
    p[i] = *h;
  }
  return p;
}

std::vector<std::string> allocation_to_ids(const ArchitectureModel& model, const Allocation& p) {
  std::vector<std::string> out;
  out.reserve(p.size());
  for (UnitIndex h : p) out.push_back(model.data().units.at(h).id);
  return out;
}

}  // namespace scall
