#include "scall/report_json.hpp"

#include <stdexcept>

namespace scall {

std::string_view method_name(SearchMethod method) {
  return method == SearchMethod::kGenetic ? "ga" : "exhaustive";
}

namespace {

OrderedJson matrix_to_json(const Matrix& m) {
  OrderedJson out = OrderedJson::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    auto row = m.row(r);
    out.push_back(OrderedJson(std::vector<double>(row.begin(), row.end())));
  }
  return out;
}

Matrix matrix_from_json(const Json& doc, std::size_t rows, std::size_t cols, const char* what) {
  if (!doc.is_array() || doc.size() != rows) {
    throw std::invalid_argument(std::string(what) + " has the wrong shape");
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    if (!doc[r].is_array() || doc[r].size() != cols) {
      throw std::invalid_argument(std::string(what) + " has the wrong shape");
    }
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = doc[r][c].get<double>();
  }
  return m;
}

EvaluationResult evaluation_from_json(const ArchitectureModel& model, const Json& doc) {
  EvaluationResult r;
  r.w = doc.at("w").get<double>();
  r.rho = doc.at("rho").get<int>();
  r.kappa = doc.at("kappa").get<int>();
  r.constraints_ok = doc.at("constraintsOk").get<bool>();
  r.feasible = doc.at("feasible").get<bool>();
  r.violation = doc.at("violation").get<double>();
  r.unit_load = matrix_from_json(doc.at("unitLoad"), model.num_units(), model.num_resources(), "unitLoad");
  r.pair_traffic = matrix_from_json(doc.at("pairTraffic"), model.num_units(), model.num_units(), "pairTraffic");
  return r;
}

Candidate candidate_from_json(const ArchitectureModel& model, const Json& doc) {
  return Candidate{allocation_from_ids(model, doc.at("allocation").get<std::vector<std::string>>()),
                   evaluation_from_json(model, doc.at("result"))};
}

}  // namespace

OrderedJson evaluation_to_json(const ArchitectureModel& model, const EvaluationResult& r) {
  Matrix residual(model.num_units(), model.num_resources());
  for (std::size_t h = 0; h < model.num_units(); ++h) {
    for (std::size_t k = 0; k < model.num_resources(); ++k) {
      residual(h, k) = model.availability(h, k) - r.unit_load(h, k);
    }
  }
  OrderedJson out = OrderedJson::object();
  out["w"] = r.w;
  out["rho"] = r.rho;
  out["kappa"] = r.kappa;
  out["constraintsOk"] = r.constraints_ok;
  out["feasible"] = r.feasible;
  out["violation"] = r.violation;
  out["unitLoad"] = matrix_to_json(r.unit_load);
  out["pairTraffic"] = matrix_to_json(r.pair_traffic);
  out["residual"] = matrix_to_json(residual);
  return out;
}

OrderedJson candidate_to_json(const ArchitectureModel& model, const Candidate& c) {
  OrderedJson out = OrderedJson::object();
  out["allocation"] = allocation_to_ids(model, c.allocation);
  out["result"] = evaluation_to_json(model, c.result);
  return out;
}

OrderedJson search_report_to_json(const ArchitectureModel& model, const SearchReport& report,
                                  bool include_timing) {
  OrderedJson out = OrderedJson::object();
  out["method"] = method_name(report.method);
  out["exact"] = report.exact;
  out["seed"] = report.seed;
  out["evaluated"] = report.evaluated;
  out["generations"] = report.generations;
  out["best"] = candidate_to_json(model, Candidate{report.best, report.best_result});
  OrderedJson alts = OrderedJson::array();
  for (const auto& c : report.alternatives) alts.push_back(candidate_to_json(model, c));
  out["alternatives"] = std::move(alts);
  if (include_timing) out["elapsedMs"] = report.elapsed_ms;
  return out;
}

SearchReport search_report_from_json(const ArchitectureModel& model, const Json& doc) {
  SearchReport report;
  const auto method = doc.at("method").get<std::string>();
  if (method == "ga") {
    report.method = SearchMethod::kGenetic;
  } else if (method == "exhaustive") {
    report.method = SearchMethod::kExhaustive;
  } else {
    throw std::invalid_argument("unknown method '" + method + "'");
  }
  report.exact = doc.at("exact").get<bool>();
  report.seed = doc.at("seed").get<std::uint64_t>();
  report.evaluated = doc.at("evaluated").get<std::uint64_t>();
  report.generations = doc.at("generations").get<std::size_t>();
  const Candidate best = candidate_from_json(model, doc.at("best"));
  report.best = best.allocation;
  report.best_result = best.result;
  for (const auto& c : doc.at("alternatives")) report.alternatives.push_back(candidate_from_json(model, c));
  if (auto it = doc.find("elapsedMs"); it != doc.end()) report.elapsed_ms = it->get<double>();
  return report;
}

OrderedJson tradeoff_to_json(const TradeoffVector& F) {
  OrderedJson out = OrderedJson::object();
  out["f"] = F.f;
  out["fc"] = F.fc;
  return out;
}

GAConfig ga_config_from_json(const Json& doc, GAConfig cfg) {
  if (doc.is_null()) return cfg;
  if (!doc.is_object()) throw std::invalid_argument("gaConfig must be an object");

  auto count = [](const Json& v, const std::string& key) -> std::size_t {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) {
      throw std::invalid_argument(key + " must be a non-negative integer");
    }
    return v.get<std::size_t>();
  };
  auto real = [](const Json& v, const std::string& key) -> double {
    if (!v.is_number()) throw std::invalid_argument(key + " must be a number");
    return v.get<double>();
  };

  for (const auto& [key, value] : doc.items()) {
    if (key == "populationSize") {
      cfg.population_size = count(value, key);
    } else if (key == "generations") {
      cfg.generations = count(value, key);
    } else if (key == "tournamentSize") {
      cfg.tournament_size = count(value, key);
    } else if (key == "crossoverRate") {
      cfg.crossover_rate = real(value, key);
    } else if (key == "mutationRate") {
      if (value.is_null()) {
        cfg.mutation_rate.reset();
      } else {
        cfg.mutation_rate = real(value, key);
      }
    } else if (key == "elitism") {
      cfg.elitism = count(value, key);
    } else if (key == "stallLimit") {
      cfg.stall_limit = count(value, key);
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !value.is_number_integer()) {
        throw std::invalid_argument("seed must be an unsigned integer");
      }
      cfg.seed = value.get<std::uint64_t>();
    } else {
      throw std::invalid_argument("unknown gaConfig key '" + key + "'");
    }
  }
  return cfg;
}

}  // namespace scall
