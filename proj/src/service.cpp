#include "scall/service.hpp"

#include <iostream>

#include "httplib.h"
#include "scall/model.hpp"
#include "scall/report_json.hpp"

namespace scall {

namespace {

HttpResponse error(int status, std::string_view code, std::string_view message,
                   OrderedJson detail = nullptr) {
  OrderedJson body = OrderedJson::object();
  body["error"] = code;
  body["message"] = message;
  if (!detail.is_null()) body["detail"] = std::move(detail);
  return {status, body.dump()};
}

HttpResponse ok(const OrderedJson& body) { return {200, body.dump()}; }

std::optional<Json> parse_body(std::string_view body, HttpResponse& failure) {
  try {
    return parse_json(body);
  } catch (const ParseError& e) {
    OrderedJson detail = {{"line", e.line()}, {"column", e.column()}};
    failure = error(400, "MALFORMED_BODY", e.what(), std::move(detail));
    return std::nullopt;
  }
}

OrderedJson to_ordered(const Json& j) { return OrderedJson::parse(j.dump()); }

}  // namespace

HttpResponse AllocationService::validate(std::string_view body) const {
  HttpResponse failure;
  auto doc = parse_body(body, failure);
  if (!doc) return failure;

  auto result = validate_model(*doc);
  OrderedJson out = OrderedJson::object();
  if (auto* report = std::get_if<ValidationReport>(&result)) {
    out["valid"] = false;
    out["report"] = to_ordered(report_to_json(*report));
  } else {
    const auto& model = std::get<ArchitectureModel>(result);
    out["valid"] = true;
    out["report"] = OrderedJson::array();
    out["components"] = model.num_components();
    out["units"] = model.num_units();
    out["resources"] = model.num_resources();
  }
  return ok(out);
}

HttpResponse AllocationService::ahp(std::string_view body) const {
  HttpResponse failure;
  auto doc = parse_body(body, failure);
  if (!doc) return failure;
  if (!doc->is_object() || !doc->contains("comparison") || !(*doc)["comparison"].is_array()) {
    return error(400, "MALFORMED_BODY", "body must be an object with a 'comparison' matrix");
  }

  const Json& rows = (*doc)["comparison"];
  Matrix m(rows.size(), rows.size());
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (!rows[a].is_array() || rows[a].size() != rows.size()) {
      return error(400, "INVALID_COMPARISON", "comparison matrix must be square");
    }
    for (std::size_t b = 0; b < rows.size(); ++b) {
      auto v = parse_ratio(rows[a][b]);
      if (!v) return error(400, "INVALID_COMPARISON", "comparison entries must be numbers or fractions");
      m(a, b) = *v;
    }
  }

  AhpOptions opts = config_.ahp;
  if (auto it = doc->find("threshold"); it != doc->end() && it->is_number()) {
    opts.cr_threshold = it->get<double>();
  }

  try {
    const PairwiseComparisonMatrix pcm(std::move(m));
    const AhpAnalysis a = analyze_comparison(pcm, opts);
    OrderedJson out = OrderedJson::object();
    out["weights"] = a.eigen.weights;
    out["fc"] = a.tradeoff.fc;
    out["lambdaMax"] = a.eigen.lambda_max;
    out["cr"] = a.cr;
    if (!a.consistent) {
      OrderedJson body_json = OrderedJson::object();
      body_json["error"] = "INCONSISTENT_COMPARISON";
      body_json["message"] = "inconsistent judgments, revise the pairwise comparisons";
      body_json["cr"] = a.cr;
      body_json["detail"] = std::move(out);
      return {422, body_json.dump()};
    }
    return ok(out);
  } catch (const AhpError& e) {
    return error(400, e.code() == AhpErrc::kUnsupportedOrder ? "UNSUPPORTED_ORDER" : "INVALID_COMPARISON",
                 e.what());
  }
}

HttpResponse AllocationService::allocate(std::string_view body) const {
  HttpResponse failure;
  auto doc = parse_body(body, failure);
  if (!doc) return failure;
  if (!doc->is_object() || !doc->contains("model")) {
    return error(400, "MALFORMED_BODY", "body must be an object with a 'model' document");
  }

  std::string method = "ga";
  std::uint64_t seed = config_.ga_defaults.seed;
  std::optional<std::size_t> alternatives_count;
  bool uniform = false;
  GAConfig cfg = config_.ga_defaults;
  try {
    if (auto it = doc->find("method"); it != doc->end()) method = it->get<std::string>();
    if (method != "ga" && method != "exhaustive") {
      return error(400, "BAD_REQUEST", "method must be \"ga\" or \"exhaustive\"");
    }
    if (auto it = doc->find("seed"); it != doc->end() && !it->is_null()) {
      if (!it->is_number_integer()) return error(400, "BAD_REQUEST", "seed must be an unsigned integer");
      seed = it->get<std::uint64_t>();
    }
    if (auto it = doc->find("alternatives"); it != doc->end() && !it->is_null()) {
      if (!it->is_number_integer() || it->get<std::int64_t>() < 1) {
        return error(400, "BAD_REQUEST", "alternatives must be a positive integer");
      }
      alternatives_count = it->get<std::size_t>();
    }
    if (auto it = doc->find("uniformWeights"); it != doc->end()) uniform = it->get<bool>();
    if (auto it = doc->find("gaConfig"); it != doc->end()) cfg = ga_config_from_json(*it, cfg);
    cfg.seed = seed;
    cfg.validate();
  } catch (const std::exception& e) {
    return error(400, "BAD_REQUEST", e.what());
  }

  auto validated = validate_model((*doc)["model"]);
  if (auto* report = std::get_if<ValidationReport>(&validated)) {
    return error(422, "INVALID_MODEL", "model failed validation", to_ordered(report_to_json(*report)));
  }
  const auto& model = std::get<ArchitectureModel>(validated);

  TradeoffVector F;
  if (uniform) {
    F = TradeoffVector::uniform(model.num_resources());
  } else if (!model.comparison()) {
    return error(422, "MISSING_COMPARISON",
                 "model has no 'comparison' matrix; supply one or set uniformWeights");
  } else {
    try {
      F = derive_tradeoff(PairwiseComparisonMatrix(*model.comparison()), config_.ahp);
    } catch (const AhpError& e) {
      OrderedJson detail = OrderedJson::object();
      detail["cr"] = e.consistency_ratio();
      return error(422, e.code() == AhpErrc::kInconsistent ? "INCONSISTENT_COMPARISON" : "INVALID_COMPARISON",
                   e.what(), std::move(detail));
    }
  }

  SearchLimits limits;
  limits.exhaustive_cap = config_.exhaustive_cap;
  limits.deadline = std::chrono::steady_clock::now() + config_.request_timeout;

  try {
    SearchReport report;
    if (method == "exhaustive") {
      report = exhaustive_search(model, F, alternatives_count.value_or(1), limits);
      report.seed = seed;
    } else if (alternatives_count) {
      report = merge_alternatives(alternatives(model, F, *alternatives_count, cfg, limits), seed);
    } else {
      report = ga_search(model, F, cfg, 1, limits);
    }
    OrderedJson out = search_report_to_json(model, report);
    out["tradeoff"] = tradeoff_to_json(F);
    return ok(out);
  } catch (const SearchError& e) {
    switch (e.code()) {
      case SearchErrc::kSpaceTooLarge:
        return error(413, search_errc_name(e.code()), e.what());
      case SearchErrc::kTimeout:
        return error(504, search_errc_name(e.code()), e.what());
      case SearchErrc::kNoFeasibleAllocation: {
        OrderedJson detail = nullptr;
        if (e.best_infeasible()) detail = candidate_to_json(model, *e.best_infeasible());
        return error(409, search_errc_name(e.code()), e.what(), std::move(detail));
      }
    }
    return error(500, "INTERNAL", e.what());
  } catch (const std::exception& e) {
    return error(500, "INTERNAL", e.what());
  }
}

void mount_routes(httplib::Server& server, const AllocationService& service,
                  const std::optional<std::string>& static_dir) {
  server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});

  auto route = [&server, &service](const char* path, HttpResponse (AllocationService::*handler)(std::string_view) const) {
    server.Post(path, [&service, handler](const httplib::Request& req, httplib::Response& res) {
      const HttpResponse r = (service.*handler)(req.body);
      res.status = r.status;
      res.set_content(r.body, "application/json");
    });
  };
  route("/api/v1/validate", &AllocationService::validate);
  route("/api/v1/ahp", &AllocationService::ahp);
  route("/api/v1/allocate", &AllocationService::allocate);

  server.Get("/api/v1/health", [](const httplib::Request&, httplib::Response& res) {
    res.set_content(R"({"status":"ok"})", "application/json");
  });
  server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  if (static_dir) server.set_mount_point("/", *static_dir);
}

int serve(const ServiceConfig& config, const std::string& host, int port,
          const std::optional<std::string>& static_dir) {
  AllocationService service(config);
  httplib::Server server;
  mount_routes(server, service, static_dir);
  if (!server.bind_to_port(host, port)) {
    std::cerr << "scall: cannot bind " << host << ":" << port << "\n";
    return 1;
  }
  std::cerr << "scall: listening on http://" << host << ":" << port << "\n";
  return server.listen_after_bind() ? 0 : 1;
}

}  // namespace scall
