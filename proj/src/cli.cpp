#include "scall/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "scall/ahp.hpp"
#include "scall/benchgen.hpp"
#include "scall/model.hpp"
#include "scall/report_json.hpp"
#include "scall/search.hpp"
#include "scall/service.hpp"

namespace scall {

namespace {

struct CliOptions {
  std::string file;
  bool json = false;

  // weights
  double cr_threshold = 0.1;

  // allocate
  std::string method = "ga";
  std::uint64_t seed = 0;
  std::size_t alternatives = 0;
  bool uniform_weights = false;
  GAConfig ga;

  // bench
  std::string n_range = "3..7";
  std::string m_range = "3..5";
  std::string l_range = "2..3";
  std::size_t instances = 30;
  std::uint64_t bench_seed = 1;
  std::uint64_t ga_seed = 0;
  double density = 0.5;
  double tightness = 1.5;
  std::string csv_path;

  // serve
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir;
  long timeout_ms = 30'000;
};

// Reads the whole file; nullopt when it cannot be opened.
std::optional<std::string> slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

IntRange parse_range(const std::string& text) {
  auto to_size = [&](std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
      throw CLI::ValidationError("range", "expected A..B or A, got '" + text + "'");
    }
    return v;
  };
  const auto dots = text.find("..");
  if (dots == std::string::npos) {
    const std::size_t v = to_size(text);
    return {v, v};
  }
  return {to_size(std::string_view(text).substr(0, dots)), to_size(std::string_view(text).substr(dots + 2))};
}

void print_report(std::ostream& out, const ValidationReport& report) {
  for (const auto& issue : report) {
    out << "  " << issue_code_name(issue.code) << "  " << (issue.path.empty() ? "/" : issue.path) << "  "
        << issue.message << "\n";
  }
}

// Loads and validates a model file, reporting failures. Returns nullopt and
// sets `code` on failure.
std::optional<ArchitectureModel> read_model(const std::string& path, std::ostream& out, std::ostream& err,
                                            bool json, int& code) {
  auto bytes = slurp(path);
  if (!bytes) {
    err << "scall: cannot read '" << path << "'\n";
    code = kExitInputFailure;
    return std::nullopt;
  }
  Json doc;
  try {
    doc = parse_json(*bytes);
  } catch (const ParseError& e) {
    if (json) {
      out << OrderedJson{{"error", "PARSE_ERROR"}, {"line", e.line()}, {"column", e.column()}, {"message", e.what()}}.dump(2)
          << "\n";
    } else {
      err << "scall: " << path << ":" << e.line() << ":" << e.column() << ": parse error: " << e.what() << "\n";
    }
    code = kExitInputFailure;
    return std::nullopt;
  }
  auto result = validate_model(doc);
  if (auto* report = std::get_if<ValidationReport>(&result)) {
    if (json) {
      OrderedJson body = OrderedJson::object();
      body["valid"] = false;
      body["report"] = OrderedJson::parse(report_to_json(*report).dump());
      out << body.dump(2) << "\n";
    } else {
      out << path << ": invalid model (" << report->size() << " issue(s))\n";
      print_report(out, *report);
    }
    code = kExitDomainFailure;
    return std::nullopt;
  }
  return std::move(std::get<ArchitectureModel>(result));
}

int cmd_validate(const CliOptions& o, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  auto model = read_model(o.file, out, err, o.json, code);
  if (!model) return code;
  if (o.json) {
    OrderedJson body = OrderedJson::object();
    body["valid"] = true;
    body["report"] = OrderedJson::array();
    body["components"] = model->num_components();
    body["units"] = model->num_units();
    body["resources"] = model->num_resources();
    out << body.dump(2) << "\n";
  } else {
    out << o.file << ": valid (" << model->num_components() << " components, " << model->num_units()
        << " units, " << model->num_resources() << " resources)\n";
  }
  return kExitOk;
}

int cmd_weights(const CliOptions& o, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  auto model = read_model(o.file, out, err, o.json, code);
  if (!model) return code;
  if (!model->comparison()) {
    err << "scall: " << o.file << " has no \"comparison\" matrix.\n"
        << "  Add an (l+1)x(l+1) reciprocal matrix over the resources followed by communication,\n"
        << "  or run `scall allocate --uniform-weights`.\n";
    return kExitDomainFailure;
  }

  AhpOptions opts;
  opts.cr_threshold = o.cr_threshold;
  const AhpAnalysis a = analyze_comparison(PairwiseComparisonMatrix(*model->comparison()), opts);

  if (o.json) {
    OrderedJson body = OrderedJson::object();
    body["weights"] = a.eigen.weights;
    body["fc"] = a.tradeoff.fc;
    body["lambdaMax"] = a.eigen.lambda_max;
    body["cr"] = a.cr;
    body["consistent"] = a.consistent;
    out << body.dump(2) << "\n";
  } else {
    const auto& res = model->data().resources;
    out << std::setprecision(6);
    for (std::size_t k = 0; k < res.size(); ++k) {
      out << "  f[" << res[k].id << "] = " << a.tradeoff.f[k] << "\n";
    }
    out << "  fc = " << a.tradeoff.fc << "\n";
    out << "lambda_max = " << a.eigen.lambda_max << "\n";
    out << "CR = " << a.cr << (a.consistent ? "" : "  (inconsistent: revise the judgments)") << "\n";
  }
  return a.consistent ? kExitOk : kExitDomainFailure;
}

void print_candidate(std::ostream& out, const ArchitectureModel& model, const Candidate& c) {
  const auto& d = model.data();
  const EvaluationResult& r = c.result;
  out << "w = " << r.w << "   feasible: " << (r.feasible ? "yes" : "no") << " (rho=" << r.rho
      << ", kappa=" << r.kappa << ")\n\n";

  std::size_t width = 9;
  for (const auto& comp : d.components) width = std::max(width, comp.id.size());
  out << std::left << std::setw(static_cast<int>(width + 2)) << "component" << "unit\n";
  for (std::size_t i = 0; i < c.allocation.size(); ++i) {
    out << std::setw(static_cast<int>(width + 2)) << d.components[i].id << d.units[c.allocation[i]].id << "\n";
  }
  out << std::right << "\nresidual resources (R - load):\n  unit";
  for (const auto& res : d.resources) out << "  " << res.id << "[" << res.unit << "]";
  out << "\n";
  for (std::size_t h = 0; h < model.num_units(); ++h) {
    out << "  " << d.units[h].id;
    for (std::size_t k = 0; k < model.num_resources(); ++k) {
      out << "  " << model.availability(h, k) - r.unit_load(h, k);
    }
    out << "\n";
  }
  bool any_link = false;
  for (std::size_t g = 0; g < model.num_units(); ++g) {
    for (std::size_t h = g + 1; h < model.num_units(); ++h) {
      if (r.pair_traffic(g, h) == 0.0 && model.bandwidth(g, h) == 0.0) continue;
      if (!any_link) out << "link traffic / bandwidth:\n";
      any_link = true;
      out << "  " << d.units[g].id << "-" << d.units[h].id << "  " << r.pair_traffic(g, h) << " / "
          << model.bandwidth(g, h) << "\n";
    }
  }
}

int cmd_allocate(const CliOptions& o, std::ostream& out, std::ostream& err) {
  int code = kExitOk;
  auto model = read_model(o.file, out, err, o.json, code);
  if (!model) return code;

  TradeoffVector F;
  if (o.uniform_weights) {
    F = TradeoffVector::uniform(model->num_resources());
  } else if (!model->comparison()) {
    err << "scall: " << o.file << " has no \"comparison\" matrix; add one or pass --uniform-weights\n";
    return kExitDomainFailure;
  } else {
    try {
      F = derive_tradeoff(PairwiseComparisonMatrix(*model->comparison()));
    } catch (const AhpError& e) {
      err << "scall: " << e.what() << "\n";
      return kExitDomainFailure;
    }
  }

  SearchLimits limits;
  limits.exhaustive_cap = exhaustive_cap_from_env();
  GAConfig cfg = o.ga;
  cfg.seed = o.seed;

  SearchReport report;
  try {
    if (o.method == "exhaustive") {
      report = exhaustive_search(*model, F, std::max<std::size_t>(o.alternatives, 1), limits);
      report.seed = o.seed;
    } else if (o.alternatives > 0) {
      report = merge_alternatives(alternatives(*model, F, o.alternatives, cfg, limits), o.seed);
    } else {
      report = ga_search(*model, F, cfg, 1, limits);
    }
  } catch (const SearchError& e) {
    if (o.json) {
      OrderedJson body = OrderedJson::object();
      body["error"] = search_errc_name(e.code());
      body["message"] = e.what();
      if (e.best_infeasible()) body["detail"] = candidate_to_json(*model, *e.best_infeasible());
      out << body.dump(2) << "\n";
    } else {
      err << "scall: " << search_errc_name(e.code()) << ": " << e.what() << "\n";
      if (e.code() == SearchErrc::kSpaceTooLarge) {
        err << "  use --method ga, or raise SCALL_EXHAUSTIVE_CAP\n";
      }
    }
    return e.code() == SearchErrc::kSpaceTooLarge ? kExitInputFailure : kExitDomainFailure;
  } catch (const std::invalid_argument& e) {
    err << "scall: " << e.what() << "\n";
    return kExitInputFailure;
  }

  if (o.json) {
    out << search_report_to_json(*model, report).dump(2) << "\n";
    return kExitOk;
  }

  out << "method: " << method_name(report.method) << (report.exact ? " (exact)" : "") << "   evaluated: "
      << report.evaluated;
  if (report.method == SearchMethod::kGenetic) out << "   generations: " << report.generations << "   seed: " << report.seed;
  out << "\n";
  print_candidate(out, *model, Candidate{report.best, report.best_result});
  if (report.alternatives.size() > 1) {
    out << "\nalternatives (" << report.alternatives.size() << "):\n";
    for (std::size_t a = 0; a < report.alternatives.size(); ++a) {
      const auto& c = report.alternatives[a];
      out << "  #" << a + 1 << "  w = " << c.result.w << "  [";
      const auto ids = allocation_to_ids(*model, c.allocation);
      for (std::size_t i = 0; i < ids.size(); ++i) out << (i ? " " : "") << ids[i];
      out << "]\n";
    }
  }
  return kExitOk;
}

int cmd_bench(const CliOptions& o, std::ostream& out, std::ostream& err) {
  BenchSpec spec;
  try {
    spec.n = parse_range(o.n_range);
    spec.m = parse_range(o.m_range);
    spec.l = parse_range(o.l_range);
    spec.instances = o.instances;
    spec.seed = o.bench_seed;
    spec.density = o.density;
    spec.tightness = o.tightness;
    spec.validate();
  } catch (const std::exception& e) {
    err << "scall: " << e.what() << "\n";
    return kExitInputFailure;
  }
  GAConfig cfg = o.ga;
  cfg.seed = o.ga_seed;
  SearchLimits limits;
  limits.exhaustive_cap = exhaustive_cap_from_env();

  const GapStats stats = run_benchmark(spec, cfg, limits);
  if (!o.csv_path.empty()) {
    std::ofstream csv(o.csv_path);
    if (!csv) {
      err << "scall: cannot write '" << o.csv_path << "'\n";
      return kExitInputFailure;
    }
    write_csv(stats, csv);
  }
  out << summary_json(stats).dump(2) << "\n";
  return kExitOk;
}

int cmd_serve(const CliOptions& o, std::ostream&, std::ostream&) {
  ServiceConfig config;
  config.exhaustive_cap = exhaustive_cap_from_env();
  config.request_timeout = std::chrono::milliseconds(o.timeout_ms);
  config.ga_defaults = o.ga;
  return serve(config, o.host, o.port,
               o.static_dir.empty() ? std::nullopt : std::optional<std::string>(o.static_dir));
}

void add_ga_flags(CLI::App* cmd, CliOptions& o) {
  cmd->add_option("--population", o.ga.population_size, "GA population size")->capture_default_str();
  cmd->add_option("--generations", o.ga.generations, "GA generation cap")->capture_default_str();
  cmd->add_option("--stall-limit", o.ga.stall_limit, "stop after this many generations without improvement")
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliOptions o;
  CLI::App app{"scall: software component allocation on heterogeneous platforms", "scall"};
  app.require_subcommand(1);

  auto* validate = app.add_subcommand("validate", "check a model file");
  validate->add_option("file", o.file, "model JSON")->required();
  validate->add_flag("--json", o.json, "machine-readable output");

  auto* weights = app.add_subcommand("weights", "derive resource weights from the pairwise comparison");
  weights->add_option("file", o.file, "model JSON")->required();
  weights->add_option("--cr-threshold", o.cr_threshold, "largest acceptable consistency ratio")
      ->capture_default_str();
  weights->add_flag("--json", o.json, "machine-readable output");

  auto* allocate = app.add_subcommand("allocate", "find the best allocation");
  allocate->add_option("file", o.file, "model JSON")->required();
  allocate->add_option("--method", o.method, "search method")
      ->check(CLI::IsMember({"ga", "exhaustive"}))
      ->capture_default_str();
  allocate->add_option("--seed", o.seed, "GA seed")->capture_default_str();
  allocate->add_option("--alternatives", o.alternatives,
                       "GA: number of re-runs with derived seeds; exhaustive: number of best allocations");
  allocate->add_flag("--uniform-weights", o.uniform_weights, "skip AHP and weigh every criterion equally");
  allocate->add_flag("--json", o.json, "print the search report as JSON");
  add_ga_flags(allocate, o);

  auto* bench = app.add_subcommand("bench", "compare GA against exhaustive search on generated models");
  bench->add_option("--n", o.n_range, "component count range A..B")->capture_default_str();
  bench->add_option("--m", o.m_range, "unit count range A..B")->capture_default_str();
  bench->add_option("--l", o.l_range, "resource count range A..B")->capture_default_str();
  bench->add_option("--instances", o.instances, "number of generated models")->capture_default_str();
  bench->add_option("--seed", o.bench_seed, "generator seed")->capture_default_str();
  bench->add_option("--ga-seed", o.ga_seed, "base GA seed")->capture_default_str();
  bench->add_option("--density", o.density, "probability that two components communicate")->capture_default_str();
  bench->add_option("--tightness", o.tightness, "resource budget relative to demand")->capture_default_str();
  bench->add_option("--csv", o.csv_path, "write per-instance rows to this CSV file");
  add_ga_flags(bench, o);

  auto* serve_cmd = app.add_subcommand("serve", "run the HTTP service");
  serve_cmd->add_option("--host", o.host, "bind address")->capture_default_str();
  serve_cmd->add_option("--port", o.port, "listen port")->capture_default_str();
  serve_cmd->add_option("--static", o.static_dir, "directory served under /");
  serve_cmd->add_option("--timeout-ms", o.timeout_ms, "per-request search time limit")->capture_default_str();
  add_ga_flags(serve_cmd, o);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? kExitOk : kExitInputFailure;
  }

  try {
    if (*validate) return cmd_validate(o, out, err);
    if (*weights) return cmd_weights(o, out, err);
    if (*allocate) return cmd_allocate(o, out, err);
    if (*bench) return cmd_bench(o, out, err);
    if (*serve_cmd) return cmd_serve(o, out, err);
  } catch (const std::exception& e) {
    err << "scall: " << e.what() << "\n";
    return kExitInputFailure;
  }
  return kExitInputFailure;
}

}  // namespace scall
