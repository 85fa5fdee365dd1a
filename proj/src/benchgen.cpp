#include "scall/benchgen.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "scall/ahp.hpp"
#include "scall/rng.hpp"

namespace scall {

void BenchSpec::validate() const {
  for (const IntRange* r : {&n, &m, &l}) {
    if (r->lo < 1 || r->lo > r->hi) throw std::invalid_argument("ranges must satisfy 1 <= lo <= hi");
  }
  if (instances < 1) throw std::invalid_argument("instances must be at least 1");
  if (!(density >= 0.0 && density <= 1.0)) throw std::invalid_argument("density must be in [0, 1]");
  if (!(tightness > 0.0) || !std::isfinite(tightness)) {
    throw std::invalid_argument("tightness must be positive");
  }
}

namespace {

std::size_t pick(Rng& rng, const IntRange& r) {
  return r.lo + static_cast<std::size_t>(rng.below(r.hi - r.lo + 1));
}

}  // namespace

ArchitectureModel generate_model(const BenchSpec& spec, std::size_t index) {
  spec.validate();
  Rng rng(derive_seed(spec.seed, index));
  const std::size_t n = pick(rng, spec.n);
  const std::size_t m = pick(rng, spec.m);
  const std::size_t l = pick(rng, spec.l);

  ModelData d;
  for (std::size_t k = 0; k < l; ++k) {
    d.resources.push_back({"r" + std::to_string(k + 1), "resource " + std::to_string(k + 1), "u"});
  }
  for (std::size_t h = 0; h < m; ++h) {
    d.units.push_back({"h" + std::to_string(h + 1), "unit " + std::to_string(h + 1), "generic"});
  }
  for (std::size_t i = 0; i < n; ++i) {
    d.components.push_back({"s" + std::to_string(i + 1), "component " + std::to_string(i + 1), {}});
  }

  d.consumption = Tensor3(n, m, l);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t h = 0; h < m; ++h)
      for (std::size_t k = 0; k < l; ++k) d.consumption(i, h, k) = rng.uniform(1.0, 10.0);

  d.intensity = Matrix::square(n);
  double total_intensity = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!rng.chance(spec.density)) continue;
      const double k = rng.uniform(1.0, 5.0);
      d.intensity(i, j) = d.intensity(j, i) = k;
      total_intensity += k;
    }
  }

  d.comm_cost = Matrix::square(m);
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t h = g + 1; h < m; ++h) d.comm_cost(g, h) = d.comm_cost(h, g) = rng.uniform(1.0, 3.0);
  }

  d.availability = Matrix(m, l);
  for (std::size_t k = 0; k < l; ++k) {
    double demand = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double across_units = 0.0;
      for (std::size_t h = 0; h < m; ++h) across_units += d.consumption(i, h, k);
      demand += across_units / static_cast<double>(m);
    }
    const double budget = spec.tightness * demand / static_cast<double>(m);
    for (std::size_t h = 0; h < m; ++h) d.availability(h, k) = budget;
  }

  d.bandwidth = Matrix::square(m);
  const double md = static_cast<double>(m);
  const double link_budget = spec.tightness * total_intensity * 2.0 * (md - 1.0) / (md * md);
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t h = g + 1; h < m; ++h) d.bandwidth(g, h) = d.bandwidth(h, g) = link_budget;
  }

  auto result = validate_model(std::move(d));
  if (auto* report = std::get_if<ValidationReport>(&result)) throw InvalidModel(std::move(*report));
  return std::move(std::get<ArchitectureModel>(result));
}

GapStats run_benchmark(const BenchSpec& spec, const GAConfig& ga, const SearchLimits& limits,
                       const std::optional<Matrix>& comparison) {
  spec.validate();
  ga.validate();
  using Clock = std::chrono::steady_clock;

  GapStats stats;
  double gap_sum = 0.0;
  double t_ga_sum = 0.0;
  for (std::size_t r = 0; r < spec.instances; ++r) {
    const ArchitectureModel model = generate_model(spec, r);
    const TradeoffVector F = comparison
                                 ? derive_tradeoff(PairwiseComparisonMatrix(*comparison))
                                 : TradeoffVector::uniform(model.num_resources());

    InstanceRecord rec;
    rec.index = r;
    rec.n = model.num_components();
    rec.m = model.num_units();
    rec.l = model.num_resources();
    rec.space = model.search_space_size();

    bool oracle_infeasible = false;
    if (rec.space <= limits.exhaustive_cap) {
      const auto t0 = Clock::now();
      try {
        rec.w_opt = exhaustive_search(model, F, 1, limits).best_result.w;
      } catch (const SearchError& e) {
        if (e.code() != SearchErrc::kNoFeasibleAllocation) throw;
        oracle_infeasible = true;
      }
      rec.t_opt_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    }

    GAConfig run_cfg = ga;
    run_cfg.seed = derive_seed(ga.seed, r);
    const auto t0 = Clock::now();
    try {
      rec.w_ga = ga_search(model, F, run_cfg, 1, limits).best_result.w;
    } catch (const SearchError& e) {
      if (e.code() != SearchErrc::kNoFeasibleAllocation) throw;
    }
    rec.t_ga_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    t_ga_sum += rec.t_ga_ms;

    if (oracle_infeasible) {
      rec.status = "infeasible";
    } else if (!rec.w_ga) {
      rec.status = "ga_infeasible";
    } else if (!rec.w_opt) {
      rec.status = "skipped_exhaustive";
    } else {
      rec.status = "ok";
      const double gap = *rec.w_opt > 0.0 ? (*rec.w_ga - *rec.w_opt) / *rec.w_opt
                                          : (*rec.w_ga > 0.0 ? 1.0 : 0.0);
      rec.gap = gap;
      gap_sum += gap;
      stats.max_gap = std::max(stats.max_gap, gap);
      ++stats.with_gap;
      if (gap <= 1e-12) ++stats.optimal_hits;
    }
    stats.per_instance.push_back(std::move(rec));
  }
  if (stats.with_gap > 0) stats.mean_gap = gap_sum / static_cast<double>(stats.with_gap);
  stats.mean_t_ga_ms = t_ga_sum / static_cast<double>(spec.instances);
  return stats;
}

namespace {

template <typename T>
void field(std::ostream& out, const std::optional<T>& v) {
  if (v) out << *v;
}

}  // namespace

void write_csv(const GapStats& stats, std::ostream& out) {
  const auto old_precision = out.precision(17);
  out << kBenchCsvHeader << '\n';
  for (const auto& r : stats.per_instance) {
    out << r.index << ',' << r.n << ',' << r.m << ',' << r.l << ',' << r.space << ',';
    field(out, r.w_opt);
    out << ',';
    field(out, r.w_ga);
    out << ',';
    field(out, r.gap);
    out << ',';
    field(out, r.t_opt_ms);
    out << ',' << r.t_ga_ms << '\n';
  }
  out.precision(old_precision);
}

OrderedJson summary_json(const GapStats& stats) {
  std::size_t infeasible = 0;
  std::size_t ga_infeasible = 0;
  std::size_t skipped = 0;
  for (const auto& r : stats.per_instance) {
    if (r.status == "infeasible") ++infeasible;
    if (r.status == "ga_infeasible") ++ga_infeasible;
    if (r.status == "skipped_exhaustive") ++skipped;
  }
  OrderedJson out = OrderedJson::object();
  out["instances"] = stats.per_instance.size();
  out["withGap"] = stats.with_gap;
  out["optimalHits"] = stats.optimal_hits;
  out["optimalRate"] = stats.with_gap ? static_cast<double>(stats.optimal_hits) /
                                            static_cast<double>(stats.with_gap)
                                      : 0.0;
  out["meanGap"] = stats.mean_gap;
  out["maxGap"] = stats.max_gap;
  out["meanTGaMs"] = stats.mean_t_ga_ms;
  out["infeasible"] = infeasible;
  out["gaInfeasible"] = ga_infeasible;
  out["skippedExhaustive"] = skipped;
  return out;
}

}  // namespace scall
