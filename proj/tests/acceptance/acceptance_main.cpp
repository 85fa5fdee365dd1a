// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scall/benchgen.hpp"
#include "scall/report_json.hpp"
#include "scall/search.hpp"
#include "support/fixtures.hpp"
#include "support/oracle.hpp"
#include "support/random_models.hpp"

using namespace scall;
using namespace scall::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool rel_close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Outcome ga_matches_exhaustive() {
  const auto t0 = Clock::now();
  const BenchSpec spec;  // n 3..7, m 3..5, l 2..3, 30 instances
  const GapStats stats = run_benchmark(spec, GAConfig{});
  const double elapsed = seconds_since(t0);

  // The exhaustive optimum itself is checked against the brute-force oracle.
  std::size_t oracle_mismatch = 0;
  for (const auto& rec : stats.per_instance) {
    const auto model = generate_model(spec, rec.index);
    const auto F = TradeoffVector::uniform(model.num_resources());
    const auto o = oracle_argmin(model.data(), F.f, F.fc);
    if (o.has_value() != rec.w_opt.has_value() || (o && !rel_close(o->w, *rec.w_opt, 1e-12))) ++oracle_mismatch;
  }

  const double hit_rate =
      stats.with_gap ? static_cast<double>(stats.optimal_hits) / static_cast<double>(stats.with_gap) : 0.0;
  Outcome out;
  out.pass = stats.with_gap > 0 && hit_rate >= 0.8 && stats.max_gap <= 0.13 && stats.mean_gap <= 0.05 &&
             elapsed < 120.0 && oracle_mismatch == 0;
  out.detail = fmt("%zu/%zu optimal (%.1f%%), max gap %.4f, mean gap %.4f, %zu without a feasible optimum, "
                   "oracle mismatches %zu, %.2f s",
                   stats.optimal_hits, stats.with_gap, 100.0 * hit_rate, stats.max_gap, stats.mean_gap,
                   stats.per_instance.size() - stats.with_gap, oracle_mismatch, elapsed);
  return out;
}

Outcome ga_large_instance_time() {
  BenchSpec spec;
  spec.n = {10, 10};
  spec.m = {15, 15};
  const auto model = generate_model(spec, 0);
  const auto F = TradeoffVector::uniform(model.num_resources());
  const auto t0 = Clock::now();
  std::string result;
  try {
    const auto r = ga_search(model, F, GAConfig{});
    result = fmt("w %.6g after %zu generations", r.best_result.w, r.generations);
  } catch (const SearchError& e) {
    result = std::string(search_errc_name(e.code()));
  }
  const double elapsed = seconds_since(t0);
  return {elapsed <= 5.0, fmt("n=10 m=15, %s, %.3f s", result.c_str(), elapsed)};
}

Outcome auv_exhaustive() {
  const auto model = auv_model();
  const auto F = derive_tradeoff(PairwiseComparisonMatrix(*model.comparison()));
  const auto t0 = Clock::now();
  const auto r = exhaustive_search(model, F);
  const double elapsed = seconds_since(t0);

  const auto o = oracle_argmin(model.data(), F.f, F.fc);
  const bool same = o && to_indices(r.best) == o->p && rel_close(r.best_result.w, o->w, 1e-12);
  return {same && r.evaluated == 177147 && o->visited == 177147 && elapsed <= 30.0,
          fmt("%llu allocations in %.3f s, w %.13g, oracle w %.13g, same allocation: %s",
              static_cast<unsigned long long>(r.evaluated), elapsed, r.best_result.w, o ? o->w : -1.0,
              same ? "yes" : "no")};
}

Outcome e1_values() {
  const auto model = e1_model();
  const TradeoffVector F{{0.5}, 0.5};
  const double expected[4] = {2.5, 2.5, 4.5, 2.5};
  const Allocation ps[4] = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  Outcome out;
  std::ostringstream d;
  for (int a = 0; a < 4; ++a) {
    const auto r = evaluate(model, F, ps[a]);
    out.pass = out.pass && std::abs(r.w - expected[a]) <= 1e-12 && r.feasible;
    d << r.w << " ";
  }
  const auto tight_r = e1_with([](Json& j) { j["R"][0][0] = 4; });
  const auto rr = evaluate(tight_r, F, Allocation{0, 0});
  const auto tight_b = e1_with([](Json& j) { j["B"][0][1] = j["B"][1][0] = 1; });
  const auto rb = evaluate(tight_b, F, Allocation{0, 1});
  out.pass = out.pass && rr.rho == 0 && rr.w == 0.0 && rb.kappa == 0 && rb.w == 0.0;
  d << "| rho case rho=" << rr.rho << " w=" << rr.w << " | kappa case kappa=" << rb.kappa << " w=" << rb.w;
  out.detail = d.str();
  return out;
}

Outcome feasibility_fuzz() {
  std::mt19937_64 g(20240601);
  RandomShape s;
  s.n_hi = 7;
  s.m_hi = 5;
  s.constrain_p = 0.4;
  s.budget_scale = 1.5;
  std::size_t returned = 0, no_feasible = 0, missed = 0, bad = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto model = must_validate(random_model_data(g, s));
    const auto w = random_weights(g, model.num_resources() + 1);
    const TradeoffVector F{{w.begin(), w.end() - 1}, w.back()};
    GAConfig cfg;
    cfg.seed = g();
    try {
      const auto r = ga_search(model, F, cfg);
      ++returned;
      const auto check = evaluate(model, F, r.best);
      const auto o = oracle_cost(model.data(), F.f, F.fc, to_indices(r.best));
      if (!(check.rho == 1 && check.kappa == 1 && model.respects_constraints(r.best) && o.feasible)) ++bad;
    } catch (const SearchError& e) {
      if (e.code() != SearchErrc::kNoFeasibleAllocation) ++bad;
      else if (oracle_argmin(model.data(), F.f, F.fc)) ++missed;
      ++no_feasible;
    }
  }
  // A GA run that reports nothing feasible on a feasible model is a miss, not a
  // constraint violation; it is listed for information.
  return {bad == 0, fmt("1000 pairs, %zu returned a best, %zu reported no feasible allocation (%zu of them "
                        "feasible by brute force), %zu violations",
                        returned, no_feasible, missed, bad)};
}

Outcome ahp_checks() {
  Matrix cons(3, 3);
  const double vals[3][3] = {{1, 2, 4}, {0.5, 1, 2}, {0.25, 0.5, 1}};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) cons(a, b) = vals[a][b];
  const auto a = analyze_comparison(PairwiseComparisonMatrix(cons));
  const double expect[3] = {4.0 / 7, 2.0 / 7, 1.0 / 7};
  bool ok = std::abs(a.eigen.lambda_max - 3.0) <= 1e-9 && a.cr < 1e-9;
  double sum_a = 0.0;
  for (int k = 0; k < 3; ++k) {
    ok = ok && std::abs(a.eigen.weights[k] - expect[k]) <= 1e-9;
    sum_a += a.eigen.weights[k];
  }

  Matrix cyc(3, 3);
  const double cv[3][3] = {{1, 9, 1.0 / 9}, {1.0 / 9, 1, 9}, {9, 1.0 / 9, 1}};
  for (int x = 0; x < 3; ++x)
    for (int y = 0; y < 3; ++y) cyc(x, y) = cv[x][y];
  double cr_cycle = 0.0;
  bool rejected = false;
  try {
    (void)derive_tradeoff(PairwiseComparisonMatrix(cyc));
  } catch (const AhpError& e) {
    rejected = e.code() == AhpErrc::kInconsistent && e.consistency_ratio() >= 0.1;
    cr_cycle = e.consistency_ratio();
  }
  const auto c = analyze_comparison(PairwiseComparisonMatrix(cyc));
  double sum_c = 0.0;
  for (double x : c.eigen.weights) sum_c += x;
  const auto auv = auv_model();
  const auto fa = derive_tradeoff(PairwiseComparisonMatrix(*auv.comparison()));

  ok = ok && rejected && std::abs(sum_a - 1) <= 1e-9 && std::abs(sum_c - 1) <= 1e-9 && std::abs(fa.sum() - 1) <= 1e-9;
  return {ok, fmt("lambda %.12f, CR %.3g, w (%.12f %.12f %.12f), cycle CR %.4f %s", a.eigen.lambda_max, a.cr,
                  a.eigen.weights[0], a.eigen.weights[1], a.eigen.weights[2], cr_cycle,
                  rejected ? "rejected" : "accepted")};
}

Outcome scaling_invariance() {
  std::mt19937_64 g(777);
  RandomShape s;
  s.n_hi = 6;
  s.m_hi = 4;
  s.budget_scale = 1.5;
  std::uniform_real_distribution<double> jitter(0.0, 1.0);
  int instances = 0, draws = 0, failures = 0;
  while (instances < 100 && draws < 10000) {
    ++draws;
    ModelData d = random_model_data(g, s);
    for (double& v : d.consumption.values()) v += jitter(g);
    const auto model = must_validate(d);
    const auto w = random_weights(g, model.num_resources() + 1);
    const TradeoffVector F{{w.begin(), w.end() - 1}, w.back()};
    SearchReport base;
    try {
      base = exhaustive_search(model, F);
    } catch (const SearchError&) {
      continue;
    }
    ++instances;
    for (double alpha : {0.5, 2.0, 10.0}) {
      const auto r = exhaustive_search(model, F.scaled(alpha));
      const bool same_p = r.best == base.best;
      const bool scaled_w = base.best_result.w == 0.0 ? r.best_result.w == 0.0
                                                      : rel_close(r.best_result.w, alpha * base.best_result.w, 1e-12);
      if (!same_p || !scaled_w) ++failures;
    }
  }
  return {instances == 100 && failures == 0,
          fmt("%d feasible instances x 3 factors, %d mismatches", instances, failures)};
}

Outcome determinism() {
  std::vector<std::pair<ArchitectureModel, TradeoffVector>> cases;
  {
    auto m = auv_model();
    auto F = derive_tradeoff(PairwiseComparisonMatrix(*m.comparison()));
    cases.emplace_back(std::move(m), std::move(F));
  }
  BenchSpec spec;
  for (std::size_t i = 0; i < 5; ++i) {
    auto m = generate_model(spec, i);
    auto F = TradeoffVector::uniform(m.num_resources());
    cases.emplace_back(std::move(m), std::move(F));
  }
  int identical = 0, total = 0;
  for (const auto& [model, F] : cases) {
    for (std::uint64_t seed : {0ull, 42ull, 987654321ull}) {
      GAConfig cfg;
      cfg.seed = seed;
      std::string a, b;
      try {
        a = search_report_to_json(model, ga_search(model, F, cfg, 3), false).dump();
        b = search_report_to_json(model, ga_search(model, F, cfg, 3), false).dump();
      } catch (const SearchError& e) {
        a = b = std::string(search_errc_name(e.code()));
      }
      ++total;
      if (a == b) ++identical;
    }
  }
  return {identical == total, fmt("%d/%d seeded run pairs byte-identical", identical, total)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"ga-vs-exhaustive", ga_matches_exhaustive},
      {"ga-timing-n10-m15", ga_large_instance_time},
      {"exhaustive-auv", auv_exhaustive},
      {"evaluator-e1", e1_values},
      {"feasibility-fuzz", feasibility_fuzz},
      {"ahp", ahp_checks},
      {"scaling-invariance", scaling_invariance},
      {"determinism", determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s  %-20s %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%zu criteria, %d failed\n", criteria.size(), failed);
  return failed == 0 ? 0 : 1;
}
