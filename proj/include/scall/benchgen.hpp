#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "scall/model.hpp"
#include "scall/search.hpp"

namespace scall {

struct IntRange {
  std::size_t lo = 1;
  std::size_t hi = 1;
};

// Recipe for random architecture models.
//   T  ~ U[1, 10]
//   K  ~ U[1, 5] for each component pair with probability `density`, else 0
//   C  ~ U[1, 3] off the diagonal
//   R[h][k] = tightness * (sum_i mean_h T[i][h][k]) / m
//   B[g][h] = tightness * (sum_{i<j} K[i][j]) * 2 (m - 1) / m^2, the expected
//             traffic in or out of one unit under uniform random placement
struct BenchSpec {
  IntRange n{3, 7};
  IntRange m{3, 5};
  IntRange l{2, 3};
  std::size_t instances = 30;
  std::uint64_t seed = 1;
  double density = 0.5;
  double tightness = 1.5;

  void validate() const;  // throws std::invalid_argument
};

// Pure in (spec.seed, index); the result always validates.
ArchitectureModel generate_model(const BenchSpec& spec, std::size_t index);

struct InstanceRecord {
  std::size_t index = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t l = 0;
  std::uint64_t space = 0;
  std::optional<double> w_opt;
  std::optional<double> w_ga;
  std::optional<double> gap;  // (w_ga - w_opt) / w_opt
  std::optional<double> t_opt_ms;
  double t_ga_ms = 0.0;
  // ok | skipped_exhaustive | infeasible | ga_infeasible
  std::string status;
};

struct GapStats {
  std::vector<InstanceRecord> per_instance;
  std::size_t with_gap = 0;
  std::size_t optimal_hits = 0;  // gap within 1e-12
  double mean_gap = 0.0;
  double max_gap = 0.0;
  double mean_t_ga_ms = 0.0;
};

// Runs exhaustive (when the space fits limits.exhaustive_cap) and GA on each
// generated instance. GA run r uses seed derive_seed(ga.seed, r). Weights
// are uniform unless a comparison matrix is supplied.
GapStats run_benchmark(const BenchSpec& spec, const GAConfig& ga, const SearchLimits& limits = {},
                       const std::optional<Matrix>& comparison = std::nullopt);

inline constexpr const char* kBenchCsvHeader = "index,n,m,l,space,w_opt,w_ga,gap,t_opt_ms,t_ga_ms";

void write_csv(const GapStats& stats, std::ostream& out);
OrderedJson summary_json(const GapStats& stats);

}  // namespace scall
