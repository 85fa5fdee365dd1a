#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "scall/ahp.hpp"
#include "scall/evaluator.hpp"
#include "scall/model.hpp"

namespace scall {

struct GAConfig {
  std::size_t population_size = 50;
  std::size_t generations = 200;
  std::size_t tournament_size = 2;
  double crossover_rate = 0.9;             // single-point
  std::optional<double> mutation_rate;     // per gene; unset means 1/n
  std::size_t elitism = 1;
  std::uint64_t seed = 0;
  std::size_t stall_limit = 50;            // generations without improvement

  // Throws std::invalid_argument on out-of-range parameters.
  void validate() const;
};

struct Candidate {
  Allocation allocation;
  EvaluationResult result;
  bool operator==(const Candidate&) const = default;
};

enum class SearchMethod { kExhaustive, kGenetic };

struct SearchReport {
  SearchMethod method = SearchMethod::kExhaustive;
  Allocation best;
  EvaluationResult best_result;
  // Distinct feasible allocations, ascending w; the first one is `best`.
  std::vector<Candidate> alternatives;
  std::uint64_t evaluated = 0;
  std::size_t generations = 0;  // 0 for exhaustive
  bool exact = false;
  std::uint64_t seed = 0;
  double elapsed_ms = 0.0;

  bool operator==(const SearchReport&) const = default;
};

enum class SearchErrc { kSpaceTooLarge, kNoFeasibleAllocation, kTimeout };

std::string_view search_errc_name(SearchErrc code);

class SearchError : public std::runtime_error {
 public:
  SearchError(SearchErrc code, std::string message,
              std::optional<Candidate> best_infeasible = std::nullopt)
      : std::runtime_error(std::move(message)),
        code_(code),
        best_infeasible_(std::move(best_infeasible)) {}

  SearchErrc code() const { return code_; }
  // Least-violating allocation seen, when the search found nothing feasible.
  const std::optional<Candidate>& best_infeasible() const { return best_infeasible_; }

 private:
  SearchErrc code_;
  std::optional<Candidate> best_infeasible_;
};

inline constexpr std::uint64_t kDefaultExhaustiveCap = 10'000'000;

struct SearchLimits {
  std::uint64_t exhaustive_cap = kDefaultExhaustiveCap;
  std::optional<std::chrono::steady_clock::time_point> deadline;
};

// Reads SCALL_EXHAUSTIVE_CAP, falling back when unset or unparsable.
std::uint64_t exhaustive_cap_from_env(std::uint64_t fallback = kDefaultExhaustiveCap);

// Enumerates every allocation that respects allowedUnits. Among equal costs
// the lexicographically smallest allocation wins. Throws SearchError.
SearchReport exhaustive_search(const ArchitectureModel& model, const TradeoffVector& F,
                               std::size_t top_k = 1, const SearchLimits& limits = {});

// Genetic search; deterministic in (model, F, cfg). Throws SearchError or
// std::invalid_argument for a bad config.
SearchReport ga_search(const ArchitectureModel& model, const TradeoffVector& F, const GAConfig& cfg,
                       std::size_t top_k = 1, const SearchLimits& limits = {});

// Runs `count` GA searches seeded derive_seed(cfg.seed, r), r = 0..count-1.
// Run r reports the best allocation of its top `count` that no earlier run
// reported, so the bests are distinct; runs with nothing new are dropped.
// Sorted by w, then allocation.
std::vector<SearchReport> alternatives(const ArchitectureModel& model, const TradeoffVector& F,
                                       std::size_t count, const GAConfig& cfg,
                                       const SearchLimits& limits = {});

// Folds alternative runs into one report: best of the first run, one
// alternative per run, summed counters.
SearchReport merge_alternatives(const std::vector<SearchReport>& reports, std::uint64_t base_seed);

}  // namespace scall
