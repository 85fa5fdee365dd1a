#include "scall/search.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <string_view>

#include "scall/rng.hpp"

namespace scall {

std::string_view search_errc_name(SearchErrc code) {
  switch (code) {
    case SearchErrc::kSpaceTooLarge: return "SPACE_TOO_LARGE";
    case SearchErrc::kNoFeasibleAllocation: return "NO_FEASIBLE_ALLOCATION";
    case SearchErrc::kTimeout: return "TIMEOUT";
  }
  return "UNKNOWN";
}

void GAConfig::validate() const {
  if (population_size < 2) throw std::invalid_argument("populationSize must be at least 2");
  if (generations < 1) throw std::invalid_argument("generations must be positive");
  if (tournament_size < 1 || tournament_size > population_size) {
    throw std::invalid_argument("tournamentSize must be in 1..populationSize");
  }
  if (elitism >= population_size) throw std::invalid_argument("elitism must be below populationSize");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0)) {
    throw std::invalid_argument("crossoverRate must be in [0, 1]");
  }
  if (mutation_rate && !(*mutation_rate >= 0.0 && *mutation_rate <= 1.0)) {
    throw std::invalid_argument("mutationRate must be in [0, 1]");
  }
  if (stall_limit < 1) throw std::invalid_argument("stallLimit must be positive");
}

std::uint64_t exhaustive_cap_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("SCALL_EXHAUSTIVE_CAP");
  if (raw == nullptr) return fallback;
  std::string_view s(raw);
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || value == 0) return fallback;
  return value;
}

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void check_deadline(const SearchLimits& limits) {
  if (limits.deadline && Clock::now() > *limits.deadline) {
    throw SearchError(SearchErrc::kTimeout, "search exceeded its wall-time limit");
  }
}

// Keeps the best `capacity` distinct feasible allocations ordered by
// (w, allocation).
class TopK {
 public:
  explicit TopK(std::size_t capacity) : capacity_(std::max<std::size_t>(capacity, 1)) {}

  void offer(const Allocation& p, double w) {
    if (entries_.size() == capacity_ && !precedes(w, p, entries_.back())) return;
    if (check_duplicates_) {
      for (const auto& e : entries_) {
        if (e.p == p) return;
      }
    }
    auto pos = std::find_if(entries_.begin(), entries_.end(),
                            [&](const Entry& e) { return precedes(w, p, e); });
    entries_.insert(pos, Entry{w, p});
    if (entries_.size() > capacity_) entries_.pop_back();
  }

  // Exhaustive enumeration never repeats an allocation.
  void assume_unique() { check_duplicates_ = false; }

  bool empty() const { return entries_.empty(); }

  std::vector<Candidate> materialize(const ArchitectureModel& model, const TradeoffVector& F) const {
    std::vector<Candidate> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back({e.p, evaluate(model, F, e.p)});
    return out;
  }

 private:
  struct Entry {
    double w;
    Allocation p;
  };
  static bool precedes(double w, const Allocation& p, const Entry& e) {
    return w < e.w || (w == e.w && p < e.p);
  }
  std::size_t capacity_;
  bool check_duplicates_ = true;
  std::vector<Entry> entries_;
};

// Total order used for ranking: feasible before infeasible, then by cost,
// then by violation magnitude.
bool better(const Score& a, const Score& b) {
  if (a.feasible != b.feasible) return a.feasible;
  if (a.feasible) return a.w < b.w;
  return a.violation < b.violation;
}

void finish_report(SearchReport& report, const ArchitectureModel& model, const TradeoffVector& F,
                   const TopK& top) {
  report.alternatives = top.materialize(model, F);
  report.best = report.alternatives.front().allocation;
  report.best_result = report.alternatives.front().result;
}

}  // namespace

SearchReport exhaustive_search(const ArchitectureModel& model, const TradeoffVector& F,
                               std::size_t top_k, const SearchLimits& limits) {
  const auto start = Clock::now();
  const std::uint64_t space = model.search_space_size();
  if (space > limits.exhaustive_cap) {
    throw SearchError(SearchErrc::kSpaceTooLarge,
                      "search space of " + std::to_string(model.num_units()) + "^" +
                          std::to_string(model.num_components()) + " allocations exceeds the cap of " +
                          std::to_string(limits.exhaustive_cap));
  }

  const std::size_t n = model.num_components();
  CostKernel kernel(model, F);
  TopK top(top_k);
  top.assume_unique();

  // Odometer over each component's allowed units; component 0 is the most
  // significant digit, so allocations appear in lexicographic order.
  std::vector<std::size_t> digit(n, 0);
  Allocation p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = model.allowed_units(i)[0];

  std::optional<Candidate> least_bad;
  Score least_bad_score;
  std::uint64_t evaluated = 0;
  bool more = true;
  while (more) {
    const Score s = kernel.score(p);
    ++evaluated;
    if (s.feasible) {
      top.offer(p, s.w);
    } else if (top.empty() && (!least_bad || better(s, least_bad_score))) {
      least_bad = Candidate{p, {}};
      least_bad_score = s;
    }
    if ((evaluated & 0xFFF) == 0) check_deadline(limits);

    more = false;
    for (std::size_t i = n; i-- > 0;) {
      auto allowed = model.allowed_units(i);
      if (++digit[i] < allowed.size()) {
        p[i] = allowed[digit[i]];
        more = true;
        break;
      }
      digit[i] = 0;
      p[i] = allowed[0];
    }
  }

  if (top.empty()) {
    if (least_bad) least_bad->result = evaluate(model, F, least_bad->allocation);
    throw SearchError(SearchErrc::kNoFeasibleAllocation,
                      "no allocation satisfies the resource, bandwidth and placement constraints",
                      std::move(least_bad));
  }

  SearchReport report;
  report.method = SearchMethod::kExhaustive;
  report.exact = true;
  report.evaluated = evaluated;
  finish_report(report, model, F, top);
  report.elapsed_ms = ms_since(start);
  return report;
}

namespace {

struct Individual {
  Allocation genes;
  Score score;
};

class GeneticSearch {
 public:
  GeneticSearch(const ArchitectureModel& model, const TradeoffVector& F, const GAConfig& cfg,
                std::size_t top_k, const SearchLimits& limits)
      : model_(model),
        F_(F),
        cfg_(cfg),
        limits_(limits),
        kernel_(model, F),
        rng_(cfg.seed),
        top_(top_k),
        mutation_rate_(cfg.mutation_rate.value_or(1.0 / static_cast<double>(model.num_components()))) {}

  SearchReport run() {
    const auto start = Clock::now();
    const std::size_t pop = cfg_.population_size;

    std::vector<Individual> population;
    population.reserve(pop);
    for (std::size_t s = 0; s < pop; ++s) {
      Allocation genes(model_.num_components());
      for (std::size_t i = 0; i < genes.size(); ++i) genes[i] = random_gene(i);
      population.push_back(assess(std::move(genes)));
    }

    std::size_t generation = 0;
    std::size_t stall = 0;
    std::vector<std::size_t> order(pop);
    std::vector<std::size_t> rank(pop);
    std::vector<Individual> next;
    next.reserve(pop);

    while (generation < cfg_.generations) {
      check_deadline(limits_);
      improved_ = false;

      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return better(population[a].score, population[b].score);
      });
      for (std::size_t r = 0; r < pop; ++r) rank[order[r]] = r;

      next.clear();
      for (std::size_t e = 0; e < cfg_.elitism; ++e) next.push_back(population[order[e]]);

      while (next.size() < pop) {
        const Individual& a = population[tournament(rank)];
        const Individual& b = population[tournament(rank)];
        Allocation c1 = a.genes;
        Allocation c2 = b.genes;
        if (c1.size() > 1 && rng_.chance(cfg_.crossover_rate)) {
          const std::size_t cut = 1 + rng_.below(c1.size() - 1);
          for (std::size_t i = cut; i < c1.size(); ++i) std::swap(c1[i], c2[i]);
        }
        mutate(c1);
        mutate(c2);
        next.push_back(assess(std::move(c1)));
        if (next.size() < pop) next.push_back(assess(std::move(c2)));
      }
      population.swap(next);
      ++generation;

      stall = improved_ ? 0 : stall + 1;
      if (stall >= cfg_.stall_limit) break;
    }

    if (top_.empty()) {
      std::optional<Candidate> diag;
      if (least_bad_) diag = Candidate{least_bad_->genes, evaluate(model_, F_, least_bad_->genes)};
      throw SearchError(SearchErrc::kNoFeasibleAllocation,
                        "genetic search found no allocation satisfying the resource, bandwidth and "
                        "placement constraints",
                        std::move(diag));
    }

    SearchReport report;
    report.method = SearchMethod::kGenetic;
    report.exact = false;
    report.seed = cfg_.seed;
    report.generations = generation;
    report.evaluated = evaluated_;
    finish_report(report, model_, F_, top_);
    report.elapsed_ms = ms_since(start);
    return report;
  }

 private:
  UnitIndex random_gene(std::size_t i) {
    auto allowed = model_.allowed_units(i);
    return allowed[rng_.below(allowed.size())];
  }

  void mutate(Allocation& genes) {
    for (std::size_t i = 0; i < genes.size(); ++i) {
      if (rng_.chance(mutation_rate_)) genes[i] = random_gene(i);
    }
  }

  std::size_t tournament(const std::vector<std::size_t>& rank) {
    std::size_t winner = rng_.below(rank.size());
    for (std::size_t t = 1; t < cfg_.tournament_size; ++t) {
      const std::size_t challenger = rng_.below(rank.size());
      if (rank[challenger] < rank[winner]) winner = challenger;
    }
    return winner;
  }

  Individual assess(Allocation genes) {
    const Score s = kernel_.score(genes);
    ++evaluated_;
    if (s.feasible) {
      if (!best_feasible_ || s.w < *best_feasible_) {
        best_feasible_ = s.w;
        improved_ = true;
      }
      top_.offer(genes, s.w);
    } else if (!best_feasible_ && (!least_bad_ || s.violation < least_bad_->score.violation)) {
      least_bad_ = Individual{genes, s};
      improved_ = true;
    }
    return Individual{std::move(genes), s};
  }

  const ArchitectureModel& model_;
  const TradeoffVector& F_;
  const GAConfig& cfg_;
  const SearchLimits& limits_;
  CostKernel kernel_;
  Rng rng_;
  TopK top_;
  double mutation_rate_;

  std::uint64_t evaluated_ = 0;
  bool improved_ = false;
  std::optional<double> best_feasible_;
  std::optional<Individual> least_bad_;
};

}  // namespace

SearchReport ga_search(const ArchitectureModel& model, const TradeoffVector& F, const GAConfig& cfg,
                       std::size_t top_k, const SearchLimits& limits) {
  cfg.validate();
  GeneticSearch search(model, F, cfg, top_k, limits);
  return search.run();
}

std::vector<SearchReport> alternatives(const ArchitectureModel& model, const TradeoffVector& F,
                                       std::size_t count, const GAConfig& cfg,
                                       const SearchLimits& limits) {
  if (count < 1) throw std::invalid_argument("alternatives count must be at least 1");
  cfg.validate();

  std::vector<SearchReport> reports;
  std::optional<SearchError> last_failure;
  for (std::size_t r = 0; r < count; ++r) {
    GAConfig run_cfg = cfg;
    run_cfg.seed = derive_seed(cfg.seed, r);
    try {
      // Each run contributes its best allocation not already taken by an earlier run.
      SearchReport report = ga_search(model, F, run_cfg, count, limits);
      auto fresh = std::find_if(report.alternatives.begin(), report.alternatives.end(), [&](const Candidate& c) {
        return std::none_of(reports.begin(), reports.end(),
                            [&](const SearchReport& other) { return other.best == c.allocation; });
      });
      if (fresh == report.alternatives.end()) continue;
      Candidate pick = std::move(*fresh);
      report.best = pick.allocation;
      report.best_result = pick.result;
      report.alternatives = {std::move(pick)};
      reports.push_back(std::move(report));
    } catch (const SearchError& e) {
      if (e.code() != SearchErrc::kNoFeasibleAllocation) throw;
      last_failure = e;
    }
  }
  if (reports.empty()) throw *last_failure;

  std::stable_sort(reports.begin(), reports.end(), [](const SearchReport& a, const SearchReport& b) {
    if (a.best_result.w != b.best_result.w) return a.best_result.w < b.best_result.w;
    return a.best < b.best;
  });
  return reports;
}

SearchReport merge_alternatives(const std::vector<SearchReport>& reports, std::uint64_t base_seed) {
  if (reports.empty()) throw std::invalid_argument("no reports to merge");
  SearchReport merged;
  merged.method = reports.front().method;
  merged.best = reports.front().best;
  merged.best_result = reports.front().best_result;
  merged.exact = false;
  merged.seed = base_seed;
  for (const auto& r : reports) {
    merged.alternatives.push_back({r.best, r.best_result});
    merged.evaluated += r.evaluated;
    merged.generations += r.generations;
    merged.elapsed_ms += r.elapsed_ms;
  }
  return merged;
}

}  // namespace scall
