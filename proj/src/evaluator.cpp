#include "scall/evaluator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace scall {

namespace {

void check_weights(const ArchitectureModel& model, const TradeoffVector& F) {
  if (F.f.size() != model.num_resources()) {
    throw std::invalid_argument("trade-off vector has " + std::to_string(F.f.size()) +
                                " resource weights, model has " +
                                std::to_string(model.num_resources()) + " resources");
  }
  auto bad = [](double x) { return !std::isfinite(x) || x < 0.0; };
  for (double x : F.f) {
    if (bad(x)) throw std::invalid_argument("trade-off weights must be finite and non-negative");
  }
  if (bad(F.fc)) throw std::invalid_argument("trade-off weights must be finite and non-negative");
}

// Overshoot relative to the budget. A zero budget counts overshoot in
// absolute units.
double overshoot(double used, double budget) {
  if (used <= budget) return 0.0;
  return (used - budget) / (budget > 0.0 ? budget : 1.0);
}

void accumulate_load(const ArchitectureModel& model, const Allocation& p, Matrix& load) {
  load.fill(0.0);
  const std::size_t l = model.num_resources();
  const Tensor3& t = model.data().consumption;
  for (std::size_t i = 0; i < p.size(); ++i) {
    auto demand = t.fiber(i, p[i]);
    auto row = load.row(p[i]);
    for (std::size_t k = 0; k < l; ++k) row[k] += demand[k];
  }
}

void accumulate_traffic(const ArchitectureModel& model, const Allocation& p, Matrix& traffic) {
  traffic.fill(0.0);
  for (const auto& link : model.links()) {
    const UnitIndex g = p[link.i];
    const UnitIndex h = p[link.j];
    if (g == h) continue;
    traffic(g, h) += link.intensity;
    traffic(h, g) += link.intensity;
  }
}

}  // namespace

Matrix resource_load(const ArchitectureModel& model, const Allocation& p) {
  model.check_allocation_shape(p);
  Matrix load(model.num_units(), model.num_resources());
  accumulate_load(model, p, load);
  return load;
}

Matrix comm_traffic(const ArchitectureModel& model, const Allocation& p) {
  model.check_allocation_shape(p);
  Matrix traffic = Matrix::square(model.num_units());
  accumulate_traffic(model, p, traffic);
  return traffic;
}

CostKernel::CostKernel(const ArchitectureModel& model, const TradeoffVector& F)
    : model_(model),
      F_(F),
      load_(model.num_units(), model.num_resources()),
      traffic_(Matrix::square(model.num_units())) {
  check_weights(model, F);
}

Score CostKernel::score(const Allocation& p) {
  const std::size_t m = model_.num_units();
  const std::size_t l = model_.num_resources();
  accumulate_load(model_, p, load_);
  accumulate_traffic(model_, p, traffic_);

  Score s;
  constraints_ok_ = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!model_.is_allowed(i, p[i])) {
      constraints_ok_ = false;
      s.violation += 1.0;
    }
  }

  rho_ = 1;
  for (std::size_t h = 0; h < m; ++h) {
    for (std::size_t k = 0; k < l; ++k) {
      const double used = load_(h, k);
      const double budget = model_.availability(h, k);
      if (used > budget) {
        rho_ = 0;
        s.violation += overshoot(used, budget);
      }
    }
  }
  kappa_ = 1;
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t h = g + 1; h < m; ++h) {
      const double used = traffic_(g, h);
      const double budget = model_.bandwidth(g, h);
      if (used > budget) {
        kappa_ = 0;
        s.violation += overshoot(used, budget);
      }
    }
  }

  double resource_term = 0.0;
  for (std::size_t k = 0; k < l; ++k) {
    double consumed = 0.0;
    for (std::size_t h = 0; h < m; ++h) consumed += load_(h, k);
    resource_term += F_.f[k] * consumed;
  }
  double comm_term = 0.0;
  for (std::size_t g = 0; g < m; ++g) {
    for (std::size_t h = g + 1; h < m; ++h) comm_term += traffic_(g, h) * model_.comm_cost(g, h);
  }

  s.feasible = constraints_ok_ && rho_ == 1 && kappa_ == 1;
  s.w = s.feasible ? (resource_term + F_.fc * comm_term) * rho_ * kappa_ : 0.0;
  return s;
}

EvaluationResult evaluate(const ArchitectureModel& model, const TradeoffVector& F,
                          const Allocation& p) {
  model.check_allocation_shape(p);
  CostKernel kernel(model, F);
  const Score s = kernel.score(p);

  EvaluationResult r;
  r.w = s.w;
  r.rho = kernel.last_rho();
  r.kappa = kernel.last_kappa();
  r.constraints_ok = kernel.last_constraints_ok();
  r.feasible = s.feasible;
  r.unit_load = kernel.last_load();
  r.pair_traffic = kernel.last_traffic();
  r.violation = s.violation;
  return r;
}

}  // namespace scall
