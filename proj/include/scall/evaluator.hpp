#pragma once

#include "scall/ahp.hpp"
#include "scall/matrix.hpp"
#include "scall/model.hpp"

namespace scall {

struct EvaluationResult {
  double w = 0.0;  // weighted cost, 0 whenever infeasible
  int rho = 1;     // 0 when some unit is over its resource budget
  int kappa = 1;   // 0 when some unit pair exceeds its bandwidth
  bool constraints_ok = true;  // every component on an allowed unit
  bool feasible = true;
  Matrix unit_load;     // m x l
  Matrix pair_traffic;  // m x m, symmetric, zero diagonal
  // Sum of relative overshoots (resources and bandwidth) plus one per
  // misplaced component. Zero iff feasible.
  double violation = 0.0;

  bool operator==(const EvaluationResult&) const = default;
};

// load[h][k] = sum of T[i][h][k] over components i placed on h.
Matrix resource_load(const ArchitectureModel& model, const Allocation& p);

// traffic[g][h] = sum of K[i][j] over component pairs split across g != h.
Matrix comm_traffic(const ArchitectureModel& model, const Allocation& p);

// Throws std::invalid_argument if p or F do not fit the model.
EvaluationResult evaluate(const ArchitectureModel& model, const TradeoffVector& F,
                          const Allocation& p);

struct Score {
  double w = 0.0;
  bool feasible = false;
  double violation = 0.0;
};

// Reusable scratch space for scoring many allocations against one model.
// Not thread-safe; use one kernel per thread.
class CostKernel {
 public:
  CostKernel(const ArchitectureModel& model, const TradeoffVector& F);

  // p must already have the right shape.
  Score score(const Allocation& p);

  const Matrix& last_load() const { return load_; }
  const Matrix& last_traffic() const { return traffic_; }
  int last_rho() const { return rho_; }
  int last_kappa() const { return kappa_; }
  bool last_constraints_ok() const { return constraints_ok_; }

 private:
  const ArchitectureModel& model_;
  TradeoffVector F_;
  Matrix load_;
  Matrix traffic_;
  int rho_ = 1;
  int kappa_ = 1;
  bool constraints_ok_ = true;
};

}  // namespace scall
