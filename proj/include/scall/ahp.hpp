#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "scall/matrix.hpp"

namespace scall {

// Weights that scalarize the allocation cost: one per resource plus the
// communication weight.
struct TradeoffVector {
  std::vector<double> f;
  double fc = 0.0;

  std::size_t num_resources() const { return f.size(); }
  double sum() const;
  TradeoffVector scaled(double alpha) const;

  // Equal weight 1/(l+1) on every criterion.
  static TradeoffVector uniform(std::size_t num_resources);

  bool operator==(const TradeoffVector&) const = default;
};

enum class AhpErrc {
  kInvalidMatrix,
  kNonConvergence,
  kUnsupportedOrder,
  kInconsistent,
};

class AhpError : public std::runtime_error {
 public:
  AhpError(AhpErrc code, std::string message, double consistency_ratio = 0.0)
      : std::runtime_error(std::move(message)), code_(code), cr_(consistency_ratio) {}

  AhpErrc code() const { return code_; }
  // Meaningful for kInconsistent.
  double consistency_ratio() const { return cr_; }

 private:
  AhpErrc code_;
  double cr_;
};

enum class ComparisonDefect {
  kNotSquare,
  kNotPositive,
  kBadDiagonal,
  kNotReciprocal,
  kOutOfScale,
};

struct ComparisonIssue {
  ComparisonDefect defect;
  std::size_t row;
  std::size_t col;
};

inline constexpr double kReciprocalTolerance = 1e-9;
inline constexpr double kSaatyMin = 1.0 / 9.0;
inline constexpr double kSaatyMax = 9.0;

// Every violation of the reciprocal Saaty-scale form. Each unordered pair is
// reported once (row < col) for reciprocity.
std::vector<ComparisonIssue> inspect_comparison(const Matrix& m);

// A square reciprocal matrix with entries on the 1/9..9 scale.
class PairwiseComparisonMatrix {
 public:
  // Throws AhpError(kInvalidMatrix) describing the first defect found.
  explicit PairwiseComparisonMatrix(Matrix m);

  std::size_t order() const { return m_.rows(); }
  const Matrix& matrix() const { return m_; }
  double operator()(std::size_t a, std::size_t b) const { return m_(a, b); }

 private:
  Matrix m_;
};

struct AhpOptions {
  double cr_threshold = 0.1;
  double tolerance = 1e-12;  // infinity-norm change between iterates
  int max_iterations = 10000;
};

struct PrincipalEigen {
  double lambda_max = 0.0;
  std::vector<double> weights;  // sums to 1
  int iterations = 0;
};

// Power iteration from the uniform vector. Throws AhpError(kNonConvergence)
// when the iteration cap is reached.
PrincipalEigen principal_eigen(const PairwiseComparisonMatrix& m, const AhpOptions& opts = {});

// Saaty random index for orders 1..10. Throws kUnsupportedOrder otherwise.
double random_index(std::size_t order);

// 0 for order <= 2. Throws kUnsupportedOrder beyond 10.
double consistency_ratio(const PairwiseComparisonMatrix& m, const AhpOptions& opts = {});

struct AhpAnalysis {
  PrincipalEigen eigen;
  double cr = 0.0;
  bool consistent = false;
  TradeoffVector tradeoff;
};

// Eigenvector, CR and the resulting trade-off vector, without rejecting
// inconsistent judgments. Order must be at least 2.
AhpAnalysis analyze_comparison(const PairwiseComparisonMatrix& m, const AhpOptions& opts = {});

// Throws AhpError(kInconsistent) carrying CR when CR >= opts.cr_threshold.
TradeoffVector derive_tradeoff(const PairwiseComparisonMatrix& m, const AhpOptions& opts = {});

}  // namespace scall
