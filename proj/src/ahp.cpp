#include "scall/ahp.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

namespace scall {

double TradeoffVector::sum() const {
  return std::accumulate(f.begin(), f.end(), 0.0) + fc;
}

TradeoffVector TradeoffVector::scaled(double alpha) const {
  TradeoffVector out = *this;
  for (double& x : out.f) x *= alpha;
  out.fc *= alpha;
  return out;
}

TradeoffVector TradeoffVector::uniform(std::size_t num_resources) {
  const double w = 1.0 / static_cast<double>(num_resources + 1);
  return TradeoffVector{std::vector<double>(num_resources, w), w};
}

namespace {

bool within_scale(double x) {
  return x >= kSaatyMin * (1.0 - kReciprocalTolerance) &&
         x <= kSaatyMax * (1.0 + kReciprocalTolerance);
}

std::string describe(const ComparisonIssue& issue) {
  std::ostringstream os;
  switch (issue.defect) {
    case ComparisonDefect::kNotSquare: os << "comparison matrix is not square"; break;
    case ComparisonDefect::kNotPositive: os << "entry is not a positive finite number"; break;
    case ComparisonDefect::kBadDiagonal: os << "diagonal entry must be exactly 1"; break;
    case ComparisonDefect::kNotReciprocal: os << "entry is not the reciprocal of its mirror"; break;
    case ComparisonDefect::kOutOfScale: os << "entry outside the 1/9..9 scale"; break;
  }
  os << " at [" << issue.row << "][" << issue.col << "]";
  return os.str();
}

}  // namespace

std::vector<ComparisonIssue> inspect_comparison(const Matrix& m) {
  std::vector<ComparisonIssue> issues;
  if (m.rows() != m.cols() || m.rows() == 0) {
    issues.push_back({ComparisonDefect::kNotSquare, m.rows(), m.cols()});
    return issues;
  }
  const std::size_t q = m.rows();
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) {
      const double x = m(a, b);
      if (!std::isfinite(x) || x <= 0.0) {
        issues.push_back({ComparisonDefect::kNotPositive, a, b});
        continue;
      }
      if (a == b) {
        if (x != 1.0) issues.push_back({ComparisonDefect::kBadDiagonal, a, b});
        continue;
      }
      if (!within_scale(x)) issues.push_back({ComparisonDefect::kOutOfScale, a, b});
    }
  }
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = a + 1; b < q; ++b) {
      const double x = m(a, b);
      const double y = m(b, a);
      if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) continue;
      const double inv = 1.0 / y;
      if (std::abs(x - inv) > kReciprocalTolerance * inv) {
        issues.push_back({ComparisonDefect::kNotReciprocal, a, b});
      }
    }
  }
  return issues;
}

PairwiseComparisonMatrix::PairwiseComparisonMatrix(Matrix m) : m_(std::move(m)) {
  const auto issues = inspect_comparison(m_);
  if (!issues.empty()) throw AhpError(AhpErrc::kInvalidMatrix, describe(issues.front()));
}

PrincipalEigen principal_eigen(const PairwiseComparisonMatrix& pcm, const AhpOptions& opts) {
  const Matrix& m = pcm.matrix();
  const std::size_t q = pcm.order();
  std::vector<double> w(q, 1.0 / static_cast<double>(q));
  std::vector<double> y(q);

  PrincipalEigen out;
  bool converged = false;
  for (int it = 1; it <= opts.max_iterations; ++it) {
    for (std::size_t a = 0; a < q; ++a) {
      double s = 0.0;
      for (std::size_t b = 0; b < q; ++b) s += m(a, b) * w[b];
      y[a] = s;
    }
    const double norm = std::accumulate(y.begin(), y.end(), 0.0);
    double change = 0.0;
    for (std::size_t a = 0; a < q; ++a) {
      const double next = y[a] / norm;
      change = std::max(change, std::abs(next - w[a]));
      w[a] = next;
    }
    out.iterations = it;
    if (change < opts.tolerance) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    throw AhpError(AhpErrc::kNonConvergence,
                   "power iteration did not converge within " +
                       std::to_string(opts.max_iterations) + " iterations");
  }

  // w sums to 1, so the Rayleigh-style estimate reduces to the sum of Mw.
  double lambda = 0.0;
  for (std::size_t a = 0; a < q; ++a) {
    for (std::size_t b = 0; b < q; ++b) lambda += m(a, b) * w[b];
  }
  out.lambda_max = lambda;
  out.weights = std::move(w);
  return out;
}

double random_index(std::size_t order) {
  static constexpr std::array<double, 10> kRandomIndex = {0.0,  0.0,  0.58, 0.90, 1.12,
                                                          1.24, 1.32, 1.41, 1.45, 1.49};
  if (order < 1 || order > kRandomIndex.size()) {
    throw AhpError(AhpErrc::kUnsupportedOrder,
                   "no random index for " + std::to_string(order) + " criteria (supported: 1..10)");
  }
  return kRandomIndex[order - 1];
}

namespace {

double cr_from_lambda(double lambda_max, std::size_t q) {
  const double ri = random_index(q);
  if (q <= 2) return 0.0;
  const double ci = (lambda_max - static_cast<double>(q)) / static_cast<double>(q - 1);
  return std::max(0.0, ci / ri);
}

}  // namespace

double consistency_ratio(const PairwiseComparisonMatrix& m, const AhpOptions& opts) {
  const std::size_t q = m.order();
  random_index(q);
  if (q <= 2) return 0.0;
  return cr_from_lambda(principal_eigen(m, opts).lambda_max, q);
}

AhpAnalysis analyze_comparison(const PairwiseComparisonMatrix& m, const AhpOptions& opts) {
  const std::size_t q = m.order();
  if (q < 2) {
    throw AhpError(AhpErrc::kInvalidMatrix,
                   "comparison needs at least one resource and the communication criterion");
  }
  random_index(q);

  AhpAnalysis out;
  out.eigen = principal_eigen(m, opts);
  out.cr = cr_from_lambda(out.eigen.lambda_max, q);
  out.consistent = out.cr < opts.cr_threshold;
  out.tradeoff.f.assign(out.eigen.weights.begin(), out.eigen.weights.end() - 1);
  out.tradeoff.fc = out.eigen.weights.back();
  return out;
}

TradeoffVector derive_tradeoff(const PairwiseComparisonMatrix& m, const AhpOptions& opts) {
  AhpAnalysis a = analyze_comparison(m, opts);
  if (!a.consistent) {
    std::ostringstream os;
    os << "inconsistent judgments: CR = " << a.cr << " (threshold " << opts.cr_threshold << ")";
    throw AhpError(AhpErrc::kInconsistent, os.str(), a.cr);
  }
  return std::move(a.tradeoff);
}

}  // namespace scall
