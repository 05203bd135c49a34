#include "proxydata/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "proxydata/error.hpp"

namespace proxydata {
namespace {

constexpr double kNegligibleProbability = 1e-300;

}  // namespace

std::vector<double> predictive_distribution(std::span<const double> logits) {
  if (logits.size() < 2) {
    fail(ErrorKind::kInvalidInput, "logit vector must have dimension >= 2");
  }
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (!std::isfinite(logits[i])) {
      fail(ErrorKind::kInvalidInput, "logit " + std::to_string(i) + " is not finite");
    }
  }
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - peak);
    sum += out[i];
  }
  for (double& p : out) p /= sum;
  return out;
}

double entropy(std::span<const double> probs) {
  if (probs.empty()) fail(ErrorKind::kInvalidInput, "probability vector is empty");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0 && p <= 1.0)) {
      fail(ErrorKind::kInvalidInput, "probability components must lie in [0, 1]");
    }
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    fail(ErrorKind::kInvalidInput, "probability components must sum to 1 within 1e-9");
  }
  double h = 0.0;
  for (double p : probs) {
    if (p >= kNegligibleProbability) h -= p * std::log(p);
  }
  return std::max(h, 0.0);
}

StatsTable compute_entropy_table(const LogitsTable& logits) {
  std::vector<ExampleStat> rows;
  rows.reserve(logits.size());
  std::size_t classes = logits.dim();
  for (const auto& row : logits.rows()) {
    ExampleStat stat;
    stat.id = row.id;
    stat.label = row.label;
    try {
      stat.entropy = entropy(predictive_distribution(row.logits));
    } catch (const Error& e) {
      fail(e.kind(), e.detail() + " (id " + std::to_string(row.id) + ")");
    }
    classes = std::max<std::size_t>(classes, stat.label + std::size_t{1});
    rows.push_back(std::move(stat));
  }
  return StatsTable(std::move(rows), classes);
}

}  // namespace proxydata
