#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "pclingam/errors.hpp"
#include "pclingam/stats.hpp"

namespace pclingam {

namespace {

// D'Agostino & Stephens (1986) approximation for the case-3 (mean and
// variance estimated) statistic. Pieces are ordered by their lower bound.
struct Piece {
  double lower;
  double (*p)(double);
};

constexpr std::array<Piece, 4> kPieces = {{
    {0.0, [](double a) { return 1.0 - std::exp(-13.436 + 101.14 * a - 223.73 * a * a); }},
    {0.2, [](double a) { return 1.0 - std::exp(-8.318 + 42.796 * a - 59.938 * a * a); }},
    {0.34, [](double a) { return std::exp(0.9177 - 4.279 * a - 1.38 * a * a); }},
    {0.6, [](double a) { return std::exp(1.2937 - 5.709 * a + 0.0186 * a * a); }},
}};

// The last piece turns upward past its vertex.
constexpr double kUpperVertex = 5.709 / (2.0 * 0.0186);

// ln Phi(z) and ln(1 - Phi(z)) without cancellation in the tails.
double log_cdf(double z) { return std::log(0.5 * std::erfc(-z / std::numbers::sqrt2)); }
double log_sf(double z) { return std::log(0.5 * std::erfc(z / std::numbers::sqrt2)); }

}  // namespace

double anderson_darling_p_value(double adjusted) {
  if (std::isnan(adjusted)) return std::numeric_limits<double>::quiet_NaN();
  if (adjusted >= kUpperVertex) return 0.0;
  // Take the running minimum across piece boundaries so the approximation's
  // small jumps at 0.2 / 0.34 / 0.6 never make p increase.
  double cap = 1.0;
  double p = 1.0;
  for (std::size_t k = 0; k < kPieces.size(); ++k) {
    const bool last = k + 1 == kPieces.size();
    if (last || adjusted < kPieces[k + 1].lower) {
      p = std::min(kPieces[k].p(adjusted), cap);
      break;
    }
    cap = std::min(cap, kPieces[k].p(kPieces[k + 1].lower));
  }
  return std::clamp(p, 0.0, 1.0);
}

NormalityResult anderson_darling(std::span<const double> sample) {
  const std::size_t n = sample.size();
  if (n < 8) throw InsufficientData("Anderson-Darling test needs at least 8 observations");
  std::vector<double> x(sample.begin(), sample.end());
  std::sort(x.begin(), x.end());
  if (x.front() == x.back()) throw DegenerateData("Anderson-Darling test on a constant sample");

  const double nd = static_cast<double>(n);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= nd;
  double ss = 0.0;
  for (double v : x) ss += (v - mean) * (v - mean);
  const double sd = std::sqrt(ss / (nd - 1.0));
  if (!(sd > 0.0)) throw DegenerateData("Anderson-Darling test on a constant sample");

  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = (x[i] - mean) / sd;
    const double hi = (x[n - 1 - i] - mean) / sd;
    sum += (2.0 * static_cast<double>(i) + 1.0) * (log_cdf(lo) + log_sf(hi));
  }
  NormalityResult result;
  result.a_squared = std::max(0.0, -nd - sum / nd);
  result.adjusted = result.a_squared * (1.0 + 0.75 / nd + 2.25 / (nd * nd));
  result.p_value = anderson_darling_p_value(result.adjusted);
  return result;
}

NormalityResult anderson_darling(const Eigen::Ref<const Eigen::VectorXd>& sample) {
  return anderson_darling(std::span<const double>(sample.data(), static_cast<std::size_t>(sample.size())));
}

}  // namespace pclingam
