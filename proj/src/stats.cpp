#include "bucketeer/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "bucketeer/errors.hpp"

namespace bucketeer {

namespace {

constexpr int kMaxIterations = 200;
constexpr double kTolerance = 1e-12;
constexpr double kTiny = 1e-300;

void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw InputError("significance level must lie in (0, 1), got " + std::to_string(alpha));
  }
}

// log(x^a e^-x / Gamma(a))
double log_prefactor(double a, double x) { return a * std::log(x) - x - std::lgamma(a); }

double lower_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double denom = a;
  for (int n = 1; n <= kMaxIterations; ++n) {
    denom += 1.0;
    term *= x / denom;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kTolerance) {
      return sum * std::exp(log_prefactor(a, x));
    }
  }
  throw NumericalError("incomplete gamma series did not converge for a=" + std::to_string(a) +
                       ", x=" + std::to_string(x));
}

double upper_continued_fraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kTolerance) return std::exp(log_prefactor(a, x)) * h;
  }
  throw NumericalError("incomplete gamma continued fraction did not converge for a=" +
                       std::to_string(a) + ", x=" + std::to_string(x));
}

}  // namespace

Histogram100::Histogram100(const std::array<std::uint64_t, kCells>& counts)
    : counts_(counts), total_(std::accumulate(counts.begin(), counts.end(), std::uint64_t{0})) {}

void Histogram100::add(int cell, std::uint64_t n) {
  if (cell < 0 || cell >= static_cast<int>(kCells)) {
    throw InputError("histogram cell out of range: " + std::to_string(cell));
  }
  counts_[static_cast<std::size_t>(cell)] += n;
  total_ += n;
}

void Histogram100::merge(const Histogram100& other) noexcept {
  for (std::size_t i = 0; i < kCells; ++i) counts_[i] += other.counts_[i];
  total_ += other.total_;
}

ContingencyTable::ContingencyTable(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), cells_(rows * cols, 0) {
  if (rows < 2 || cols < 2) {
    throw InputError("contingency table needs at least 2 rows and 2 columns, got " +
                     std::to_string(rows) + "x" + std::to_string(cols));
  }
}

ContingencyTable ContingencyTable::from_rows(const std::vector<std::vector<std::uint64_t>>& rows) {
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  ContingencyTable table(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw InputError("contingency table rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) table.add(r, c, rows[r][c]);
  }
  return table;
}

void ContingencyTable::add(std::size_t row, std::size_t col, std::uint64_t n) {
  if (row >= rows_ || col >= cols_) throw InputError("contingency table index out of range");
  cells_[row * cols_ + col] += n;
}

std::uint64_t ContingencyTable::row_sum(std::size_t row) const {
  std::uint64_t sum = 0;
  for (std::size_t c = 0; c < cols_; ++c) sum += at(row, c);
  return sum;
}

std::uint64_t ContingencyTable::col_sum(std::size_t col) const {
  std::uint64_t sum = 0;
  for (std::size_t r = 0; r < rows_; ++r) sum += at(r, col);
  return sum;
}

std::uint64_t ContingencyTable::total() const {
  return std::accumulate(cells_.begin(), cells_.end(), std::uint64_t{0});
}

ContingencyTable ContingencyTable::transposed() const {
  ContingencyTable out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.add(c, r, at(r, c));
  return out;
}

std::vector<std::vector<std::uint64_t>> ContingencyTable::to_rows() const {
  std::vector<std::vector<std::uint64_t>> out(rows_, std::vector<std::uint64_t>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = at(r, c);
  return out;
}

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0) || !std::isfinite(a)) throw InputError("incomplete gamma needs a > 0");
  if (!(x >= 0.0)) throw InputError("incomplete gamma needs x >= 0");
  if (x == 0.0) return 1.0;
  if (std::isinf(x)) return 0.0;
  if (x < a + 1.0) return 1.0 - lower_series(a, x);
  return upper_continued_fraction(a, x);
}

double chi_square_sf(double statistic, int df) {
  if (!(statistic >= 0.0) || std::isnan(statistic)) {
    throw InputError("chi-square statistic must be non-negative, got " + std::to_string(statistic));
  }
  if (df < 1) throw InputError("chi-square degrees of freedom must be >= 1, got " + std::to_string(df));
  if (statistic == 0.0) return 1.0;
  const double q = regularized_gamma_q(0.5 * df, 0.5 * statistic);
  return std::clamp(q, 0.0, 1.0);
}

TestReport make_report(double statistic, int df, double alpha) {
  check_alpha(alpha);
  TestReport report;
  report.statistic = statistic;
  report.df = df;
  report.p_value = chi_square_sf(statistic, df);
  report.alpha = alpha;
  report.reject = report.p_value < alpha;
  return report;
}

TestReport gof_test(std::span<const std::uint64_t> observed, std::span<const double> proportions,
                    double alpha) {
  check_alpha(alpha);
  if (observed.size() != proportions.size()) {
    throw InputError("observed and expected cell counts differ in length");
  }
  if (observed.size() < 2) throw InputError("goodness of fit needs at least 2 cells");
  double proportion_sum = 0.0;
  for (double p : proportions) {
    if (!(p > 0.0)) throw InputError("expected proportions must be positive");
    proportion_sum += p;
  }
  if (std::fabs(proportion_sum - 1.0) > 1e-9) throw InputError("expected proportions must sum to 1");

  const auto total = static_cast<double>(
      std::accumulate(observed.begin(), observed.end(), std::uint64_t{0}));
  double statistic = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = total * proportions[i];
    if (expected < kMinExpectedCount) {
      throw SampleSizeError("expected count " + std::to_string(expected) + " in cell " +
                            std::to_string(i) + " is below the minimum of 5");
    }
    const double diff = static_cast<double>(observed[i]) - expected;
    statistic += diff * diff / expected;
  }
  return make_report(statistic, static_cast<int>(observed.size()) - 1, alpha);
}

TestReport gof_uniform(const Histogram100& hist, double alpha) {
  if (hist.total() < kMinUniformTotal) {
    throw SampleSizeError("uniformity test needs at least " + std::to_string(kMinUniformTotal) +
                          " observations, got " + std::to_string(hist.total()));
  }
  const double expected = static_cast<double>(hist.total()) / Histogram100::kCells;
  double statistic = 0.0;
  for (std::uint64_t count : hist.counts()) {
    const double diff = static_cast<double>(count) - expected;
    statistic += diff * diff;
  }
  return make_report(statistic / expected, static_cast<int>(Histogram100::kCells) - 1, alpha);
}

TestReport independence_test(const ContingencyTable& table, double alpha) {
  check_alpha(alpha);
  std::vector<double> row_sums(table.rows());
  std::vector<double> col_sums(table.cols());
  for (std::size_t r = 0; r < table.rows(); ++r) row_sums[r] = static_cast<double>(table.row_sum(r));
  for (std::size_t c = 0; c < table.cols(); ++c) col_sums[c] = static_cast<double>(table.col_sum(c));
  const auto total = static_cast<double>(table.total());

  double statistic = 0.0;
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t c = 0; c < table.cols(); ++c) {
      const double expected = total > 0.0 ? row_sums[r] * col_sums[c] / total : 0.0;
      if (expected < kMinExpectedCount) {
        throw SampleSizeError("expected count " + std::to_string(expected) + " in cell (" +
                              std::to_string(r) + ", " + std::to_string(c) +
                              ") is below the minimum of 5");
      }
      const double diff = static_cast<double>(table.at(r, c)) - expected;
      statistic += diff * diff / expected;
    }
  }
  const int df = static_cast<int>((table.rows() - 1) * (table.cols() - 1));
  return make_report(statistic, df, alpha);
}

}  // namespace bucketeer
