#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace bucketeer {

inline constexpr double kDefaultAlpha = 0.05;

// Smallest histogram total accepted by gof_uniform: 5 expected per cell.
inline constexpr std::uint64_t kMinUniformTotal = 500;

// Chi-square validity floor on every expected cell count.
inline constexpr double kMinExpectedCount = 5.0;

struct TestReport {
  double statistic = 0.0;
  int df = 1;
  double p_value = 1.0;
  double alpha = kDefaultAlpha;
  bool reject = false;

  friend bool operator==(const TestReport&, const TestReport&) = default;
};

// Counts of R_b values 0..99 among users that satisfy an exposure condition.
class Histogram100 {
 public:
  static constexpr std::size_t kCells = 100;

  Histogram100() = default;
  explicit Histogram100(const std::array<std::uint64_t, kCells>& counts);

  // Throws InputError for cells outside [0, 99].
  void add(int cell, std::uint64_t n = 1);
  void merge(const Histogram100& other) noexcept;

  std::uint64_t operator[](std::size_t cell) const { return counts_[cell]; }
  const std::array<std::uint64_t, kCells>& counts() const noexcept { return counts_; }
  std::uint64_t total() const noexcept { return total_; }

  friend bool operator==(const Histogram100&, const Histogram100&) = default;

 private:
  std::array<std::uint64_t, kCells> counts_{};
  std::uint64_t total_ = 0;
};

// r x c table of co-occurrence counts, rows indexed by one experiment's buckets and
// columns by the other's. Marginals are derived on demand from the cells.
class ContingencyTable {
 public:
  // Throws InputError unless rows >= 2 and cols >= 2.
  ContingencyTable(std::size_t rows, std::size_t cols);
  static ContingencyTable from_rows(const std::vector<std::vector<std::uint64_t>>& rows);

  void add(std::size_t row, std::size_t col, std::uint64_t n = 1);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint64_t at(std::size_t row, std::size_t col) const { return cells_[row * cols_ + col]; }
  std::uint64_t row_sum(std::size_t row) const;
  std::uint64_t col_sum(std::size_t col) const;
  std::uint64_t total() const;

  ContingencyTable transposed() const;
  std::vector<std::vector<std::uint64_t>> to_rows() const;

  friend bool operator==(const ContingencyTable&, const ContingencyTable&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint64_t> cells_;
};

// Regularized upper incomplete gamma Q(a, x) for a > 0, x >= 0. Series below
// x < a + 1, Lentz continued fraction above. Throws NumericalError if either
// fails to converge within 200 iterations.
double regularized_gamma_q(double a, double x);

// Survival function of the chi-square distribution, Q(df/2, statistic/2).
// Throws InputError for a negative/non-finite statistic or df < 1.
double chi_square_sf(double statistic, int df);

TestReport make_report(double statistic, int df, double alpha);

// Pearson goodness of fit of `observed` against `proportions` (positive, summing
// to one). df = k - 1. Throws SampleSizeError if any expected count is below 5.
TestReport gof_test(std::span<const std::uint64_t> observed, std::span<const double> proportions,
                    double alpha = kDefaultAlpha);

// Goodness of fit against the uniform distribution over 100 cells, df = 99.
TestReport gof_uniform(const Histogram100& hist, double alpha = kDefaultAlpha);

// Pearson independence test without continuity correction, df = (r-1)(c-1).
TestReport independence_test(const ContingencyTable& table, double alpha = kDefaultAlpha);

}  // namespace bucketeer
