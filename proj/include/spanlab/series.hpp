#pragma once

#include <optional>
#include <span>
#include <vector>

namespace spanlab {

/// One yearly observation. `upper` is set only for range years, where two
/// values are reported for the same year (e.g. a model launched at one window
/// and extended shortly after).
struct YearValue {
  int year = 0;
  double value = 0.0;
  std::optional<double> upper;

  friend bool operator==(const YearValue&, const YearValue&) = default;
};

/// Strictly increasing sequence of yearly values.
class YearlySeries {
 public:
  YearlySeries() = default;
  explicit YearlySeries(std::vector<YearValue> points);

  /// Throws DomainError when `year` is not in the series.
  [[nodiscard]] const YearValue& at(int year) const;
  [[nodiscard]] double value_at(int year) const { return at(year).value; }
  [[nodiscard]] bool contains(int year) const;

  /// Sub-series covering [first, last]; both ends must be present.
  [[nodiscard]] YearlySeries slice(int first, int last) const;

  [[nodiscard]] std::span<const YearValue> points() const { return points_; }
  [[nodiscard]] std::size_t size() const { return points_.size(); }
  [[nodiscard]] bool empty() const { return points_.empty(); }
  [[nodiscard]] int first_year() const;
  [[nodiscard]] int last_year() const;

  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }

  friend bool operator==(const YearlySeries&, const YearlySeries&) = default;

 private:
  std::vector<YearValue> points_;
};

}  // namespace spanlab
