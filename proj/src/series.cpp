#include "spanlab/series.hpp"

#include <algorithm>
#include <string>

#include "spanlab/errors.hpp"

namespace spanlab {

YearlySeries::YearlySeries(std::vector<YearValue> points) : points_(std::move(points)) {
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (points_[i].year <= points_[i - 1].year) {
      throw DomainError("series years must be strictly increasing (at " +
                        std::to_string(points_[i].year) + ")");
    }
  }
}

const YearValue& YearlySeries::at(int year) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), year,
                             [](const YearValue& p, int y) { return p.year < y; });
  if (it == points_.end() || it->year != year) {
    throw DomainError("year " + std::to_string(year) + " outside series");
  }
  return *it;
}

bool YearlySeries::contains(int year) const {
  return std::any_of(points_.begin(), points_.end(),
                     [year](const YearValue& p) { return p.year == year; });
}

YearlySeries YearlySeries::slice(int first, int last) const {
  if (first > last) throw DomainError("slice: first year after last year");
  (void)at(first);
  (void)at(last);
  std::vector<YearValue> out;
  for (const auto& p : points_) {
    if (p.year >= first && p.year <= last) out.push_back(p);
  }
  return YearlySeries(std::move(out));
}

int YearlySeries::first_year() const {
  if (points_.empty()) throw DomainError("empty series");
  return points_.front().year;
}

int YearlySeries::last_year() const {
  if (points_.empty()) throw DomainError("empty series");
  return points_.back().year;
}

}  // namespace spanlab
