#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "spanlab/conversion.hpp"
#include "spanlab/series.hpp"

namespace spanlab::ecs {

inline constexpr int kFirstYear = 2004;
inline constexpr int kLastYear = 2026;

/// The 2020 session duration quoted in the reading-duration derivation
/// (~10 min). The canonical 2022 anchor uses 593 s; this is kept for
/// what-if runs.
inline constexpr double kAlternateSession2020Seconds = 600.0;

struct EcsAnchor {
  int year = 0;
  double session_seconds = 0.0;  // S(t)
  double csf = 0.0;              // comprehension scaling factor
  std::string provenance;
};

/// Throws DomainError unless session_seconds in (0, 36000) and csf in (0, 10).
void check_anchor(const EcsAnchor& anchor);

/// ECS = S * R_tok * CSF. Does not check the anchor, so degenerate factors
/// (csf = 0) evaluate to 0.
double ecs_at_anchor(const EcsAnchor& anchor, const ReadingParams& reading);

/// Anchors plus the per-year asserted ECS values.
class EcsSchedule {
 public:
  /// Validates: anchors valid, strictly increasing unique years; asserted
  /// values positive and strictly decreasing over consecutive years.
  EcsSchedule(std::vector<EcsAnchor> anchors, std::map<int, double> asserted,
              ReadingParams reading = {});

  [[nodiscard]] const std::vector<EcsAnchor>& anchors() const { return anchors_; }
  [[nodiscard]] const std::map<int, double>& asserted() const { return asserted_; }
  [[nodiscard]] const ReadingParams& reading() const { return reading_; }

  /// Throws DomainError if no anchor exists for `year`.
  [[nodiscard]] const EcsAnchor& anchor(int year) const;

 private:
  std::vector<EcsAnchor> anchors_;
  std::map<int, double> asserted_;
  ReadingParams reading_;
};

enum class SeriesPolicy {
  anchored,  // piecewise-linear through the S * R_tok * CSF anchor values only
  asserted,  // tabulated yearly values, linear fill back to the first anchor
};

SeriesPolicy parse_policy(std::string_view name);
std::string_view policy_name(SeriesPolicy policy);

/// Yearly ECS over 2004-2026.
YearlySeries ecs_series(const EcsSchedule& schedule, SeriesPolicy policy);

/// (ECS(to) - ECS(from)) / (to - from). Throws DomainError if from >= to or
/// either year is missing.
double mean_decline_rate(const YearlySeries& series, int from, int to);

/// `year,session_seconds,csf,provenance`
std::vector<EcsAnchor> parse_anchors(std::string_view text);
/// `year,tokens`
std::map<int, double> parse_asserted(std::string_view text);

}  // namespace spanlab::ecs
