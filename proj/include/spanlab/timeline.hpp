#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spanlab/series.hpp"

namespace spanlab::timeline {

/// One dated context-window release.
struct ModelRelease {
  int release_year = 0;
  int release_month = 0;
  std::string model_name;
  std::int64_t max_context_tokens = 0;
  std::string source_tag;

  friend bool operator==(const ModelRelease&, const ModelRelease&) = default;
};

/// Releases kept sorted ascending by (year, month). Construction enforces
/// non-emptiness and ordering; content invariants (duplicates, ranges) are
/// audited by validate() so that flawed data can still be inspected.
class TimelineDataset {
 public:
  TimelineDataset(std::vector<ModelRelease> releases, std::string provenance);

  /// Inserts keeping the sort order (stable after equal dates).
  void add(ModelRelease release);

  [[nodiscard]] const std::vector<ModelRelease>& releases() const { return releases_; }
  [[nodiscard]] const std::string& provenance() const { return provenance_; }
  [[nodiscard]] std::size_t size() const { return releases_.size(); }

  friend bool operator==(const TimelineDataset&, const TimelineDataset&) = default;

 private:
  std::vector<ModelRelease> releases_;
  std::string provenance_;
};

/// Parses `date,model,max_context_tokens,source` CSV with `YYYY-MM` dates.
/// Throws ParseError naming the offending data row.
TimelineDataset parse_timeline(std::string_view text, std::string provenance = {});

/// Inverse of parse_timeline for clean datasets.
std::string serialize_timeline(const TimelineDataset& dataset);

/// Running frontier: for each year in [first_year, last_year], the largest
/// window among non-excluded releases dated at or before month `as_of_month`
/// of that year. Values carry forward across years without releases.
///
/// A year also gets an `upper` value when a model first released that year
/// was re-released under the same name with a larger window (ChatGPT 4,096
/// then 8,192); this is how the 2022 range is carried downstream.
YearlySeries leading_context_by_year(const TimelineDataset& dataset, int first_year,
                                     int last_year, const std::vector<std::string>& exclusions,
                                     int as_of_month = 12);

/// Name of the latest non-excluded release that reaches the frontier value of
/// `year` (first listed wins among releases of the same month).
std::string leading_model(const TimelineDataset& dataset, int year,
                          const std::vector<std::string>& exclusions, int as_of_month = 12);

/// The relaunched model that gives `year` its upper value, if any.
std::optional<std::string> range_model(const TimelineDataset& dataset, int year,
                                       const std::vector<std::string>& exclusions);

struct Finding {
  std::string kind;
  int row = 0;  // 1-based index into releases(); 0 for dataset-level findings
  std::string message;

  friend bool operator==(const Finding&, const Finding&) = default;
};

/// Every invariant violation and every year without a release between the
/// first and last year. Empty iff the dataset is clean.
std::vector<Finding> validate(const TimelineDataset& dataset);

/// One JSON object per finding, newline-terminated.
std::string findings_to_json_lines(const std::vector<Finding>& findings);

bool is_excluded(const ModelRelease& release, const std::vector<std::string>& exclusions);

}  // namespace spanlab::timeline
