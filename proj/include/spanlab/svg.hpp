#pragma once

#include <string>
#include <vector>

#include "spanlab/divergence.hpp"

namespace spanlab::svg {

/// Plot coordinate transform. Years map linearly onto [left, width - right];
/// tokens map onto [top, height - bottom] by log10, between whole decades
/// enclosing every plotted value (top = largest decade).
struct ChartTransform {
  double width = 800.0;
  double height = 500.0;
  double margin_left = 80.0;
  double margin_right = 40.0;
  double margin_top = 40.0;
  double margin_bottom = 60.0;
  int first_year = 0;
  int last_year = 0;
  int min_decade = 0;  // log10 of the bottom of the y axis
  int max_decade = 0;  // log10 of the top of the y axis

  [[nodiscard]] double x(double year) const;
  [[nodiscard]] double y(double tokens) const;
  [[nodiscard]] double year_at(double x) const;
  [[nodiscard]] double tokens_at(double y) const;
};

/// Fits the transform to the rows (AI values, ECS values and the QA band).
ChartTransform fit_transform(const std::vector<divergence::DivergenceRow>& rows,
                             const divergence::QualityBand& band);

/// AI and ECS polylines on a log10 token axis, a vertical "crossover" marker
/// (omitted when none), and the QA band shaded at the final year. Throws
/// DomainError for fewer than 2 rows.
std::string render_divergence_svg(const std::vector<divergence::DivergenceRow>& rows,
                                  const divergence::Crossover& crossover,
                                  const divergence::QualityBand& band,
                                  const std::string& header_comment = {});

}  // namespace spanlab::svg
