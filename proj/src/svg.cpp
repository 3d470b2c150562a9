#include "spanlab/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "spanlab/errors.hpp"

namespace spanlab::svg {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

std::string tick_label(int decade) {
  // 10^k with thousands separators, e.g. 1,000,000
  std::string digits = "1" + std::string(static_cast<std::size_t>(std::max(decade, 0)), '0');
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i > 0 && (digits.size() - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[i]);
  }
  return out;
}

}  // namespace

double ChartTransform::x(double year) const {
  const double span = static_cast<double>(last_year - first_year);
  return margin_left + (year - first_year) / span * (width - margin_left - margin_right);
}

double ChartTransform::y(double tokens) const {
  const double span = static_cast<double>(max_decade - min_decade);
  return margin_top +
         (max_decade - std::log10(tokens)) / span * (height - margin_top - margin_bottom);
}

double ChartTransform::year_at(double px) const {
  const double span = static_cast<double>(last_year - first_year);
  return first_year + (px - margin_left) / (width - margin_left - margin_right) * span;
}

double ChartTransform::tokens_at(double py) const {
  const double span = static_cast<double>(max_decade - min_decade);
  return std::pow(10.0, max_decade - (py - margin_top) / (height - margin_top - margin_bottom) * span);
}

ChartTransform fit_transform(const std::vector<divergence::DivergenceRow>& rows,
                             const divergence::QualityBand& band) {
  if (rows.size() < 2) throw DomainError("chart needs at least 2 rows");
  double lo = std::min(band.low_tokens, band.high_tokens);
  double hi = std::max(band.low_tokens, band.high_tokens);
  for (const auto& r : rows) {
    lo = std::min({lo, r.ai_tokens, r.ecs_tokens});
    hi = std::max({hi, r.ai_tokens, r.ecs_tokens, r.ai_tokens_alt.value_or(r.ai_tokens)});
  }
  ChartTransform t;
  t.first_year = rows.front().year;
  t.last_year = rows.back().year;
  if (t.first_year >= t.last_year) throw DomainError("chart rows must span more than one year");
  t.min_decade = static_cast<int>(std::floor(std::log10(lo)));
  t.max_decade = static_cast<int>(std::ceil(std::log10(hi)));
  if (t.max_decade == t.min_decade) ++t.max_decade;
  return t;
}

std::string render_divergence_svg(const std::vector<divergence::DivergenceRow>& rows,
                                  const divergence::Crossover& crossover,
                                  const divergence::QualityBand& band,
                                  const std::string& header_comment) {
  const ChartTransform t = fit_transform(rows, band);
  const double plot_bottom = t.height - t.margin_bottom;
  const double plot_right = t.width - t.margin_right;

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  if (!header_comment.empty()) s += "<!-- " + header_comment + " -->\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(t.width) + "\" height=\"" +
       num(t.height) + "\" viewBox=\"0 0 " + num(t.width) + " " + num(t.height) + "\">\n";
  s += "<title>AI context window vs. human effective context span, " +
       std::to_string(t.first_year) + "-" + std::to_string(t.last_year) + "</title>\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + num(t.width) + "\" height=\"" + num(t.height) +
       "\" fill=\"white\"/>\n";

  // Axes
  s += "<g id=\"x-axis\" data-scale=\"linear\" stroke=\"black\" font-size=\"11\">\n";
  s += "<line x1=\"" + num(t.margin_left) + "\" y1=\"" + num(plot_bottom) + "\" x2=\"" +
       num(plot_right) + "\" y2=\"" + num(plot_bottom) + "\"/>\n";
  for (int year = t.first_year; year <= t.last_year; ++year) {
    const double x = t.x(year);
    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(plot_bottom) + "\" x2=\"" + num(x) +
         "\" y2=\"" + num(plot_bottom + 5) + "\"/>\n";
    s += "<text x=\"" + num(x) + "\" y=\"" + num(plot_bottom + 20) +
         "\" text-anchor=\"middle\" stroke=\"none\">" + std::to_string(year) + "</text>\n";
  }
  s += "<text x=\"" + num((t.margin_left + plot_right) / 2) + "\" y=\"" +
       num(t.height - 15) + "\" text-anchor=\"middle\" stroke=\"none\">Year</text>\n";
  s += "</g>\n";

  s += "<g id=\"y-axis\" data-scale=\"log10\" data-min-decade=\"" + std::to_string(t.min_decade) +
       "\" data-max-decade=\"" + std::to_string(t.max_decade) +
       "\" stroke=\"black\" font-size=\"11\">\n";
  s += "<line x1=\"" + num(t.margin_left) + "\" y1=\"" + num(t.margin_top) + "\" x2=\"" +
       num(t.margin_left) + "\" y2=\"" + num(plot_bottom) + "\"/>\n";
  for (int d = t.min_decade; d <= t.max_decade; ++d) {
    const double y = t.y(std::pow(10.0, d));
    s += "<line x1=\"" + num(t.margin_left - 5) + "\" y1=\"" + num(y) + "\" x2=\"" +
         num(t.margin_left) + "\" y2=\"" + num(y) + "\"/>\n";
    s += "<text x=\"" + num(t.margin_left - 8) + "\" y=\"" + num(y + 4) +
         "\" text-anchor=\"end\" stroke=\"none\">" + tick_label(d) + "</text>\n";
  }
  s += "<text x=\"15\" y=\"" + num((t.margin_top + plot_bottom) / 2) +
       "\" transform=\"rotate(-90 15 " + num((t.margin_top + plot_bottom) / 2) +
       ")\" text-anchor=\"middle\" stroke=\"none\">Tokens (log scale)</text>\n";
  s += "</g>\n";

  // QA band at the final year
  {
    const double x = t.x(t.last_year);
    const double y_top = t.y(band.high_tokens);
    const double y_bottom = t.y(band.low_tokens);
    s += "<rect class=\"qa-band\" x=\"" + num(x - 8) + "\" y=\"" + num(y_top) +
         "\" width=\"16\" height=\"" + num(y_bottom - y_top) +
         "\" fill=\"#1f77b4\" fill-opacity=\"0.2\" stroke=\"none\"/>\n";
    s += "<text class=\"qa-label\" x=\"" + num(x - 12) + "\" y=\"" + num(y_bottom + 14) +
         "\" text-anchor=\"end\" font-size=\"10\">quality-adjusted</text>\n";
  }

  auto polyline = [&](const char* cls, const char* color, auto value) {
    std::string pts;
    for (const auto& r : rows) {
      if (!pts.empty()) pts += ' ';
      pts += num(t.x(r.year)) + "," + num(t.y(value(r)));
    }
    s += std::string("<polyline class=\"") + cls + "\" points=\"" + pts +
         "\" fill=\"none\" stroke=\"" + color + "\" stroke-width=\"2\"/>\n";
  };
  polyline("series-ai", "#1f77b4", [](const auto& r) { return r.ai_tokens; });
  polyline("series-ecs", "#d62728", [](const auto& r) { return r.ecs_tokens; });

  for (const auto& r : rows) {
    if (!r.ai_tokens_alt) continue;
    const double x = t.x(r.year);
    s += "<line class=\"range\" x1=\"" + num(x) + "\" y1=\"" + num(t.y(r.ai_tokens)) +
         "\" x2=\"" + num(x) + "\" y2=\"" + num(t.y(*r.ai_tokens_alt)) +
         "\" stroke=\"#1f77b4\" stroke-width=\"4\"/>\n";
  }

  if (crossover.found()) {
    const double x = t.x(crossover.year);
    s += "<line class=\"crossover\" x1=\"" + num(x) + "\" y1=\"" + num(t.margin_top) +
         "\" x2=\"" + num(x) + "\" y2=\"" + num(plot_bottom) +
         "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
    s += "<text class=\"crossover-label\" x=\"" + num(x + 4) + "\" y=\"" +
         num(t.margin_top + 12) + "\" font-size=\"11\">crossover</text>\n";
  }

  s += "<text x=\"" + num(t.margin_left + 10) + "\" y=\"" + num(t.margin_top + 12) +
       "\" font-size=\"11\" fill=\"#1f77b4\">AI context window</text>\n";
  s += "<text x=\"" + num(t.margin_left + 10) + "\" y=\"" + num(t.margin_top + 26) +
       "\" font-size=\"11\" fill=\"#d62728\">Human ECS</text>\n";
  s += "</svg>\n";
  return s;
}

}  // namespace spanlab::svg
