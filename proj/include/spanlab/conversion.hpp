#pragma once

namespace spanlab {

/// Reading-rate calibration. Defaults are the population mean silent reading
/// rate and the cl100k_base tokens-per-word average.
class ReadingParams {
 public:
  static constexpr double kDefaultWordsPerMinute = 238.0;
  static constexpr double kDefaultTokensPerWord = 1.33;

  ReadingParams() = default;
  /// Throws DomainError unless wpm is in (0, 2000) and tpw in (0, 10).
  ReadingParams(double words_per_minute, double tokens_per_word);

  [[nodiscard]] double words_per_minute() const { return words_per_minute_; }
  [[nodiscard]] double tokens_per_word() const { return tokens_per_word_; }

 private:
  double words_per_minute_ = kDefaultWordsPerMinute;
  double tokens_per_word_ = kDefaultTokensPerWord;
};

/// words_per_minute * tokens_per_word / 60, unrounded.
double tokens_per_second(const ReadingParams& params);

/// Tokens traversed in `seconds` of active reading. Throws DomainError for
/// negative durations.
double seconds_to_tokens(double seconds, const ReadingParams& params);

double tokens_to_words(double tokens, const ReadingParams& params);
double words_to_tokens(double words, const ReadingParams& params);

}  // namespace spanlab
