#include "spanlab/conversion.hpp"

#include <cmath>
#include <string>

#include "spanlab/errors.hpp"

namespace spanlab {

ReadingParams::ReadingParams(double words_per_minute, double tokens_per_word)
    : words_per_minute_(words_per_minute), tokens_per_word_(tokens_per_word) {
  // Sanity bounds against unit slips (words per second, tokens per character).
  if (!(words_per_minute > 0.0 && words_per_minute < 2000.0)) {
    throw DomainError("words_per_minute must be in (0, 2000), got " +
                      std::to_string(words_per_minute));
  }
  if (!(tokens_per_word > 0.0 && tokens_per_word < 10.0)) {
    throw DomainError("tokens_per_word must be in (0, 10), got " +
                      std::to_string(tokens_per_word));
  }
}

double tokens_per_second(const ReadingParams& params) {
  return params.words_per_minute() * params.tokens_per_word() / 60.0;
}

double seconds_to_tokens(double seconds, const ReadingParams& params) {
  if (!(seconds >= 0.0) || !std::isfinite(seconds)) {
    throw DomainError("reading duration must be a nonnegative number of seconds");
  }
  return seconds * tokens_per_second(params);
}

double tokens_to_words(double tokens, const ReadingParams& params) {
  return tokens / params.tokens_per_word();
}

double words_to_tokens(double words, const ReadingParams& params) {
  return words * params.tokens_per_word();
}

}  // namespace spanlab
