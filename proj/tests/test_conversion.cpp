#include <gtest/gtest.h>

#include <random>

#include "spanlab/conversion.hpp"
#include "spanlab/errors.hpp"

using namespace spanlab;

TEST(Conversion, TokensPerSecondDefaults) {
  EXPECT_NEAR(tokens_per_second(ReadingParams{}), 238.0 * 1.33 / 60.0, 1e-12);
  EXPECT_NEAR(tokens_per_second(ReadingParams{}), 5.27567, 1e-5);
}

TEST(Conversion, WorkedExamples) {
  const ReadingParams p;
  EXPECT_NEAR(seconds_to_tokens(47, p), 247.956, 1e-3);
  EXPECT_NEAR(seconds_to_tokens(60, p), 316.54, 1e-2);
  EXPECT_NEAR(words_to_tokens(5, p), 6.65, 1e-12);
  EXPECT_DOUBLE_EQ(seconds_to_tokens(0, p), 0.0);
}

TEST(Conversion, RejectsOutOfRangeParams) {
  EXPECT_THROW(ReadingParams(0, 1.33), DomainError);
  EXPECT_THROW(ReadingParams(2000, 1.33), DomainError);
  EXPECT_THROW(ReadingParams(238, 0), DomainError);
  EXPECT_THROW(ReadingParams(238, 10), DomainError);
  EXPECT_THROW(seconds_to_tokens(-1, ReadingParams{}), DomainError);
  EXPECT_NO_THROW(ReadingParams(1999, 9.99));
}

TEST(Conversion, LinearityAndRoundTrip) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> wpm(50, 1500), tpw(0.5, 3), secs(0, 5000), k(0.1, 10);
  for (int i = 0; i < 200; ++i) {
    const ReadingParams p(wpm(rng), tpw(rng));
    const double a = secs(rng);
    const double b = secs(rng);
    EXPECT_NEAR(seconds_to_tokens(a + b, p), seconds_to_tokens(a, p) + seconds_to_tokens(b, p),
                1e-9 * (1 + seconds_to_tokens(a + b, p)));
    // Scaling wpm by k scales the token count by k.
    const double s = k(rng);
    if (p.words_per_minute() * s < 2000) {
      const ReadingParams q(p.words_per_minute() * s, p.tokens_per_word());
      EXPECT_NEAR(seconds_to_tokens(a, q), s * seconds_to_tokens(a, p),
                  1e-9 * (1 + seconds_to_tokens(a, q)));
    }
    const double words = a * 3;
    EXPECT_NEAR(tokens_to_words(words_to_tokens(words, p), p), words, 1e-9 * (1 + words));
  }
}
