#include "augsel/recall.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "augsel/error.hpp"
#include "synthetic.hpp"

namespace augsel {
namespace {

using Tokens = std::vector<std::string>;

TEST(JaccardTest, Examples) {
  EXPECT_EQ(jaccard_overlap(Tokens{"a", "b"}, Tokens{"b", "a"}), 1.0);
  EXPECT_EQ(jaccard_overlap(Tokens{"a", "b"}, Tokens{"c"}), 0.0);
  EXPECT_EQ(jaccard_overlap(Tokens{"a", "b", "c"}, Tokens{"b", "c", "d"}), 0.5);
  // Sets, not multisets.
  EXPECT_EQ(jaccard_overlap(Tokens{"a", "a", "b"}, Tokens{"a", "b", "b"}), 1.0);
}

TEST(JaccardTest, EmptySideIsError) {
  EXPECT_THROW(jaccard_overlap(Tokens{}, Tokens{"a"}), InputError);
  EXPECT_THROW(jaccard_overlap(Tokens{"a"}, Tokens{}), InputError);
}

TEST(JaccardTest, SymmetricBoundedAndOneIffEqualSets) {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto a = testing::random_tokens(rng, 1, 10, 8);
    const auto b = testing::random_tokens(rng, 1, 10, 8);
    const double j = jaccard_overlap(a, b);
    EXPECT_EQ(j, jaccard_overlap(b, a));
    EXPECT_GE(j, 0.0);
    EXPECT_LE(j, 1.0);
    const std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    EXPECT_EQ(j == 1.0, sa == sb);
    std::size_t inter = 0;
    for (const auto& t : sa) inter += sb.count(t);
    EXPECT_NEAR(j, static_cast<double>(inter) /
                       static_cast<double>(sa.size() + sb.size() - inter),
                1e-15);
  }
}

TEST(FluencyTest, IdentityAndUniformAreZero) {
  std::vector<TokenList> corpus{{"a", "b", "c"}, {"c", "a"}};
  auto lm = NGramLm::train(corpus, 2, 0.5);
  EXPECT_EQ(fluency_delta(lm, Tokens{"a", "c"}, Tokens{"a", "c"}), 0.0);

  std::vector<TokenList> uniform{{"a", "b", "<unk>"}};
  auto flat = NGramLm::train(uniform, 1, 1.0);
  EXPECT_NEAR(fluency_delta(flat, Tokens{"a"}, Tokens{"b", "q", "a"}), 0.0, 1e-12);
}

TEST(FluencyTest, HandBuiltBigram) {
  // Same model as the hand-computed LM test: p(a|<s>)=.4 p(b|<s>)=.4
  // p(b|a)=.6 p(a|b)=.5.
  std::vector<TokenList> corpus{{"a", "b"}, {"b", "a", "b"}};
  auto lm = NGramLm::train(corpus, 2, 1.0);
  const double pp_orig = std::pow(0.4 * 0.6 * 0.5, -1.0 / 3.0);  // a b a
  const double pp_aug = std::pow(0.4 * 0.5, -1.0 / 2.0);         // b a
  EXPECT_NEAR(fluency_delta(lm, Tokens{"a", "b", "a"}, Tokens{"b", "a"}),
              pp_orig - pp_aug, 1e-9);
}

TEST(ThresholdTest, Means) {
  std::vector<RecallScores> one{{"x", 0.3, -2.0}};
  auto t1 = compute_thresholds(one);
  EXPECT_EQ(t1.j_avg, 0.3);
  EXPECT_EQ(t1.f_avg, -2.0);

  std::vector<RecallScores> two{{"x", 0.2, -1.0}, {"y", 0.8, 3.0}};
  auto t2 = compute_thresholds(two);
  EXPECT_NEAR(t2.j_avg, 0.5, 1e-15);
  EXPECT_NEAR(t2.f_avg, 1.0, 1e-15);

  EXPECT_THROW(compute_thresholds(std::vector<RecallScores>{}), PipelineError);
}

TEST(ThresholdTest, MatchesNaiveSum) {
  Rng rng(8);
  for (int i = 0; i < 500; ++i) {
    std::vector<RecallScores> s;
    double sj = 0.0, sf = 0.0;
    const auto n = 1 + uniform_index(rng, 50);
    for (std::size_t k = 0; k < n; ++k) {
      s.push_back({"", uniform01(rng), uniform_real(rng, -20, 20)});
      sj += s.back().jaccard;
      sf += s.back().fluency;
    }
    auto t = compute_thresholds(s);
    EXPECT_NEAR(t.j_avg, sj / static_cast<double>(n), 1e-12);
    EXPECT_NEAR(t.f_avg, sf / static_cast<double>(n), 1e-12);
  }
}

TEST(RecallTest, StrictBoundaries) {
  const RecallThresholds t{0.5, 1.0};
  std::vector<RecallScores> c{{"eqj", 0.5, 0.0},
                              {"eqf", 0.9, 1.0},
                              {"yes", 0.51, 0.99},
                              {"lowj", 0.1, -5.0}};
  EXPECT_EQ(recall_samples(c, t), (std::vector<std::string>{"yes"}));
}

TEST(RecallTest, InvertedDirection) {
  const RecallThresholds t{0.5, 1.0};
  std::vector<RecallScores> c{{"a", 0.9, 2.0}, {"b", 0.9, 0.0}, {"c", 0.9, 1.0}};
  EXPECT_EQ(recall_samples(c, t, FluencyDirection::kInverted),
            (std::vector<std::string>{"a"}));
  EXPECT_EQ(recall_samples(c, t, FluencyDirection::kLower),
            (std::vector<std::string>{"b"}));
}

TEST(RecallTest, BruteForceEquivalenceAndMonotonicity) {
  Rng rng(12);
  for (int i = 0; i < 1000; ++i) {
    std::vector<RecallScores> c;
    const auto n = uniform_index(rng, 30);
    for (std::size_t k = 0; k < n; ++k) {
      // Coarse grid so ties with the thresholds actually happen.
      c.push_back({"c" + std::to_string(k),
                   static_cast<double>(uniform_index(rng, 5)) / 4.0,
                   static_cast<double>(uniform_index(rng, 7)) - 3.0});
    }
    const RecallThresholds t{static_cast<double>(uniform_index(rng, 5)) / 4.0,
                             static_cast<double>(uniform_index(rng, 7)) - 3.0};
    std::vector<std::string> expected;
    for (const auto& s : c) {
      if (s.jaccard > t.j_avg && s.fluency < t.f_avg) expected.push_back(s.id);
    }
    const auto got = recall_samples(c, t);
    EXPECT_EQ(got, expected);

    const RecallThresholds looser{t.j_avg - 0.25, t.f_avg + 1.0};
    const auto wider = recall_samples(c, looser);
    std::set<std::string> w(wider.begin(), wider.end());
    for (const auto& id : got) EXPECT_TRUE(w.contains(id));
  }
}

}  // namespace
}  // namespace augsel
