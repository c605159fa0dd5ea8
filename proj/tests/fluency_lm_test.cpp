#include "augsel/fluency_lm.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include "augsel/error.hpp"
#include "synthetic.hpp"

namespace augsel {
namespace {

TokenList toks(std::initializer_list<const char*> words) {
  return TokenList(words.begin(), words.end());
}

// Straightforward add-k counter keyed by explicit context vectors.
class NaiveLm {
 public:
  NaiveLm(const std::vector<TokenList>& corpus, int order, double k)
      : order_(order), k_(k) {
    for (const auto& s : corpus) vocab_.insert(s.begin(), s.end());
    vocab_.erase("<unk>");
    for (const auto& s : corpus) {
      if (s.empty()) continue;
      TokenList padded(static_cast<std::size_t>(order - 1), "<s>");
      for (const auto& t : s) padded.push_back(map(t));
      for (std::size_t j = static_cast<std::size_t>(order - 1); j < padded.size(); ++j) {
        TokenList ctx(padded.begin() + static_cast<long>(j) - (order - 1),
                      padded.begin() + static_cast<long>(j));
        ++counts_[ctx][padded[j]];
        ++totals_[ctx];
      }
    }
  }

  double prob(const TokenList& ctx, const std::string& tok) const {
    const double v = static_cast<double>(vocab_.size() + 1);
    TokenList c;
    for (const auto& t : ctx) c.push_back(t == "<s>" ? t : map(t));
    auto it = counts_.find(c);
    if (it == counts_.end()) return 1.0 / v;
    auto hit = it->second.find(map(tok));
    const double n = hit == it->second.end() ? 0.0 : hit->second;
    return (n + k_) / (totals_.at(c) + k_ * v);
  }

  double perplexity(const TokenList& s) const {
    TokenList padded(static_cast<std::size_t>(order_ - 1), "<s>");
    padded.insert(padded.end(), s.begin(), s.end());
    double log_sum = 0.0;
    for (std::size_t j = static_cast<std::size_t>(order_ - 1); j < padded.size(); ++j) {
      TokenList ctx(padded.begin() + static_cast<long>(j) - (order_ - 1),
                    padded.begin() + static_cast<long>(j));
      log_sum += std::log(prob(ctx, padded[j]));
    }
    return std::exp(-log_sum / static_cast<double>(s.size()));
  }

 private:
  std::string map(const std::string& t) const {
    return vocab_.contains(t) ? t : "<unk>";
  }

  int order_;
  double k_;
  std::set<std::string> vocab_;
  std::map<TokenList, std::map<std::string, double>> counts_;
  std::map<TokenList, double> totals_;
};

TEST(NGramLmTest, HandComputedBigram) {
  std::vector<TokenList> corpus{toks({"a", "b"})};
  auto lm = NGramLm::train(corpus, 2, 1.0);
  EXPECT_EQ(lm.outcomes(), 3u);
  EXPECT_NEAR(lm.probability(toks({"a"}), "b"), 0.5, 1e-12);
}

TEST(NGramLmTest, UnseenContextIsUniform) {
  std::vector<TokenList> corpus{toks({"a", "b"})};
  auto lm = NGramLm::train(corpus, 2, 0.3);
  // "b" never precedes anything and "zzz" is out of vocabulary.
  for (const char* next : {"a", "b", "zzz"}) {
    EXPECT_NEAR(lm.probability(toks({"b"}), next), 1.0 / 3.0, 1e-12);
  }
}

TEST(NGramLmTest, HandComputedSentencePerplexity) {
  // counts: <s>->a 1, <s>->b 1, a->b 2, b->a 1; outcomes {a, b, <unk>}.
  // p(a|<s>) = 2/5, p(b|a) = 3/5, p(a|b) = 2/4.
  std::vector<TokenList> corpus{toks({"a", "b"}), toks({"b", "a", "b"})};
  auto lm = NGramLm::train(corpus, 2, 1.0);
  const auto s = toks({"a", "b", "a"});
  EXPECT_NEAR(lm.perplexity(s), 2.0274006651911334, 1e-9);
  EXPECT_NEAR(lm.perplexity(s), std::pow(0.4 * 0.6 * 0.5, -1.0 / 3.0), 1e-9);
}

TEST(NGramLmTest, UniformModelPerplexityIsOutcomeCount) {
  std::vector<TokenList> corpus{toks({"a", "b", "<unk>"})};
  auto lm = NGramLm::train(corpus, 1, 1.0);
  ASSERT_EQ(lm.outcomes(), 3u);
  EXPECT_NEAR(lm.perplexity(toks({"a"})), 3.0, 1e-9);
  EXPECT_NEAR(lm.perplexity(toks({"b", "q", "a", "a"})), 3.0, 1e-9);
}

TEST(NGramLmTest, NearCertaintyGivesPerplexityOne) {
  std::vector<TokenList> corpus{toks({"a"})};
  auto lm = NGramLm::train(corpus, 1, 1e-12);
  EXPECT_NEAR(lm.perplexity(toks({"a"})), 1.0, 1e-9);
}

TEST(NGramLmTest, LongSentenceDoesNotUnderflow) {
  std::vector<TokenList> corpus{toks({"a", "b", "c"})};
  auto lm = NGramLm::train(corpus, 2, 0.1);
  TokenList s(5000, "zzz");
  const double pp = lm.perplexity(s);
  EXPECT_TRUE(std::isfinite(pp));
  EXPECT_NEAR(std::log(pp) + lm.mean_log_probability(s), 0.0, 1e-9);
}

TEST(NGramLmTest, DecreasingAProbabilityRaisesPerplexity) {
  // Same vocabulary; B adds an a->d bigram, lowering p(b|a) only.
  std::vector<TokenList> a{toks({"a", "b"}), toks({"c", "d"})};
  std::vector<TokenList> b{toks({"a", "b"}), toks({"c", "d", "a", "d"})};
  auto lm_a = NGramLm::train(a, 2, 0.5);
  auto lm_b = NGramLm::train(b, 2, 0.5);
  const auto s = toks({"a", "b"});
  ASSERT_EQ(lm_a.probability(TokenList{}, "a"), lm_b.probability(TokenList{}, "a"));
  ASSERT_GT(lm_a.probability(toks({"a"}), "b"), lm_b.probability(toks({"a"}), "b"));
  EXPECT_GT(lm_b.perplexity(s), lm_a.perplexity(s));
}

TEST(NGramLmTest, Errors) {
  std::vector<TokenList> empty;
  EXPECT_THROW(NGramLm::train(empty, 2, 0.1), InputError);
  std::vector<TokenList> blank{TokenList{}};
  EXPECT_THROW(NGramLm::train(blank, 2, 0.1), InputError);
  std::vector<TokenList> corpus{toks({"a"})};
  EXPECT_THROW(NGramLm::train(corpus, 2, 0.0), InputError);
  EXPECT_THROW(NGramLm::train(corpus, 4, 0.1), InputError);
  auto lm = NGramLm::train(corpus, 2, 0.1);
  EXPECT_THROW(lm.perplexity(TokenList{}), InputError);
}

TEST(NGramLmTest, TrainFromFile) {
  const auto path = std::filesystem::temp_directory_path() /
                    ("augsel_lm_" + std::to_string(::getpid()) + ".txt");
  std::ofstream(path) << "A b.\n\nb a\n";
  auto lm = NGramLm::train_from_file(path, 2, 1.0);
  std::filesystem::remove(path);
  EXPECT_EQ(lm.outcomes(), 4u);  // a, b, ".", <unk>
  EXPECT_THROW(NGramLm::train_from_file("/nonexistent/lm.txt", 2, 1.0), InputError);
}

// Fuzz: rows sum to one, probabilities in (0, 1], perplexity agrees with
// the naive model and with the log identity.
TEST(NGramLmTest, FuzzAgainstNaiveModel) {
  Rng rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int order = 1 + static_cast<int>(uniform_index(rng, 3));
    const double k = uniform_real(rng, 0.01, 2.0);
    std::vector<TokenList> corpus;
    const auto n = 1 + uniform_index(rng, 12);
    for (std::size_t i = 0; i < n; ++i) {
      corpus.push_back(testing::random_tokens(rng, 1, 8, 10));
    }
    auto lm = NGramLm::train(corpus, order, k);
    NaiveLm naive(corpus, order, k);

    auto contexts = lm.observed_contexts();
    contexts.push_back(TokenList(static_cast<std::size_t>(order - 1), "never"));
    for (const auto& ctx : contexts) {
      double sum = 0.0;
      for (const auto& tok : lm.outcome_tokens()) {
        const double p = lm.probability(ctx, tok);
        EXPECT_GT(p, 0.0);
        EXPECT_LE(p, 1.0);
        EXPECT_NEAR(p, naive.prob(ctx, tok), 1e-12);
        sum += p;
      }
      EXPECT_NEAR(sum, 1.0, 1e-9);
    }

    for (int s = 0; s < 20; ++s) {
      const auto sentence = testing::random_tokens(rng, 1, 15, 14);
      const double pp = lm.perplexity(sentence);
      EXPECT_GE(pp, 1.0);
      EXPECT_NEAR(pp, naive.perplexity(sentence), 1e-9 * pp);
      EXPECT_NEAR(std::log(pp) + lm.mean_log_probability(sentence), 0.0, 1e-9);
    }
  }
}

}  // namespace
}  // namespace augsel
