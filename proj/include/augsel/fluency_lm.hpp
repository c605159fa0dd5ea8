#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace augsel {

using TokenList = std::vector<std::string>;

/// Anything that can score a token sequence with a perplexity.
class PerplexityScorer {
 public:
  virtual ~PerplexityScorer() = default;
  /// exp(-(1/n) * sum_j ln p(w_j | context_j)). Throws InputError on an
  /// empty sequence.
  virtual double perplexity(std::span<const std::string> tokens) const = 0;
};

/// Add-k smoothed n-gram model over the training vocabulary plus <unk>.
///
/// Sentences are left-padded with order-1 start symbols and closed by an end
/// symbol, so no n-gram crosses a sentence boundary. The end symbol is a
/// boundary marker only; the outcome space of every conditional is
/// vocabulary + <unk>, which keeps the score of an n-token sentence a product
/// of exactly n factors.
class NGramLm final : public PerplexityScorer {
 public:
  static constexpr const char* kUnk = "<unk>";

  /// Throws InputError on an empty corpus, k <= 0 or order outside 1..3.
  static NGramLm train(std::span<const TokenList> corpus, int order, double k);

  /// One sentence per line, tokenized with the default policy.
  static NGramLm train_from_file(const std::filesystem::path& path, int order,
                                 double k);

  int order() const { return order_; }
  double k() const { return k_; }
  /// Size of the outcome space: |vocabulary| + 1 for <unk>.
  std::size_t outcomes() const { return vocab_.size() + 1; }
  bool in_vocabulary(const std::string& token) const {
    return vocab_.contains(token);
  }

  /// p(token | context). Only the last order-1 context entries are used;
  /// shorter contexts are left-padded with start symbols, and "<s>" in the
  /// context names the start symbol. Out-of-vocabulary tokens (in either
  /// position) map to <unk>.
  double probability(std::span<const std::string> context,
                     const std::string& token) const;

  /// Every context that occurred in training, for exhaustive checks.
  std::vector<std::vector<std::string>> observed_contexts() const;
  /// Every outcome token (vocabulary and <unk>).
  std::vector<std::string> outcome_tokens() const;

  double perplexity(std::span<const std::string> tokens) const override;
  /// Mean log probability (1/n) sum_j ln p_j; perplexity = exp(-this).
  double mean_log_probability(std::span<const std::string> tokens) const;

 private:
  using Id = std::uint32_t;
  static constexpr Id kUnkId = 0;
  static constexpr Id kStartId = 1;

  struct ContextCounts {
    std::unordered_map<Id, std::uint64_t> next;
    std::uint64_t total = 0;
  };

  Id lookup(const std::string& token) const;
  std::string context_key(std::span<const Id> ids) const;
  double probability_ids(std::span<const Id> context, Id token) const;

  int order_ = 2;
  double k_ = 0.1;
  std::unordered_map<std::string, Id> vocab_;
  std::vector<std::string> names_;  // id -> token, including specials
  std::unordered_map<std::string, ContextCounts> counts_;
};

}  // namespace augsel
