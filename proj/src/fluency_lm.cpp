#include "augsel/fluency_lm.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "augsel/corpus.hpp"
#include "augsel/error.hpp"

namespace augsel {

NGramLm NGramLm::train(std::span<const TokenList> corpus, int order, double k) {
  if (order < 1 || order > 3) {
    throw InputError("LM order must be 1, 2 or 3, got " + std::to_string(order));
  }
  if (!(k > 0.0)) throw InputError("LM smoothing constant k must be > 0");

  NGramLm lm;
  lm.order_ = order;
  lm.k_ = k;
  lm.names_ = {kUnk, "<s>"};
  std::size_t tokens_seen = 0;
  for (const auto& sentence : corpus) {
    for (const auto& token : sentence) {
      if (token == kUnk) continue;
      if (lm.vocab_.emplace(token, static_cast<Id>(lm.names_.size())).second) {
        lm.names_.push_back(token);
      }
    }
  }

  const std::size_t width = static_cast<std::size_t>(order - 1);
  std::vector<Id> ids;
  for (const auto& sentence : corpus) {
    if (sentence.empty()) continue;
    ids.assign(width, kStartId);
    for (const auto& token : sentence) ids.push_back(lm.lookup(token));
    for (std::size_t j = width; j < ids.size(); ++j) {
      auto& row = lm.counts_[lm.context_key(
          std::span<const Id>(ids.data() + j - width, width))];
      ++row.next[ids[j]];
      ++row.total;
      ++tokens_seen;
    }
  }
  if (tokens_seen == 0) throw InputError("LM training corpus is empty");
  return lm;
}

NGramLm NGramLm::train_from_file(const std::filesystem::path& path, int order,
                                 double k) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::vector<TokenList> corpus;
  std::string line;
  while (std::getline(in, line)) {
    auto tokens = tokenize(line);
    if (!tokens.empty()) corpus.push_back(std::move(tokens));
  }
  try {
    return train(corpus, order, k);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

NGramLm::Id NGramLm::lookup(const std::string& token) const {
  auto it = vocab_.find(token);
  return it == vocab_.end() ? kUnkId : it->second;
}

std::string NGramLm::context_key(std::span<const Id> ids) const {
  std::string key(ids.size() * sizeof(Id), '\0');
  if (!ids.empty()) std::memcpy(key.data(), ids.data(), key.size());
  return key;
}

double NGramLm::probability_ids(std::span<const Id> context, Id token) const {
  const double denom_smoothing = k_ * static_cast<double>(outcomes());
  auto it = counts_.find(context_key(context));
  if (it == counts_.end()) return k_ / denom_smoothing;
  const auto& row = it->second;
  auto hit = row.next.find(token);
  const double count = hit == row.next.end() ? 0.0 : static_cast<double>(hit->second);
  return (count + k_) / (static_cast<double>(row.total) + denom_smoothing);
}

double NGramLm::probability(std::span<const std::string> context,
                            const std::string& token) const {
  const std::size_t width = static_cast<std::size_t>(order_ - 1);
  std::vector<Id> ids(width, kStartId);
  const std::size_t take = std::min(width, context.size());
  for (std::size_t i = 0; i < take; ++i) {
    const auto& word = context[context.size() - take + i];
    ids[width - take + i] = word == names_[kStartId] ? kStartId : lookup(word);
  }
  return probability_ids(ids, lookup(token));
}

std::vector<std::vector<std::string>> NGramLm::observed_contexts() const {
  std::vector<std::vector<std::string>> out;
  for (const auto& [key, row] : counts_) {
    std::vector<Id> ids(key.size() / sizeof(Id));
    if (!ids.empty()) std::memcpy(ids.data(), key.data(), key.size());
    std::vector<std::string> ctx;
    for (Id id : ids) ctx.push_back(names_[id]);
    out.push_back(std::move(ctx));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::string> NGramLm::outcome_tokens() const {
  std::vector<std::string> out;
  out.push_back(kUnk);
  for (std::size_t id = 2; id < names_.size(); ++id) out.push_back(names_[id]);
  return out;
}

double NGramLm::mean_log_probability(std::span<const std::string> tokens) const {
  if (tokens.empty()) {
    throw InputError("perplexity of an empty token sequence is undefined");
  }
  const std::size_t width = static_cast<std::size_t>(order_ - 1);
  std::vector<Id> ids(width, kStartId);
  for (const auto& t : tokens) ids.push_back(lookup(t));
  double sum = 0.0;
  for (std::size_t j = width; j < ids.size(); ++j) {
    sum += std::log(probability_ids(
        std::span<const Id>(ids.data() + j - width, width), ids[j]));
  }
  return sum / static_cast<double>(tokens.size());
}

double NGramLm::perplexity(std::span<const std::string> tokens) const {
  return std::exp(-mean_log_probability(tokens));
}

}  // namespace augsel
