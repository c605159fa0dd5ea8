#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "augsel/corpus.hpp"
#include "augsel/random.hpp"

namespace augsel {

/// token -> synonyms. Entries never map to an empty list and a token is never
/// listed as its own synonym.
class SynonymLexicon {
 public:
  SynonymLexicon() = default;

  /// Parses `word<TAB>syn1,syn2,...` lines. Blank lines and lines starting
  /// with '#' are skipped. Words and synonyms are normalized with the default
  /// tokenizer policy; multi-token entries are rejected.
  static SynonymLexicon parse(std::string_view contents,
                              std::string_view source = "<lexicon>");
  static SynonymLexicon load(const std::filesystem::path& path);
  /// Small English lexicon shipped with the library.
  static const SynonymLexicon& bundled();

  void add(const std::string& word, const std::vector<std::string>& synonyms);

  const std::vector<std::string>* synonyms(std::string_view word) const;
  bool empty() const { return entries_.empty(); }
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, std::vector<std::string>> entries_;
};

using StopwordSet = std::unordered_set<std::string>;

/// One word per line.
StopwordSet load_stopwords(const std::filesystem::path& path);
const StopwordSet& bundled_stopwords();

struct EdaParams {
  double alpha = 0.1;
  int naug_per_op = 1;
  std::uint64_t seed = 1;
  /// Tokens skipped by SR and RI.
  StopwordSet stopwords = bundled_stopwords();

  /// Throws InputError unless 0 < alpha <= 1 and naug_per_op >= 1.
  void validate() const;
};

AugmentedExample synonym_replace(const LabeledExample& example,
                                 const SynonymLexicon& lexicon,
                                 const EdaParams& params, Rng& rng);
AugmentedExample random_insert(const LabeledExample& example,
                               const SynonymLexicon& lexicon,
                               const EdaParams& params, Rng& rng);
AugmentedExample random_swap(const LabeledExample& example,
                             const EdaParams& params, Rng& rng);
AugmentedExample random_delete(const LabeledExample& example,
                               const EdaParams& params, Rng& rng);

/// The RNG stream used for copy `copy` of `strategy` applied to `origin_id`.
Rng eda_stream(std::uint64_t seed, std::string_view origin_id,
               Strategy strategy, int copy);

/// Applies SR, RI, RS and RD naug_per_op times to every example, yielding
/// 4 * naug_per_op * |dataset| records ordered by (example, op, copy).
/// Ids are "<origin_id>#<op>-<copy>".
AugmentedDataset run_eda(const Dataset& dataset, const SynonymLexicon& lexicon,
                         const EdaParams& params);

}  // namespace augsel
