#pragma once

// Test-only generators: a keyword-separable two-class corpus and fuzz inputs.

#include <cstdint>
#include <string>
#include <vector>

#include "augsel/augment.hpp"
#include "augsel/corpus.hpp"
#include "augsel/random.hpp"

namespace augsel::testing {

struct KeywordCorpus {
  Dataset train;
  Dataset validation;
  SynonymLexicon lexicon;
};

/// Sentences of 6-12 neutral filler words with one or two class keywords
/// ("pos" or "neg") at random positions. Labels are balanced.
KeywordCorpus make_keyword_corpus(std::size_t n_train, std::size_t n_valid,
                                  std::uint64_t seed);

/// The corpus lexicon in `word<TAB>syn1,syn2` form.
std::string keyword_lexicon_tsv();

const std::vector<std::string>& positive_keywords();
const std::vector<std::string>& negative_keywords();

/// Augments whose class keywords were swapped for the other class's
/// keywords while the origin link and inherited label stay: the label no
/// longer matches the content. Each is derived from a random augment of
/// `source` and keeps its strategy tag. Ids end in "#flip-<n>".
std::vector<AugmentedExample> make_flipped_augments(
    const AugmentedDataset& source, std::size_t count, std::uint64_t seed);

/// Random sentence over a small mixed vocabulary with punctuation, mixed
/// case and occasional UTF-8 words.
std::string random_sentence(Rng& rng, std::size_t min_words,
                            std::size_t max_words);

/// Random tokens drawn from a vocabulary of `vocab` synthetic words.
std::vector<std::string> random_tokens(Rng& rng, std::size_t min_len,
                                       std::size_t max_len, std::size_t vocab);

/// Random valid UTF-8 string with 1-4 byte code points, no control chars.
std::string random_utf8(Rng& rng, std::size_t max_code_points);

}  // namespace augsel::testing
