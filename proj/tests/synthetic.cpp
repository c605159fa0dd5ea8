#include "synthetic.hpp"

#include <algorithm>
#include <unordered_set>

namespace augsel::testing {

namespace {

const std::vector<std::string>& fillers() {
  static const std::vector<std::string> words = {
      "table", "window", "river", "garden", "street", "lower", "morning",
      "evening", "station", "bridge", "market", "office", "kitchen", "letter",
      "train", "ticket", "camera", "pencil", "bottle", "chair", "village",
      "harbor", "island", "valley", "forest", "mountain", "desert", "meadow",
      "corner", "hallway", "ladder", "blanket", "basket", "candle", "mirror",
      "wallet", "jacket", "helmet", "engine", "signal", "number", "picture",
      "history", "season", "weekend", "journey", "package", "notice", "record",
      "answer", "question", "minute", "second", "moment", "dinner", "lunch",
      "breakfast", "teacher", "student", "neighbor", "cousin", "driver",
      "farmer", "painter", "sailor", "doctor", "captain", "stranger",
      "visitor", "author", "walked", "opened", "closed", "carried", "moved",
      "placed", "watched", "crossed", "followed", "noticed", "counted",
      "painted", "turned", "lifted", "pulled", "pushed", "waited", "arrived",
      "left", "returned", "across", "behind", "beside", "toward", "under",
      "around", "through", "near", "along", "inside"};
  return words;
}

}  // namespace

const std::vector<std::string>& positive_keywords() {
  static const std::vector<std::string> words = {
      "wonderful", "delightful", "superb", "marvelous", "splendid",
      "glorious", "charming", "brilliant", "joyful", "excellent"};
  return words;
}

const std::vector<std::string>& negative_keywords() {
  static const std::vector<std::string> words = {
      "dreadful", "horrible", "miserable", "awful", "terrible",
      "wretched", "dismal", "atrocious", "tedious", "lousy"};
  return words;
}

std::string keyword_lexicon_tsv() {
  // Fillers form synonym groups of three; keywords are synonyms within
  // their class.
  std::string out;
  auto line = [&](const std::string& word, const std::vector<std::string>& group) {
    out += word + "\t";
    bool first = true;
    for (const auto& g : group) {
      if (g == word) continue;
      out += (first ? "" : ",") + g;
      first = false;
    }
    out += "\n";
  };
  const auto& f = fillers();
  for (std::size_t g = 0; g + 2 < f.size(); g += 3) {
    const std::vector<std::string> group(f.begin() + static_cast<std::ptrdiff_t>(g),
                                         f.begin() + static_cast<std::ptrdiff_t>(g + 3));
    for (const auto& w : group) line(w, group);
  }
  for (const auto* keys : {&positive_keywords(), &negative_keywords()}) {
    for (const auto& w : *keys) line(w, *keys);
  }
  return out;
}

KeywordCorpus make_keyword_corpus(std::size_t n_train, std::size_t n_valid,
                                  std::uint64_t seed) {
  Rng rng = StreamKey(seed).add("keyword-corpus").rng();
  auto sentence = [&](bool positive) {
    const auto& keys = positive ? positive_keywords() : negative_keywords();
    std::vector<std::string> words;
    const std::size_t n = 6 + uniform_index(rng, 7);
    for (std::size_t i = 0; i < n; ++i) {
      words.push_back(fillers()[uniform_index(rng, fillers().size())]);
    }
    const std::size_t k = 1 + uniform_index(rng, 2);
    for (std::size_t i = 0; i < k; ++i) {
      auto pos = uniform_index(rng, words.size() + 1);
      words.insert(words.begin() + static_cast<std::ptrdiff_t>(pos),
                   keys[uniform_index(rng, keys.size())]);
    }
    return join_tokens(words);
  };
  auto build = [&](std::size_t n, const std::string& prefix) {
    Dataset d;
    for (std::size_t i = 0; i < n; ++i) {
      const bool positive = i % 2 == 0;
      d.examples.push_back({prefix + std::to_string(i), sentence(positive),
                            positive ? "pos" : "neg"});
    }
    d.labels = LabelSpace({"neg", "pos"});
    return d;
  };
  KeywordCorpus out;
  out.train = build(n_train, "train-");
  out.validation = build(n_valid, "valid-");

  out.lexicon = SynonymLexicon::parse(keyword_lexicon_tsv(), "<keyword-lexicon>");
  return out;
}

std::vector<AugmentedExample> make_flipped_augments(
    const AugmentedDataset& source, std::size_t count, std::uint64_t seed) {
  Rng rng = StreamKey(seed).add("flip").rng();
  const std::unordered_set<std::string> pos(positive_keywords().begin(),
                                            positive_keywords().end());
  const std::unordered_set<std::string> neg(negative_keywords().begin(),
                                            negative_keywords().end());
  std::vector<AugmentedExample> out;
  std::size_t attempts = 0;
  while (out.size() < count && attempts++ < count * 100) {
    const auto& base = source.examples[uniform_index(rng, source.size())];
    auto tokens = tokenize(base.text);
    bool changed = false;
    for (auto& t : tokens) {
      if (pos.contains(t)) {
        t = negative_keywords()[uniform_index(rng, negative_keywords().size())];
        changed = true;
      } else if (neg.contains(t)) {
        t = positive_keywords()[uniform_index(rng, positive_keywords().size())];
        changed = true;
      }
    }
    if (!changed) continue;  // RD may have dropped every keyword
    AugmentedExample flipped = base;
    flipped.id = base.origin_id + "#flip-" + std::to_string(out.size());
    flipped.text = join_tokens(tokens);
    out.push_back(std::move(flipped));
  }
  return out;
}

std::string random_sentence(Rng& rng, std::size_t min_words,
                            std::size_t max_words) {
  static const std::vector<std::string> words = {
      "The", "cat", "SAT", "on", "a", "mat", "dog's", "Ran", "quickly",
      "über", "naïve", "café", "don't", "well-known", "x", "42", "end.",
      "(aside)", "hello,", "world!", "what?", "\"quoted\"", "a/b", "日本",
      "emoji🙂", "semi;colon", "TAB"};
  static const std::vector<std::string> seps = {" ", "  ", "\t", " \n "};
  const std::size_t n = min_words + uniform_index(rng, max_words - min_words + 1);
  std::string out;
  for (std::size_t i = 0; i < n; ++i) {
    if (i) out += seps[uniform_index(rng, seps.size())];
    out += words[uniform_index(rng, words.size())];
  }
  return out;
}

std::vector<std::string> random_tokens(Rng& rng, std::size_t min_len,
                                       std::size_t max_len, std::size_t vocab) {
  const std::size_t n = min_len + uniform_index(rng, max_len - min_len + 1);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back("w" + std::to_string(uniform_index(rng, vocab)));
  }
  return out;
}

std::string random_utf8(Rng& rng, std::size_t max_code_points) {
  std::string out;
  const std::size_t n = 1 + uniform_index(rng, max_code_points);
  for (std::size_t i = 0; i < n; ++i) {
    std::uint32_t cp = 0;
    switch (uniform_index(rng, 4)) {
      case 0: cp = 0x20 + static_cast<std::uint32_t>(uniform_index(rng, 0x5f)); break;
      case 1: cp = 0xa0 + static_cast<std::uint32_t>(uniform_index(rng, 0x760)); break;
      case 2:
        do {
          cp = 0x800 + static_cast<std::uint32_t>(uniform_index(rng, 0xf800));
        } while (cp >= 0xd800 && cp <= 0xdfff);
        break;
      default: cp = 0x10000 + static_cast<std::uint32_t>(uniform_index(rng, 0x100000)); break;
    }
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xc0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xe0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    } else {
      out.push_back(static_cast<char>(0xf0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3f)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3f)));
    }
  }
  return out;
}

}  // namespace augsel::testing
