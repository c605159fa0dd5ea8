#include "augsel/augment.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "augsel/error.hpp"

namespace augsel {

extern const char kBundledLexicon[];
extern const char kBundledStopwords[];

namespace {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string single_token(std::string_view raw, const std::string& ctx) {
  auto tokens = tokenize(raw);
  if (tokens.size() != 1) {
    throw InputError(ctx + "entry \"" + std::string(raw) +
                     "\" must be exactly one token");
  }
  return tokens.front();
}

StopwordSet parse_stopwords(std::string_view contents) {
  StopwordSet out;
  std::istringstream in{std::string(contents)};
  std::string line;
  while (std::getline(in, line)) {
    for (auto& tok : tokenize(line)) out.insert(std::move(tok));
  }
  return out;
}

std::size_t change_count(double alpha, std::size_t n) {
  return static_cast<std::size_t>(std::ceil(alpha * static_cast<double>(n)));
}

bool eligible(const std::string& token, const SynonymLexicon& lexicon,
              const StopwordSet& stopwords) {
  return !stopwords.contains(token) && lexicon.synonyms(token) != nullptr;
}

AugmentedExample make_augment(const LabeledExample& origin, Strategy strategy,
                              const std::vector<std::string>& tokens) {
  AugmentedExample out;
  out.origin_id = origin.id;
  out.strategy = strategy;
  out.text = join_tokens(tokens);
  out.label = origin.label;
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

SynonymLexicon SynonymLexicon::parse(std::string_view contents,
                                     std::string_view source) {
  SynonymLexicon lex;
  std::istringstream in{std::string(contents)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    const std::string ctx =
        std::string(source) + ":" + std::to_string(lineno) + ": ";
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw InputError(ctx + "expected word<TAB>syn1,syn2,...");
    }
    std::string word = single_token(std::string_view(line).substr(0, tab), ctx);
    std::vector<std::string> synonyms;
    std::string_view rest = std::string_view(line).substr(tab + 1);
    while (!rest.empty()) {
      auto comma = rest.find(',');
      std::string_view item = rest.substr(0, comma);
      if (!tokenize(item).empty()) synonyms.push_back(single_token(item, ctx));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    lex.add(word, synonyms);
  }
  return lex;
}

SynonymLexicon SynonymLexicon::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.string());
}

const SynonymLexicon& SynonymLexicon::bundled() {
  static const SynonymLexicon lex = parse(kBundledLexicon, "<bundled>");
  return lex;
}

void SynonymLexicon::add(const std::string& word,
                         const std::vector<std::string>& synonyms) {
  auto& list = entries_[word];
  for (const auto& syn : synonyms) {
    if (syn == word) continue;
    if (std::find(list.begin(), list.end(), syn) == list.end()) {
      list.push_back(syn);
    }
  }
  if (list.empty()) entries_.erase(word);
}

const std::vector<std::string>* SynonymLexicon::synonyms(
    std::string_view word) const {
  auto it = entries_.find(std::string(word));
  return it == entries_.end() ? nullptr : &it->second;
}

StopwordSet load_stopwords(const std::filesystem::path& path) {
  return parse_stopwords(read_file(path));
}

const StopwordSet& bundled_stopwords() {
  static const StopwordSet words = parse_stopwords(kBundledStopwords);
  return words;
}

void EdaParams::validate() const {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw InputError("eda alpha must be in (0, 1], got " +
                     std::to_string(alpha));
  }
  if (naug_per_op < 1) {
    throw InputError("eda naug_per_op must be >= 1, got " +
                     std::to_string(naug_per_op));
  }
}

// ---------------------------------------------------------------------------

AugmentedExample synonym_replace(const LabeledExample& example,
                                 const SynonymLexicon& lexicon,
                                 const EdaParams& params, Rng& rng) {
  auto tokens = tokenize(example.text);
  std::vector<std::size_t> positions;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (eligible(tokens[i], lexicon, params.stopwords)) positions.push_back(i);
  }
  shuffle(positions, rng);
  const std::size_t n =
      std::min(change_count(params.alpha, tokens.size()), positions.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto& token = tokens[positions[k]];
    const auto& syns = *lexicon.synonyms(token);
    token = syns[uniform_index(rng, syns.size())];
  }
  return make_augment(example, Strategy::kSR, tokens);
}

AugmentedExample random_insert(const LabeledExample& example,
                               const SynonymLexicon& lexicon,
                               const EdaParams& params, Rng& rng) {
  auto tokens = tokenize(example.text);
  const std::size_t n = change_count(params.alpha, tokens.size());
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<const std::vector<std::string>*> sources;
    for (const auto& t : tokens) {
      if (eligible(t, lexicon, params.stopwords)) {
        sources.push_back(lexicon.synonyms(t));
      }
    }
    if (sources.empty()) break;
    const auto& syns = *sources[uniform_index(rng, sources.size())];
    std::string inserted = syns[uniform_index(rng, syns.size())];
    auto pos = uniform_index(rng, tokens.size() + 1);
    tokens.insert(tokens.begin() + static_cast<std::ptrdiff_t>(pos),
                  std::move(inserted));
  }
  return make_augment(example, Strategy::kRI, tokens);
}

AugmentedExample random_swap(const LabeledExample& example,
                             const EdaParams& params, Rng& rng) {
  auto tokens = tokenize(example.text);
  if (tokens.size() >= 2) {
    const std::size_t n = change_count(params.alpha, tokens.size());
    for (std::size_t k = 0; k < n; ++k) {
      auto i = uniform_index(rng, tokens.size());
      auto j = uniform_index(rng, tokens.size() - 1);
      if (j >= i) ++j;
      std::swap(tokens[i], tokens[j]);
    }
  }
  return make_augment(example, Strategy::kRS, tokens);
}

AugmentedExample random_delete(const LabeledExample& example,
                               const EdaParams& params, Rng& rng) {
  auto tokens = tokenize(example.text);
  std::vector<std::string> kept;
  for (const auto& t : tokens) {
    if (uniform01(rng) >= params.alpha) kept.push_back(t);
  }
  if (kept.empty() && !tokens.empty()) {
    kept.push_back(tokens[uniform_index(rng, tokens.size())]);
  }
  return make_augment(example, Strategy::kRD, kept);
}

Rng eda_stream(std::uint64_t seed, std::string_view origin_id,
               Strategy strategy, int copy) {
  return StreamKey(seed)
      .add("eda")
      .add(origin_id)
      .add(strategy_name(strategy))
      .add(static_cast<std::uint64_t>(copy))
      .rng();
}

AugmentedDataset run_eda(const Dataset& dataset, const SynonymLexicon& lexicon,
                         const EdaParams& params) {
  params.validate();
  if (dataset.examples.empty()) {
    throw InputError("cannot augment an empty dataset");
  }
  AugmentedDataset out;
  out.examples.reserve(dataset.size() * 4 *
                       static_cast<std::size_t>(params.naug_per_op));
  for (const auto& ex : dataset.examples) {
    for (Strategy s : kEdaStrategies) {
      for (int copy = 0; copy < params.naug_per_op; ++copy) {
        Rng rng = eda_stream(params.seed, ex.id, s, copy);
        AugmentedExample aug;
        switch (s) {
          case Strategy::kSR:
            aug = synonym_replace(ex, lexicon, params, rng);
            break;
          case Strategy::kRI:
            aug = random_insert(ex, lexicon, params, rng);
            break;
          case Strategy::kRS:
            aug = random_swap(ex, params, rng);
            break;
          default:
            aug = random_delete(ex, params, rng);
            break;
        }
        std::string tag(strategy_name(s));
        for (auto& c : tag) c = static_cast<char>(std::tolower(c));
        aug.id = ex.id + "#" + tag + "-" + std::to_string(copy);
        out.examples.push_back(std::move(aug));
      }
    }
  }
  return out;
}

}  // namespace augsel
