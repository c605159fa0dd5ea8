#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace augsel {

// ---------------------------------------------------------------------------
// Tokenization

struct TokenizerPolicy {
  bool lowercase = true;
  bool split_punctuation = true;
};

/// Splits on whitespace, lowercases ASCII letters and emits every ASCII
/// punctuation character as its own token. Bytes >= 0x80 are kept verbatim,
/// so UTF-8 sequences are never split.
std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerPolicy& policy = {});

std::string join_tokens(const std::vector<std::string>& tokens);

// ---------------------------------------------------------------------------
// Records

enum class Strategy { kSR, kRI, kRS, kRD, kExternal };

inline constexpr Strategy kEdaStrategies[] = {Strategy::kSR, Strategy::kRI,
                                              Strategy::kRS, Strategy::kRD};
inline constexpr Strategy kAllStrategies[] = {
    Strategy::kSR, Strategy::kRI, Strategy::kRS, Strategy::kRD,
    Strategy::kExternal};

std::string_view strategy_name(Strategy s);
std::optional<Strategy> parse_strategy(std::string_view name);

struct LabeledExample {
  std::string id;
  std::string text;
  std::string label;

  bool operator==(const LabeledExample&) const = default;
};

struct AugmentedExample {
  std::string id;
  std::string origin_id;
  Strategy strategy = Strategy::kExternal;
  std::string text;
  std::string label;

  bool operator==(const AugmentedExample&) const = default;
};

/// Ordered set of class labels with a label -> index bijection.
class LabelSpace {
 public:
  LabelSpace() = default;

  /// Throws InputError when fewer than two labels or duplicates are given.
  explicit LabelSpace(std::vector<std::string> labels);

  /// Lexicographically sorted set of the observed labels.
  static LabelSpace from_observed(const std::vector<std::string>& labels);

  std::size_t size() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& label(std::size_t index) const { return labels_.at(index); }
  std::optional<std::size_t> index_of(std::string_view label) const;
  bool contains(std::string_view label) const {
    return index_of(label).has_value();
  }

  bool operator==(const LabelSpace& other) const {
    return labels_ == other.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

struct Dataset {
  std::vector<LabeledExample> examples;
  LabelSpace labels;

  std::size_t size() const { return examples.size(); }
  const LabeledExample* find(std::string_view id) const;

  bool operator==(const Dataset& other) const {
    return examples == other.examples && labels == other.labels;
  }
};

struct AugmentedDataset {
  std::vector<AugmentedExample> examples;

  std::size_t size() const { return examples.size(); }
  bool operator==(const AugmentedDataset&) const = default;
};

// ---------------------------------------------------------------------------
// File I/O

enum class Format { kJsonl, kTsv };

/// ".tsv" selects TSV, everything else JSON Lines.
Format format_from_path(const std::filesystem::path& path);
std::optional<Format> parse_format(std::string_view name);

/// Loads a labeled corpus. The label space is the sorted set of observed
/// labels. Throws InputError on parse failures (with line number), duplicate
/// ids, empty text and empty files.
Dataset load_dataset(const std::filesystem::path& path, Format format);

/// Same, but validates every label against a fixed label space instead of
/// deriving one. Used for validation and evaluation sets.
Dataset load_dataset(const std::filesystem::path& path, Format format,
                     const LabelSpace& labels);

/// Loads augmented records (JSON Lines) linked to `base`. Records without a
/// "strategy" field are tagged EXTERNAL; a missing "label" inherits the
/// origin's label, a differing one is rejected.
AugmentedDataset load_augmented(const std::filesystem::path& path,
                                const Dataset& base);

/// TSV output requires ids of the form row-<n> in file order, since the
/// format carries no id column.
void emit_dataset(const Dataset& dataset, const std::filesystem::path& path,
                  Format format);
void emit_augmented(const AugmentedDataset& dataset,
                    const std::filesystem::path& path);

/// Serialized JSONL line for a single record, without trailing newline.
std::string to_jsonl(const LabeledExample& example);
std::string to_jsonl(const AugmentedExample& example);

}  // namespace augsel
