#include "augsel/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "augsel/error.hpp"
#include "json.hpp"

namespace augsel {

using nlohmann::json;

namespace {

bool is_space(unsigned char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

bool is_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }

std::string where(const std::filesystem::path& path, std::size_t line) {
  return path.string() + ":" + std::to_string(line) + ": ";
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  return out;
}

std::string string_field(const json& record, const char* key,
                         const std::string& ctx, bool allow_number = false) {
  auto it = record.find(key);
  if (it == record.end()) {
    throw InputError(ctx + "missing field \"" + key + "\"");
  }
  if (it->is_string()) return it->get<std::string>();
  if (allow_number && it->is_number_integer()) {
    return std::to_string(it->get<long long>());
  }
  throw InputError(ctx + "field \"" + key + "\" must be a string");
}

json parse_line(const std::string& line, const std::string& ctx) {
  json record;
  try {
    record = json::parse(line);
  } catch (const json::parse_error& e) {
    throw InputError(ctx + "malformed JSON: " + e.what());
  }
  if (!record.is_object()) throw InputError(ctx + "record is not an object");
  return record;
}

bool blank(const std::string& line) {
  return std::all_of(line.begin(), line.end(),
                     [](unsigned char c) { return is_space(c); });
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

void check_text(const std::string& text, const std::string& ctx) {
  if (tokenize(text).empty()) throw InputError(ctx + "empty text");
}

std::vector<LabeledExample> read_examples(const std::filesystem::path& path,
                                          Format format) {
  std::ifstream in = open_input(path);
  std::vector<LabeledExample> out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (blank(line)) continue;
    const std::string ctx = where(path, lineno);
    LabeledExample ex;
    if (format == Format::kJsonl) {
      json record = parse_line(line, ctx);
      ex.id = string_field(record, "id", ctx, /*allow_number=*/true);
      ex.text = string_field(record, "text", ctx);
      ex.label = string_field(record, "label", ctx, /*allow_number=*/true);
    } else {
      auto tab = line.find('\t');
      if (tab == std::string::npos) {
        throw InputError(ctx + "expected label<TAB>text");
      }
      ex.label = line.substr(0, tab);
      ex.text = line.substr(tab + 1);
      ex.id = "row-" + std::to_string(out.size() + 1);
    }
    if (ex.id.empty()) throw InputError(ctx + "empty id");
    if (ex.label.empty()) throw InputError(ctx + "empty label");
    check_text(ex.text, ctx);
    if (!seen.insert(ex.id).second) {
      throw InputError(ctx + "duplicate id \"" + ex.id + "\"");
    }
    out.push_back(std::move(ex));
  }
  if (out.empty()) throw InputError(path.string() + ": empty dataset");
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerPolicy& policy) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (unsigned char c : text) {
    if (is_space(c)) {
      flush();
    } else if (policy.split_punctuation && is_punct(c)) {
      flush();
      tokens.emplace_back(1, static_cast<char>(c));
    } else {
      if (policy.lowercase && c >= 'A' && c <= 'Z') c = c - 'A' + 'a';
      current.push_back(static_cast<char>(c));
    }
  }
  flush();
  return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::string_view strategy_name(Strategy s) {
  switch (s) {
    case Strategy::kSR: return "SR";
    case Strategy::kRI: return "RI";
    case Strategy::kRS: return "RS";
    case Strategy::kRD: return "RD";
    case Strategy::kExternal: return "EXTERNAL";
  }
  return "EXTERNAL";
}

std::optional<Strategy> parse_strategy(std::string_view name) {
  for (Strategy s : kAllStrategies) {
    if (strategy_name(s) == name) return s;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

LabelSpace::LabelSpace(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (labels_.size() < 2) {
    throw InputError("label space needs at least 2 classes, got " +
                     std::to_string(labels_.size()));
  }
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    if (!index_.emplace(labels_[i], i).second) {
      throw InputError("duplicate label \"" + labels_[i] + "\"");
    }
  }
}

LabelSpace LabelSpace::from_observed(const std::vector<std::string>& labels) {
  std::set<std::string> sorted(labels.begin(), labels.end());
  return LabelSpace(std::vector<std::string>(sorted.begin(), sorted.end()));
}

std::optional<std::size_t> LabelSpace::index_of(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const LabeledExample* Dataset::find(std::string_view id) const {
  for (const auto& ex : examples) {
    if (ex.id == id) return &ex;
  }
  return nullptr;
}

// ---------------------------------------------------------------------------

Format format_from_path(const std::filesystem::path& path) {
  return path.extension() == ".tsv" ? Format::kTsv : Format::kJsonl;
}

std::optional<Format> parse_format(std::string_view name) {
  if (name == "jsonl") return Format::kJsonl;
  if (name == "tsv") return Format::kTsv;
  return std::nullopt;
}

Dataset load_dataset(const std::filesystem::path& path, Format format) {
  Dataset d;
  d.examples = read_examples(path, format);
  std::vector<std::string> labels;
  labels.reserve(d.examples.size());
  for (const auto& ex : d.examples) labels.push_back(ex.label);
  try {
    d.labels = LabelSpace::from_observed(labels);
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return d;
}

Dataset load_dataset(const std::filesystem::path& path, Format format,
                     const LabelSpace& labels) {
  Dataset d;
  d.examples = read_examples(path, format);
  for (const auto& ex : d.examples) {
    if (!labels.contains(ex.label)) {
      throw InputError(path.string() + ": record \"" + ex.id +
                       "\" has label \"" + ex.label +
                       "\" outside the model label space");
    }
  }
  d.labels = labels;
  return d;
}

AugmentedDataset load_augmented(const std::filesystem::path& path,
                                const Dataset& base) {
  std::unordered_map<std::string_view, const LabeledExample*> origins;
  for (const auto& ex : base.examples) origins.emplace(ex.id, &ex);

  std::ifstream in = open_input(path);
  AugmentedDataset out;
  std::unordered_set<std::string> seen;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    strip_cr(line);
    if (blank(line)) continue;
    const std::string ctx = where(path, lineno);
    json record = parse_line(line, ctx);
    AugmentedExample ex;
    ex.id = string_field(record, "id", ctx, true);
    ex.origin_id = string_field(record, "origin_id", ctx, true);
    ex.text = string_field(record, "text", ctx);
    auto origin = origins.find(ex.origin_id);
    if (origin == origins.end()) {
      throw InputError(ctx + "origin_id \"" + ex.origin_id +
                       "\" not found in the original corpus");
    }
    if (record.contains("label")) {
      ex.label = string_field(record, "label", ctx, true);
      if (ex.label != origin->second->label) {
        throw InputError(ctx + "label \"" + ex.label +
                         "\" differs from origin label \"" +
                         origin->second->label + "\"");
      }
    } else {
      ex.label = origin->second->label;
    }
    if (record.contains("strategy")) {
      auto s = parse_strategy(string_field(record, "strategy", ctx));
      if (!s) throw InputError(ctx + "unknown strategy");
      ex.strategy = *s;
    } else {
      ex.strategy = Strategy::kExternal;
    }
    if (ex.id.empty()) throw InputError(ctx + "empty id");
    check_text(ex.text, ctx);
    if (!seen.insert(ex.id).second) {
      throw InputError(ctx + "duplicate id \"" + ex.id + "\"");
    }
    out.examples.push_back(std::move(ex));
  }
  if (out.examples.empty()) throw InputError(path.string() + ": empty dataset");
  return out;
}

// ---------------------------------------------------------------------------

std::string to_jsonl(const LabeledExample& ex) {
  json record = {{"id", ex.id}, {"text", ex.text}, {"label", ex.label}};
  return record.dump(-1, ' ', /*ensure_ascii=*/false);
}

std::string to_jsonl(const AugmentedExample& ex) {
  json record = {{"id", ex.id},
                 {"origin_id", ex.origin_id},
                 {"strategy", std::string(strategy_name(ex.strategy))},
                 {"text", ex.text},
                 {"label", ex.label}};
  return record.dump(-1, ' ', false);
}

void emit_dataset(const Dataset& dataset, const std::filesystem::path& path,
                  Format format) {
  if (dataset.examples.empty()) {
    throw InputError("refusing to write empty dataset to " + path.string());
  }
  std::ostringstream buf;
  for (std::size_t i = 0; i < dataset.examples.size(); ++i) {
    const auto& ex = dataset.examples[i];
    if (format == Format::kJsonl) {
      try {
        buf << to_jsonl(ex) << '\n';
      } catch (const json::type_error& e) {
        throw InputError("record \"" + ex.id + "\": " + e.what());
      }
      continue;
    }
    if (ex.id != "row-" + std::to_string(i + 1)) {
      throw InputError("TSV output cannot carry id \"" + ex.id + "\"");
    }
    auto bad = [](const std::string& s) {
      return s.find_first_of("\t\n\r") != std::string::npos;
    };
    if (bad(ex.label) || bad(ex.text)) {
      throw InputError("record \"" + ex.id +
                       "\" contains tab or newline; use jsonl");
    }
    buf << ex.label << '\t' << ex.text << '\n';
  }
  std::ofstream out = open_output(path);
  out << buf.str();
  if (!out) throw InputError("write failed: " + path.string());
}

void emit_augmented(const AugmentedDataset& dataset,
                    const std::filesystem::path& path) {
  if (dataset.examples.empty()) {
    throw InputError("refusing to write empty dataset to " + path.string());
  }
  std::ostringstream buf;
  for (const auto& ex : dataset.examples) buf << to_jsonl(ex) << '\n';
  std::ofstream out = open_output(path);
  out << buf.str();
  if (!out) throw InputError("write failed: " + path.string());
}

}  // namespace augsel
