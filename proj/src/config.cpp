#include "augsel/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>

#include "augsel/error.hpp"

namespace augsel {

namespace {

std::string trim(std::string_view s) {
  auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value,
                            std::string_view expected) {
  throw InputError("config key " + std::string(key) + ": cannot parse \"" +
                   std::string(value) + "\" as " + std::string(expected));
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view value) {
  Int out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    bad_value(key, value, "integer");
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    bad_value(key, value, "number");
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1" || value == "yes" || value == "on") {
    return true;
  }
  if (value == "false" || value == "0" || value == "no" || value == "off") {
    return false;
  }
  bad_value(key, value, "boolean");
}

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

std::string format_bool(bool v) { return v ? "true" : "false"; }

struct KeyImpl {
  ConfigKey key;
  std::function<void(PipelineConfig&, std::string_view)> set;
  std::function<std::string(const PipelineConfig&)> get;
};

const std::vector<KeyImpl>& key_table() {
  using C = PipelineConfig;
  using SV = std::string_view;
  static const std::vector<KeyImpl> table = {
      {{"seed", "master RNG seed (augmentation, training, MC dropout)"},
       [](C& c, SV v) {
         c.seed = parse_int<std::uint64_t>("seed", v);
         c.eda.seed = c.seed;
       },
       [](const C& c) { return std::to_string(c.seed); }},
      {{"mc_passes", "MC dropout forward passes T"},
       [](C& c, SV v) { c.mc_passes = parse_int<std::size_t>("mc_passes", v); },
       [](const C& c) { return std::to_string(c.mc_passes); }},
      {{"entropy_tau", "entropy threshold for EDA augments"},
       [](C& c, SV v) { c.entropy_tau = parse_double("entropy_tau", v); },
       [](const C& c) { return format_double(c.entropy_tau); }},
      {{"entropy_tau_external", "entropy threshold for EXTERNAL augments"},
       [](C& c, SV v) {
         c.entropy_tau_external = parse_double("entropy_tau_external", v);
       },
       [](const C& c) { return format_double(c.entropy_tau_external); }},
      {{"max_rounds", "maximum self-training rounds"},
       [](C& c, SV v) { c.max_rounds = parse_int<int>("max_rounds", v); },
       [](const C& c) { return std::to_string(c.max_rounds); }},
      {{"patience", "rounds without validation gain before stopping"},
       [](C& c, SV v) { c.patience = parse_int<int>("patience", v); },
       [](const C& c) { return std::to_string(c.patience); }},
      {{"selection", "enable clean/noisy and entropy selection"},
       [](C& c, SV v) { c.selection = parse_bool("selection", v); },
       [](const C& c) { return format_bool(c.selection); }},
      {{"recall", "enable overlap/fluency recall"},
       [](C& c, SV v) { c.recall = parse_bool("recall", v); },
       [](const C& c) { return format_bool(c.recall); }},
      {{"fluency_direction", "lower (F < F_avg) or inverted (F > F_avg)"},
       [](C& c, SV v) {
         if (v == "lower") {
           c.fluency_direction = FluencyDirection::kLower;
         } else if (v == "inverted") {
           c.fluency_direction = FluencyDirection::kInverted;
         } else {
           bad_value("fluency_direction", v, "lower|inverted");
         }
       },
       [](const C& c) {
         return std::string(c.fluency_direction == FluencyDirection::kLower
                                ? "lower"
                                : "inverted");
       }},
      {{"buckets", "hashed feature buckets"},
       [](C& c, SV v) { c.classifier.buckets = parse_int<std::uint32_t>("buckets", v); },
       [](const C& c) { return std::to_string(c.classifier.buckets); }},
      {{"hidden", "hidden layer width"},
       [](C& c, SV v) { c.classifier.hidden = parse_int<std::size_t>("hidden", v); },
       [](const C& c) { return std::to_string(c.classifier.hidden); }},
      {{"dropout", "dropout rate on hidden units"},
       [](C& c, SV v) { c.classifier.dropout = parse_double("dropout", v); },
       [](const C& c) { return format_double(c.classifier.dropout); }},
      {{"epochs", "training epochs"},
       [](C& c, SV v) { c.classifier.epochs = parse_int<int>("epochs", v); },
       [](const C& c) { return std::to_string(c.classifier.epochs); }},
      {{"batch_size", "mini-batch size"},
       [](C& c, SV v) {
         c.classifier.batch_size = parse_int<std::size_t>("batch_size", v);
       },
       [](const C& c) { return std::to_string(c.classifier.batch_size); }},
      {{"learning_rate", "Adam learning rate"},
       [](C& c, SV v) {
         c.classifier.learning_rate = parse_double("learning_rate", v);
       },
       [](const C& c) { return format_double(c.classifier.learning_rate); }},
      {{"adam_beta1", "Adam first-moment decay"},
       [](C& c, SV v) { c.classifier.beta1 = parse_double("adam_beta1", v); },
       [](const C& c) { return format_double(c.classifier.beta1); }},
      {{"adam_beta2", "Adam second-moment decay"},
       [](C& c, SV v) { c.classifier.beta2 = parse_double("adam_beta2", v); },
       [](const C& c) { return format_double(c.classifier.beta2); }},
      {{"adam_epsilon", "Adam denominator epsilon"},
       [](C& c, SV v) { c.classifier.epsilon = parse_double("adam_epsilon", v); },
       [](const C& c) { return format_double(c.classifier.epsilon); }},
      {{"weight_decay", "L2 penalty added to updated parameters"},
       [](C& c, SV v) {
         c.classifier.weight_decay = parse_double("weight_decay", v);
       },
       [](const C& c) { return format_double(c.classifier.weight_decay); }},
      {{"max_tokens", "token truncation length for features (0 = off)"},
       [](C& c, SV v) {
         c.classifier.max_tokens = parse_int<std::size_t>("max_tokens", v);
       },
       [](const C& c) { return std::to_string(c.classifier.max_tokens); }},
      {{"lm_order", "n-gram order of the fluency LM (1-3)"},
       [](C& c, SV v) { c.lm.order = parse_int<int>("lm_order", v); },
       [](const C& c) { return std::to_string(c.lm.order); }},
      {{"lm_k", "add-k smoothing constant"},
       [](C& c, SV v) { c.lm.k = parse_double("lm_k", v); },
       [](const C& c) { return format_double(c.lm.k); }},
      {{"eda_alpha", "fraction of tokens changed per EDA operation"},
       [](C& c, SV v) { c.eda.alpha = parse_double("eda_alpha", v); },
       [](const C& c) { return format_double(c.eda.alpha); }},
      {{"eda_naug_per_op", "augmented copies per original per EDA operation"},
       [](C& c, SV v) { c.eda.naug_per_op = parse_int<int>("eda_naug_per_op", v); },
       [](const C& c) { return std::to_string(c.eda.naug_per_op); }},
  };
  return table;
}

}  // namespace

const std::vector<ConfigKey>& config_keys() {
  static const std::vector<ConfigKey> keys = [] {
    std::vector<ConfigKey> out;
    for (const auto& k : key_table()) out.push_back(k.key);
    return out;
  }();
  return keys;
}

void apply_config_value(PipelineConfig& config, std::string_view key,
                        std::string_view value) {
  for (const auto& k : key_table()) {
    if (k.key.name == key) {
      k.set(config, trim(value));
      return;
    }
  }
  throw InputError("unknown config key \"" + std::string(key) + "\"");
}

void apply_config_file(PipelineConfig& config,
                       const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config " + path.string());
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::string body = trim(line);
    if (body.empty()) continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) {
      throw InputError(path.string() + ":" + std::to_string(lineno) +
                       ": expected key=value");
    }
    try {
      apply_config_value(config, trim(body.substr(0, eq)), body.substr(eq + 1));
    } catch (const InputError& e) {
      throw InputError(path.string() + ":" + std::to_string(lineno) + ": " +
                       e.what());
    }
  }
}

void apply_env_overrides(PipelineConfig& config) {
  for (const auto& k : key_table()) {
    std::string var(kEnvPrefix);
    for (char c : k.key.name) {
      var.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    }
    if (const char* value = std::getenv(var.c_str())) {
      try {
        k.set(config, trim(value));
      } catch (const InputError& e) {
        throw InputError(var + ": " + e.what());
      }
    }
  }
}

std::vector<std::pair<std::string, std::string>> config_snapshot(
    const PipelineConfig& config) {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& k : key_table()) out.emplace_back(k.key.name, k.get(config));
  return out;
}

}  // namespace augsel
