#include "augsel/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "augsel/error.hpp"

namespace augsel {

namespace {

constexpr char kMagic[8] = {'A', 'U', 'G', 'S', 'E', 'L', 'C', 'K'};
constexpr std::uint32_t kFormatVersion = 1;
constexpr double kInputInitScale = 0.1;

void softmax_inplace(std::vector<double>& z) {
  const double peak = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - peak);
    sum += v;
  }
  for (double& v : z) v /= sum;
}

// Little-endian byte writer/reader for checkpoints.
class ByteWriter {
 public:
  template <typename T>
  void put(T value) {
    static_assert(std::is_trivially_copyable_v<T>);
    char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    bytes_.append(buf, sizeof(T));
  }
  void put_string(const std::string& s) {
    put<std::uint64_t>(s.size());
    bytes_ += s;
  }
  void put_doubles(const std::vector<double>& v) {
    for (double d : v) put(d);
  }
  void put_raw(const char* data, std::size_t n) { bytes_.append(data, n); }
  std::string take() { return std::move(bytes_); }

 private:
  std::string bytes_;
};

class ByteReader {
 public:
  explicit ByteReader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T get() {
    need(sizeof(T));
    T value;
    std::memcpy(&value, bytes_.data() + pos_, sizeof(T));
    pos_ += sizeof(T);
    return value;
  }
  std::string get_string() {
    auto n = get<std::uint64_t>();
    need(n);
    std::string s(bytes_.substr(pos_, n));
    pos_ += n;
    return s;
  }
  std::vector<double> get_doubles(std::size_t n) {
    std::vector<double> v(n);
    for (auto& d : v) d = get<double>();
    return v;
  }
  std::string_view get_raw(std::size_t n) {
    need(n);
    auto s = bytes_.substr(pos_, n);
    pos_ += n;
    return s;
  }
  bool done() const { return pos_ == bytes_.size(); }

 private:
  void need(std::size_t n) const {
    if (bytes_.size() - pos_ < n) throw InputError("truncated checkpoint");
  }
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

struct AdamState {
  std::vector<double> m;
  std::vector<double> v;
};

void adam_update(std::vector<double>& params, const std::vector<double>& grad,
                 AdamState& state, const ClassifierConfig& cfg,
                 double step_size) {
  if (state.m.empty()) {
    state.m.assign(params.size(), 0.0);
    state.v.assign(params.size(), 0.0);
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    const double g = grad[i] + cfg.weight_decay * params[i];
    state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * g;
    state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * g * g;
    params[i] -= step_size * state.m[i] / (std::sqrt(state.v[i]) + cfg.epsilon);
  }
}

}  // namespace

// ---------------------------------------------------------------------------

PredictiveDistributions::PredictiveDistributions(std::size_t passes,
                                                 std::size_t classes)
    : passes_(passes), classes_(classes), values_(passes * classes, 0.0) {}

PredictiveDistributions::PredictiveDistributions(std::size_t passes,
                                                 std::size_t classes,
                                                 std::vector<double> values)
    : passes_(passes), classes_(classes), values_(std::move(values)) {
  if (values_.size() != passes_ * classes_) {
    throw InputError("distribution matrix has " +
                     std::to_string(values_.size()) + " entries, expected " +
                     std::to_string(passes_ * classes_));
  }
}

std::size_t argmax(std::span<const double> values) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i] > values[best]) best = i;
  }
  return best;
}

Prediction predict_label(const Classifier& model, std::string_view text) {
  if (tokenize(text).empty()) {
    throw InputError("cannot predict a label for empty text");
  }
  Prediction out;
  out.probabilities = model.predict_proba(text);
  out.index = argmax(out.probabilities);
  return out;
}

PredictiveDistributions mc_passes(const Classifier& model,
                                  std::string_view text, std::size_t passes,
                                  Rng& rng) {
  if (passes == 0) throw InputError("MC pass count must be >= 1");
  const std::size_t classes = model.labels().size();
  PredictiveDistributions out(passes, classes);
  for (std::size_t t = 0; t < passes; ++t) {
    auto probs = model.predict_proba_stochastic(text, rng);
    std::copy(probs.begin(), probs.end(), out.row(t).begin());
  }
  return out;
}

PredictiveDistributions mc_passes(const Classifier& model,
                                  std::string_view text, std::size_t passes,
                                  std::uint64_t seed) {
  Rng rng = StreamKey(seed).add("mc").rng();
  return mc_passes(model, text, passes, rng);
}

// ---------------------------------------------------------------------------

void ClassifierConfig::validate() const {
  auto fail = [](const std::string& msg) { throw InputError(msg); };
  if (buckets == 0) fail("buckets must be >= 1");
  if (hidden == 0) fail("hidden must be >= 1");
  if (!(dropout >= 0.0 && dropout < 1.0)) fail("dropout must be in [0, 1)");
  if (epochs < 1) fail("epochs must be >= 1");
  if (batch_size == 0) fail("batch_size must be >= 1");
  if (!(learning_rate > 0.0)) fail("learning_rate must be > 0");
  if (!(beta1 >= 0.0 && beta1 < 1.0)) fail("beta1 must be in [0, 1)");
  if (!(beta2 >= 0.0 && beta2 < 1.0)) fail("beta2 must be in [0, 1)");
  if (!(epsilon > 0.0)) fail("epsilon must be > 0");
  if (!(weight_decay >= 0.0)) fail("weight_decay must be >= 0");
}

ReferenceClassifier::ReferenceClassifier(LabelSpace labels,
                                         ClassifierConfig config)
    : labels_(std::move(labels)), config_(config) {
  config_.validate();
  const std::size_t h = config_.hidden;
  const std::size_t c = labels_.size();
  hidden_bias_.assign(h, 0.0);
  output_bias_.assign(c, 0.0);
  output_weights_.resize(c * h);
  Rng rng = StreamKey(config_.seed).add("output-weights").rng();
  const double limit = std::sqrt(6.0 / static_cast<double>(h + c));
  for (double& w : output_weights_) w = uniform_real(rng, -limit, limit);
}

std::vector<double> ReferenceClassifier::initial_row(
    std::uint32_t bucket) const {
  Rng rng = StreamKey(config_.seed).add("input-row").add(bucket).rng();
  std::vector<double> row(config_.hidden);
  for (double& w : row) w = uniform_real(rng, -kInputInitScale, kInputInitScale);
  return row;
}

const double* ReferenceClassifier::row_or_null(std::uint32_t bucket) const {
  auto it = input_rows_.find(bucket);
  return it == input_rows_.end() ? nullptr : it->second.data();
}

std::vector<double>& ReferenceClassifier::input_row(std::uint32_t bucket) {
  auto it = input_rows_.find(bucket);
  if (it == input_rows_.end()) {
    it = input_rows_.emplace(bucket, initial_row(bucket)).first;
  }
  return it->second;
}

SparseFeatures ReferenceClassifier::featurize(std::string_view text) const {
  auto tokens = tokenize(text);
  if (config_.max_tokens > 0 && tokens.size() > config_.max_tokens) {
    tokens.resize(config_.max_tokens);
  }
  std::map<std::uint32_t, double> counts;
  auto bump = [&](std::string_view key) {
    counts[static_cast<std::uint32_t>(fnv1a64(key) % config_.buckets)] += 1.0;
  };
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    bump("u\x1f" + tokens[i]);
    if (i + 1 < tokens.size()) bump("b\x1f" + tokens[i] + "\x1f" + tokens[i + 1]);
  }
  SparseFeatures x;
  double norm = 0.0;
  for (const auto& [bucket, count] : counts) norm += count * count;
  norm = std::sqrt(norm);
  for (const auto& [bucket, count] : counts) {
    x.index.push_back(bucket);
    x.value.push_back(count / norm);
  }
  return x;
}

ProbabilityVector ReferenceClassifier::forward(
    const SparseFeatures& x, std::span<const double> multipliers) const {
  const std::size_t h = config_.hidden;
  std::vector<double> hidden = hidden_bias_;
  std::vector<double> scratch;
  for (std::size_t k = 0; k < x.index.size(); ++k) {
    const double* row = row_or_null(x.index[k]);
    if (row == nullptr) {
      scratch = initial_row(x.index[k]);
      row = scratch.data();
    }
    for (std::size_t j = 0; j < h; ++j) hidden[j] += x.value[k] * row[j];
  }
  for (std::size_t j = 0; j < h; ++j) {
    hidden[j] = std::max(0.0, hidden[j]);
    if (!multipliers.empty()) hidden[j] *= multipliers[j];
  }
  const std::size_t c = labels_.size();
  std::vector<double> logits = output_bias_;
  for (std::size_t i = 0; i < c; ++i) {
    const double* w = output_weights_.data() + i * h;
    for (std::size_t j = 0; j < h; ++j) logits[i] += w[j] * hidden[j];
  }
  softmax_inplace(logits);
  return logits;
}

ProbabilityVector ReferenceClassifier::predict_proba(
    std::string_view text) const {
  return forward(featurize(text));
}

ProbabilityVector ReferenceClassifier::predict_proba_stochastic(
    std::string_view text, Rng& rng) const {
  // Masks only, no rescaling: the mask is the source of variation.
  std::vector<double> mask(config_.hidden);
  for (double& m : mask) m = uniform01(rng) < config_.dropout ? 0.0 : 1.0;
  return forward(featurize(text), mask);
}

double ReferenceClassifier::loss_and_gradient(
    std::span<const SparseFeatures> xs, std::span<const std::size_t> ys,
    std::span<const std::vector<double>> multipliers, Gradient* grad) const {
  const std::size_t h = config_.hidden;
  const std::size_t c = labels_.size();
  const double inv_n = 1.0 / static_cast<double>(xs.size());
  if (grad != nullptr) {
    grad->input_rows.clear();
    grad->hidden_bias.assign(h, 0.0);
    grad->output_weights.assign(c * h, 0.0);
    grad->output_bias.assign(c, 0.0);
  }
  double loss = 0.0;
  std::vector<double> pre(h), act(h), logits(c), dhidden(h);
  std::vector<const double*> rows;
  std::vector<std::vector<double>> scratch;
  for (std::size_t n = 0; n < xs.size(); ++n) {
    const SparseFeatures& x = xs[n];
    rows.assign(x.index.size(), nullptr);
    scratch.clear();
    scratch.reserve(x.index.size());
    pre = hidden_bias_;
    for (std::size_t k = 0; k < x.index.size(); ++k) {
      rows[k] = row_or_null(x.index[k]);
      if (rows[k] == nullptr) {
        scratch.push_back(initial_row(x.index[k]));
        rows[k] = scratch.back().data();
      }
      for (std::size_t j = 0; j < h; ++j) pre[j] += x.value[k] * rows[k][j];
    }
    const double* mult = multipliers.empty() ? nullptr : multipliers[n].data();
    for (std::size_t j = 0; j < h; ++j) {
      act[j] = std::max(0.0, pre[j]) * (mult ? mult[j] : 1.0);
    }
    logits = output_bias_;
    for (std::size_t i = 0; i < c; ++i) {
      const double* w = output_weights_.data() + i * h;
      for (std::size_t j = 0; j < h; ++j) logits[i] += w[j] * act[j];
    }
    softmax_inplace(logits);
    const std::size_t y = ys[n];
    loss -= std::log(std::max(logits[y], 1e-300));
    if (grad == nullptr) continue;

    // dL/dlogits = p - onehot(y), averaged over the batch.
    std::fill(dhidden.begin(), dhidden.end(), 0.0);
    for (std::size_t i = 0; i < c; ++i) {
      const double dz = (logits[i] - (i == y ? 1.0 : 0.0)) * inv_n;
      grad->output_bias[i] += dz;
      double* gw = grad->output_weights.data() + i * h;
      const double* w = output_weights_.data() + i * h;
      for (std::size_t j = 0; j < h; ++j) {
        gw[j] += dz * act[j];
        dhidden[j] += dz * w[j];
      }
    }
    for (std::size_t j = 0; j < h; ++j) {
      dhidden[j] = pre[j] > 0.0 ? dhidden[j] * (mult ? mult[j] : 1.0) : 0.0;
      grad->hidden_bias[j] += dhidden[j];
    }
    for (std::size_t k = 0; k < x.index.size(); ++k) {
      auto& g = grad->input_rows[x.index[k]];
      if (g.empty()) g.assign(h, 0.0);
      for (std::size_t j = 0; j < h; ++j) g[j] += x.value[k] * dhidden[j];
    }
  }
  return loss * inv_n;
}

ReferenceClassifier ReferenceClassifier::train(
    std::span<const LabeledExample> examples, const LabelSpace& labels,
    const ClassifierConfig& config) {
  ReferenceClassifier model(labels, config);
  const ClassifierConfig& cfg = model.config_;

  std::vector<SparseFeatures> xs;
  std::vector<std::size_t> ys;
  std::vector<std::size_t> per_class(labels.size(), 0);
  xs.reserve(examples.size());
  for (const auto& ex : examples) {
    auto y = labels.index_of(ex.label);
    if (!y) {
      throw InputError("training example \"" + ex.id + "\" has unknown label \"" +
                       ex.label + "\"");
    }
    xs.push_back(model.featurize(ex.text));
    ys.push_back(*y);
    ++per_class[*y];
  }
  for (std::size_t c = 0; c < per_class.size(); ++c) {
    if (per_class[c] == 0) {
      throw InputError("class \"" + labels.label(c) +
                       "\" has no training examples");
    }
  }

  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  AdamState hidden_bias_state, output_weight_state, output_bias_state;
  std::unordered_map<std::uint32_t, AdamState> row_states;
  const double keep = 1.0 - cfg.dropout;
  std::uint64_t step = 0;
  Gradient grad;
  std::vector<SparseFeatures> batch_x;
  std::vector<std::size_t> batch_y;
  std::vector<std::vector<double>> masks;

  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    Rng order_rng = StreamKey(cfg.seed).add("shuffle").add(epoch).rng();
    shuffle(order, order_rng);
    Rng mask_rng = StreamKey(cfg.seed).add("dropout").add(epoch).rng();
    for (std::size_t start = 0, batch = 0; start < order.size();
         start += cfg.batch_size, ++batch) {
      const std::size_t end = std::min(order.size(), start + cfg.batch_size);
      batch_x.clear();
      batch_y.clear();
      masks.assign(end - start, std::vector<double>(cfg.hidden, 1.0));
      for (std::size_t i = start; i < end; ++i) {
        batch_x.push_back(xs[order[i]]);
        batch_y.push_back(ys[order[i]]);
        if (cfg.dropout > 0.0) {
          // Inverted dropout: scale kept units by 1/keep during training.
          for (double& m : masks[i - start]) {
            m = uniform01(mask_rng) < cfg.dropout ? 0.0 : 1.0 / keep;
          }
        }
      }
      const double loss =
          model.loss_and_gradient(batch_x, batch_y, masks, &grad);
      if (!std::isfinite(loss)) {
        throw PipelineError("non-finite training loss at epoch " +
                            std::to_string(epoch) + ", batch " +
                            std::to_string(batch));
      }
      ++step;
      const double t = static_cast<double>(step);
      const double step_size = cfg.learning_rate *
                               std::sqrt(1.0 - std::pow(cfg.beta2, t)) /
                               (1.0 - std::pow(cfg.beta1, t));
      adam_update(model.hidden_bias_, grad.hidden_bias, hidden_bias_state, cfg,
                  step_size);
      adam_update(model.output_weights_, grad.output_weights,
                  output_weight_state, cfg, step_size);
      adam_update(model.output_bias_, grad.output_bias, output_bias_state, cfg,
                  step_size);
      // Input rows only receive gradient where their bucket fires, so only
      // those rows (and their moments) are touched.
      for (const auto& [bucket, g] : grad.input_rows) {
        adam_update(model.input_row(bucket), g, row_states[bucket], cfg,
                    step_size);
      }
    }
  }
  return model;
}

// ---------------------------------------------------------------------------

std::string ReferenceClassifier::serialize() const {
  ByteWriter w;
  w.put_raw(kMagic, sizeof(kMagic));
  w.put(kFormatVersion);
  w.put<std::uint32_t>(config_.buckets);
  w.put<std::uint64_t>(config_.hidden);
  w.put(config_.dropout);
  w.put<std::int64_t>(config_.epochs);
  w.put<std::uint64_t>(config_.batch_size);
  w.put(config_.learning_rate);
  w.put(config_.beta1);
  w.put(config_.beta2);
  w.put(config_.epsilon);
  w.put(config_.weight_decay);
  w.put<std::uint64_t>(config_.max_tokens);
  w.put<std::uint64_t>(config_.seed);
  w.put<std::uint64_t>(labels_.size());
  for (const auto& label : labels_.labels()) w.put_string(label);
  w.put_doubles(hidden_bias_);
  w.put_doubles(output_weights_);
  w.put_doubles(output_bias_);
  std::vector<std::uint32_t> buckets;
  buckets.reserve(input_rows_.size());
  for (const auto& [bucket, row] : input_rows_) buckets.push_back(bucket);
  std::sort(buckets.begin(), buckets.end());
  w.put<std::uint64_t>(buckets.size());
  for (auto bucket : buckets) {
    w.put(bucket);
    w.put_doubles(input_rows_.at(bucket));
  }
  return w.take();
}

ReferenceClassifier ReferenceClassifier::deserialize(std::string_view bytes) {
  ByteReader r(bytes);
  if (r.get_raw(sizeof(kMagic)) != std::string_view(kMagic, sizeof(kMagic))) {
    throw InputError("not a model checkpoint");
  }
  if (auto v = r.get<std::uint32_t>(); v != kFormatVersion) {
    throw InputError("unsupported checkpoint version " + std::to_string(v));
  }
  ClassifierConfig cfg;
  cfg.buckets = r.get<std::uint32_t>();
  cfg.hidden = r.get<std::uint64_t>();
  cfg.dropout = r.get<double>();
  cfg.epochs = static_cast<int>(r.get<std::int64_t>());
  cfg.batch_size = r.get<std::uint64_t>();
  cfg.learning_rate = r.get<double>();
  cfg.beta1 = r.get<double>();
  cfg.beta2 = r.get<double>();
  cfg.epsilon = r.get<double>();
  cfg.weight_decay = r.get<double>();
  cfg.max_tokens = r.get<std::uint64_t>();
  cfg.seed = r.get<std::uint64_t>();
  std::vector<std::string> labels(r.get<std::uint64_t>());
  for (auto& label : labels) label = r.get_string();
  ReferenceClassifier model(LabelSpace(std::move(labels)), cfg);
  const std::size_t h = cfg.hidden;
  const std::size_t c = model.labels_.size();
  model.hidden_bias_ = r.get_doubles(h);
  model.output_weights_ = r.get_doubles(c * h);
  model.output_bias_ = r.get_doubles(c);
  const auto rows = r.get<std::uint64_t>();
  for (std::uint64_t i = 0; i < rows; ++i) {
    auto bucket = r.get<std::uint32_t>();
    if (bucket >= cfg.buckets) throw InputError("checkpoint bucket out of range");
    model.input_rows_[bucket] = r.get_doubles(h);
  }
  if (!r.done()) throw InputError("trailing bytes in checkpoint");
  return model;
}

std::uint64_t ReferenceClassifier::checksum() const {
  return fnv1a64(serialize());
}

void ReferenceClassifier::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << serialize();
  if (!out) throw InputError("write failed: " + path.string());
}

ReferenceClassifier ReferenceClassifier::load(
    const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return deserialize(buf.str());
  } catch (const InputError& e) {
    throw InputError(path.string() + ": " + e.what());
  }
}

}  // namespace augsel
