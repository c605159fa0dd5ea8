#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "augsel/corpus.hpp"
#include "augsel/random.hpp"

namespace augsel {

using ProbabilityVector = std::vector<double>;

/// T x C matrix of per-pass class probabilities for one sample, row-major.
class PredictiveDistributions {
 public:
  PredictiveDistributions(std::size_t passes, std::size_t classes);
  PredictiveDistributions(std::size_t passes, std::size_t classes,
                          std::vector<double> values);

  std::size_t passes() const { return passes_; }
  std::size_t classes() const { return classes_; }

  double operator()(std::size_t pass, std::size_t cls) const {
    return values_[pass * classes_ + cls];
  }
  double& operator()(std::size_t pass, std::size_t cls) {
    return values_[pass * classes_ + cls];
  }
  std::span<const double> row(std::size_t pass) const {
    return {values_.data() + pass * classes_, classes_};
  }
  std::span<double> row(std::size_t pass) {
    return {values_.data() + pass * classes_, classes_};
  }

 private:
  std::size_t passes_;
  std::size_t classes_;
  std::vector<double> values_;
};

/// What the selection framework needs from a teacher or student model.
/// Implementations must return non-negative probability vectors summing to 1,
/// be deterministic in predict_proba, and be safe to call concurrently.
class Classifier {
 public:
  virtual ~Classifier() = default;

  virtual const LabelSpace& labels() const = 0;
  virtual ProbabilityVector predict_proba(std::string_view text) const = 0;
  /// One forward pass under a fresh dropout mask drawn from `rng`.
  virtual ProbabilityVector predict_proba_stochastic(std::string_view text,
                                                     Rng& rng) const = 0;

  virtual std::uint64_t checksum() const = 0;
  virtual void save(const std::filesystem::path& path) const = 0;
};

/// Index of the largest entry; ties go to the lowest index.
std::size_t argmax(std::span<const double> values);

struct Prediction {
  std::size_t index = 0;
  ProbabilityVector probabilities;
};

/// Throws InputError if `text` has no tokens.
Prediction predict_label(const Classifier& model, std::string_view text);

/// T stochastic passes. Throws InputError when passes == 0.
PredictiveDistributions mc_passes(const Classifier& model,
                                  std::string_view text, std::size_t passes,
                                  Rng& rng);
PredictiveDistributions mc_passes(const Classifier& model,
                                  std::string_view text, std::size_t passes,
                                  std::uint64_t seed);

// ---------------------------------------------------------------------------
// Reference classifier: hashed unigram+bigram features -> ReLU hidden layer
// with dropout -> softmax, trained with Adam on mean cross-entropy.

struct ClassifierConfig {
  std::uint32_t buckets = 1u << 18;
  std::size_t hidden = 64;
  double dropout = 0.5;
  int epochs = 15;
  std::size_t batch_size = 32;
  double learning_rate = 0.01;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  /// Added to the gradient of every parameter being updated (L2 penalty).
  double weight_decay = 0.0;
  /// Tokens beyond this position are ignored; 0 disables truncation.
  std::size_t max_tokens = 32;
  std::uint64_t seed = 1;

  void validate() const;
};

/// Sorted bucket indices with L2-normalized term frequencies.
struct SparseFeatures {
  std::vector<std::uint32_t> index;
  std::vector<double> value;
};

class ReferenceClassifier final : public Classifier {
 public:
  struct Gradient {
    std::unordered_map<std::uint32_t, std::vector<double>> input_rows;
    std::vector<double> hidden_bias;
    std::vector<double> output_weights;
    std::vector<double> output_bias;
  };

  /// Freshly initialized, untrained parameters.
  ReferenceClassifier(LabelSpace labels, ClassifierConfig config);

  /// Throws InputError if a class has no example, PipelineError on a
  /// non-finite loss.
  static ReferenceClassifier train(std::span<const LabeledExample> examples,
                                   const LabelSpace& labels,
                                   const ClassifierConfig& config);
  static ReferenceClassifier load(const std::filesystem::path& path);
  static ReferenceClassifier deserialize(std::string_view bytes);

  const LabelSpace& labels() const override { return labels_; }
  ProbabilityVector predict_proba(std::string_view text) const override;
  ProbabilityVector predict_proba_stochastic(std::string_view text,
                                             Rng& rng) const override;
  std::uint64_t checksum() const override;
  void save(const std::filesystem::path& path) const override;

  std::string serialize() const;
  const ClassifierConfig& config() const { return config_; }

  SparseFeatures featurize(std::string_view text) const;

  /// Forward pass. `multipliers` (size hidden, or empty for none) scales the
  /// hidden activations, which is how dropout masks are applied.
  ProbabilityVector forward(const SparseFeatures& x,
                            std::span<const double> multipliers = {}) const;

  /// Mean cross-entropy over the batch and, when `grad` is non-null, its
  /// exact gradient. `multipliers` holds one hidden-size vector per example
  /// or is empty.
  double loss_and_gradient(std::span<const SparseFeatures> xs,
                           std::span<const std::size_t> ys,
                           std::span<const std::vector<double>> multipliers,
                           Gradient* grad) const;

  // Parameter access, used by training and gradient checks. input_row()
  // materializes the row for `bucket` from its deterministic initializer.
  std::vector<double>& input_row(std::uint32_t bucket);
  std::vector<double>& hidden_bias() { return hidden_bias_; }
  std::vector<double>& output_weights() { return output_weights_; }
  std::vector<double>& output_bias() { return output_bias_; }

 private:
  std::vector<double> initial_row(std::uint32_t bucket) const;
  const double* row_or_null(std::uint32_t bucket) const;

  LabelSpace labels_;
  ClassifierConfig config_;
  // Rows of the bucket x hidden input matrix; absent rows equal their
  // initializer value.
  std::unordered_map<std::uint32_t, std::vector<double>> input_rows_;
  std::vector<double> hidden_bias_;
  std::vector<double> output_weights_;  // classes x hidden
  std::vector<double> output_bias_;
};

}  // namespace augsel
