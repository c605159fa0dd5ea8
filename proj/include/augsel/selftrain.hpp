#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "augsel/augment.hpp"
#include "augsel/classifier.hpp"
#include "augsel/corpus.hpp"
#include "augsel/fluency_lm.hpp"
#include "augsel/recall.hpp"
#include "augsel/selection.hpp"

namespace augsel {

struct LmConfig {
  int order = 2;
  double k = 0.1;
};

struct PipelineConfig {
  std::size_t mc_passes = 10;
  /// Entropy threshold for SR/RI/RS/RD augments.
  double entropy_tau = 0.2;
  /// Entropy threshold for EXTERNAL augments.
  double entropy_tau_external = 0.25;
  int max_rounds = 5;
  int patience = 1;
  /// When false every augment is kept: S_g = D_g.
  bool selection = true;
  bool recall = true;
  FluencyDirection fluency_direction = FluencyDirection::kLower;
  std::uint64_t seed = 1;
  ClassifierConfig classifier;
  LmConfig lm;
  EdaParams eda;

  /// Throws InputError on any out-of-range value.
  void validate() const;
};

using StrategyCounts = std::map<Strategy, std::size_t>;

/// Outcome of Step 2-3 for one round.
struct RoundSelection {
  SelectionPartition partition;
  std::vector<std::string> recalled;
  /// S_g = easy + recalled, in augmented-corpus order.
  std::vector<std::string> selected;
  std::optional<RecallThresholds> thresholds;
  /// Scores for easy samples followed by recall candidates.
  std::vector<RecallScores> scores;
};

struct RoundRecord {
  int round = 0;
  std::size_t clean = 0;
  std::size_t noisy = 0;
  std::size_t easy = 0;
  std::size_t hard = 0;
  std::size_t recalled = 0;
  std::size_t selected = 0;
  double teacher_accuracy = 0.0;
  double student_accuracy = 0.0;
  std::uint64_t student_checksum = 0;
  std::optional<RecallThresholds> thresholds;
  StrategyCounts recalled_by_strategy;
  StrategyCounts selected_by_strategy;
};

/// Trains a fresh model. The pipeline calls it for the teacher and once per
/// round for the student, each with its own derived seed.
using Trainer = std::function<std::unique_ptr<Classifier>(
    std::span<const LabeledExample>, const LabelSpace&, std::uint64_t seed)>;

Trainer reference_trainer(const ClassifierConfig& config);

/// Fraction of examples whose predicted label equals the gold label. Throws
/// InputError on an empty dataset or a label outside the model label space.
double evaluate(const Classifier& model, const Dataset& dataset);

/// clean/noisy split -> MC-dropout entropy on clean -> easy/hard split ->
/// word overlap and fluency on noisy+hard -> thresholds from easy -> recall.
/// `lm` may be null when recall is disabled.
RoundSelection select_round(const Classifier& teacher, const Dataset& original,
                            std::span<const AugmentedExample> augmented,
                            const PerplexityScorer* lm,
                            const PipelineConfig& config, int round);

struct PipelineResult {
  std::shared_ptr<const Classifier> best_model;
  int best_round = 0;
  double initial_teacher_accuracy = 0.0;
  std::vector<RoundRecord> rounds;
  std::vector<RoundSelection> selections;
  std::string stop_reason;
};

/// Teacher-student loop. When `lm` is null and recall is on, an n-gram LM is
/// trained on the original corpus.
PipelineResult run_pipeline(const Dataset& original,
                            const AugmentedDataset& augmented,
                            const Dataset& validation,
                            const PipelineConfig& config,
                            const PerplexityScorer* lm = nullptr,
                            const Trainer& trainer = {});

/// NGramLm over the tokenized original corpus.
NGramLm train_lm_on(const Dataset& corpus, const LmConfig& config);

}  // namespace augsel
