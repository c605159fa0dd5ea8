#pragma once

#include <span>
#include <string>
#include <vector>

#include "augsel/fluency_lm.hpp"

namespace augsel {

struct RecallScores {
  std::string id;
  double jaccard = 0.0;  // in [0, 1]
  double fluency = 0.0;  // P(original) - P(augmented)
};

struct RecallThresholds {
  double j_avg = 0.0;
  double f_avg = 0.0;
};

/// Which side of f_avg is recalled. kLower keeps F < f_avg;
/// kInverted keeps F > f_avg.
enum class FluencyDirection { kLower, kInverted };

/// |A n B| / (|A| + |B| - |A n B|) over token sets. Throws InputError if
/// either side is empty.
double jaccard_overlap(std::span<const std::string> original,
                       std::span<const std::string> augmented);

/// perplexity(original) - perplexity(augmented).
double fluency_delta(const PerplexityScorer& lm,
                     std::span<const std::string> original,
                     std::span<const std::string> augmented);

/// Means over the easy set. Throws PipelineError when `easy` is empty.
RecallThresholds compute_thresholds(std::span<const RecallScores> easy);

/// Candidates with jaccard > j_avg and fluency < f_avg (strict), in input
/// order.
std::vector<std::string> recall_samples(
    std::span<const RecallScores> candidates, const RecallThresholds& thresholds,
    FluencyDirection direction = FluencyDirection::kLower);

}  // namespace augsel
