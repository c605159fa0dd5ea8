#include "augsel/recall.hpp"

#include <algorithm>
#include <cmath>

#include "augsel/error.hpp"

namespace augsel {

double jaccard_overlap(std::span<const std::string> original,
                       std::span<const std::string> augmented) {
  if (original.empty() || augmented.empty()) {
    throw InputError("word overlap needs two non-empty token lists");
  }
  std::vector<std::string> a(original.begin(), original.end());
  std::vector<std::string> b(augmented.begin(), augmented.end());
  std::sort(a.begin(), a.end());
  a.erase(std::unique(a.begin(), a.end()), a.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());
  std::size_t shared = 0;
  for (auto i = a.begin(), j = b.begin(); i != a.end() && j != b.end();) {
    if (*i < *j) {
      ++i;
    } else if (*j < *i) {
      ++j;
    } else {
      ++shared, ++i, ++j;
    }
  }
  return static_cast<double>(shared) /
         static_cast<double>(a.size() + b.size() - shared);
}

double fluency_delta(const PerplexityScorer& lm,
                     std::span<const std::string> original,
                     std::span<const std::string> augmented) {
  return lm.perplexity(original) - lm.perplexity(augmented);
}

RecallThresholds compute_thresholds(std::span<const RecallScores> easy) {
  if (easy.empty()) {
    throw PipelineError(
        "no easy samples: recall thresholds are averaged over the easy set");
  }
  RecallThresholds t;
  for (const auto& s : easy) {
    t.j_avg += s.jaccard;
    t.f_avg += s.fluency;
  }
  t.j_avg /= static_cast<double>(easy.size());
  t.f_avg /= static_cast<double>(easy.size());
  return t;
}

std::vector<std::string> recall_samples(std::span<const RecallScores> candidates,
                                        const RecallThresholds& thresholds,
                                        FluencyDirection direction) {
  std::vector<std::string> out;
  for (const auto& s : candidates) {
    const bool overlap = s.jaccard > thresholds.j_avg;
    const bool fluent = direction == FluencyDirection::kLower
                            ? s.fluency < thresholds.f_avg
                            : s.fluency > thresholds.f_avg;
    if (overlap && fluent) out.push_back(s.id);
  }
  return out;
}

}  // namespace augsel
