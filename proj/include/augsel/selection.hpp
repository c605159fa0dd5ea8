#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "augsel/classifier.hpp"
#include "augsel/corpus.hpp"

namespace augsel {

struct ConfidenceRecord {
  std::string id;
  double entropy = 0.0;
  double w_easy = 1.0;  // 1 - entropy
  double w_hard = 0.0;  // entropy
};

/// H = -(1/C) sum_c (1/T) sum_t p_tc ln p_tc, with 0 ln 0 = 0. Ranges over
/// [0, ln(C)/C]. Throws InputError on negative, non-finite or unnormalized
/// rows, or when T < 1 or C < 2.
double mean_class_entropy(const PredictiveDistributions& dists);

ConfidenceRecord entropy_confidence(const PredictiveDistributions& dists,
                                    std::string id = {});

/// Largest attainable mean_class_entropy for C classes.
double max_mean_class_entropy(std::size_t classes);

struct CleanNoisySplit {
  std::vector<std::string> clean;
  std::vector<std::string> noisy;
};

/// An augment is clean iff the model's argmax prediction equals its label.
/// Output preserves input order.
CleanNoisySplit split_clean_noisy(const Classifier& model,
                                  std::span<const AugmentedExample> augmented);

struct EasyHardSplit {
  std::vector<std::string> easy;
  std::vector<std::string> hard;
};

/// easy iff entropy <= tau. Throws InputError on tau < 0.
EasyHardSplit split_easy_hard(std::span<const ConfidenceRecord> records,
                              double tau);

struct SelectionPartition {
  std::vector<std::string> clean;
  std::vector<std::string> noisy;
  std::vector<std::string> easy;
  std::vector<std::string> hard;
  std::unordered_map<std::string, ConfidenceRecord> confidence;  // clean ids
};

}  // namespace augsel
