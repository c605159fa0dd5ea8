#include "augsel/selection.hpp"

#include <cmath>

#include "augsel/error.hpp"

namespace augsel {

namespace {

constexpr double kRowSumTolerance = 1e-9;

void check_rows(const PredictiveDistributions& dists) {
  if (dists.passes() < 1) throw InputError("need at least one pass");
  if (dists.classes() < 2) throw InputError("need at least two classes");
  for (std::size_t t = 0; t < dists.passes(); ++t) {
    double sum = 0.0;
    for (double p : dists.row(t)) {
      if (!std::isfinite(p) || p < 0.0) {
        throw InputError("pass " + std::to_string(t) +
                         " has a negative or non-finite probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw InputError("pass " + std::to_string(t) + " sums to " +
                       std::to_string(sum));
    }
  }
}

}  // namespace

double mean_class_entropy(const PredictiveDistributions& dists) {
  check_rows(dists);
  const double T = static_cast<double>(dists.passes());
  const double C = static_cast<double>(dists.classes());
  double total = 0.0;
  for (std::size_t c = 0; c < dists.classes(); ++c) {
    double per_class = 0.0;
    for (std::size_t t = 0; t < dists.passes(); ++t) {
      const double p = dists(t, c);
      if (p > 0.0) per_class += p * std::log(p);
    }
    total += per_class / T;
  }
  const double h = -total / C;
  return h < 0.0 ? 0.0 : h;  // -0.0 and rounding below zero
}

ConfidenceRecord entropy_confidence(const PredictiveDistributions& dists,
                                    std::string id) {
  ConfidenceRecord r;
  r.id = std::move(id);
  r.entropy = mean_class_entropy(dists);
  r.w_easy = 1.0 - r.entropy;
  r.w_hard = r.entropy;
  return r;
}

double max_mean_class_entropy(std::size_t classes) {
  const double c = static_cast<double>(classes);
  return std::log(c) / c;
}

CleanNoisySplit split_clean_noisy(const Classifier& model,
                                  std::span<const AugmentedExample> augmented) {
  CleanNoisySplit out;
  for (const auto& ex : augmented) {
    auto gold = model.labels().index_of(ex.label);
    if (!gold) {
      throw InputError("augment \"" + ex.id + "\" has label \"" + ex.label +
                       "\" outside the model label space");
    }
    if (predict_label(model, ex.text).index == *gold) {
      out.clean.push_back(ex.id);
    } else {
      out.noisy.push_back(ex.id);
    }
  }
  return out;
}

EasyHardSplit split_easy_hard(std::span<const ConfidenceRecord> records,
                              double tau) {
  if (!(tau >= 0.0)) throw InputError("entropy threshold must be >= 0");
  EasyHardSplit out;
  for (const auto& r : records) {
    (r.entropy <= tau ? out.easy : out.hard).push_back(r.id);
  }
  return out;
}

}  // namespace augsel
