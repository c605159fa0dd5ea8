#include "augsel/selftrain.hpp"

#include <unordered_map>
#include <unordered_set>

#include "augsel/error.hpp"

namespace augsel {

namespace {

std::string round_prefix(int round) {
  return "round " + std::to_string(round) + ": ";
}

}  // namespace

void PipelineConfig::validate() const {
  if (mc_passes < 1) throw InputError("mc_passes (T) must be >= 1");
  if (!(entropy_tau >= 0.0)) throw InputError("entropy_tau must be >= 0");
  if (!(entropy_tau_external >= 0.0)) {
    throw InputError("entropy_tau_external must be >= 0");
  }
  if (max_rounds < 1) throw InputError("max_rounds must be >= 1");
  if (patience < 1) throw InputError("patience must be >= 1");
  if (lm.order < 1 || lm.order > 3) throw InputError("lm_order must be 1..3");
  if (!(lm.k > 0.0)) throw InputError("lm_k must be > 0");
  classifier.validate();
  eda.validate();
}

Trainer reference_trainer(const ClassifierConfig& config) {
  return [config](std::span<const LabeledExample> examples,
                  const LabelSpace& labels, std::uint64_t seed) {
    ClassifierConfig cfg = config;
    cfg.seed = seed;
    return std::make_unique<ReferenceClassifier>(
        ReferenceClassifier::train(examples, labels, cfg));
  };
}

double evaluate(const Classifier& model, const Dataset& dataset) {
  if (dataset.examples.empty()) {
    throw InputError("cannot evaluate on an empty dataset");
  }
  std::size_t correct = 0;
  for (const auto& ex : dataset.examples) {
    auto gold = model.labels().index_of(ex.label);
    if (!gold) {
      throw InputError("label \"" + ex.label +
                       "\" is not in the model label space");
    }
    if (predict_label(model, ex.text).index == *gold) ++correct;
  }
  return static_cast<double>(correct) /
         static_cast<double>(dataset.examples.size());
}

NGramLm train_lm_on(const Dataset& corpus, const LmConfig& config) {
  std::vector<TokenList> sentences;
  sentences.reserve(corpus.size());
  for (const auto& ex : corpus.examples) sentences.push_back(tokenize(ex.text));
  return NGramLm::train(sentences, config.order, config.k);
}

RoundSelection select_round(const Classifier& teacher, const Dataset& original,
                            std::span<const AugmentedExample> augmented,
                            const PerplexityScorer* lm,
                            const PipelineConfig& config, int round) {
  RoundSelection out;
  SelectionPartition& part = out.partition;

  if (!config.selection) {
    for (const auto& ex : augmented) {
      part.clean.push_back(ex.id);
      part.easy.push_back(ex.id);
    }
    out.selected = part.easy;
    return out;
  }

  std::unordered_map<std::string_view, const AugmentedExample*> by_id;
  for (const auto& ex : augmented) by_id.emplace(ex.id, &ex);

  // Step 2: pseudo-labels, clean/noisy.
  CleanNoisySplit split = split_clean_noisy(teacher, augmented);
  part.clean = std::move(split.clean);
  part.noisy = std::move(split.noisy);

  // Confidence on clean samples, thresholded per strategy family.
  std::vector<ConfidenceRecord> eda_records, external_records;
  for (const auto& id : part.clean) {
    const AugmentedExample& ex = *by_id.at(id);
    const auto seed =
        StreamKey(config.seed).add("mc").add(round).add(ex.id).value();
    auto rec = entropy_confidence(
        mc_passes(teacher, ex.text, config.mc_passes, seed), ex.id);
    part.confidence.emplace(ex.id, rec);
    (ex.strategy == Strategy::kExternal ? external_records : eda_records)
        .push_back(std::move(rec));
  }
  std::unordered_set<std::string> easy_ids;
  for (auto& id : split_easy_hard(eda_records, config.entropy_tau).easy) {
    easy_ids.insert(std::move(id));
  }
  for (auto& id :
       split_easy_hard(external_records, config.entropy_tau_external).easy) {
    easy_ids.insert(std::move(id));
  }
  std::unordered_set<std::string> candidate_ids(part.noisy.begin(),
                                                part.noisy.end());
  for (const auto& id : part.clean) {
    if (easy_ids.contains(id)) {
      part.easy.push_back(id);
    } else {
      part.hard.push_back(id);
      candidate_ids.insert(id);
    }
  }

  // Recall from noisy + hard.
  std::unordered_set<std::string> recalled_ids;
  if (config.recall && !candidate_ids.empty()) {
    if (part.easy.empty()) {
      throw PipelineError(round_prefix(round) +
                          "D_easy is empty, so recall thresholds cannot be "
                          "computed; raise the entropy threshold or disable "
                          "recall");
    }
    if (lm == nullptr) {
      throw PipelineError(round_prefix(round) + "recall needs a language model");
    }
    std::unordered_map<std::string_view, const LabeledExample*> origins;
    for (const auto& ex : original.examples) origins.emplace(ex.id, &ex);
    auto score = [&](const AugmentedExample& ex) {
      auto it = origins.find(ex.origin_id);
      if (it == origins.end()) {
        throw InputError("augment \"" + ex.id + "\" references unknown origin \"" +
                         ex.origin_id + "\"");
      }
      const auto orig_tokens = tokenize(it->second->text);
      const auto aug_tokens = tokenize(ex.text);
      return RecallScores{ex.id, jaccard_overlap(orig_tokens, aug_tokens),
                          fluency_delta(*lm, orig_tokens, aug_tokens)};
    };
    std::vector<RecallScores> easy_scores, candidate_scores;
    for (const auto& id : part.easy) easy_scores.push_back(score(*by_id.at(id)));
    for (const auto& ex : augmented) {
      if (candidate_ids.contains(ex.id)) candidate_scores.push_back(score(ex));
    }
    out.thresholds = compute_thresholds(easy_scores);
    for (auto& id : recall_samples(candidate_scores, *out.thresholds,
                                   config.fluency_direction)) {
      recalled_ids.insert(std::move(id));
    }
    out.scores = std::move(easy_scores);
    out.scores.insert(out.scores.end(), candidate_scores.begin(),
                      candidate_scores.end());
  }

  // S_g = easy + recalled, in corpus order.
  for (const auto& ex : augmented) {
    if (recalled_ids.contains(ex.id)) {
      out.recalled.push_back(ex.id);
      out.selected.push_back(ex.id);
    } else if (easy_ids.contains(ex.id)) {
      out.selected.push_back(ex.id);
    }
  }
  return out;
}

PipelineResult run_pipeline(const Dataset& original,
                            const AugmentedDataset& augmented,
                            const Dataset& validation,
                            const PipelineConfig& config,
                            const PerplexityScorer* lm,
                            const Trainer& trainer) {
  config.validate();
  if (original.examples.empty()) throw InputError("original corpus is empty");
  if (augmented.examples.empty()) throw InputError("augmented corpus is empty");
  if (validation.examples.empty()) throw InputError("validation set is empty");

  const Trainer train =
      trainer ? trainer : reference_trainer(config.classifier);
  const LabelSpace& labels = original.labels;

  std::optional<NGramLm> own_lm;
  if (lm == nullptr && config.selection && config.recall) {
    own_lm = train_lm_on(original, config.lm);
    lm = &*own_lm;
  }

  std::unordered_map<std::string_view, const AugmentedExample*> aug_by_id;
  for (const auto& ex : augmented.examples) aug_by_id.emplace(ex.id, &ex);

  PipelineResult result;
  std::shared_ptr<const Classifier> teacher;
  try {
    teacher = train(original.examples, labels,
                    StreamKey(config.seed).add("teacher").value());
  } catch (const PipelineError& e) {
    throw PipelineError(std::string("teacher training: ") + e.what());
  }
  result.initial_teacher_accuracy = evaluate(*teacher, validation);
  double teacher_accuracy = result.initial_teacher_accuracy;
  double best_seen = result.initial_teacher_accuracy;
  double best_student = -1.0;
  int rounds_without_gain = 0;
  result.stop_reason = "reached max_rounds";

  for (int round = 1; round <= config.max_rounds; ++round) {
    RoundSelection sel = select_round(*teacher, original, augmented.examples,
                                      lm, config, round);

    // Step 4: D_l + S_g with namespaced ids, augments keep inherited labels.
    std::vector<LabeledExample> training;
    training.reserve(original.size() + sel.selected.size());
    for (const auto& ex : original.examples) {
      training.push_back({"orig:" + ex.id, ex.text, ex.label});
    }
    RoundRecord rec;
    for (const auto& id : sel.selected) {
      const AugmentedExample& ex = *aug_by_id.at(id);
      training.push_back({"aug:" + ex.id, ex.text, ex.label});
      ++rec.selected_by_strategy[ex.strategy];
    }
    for (const auto& id : sel.recalled) {
      ++rec.recalled_by_strategy[aug_by_id.at(id)->strategy];
    }

    std::unique_ptr<Classifier> student;
    try {
      student = train(training, labels,
                      StreamKey(config.seed).add("student").add(round).value());
    } catch (const PipelineError& e) {
      throw PipelineError(round_prefix(round) + "student training: " + e.what());
    }

    rec.round = round;
    rec.clean = sel.partition.clean.size();
    rec.noisy = sel.partition.noisy.size();
    rec.easy = sel.partition.easy.size();
    rec.hard = sel.partition.hard.size();
    rec.recalled = sel.recalled.size();
    rec.selected = sel.selected.size();
    rec.thresholds = sel.thresholds;
    rec.teacher_accuracy = teacher_accuracy;
    rec.student_accuracy = evaluate(*student, validation);
    rec.student_checksum = student->checksum();

    std::shared_ptr<const Classifier> promoted(std::move(student));
    if (rec.student_accuracy > best_student) {
      best_student = rec.student_accuracy;
      result.best_model = promoted;
      result.best_round = round;
    }
    if (rec.student_accuracy > best_seen) {
      best_seen = rec.student_accuracy;
      rounds_without_gain = 0;
    } else {
      ++rounds_without_gain;
    }
    result.rounds.push_back(std::move(rec));
    result.selections.push_back(std::move(sel));

    // Step 5: the student becomes the next teacher.
    teacher = promoted;
    teacher_accuracy = result.rounds.back().student_accuracy;
    if (rounds_without_gain >= config.patience) {
      result.stop_reason = "no validation improvement for " +
                           std::to_string(rounds_without_gain) + " round(s)";
      break;
    }
  }
  return result;
}

}  // namespace augsel
