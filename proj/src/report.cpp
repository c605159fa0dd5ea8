#include "augsel/report.hpp"

#include <cstdio>
#include <sstream>

#include "augsel/config.hpp"
#include "json.hpp"

namespace augsel {

using nlohmann::ordered_json;

namespace {

ordered_json counts_json(const StrategyCounts& counts) {
  ordered_json out = ordered_json::object();
  for (Strategy s : kAllStrategies) {
    auto it = counts.find(s);
    out[std::string(strategy_name(s))] = it == counts.end() ? 0 : it->second;
  }
  return out;
}

ordered_json config_json(const PipelineConfig& config) {
  ordered_json out = ordered_json::object();
  for (const auto& [key, value] : config_snapshot(config)) out[key] = value;
  return out;
}

std::string fixed(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(value));
  return buf;
}

StrategyCounts retained_by_strategy(const PipelineResult& result) {
  if (result.rounds.empty()) return {};
  return result.rounds.back().selected_by_strategy;
}

std::string report_json(const PipelineConfig& config, const ReportInputs& inputs,
                        const PipelineResult& result, bool dump_scores) {
  ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["config"] = config_json(config);
  doc["inputs"] = {{"original", inputs.original_path},
                   {"augmented", inputs.augmented_path},
                   {"validation", inputs.validation_path},
                   {"original_size", inputs.original_size},
                   {"augmented_size", inputs.augmented_size},
                   {"validation_size", inputs.validation_size}};
  doc["initial_teacher_accuracy"] = result.initial_teacher_accuracy;

  ordered_json rounds = ordered_json::array();
  for (const auto& r : result.rounds) {
    ordered_json jr;
    jr["round"] = r.round;
    jr["teacher_accuracy"] = r.teacher_accuracy;
    jr["student_accuracy"] = r.student_accuracy;
    jr["student_checksum"] = hex64(r.student_checksum);
    jr["sizes"] = {{"clean", r.clean},       {"noisy", r.noisy},
                   {"easy", r.easy},         {"hard", r.hard},
                   {"recalled", r.recalled}, {"selected", r.selected}};
    if (r.thresholds) {
      jr["thresholds"] = {{"j_avg", r.thresholds->j_avg},
                          {"f_avg", r.thresholds->f_avg}};
    } else {
      jr["thresholds"] = nullptr;
    }
    jr["recalled_by_strategy"] = counts_json(r.recalled_by_strategy);
    jr["selected_by_strategy"] = counts_json(r.selected_by_strategy);
    rounds.push_back(std::move(jr));
  }
  doc["rounds"] = std::move(rounds);

  const auto& best = result.rounds.at(static_cast<std::size_t>(result.best_round - 1));
  doc["final"] = {{"rounds_run", result.rounds.size()},
                  {"stop_reason", result.stop_reason},
                  {"best_round", result.best_round},
                  {"best_validation_accuracy", best.student_accuracy},
                  {"model_checksum", hex64(result.best_model->checksum())},
                  {"final_selected", result.rounds.back().selected}};
  doc["retained_by_strategy"] = counts_json(retained_by_strategy(result));

  if (dump_scores) {
    ordered_json dump = ordered_json::array();
    for (std::size_t i = 0; i < result.selections.size(); ++i) {
      const auto& sel = result.selections[i];
      ordered_json jr;
      jr["round"] = i + 1;
      ordered_json conf = ordered_json::array();
      for (const auto& id : sel.partition.clean) {
        auto it = sel.partition.confidence.find(id);
        if (it == sel.partition.confidence.end()) continue;
        conf.push_back({{"id", id},
                        {"entropy", it->second.entropy},
                        {"w_easy", it->second.w_easy},
                        {"w_hard", it->second.w_hard}});
      }
      jr["confidence"] = std::move(conf);
      ordered_json recall = ordered_json::array();
      for (const auto& s : sel.scores) {
        recall.push_back(
            {{"id", s.id}, {"jaccard", s.jaccard}, {"fluency", s.fluency}});
      }
      jr["recall"] = std::move(recall);
      jr["selected"] = sel.selected;
      dump.push_back(std::move(jr));
    }
    doc["scores"] = std::move(dump);
  }
  return doc.dump(2) + "\n";
}

std::string report_summary(const PipelineResult& result) {
  std::ostringstream out;
  char line[256];
  out << "initial teacher accuracy: " << fixed(result.initial_teacher_accuracy)
      << "\n\n";
  std::snprintf(line, sizeof(line), "%5s %7s %7s %7s %7s %8s %8s %8s %8s\n",
                "round", "clean", "noisy", "easy", "hard", "recalled",
                "selected", "teacher", "student");
  out << line;
  for (const auto& r : result.rounds) {
    std::snprintf(line, sizeof(line),
                  "%5d %7zu %7zu %7zu %7zu %8zu %8zu %8s %8s\n", r.round,
                  r.clean, r.noisy, r.easy, r.hard, r.recalled, r.selected,
                  fixed(r.teacher_accuracy).c_str(),
                  fixed(r.student_accuracy).c_str());
    out << line;
  }
  out << "\nretained augments by strategy (final round):\n";
  const auto counts = retained_by_strategy(result);
  for (Strategy s : kAllStrategies) {
    auto it = counts.find(s);
    std::snprintf(line, sizeof(line), "  %-9s %8zu\n",
                  std::string(strategy_name(s)).c_str(),
                  it == counts.end() ? std::size_t{0} : it->second);
    out << line;
  }
  out << "\nbest round: " << result.best_round << " ("
      << result.stop_reason << ")\n";
  return out.str();
}

std::string sweep_json(const PipelineConfig& config,
                       const std::vector<SweepRow>& rows) {
  ordered_json doc;
  doc["schema_version"] = kReportSchemaVersion;
  doc["config"] = config_json(config);
  ordered_json jrows = ordered_json::array();
  for (const auto& r : rows) {
    jrows.push_back(
        {{"tau", r.tau}, {"accuracy", r.accuracy}, {"selected", r.selected}});
  }
  doc["rows"] = std::move(jrows);
  return doc.dump(2) + "\n";
}

std::string sweep_table(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  char line[128];
  std::snprintf(line, sizeof(line), "%8s %10s %10s\n", "tau", "accuracy",
                "selected");
  out << line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof(line), "%8.4f %10s %10zu\n", r.tau,
                  fixed(r.accuracy).c_str(), r.selected);
    out << line;
  }
  return out.str();
}

}  // namespace augsel
