#include "augsel/cli.hpp"

#include <filesystem>
#include <fstream>
#include <map>
#include <optional>

#include "CLI11.hpp"
#include "augsel/augment.hpp"
#include "augsel/config.hpp"
#include "augsel/error.hpp"
#include "augsel/report.hpp"
#include "augsel/selftrain.hpp"

namespace augsel {

namespace fs = std::filesystem;

namespace {

std::string dashed(std::string name) {
  for (char& c : name) {
    if (c == '_') c = '-';
  }
  return name;
}

/// Holds --<key> flag values until parsing finishes.
class ConfigFlags {
 public:
  void attach(CLI::App& app) {
    for (const auto& key : config_keys()) {
      app.add_option("--" + dashed(key.name), values_[key.name], key.help)
          ->group("Configuration");
    }
    app.add_option("--config", config_path_, "key=value configuration file");
  }

  PipelineConfig resolve() const {
    PipelineConfig config;
    if (!config_path_.empty()) apply_config_file(config, config_path_);
    apply_env_overrides(config);
    for (const auto& key : config_keys()) {
      const auto& v = values_.at(key.name);
      if (!v.empty()) apply_config_value(config, key.name, v);
    }
    config.validate();
    return config;
  }

 private:
  std::map<std::string, std::string> values_;
  std::string config_path_;
};

Format resolve_format(const std::string& flag, const fs::path& path) {
  if (flag.empty()) return format_from_path(path);
  auto f = parse_format(flag);
  if (!f) throw InputError("unknown format \"" + flag + "\" (jsonl|tsv)");
  return *f;
}

void write_text(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path.string());
  out << contents;
  if (!out) throw InputError("write failed: " + path.string());
}

struct PipelineInputs {
  std::string train_path;
  std::string augmented_path;
  std::string valid_path;
  std::string format;
  std::string lm_corpus;

  void attach(CLI::App& app) {
    app.add_option("--train", train_path, "original labeled corpus")->required();
    app.add_option("--augmented", augmented_path, "augmented corpus (jsonl)")
        ->required();
    app.add_option("--valid", valid_path, "validation set")->required();
    app.add_option("--format", format, "jsonl or tsv for --train/--valid");
    app.add_option("--lm-corpus", lm_corpus,
                   "plain-text LM corpus, one sentence per line");
  }
};

struct LoadedInputs {
  Dataset original;
  AugmentedDataset augmented;
  Dataset validation;
  std::optional<NGramLm> lm;
  ReportInputs report;
};

LoadedInputs load_inputs(const PipelineInputs& in, const PipelineConfig& config) {
  LoadedInputs out;
  out.original =
      load_dataset(in.train_path, resolve_format(in.format, in.train_path));
  out.augmented = load_augmented(in.augmented_path, out.original);
  out.validation = load_dataset(in.valid_path,
                                resolve_format(in.format, in.valid_path),
                                out.original.labels);
  if (!in.lm_corpus.empty()) {
    out.lm = NGramLm::train_from_file(in.lm_corpus, config.lm.order, config.lm.k);
  }
  out.report = {in.train_path,          in.augmented_path,
                in.valid_path,          out.original.size(),
                out.augmented.size(),   out.validation.size()};
  return out;
}

// ---------------------------------------------------------------------------

int cmd_augment(const std::string& input, const std::string& output,
                const std::string& format, const std::string& lexicon_path,
                const std::string& stopwords_path, const ConfigFlags& flags,
                std::ostream& out) {
  PipelineConfig config = flags.resolve();
  Dataset dataset = load_dataset(input, resolve_format(format, input));
  SynonymLexicon lexicon = lexicon_path.empty()
                               ? SynonymLexicon::bundled()
                               : SynonymLexicon::load(lexicon_path);
  if (!stopwords_path.empty()) config.eda.stopwords = load_stopwords(stopwords_path);
  AugmentedDataset augmented = run_eda(dataset, lexicon, config.eda);
  emit_augmented(augmented, output);

  StrategyCounts counts;
  for (const auto& ex : augmented.examples) ++counts[ex.strategy];
  out << "originals: " << dataset.size() << "\n";
  for (Strategy s : kEdaStrategies) {
    out << strategy_name(s) << ": " << counts[s] << "\n";
  }
  out << "total: " << augmented.size() << "\n";
  return kExitOk;
}

int cmd_run(const PipelineInputs& in, const ConfigFlags& flags,
            const std::string& report_path, const std::string& model_path,
            bool dump_scores, std::ostream& out) {
  const PipelineConfig config = flags.resolve();
  LoadedInputs data = load_inputs(in, config);
  PipelineResult result =
      run_pipeline(data.original, data.augmented, data.validation, config,
                   data.lm ? &*data.lm : nullptr);

  result.best_model->save(model_path);
  write_text(report_path, report_json(config, data.report, result, dump_scores));
  const std::string summary = report_summary(result);
  fs::path summary_path = fs::path(report_path).replace_extension(".txt");
  if (summary_path != fs::path(report_path)) write_text(summary_path, summary);
  out << summary;
  out << "report: " << report_path << "\nmodel: " << model_path << " ("
      << hex64(result.best_model->checksum()) << ")\n";
  return kExitOk;
}

int cmd_sweep(const PipelineInputs& in, const ConfigFlags& flags,
              const std::vector<double>& taus, const std::string& report_path,
              std::ostream& out) {
  const PipelineConfig base = flags.resolve();
  for (double tau : taus) {
    if (!(tau >= 0.0)) throw InputError("tau values must be >= 0");
  }
  LoadedInputs data = load_inputs(in, base);
  std::vector<SweepRow> rows;
  for (double tau : taus) {
    PipelineConfig config = base;
    config.entropy_tau = tau;
    config.entropy_tau_external = tau;
    PipelineResult result =
        run_pipeline(data.original, data.augmented, data.validation, config,
                     data.lm ? &*data.lm : nullptr);
    const auto& best =
        result.rounds.at(static_cast<std::size_t>(result.best_round - 1));
    rows.push_back({tau, best.student_accuracy, result.rounds.front().selected});
  }
  out << sweep_table(rows);
  if (!report_path.empty()) write_text(report_path, sweep_json(base, rows));
  return kExitOk;
}

int cmd_eval(const std::string& model_path, const std::string& data_path,
             const std::string& format, std::ostream& out) {
  ReferenceClassifier model = ReferenceClassifier::load(model_path);
  Dataset dataset = load_dataset(data_path, resolve_format(format, data_path),
                                 model.labels());
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", evaluate(model, dataset));
  out << buf << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Augment a text-classification corpus and select the useful "
               "augments with self-training",
               "augsel"};
  app.require_subcommand(1);

  // augment
  CLI::App* augment = app.add_subcommand("augment", "run EDA over a corpus");
  std::string aug_input, aug_output, aug_format, aug_lexicon, aug_stopwords;
  ConfigFlags aug_flags;
  augment->add_option("--input", aug_input, "original corpus")->required();
  augment->add_option("-o,--output", aug_output, "augmented jsonl to write")
      ->required();
  augment->add_option("--format", aug_format, "jsonl or tsv for --input");
  augment->add_option("--lexicon", aug_lexicon,
                      "synonym lexicon (word<TAB>syn1,syn2); bundled if unset");
  augment->add_option("--stopwords", aug_stopwords, "stopword list, one per line");
  aug_flags.attach(*augment);

  // run
  CLI::App* run = app.add_subcommand("run", "run the self-training selection pipeline");
  PipelineInputs run_inputs;
  ConfigFlags run_flags;
  std::string report_path = "report.json";
  std::string model_path = "model.ckpt";
  bool dump_scores = false;
  run_inputs.attach(*run);
  run->add_option("--report", report_path, "run report (json)");
  run->add_option("--model", model_path, "best-student checkpoint");
  run->add_flag("--dump-scores", dump_scores, "include per-sample scores");
  run_flags.attach(*run);

  // sweep
  CLI::App* sweep = app.add_subcommand("sweep", "run the pipeline for several entropy thresholds");
  PipelineInputs sweep_inputs;
  ConfigFlags sweep_flags;
  std::vector<double> taus;
  std::string sweep_report;
  sweep_inputs.attach(*sweep);
  sweep->add_option("--tau", taus, "entropy thresholds, e.g. 0.2,0.25,0.3")
      ->required()
      ->delimiter(',');
  sweep->add_option("--report", sweep_report, "sweep table (json)");
  sweep_flags.attach(*sweep);

  // eval
  CLI::App* eval = app.add_subcommand("eval", "accuracy of a checkpoint on a dataset");
  std::string eval_model, eval_data, eval_format;
  eval->add_option("--model", eval_model, "checkpoint")->required();
  eval->add_option("--data", eval_data, "labeled dataset")->required();
  eval->add_option("--format", eval_format, "jsonl or tsv");

  std::vector<const char*> argv{"augsel"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "augsel: error: " << e.what() << "\n";
    return kExitInputError;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  try {
    if (*augment) {
      return cmd_augment(aug_input, aug_output, aug_format, aug_lexicon,
                         aug_stopwords, aug_flags, out);
    }
    if (*run) {
      return cmd_run(run_inputs, run_flags, report_path, model_path,
                     dump_scores, out);
    }
    if (*sweep) return cmd_sweep(sweep_inputs, sweep_flags, taus, sweep_report, out);
    return cmd_eval(eval_model, eval_data, eval_format, out);
  } catch (const InputError& e) {
    err << "augsel " << name << ": error: " << e.what() << "\n";
    return kExitInputError;
  } catch (const PipelineError& e) {
    err << "augsel " << name << ": pipeline error: " << e.what() << "\n";
    return kExitPipelineError;
  } catch (const std::exception& e) {
    err << "augsel " << name << ": error: " << e.what() << "\n";
    return kExitPipelineError;
  }
}

}  // namespace augsel
