#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "augsel/selftrain.hpp"

namespace augsel {

inline constexpr int kReportSchemaVersion = 1;

struct ReportInputs {
  std::string original_path;
  std::string augmented_path;
  std::string validation_path;
  std::size_t original_size = 0;
  std::size_t augmented_size = 0;
  std::size_t validation_size = 0;
};

/// Per-strategy counts of the final round's S_g. Sums to its |S_g|.
StrategyCounts retained_by_strategy(const PipelineResult& result);

/// Machine-readable run report (JSON, schema-versioned). Output depends only
/// on its arguments, so identical runs yield byte-identical reports.
std::string report_json(const PipelineConfig& config, const ReportInputs& inputs,
                        const PipelineResult& result, bool dump_scores);

/// Fixed-width text tables for humans.
std::string report_summary(const PipelineResult& result);

struct SweepRow {
  double tau = 0.0;
  /// Best validation accuracy of the run.
  double accuracy = 0.0;
  /// |S_g| of round 1, where every tau shares the same teacher.
  std::size_t selected = 0;
};

std::string sweep_json(const PipelineConfig& config,
                       const std::vector<SweepRow>& rows);
std::string sweep_table(const std::vector<SweepRow>& rows);

std::string hex64(std::uint64_t value);

}  // namespace augsel
