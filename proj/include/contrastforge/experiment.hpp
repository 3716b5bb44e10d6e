#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "contrastforge/corpus.hpp"
#include "contrastforge/metrics.hpp"
#include "contrastforge/perturb.hpp"

namespace contrastforge {

struct ComparisonReport {
  EvalReport validation;
  EvalReport contrast;
  /// (validation.accuracy - contrast.accuracy) * 100
  double accuracy_drop_pp = 0.0;
  double consistency = 0.0;
};

/// Throws ValidationError if either report is empty or consistency is
/// outside [0, 1].
ComparisonReport compare(EvalReport validation, EvalReport contrast, double consistency);

std::string comparison_to_json(const ComparisonReport& report);
std::string comparison_to_table(const ComparisonReport& report);

struct TrainingExportConfig {
  bool include_originals = true;
  std::set<ReviewStatus> statuses_included{ReviewStatus::accepted, ReviewStatus::edited};
  bool dedupe = true;
  /// Refuse to export while any candidate is still PENDING.
  bool strict = false;

  void validate() const;
};

struct ExportStats {
  std::size_t originals = 0;
  std::size_t accepted = 0;
  std::size_t edited = 0;
  std::size_t deduped = 0;
  std::size_t excluded = 0;  // candidates whose status was not selected
  std::size_t written = 0;

  bool operator==(const ExportStats&) const = default;
};

struct TrainingExport {
  std::vector<Example> records;
  ExportStats stats;
};

/// Originals first (when included), then selected candidates in order, with
/// edited_text standing in for the hypothesis of EDITED candidates.
/// Rejected candidates never appear.
TrainingExport export_training_set(std::span<const Example> originals,
                                   std::span<const ContrastCandidate> candidates,
                                   const TrainingExportConfig& config);

std::string export_stats_to_json(const ExportStats& stats);

struct SeriesPoint {
  std::string checkpoint_tag;
  double validation_accuracy = 0.0;
  double contrast_accuracy = 0.0;

  bool operator==(const SeriesPoint&) const = default;
};

struct CheckpointPredictions {
  std::string tag;
  PredictionMap validation;
  PredictionMap contrast;
};

std::vector<SeriesPoint> track_series(std::span<const CheckpointPredictions> checkpoints,
                                      std::span<const Example> validation_set,
                                      std::span<const Example> contrast_set);

std::string series_to_table(std::span<const SeriesPoint> series);
std::string series_to_csv(std::span<const SeriesPoint> series);

}  // namespace contrastforge
