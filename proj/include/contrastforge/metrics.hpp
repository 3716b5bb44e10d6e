#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "contrastforge/corpus.hpp"

namespace contrastforge {

/// Class probabilities in label order (entailment, neutral, contradiction).
/// Construction validates: every entry finite and >= 0, sum within 1e-6 of 1.
class ProbTriple {
 public:
  static constexpr double kSumTolerance = 1e-6;

  ProbTriple() : p_{1.0, 0.0, 0.0} {}
  /// Throws ValidationError on an invalid vector.
  explicit ProbTriple(std::array<double, 3> p);

  double operator[](std::size_t i) const { return p_[i]; }
  double operator[](Label l) const { return p_[index_of(l)]; }
  const std::array<double, 3>& values() const { return p_; }
  /// Highest-probability class; ties go to the lowest index.
  Label argmax() const;

  bool operator==(const ProbTriple&) const = default;

 private:
  std::array<double, 3> p_;
};

using PredictionMap = std::unordered_map<std::string, ProbTriple>;

struct ScoredExample {
  std::string id;
  Label label = Label::entailment;
  ProbTriple probs;
  double ce = 0.0;
  Label predicted = Label::entailment;
};

using ConfusionMatrix = std::array<std::array<std::size_t, kNumLabels>, kNumLabels>;

struct EvalReport {
  std::size_t n = 0;
  double accuracy = 0.0;
  double mean_ce = 0.0;
  ConfusionMatrix confusion{};  // [gold][predicted]
  /// nullopt for a label with no gold examples.
  std::array<std::optional<double>, kNumLabels> per_label_accuracy{};
  std::vector<ScoredExample> scored;

  std::size_t correct() const;
};

/// Natural-log probability floor applied before taking the log.
inline constexpr double kProbabilityFloor = 1e-12;

double cross_entropy(Label label, const ProbTriple& probs);

ScoredExample score(std::string id, Label label, const ProbTriple& probs);

/// Mean of the ce fields (compensated summation). Throws on empty input.
double mean_error(std::span<const ScoredExample> scored);

struct LabeledId {
  std::string id;
  Label label = Label::entailment;
};

/// Mean cross-entropy of contrast predictions against the original gold
/// labels. Every id must have a prediction.
double contrast_error(std::span<const LabeledId> gold, const PredictionMap& predictions);

/// Scores every example against its prediction (joined on id).
EvalReport evaluate(std::span<const Example> examples, const PredictionMap& predictions);

/// Fraction of contrast items whose predicted class equals the prediction
/// for the same id on the original side. Originals without a contrast
/// counterpart are ignored; a contrast id missing from the originals or
/// appearing twice is an error.
double consistency(std::span<const ScoredExample> original, std::span<const ScoredExample> contrast);

/// JSON document: n, correct, accuracy (4 dp), mean_ce (7 dp), confusion,
/// per_label_accuracy, and per-example {id, label, predicted, ce}.
std::string report_to_json(const EvalReport& report);
/// Inverse of report_to_json; accuracy is recomputed from the confusion
/// matrix so no precision is lost to rounding.
EvalReport report_from_json(const std::string& text);
/// Human-readable table.
std::string report_to_table(const EvalReport& report);

}  // namespace contrastforge
