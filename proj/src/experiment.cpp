#include "contrastforge/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>
#include <tuple>

#include <json.hpp>

#include "contrastforge/error.hpp"

namespace contrastforge {

ComparisonReport compare(EvalReport validation, EvalReport contrast, double consistency) {
  if (validation.n == 0 || contrast.n == 0) throw ValidationError("compare needs two non-empty reports");
  if (!(consistency >= 0.0 && consistency <= 1.0)) throw ValidationError("consistency must lie in [0, 1]");
  ComparisonReport r;
  r.accuracy_drop_pp = (validation.accuracy - contrast.accuracy) * 100.0;
  r.consistency = consistency;
  r.validation = std::move(validation);
  r.contrast = std::move(contrast);
  return r;
}

std::string comparison_to_json(const ComparisonReport& r) {
  auto summary = [](const EvalReport& e) {
    nlohmann::ordered_json j;
    j["n"] = e.n;
    j["correct"] = e.correct();
    j["accuracy"] = std::round(e.accuracy * 1e4) / 1e4;
    j["mean_ce"] = std::round(e.mean_ce * 1e7) / 1e7;
    j["confusion"] = e.confusion;
    return j;
  };
  nlohmann::ordered_json doc;
  doc["validation"] = summary(r.validation);
  doc["contrast"] = summary(r.contrast);
  doc["accuracy_drop_pp"] = std::round(r.accuracy_drop_pp * 1e6) / 1e6;
  doc["consistency"] = std::round(r.consistency * 1e4) / 1e4;
  return doc.dump(2);
}

std::string comparison_to_table(const ComparisonReport& r) {
  char buf[256];
  std::ostringstream out;
  std::snprintf(buf, sizeof buf, "%-12s%8s%10s%12s\n", "set", "n", "accuracy", "mean_ce");
  out << buf;
  std::snprintf(buf, sizeof buf, "%-12s%8zu%10.4f%12.7f\n", "validation", r.validation.n,
                r.validation.accuracy, r.validation.mean_ce);
  out << buf;
  std::snprintf(buf, sizeof buf, "%-12s%8zu%10.4f%12.7f\n", "contrast", r.contrast.n, r.contrast.accuracy,
                r.contrast.mean_ce);
  out << buf;
  std::snprintf(buf, sizeof buf, "\naccuracy drop  %.2f pp\nconsistency    %.4f\n", r.accuracy_drop_pp,
                r.consistency);
  out << buf;
  return out.str();
}

void TrainingExportConfig::validate() const {
  if (statuses_included.empty()) throw ValidationError("statuses_included must not be empty");
  for (auto s : statuses_included) {
    if (s != ReviewStatus::accepted && s != ReviewStatus::edited) {
      throw ValidationError("only ACCEPTED and EDITED candidates can be exported");
    }
  }
}

TrainingExport export_training_set(std::span<const Example> originals,
                                   std::span<const ContrastCandidate> candidates,
                                   const TrainingExportConfig& config) {
  config.validate();
  if (config.strict) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (candidates[i].status == ReviewStatus::pending) {
        throw ValidationError("candidate " + std::to_string(i) + " (source " + candidates[i].source_id +
                              ") is still PENDING");
      }
    }
  }

  TrainingExport out;
  std::set<std::tuple<std::string, std::string, Label>> seen;
  auto emit = [&](Example ex) {
    if (config.dedupe && !seen.emplace(ex.premise, ex.hypothesis, ex.label).second) {
      ++out.stats.deduped;
      return false;
    }
    out.records.push_back(std::move(ex));
    return true;
  };

  if (config.include_originals) {
    for (const auto& ex : originals) {
      Example copy = ex;
      copy.hypothesis_tags.reset();
      if (emit(std::move(copy))) ++out.stats.originals;
    }
  }
  for (const auto& c : candidates) {
    if (c.status == ReviewStatus::rejected || !config.statuses_included.contains(c.status)) {
      ++out.stats.excluded;
      continue;
    }
    Example ex{"contrast-" + c.source_id, c.premise, c.effective_hypothesis(), c.label, std::nullopt};
    if (!emit(std::move(ex))) continue;
    if (c.status == ReviewStatus::edited) {
      ++out.stats.edited;
    } else {
      ++out.stats.accepted;
    }
  }
  out.stats.written = out.records.size();
  return out;
}

std::string export_stats_to_json(const ExportStats& s) {
  nlohmann::ordered_json j;
  j["originals"] = s.originals;
  j["accepted"] = s.accepted;
  j["edited"] = s.edited;
  j["deduped"] = s.deduped;
  j["excluded"] = s.excluded;
  j["written"] = s.written;
  return j.dump(2);
}

std::vector<SeriesPoint> track_series(std::span<const CheckpointPredictions> checkpoints,
                                      std::span<const Example> validation_set,
                                      std::span<const Example> contrast_set) {
  std::vector<SeriesPoint> out;
  out.reserve(checkpoints.size());
  for (const auto& cp : checkpoints) {
    try {
      const auto v = evaluate(validation_set, cp.validation);
      const auto c = evaluate(contrast_set, cp.contrast);
      out.push_back({cp.tag, v.accuracy, c.accuracy});
    } catch (const ValidationError& e) {
      throw ValidationError("checkpoint '" + cp.tag + "': " + e.what());
    }
  }
  return out;
}

std::string series_to_table(std::span<const SeriesPoint> series) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-20s%12s%12s\n", "checkpoint", "validation", "contrast");
  out << buf;
  for (const auto& p : series) {
    std::snprintf(buf, sizeof buf, "%-20s%12.4f%12.4f\n", p.checkpoint_tag.c_str(), p.validation_accuracy,
                  p.contrast_accuracy);
    out << buf;
  }
  return out.str();
}

std::string series_to_csv(std::span<const SeriesPoint> series) {
  std::ostringstream out;
  out << "checkpoint,validation_accuracy,contrast_accuracy\n";
  char buf[64];
  for (const auto& p : series) {
    std::string tag = p.checkpoint_tag;
    if (tag.find_first_of(",\"\n") != std::string::npos) {
      std::string quoted = "\"";
      for (char c : tag) {
        if (c == '"') quoted += '"';
        quoted += c;
      }
      tag = quoted + "\"";
    }
    std::snprintf(buf, sizeof buf, ",%.4f,%.4f\n", p.validation_accuracy, p.contrast_accuracy);
    out << tag << buf;
  }
  return out.str();
}

}  // namespace contrastforge
