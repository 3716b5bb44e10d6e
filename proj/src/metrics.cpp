#include "contrastforge/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "contrastforge/error.hpp"

namespace contrastforge {

namespace {

// Neumaier-compensated running sum.
class CompensatedSum {
 public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

double round_to(double x, int places) {
  const double scale = std::pow(10.0, places);
  return std::round(x * scale) / scale;
}

void fill_aggregates(EvalReport& r) {
  r.n = r.scored.size();
  r.confusion = {};
  CompensatedSum ce;
  for (const auto& s : r.scored) {
    ++r.confusion[index_of(s.label)][index_of(s.predicted)];
    ce.add(s.ce);
  }
  r.accuracy = r.n == 0 ? 0.0 : static_cast<double>(r.correct()) / static_cast<double>(r.n);
  r.mean_ce = r.n == 0 ? 0.0 : ce.value() / static_cast<double>(r.n);
  for (std::size_t g = 0; g < kNumLabels; ++g) {
    std::size_t row = 0;
    for (std::size_t p = 0; p < kNumLabels; ++p) row += r.confusion[g][p];
    r.per_label_accuracy[g] = row == 0 ? std::nullopt
                                       : std::optional<double>(static_cast<double>(r.confusion[g][g]) /
                                                               static_cast<double>(row));
  }
}

}  // namespace

ProbTriple::ProbTriple(std::array<double, 3> p) : p_(p) {
  double sum = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    if (!std::isfinite(p[i]) || p[i] < 0.0) {
      throw ValidationError("invalid probability vector: entry " + std::to_string(i) +
                            " is negative or not finite");
    }
    sum += p[i];
  }
  if (std::fabs(sum - 1.0) > kSumTolerance) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", sum);
    throw ValidationError(std::string("invalid probability vector: sums to ") + buf);
  }
}

Label ProbTriple::argmax() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < 3; ++i) {
    if (p_[i] > p_[best]) best = i;
  }
  return static_cast<Label>(best);
}

std::size_t EvalReport::correct() const {
  std::size_t c = 0;
  for (std::size_t i = 0; i < kNumLabels; ++i) c += confusion[i][i];
  return c;
}

double cross_entropy(Label label, const ProbTriple& probs) {
  const double p = std::max(probs[label], kProbabilityFloor);
  // -log(1) is -0.0; report a clean zero.
  return p >= 1.0 ? 0.0 : -std::log(p);
}

ScoredExample score(std::string id, Label label, const ProbTriple& probs) {
  return ScoredExample{std::move(id), label, probs, cross_entropy(label, probs), probs.argmax()};
}

double mean_error(std::span<const ScoredExample> scored) {
  if (scored.empty()) throw ValidationError("mean_error of an empty list");
  CompensatedSum sum;
  for (const auto& s : scored) sum.add(s.ce);
  return sum.value() / static_cast<double>(scored.size());
}

double contrast_error(std::span<const LabeledId> gold, const PredictionMap& predictions) {
  std::vector<ScoredExample> scored;
  scored.reserve(gold.size());
  for (const auto& g : gold) {
    auto it = predictions.find(g.id);
    if (it == predictions.end()) throw ValidationError("no prediction for contrast example id '" + g.id + "'");
    scored.push_back(score(g.id, g.label, it->second));
  }
  return mean_error(scored);
}

EvalReport evaluate(std::span<const Example> examples, const PredictionMap& predictions) {
  EvalReport r;
  r.scored.reserve(examples.size());
  std::unordered_set<std::string_view> seen;
  for (const auto& ex : examples) {
    if (!seen.insert(ex.id).second) throw ValidationError("duplicate example id '" + ex.id + "'");
    auto it = predictions.find(ex.id);
    if (it == predictions.end()) throw ValidationError("no prediction for example id '" + ex.id + "'");
    r.scored.push_back(score(ex.id, ex.label, it->second));
  }
  fill_aggregates(r);
  return r;
}

double consistency(std::span<const ScoredExample> original, std::span<const ScoredExample> contrast) {
  if (contrast.empty()) throw ValidationError("consistency over an empty contrast list");
  std::unordered_map<std::string_view, Label> orig;
  for (const auto& s : original) {
    if (!orig.emplace(s.id, s.predicted).second) {
      throw ValidationError("duplicate original id '" + s.id + "' in consistency join");
    }
  }
  std::unordered_set<std::string_view> seen;
  std::size_t same = 0;
  for (const auto& s : contrast) {
    if (!seen.insert(s.id).second) throw ValidationError("duplicate contrast id '" + s.id + "' in consistency join");
    auto it = orig.find(s.id);
    if (it == orig.end()) throw ValidationError("contrast id '" + s.id + "' has no original counterpart");
    if (it->second == s.predicted) ++same;
  }
  return static_cast<double>(same) / static_cast<double>(contrast.size());
}

std::string report_to_json(const EvalReport& r) {
  nlohmann::ordered_json doc;
  doc["n"] = r.n;
  doc["correct"] = r.correct();
  doc["accuracy"] = round_to(r.accuracy, 4);
  doc["mean_ce"] = round_to(r.mean_ce, 7);
  doc["confusion"] = r.confusion;
  auto per = nlohmann::ordered_json::object();
  for (std::size_t i = 0; i < kNumLabels; ++i) {
    const auto name = std::string(to_string(static_cast<Label>(i)));
    if (r.per_label_accuracy[i]) {
      per[name] = round_to(*r.per_label_accuracy[i], 4);
    } else {
      per[name] = nullptr;
    }
  }
  doc["per_label_accuracy"] = std::move(per);
  auto items = nlohmann::ordered_json::array();
  for (const auto& s : r.scored) {
    nlohmann::ordered_json j;
    j["id"] = s.id;
    j["label"] = static_cast<int>(s.label);
    j["predicted"] = static_cast<int>(s.predicted);
    j["ce"] = s.ce;
    j["probs"] = s.probs.values();
    items.push_back(std::move(j));
  }
  doc["examples"] = std::move(items);
  return doc.dump(2);
}

EvalReport report_from_json(const std::string& text) {
  auto doc = nlohmann::json::parse(text, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ValidationError("report is not a JSON object");
  try {
    EvalReport r;
    for (const auto& j : doc.at("examples")) {
      auto label = label_from_int(j.at("label").get<std::int64_t>());
      if (!label) throw ValidationError("report example with invalid label");
      ProbTriple probs(j.at("probs").get<std::array<double, 3>>());
      r.scored.push_back(score(j.at("id").get<std::string>(), *label, probs));
    }
    fill_aggregates(r);
    if (r.n != doc.at("n").get<std::size_t>()) throw ValidationError("report n disagrees with its examples");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("malformed report: ") + e.what());
  }
}

std::string report_to_table(const EvalReport& r) {
  std::ostringstream out;
  char buf[128];
  std::snprintf(buf, sizeof buf, "examples   %zu\naccuracy   %.4f\nmean_ce    %.7f\n", r.n, r.accuracy,
                r.mean_ce);
  out << buf << "\nconfusion (rows = gold, cols = predicted)\n";
  std::snprintf(buf, sizeof buf, "%-15s%12s%12s%15s%10s\n", "", "entailment", "neutral", "contradiction",
                "acc");
  out << buf;
  for (std::size_t g = 0; g < kNumLabels; ++g) {
    std::string acc = r.per_label_accuracy[g] ? "" : "-";
    if (r.per_label_accuracy[g]) {
      std::snprintf(buf, sizeof buf, "%.4f", *r.per_label_accuracy[g]);
      acc = buf;
    }
    std::snprintf(buf, sizeof buf, "%-15s%12zu%12zu%15zu%10s\n",
                  std::string(to_string(static_cast<Label>(g))).c_str(), r.confusion[g][0],
                  r.confusion[g][1], r.confusion[g][2], acc.c_str());
    out << buf;
  }
  return out.str();
}

}  // namespace contrastforge
