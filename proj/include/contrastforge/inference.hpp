#pragma once

#include <chrono>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "contrastforge/corpus.hpp"
#include "contrastforge/metrics.hpp"

namespace contrastforge {

struct PredictionRecord {
  std::string id;
  ProbTriple probs;
};

/// Reads {"id": ..., "probs": [e, n, c]} lines. Throws ValidationError for
/// malformed lines, invalid triples and duplicate ids (with line number).
PredictionMap load_predictions(std::istream& in);
PredictionMap load_predictions(const std::string& path);
void write_predictions(std::span<const PredictionRecord> records, std::ostream& out);

struct BackendConfig {
  enum class Kind { file, http };

  Kind kind = Kind::file;
  /// Predictions file path, or service base URL ("http://host:port").
  std::string location;
  std::size_t batch_size = 32;
  std::chrono::milliseconds timeout{30000};
  unsigned retries = 3;
  std::chrono::milliseconds backoff{100};
  /// Batches in flight at once in HTTP mode.
  std::size_t max_in_flight = 1;

  void validate() const;
};

inline constexpr const char* kBatchEndpoint = "/v1/nli/batch";

struct SentencePair {
  std::string premise;
  std::string hypothesis;
};

/// POSTs one batch to the service and returns the validated triples in
/// request order. Transport failures and 5xx responses are retried with
/// exponential backoff; the final failure is an IoError. A length mismatch
/// or invalid triple is a ValidationError naming the offending index.
std::vector<ProbTriple> query_service(const BackendConfig& backend, std::span<const SentencePair> batch);

/// Predictions for every example: loaded from the file, or gathered from
/// the service in batches (results reassembled in submission order).
PredictionMap predict(const BackendConfig& backend, std::span<const Example> examples);

}  // namespace contrastforge
