#pragma once

#include <array>
#include <cstddef>
#include <cstdio>
#include <iosfwd>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "contrastforge/perturb.hpp"

namespace contrastforge {

enum class Verdict : std::uint8_t { accept, reject, edit };

std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view s);

struct ReviewDecision {
  std::size_t candidate_index = 0;
  Verdict verdict = Verdict::accept;
  std::optional<std::string> edited_text;
  std::string timestamp;  // ISO-8601 UTC
  std::optional<std::string> reviewer;

  bool operator==(const ReviewDecision&) const = default;
};

/// Current UTC time as "YYYY-MM-DDTHH:MM:SSZ".
std::string utc_timestamp();

std::string decision_to_json_line(const ReviewDecision& d);
/// Parses one decision object; throws ValidationError when the EDIT /
/// edited_text pairing is violated.
ReviewDecision decision_from_json(const std::string& line);
std::vector<ReviewDecision> parse_decisions(std::istream& in);

/// Folds the decision log over the candidates, last decision per index
/// winning. Candidates without a decision keep their status. Throws
/// ValidationError naming the 1-based log line of an out-of-bounds index.
std::vector<ContrastCandidate> apply_decisions(std::vector<ContrastCandidate> candidates,
                                               std::span<const ReviewDecision> log);

struct ReviewProgress {
  std::size_t pending = 0;
  std::size_t accepted = 0;
  std::size_t rejected = 0;
  std::size_t edited = 0;

  bool operator==(const ReviewProgress&) const = default;
};

ReviewProgress progress_of(std::span<const ContrastCandidate> candidates);

/// Candidates plus an append-only decision log persisted as JSONL. Each
/// recorded decision is written and fsync'ed before record() returns.
class ReviewSession {
 public:
  /// Loads candidates; replays the decisions file when it exists.
  ReviewSession(const std::string& candidates_path, const std::string& decisions_path);
  ~ReviewSession();

  ReviewSession(const ReviewSession&) = delete;
  ReviewSession& operator=(const ReviewSession&) = delete;

  /// Validates, persists, then applies the decision.
  void record(ReviewDecision decision);

  std::vector<ContrastCandidate> resolved() const;
  const std::vector<ContrastCandidate>& candidates() const { return candidates_; }
  std::vector<ReviewDecision> log() const;
  ReviewProgress progress() const;

 private:
  std::vector<ContrastCandidate> candidates_;
  std::vector<ReviewDecision> log_;
  std::vector<ContrastCandidate> resolved_;
  std::string decisions_path_;
  std::FILE* sink_ = nullptr;
  mutable std::shared_mutex mutex_;
};

/// HTTP front end for a ReviewSession:
///   GET  /api/candidates?status=&offset=&limit=
///   POST /api/decisions
///   GET  /api/progress
///   GET  /api/export?statuses=accepted,edited
///   GET  /  (static UI directory when configured)
class ReviewServer {
 public:
  explicit ReviewServer(ReviewSession& session, std::string static_dir = {});
  ~ReviewServer();

  ReviewServer(const ReviewServer&) = delete;
  ReviewServer& operator=(const ReviewServer&) = delete;

  /// Binds `port` (0 picks a free one) and serves on a background thread.
  /// Returns the bound port; throws IoError when the port is unavailable.
  int start(const std::string& host, int port);
  /// Binds and serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace contrastforge
