#include "contrastforge/review.hpp"

#include <unistd.h>

#include <charconv>
#include <ctime>
#include <filesystem>
#include <istream>
#include <sstream>

#include <httplib.h>
#include <json.hpp>

#include "contrastforge/error.hpp"
#include "text_util.hpp"

namespace contrastforge {

namespace {

using nlohmann::json;
using ojson = nlohmann::ordered_json;

void check_decision(const ReviewDecision& d) {
  const bool has_text = d.edited_text && !detail::trim(*d.edited_text).empty();
  if (d.verdict == Verdict::edit && !has_text) throw ValidationError("EDIT requires non-empty edited_text");
  if (d.verdict != Verdict::edit && d.edited_text) throw ValidationError("edited_text is only allowed with EDIT");
}

void apply_one(ContrastCandidate& c, const ReviewDecision& d) {
  switch (d.verdict) {
    case Verdict::accept:
      c.status = ReviewStatus::accepted;
      c.edited_text.reset();
      break;
    case Verdict::reject:
      c.status = ReviewStatus::rejected;
      c.edited_text.reset();
      break;
    case Verdict::edit:
      c.status = ReviewStatus::edited;
      c.edited_text = d.edited_text;
      break;
  }
}

ojson candidate_view(std::size_t index, const ContrastCandidate& c) {
  ojson item = ojson::parse(candidate_to_json_line(c));
  ojson view;
  view["index"] = index;
  view["premise"] = c.premise;
  view["hypothesis"] = c.original_hypothesis;
  view["hypothesis_prime"] = c.hypothesis_prime;
  view["label"] = static_cast<int>(c.label);
  view["substitutions"] = item["substitutions"];
  view["status"] = to_string(c.status);
  if (c.edited_text) view["edited_text"] = *c.edited_text;
  return view;
}

std::optional<std::size_t> parse_size(const std::string& s) {
  std::size_t v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) return std::nullopt;
  return v;
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  res.status = status;
  res.set_content(json{{"error", message}}.dump(), "application/json");
}

constexpr const char* kPlaceholderPage =
    "<!doctype html><html><head><meta charset=\"utf-8\"><title>contrast review</title></head>"
    "<body><p>Review API is running. Start the browser UI with <code>--ui DIR</code>, or use "
    "<code>/api/candidates</code>, <code>/api/decisions</code>, <code>/api/progress</code> and "
    "<code>/api/export</code> directly.</p></body></html>";

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::accept: return "ACCEPT";
    case Verdict::reject: return "REJECT";
    case Verdict::edit: return "EDIT";
  }
  return "?";
}

std::optional<Verdict> parse_verdict(std::string_view s) {
  const std::string lower = detail::to_lower(s);
  if (lower == "accept") return Verdict::accept;
  if (lower == "reject") return Verdict::reject;
  if (lower == "edit") return Verdict::edit;
  return std::nullopt;
}

std::string utc_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string decision_to_json_line(const ReviewDecision& d) {
  ojson j;
  j["candidate_index"] = d.candidate_index;
  j["verdict"] = to_string(d.verdict);
  if (d.edited_text) j["edited_text"] = *d.edited_text;
  j["timestamp"] = d.timestamp;
  if (d.reviewer) j["reviewer"] = *d.reviewer;
  return j.dump();
}

ReviewDecision decision_from_json(const std::string& line) {
  auto doc = json::parse(line, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) throw ValidationError("decision is not a JSON object");
  ReviewDecision d;
  auto idx = doc.find("candidate_index");
  if (idx == doc.end() || !idx->is_number_unsigned()) {
    throw ValidationError("candidate_index must be a non-negative integer");
  }
  d.candidate_index = idx->get<std::size_t>();
  auto verdict_it = doc.find("verdict");
  if (verdict_it == doc.end() || !verdict_it->is_string()) throw ValidationError("missing verdict");
  auto verdict = parse_verdict(verdict_it->get<std::string>());
  if (!verdict) throw ValidationError("verdict must be ACCEPT, REJECT or EDIT");
  d.verdict = *verdict;
  if (auto it = doc.find("edited_text"); it != doc.end() && !it->is_null()) {
    if (!it->is_string()) throw ValidationError("edited_text must be a string");
    d.edited_text = it->get<std::string>();
  }
  if (auto it = doc.find("timestamp"); it != doc.end() && it->is_string()) d.timestamp = it->get<std::string>();
  if (auto it = doc.find("reviewer"); it != doc.end() && it->is_string()) d.reviewer = it->get<std::string>();
  check_decision(d);
  return d;
}

std::vector<ReviewDecision> parse_decisions(std::istream& in) {
  std::vector<ReviewDecision> out;
  std::string line;
  std::size_t line_no = 0;
  while (detail::read_line(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    try {
      out.push_back(decision_from_json(line));
    } catch (const ValidationError& e) {
      throw ValidationError("decision log line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<ContrastCandidate> apply_decisions(std::vector<ContrastCandidate> candidates,
                                               std::span<const ReviewDecision> log) {
  for (std::size_t i = 0; i < log.size(); ++i) {
    const auto& d = log[i];
    if (d.candidate_index >= candidates.size()) {
      throw ValidationError("decision log line " + std::to_string(i + 1) + ": candidate_index " +
                            std::to_string(d.candidate_index) + " out of bounds (" +
                            std::to_string(candidates.size()) + " candidates)");
    }
    check_decision(d);
    apply_one(candidates[d.candidate_index], d);
  }
  return candidates;
}

ReviewProgress progress_of(std::span<const ContrastCandidate> candidates) {
  ReviewProgress p;
  for (const auto& c : candidates) {
    switch (c.status) {
      case ReviewStatus::pending: ++p.pending; break;
      case ReviewStatus::accepted: ++p.accepted; break;
      case ReviewStatus::rejected: ++p.rejected; break;
      case ReviewStatus::edited: ++p.edited; break;
    }
  }
  return p;
}

// --- ReviewSession ---------------------------------------------------------

ReviewSession::ReviewSession(const std::string& candidates_path, const std::string& decisions_path)
    : candidates_(load_candidates(candidates_path)), decisions_path_(decisions_path) {
  if (std::filesystem::exists(decisions_path)) {
    auto in = detail::open_input(decisions_path);
    try {
      log_ = parse_decisions(in);
    } catch (const ValidationError& e) {
      throw ValidationError(decisions_path + ": " + e.what());
    }
  }
  try {
    resolved_ = apply_decisions(candidates_, log_);
  } catch (const ValidationError& e) {
    throw ValidationError(decisions_path + ": " + e.what());
  }
  sink_ = std::fopen(decisions_path.c_str(), "ab");
  if (!sink_) throw IoError("cannot open decisions file " + decisions_path + " for appending");
}

ReviewSession::~ReviewSession() {
  if (sink_) std::fclose(sink_);
}

void ReviewSession::record(ReviewDecision decision) {
  std::unique_lock lock(mutex_);
  if (decision.candidate_index >= candidates_.size()) {
    throw ValidationError("candidate_index " + std::to_string(decision.candidate_index) + " out of bounds (" +
                          std::to_string(candidates_.size()) + " candidates)");
  }
  check_decision(decision);
  if (decision.timestamp.empty()) decision.timestamp = utc_timestamp();

  const std::string line = decision_to_json_line(decision) + "\n";
  if (std::fwrite(line.data(), 1, line.size(), sink_) != line.size() || std::fflush(sink_) != 0 ||
      ::fsync(::fileno(sink_)) != 0) {
    throw IoError("failed to persist decision to " + decisions_path_);
  }
  apply_one(resolved_[decision.candidate_index], decision);
  log_.push_back(std::move(decision));
}

std::vector<ContrastCandidate> ReviewSession::resolved() const {
  std::shared_lock lock(mutex_);
  return resolved_;
}

std::vector<ReviewDecision> ReviewSession::log() const {
  std::shared_lock lock(mutex_);
  return log_;
}

ReviewProgress ReviewSession::progress() const {
  std::shared_lock lock(mutex_);
  return progress_of(resolved_);
}

// --- ReviewServer ----------------------------------------------------------

struct ReviewServer::Impl {
  ReviewSession& session;
  httplib::Server server;
  std::thread thread;

  Impl(ReviewSession& s, const std::string& static_dir) : session(s) {
    // Without SO_REUSEPORT a second server on the same port fails to bind.
    server.set_socket_options([](socket_t sock) {
      int yes = 1;
      ::setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, &yes, sizeof yes);
    });
    server.Get("/api/candidates", [this](const httplib::Request& req, httplib::Response& res) {
      std::optional<ReviewStatus> filter;
      if (req.has_param("status") && !req.get_param_value("status").empty()) {
        filter = parse_review_status(req.get_param_value("status"));
        if (!filter) return send_error(res, 400, "unknown status filter");
      }
      std::size_t offset = 0, limit = 50;
      if (req.has_param("offset")) {
        auto v = parse_size(req.get_param_value("offset"));
        if (!v) return send_error(res, 400, "offset must be a non-negative integer");
        offset = *v;
      }
      if (req.has_param("limit")) {
        auto v = parse_size(req.get_param_value("limit"));
        if (!v) return send_error(res, 400, "limit must be a non-negative integer");
        limit = *v;
      }
      const auto resolved = session.resolved();
      ojson items = ojson::array();
      std::size_t total = 0;
      for (std::size_t i = 0; i < resolved.size(); ++i) {
        if (filter && resolved[i].status != *filter) continue;
        if (total >= offset && items.size() < limit) items.push_back(candidate_view(i, resolved[i]));
        ++total;
      }
      ojson body;
      body["total"] = total;
      body["items"] = std::move(items);
      res.set_content(body.dump(), "application/json");
    });

    server.Post("/api/decisions", [this](const httplib::Request& req, httplib::Response& res) {
      try {
        ReviewDecision d = decision_from_json(req.body);
        d.timestamp.clear();
        session.record(std::move(d));
        res.status = 204;
      } catch (const ValidationError& e) {
        send_error(res, 400, e.what());
      } catch (const IoError& e) {
        send_error(res, 500, e.what());
      }
    });

    server.Get("/api/progress", [this](const httplib::Request&, httplib::Response& res) {
      const auto p = session.progress();
      ojson body;
      body["pending"] = p.pending;
      body["accepted"] = p.accepted;
      body["rejected"] = p.rejected;
      body["edited"] = p.edited;
      body["total"] = p.pending + p.accepted + p.rejected + p.edited;
      res.set_content(body.dump(), "application/json");
    });

    server.Get("/api/export", [this](const httplib::Request& req, httplib::Response& res) {
      std::set<ReviewStatus> wanted{ReviewStatus::accepted, ReviewStatus::edited};
      if (req.has_param("statuses")) {
        wanted.clear();
        std::stringstream list(req.get_param_value("statuses"));
        std::string item;
        while (std::getline(list, item, ',')) {
          if (detail::trim(item).empty()) continue;
          auto s = parse_review_status(detail::trim(item));
          if (!s) return send_error(res, 400, "unknown status '" + item + "'");
          if (*s == ReviewStatus::rejected) return send_error(res, 400, "rejected candidates are never exported");
          wanted.insert(*s);
        }
      }
      std::ostringstream out;
      for (const auto& c : session.resolved()) {
        if (wanted.contains(c.status)) out << candidate_to_json_line(c) << '\n';
      }
      res.set_header("Content-Disposition", "attachment; filename=\"contrast_candidates.jsonl\"");
      res.set_content(out.str(), "application/x-ndjson");
    });

    if (!static_dir.empty()) {
      if (!server.set_mount_point("/", static_dir)) throw IoError("UI directory not found: " + static_dir);
    } else {
      server.Get("/", [](const httplib::Request&, httplib::Response& res) {
        res.set_content(kPlaceholderPage, "text/html");
      });
    }
  }
};

ReviewServer::ReviewServer(ReviewSession& session, std::string static_dir)
    : impl_(std::make_unique<Impl>(session, static_dir)) {}

ReviewServer::~ReviewServer() { stop(); }

int ReviewServer::start(const std::string& host, int port) {
  int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port) + " (port in use?)");
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void ReviewServer::run(const std::string& host, int port) {
  if (!impl_->server.bind_to_port(host, port)) {
    throw IoError("cannot bind " + host + ":" + std::to_string(port) + " (port in use?)");
  }
  impl_->server.listen_after_bind();
}

void ReviewServer::stop() {
  if (!impl_) return;
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

}  // namespace contrastforge
