#include "contrastforge/inference.hpp"

#include <future>
#include <istream>
#include <ostream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "contrastforge/error.hpp"
#include "text_util.hpp"

namespace contrastforge {

namespace {

using nlohmann::json;

struct Endpoint {
  std::string base;  // scheme://host:port
  std::string path;  // prefix + /v1/nli/batch
};

Endpoint split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ValidationError("service URL needs a scheme: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  Endpoint ep;
  ep.base = url.substr(0, path_start);
  std::string prefix = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  ep.path = prefix + kBatchEndpoint;
  return ep;
}

ProbTriple triple_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw ValidationError(where + ": probs must be a 3-element array");
  std::array<double, 3> p{};
  for (std::size_t i = 0; i < 3; ++i) {
    if (!j[i].is_number()) throw ValidationError(where + ": probs entries must be numbers");
    p[i] = j[i].get<double>();
  }
  try {
    return ProbTriple(p);
  } catch (const ValidationError& e) {
    throw ValidationError(where + ": " + e.what());
  }
}

}  // namespace

PredictionMap load_predictions(std::istream& in) {
  PredictionMap out;
  std::string line;
  std::size_t line_no = 0;
  while (detail::read_line(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    const std::string where = "predictions line " + std::to_string(line_no);
    auto doc = json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw ValidationError(where + ": not a JSON object");
    auto id_it = doc.find("id");
    std::string id;
    if (id_it != doc.end() && id_it->is_string()) {
      id = id_it->get<std::string>();
    } else if (id_it != doc.end() && id_it->is_number_integer()) {
      id = std::to_string(id_it->get<std::int64_t>());
    } else {
      throw ValidationError(where + ": missing string id");
    }
    auto probs_it = doc.find("probs");
    if (probs_it == doc.end()) throw ValidationError(where + ": missing probs");
    ProbTriple probs = triple_from_json(*probs_it, where);
    if (!out.emplace(id, probs).second) throw ValidationError(where + ": duplicate id '" + id + "'");
  }
  return out;
}

PredictionMap load_predictions(const std::string& path) {
  auto in = detail::open_input(path);
  try {
    return load_predictions(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

void write_predictions(std::span<const PredictionRecord> records, std::ostream& out) {
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["probs"] = r.probs.values();
    out << j.dump() << '\n';
  }
  if (!out) throw IoError("write failed");
}

void BackendConfig::validate() const {
  if (batch_size == 0) throw ValidationError("batch_size must be at least 1");
  if (max_in_flight == 0) throw ValidationError("max_in_flight must be at least 1");
  if (location.empty()) throw ValidationError("backend location is empty");
}

std::vector<ProbTriple> query_service(const BackendConfig& backend, std::span<const SentencePair> batch) {
  backend.validate();
  if (batch.empty()) throw ValidationError("query_service needs a non-empty batch");
  if (batch.size() > backend.batch_size) {
    throw ValidationError("batch of " + std::to_string(batch.size()) + " exceeds batch_size " +
                          std::to_string(backend.batch_size));
  }
  const Endpoint ep = split_url(backend.location);

  json body;
  body["pairs"] = json::array();
  for (const auto& p : batch) body["pairs"].push_back({{"premise", p.premise}, {"hypothesis", p.hypothesis}});
  const std::string payload = body.dump();

  httplib::Client client(ep.base);
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(backend.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(backend.timeout - secs);
  client.set_connection_timeout(secs.count(), usecs.count());
  client.set_read_timeout(secs.count(), usecs.count());
  client.set_write_timeout(secs.count(), usecs.count());

  std::string last_error;
  auto delay = backend.backoff;
  for (unsigned attempt = 0; attempt <= backend.retries; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(delay);
      delay *= 2;
    }
    auto res = client.Post(ep.path, payload, "application/json");
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
      continue;
    }
    if (res->status >= 500) {
      last_error = "server returned HTTP " + std::to_string(res->status);
      continue;
    }
    if (res->status != 200) {
      throw ValidationError("inference service rejected the batch with HTTP " + std::to_string(res->status));
    }
    auto doc = json::parse(res->body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("probs") || !doc["probs"].is_array()) {
      throw ValidationError("inference response lacks a probs array");
    }
    const auto& probs = doc["probs"];
    if (probs.size() != batch.size()) {
      throw ValidationError("inference response length mismatch: sent " + std::to_string(batch.size()) +
                            " pairs, got " + std::to_string(probs.size()) + " triples (first missing index " +
                            std::to_string(std::min(probs.size(), batch.size())) + ")");
    }
    std::vector<ProbTriple> out;
    out.reserve(batch.size());
    for (std::size_t i = 0; i < probs.size(); ++i) {
      out.push_back(triple_from_json(probs[i], "inference response index " + std::to_string(i)));
    }
    return out;
  }
  throw IoError("inference service " + backend.location + " unreachable after " +
                std::to_string(backend.retries + 1) + " attempts: " + last_error);
}

PredictionMap predict(const BackendConfig& backend, std::span<const Example> examples) {
  backend.validate();
  if (backend.kind == BackendConfig::Kind::file) return load_predictions(backend.location);

  std::vector<std::span<const Example>> batches;
  for (std::size_t i = 0; i < examples.size(); i += backend.batch_size) {
    batches.push_back(examples.subspan(i, std::min(backend.batch_size, examples.size() - i)));
  }

  auto run_batch = [&backend](std::span<const Example> chunk) {
    std::vector<SentencePair> pairs;
    pairs.reserve(chunk.size());
    for (const auto& ex : chunk) pairs.push_back({ex.premise, ex.hypothesis});
    return query_service(backend, pairs);
  };

  PredictionMap out;
  auto collect = [&out](std::span<const Example> chunk, const std::vector<ProbTriple>& probs) {
    for (std::size_t i = 0; i < chunk.size(); ++i) {
      if (!out.emplace(chunk[i].id, probs[i]).second) {
        throw ValidationError("duplicate example id '" + chunk[i].id + "'");
      }
    }
  };

  // Up to max_in_flight batches run concurrently; results are consumed in
  // submission order.
  for (std::size_t start = 0; start < batches.size(); start += backend.max_in_flight) {
    const std::size_t stop = std::min(batches.size(), start + backend.max_in_flight);
    std::vector<std::future<std::vector<ProbTriple>>> inflight;
    for (std::size_t b = start; b < stop; ++b) {
      inflight.push_back(std::async(std::launch::async, run_batch, batches[b]));
    }
    for (std::size_t b = start; b < stop; ++b) collect(batches[b], inflight[b - start].get());
  }
  return out;
}

}  // namespace contrastforge
