#include "contrastforge/perturb.hpp"

#include <istream>
#include <ostream>
#include <random>

#include <json.hpp>

#include "contrastforge/error.hpp"
#include "contrastforge/morphology.hpp"
#include "text_util.hpp"

namespace contrastforge {

namespace {

using ojson = nlohmann::ordered_json;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// Uniform index in [0, n) from a generator keyed on (seed, id, token).
// mt19937_64's output sequence is fixed by the standard, so choices are
// reproducible across toolchains.
std::size_t seeded_choice(std::uint64_t seed, std::string_view id, std::size_t token_index,
                          std::size_t n) {
  std::uint64_t key = splitmix64(seed);
  key = splitmix64(key ^ fnv1a64(id));
  key = splitmix64(key ^ static_cast<std::uint64_t>(token_index));
  std::mt19937_64 gen(key);
  const std::uint64_t range = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = std::mt19937_64::max() - (std::mt19937_64::max() % range);
  std::uint64_t v;
  do {
    v = gen();
  } while (v >= limit);
  return static_cast<std::size_t>(v % range);
}

struct Planned {
  std::size_t token_index;
  std::string replacement;
  SynsetId synset;
};

std::string_view rule_name(Policy p) {
  return p == Policy::first_synonym ? "first_synonym" : "seeded_random";
}

[[noreturn]] void bad_candidate(std::size_t line_no, const std::string& what) {
  throw ValidationError("candidates line " + std::to_string(line_no) + ": " + what);
}

}  // namespace

std::string_view to_string(ReviewStatus s) {
  switch (s) {
    case ReviewStatus::pending: return "PENDING";
    case ReviewStatus::accepted: return "ACCEPTED";
    case ReviewStatus::rejected: return "REJECTED";
    case ReviewStatus::edited: return "EDITED";
  }
  return "?";
}

std::optional<ReviewStatus> parse_review_status(std::string_view s) {
  const std::string lower = detail::to_lower(s);
  if (lower == "pending") return ReviewStatus::pending;
  if (lower == "accepted") return ReviewStatus::accepted;
  if (lower == "rejected") return ReviewStatus::rejected;
  if (lower == "edited") return ReviewStatus::edited;
  return std::nullopt;
}

void PerturbConfig::validate() const {
  if (target_pos.empty()) throw ValidationError("target_pos must not be empty");
  for (Tag t : target_pos) {
    if (t != Tag::verb && t != Tag::adj && t != Tag::adv) {
      throw ValidationError("target_pos may only contain VERB, ADJ, ADV");
    }
  }
  if (max_substitutions && *max_substitutions == 0) {
    throw ValidationError("max_substitutions must be positive");
  }
}

std::optional<ContrastCandidate> perturb_example(const Lexicon& lexicon,
                                                 std::span<const TaggedToken> tagged,
                                                 const Example& example,
                                                 const PerturbConfig& config) {
  config.validate();
  std::vector<Planned> plan;
  for (std::size_t i = 0; i < tagged.size(); ++i) {
    if (config.max_substitutions && plan.size() >= *config.max_substitutions) break;
    const TaggedToken& tt = tagged[i];
    if (!tt.token.is_word || !config.target_pos.contains(tt.tag)) continue;
    const std::string lower = detail::to_lower(tt.token.text);
    if (config.stopword_skip.contains(lower)) continue;
    const Pos pos = *to_pos(tt.tag);

    std::vector<std::string> lemmas;
    if (!tt.lemma.empty()) lemmas.push_back(tt.lemma);
    for (auto& l : lexicon.lemmatize(lower, pos)) {
      if (l != tt.lemma) lemmas.push_back(std::move(l));
    }

    std::vector<SynonymEntry> entries;
    for (const auto& lemma : lemmas) {
      entries = lexicon.synonym_entries(lemma, pos, config.allow_multiword);
      if (!entries.empty()) break;
    }

    InflectionFeatures features = tt.features;
    features.pos = tt.tag;
    if (!is_compatible(features.pos, features.form)) continue;

    std::vector<Planned> options;
    for (const auto& e : entries) {
      std::string surface = inflect(e.lemma, features);
      // A synonym that re-inflects to the original word is no contrast.
      if (detail::to_lower(surface) == lower) continue;
      options.push_back({i, std::move(surface), e.source});
    }
    if (options.empty()) continue;

    std::size_t pick = 0;
    if (config.policy == Policy::seeded_random) {
      pick = seeded_choice(config.seed, example.id, i, options.size());
    }
    plan.push_back(std::move(options[pick]));
  }
  if (plan.empty()) return std::nullopt;

  ContrastCandidate cand;
  cand.source_id = example.id;
  cand.premise = example.premise;
  cand.original_hypothesis = example.hypothesis;
  cand.label = example.label;

  const std::string& hyp = example.hypothesis;
  std::size_t cursor = 0;
  for (const Planned& p : plan) {
    const Token& tok = tagged[p.token_index].token;
    cand.hypothesis_prime.append(hyp, cursor, tok.start - cursor);
    Substitution sub;
    sub.token_index = p.token_index;
    sub.start = cand.hypothesis_prime.size();
    cand.hypothesis_prime += p.replacement;
    sub.end = cand.hypothesis_prime.size();
    sub.original = tok.text;
    sub.replacement = p.replacement;
    sub.pos = tagged[p.token_index].tag;
    sub.synset_id = p.synset;
    sub.rule = std::string(rule_name(config.policy));
    cand.substitutions.push_back(std::move(sub));
    cursor = tok.end;
  }
  cand.hypothesis_prime.append(hyp, cursor, std::string::npos);
  return cand;
}

ContrastSet generate_contrast_set(const Lexicon& lexicon, std::span<const Example> corpus,
                                  const PerturbConfig& config) {
  config.validate();
  ContrastSet out;
  out.stats.input = corpus.size();
  for (const Example& ex : corpus) {
    const auto tagged = tag_hypothesis(lexicon, ex);
    auto cand = perturb_example(lexicon, tagged, ex, config);
    if (!cand) {
      ++out.stats.unperturbable;
      continue;
    }
    ++out.stats.perturbed;
    ++out.stats.histogram[cand->substitutions.size()];
    out.candidates.push_back(std::move(*cand));
  }
  return out;
}

std::string candidate_to_json_line(const ContrastCandidate& c) {
  ojson doc;
  doc["source_id"] = c.source_id;
  doc["premise"] = c.premise;
  doc["original_hypothesis"] = c.original_hypothesis;
  doc["hypothesis"] = c.hypothesis_prime;
  doc["label"] = static_cast<int>(c.label);
  auto subs = ojson::array();
  for (const auto& s : c.substitutions) {
    ojson j;
    j["token_index"] = s.token_index;
    j["start"] = s.start;
    j["end"] = s.end;
    j["original"] = s.original;
    j["replacement"] = s.replacement;
    j["pos"] = to_string(s.pos);
    j["synset_id"] = s.synset_id.to_string();
    j["rule"] = s.rule;
    subs.push_back(std::move(j));
  }
  doc["substitutions"] = std::move(subs);
  doc["status"] = to_string(c.status);
  if (c.edited_text) doc["edited_text"] = *c.edited_text;
  return doc.dump();
}

void write_candidates(std::span<const ContrastCandidate> candidates, std::ostream& out) {
  for (const auto& c : candidates) out << candidate_to_json_line(c) << '\n';
  if (!out) throw IoError("write failed");
}

void save_candidates(std::span<const ContrastCandidate> candidates, const std::string& path) {
  auto out = detail::open_output(path);
  write_candidates(candidates, out);
  out.flush();
  if (!out) throw IoError("write failed: " + path);
}

std::vector<ContrastCandidate> parse_candidates(std::istream& in) {
  std::vector<ContrastCandidate> out;
  std::string line;
  std::size_t line_no = 0;
  while (detail::read_line(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    auto doc = nlohmann::json::parse(line, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) bad_candidate(line_no, "not a JSON object");
    try {
      ContrastCandidate c;
      c.source_id = doc.at("source_id").get<std::string>();
      c.premise = doc.at("premise").get<std::string>();
      c.hypothesis_prime = doc.at("hypothesis").get<std::string>();
      c.original_hypothesis = doc.value("original_hypothesis", std::string());
      auto label = label_from_int(doc.at("label").get<std::int64_t>());
      if (!label) bad_candidate(line_no, "label outside {0, 1, 2}");
      c.label = *label;
      for (const auto& s : doc.at("substitutions")) {
        Substitution sub;
        sub.token_index = s.at("token_index").get<std::size_t>();
        sub.start = s.value("start", std::size_t{0});
        sub.end = s.value("end", std::size_t{0});
        sub.original = s.at("original").get<std::string>();
        sub.replacement = s.at("replacement").get<std::string>();
        auto tag = parse_tag(s.at("pos").get<std::string>());
        if (!tag || (*tag != Tag::verb && *tag != Tag::adj && *tag != Tag::adv)) {
          bad_candidate(line_no, "substitution pos must be VERB, ADJ or ADV");
        }
        sub.pos = *tag;
        sub.synset_id = SynsetId::parse(s.at("synset_id").get<std::string>());
        sub.rule = s.value("rule", std::string());
        c.substitutions.push_back(std::move(sub));
      }
      if (c.substitutions.empty()) bad_candidate(line_no, "candidate has no substitutions");
      auto status = parse_review_status(doc.value("status", std::string("PENDING")));
      if (!status) bad_candidate(line_no, "unknown status");
      c.status = *status;
      if (auto it = doc.find("edited_text"); it != doc.end() && !it->is_null()) {
        c.edited_text = it->get<std::string>();
      }
      if ((c.status == ReviewStatus::edited) != c.edited_text.has_value()) {
        bad_candidate(line_no, "edited_text must be present exactly when status is EDITED");
      }
      out.push_back(std::move(c));
    } catch (const nlohmann::json::exception& e) {
      bad_candidate(line_no, e.what());
    }
  }
  return out;
}

std::vector<ContrastCandidate> load_candidates(const std::string& path) {
  auto in = detail::open_input(path);
  try {
    return parse_candidates(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string stats_to_json(const GenerationStats& stats) {
  ojson doc;
  doc["input"] = stats.input;
  doc["perturbed"] = stats.perturbed;
  doc["unperturbable"] = stats.unperturbable;
  ojson hist = ojson::object();
  for (const auto& [k, v] : stats.histogram) hist[std::to_string(k)] = v;
  doc["substitutions_histogram"] = std::move(hist);
  return doc.dump(2);
}

std::vector<Example> contrast_examples(std::span<const ContrastCandidate> candidates) {
  std::vector<Example> out;
  for (const auto& c : candidates) {
    if (c.status == ReviewStatus::rejected) continue;
    out.push_back(Example{c.source_id, c.premise, c.effective_hypothesis(), c.label, std::nullopt});
  }
  return out;
}

}  // namespace contrastforge
