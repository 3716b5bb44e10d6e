#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "contrastforge/corpus.hpp"
#include "contrastforge/lexicon.hpp"
#include "contrastforge/tagger.hpp"

namespace contrastforge {

struct Substitution {
  std::size_t token_index = 0;
  /// Byte span of the replacement inside the rewritten hypothesis.
  std::size_t start = 0;
  std::size_t end = 0;
  std::string original;
  std::string replacement;
  Tag pos = Tag::verb;
  SynsetId synset_id;
  std::string rule;

  bool operator==(const Substitution&) const = default;
};

enum class ReviewStatus : std::uint8_t { pending, accepted, rejected, edited };

std::string_view to_string(ReviewStatus s);
std::optional<ReviewStatus> parse_review_status(std::string_view s);

struct ContrastCandidate {
  std::string source_id;
  std::string premise;
  std::string original_hypothesis;
  std::string hypothesis_prime;
  Label label = Label::entailment;
  std::vector<Substitution> substitutions;
  ReviewStatus status = ReviewStatus::pending;
  std::optional<std::string> edited_text;

  /// The hypothesis a reviewed candidate stands for: edited_text when
  /// EDITED, hypothesis_prime otherwise.
  const std::string& effective_hypothesis() const {
    return edited_text ? *edited_text : hypothesis_prime;
  }

  bool operator==(const ContrastCandidate&) const = default;
};

enum class Policy : std::uint8_t { first_synonym, seeded_random };

struct PerturbConfig {
  std::set<Tag> target_pos{Tag::verb, Tag::adj, Tag::adv};
  /// nullopt substitutes every eligible token.
  std::optional<std::size_t> max_substitutions;
  Policy policy = Policy::first_synonym;
  std::uint64_t seed = 0;
  bool allow_multiword = false;
  std::set<std::string> stopword_skip;

  /// Throws ValidationError when target_pos is empty, contains a tag other
  /// than VERB/ADJ/ADV, or max_substitutions is zero.
  void validate() const;
};

/// The contrast function: rewrites eligible hypothesis tokens with
/// re-inflected synonyms, keeping premise and label. Returns nullopt when
/// no token could be substituted.
std::optional<ContrastCandidate> perturb_example(const Lexicon& lexicon,
                                                 std::span<const TaggedToken> tagged,
                                                 const Example& example,
                                                 const PerturbConfig& config);

struct GenerationStats {
  std::size_t input = 0;
  std::size_t perturbed = 0;
  std::size_t unperturbable = 0;
  /// substitutions per candidate -> number of candidates
  std::map<std::size_t, std::size_t> histogram;

  bool operator==(const GenerationStats&) const = default;
};

struct ContrastSet {
  std::vector<ContrastCandidate> candidates;
  GenerationStats stats;
};

ContrastSet generate_contrast_set(const Lexicon& lexicon, std::span<const Example> corpus,
                                  const PerturbConfig& config);

// Candidate JSONL: one object per candidate with keys source_id, premise,
// original_hypothesis, hypothesis (the rewritten one), label,
// substitutions, status and, when edited, edited_text.
std::string candidate_to_json_line(const ContrastCandidate& c);
void write_candidates(std::span<const ContrastCandidate> candidates, std::ostream& out);
void save_candidates(std::span<const ContrastCandidate> candidates, const std::string& path);
std::vector<ContrastCandidate> parse_candidates(std::istream& in);
std::vector<ContrastCandidate> load_candidates(const std::string& path);

std::string stats_to_json(const GenerationStats& stats);

/// Examples to score for a contrast set: the effective hypothesis under
/// each non-rejected candidate's source id.
std::vector<Example> contrast_examples(std::span<const ContrastCandidate> candidates);

}  // namespace contrastforge
