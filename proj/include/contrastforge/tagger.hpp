#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contrastforge/corpus.hpp"
#include "contrastforge/lexicon.hpp"
#include "contrastforge/tags.hpp"

namespace contrastforge {

struct Token {
  std::string text;
  std::size_t start = 0;  // byte offsets into the sentence, [start, end)
  std::size_t end = 0;
  bool is_word = true;

  bool operator==(const Token&) const = default;
};

struct TaggedToken {
  Token token;
  Tag tag = Tag::other;
  InflectionFeatures features;
  /// Base form the tag was resolved against; empty for OTHER and for
  /// externally supplied tags.
  std::string lemma;

  bool operator==(const TaggedToken&) const = default;
};

/// Whitespace split, then leading/trailing ASCII punctuation is peeled off
/// one character at a time into non-word tokens. Internal punctuation
/// ("red-shirted", "man's") stays inside the word.
std::vector<Token> tokenize(std::string_view sentence);

/// Heuristic coarse tagger. Cascade per word token: closed-class table,
/// unambiguous WordNet membership, suffix cues, positional preference
/// among the WordNet candidates, else OTHER.
std::vector<TaggedToken> tag(const Lexicon& lexicon, std::span<const Token> tokens);

/// Builds tagged tokens straight from externally supplied spans; the
/// cascade is not run. Throws ValidationError for spans outside the
/// sentence or out of order.
std::vector<TaggedToken> tag_pretagged(std::string_view sentence, std::span<const PreTag> tags);

/// Tags an example's hypothesis, honouring hypothesis_tags when present.
std::vector<TaggedToken> tag_hypothesis(const Lexicon& lexicon, const Example& example);

/// True for determiners, pronouns, prepositions, conjunctions, auxiliaries,
/// modals, particles and numbers.
bool is_closed_class(std::string_view lower_word);

}  // namespace contrastforge
