#include "contrastforge/tagger.hpp"

#include <array>
#include <cctype>
#include <optional>
#include <unordered_map>

#include "contrastforge/error.hpp"
#include "contrastforge/morphology.hpp"
#include "text_util.hpp"

namespace contrastforge {

namespace {

enum class Closed { determiner, pronoun, subject_pronoun, preposition, conjunction, be, auxiliary, modal, particle, number };

const std::unordered_map<std::string_view, Closed>& closed_table() {
  static const auto table = [] {
    std::unordered_map<std::string_view, Closed> t;
    auto put = [&t](Closed c, std::initializer_list<std::string_view> words) {
      for (auto w : words) t.emplace(w, c);
    };
    put(Closed::determiner, {"a", "an", "the", "this", "that", "these", "those", "my", "your",
                             "his", "her", "its", "our", "their", "some", "any", "no", "every",
                             "each", "all", "both", "either", "neither", "another", "such",
                             "what", "which", "whose", "several", "whatever", "whichever"});
    put(Closed::subject_pronoun, {"i", "you", "he", "she", "it", "we", "they"});
    put(Closed::pronoun, {"me", "him", "us", "them", "mine", "yours", "hers", "ours", "theirs",
                          "myself", "yourself", "himself", "herself", "itself", "ourselves",
                          "yourselves", "themselves", "someone", "somebody", "something",
                          "anyone", "anybody", "anything", "everyone", "everybody",
                          "everything", "nobody", "nothing", "none", "who", "whom",
                          "whoever", "there"});
    put(Closed::preposition,
        {"aboard", "about", "above", "across", "after", "against", "along", "amid", "among",
         "around", "at", "before", "behind", "below", "beneath", "beside", "besides", "between",
         "beyond", "by", "despite", "down", "during", "except", "from", "in", "inside", "into",
         "like", "near", "of", "off", "on", "onto", "out", "outside", "over", "past", "per",
         "since", "through", "throughout", "toward", "towards", "under", "underneath", "until",
         "unto", "up", "upon", "via", "with", "within", "without"});
    put(Closed::conjunction, {"and", "or", "but", "nor", "so", "yet", "for", "because",
                              "although", "though", "while", "whilst", "if", "unless",
                              "whereas", "as", "than", "whether", "once", "when", "where",
                              "whenever", "wherever", "then"});
    put(Closed::be, {"be", "am", "is", "are", "was", "were", "been", "being", "'s", "'re", "'m"});
    put(Closed::auxiliary, {"have", "has", "had", "having", "'ve", "'d", "do", "does", "did",
                            "done", "doing"});
    put(Closed::modal, {"can", "could", "may", "might", "must", "shall", "should", "will",
                        "would", "ought", "cannot", "'ll"});
    put(Closed::particle, {"to", "not", "n't"});
    put(Closed::number, {"zero", "one", "two", "three", "four", "five", "six", "seven", "eight",
                         "nine", "ten", "eleven", "twelve", "thirteen", "fourteen", "fifteen",
                         "sixteen", "seventeen", "eighteen", "nineteen", "twenty", "thirty",
                         "forty", "fifty", "sixty", "seventy", "eighty", "ninety", "hundred",
                         "thousand", "million", "billion", "dozen"});
    return t;
  }();
  return table;
}

std::optional<Closed> closed_class(std::string_view lower) {
  for (char c : lower) {
    if (std::isdigit(static_cast<unsigned char>(c))) return Closed::number;
  }
  const auto& t = closed_table();
  auto it = t.find(lower);
  if (it == t.end()) return std::nullopt;
  return it->second;
}

bool is_ascii_punct(char c) { return std::ispunct(static_cast<unsigned char>(c)) != 0; }

using Candidates = std::array<std::vector<std::string>, 4>;

Candidates candidates_for(const Lexicon& lex, std::string_view lower) {
  Candidates c;
  for (Pos p : kAllPos) c[static_cast<std::size_t>(p)] = lex.lemmatize(lower, p);
  return c;
}

bool has(const Candidates& c, Pos p) { return !c[static_cast<std::size_t>(p)].empty(); }

bool is_determiner_like(std::optional<Closed> c) {
  return c == Closed::determiner || c == Closed::number;
}

struct Context {
  std::optional<Closed> prev_closed;
  Tag prev_tag = Tag::other;
  bool has_prev = false;
  bool next_is_noun = false;
};

std::optional<Pos> by_suffix(std::string_view lower, const Candidates& c, std::size_t n,
                             const Context& ctx) {
  if (detail::ends_with(lower, "ly") && (has(c, Pos::adv) || n == 0)) return Pos::adv;
  // "the opening", "a painted wall": participles after a determiner stay
  // with the positional rules.
  if ((detail::ends_with(lower, "ing") || detail::ends_with(lower, "ed")) && has(c, Pos::verb) &&
      !is_determiner_like(ctx.prev_closed)) {
    return Pos::verb;
  }
  if ((detail::ends_with(lower, "ous") || detail::ends_with(lower, "ful") ||
       detail::ends_with(lower, "able")) &&
      (has(c, Pos::adj) || n == 0)) {
    return Pos::adj;
  }
  return std::nullopt;
}

Pos by_position(const Candidates& c, const Context& ctx) {
  auto first_of = [&c](std::initializer_list<Pos> order) -> std::optional<Pos> {
    for (Pos p : order) {
      if (has(c, p)) return p;
    }
    return std::nullopt;
  };
  std::optional<Pos> pick;
  if (is_determiner_like(ctx.prev_closed) || ctx.prev_tag == Tag::adj) {
    pick = ctx.next_is_noun ? first_of({Pos::adj, Pos::noun}) : first_of({Pos::noun, Pos::adj});
  } else if (ctx.prev_closed == Closed::particle || ctx.prev_closed == Closed::modal ||
             ctx.prev_closed == Closed::subject_pronoun) {
    pick = first_of({Pos::verb});
  } else if (ctx.prev_closed == Closed::be) {
    pick = first_of({Pos::adj, Pos::verb});
  } else if (ctx.prev_tag == Tag::noun) {
    pick = first_of({Pos::verb});
  } else if (ctx.prev_tag == Tag::verb) {
    pick = first_of({Pos::adv, Pos::noun, Pos::adj});
  }
  if (!pick) pick = first_of({Pos::noun, Pos::verb, Pos::adj, Pos::adv});
  return *pick;
}

}  // namespace

bool is_closed_class(std::string_view lower_word) { return closed_class(lower_word).has_value(); }

std::vector<Token> tokenize(std::string_view sentence) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = sentence.size();
  while (i < n) {
    while (i < n && detail::is_space(sentence[i])) ++i;
    std::size_t j = i;
    while (j < n && !detail::is_space(sentence[j])) ++j;
    if (j == i) break;
    std::size_t lo = i, hi = j;
    while (lo < hi && is_ascii_punct(sentence[lo])) ++lo;
    while (hi > lo && is_ascii_punct(sentence[hi - 1])) --hi;
    for (std::size_t k = i; k < lo; ++k) out.push_back({std::string(1, sentence[k]), k, k + 1, false});
    if (hi > lo) out.push_back({std::string(sentence.substr(lo, hi - lo)), lo, hi, true});
    for (std::size_t k = hi; k < j; ++k) out.push_back({std::string(1, sentence[k]), k, k + 1, false});
    i = j;
  }
  return out;
}

std::vector<TaggedToken> tag(const Lexicon& lexicon, std::span<const Token> tokens) {
  std::vector<TaggedToken> out;
  out.reserve(tokens.size());
  Context ctx;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& tok = tokens[i];
    TaggedToken tt{tok, Tag::other, {}, {}};
    tt.features.capitalization = detect_capitalization(tok.text);
    if (!tok.is_word) {
      out.push_back(std::move(tt));
      continue;
    }

    const std::string lower = detail::to_lower(tok.text);
    const auto closed = closed_class(lower);
    if (!closed) {
      const Candidates cands = candidates_for(lexicon, lower);
      std::size_t n = 0;
      std::optional<Pos> chosen;
      for (Pos p : kAllPos) {
        if (has(cands, p)) {
          ++n;
          chosen = p;
        }
      }
      if (n != 1) {
        ctx.next_is_noun = false;
        for (std::size_t j = i + 1; j < tokens.size(); ++j) {
          if (!tokens[j].is_word) continue;
          const std::string next = detail::to_lower(tokens[j].text);
          ctx.next_is_noun = !closed_class(next) && !lexicon.lemmatize(next, Pos::noun).empty();
          break;
        }
        chosen = by_suffix(lower, cands, n, ctx);
        if (!chosen && n >= 2) chosen = by_position(cands, ctx);
      }
      if (chosen) {
        tt.tag = to_tag(*chosen);
        const auto& lemmas = cands[static_cast<std::size_t>(*chosen)];
        tt.lemma = lemmas.empty() ? lower : lemmas.front();
        tt.features.form = infer_form(tok.text, tt.lemma, tt.tag);
      }
    }
    tt.features.pos = tt.tag;

    ctx.has_prev = true;
    ctx.prev_closed = closed;
    ctx.prev_tag = tt.tag;
    out.push_back(std::move(tt));
  }
  return out;
}

std::vector<TaggedToken> tag_pretagged(std::string_view sentence, std::span<const PreTag> tags) {
  std::vector<TaggedToken> out;
  out.reserve(tags.size());
  std::size_t prev_end = 0;
  for (const PreTag& t : tags) {
    if (t.start >= t.end || t.end > sentence.size() || t.start < prev_end) {
      throw ValidationError("pre-tagged span [" + std::to_string(t.start) + ", " +
                            std::to_string(t.end) + ") is out of order or out of bounds");
    }
    prev_end = t.end;
    std::string text(sentence.substr(t.start, t.end - t.start));
    bool is_word = false;
    for (char c : text) is_word = is_word || std::isalnum(static_cast<unsigned char>(c));
    TaggedToken tt{Token{text, t.start, t.end, is_word}, t.tag, {}, {}};
    tt.features = {t.tag, t.form, detect_capitalization(text)};
    out.push_back(std::move(tt));
  }
  return out;
}

std::vector<TaggedToken> tag_hypothesis(const Lexicon& lexicon, const Example& example) {
  if (example.hypothesis_tags) return tag_pretagged(example.hypothesis, *example.hypothesis_tags);
  const auto tokens = tokenize(example.hypothesis);
  return tag(lexicon, tokens);
}

}  // namespace contrastforge
