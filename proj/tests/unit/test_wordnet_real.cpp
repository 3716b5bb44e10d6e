#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "contrastforge/lexicon.hpp"
#include "contrastforge/perturb.hpp"
#include "contrastforge/tagger.hpp"
#include "test_support.hpp"

using namespace contrastforge;
using Strings = std::vector<std::string>;

namespace {
const Lexicon& wordnet() {
  static const auto lex = Lexicon::load(cf_test::wordnet_dir());
  return lex;
}
}  // namespace

TEST_CASE("lemmatize against the real index") {
  CHECK(wordnet().lemmatize("talks", Pos::verb) == Strings{"talk"});
  CHECK(wordnet().lemmatize("was", Pos::verb) == Strings{"be"});
  CHECK(wordnet().lemmatize("smiling", Pos::verb) == Strings{"smile"});
}

TEST_CASE("synonyms are indexed co-members") {
  for (const char* w : {"talk", "run", "small", "happy", "quickly"}) {
    for (Pos p : kAllPos) {
      for (const auto& s : wordnet().synonyms(w, p)) {
        CHECK(s != w);
        CHECK(wordnet().contains(s, p));
      }
    }
  }
  const auto small = wordnet().synonyms("small", Pos::adj);
  CHECK(std::find(small.begin(), small.end(), "little") != small.end());
}

TEST_CASE("tagger on real sentences") {
  const auto t = tag(wordnet(), tokenize("A man talks on a cellphone."));
  CHECK(t[1].tag == Tag::noun);
  CHECK(t[2].tag == Tag::verb);
  CHECK(t[2].features.form == Form::third_sg);
  const auto s = tag(wordnet(), tokenize("The woman is sewing."));
  CHECK(s[2].tag == Tag::other);
  CHECK(s[3].tag == Tag::verb);
}

TEST_CASE("perturbation with real WordNet keeps invariants") {
  const std::vector<Example> corpus = {
      {"0", "Kids open gifts.", "Two small children are unhappy with the opening of their presents.", Label::neutral, std::nullopt},
      {"1", "A man on the phone.", "A man talks on a cellphone.", Label::entailment, std::nullopt},
      {"2", "A seamstress.", "The woman is sewing.", Label::entailment, std::nullopt},
  };
  const auto set = generate_contrast_set(wordnet(), corpus, {});
  CHECK(set.stats.input == 3);
  for (const auto& c : set.candidates) {
    CHECK(c.hypothesis_prime != c.original_hypothesis);
    for (const auto& s : c.substitutions) {
      CHECK(s.original != s.replacement);
      CHECK(wordnet().find(s.synset_id) != nullptr);
    }
  }
}
