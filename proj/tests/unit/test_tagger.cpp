#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "contrastforge/error.hpp"
#include "contrastforge/tagger.hpp"
#include "test_support.hpp"

using namespace contrastforge;

namespace {

std::vector<TaggedToken> tag_text(std::string_view s) { return tag(cf_test::fixture_lexicon(), tokenize(s)); }

std::vector<Tag> tags_of(std::string_view s) {
  std::vector<Tag> out;
  for (const auto& t : tag_text(s)) out.push_back(t.tag);
  return out;
}

}  // namespace

TEST_CASE("tokenize") {
  const auto toks = tokenize("A man talks on a cellphone.");
  std::vector<std::string> texts;
  for (const auto& t : toks) texts.push_back(t.text);
  CHECK(texts == std::vector<std::string>{"A", "man", "talks", "on", "a", "cellphone", "."});
  CHECK_FALSE(toks.back().is_word);
  CHECK(toks[2].start == 6);
  CHECK(toks[2].end == 11);
  CHECK(tokenize("").empty());
  CHECK(tokenize("   ").empty());
  const auto hy = tokenize("red-shirted");
  REQUIRE(hy.size() == 1);
  CHECK(hy[0].is_word);
}

TEST_CASE("tokens reconstruct the sentence") {
  for (std::string s : {"\"Hello,\" she said...", "  A  man (tall) talks!  ", "It's the man's."}) {
    std::size_t prev = 0;
    std::string rebuilt;
    for (const auto& t : tokenize(s)) {
      CHECK(t.start < t.end);
      CHECK(t.start >= prev);
      CHECK(s.substr(t.start, t.end - t.start) == t.text);
      rebuilt += s.substr(prev, t.start - prev) + t.text;
      prev = t.end;
    }
    rebuilt += s.substr(prev);
    CHECK(rebuilt == s);
  }
}

TEST_CASE("talks after a noun is a third person verb") {
  const auto t = tag_text("A man talks on a cellphone.");
  REQUIRE(t.size() == 7);
  CHECK(t[0].tag == Tag::other);
  CHECK(t[1].tag == Tag::noun);
  CHECK(t[2].tag == Tag::verb);
  CHECK(t[2].features.form == Form::third_sg);
  CHECK(t[2].lemma == "talk");
  CHECK(t[3].tag == Tag::other);
  CHECK(t[5].tag == Tag::noun);
  CHECK(t[6].tag == Tag::other);
}

TEST_CASE("auxiliary then gerund") {
  const auto t = tag_text("The woman is sewing.");
  CHECK(t[2].tag == Tag::other);
  CHECK(t[3].tag == Tag::verb);
  CHECK(t[3].features.form == Form::gerund);
}

TEST_CASE("empty input") { CHECK(tag(cf_test::fixture_lexicon(), {}).empty()); }

TEST_CASE("golden sentence") {
  CHECK(tags_of("Two small children are unhappy with the opening of their presents.") ==
        std::vector<Tag>{Tag::other, Tag::adj, Tag::noun, Tag::other, Tag::adj, Tag::other, Tag::other,
                         Tag::noun, Tag::other, Tag::other, Tag::noun, Tag::other});
}

TEST_CASE("closed class never open") {
  for (std::string w : {"the", "is", "are", "was", "have", "does", "can", "will", "to", "not", "and", "with", "it",
                        "she", "3", "two"}) {
    CHECK(is_closed_class(w));
  }
  for (const auto& t : tag_text("It is of it. The two were to have been with them and 12 of those.")) {
    CHECK(t.tag == Tag::other);
  }
}

TEST_CASE("suffix and positional cues") {
  CHECK(tags_of("She runs quickly.")[2] == Tag::adv);
  CHECK(tags_of("They try to walk.")[3] == Tag::verb);
  CHECK(tags_of("The quick man.")[1] == Tag::adj);
  CHECK(tags_of("zzz blorpful")[0] == Tag::other);
  CHECK(tags_of("zzz blorpful")[1] == Tag::adj);
}

TEST_CASE("features agree with tags") {
  for (const auto& t : tag_text("A small man quickly talks to the happy children while they were smiling.")) {
    if (t.tag != Tag::other) {
      CHECK(t.features.pos == t.tag);
      CHECK(is_compatible(t.tag, t.features.form));
    }
  }
}

TEST_CASE("capitalization carried into features") {
  const auto t = tag_text("Small children talk.");
  CHECK(t[0].tag == Tag::adj);
  CHECK(t[0].features.capitalization == Capitalization::title);
}

TEST_CASE("pre-tagged spans pass through") {
  const std::vector<PreTag> pre = {{0, 1, Tag::other, Form::plain}, {2, 5, Tag::noun, Form::plain},
                                   {6, 11, Tag::verb, Form::third_sg}};
  const auto t = tag_pretagged("A man talks.", pre);
  REQUIRE(t.size() == 3);
  for (std::size_t i = 0; i < pre.size(); ++i) {
    CHECK(t[i].token.start == pre[i].start);
    CHECK(t[i].token.end == pre[i].end);
    CHECK(t[i].tag == pre[i].tag);
    CHECK(t[i].features.form == pre[i].form);
  }
  CHECK(t[2].token.text == "talks");
  CHECK_THROWS_AS(tag_pretagged("A man.", std::vector<PreTag>{{4, 9, Tag::noun, Form::plain}}), ValidationError);
  CHECK_THROWS_AS(tag_pretagged("A man.", std::vector<PreTag>{{2, 5, Tag::noun, Form::plain}, {0, 1, Tag::other, Form::plain}}),
                  ValidationError);
}

TEST_CASE("tag_hypothesis prefers supplied tags") {
  Example ex{"0", "p", "A man talks.", Label::entailment, std::vector<PreTag>{{2, 5, Tag::verb, Form::base}}};
  const auto t = tag_hypothesis(cf_test::fixture_lexicon(), ex);
  REQUIRE(t.size() == 1);
  CHECK(t[0].tag == Tag::verb);
  ex.hypothesis_tags.reset();
  CHECK(tag_hypothesis(cf_test::fixture_lexicon(), ex).size() == 4);
}

TEST_CASE("deterministic") {
  const std::string s = "A small child is smiling at the old horse quickly.";
  CHECK(tag_text(s) == tag_text(s));
}
