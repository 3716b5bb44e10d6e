#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "contrastforge/error.hpp"
#include "contrastforge/perturb.hpp"
#include "test_support.hpp"

using namespace contrastforge;

namespace {

Example ex(std::string id, std::string hyp, Label label = Label::neutral) {
  return {std::move(id), "The premise stays put.", std::move(hyp), label, std::nullopt};
}

std::optional<ContrastCandidate> run(const Example& e, const PerturbConfig& config = {}) {
  const auto& lex = cf_test::fixture_lexicon();
  return perturb_example(lex, tag_hypothesis(lex, e), e, config);
}

std::string serialize(const ContrastSet& set) {
  std::ostringstream out;
  write_candidates(set.candidates, out);
  return out.str() + stats_to_json(set.stats);
}

}  // namespace

TEST_CASE("small children golden") {
  const auto c = run(ex("0", "Two small children are unhappy with the opening of their presents.", Label::neutral));
  REQUIRE(c);
  CHECK(c->hypothesis_prime == "Two minor children are dejected with the opening of their presents.");
  CHECK(c->label == Label::neutral);
  CHECK(c->status == ReviewStatus::pending);
  REQUIRE(c->substitutions.size() == 2);
  CHECK(c->substitutions[0].original == "small");
  CHECK(c->substitutions[0].replacement == "minor");
  CHECK(c->substitutions[0].pos == Tag::adj);
  CHECK(c->substitutions[0].token_index == 1);
  CHECK(c->substitutions[1].replacement == "dejected");
  for (const auto& s : c->substitutions) {
    CHECK(c->hypothesis_prime.substr(s.start, s.end - s.start) == s.replacement);
    const Synset* syn = cf_test::fixture_lexicon().find(s.synset_id);
    REQUIRE(syn != nullptr);
  }
}

TEST_CASE("talks golden keeps third person") {
  const auto c = run(ex("1", "A man talks on a cellphone.", Label::entailment));
  REQUIRE(c);
  CHECK(c->hypothesis_prime == "A man babbles on a cellphone.");
  REQUIRE(c->substitutions.size() == 1);
  CHECK(c->substitutions[0].pos == Tag::verb);
  CHECK(c->substitutions[0].rule == "first_synonym");
}

TEST_CASE("nothing eligible") { CHECK_FALSE(run(ex("2", "It is of it."))); }

TEST_CASE("capitalization copied") {
  const auto c = run(ex("3", "Small children talk."));
  REQUIRE(c);
  CHECK(c->hypothesis_prime == "Minor children babble.");
}

TEST_CASE("inflection preserved across forms") {
  CHECK(run(ex("4", "The woman is smiling."))->hypothesis_prime == "The woman is grinning.");
  CHECK(run(ex("5", "The man stopped."))->hypothesis_prime == "The man halted.");
  CHECK(run(ex("6", "The girl ran quickly."))->hypothesis_prime == "The girl raced rapidly.");
}

TEST_CASE("max substitutions") {
  PerturbConfig config;
  config.max_substitutions = 1;
  const auto c = run(ex("0", "Two small children are unhappy with the opening of their presents."), config);
  REQUIRE(c);
  CHECK(c->hypothesis_prime == "Two minor children are unhappy with the opening of their presents.");
}

TEST_CASE("target pos restricts") {
  PerturbConfig config;
  config.target_pos = {Tag::verb};
  CHECK_FALSE(run(ex("0", "Two small children are unhappy."), config));
  CHECK(run(ex("1", "A man talks."), config));
}

TEST_CASE("stopword skip") {
  PerturbConfig config;
  config.stopword_skip = {"small"};
  const auto c = run(ex("0", "Two small children are unhappy."), config);
  REQUIRE(c);
  CHECK(c->hypothesis_prime == "Two small children are dejected.");
}

TEST_CASE("multiword synonyms only when allowed") {
  PerturbConfig config;
  config.target_pos = {Tag::verb};
  CHECK(run(ex("0", "They walk."), config)->hypothesis_prime == "They stroll.");
  config.policy = Policy::seeded_random;
  config.allow_multiword = true;
  bool saw_multiword = false;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    config.seed = seed;
    const auto h = run(ex("0", "They walk."), config)->hypothesis_prime;
    CHECK((h == "They stroll." || h == "They go on foot."));
    saw_multiword |= h == "They go on foot.";
  }
  CHECK(saw_multiword);
}

TEST_CASE("invalid configs") {
  PerturbConfig config;
  config.target_pos = {};
  CHECK_THROWS_AS(config.validate(), ValidationError);
  config.target_pos = {Tag::noun};
  CHECK_THROWS_AS(config.validate(), ValidationError);
  config.target_pos = {Tag::verb};
  config.max_substitutions = 0;
  CHECK_THROWS_AS(config.validate(), ValidationError);
}

TEST_CASE("generate stats over three examples") {
  const std::vector<Example> corpus = {ex("0", "Two small children are unhappy."), ex("1", "It is of it."),
                                       ex("2", "A man talks on a cellphone.")};
  const auto set = generate_contrast_set(cf_test::fixture_lexicon(), corpus, {});
  CHECK(set.candidates.size() == 2);
  CHECK(set.stats == GenerationStats{3, 2, 1, {{1, 1}, {2, 1}}});
  CHECK(set.candidates[0].source_id == "0");
  CHECK(set.candidates[1].source_id == "2");
}

TEST_CASE("empty corpus") {
  const auto set = generate_contrast_set(cf_test::fixture_lexicon(), {}, {});
  CHECK(set.candidates.empty());
  CHECK(set.stats == GenerationStats{});
}

TEST_CASE("seeded runs are byte-identical") {
  std::vector<Example> corpus;
  const char* hyps[] = {"Two small children are unhappy.", "A man talks on a cellphone.", "They walk quickly.",
                        "The old man is smiling happily.", "A small girl talks."};
  for (int i = 0; i < 40; ++i) corpus.push_back(ex(std::to_string(i), hyps[i % 5]));
  PerturbConfig config;
  config.policy = Policy::seeded_random;
  config.seed = 42;
  const auto a = serialize(generate_contrast_set(cf_test::fixture_lexicon(), corpus, config));
  const auto b = serialize(generate_contrast_set(cf_test::fixture_lexicon(), corpus, config));
  CHECK(a == b);

  // Other seeds may pick other synonyms but never other tokens.
  config.seed = 43;
  const auto first = generate_contrast_set(cf_test::fixture_lexicon(), corpus, {});
  const auto other = generate_contrast_set(cf_test::fixture_lexicon(), corpus, config);
  REQUIRE(first.candidates.size() == other.candidates.size());
  for (std::size_t i = 0; i < first.candidates.size(); ++i) {
    REQUIRE(first.candidates[i].substitutions.size() == other.candidates[i].substitutions.size());
    for (std::size_t j = 0; j < first.candidates[i].substitutions.size(); ++j) {
      CHECK(first.candidates[i].substitutions[j].token_index == other.candidates[i].substitutions[j].token_index);
    }
  }
}

TEST_CASE("candidate JSONL round-trips") {
  const std::vector<Example> corpus = {ex("0", "Two small children are unhappy."), ex("2", "A man talks on a cellphone.")};
  auto set = generate_contrast_set(cf_test::fixture_lexicon(), corpus, {});
  set.candidates[1].status = ReviewStatus::edited;
  set.candidates[1].edited_text = "A man chats on a cellphone.";
  std::ostringstream out;
  write_candidates(set.candidates, out);
  std::istringstream in(out.str());
  CHECK(parse_candidates(in) == set.candidates);
  CHECK(out.str().find("\"hypothesis\":\"Two minor children are dejected.\"") != std::string::npos);
}

TEST_CASE("contrast examples skip rejected and use edits") {
  std::vector<ContrastCandidate> cs(3);
  cs[0].source_id = "a";
  cs[0].hypothesis_prime = "h0";
  cs[1].source_id = "b";
  cs[1].status = ReviewStatus::rejected;
  cs[2].source_id = "c";
  cs[2].hypothesis_prime = "h2";
  cs[2].status = ReviewStatus::edited;
  cs[2].edited_text = "edited";
  const auto xs = contrast_examples(cs);
  REQUIRE(xs.size() == 2);
  CHECK(xs[0].hypothesis == "h0");
  CHECK(xs[1].id == "c");
  CHECK(xs[1].hypothesis == "edited");
}
