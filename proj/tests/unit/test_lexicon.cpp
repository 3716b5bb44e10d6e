#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "contrastforge/error.hpp"
#include "contrastforge/lexicon.hpp"
#include "test_support.hpp"

using namespace contrastforge;
namespace fs = std::filesystem;
using Strings = std::vector<std::string>;

namespace {

// Copies the mini database so a test can damage it.
void copy_mini(const fs::path& to) {
  fs::copy(cf_test::data_dir() / "mini_wordnet", to, fs::copy_options::recursive);
}

std::string load_error(const fs::path& dir) {
  try {
    Lexicon::load(dir);
  } catch (const std::exception& e) {
    return e.what();
  }
  return {};
}

void replace_line(const std::string& path, const std::string& from, const std::string& to) {
  auto text = cf_test::read_file(path);
  const auto at = text.find(from);
  REQUIRE(at != std::string::npos);
  text.replace(at, from.size(), to);
  cf_test::write_file(path, text);
}

}  // namespace

TEST_CASE("mini database: four synsets") {
  const auto lex = Lexicon::load(cf_test::data_dir() / "mini_wordnet");
  std::size_t total = 0;
  for (Pos p : kAllPos) {
    CHECK(lex.synset_count(p) == 1);
    total += lex.synset_count(p);
  }
  CHECK(total == 4);
  CHECK(lex.lemma_count(Pos::noun) == 2);
  CHECK(lex.contains("domestic dog", Pos::noun));
  CHECK(lex.synonyms("dog", Pos::noun) == Strings{});
  CHECK(lex.synonyms("dog", Pos::noun, true) == Strings{"domestic dog"});
  for (Pos p : kAllPos) {
    for (const auto& id : lex.senses(p == Pos::noun ? "dog" : p == Pos::verb ? "bark" : p == Pos::adj ? "loud" : "loudly", p)) {
      const Synset* s = lex.find(id);
      REQUIRE(s != nullptr);
      CHECK(s->id.pos == p);
      for (const auto& l : s->lemmas) CHECK(lex.contains(l, p));
    }
  }
}

TEST_CASE("loading twice gives equal lexicons") {
  CHECK(Lexicon::load(cf_test::data_dir() / "fixture_wordnet") == Lexicon::load(cf_test::data_dir() / "fixture_wordnet"));
}

TEST_CASE("missing data.adv is named") {
  cf_test::TempDir tmp;
  const auto dir = tmp.path() / "wn";
  copy_mini(dir);
  fs::remove(dir / "data.adv");
  CHECK_THROWS_AS(Lexicon::load(dir), IoError);
  CHECK(load_error(dir).find("data.adv") != std::string::npos);
}

TEST_CASE("malformed data line reports file and line") {
  cf_test::TempDir tmp;
  const auto dir = tmp.path() / "wn";
  copy_mini(dir);
  replace_line((dir / "data.verb").string(), " v 01 bark 0", " v zz bark 0");
  CHECK_THROWS_AS(Lexicon::load(dir), ValidationError);
  CHECK(load_error(dir).find("data.verb:3") != std::string::npos);
}

TEST_CASE("malformed index line reports file and line") {
  cf_test::TempDir tmp;
  const auto dir = tmp.path() / "wn";
  copy_mini(dir);
  replace_line((dir / "index.adj").string(), "loud a 1 0 1 0", "loud a 1");
  CHECK(load_error(dir).find("index.adj:3") != std::string::npos);
}

TEST_CASE("dangling offset is rejected") {
  cf_test::TempDir tmp;
  const auto dir = tmp.path() / "wn";
  copy_mini(dir);
  auto text = cf_test::read_file((dir / "index.adv").string());
  const auto at = text.rfind("000");
  text.replace(at, 3, "999");
  cf_test::write_file((dir / "index.adv").string(), text);
  CHECK_THROWS_AS(Lexicon::load(dir), ValidationError);
}

TEST_CASE("synset id text form") {
  const SynsetId id{Pos::verb, 941990};
  CHECK(id.to_string() == "00941990-v");
  CHECK(SynsetId::parse("00941990-v") == id);
  CHECK(SynsetId::parse("00000126-s").pos == Pos::adj);
  CHECK_THROWS(SynsetId::parse("941990"));
}

TEST_CASE("synonyms over the fixture") {
  const auto& lex = cf_test::fixture_lexicon();
  CHECK(lex.synonyms("small", Pos::adj) == Strings{"minor", "little"});
  CHECK(lex.synonyms("unhappy", Pos::adj) == Strings{"dejected"});
  CHECK(lex.synonyms("talk", Pos::verb) == Strings{"babble", "speak"});
  CHECK(lex.synonyms("happy", Pos::adj) == Strings{"glad"});
  CHECK(lex.synonyms("red", Pos::adj).empty());
  CHECK(lex.synonyms("xyzzyplugh", Pos::noun).empty());
  CHECK(lex.synonyms("talk", Pos::noun).empty());
  CHECK(lex.synonyms("walk", Pos::verb) == Strings{"stroll"});
  CHECK(lex.synonyms("walk", Pos::verb, true) == Strings{"stroll", "go on foot"});
  const auto entries = lex.synonym_entries("talk", Pos::verb);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].source == lex.senses("talk", Pos::verb)[0]);
  CHECK(entries[1].source == lex.senses("talk", Pos::verb)[1]);
}

TEST_CASE("synonym properties over every fixture lemma") {
  const auto& lex = cf_test::fixture_lexicon();
  for (Pos p : kAllPos) {
    for (const auto& word : Strings{"small", "talk", "walk", "quick", "man", "happily", "run", "carry"}) {
      const auto syns = lex.synonyms(word, p, true);
      for (std::size_t i = 0; i < syns.size(); ++i) {
        CHECK(syns[i] != word);
        CHECK(lex.contains(syns[i], p));
        for (std::size_t j = 0; j < i; ++j) CHECK(syns[i] != syns[j]);
      }
    }
  }
}

TEST_CASE("lemmatize") {
  const auto& lex = cf_test::fixture_lexicon();
  CHECK(lex.lemmatize("talks", Pos::verb) == Strings{"talk"});
  CHECK(lex.lemmatize("Talks", Pos::verb) == Strings{"talk"});
  CHECK(lex.lemmatize("was", Pos::verb) == Strings{"be"});
  CHECK(lex.lemmatize("smiling", Pos::verb) == Strings{"smile"});
  CHECK(lex.lemmatize("running", Pos::verb) == Strings{"run"});
  CHECK(lex.lemmatize("stopped", Pos::verb) == Strings{"stop"});
  CHECK(lex.lemmatize("tries", Pos::verb) == Strings{"try"});
  CHECK(lex.lemmatize("children", Pos::noun) == Strings{"child"});
  CHECK(lex.lemmatize("presents", Pos::noun) == Strings{"present"});
  CHECK(lex.lemmatize("smaller", Pos::adj) == Strings{"small"});
  CHECK(lex.lemmatize("largest", Pos::adj) == Strings{"large"});
  CHECK(lex.lemmatize("bigger", Pos::adj) == Strings{"big"});
  CHECK(lex.lemmatize("quickly", Pos::adv) == Strings{"quickly"});
  CHECK(lex.lemmatize("talk", Pos::verb) == Strings{"talk"});
  CHECK(lex.lemmatize("zzzing", Pos::verb).empty());
  CHECK(lex.lemmatize("go_on_foot", Pos::verb) == Strings{"go on foot"});
}

TEST_CASE("exception entries bypass detachment") {
  const auto& lex = cf_test::fixture_lexicon();
  // "ran" would detach to nothing anyway; "bore" would detach to "bor"/"bore"
  // but the exception list is authoritative.
  CHECK(lex.lemmatize("bore", Pos::verb) == Strings{"bear"});
  CHECK(lex.exceptions("ran", Pos::verb).size() == 1);
  CHECK(lex.exceptions("ran", Pos::noun).empty());
}

TEST_CASE("normalize lemma") {
  CHECK(normalize_lemma("Go_On_Foot") == "go on foot");
  CHECK(cf_test::fixture_lexicon().contains("glad", Pos::adj));
  CHECK_FALSE(cf_test::fixture_lexicon().contains("glad(p)", Pos::adj));
}
