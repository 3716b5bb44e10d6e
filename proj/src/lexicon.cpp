#include "contrastforge/lexicon.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "contrastforge/error.hpp"
#include "text_util.hpp"

namespace contrastforge {

namespace {

namespace fs = std::filesystem;

constexpr std::array<std::string_view, 4> kFileSuffix = {"noun", "verb", "adj", "adv"};

struct DetachRule {
  std::string_view suffix;
  std::string_view ending;
};

// Suffix-detachment tables, tried in order.
constexpr DetachRule kNounRules[] = {
    {"s", ""},    {"ses", "s"},   {"ves", "f"},   {"xes", "x"},  {"zes", "z"},
    {"ches", "ch"}, {"shes", "sh"}, {"men", "man"}, {"ies", "y"},
};
constexpr DetachRule kVerbRules[] = {
    {"s", ""},  {"ies", "y"}, {"es", "e"},    {"es", ""},   {"ed", "e"},
    {"ed", ""}, {"ing", "e"}, {"ing", ""}, {"ying", "ie"},
};
constexpr DetachRule kAdjRules[] = {
    {"er", ""},
    {"est", ""},
    {"er", "e"},
    {"est", "e"},
};

std::span<const DetachRule> rules_for(Pos pos) {
  switch (pos) {
    case Pos::noun: return kNounRules;
    case Pos::verb: return kVerbRules;
    case Pos::adj: return kAdjRules;
    case Pos::adv: return {};
  }
  return {};
}

// Suffixes after which a doubled final consonant may be undone
// ("grinning" -> "grinn" -> "grin").
bool undoubles(Pos pos, std::string_view suffix) {
  if (pos == Pos::verb) return suffix == "ing" || suffix == "ed";
  if (pos == Pos::adj) return suffix == "er" || suffix == "est";
  return false;
}

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("missing or unreadable WordNet file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read error: " + path.string());
  return std::move(buf).str();
}

/// Iterates lines of a WordNet file, skipping the license preamble
/// (lines starting with two spaces) and blank lines.
template <typename Fn>
void for_each_record(const std::string& text, Fn&& fn) {
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) nl = text.size();
    std::string_view line(text.data() + pos, nl - pos);
    pos = nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty() || line.starts_with("  ")) continue;
    fn(line, line_no);
  }
}

class LineError {
 public:
  LineError(std::string file, std::size_t line) : file_(std::move(file)), line_(line) {}
  [[noreturn]] void fail(const std::string& what) const {
    throw ValidationError(file_ + ":" + std::to_string(line_) + ": " + what);
  }

 private:
  std::string file_;
  std::size_t line_;
};

template <typename T>
T parse_number(std::string_view field, int base, const LineError& where, const char* what) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value, base);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    where.fail(std::string("bad ") + what + " '" + std::string(field) + "'");
  }
  return value;
}

std::string strip_adj_marker(std::string_view word) {
  // "galore(ip)", "elect(p)", "beautiful(a)"
  if (!word.empty() && word.back() == ')') {
    auto open = word.rfind('(');
    if (open != std::string_view::npos && open > 0) word = word.substr(0, open);
  }
  return std::string(word);
}

bool ss_type_matches(Pos pos, char ss) {
  switch (pos) {
    case Pos::noun: return ss == 'n';
    case Pos::verb: return ss == 'v';
    case Pos::adj: return ss == 'a' || ss == 's';
    case Pos::adv: return ss == 'r';
  }
  return false;
}

}  // namespace

std::string normalize_lemma(std::string_view raw) {
  std::string out = detail::to_lower(raw);
  std::replace(out.begin(), out.end(), '_', ' ');
  return out;
}

std::string SynsetId::to_string() const {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%08u-%c", offset, pos_letter(pos));
  return buf;
}

SynsetId SynsetId::parse(std::string_view text) {
  auto dash = text.find('-');
  if (dash == std::string_view::npos || dash + 2 != text.size()) {
    throw ValidationError("bad synset id '" + std::string(text) + "'");
  }
  SynsetId id;
  auto digits = text.substr(0, dash);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), id.offset);
  if (ec != std::errc() || ptr != digits.data() + digits.size()) {
    throw ValidationError("bad synset id '" + std::string(text) + "'");
  }
  switch (text.back()) {
    case 'n': id.pos = Pos::noun; break;
    case 'v': id.pos = Pos::verb; break;
    case 'a':
    case 's': id.pos = Pos::adj; break;
    case 'r': id.pos = Pos::adv; break;
    default: throw ValidationError("bad synset id '" + std::string(text) + "'");
  }
  return id;
}

Lexicon Lexicon::load(const fs::path& dir) {
  // All files are checked for presence up front so a missing file is
  // reported before any parsing work.
  for (std::string_view suffix : kFileSuffix) {
    for (const std::string& name : {"index." + std::string(suffix), "data." + std::string(suffix),
                                    std::string(suffix) + ".exc"}) {
      if (!fs::is_regular_file(dir / name)) {
        throw IoError("missing WordNet file " + name + " in " + dir.string());
      }
    }
  }

  Lexicon lex;
  for (Pos pos : kAllPos) {
    const std::string suffix(kFileSuffix[static_cast<std::size_t>(pos)]);
    PosTable& tab = lex.table(pos);

    const std::string data_name = "data." + suffix;
    const std::string data_text = read_file(dir / data_name);
    for_each_record(data_text, [&](std::string_view line, std::size_t line_no) {
      const LineError where(data_name, line_no);
      auto f = detail::split_fields(line);
      if (f.size() < 6) where.fail("truncated synset line");
      if (f[0].size() != 8) where.fail("synset offset must be 8 digits");
      const auto offset = parse_number<std::uint32_t>(f[0], 10, where, "synset offset");
      parse_number<unsigned>(f[1], 10, where, "lex_filenum");
      if (f[2].size() != 1 || !ss_type_matches(pos, f[2][0])) {
        where.fail("ss_type '" + std::string(f[2]) + "' does not belong in " + data_name);
      }
      const auto w_cnt = parse_number<std::size_t>(f[3], 16, where, "w_cnt");
      if (w_cnt == 0) where.fail("synset has no lemmas");
      std::size_t i = 4;
      Synset syn{SynsetId{pos, offset}, {}};
      for (std::size_t w = 0; w < w_cnt; ++w, i += 2) {
        if (i + 1 >= f.size()) where.fail("w_cnt exceeds the words on the line");
        parse_number<unsigned>(f[i + 1], 16, where, "lex_id");
        syn.lemmas.push_back(normalize_lemma(strip_adj_marker(f[i])));
      }
      if (i >= f.size()) where.fail("missing p_cnt");
      const auto p_cnt = parse_number<std::size_t>(f[i++], 10, where, "p_cnt");
      for (std::size_t p = 0; p < p_cnt; ++p, i += 4) {
        if (i + 3 >= f.size()) where.fail("p_cnt exceeds the pointers on the line");
        parse_number<std::uint32_t>(f[i + 1], 10, where, "pointer offset");
        parse_number<unsigned>(f[i + 3], 16, where, "pointer source/target");
      }
      if (pos == Pos::verb) {
        if (i >= f.size()) where.fail("missing f_cnt");
        const auto f_cnt = parse_number<std::size_t>(f[i++], 10, where, "f_cnt");
        i += 3 * f_cnt;
      }
      if (i >= f.size() || f[i] != "|") where.fail("missing gloss separator '|'");
      if (!tab.synsets.emplace(offset, std::move(syn)).second) {
        where.fail("duplicate synset offset " + std::string(f[0]));
      }
    });

    const std::string index_name = "index." + suffix;
    const std::string index_text = read_file(dir / index_name);
    for_each_record(index_text, [&](std::string_view line, std::size_t line_no) {
      const LineError where(index_name, line_no);
      auto f = detail::split_fields(line);
      if (f.size() < 6) where.fail("truncated index line");
      if (f[1].size() != 1 || f[1][0] != pos_letter(pos)) where.fail("pos field does not match file");
      const auto synset_cnt = parse_number<std::size_t>(f[2], 10, where, "synset_cnt");
      const auto p_cnt = parse_number<std::size_t>(f[3], 10, where, "p_cnt");
      std::size_t i = 4 + p_cnt;
      if (i + 2 + synset_cnt != f.size()) where.fail("field count disagrees with synset_cnt/p_cnt");
      parse_number<std::size_t>(f[i], 10, where, "sense_cnt");
      parse_number<std::size_t>(f[i + 1], 10, where, "tagsense_cnt");
      i += 2;
      std::vector<SynsetId> ids;
      ids.reserve(synset_cnt);
      for (; i < f.size(); ++i) {
        const auto offset = parse_number<std::uint32_t>(f[i], 10, where, "synset offset");
        if (!tab.synsets.contains(offset)) {
          where.fail("dangling synset offset " + std::string(f[i]) + " (not in data." + suffix + ")");
        }
        ids.push_back(SynsetId{pos, offset});
      }
      if (!tab.index.emplace(normalize_lemma(f[0]), std::move(ids)).second) {
        where.fail("duplicate lemma '" + std::string(f[0]) + "'");
      }
    });

    const std::string exc_name = suffix + ".exc";
    const std::string exc_text = read_file(dir / exc_name);
    for_each_record(exc_text, [&](std::string_view line, std::size_t line_no) {
      auto f = detail::split_fields(line);
      if (f.size() < 2) LineError(exc_name, line_no).fail("exception line needs a surface and a base form");
      auto& bases = tab.exceptions[normalize_lemma(f[0])];
      for (std::size_t i = 1; i < f.size(); ++i) {
        std::string base = normalize_lemma(f[i]);
        if (std::find(bases.begin(), bases.end(), base) == bases.end()) bases.push_back(std::move(base));
      }
    });

    // Every synset member must be reachable through the index.
    for (const auto& [offset, syn] : tab.synsets) {
      for (const auto& lemma : syn.lemmas) {
        if (!tab.index.contains(lemma)) {
          throw ValidationError(data_name + ": lemma '" + lemma + "' of synset " +
                                syn.id.to_string() + " is missing from " + index_name);
        }
      }
    }
  }
  return lex;
}

std::span<const SynsetId> Lexicon::senses(std::string_view lemma, Pos pos) const {
  const auto& idx = table(pos).index;
  auto it = idx.find(lemma);
  if (it == idx.end()) return {};
  return it->second;
}

const Synset* Lexicon::find(SynsetId id) const {
  const auto& syns = table(id.pos).synsets;
  auto it = syns.find(id.offset);
  return it == syns.end() ? nullptr : &it->second;
}

bool Lexicon::contains(std::string_view lemma, Pos pos) const {
  return table(pos).index.find(lemma) != table(pos).index.end();
}

std::vector<SynonymEntry> Lexicon::synonym_entries(std::string_view lemma, Pos pos,
                                                   bool allow_multiword) const {
  std::vector<SynonymEntry> out;
  std::unordered_set<std::string_view> seen;
  for (const SynsetId& id : senses(lemma, pos)) {
    const Synset* syn = find(id);
    for (const auto& member : syn->lemmas) {
      if (member == lemma) continue;
      if (!allow_multiword && member.find(' ') != std::string::npos) continue;
      if (!seen.insert(member).second) continue;
      out.push_back({member, id});
    }
  }
  return out;
}

std::vector<std::string> Lexicon::synonyms(std::string_view lemma, Pos pos,
                                           bool allow_multiword) const {
  std::vector<std::string> out;
  for (auto& e : synonym_entries(lemma, pos, allow_multiword)) out.push_back(std::move(e.lemma));
  return out;
}

std::span<const std::string> Lexicon::exceptions(std::string_view surface, Pos pos) const {
  const auto& exc = table(pos).exceptions;
  auto it = exc.find(normalize_lemma(surface));
  if (it == exc.end()) return {};
  return it->second;
}

std::vector<std::string> Lexicon::lemmatize(std::string_view surface, Pos pos) const {
  const std::string form = normalize_lemma(surface);
  std::vector<std::string> out;
  auto add = [&out](std::string cand) {
    if (std::find(out.begin(), out.end(), cand) == out.end()) out.push_back(std::move(cand));
  };

  if (form.empty()) return out;
  if (contains(form, pos)) add(form);

  // Exception lists take precedence over the detachment rules and are
  // trusted as-is: many listed bases have no index entry of their own.
  if (auto exc = exceptions(form, pos); !exc.empty()) {
    for (const auto& base : exc) add(base);
    return out;
  }

  for (const auto& rule : rules_for(pos)) {
    if (!detail::ends_with(form, rule.suffix) || form.size() == rule.suffix.size()) continue;
    std::string stem = form.substr(0, form.size() - rule.suffix.size());
    std::string cand = stem + std::string(rule.ending);
    if (contains(cand, pos)) add(cand);
    if (rule.ending.empty() && undoubles(pos, rule.suffix) && stem.size() >= 3 &&
        stem.back() == stem[stem.size() - 2] && !is_vowel(stem.back())) {
      stem.pop_back();
      if (contains(stem, pos)) add(stem);
    }
  }
  return out;
}

}  // namespace contrastforge
