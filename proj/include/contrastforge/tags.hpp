#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

namespace contrastforge {

/// Open-class parts of speech, one per WordNet data file.
enum class Pos : std::uint8_t { noun = 0, verb = 1, adj = 2, adv = 3 };

inline constexpr Pos kAllPos[] = {Pos::noun, Pos::verb, Pos::adj, Pos::adv};

/// Coarse tag set assigned by the tagger.
enum class Tag : std::uint8_t { noun = 0, verb = 1, adj = 2, adv = 3, other = 4 };

enum class Form : std::uint8_t {
  base,
  third_sg,
  past,
  gerund,
  comparative,
  superlative,
  plain,
};

enum class Capitalization : std::uint8_t { lower, title, upper };

struct InflectionFeatures {
  Tag pos = Tag::other;
  Form form = Form::plain;
  Capitalization capitalization = Capitalization::lower;

  bool operator==(const InflectionFeatures&) const = default;
};

constexpr Tag to_tag(Pos p) { return static_cast<Tag>(p); }

constexpr std::optional<Pos> to_pos(Tag t) {
  if (t == Tag::other) return std::nullopt;
  return static_cast<Pos>(t);
}

/// True when `form` is a legal inflection for `tag`.
bool is_compatible(Tag tag, Form form);

std::string_view to_string(Pos p);
std::string_view to_string(Tag t);
std::string_view to_string(Form f);
std::string_view to_string(Capitalization c);

// Upper-case names ("VERB", "THIRD_SG"); lower case is accepted too.
std::optional<Pos> parse_pos(std::string_view s);
std::optional<Tag> parse_tag(std::string_view s);
std::optional<Form> parse_form(std::string_view s);

/// WordNet's one-letter code: n, v, a, r.
char pos_letter(Pos p);

}  // namespace contrastforge
