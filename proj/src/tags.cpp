#include "contrastforge/tags.hpp"

#include <array>

#include "text_util.hpp"

namespace contrastforge {

namespace {

constexpr std::array<std::string_view, 4> kPosNames = {"NOUN", "VERB", "ADJ", "ADV"};
constexpr std::array<std::string_view, 5> kTagNames = {"NOUN", "VERB", "ADJ", "ADV", "OTHER"};
constexpr std::array<std::string_view, 7> kFormNames = {
    "BASE", "THIRD_SG", "PAST", "GERUND", "COMPARATIVE", "SUPERLATIVE", "PLAIN"};
constexpr std::array<std::string_view, 3> kCapNames = {"LOWER", "TITLE", "UPPER"};

template <typename Enum, std::size_t N>
std::optional<Enum> lookup(const std::array<std::string_view, N>& names, std::string_view s) {
  std::string upper(s);
  for (char& c : upper) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == upper) return static_cast<Enum>(i);
  }
  return std::nullopt;
}

}  // namespace

bool is_compatible(Tag tag, Form form) {
  switch (tag) {
    case Tag::verb:
      return form == Form::base || form == Form::third_sg || form == Form::past ||
             form == Form::gerund;
    case Tag::adj:
    case Tag::adv:
      return form == Form::plain || form == Form::comparative || form == Form::superlative;
    case Tag::noun:
    case Tag::other:
      return form == Form::plain;
  }
  return false;
}

std::string_view to_string(Pos p) { return kPosNames[static_cast<std::size_t>(p)]; }
std::string_view to_string(Tag t) { return kTagNames[static_cast<std::size_t>(t)]; }
std::string_view to_string(Form f) { return kFormNames[static_cast<std::size_t>(f)]; }
std::string_view to_string(Capitalization c) { return kCapNames[static_cast<std::size_t>(c)]; }

std::optional<Pos> parse_pos(std::string_view s) { return lookup<Pos>(kPosNames, s); }
std::optional<Tag> parse_tag(std::string_view s) { return lookup<Tag>(kTagNames, s); }
std::optional<Form> parse_form(std::string_view s) { return lookup<Form>(kFormNames, s); }

char pos_letter(Pos p) {
  constexpr std::array<char, 4> letters = {'n', 'v', 'a', 'r'};
  return letters[static_cast<std::size_t>(p)];
}

}  // namespace contrastforge
