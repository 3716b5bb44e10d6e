#include "contrastforge/morphology.hpp"

#include <cctype>
#include <stdexcept>

#include "text_util.hpp"

namespace contrastforge {

namespace {

bool is_vowel(char c) {
  return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool is_consonant(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) && !is_vowel(c);
}

std::size_t vowel_groups(std::string_view w) {
  std::size_t groups = 0;
  bool in_group = false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    // 'y' after a consonant acts as a vowel ("try", "cry").
    bool v = is_vowel(w[i]) || (w[i] == 'y' && i > 0 && is_consonant(w[i - 1]));
    if (v && !in_group) ++groups;
    in_group = v;
  }
  return groups;
}

// Consonant-vowel-consonant ending on a single-syllable word approximates
// "short stressed final vowel": grin -> grinning, stop -> stopped,
// but visit -> visited, open -> opening.
bool doubles_final_consonant(std::string_view w) {
  if (w.size() < 3) return false;
  char c3 = w[w.size() - 1], c2 = w[w.size() - 2], c1 = w[w.size() - 3];
  if (!is_consonant(c3) || c3 == 'w' || c3 == 'x' || c3 == 'y') return false;
  if (!is_vowel(c2)) return false;
  // "quit", "squat": the u after q is part of the consonant.
  if (c1 == 'u' && w.size() >= 4 && w[w.size() - 4] == 'q') return true;
  return is_consonant(c1) && vowel_groups(w) == 1;
}

bool ends_in_sibilant(std::string_view w) {
  return detail::ends_with(w, "s") || detail::ends_with(w, "x") || detail::ends_with(w, "z") ||
         detail::ends_with(w, "ch") || detail::ends_with(w, "sh");
}

bool consonant_y(std::string_view w) {
  return w.size() >= 2 && w.back() == 'y' && is_consonant(w[w.size() - 2]);
}

// Adds a vowel-initial suffix ("ing", "ed", "er", "est").
std::string add_vowel_suffix(std::string_view w, std::string_view suffix) {
  std::string base(w);
  const bool is_ing = suffix == "ing";
  if (is_ing) {
    if (detail::ends_with(base, "ie")) return base.substr(0, base.size() - 2) + "ying";
    if (base.size() > 2 && base.back() == 'e' && !detail::ends_with(base, "ee") &&
        !detail::ends_with(base, "ye") && !detail::ends_with(base, "oe")) {
      base.pop_back();
      return base + "ing";
    }
  } else {
    if (base.back() == 'e') return base + std::string(suffix.substr(1));
    if (consonant_y(base)) {
      base.back() = 'i';
      return base + std::string(suffix);
    }
  }
  if (doubles_final_consonant(base)) base.push_back(base.back());
  return base + std::string(suffix);
}

std::string inflect_word(std::string_view w, Form form) {
  if (w.empty()) return std::string(w);
  switch (form) {
    case Form::base:
    case Form::plain:
      return std::string(w);
    case Form::third_sg:
      if (ends_in_sibilant(w)) return std::string(w) + "es";
      // go -> goes, echo -> echoes
      if (w.size() >= 2 && w.back() == 'o' && is_consonant(w[w.size() - 2])) return std::string(w) + "es";
      if (consonant_y(w)) return std::string(w.substr(0, w.size() - 1)) + "ies";
      return std::string(w) + "s";
    case Form::past:
      return add_vowel_suffix(w, "ed");
    case Form::gerund:
      return add_vowel_suffix(w, "ing");
    case Form::comparative:
      return add_vowel_suffix(w, "er");
    case Form::superlative:
      return add_vowel_suffix(w, "est");
  }
  return std::string(w);
}

}  // namespace

Capitalization detect_capitalization(std::string_view surface) {
  std::size_t letters = 0, upper = 0;
  bool first_upper = false, seen_letter = false;
  for (char c : surface) {
    auto uc = static_cast<unsigned char>(c);
    if (!std::isalpha(uc)) continue;
    ++letters;
    if (std::isupper(uc)) ++upper;
    if (!seen_letter) first_upper = std::isupper(uc) != 0;
    seen_letter = true;
  }
  if (letters >= 2 && upper == letters) return Capitalization::upper;
  if (first_upper) return Capitalization::title;
  return Capitalization::lower;
}

std::string apply_capitalization(std::string_view lower, Capitalization cap) {
  std::string out(lower);
  switch (cap) {
    case Capitalization::lower:
      break;
    case Capitalization::title:
      for (char& c : out) {
        if (std::isalpha(static_cast<unsigned char>(c))) {
          c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
          break;
        }
      }
      break;
    case Capitalization::upper:
      for (char& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
      break;
  }
  return out;
}

std::string inflect(std::string_view lemma, const InflectionFeatures& features) {
  if (!is_compatible(features.pos, features.form)) {
    throw std::invalid_argument("form " + std::string(to_string(features.form)) +
                                " is not valid for " + std::string(to_string(features.pos)));
  }
  const std::string lower = detail::to_lower(lemma);
  const auto space = lower.find(' ');
  std::string inflected;
  if (space == std::string::npos) {
    inflected = inflect_word(lower, features.form);
  } else {
    inflected = inflect_word(std::string_view(lower).substr(0, space), features.form) +
                lower.substr(space);
  }
  return apply_capitalization(inflected, features.capitalization);
}

Form infer_form(std::string_view surface, std::string_view lemma, Tag tag) {
  const std::string s = detail::to_lower(surface);
  const bool same = s == lemma;
  switch (tag) {
    case Tag::verb:
      if (same) return Form::base;
      if (detail::ends_with(s, "ing")) return Form::gerund;
      if (detail::ends_with(s, "ed")) return Form::past;
      if (detail::ends_with(s, "s")) return Form::third_sg;
      // Irregular forms from the exception lists ("ran", "grew").
      return Form::past;
    case Tag::adj:
    case Tag::adv:
      if (same) return Form::plain;
      if (detail::ends_with(s, "est")) return Form::superlative;
      if (detail::ends_with(s, "er")) return Form::comparative;
      return Form::plain;
    case Tag::noun:
    case Tag::other:
      return Form::plain;
  }
  return Form::plain;
}

}  // namespace contrastforge
