#pragma once

#include <string>
#include <string_view>

#include "contrastforge/tags.hpp"

namespace contrastforge {

/// Re-inflects a base form with English regular rules, then applies the
/// capitalization in `features`. Multiword lemmas inflect their first word.
/// Throws std::invalid_argument when features.form is incompatible with
/// features.pos.
std::string inflect(std::string_view lemma, const InflectionFeatures& features);

/// LOWER unless the first letter is upper case; UPPER when every letter is
/// upper case and there are at least two of them.
Capitalization detect_capitalization(std::string_view surface);
std::string apply_capitalization(std::string_view lower, Capitalization cap);

/// Guesses which inflection turned `lemma` into `surface`.
Form infer_form(std::string_view surface, std::string_view lemma, Tag tag);

}  // namespace contrastforge
