#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "contrastforge/tags.hpp"

namespace contrastforge {

/// (part of speech, data-file offset). Adjective satellites share the
/// adjective namespace.
struct SynsetId {
  Pos pos = Pos::noun;
  std::uint32_t offset = 0;

  auto operator<=>(const SynsetId&) const = default;

  /// "00941990-v"
  std::string to_string() const;
  static SynsetId parse(std::string_view text);
};

struct Synset {
  SynsetId id;
  /// Lower case, underscores replaced by spaces, adjective markers removed.
  std::vector<std::string> lemmas;

  bool operator==(const Synset&) const = default;
};

struct SynonymEntry {
  std::string lemma;
  SynsetId source;
};

namespace detail {
struct StringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const { return std::hash<std::string_view>{}(s); }
};
template <typename V>
using StringMap = std::unordered_map<std::string, V, StringHash, std::equal_to<>>;
}  // namespace detail

/// In-memory WordNet: lemma index, synsets and morphological exceptions for
/// the four open-class parts of speech. Immutable once loaded; all queries
/// are const and safe to call concurrently.
class Lexicon {
 public:
  /// Eagerly parses index.*, data.* and *.exc under `dir`. Throws IoError
  /// for missing files and ValidationError (with file and line) for
  /// malformed lines, dangling offsets, or index/data disagreement.
  static Lexicon load(const std::filesystem::path& dir);

  /// Senses of `lemma` in index-file order, or empty.
  std::span<const SynsetId> senses(std::string_view lemma, Pos pos) const;
  const Synset* find(SynsetId id) const;
  bool contains(std::string_view lemma, Pos pos) const;

  /// Co-members of the lemma's synsets, most frequent sense first,
  /// excluding the lemma itself, first occurrence kept. Multiword lemmas
  /// are dropped unless `allow_multiword`.
  std::vector<std::string> synonyms(std::string_view lemma, Pos pos,
                                    bool allow_multiword = false) const;
  /// Same as synonyms() but keeps the synset each entry came from.
  std::vector<SynonymEntry> synonym_entries(std::string_view lemma, Pos pos,
                                            bool allow_multiword = false) const;

  /// Base-form candidates for an inflected token (WordNet "morphy"):
  /// the surface itself when indexed, then the exception list if the
  /// surface has an entry there, otherwise suffix-detachment candidates
  /// that are indexed.
  std::vector<std::string> lemmatize(std::string_view surface, Pos pos) const;

  /// Exception-list base forms for a surface, or empty.
  std::span<const std::string> exceptions(std::string_view surface, Pos pos) const;

  std::size_t synset_count(Pos pos) const { return table(pos).synsets.size(); }
  std::size_t lemma_count(Pos pos) const { return table(pos).index.size(); }

  bool operator==(const Lexicon&) const = default;

 private:
  struct PosTable {
    detail::StringMap<std::vector<SynsetId>> index;
    std::unordered_map<std::uint32_t, Synset> synsets;
    detail::StringMap<std::vector<std::string>> exceptions;

    bool operator==(const PosTable&) const = default;
  };

  const PosTable& table(Pos p) const { return tables_[static_cast<std::size_t>(p)]; }
  PosTable& table(Pos p) { return tables_[static_cast<std::size_t>(p)]; }

  std::array<PosTable, 4> tables_;
};

/// Lower-cases and replaces underscores with spaces.
std::string normalize_lemma(std::string_view raw);

}  // namespace contrastforge
