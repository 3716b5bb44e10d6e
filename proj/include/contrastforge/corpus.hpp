#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "contrastforge/tags.hpp"

namespace contrastforge {

enum class Label : std::uint8_t { entailment = 0, neutral = 1, contradiction = 2 };

inline constexpr std::size_t kNumLabels = 3;

constexpr std::size_t index_of(Label l) { return static_cast<std::size_t>(l); }
std::string_view to_string(Label l);
std::optional<Label> label_from_int(std::int64_t v);
std::optional<Label> label_from_name(std::string_view name);

/// Externally supplied tag for one hypothesis span, used verbatim by the
/// tagger instead of its own cascade.
struct PreTag {
  std::size_t start = 0;
  std::size_t end = 0;
  Tag tag = Tag::other;
  Form form = Form::plain;

  bool operator==(const PreTag&) const = default;
};

struct Example {
  std::string id;
  std::string premise;
  std::string hypothesis;
  Label label = Label::entailment;
  std::optional<std::vector<PreTag>> hypothesis_tags;

  bool operator==(const Example&) const = default;
};

struct CorpusStats {
  std::size_t total = 0;
  std::size_t kept = 0;
  std::size_t skipped_bad_label = 0;
  std::size_t skipped_malformed = 0;
  std::array<std::size_t, kNumLabels> per_label_counts{};

  bool operator==(const CorpusStats&) const = default;
};

enum class Strictness { lenient, strict };

struct ParsedCorpus {
  std::vector<Example> examples;
  CorpusStats stats;
};

/// Reads newline-delimited JSON records. Whitespace-only lines are not
/// records and are not counted. In strict mode the first bad record throws
/// ValidationError carrying its 1-based line number; in lenient mode it is
/// skipped and counted.
ParsedCorpus parse_examples(std::istream& in, Strictness strictness = Strictness::lenient);
ParsedCorpus load_examples(const std::string& path, Strictness strictness = Strictness::lenient);

/// One JSON object per line, LF-terminated. Returns bytes written.
std::size_t write_examples(std::span<const Example> examples, std::ostream& out);
std::size_t save_examples(std::span<const Example> examples, const std::string& path);

/// Serializes one example to a single JSON line (no trailing newline).
std::string example_to_json_line(const Example& ex);

}  // namespace contrastforge
