#include "contrastforge/corpus.hpp"

#include <istream>
#include <ostream>

#include <json.hpp>

#include "text_util.hpp"

namespace contrastforge {

namespace {

using nlohmann::json;

enum class RecordFault { none, malformed, bad_label };

struct RecordError {
  RecordFault fault = RecordFault::none;
  std::string message;
};

std::optional<std::vector<PreTag>> parse_pretags(const json& arr, std::size_t hyp_len,
                                                 RecordError& err) {
  if (!arr.is_array()) {
    err = {RecordFault::malformed, "hypothesis_tags is not an array"};
    return std::nullopt;
  }
  std::vector<PreTag> tags;
  std::size_t prev_end = 0;
  for (const auto& rec : arr) {
    if (!rec.is_array() || rec.size() != 4 || !rec[0].is_number_unsigned() ||
        !rec[1].is_number_unsigned() || !rec[2].is_string() || !rec[3].is_string()) {
      err = {RecordFault::malformed, "hypothesis_tags entry must be [start, end, tag, form]"};
      return std::nullopt;
    }
    PreTag t;
    t.start = rec[0].get<std::size_t>();
    t.end = rec[1].get<std::size_t>();
    auto tag = parse_tag(rec[2].get<std::string>());
    auto form = parse_form(rec[3].get<std::string>());
    if (!tag || !form) {
      err = {RecordFault::malformed, "unknown tag or form in hypothesis_tags"};
      return std::nullopt;
    }
    t.tag = *tag;
    t.form = *form;
    if (t.start >= t.end || t.end > hyp_len || t.start < prev_end) {
      err = {RecordFault::malformed, "hypothesis_tags spans must be ordered, non-overlapping and in bounds"};
      return std::nullopt;
    }
    if (!is_compatible(t.tag, t.form)) {
      err = {RecordFault::malformed, "hypothesis_tags form incompatible with tag"};
      return std::nullopt;
    }
    prev_end = t.end;
    tags.push_back(t);
  }
  return tags;
}

std::optional<Example> parse_record(std::string_view line, std::size_t ordinal, RecordError& err) {
  json doc = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded() || !doc.is_object()) {
    err = {RecordFault::malformed, "not a JSON object"};
    return std::nullopt;
  }

  Example ex;
  for (const char* field : {"premise", "hypothesis"}) {
    auto it = doc.find(field);
    if (it == doc.end() || !it->is_string()) {
      err = {RecordFault::malformed, std::string("missing or non-string field '") + field + "'"};
      return std::nullopt;
    }
    const auto& text = it->get_ref<const std::string&>();
    if (detail::trim(text).empty()) {
      err = {RecordFault::malformed, std::string("empty field '") + field + "'"};
      return std::nullopt;
    }
    (std::string_view(field) == "premise" ? ex.premise : ex.hypothesis) = text;
  }

  auto label_it = doc.find("label");
  if (label_it == doc.end()) {
    err = {RecordFault::malformed, "missing field 'label'"};
    return std::nullopt;
  }
  std::optional<Label> label;
  if (label_it->is_number_integer()) {
    label = label_from_int(label_it->get<std::int64_t>());
  } else if (label_it->is_string()) {
    label = label_from_name(label_it->get_ref<const std::string&>());
  } else {
    err = {RecordFault::malformed, "label is not an integer"};
    return std::nullopt;
  }
  if (!label) {
    err = {RecordFault::bad_label, "label outside {0, 1, 2}: " + label_it->dump()};
    return std::nullopt;
  }
  ex.label = *label;

  auto id_it = doc.find("id");
  if (id_it == doc.end() || id_it->is_null()) {
    ex.id = std::to_string(ordinal);
  } else if (id_it->is_string()) {
    ex.id = id_it->get<std::string>();
  } else if (id_it->is_number_integer()) {
    ex.id = std::to_string(id_it->get<std::int64_t>());
  } else {
    err = {RecordFault::malformed, "id must be a string or integer"};
    return std::nullopt;
  }

  if (auto tags_it = doc.find("hypothesis_tags"); tags_it != doc.end() && !tags_it->is_null()) {
    ex.hypothesis_tags = parse_pretags(*tags_it, ex.hypothesis.size(), err);
    if (!ex.hypothesis_tags) return std::nullopt;
  }
  return ex;
}

}  // namespace

std::string_view to_string(Label l) {
  switch (l) {
    case Label::entailment: return "entailment";
    case Label::neutral: return "neutral";
    case Label::contradiction: return "contradiction";
  }
  return "?";
}

std::optional<Label> label_from_int(std::int64_t v) {
  if (v < 0 || v > 2) return std::nullopt;
  return static_cast<Label>(v);
}

std::optional<Label> label_from_name(std::string_view name) {
  if (name == "entailment") return Label::entailment;
  if (name == "neutral") return Label::neutral;
  if (name == "contradiction") return Label::contradiction;
  return std::nullopt;
}

ParsedCorpus parse_examples(std::istream& in, Strictness strictness) {
  ParsedCorpus result;
  auto& stats = result.stats;
  std::string line;
  std::size_t line_no = 0;
  while (detail::read_line(in, line)) {
    ++line_no;
    if (detail::trim(line).empty()) continue;
    // Ordinal ids count records, not physical lines.
    const std::size_t ordinal = stats.total++;
    RecordError err;
    auto ex = parse_record(line, ordinal, err);
    if (ex) {
      ++stats.kept;
      ++stats.per_label_counts[index_of(ex->label)];
      result.examples.push_back(std::move(*ex));
      continue;
    }
    if (strictness == Strictness::strict) {
      throw ValidationError("line " + std::to_string(line_no) + ": " + err.message);
    }
    if (err.fault == RecordFault::bad_label) {
      ++stats.skipped_bad_label;
    } else {
      ++stats.skipped_malformed;
    }
  }
  if (in.bad()) throw IoError("read error after line " + std::to_string(line_no));
  return result;
}

ParsedCorpus load_examples(const std::string& path, Strictness strictness) {
  auto in = detail::open_input(path);
  try {
    return parse_examples(in, strictness);
  } catch (const ValidationError& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

std::string example_to_json_line(const Example& ex) {
  nlohmann::ordered_json doc;
  doc["premise"] = ex.premise;
  doc["hypothesis"] = ex.hypothesis;
  doc["label"] = static_cast<int>(ex.label);
  if (!ex.id.empty()) doc["id"] = ex.id;
  if (ex.hypothesis_tags) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& t : *ex.hypothesis_tags) {
      arr.push_back({t.start, t.end, to_string(t.tag), to_string(t.form)});
    }
    doc["hypothesis_tags"] = std::move(arr);
  }
  return doc.dump(-1, ' ', false, nlohmann::ordered_json::error_handler_t::strict);
}

std::size_t write_examples(std::span<const Example> examples, std::ostream& out) {
  std::size_t bytes = 0;
  for (const auto& ex : examples) {
    std::string line = example_to_json_line(ex);
    line.push_back('\n');
    out.write(line.data(), static_cast<std::streamsize>(line.size()));
    bytes += line.size();
  }
  if (!out) throw IoError("write failed");
  return bytes;
}

std::size_t save_examples(std::span<const Example> examples, const std::string& path) {
  auto out = detail::open_output(path);
  std::size_t n = write_examples(examples, out);
  out.flush();
  if (!out) throw IoError("write failed: " + path);
  return n;
}

}  // namespace contrastforge
