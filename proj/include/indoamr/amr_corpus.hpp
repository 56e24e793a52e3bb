#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "indoamr/amr_graph.hpp"
#include "indoamr/error.hpp"
#include "indoamr/penman.hpp"
#include "indoamr/text.hpp"

namespace indoamr {

struct AmrEntry {
  std::string id;
  std::string sentence;
  AmrGraph graph;
};

namespace amr_corpus_detail {

// Value of a "::key value" field inside an AMR comment line. Several fields
// may share a line ("# ::id 3 ::date ..."); ::snt runs to the end of line.
inline std::string comment_field(std::string_view body, std::string_view key) {
  const std::string marker = "::" + std::string(key);
  auto pos = body.find(marker);
  while (pos != std::string_view::npos) {
    const auto after = pos + marker.size();
    if (after == body.size() || body[after] == ' ' || body[after] == '\t') {
      auto rest = body.substr(after);
      if (key != "snt") {
        const auto next = rest.find(" ::");
        if (next != std::string_view::npos) rest = rest.substr(0, next);
      }
      return trim(rest);
    }
    pos = body.find(marker, after);
  }
  return {};
}

}  // namespace amr_corpus_detail

/// Reads blank-line separated entries of "# ::id", "# ::snt" comments and
/// one (possibly multi-line) PENMAN block. Missing ids default to the
/// 1-based entry position.
inline std::vector<AmrEntry> read_amr_corpus(std::istream& in) {
  std::vector<AmrEntry> entries;
  std::set<std::string> ids;
  std::string id, sentence, body;
  std::size_t line_no = 0, body_line = 0;
  bool open = false;

  auto flush = [&] {
    if (!open) return;
    const std::size_t position = entries.size() + 1;
    if (trim(body).empty()) {
      throw FormatError("AMR entry " + std::to_string(position) + " (line " + std::to_string(body_line) +
                        ") has no PENMAN block");
    }
    if (id.empty()) id = std::to_string(position);
    if (!ids.insert(id).second) throw FormatError("duplicate AMR id '" + id + "'");
    try {
      entries.push_back({id, sentence, parse_penman(body)});
    } catch (const ParseError& e) {
      throw ParseError("AMR entry " + std::to_string(position) + " ('" + id + "'): " + e.what(),
                       body_line + e.line() - 1, e.column());
    } catch (const FormatError& e) {
      throw FormatError("AMR entry " + std::to_string(position) + " ('" + id + "'): " + e.what());
    }
    id.clear();
    sentence.clear();
    body.clear();
    open = false;
  };

  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) {
      flush();
      continue;
    }
    if (!open) {
      open = true;
      body_line = line_no;
    }
    if (line.front() == '#' && body.empty()) {
      const std::string_view comment = std::string_view(line).substr(1);
      if (auto v = amr_corpus_detail::comment_field(comment, "id"); !v.empty()) id = v;
      if (auto v = amr_corpus_detail::comment_field(comment, "snt"); !v.empty()) sentence = v;
      body_line = line_no + 1;
      continue;
    }
    body += line;
    body += '\n';
  }
  flush();
  return entries;
}

inline std::vector<AmrEntry> read_amr_corpus_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_amr_corpus(in);
}

inline void write_amr_corpus(std::ostream& out, const std::vector<AmrEntry>& entries) {
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out << '\n';
    out << "# ::id " << entries[i].id << '\n';
    out << "# ::snt " << entries[i].sentence << '\n';
    out << serialize_penman(entries[i].graph) << '\n';
  }
}

}  // namespace indoamr
