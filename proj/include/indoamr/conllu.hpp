#pragma once

#include <charconv>
#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "indoamr/error.hpp"
#include "indoamr/text.hpp"

namespace indoamr {

struct Token {
  int index = 0;  // 1-based
  std::string form;
  std::string lemma;
  std::string upos;
  std::string ner = "O";
  int head = 0;  // 0 = syntactic root
  std::string deprel;

  friend bool operator==(const Token&, const Token&) = default;
};

struct AnnotatedSentence {
  std::string id;
  std::string text;
  std::vector<Token> tokens;

  const Token& token(int index) const { return tokens.at(static_cast<std::size_t>(index - 1)); }

  const Token& root() const {
    for (const auto& t : tokens)
      if (t.head == 0) return t;
    throw FormatError("sentence '" + id + "' has no root");
  }

  friend bool operator==(const AnnotatedSentence&, const AnnotatedSentence&) = default;
};

namespace conllu_detail {

inline int parse_int(std::string_view s, const char* field, std::size_t line) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw FormatError(std::string("non-integer ") + field + " '" + std::string(s) + "' on line " +
                      std::to_string(line));
  return value;
}

inline std::string ner_from_misc(std::string_view misc) {
  for (const auto& item : split(misc, '|'))
    if (item.rfind("NER=", 0) == 0 && item.size() > 4) return item.substr(4);
  return "O";
}

struct RawBlock {
  std::string id;
  std::string text;
  std::vector<Token> tokens;
  std::size_t first_line = 0;
};

// Drops PUNCT tokens, re-heads their dependents to the nearest non-PUNCT
// ancestor, renumbers, and validates the resulting tree.
inline AnnotatedSentence finish(RawBlock block) {
  const std::string where = "sentence '" + block.id + "' (line " + std::to_string(block.first_line) + ")";
  const int n = static_cast<int>(block.tokens.size());
  for (std::size_t i = 0; i < block.tokens.size(); ++i) {
    const auto& t = block.tokens[i];
    if (t.index != static_cast<int>(i) + 1)
      throw FormatError(where + ": token ids must be consecutive from 1, got " + std::to_string(t.index));
    if (t.head < 0 || t.head > n)
      throw FormatError(where + ": head " + std::to_string(t.head) + " of token " + std::to_string(t.index) +
                        " is out of range");
    if (t.head == t.index) throw FormatError(where + ": token " + std::to_string(t.index) + " heads itself");
  }

  std::vector<int> new_index(static_cast<std::size_t>(n) + 1, 0);
  int kept = 0;
  for (const auto& t : block.tokens)
    if (t.upos != "PUNCT") new_index[static_cast<std::size_t>(t.index)] = ++kept;

  AnnotatedSentence s{block.id, block.text, {}};
  for (const auto& t : block.tokens) {
    if (t.upos == "PUNCT") continue;
    Token out = t;
    int head = t.head;
    for (int steps = 0; head != 0 && block.tokens[static_cast<std::size_t>(head - 1)].upos == "PUNCT"; ++steps) {
      if (steps > n) throw FormatError(where + ": head cycle through punctuation");
      head = block.tokens[static_cast<std::size_t>(head - 1)].head;
    }
    out.index = new_index[static_cast<std::size_t>(t.index)];
    out.head = head == 0 ? 0 : new_index[static_cast<std::size_t>(head)];
    s.tokens.push_back(std::move(out));
  }

  int roots = 0;
  for (const auto& t : s.tokens) roots += t.head == 0;
  if (roots != 1)
    throw FormatError(where + ": expected exactly one root after punctuation removal, found " +
                      std::to_string(roots));
  for (const auto& t : s.tokens) {
    int cur = t.index;
    for (int steps = 0; cur != 0; ++steps) {
      if (steps > kept) throw FormatError(where + ": head cycle through token " + std::to_string(t.index));
      cur = s.token(cur).head;
    }
  }
  return s;
}

}  // namespace conllu_detail

/// Reads extended CoNLL-U: ten tab-separated columns per token, NER carried
/// in MISC as "NER=<tag>". Multiword ranges and empty nodes are skipped.
/// Sentence ids come from "# sent_id = ..." or default to the 1-based block
/// number. Punctuation tokens are removed before the sentence is returned.
inline std::vector<AnnotatedSentence> read_conllu(std::istream& in) {
  using conllu_detail::RawBlock;
  std::vector<AnnotatedSentence> sentences;
  RawBlock block;
  bool open = false;
  std::size_t line_no = 0;

  auto flush = [&] {
    if (!open) return;
    if (block.id.empty()) block.id = std::to_string(sentences.size() + 1);
    if (block.tokens.empty())
      throw FormatError("sentence '" + block.id + "' (line " + std::to_string(block.first_line) + ") has no tokens");
    if (block.text.empty()) {
      for (const auto& t : block.tokens) block.text += (block.text.empty() ? "" : " ") + t.form;
    }
    sentences.push_back(conllu_detail::finish(std::move(block)));
    block = RawBlock{};
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
      block.first_line = line_no;
    }
    if (line.front() == '#') {
      const std::string body = trim(std::string_view(line).substr(1));
      if (body.rfind("sent_id", 0) == 0 && body.find('=') != std::string::npos)
        block.id = trim(std::string_view(body).substr(body.find('=') + 1));
      else if (body.rfind("text", 0) == 0 && body.find('=') != std::string::npos)
        block.text = trim(std::string_view(body).substr(body.find('=') + 1));
      continue;
    }
    const auto cols = split(line, '\t');
    if (cols.size() != 10)
      throw FormatError("expected 10 tab-separated columns, found " + std::to_string(cols.size()) + " on line " +
                        std::to_string(line_no));
    if (cols[0].find_first_of("-.") != std::string::npos) continue;

    Token t;
    t.index = conllu_detail::parse_int(cols[0], "token id", line_no);
    t.form = cols[1];
    t.lemma = cols[2] == "_" || cols[2].empty() ? cols[1] : cols[2];
    t.upos = cols[3];
    t.head = conllu_detail::parse_int(cols[6], "head", line_no);
    t.deprel = cols[7];
    t.ner = conllu_detail::ner_from_misc(cols[9]);
    block.tokens.push_back(std::move(t));
  }
  flush();
  return sentences;
}

inline std::vector<AnnotatedSentence> read_conllu_string(std::string_view text) {
  std::istringstream in{std::string(text)};
  return read_conllu(in);
}

inline void write_conllu(std::ostream& out, const std::vector<AnnotatedSentence>& sentences) {
  for (const auto& s : sentences) {
    out << "# sent_id = " << s.id << '\n' << "# text = " << s.text << '\n';
    for (const auto& t : s.tokens) {
      out << t.index << '\t' << t.form << '\t' << t.lemma << '\t' << t.upos << "\t_\t_\t" << t.head << '\t'
          << t.deprel << "\t_\t" << (t.ner == "O" ? std::string("_") : "NER=" + t.ner) << '\n';
    }
    out << '\n';
  }
}

}  // namespace indoamr
