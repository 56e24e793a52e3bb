#pragma once

#include <cctype>
#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "indoamr/amr_graph.hpp"
#include "indoamr/error.hpp"

namespace indoamr {

namespace penman_detail {

enum class TokenKind { open, close, slash, symbol, quoted, end };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1, column = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n && i < text.size(); ++k, ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
  };
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    const std::size_t l = line, col = column;
    if (c == '(' || c == ')' || c == '/') {
      tokens.push_back({c == '(' ? TokenKind::open : c == ')' ? TokenKind::close : TokenKind::slash,
                        std::string(1, c), l, col});
      advance(1);
    } else if (c == '"') {
      std::size_t j = i + 1;
      while (j < text.size() && text[j] != '"') j += (text[j] == '\\' && j + 1 < text.size()) ? 2 : 1;
      if (j >= text.size()) throw ParseError("unterminated string constant", l, col);
      tokens.push_back({TokenKind::quoted, std::string(text.substr(i, j + 1 - i)), l, col});
      advance(j + 1 - i);
    } else {
      std::size_t j = i;
      while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j])) && text[j] != '(' &&
             text[j] != ')' && text[j] != '/' && text[j] != '"')
        ++j;
      tokens.push_back({TokenKind::symbol, std::string(text.substr(i, j - i)), l, col});
      advance(j - i);
    }
  }
  tokens.push_back({TokenKind::end, "", line, column});
  return tokens;
}

// Reference to a value that is a bare symbol: resolved after the whole
// expression is read, since re-entrant variables may be defined later.
struct PendingValue {
  std::size_t edge;
  std::string symbol;
  bool quoted;
};

class Reader {
 public:
  explicit Reader(std::string_view text) : tokens_(tokenize(text)) {}

  AmrGraph read() {
    if (peek().kind == TokenKind::end) throw error("empty PENMAN expression");
    const std::string root = read_node();
    if (peek().kind == TokenKind::close) throw error("unbalanced ')'");
    if (peek().kind != TokenKind::end) throw error("unexpected '" + peek().text + "' after the top node");
    resolve_values();
    return AmrGraph(std::move(nodes_), std::move(edges_), root);
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& next() { return tokens_[pos_ == tokens_.size() - 1 ? pos_ : pos_++]; }
  ParseError error(const std::string& what) const { return ParseError(what, peek().line, peek().column); }

  std::string read_node() {
    if (peek().kind != TokenKind::open) throw error("expected '('");
    const Token& open = next();
    if (peek().kind != TokenKind::symbol) throw error("expected variable after '('");
    const Token& var = next();
    if (!is_valid_variable(var.text))
      throw ParseError("invalid variable '" + var.text + "'", var.line, var.column);
    if (!defined_.insert(var.text).second)
      throw ParseError("duplicate variable definition '" + var.text + "'", var.line, var.column);
    if (peek().kind != TokenKind::slash) throw error("empty concept for variable '" + var.text + "'");
    next();
    if (peek().kind != TokenKind::symbol && peek().kind != TokenKind::quoted)
      throw error("empty concept for variable '" + var.text + "'");
    const Token& concept_token = next();
    if (!is_valid_concept(concept_token.text))
      throw ParseError("invalid concept '" + concept_token.text + "'", concept_token.line, concept_token.column);
    nodes_.push_back({var.text, concept_token.text});

    while (peek().kind != TokenKind::close) {
      if (peek().kind == TokenKind::end)
        throw ParseError("unbalanced '(': missing ')'", open.line, open.column);
      const Token& role = peek();
      if (role.kind != TokenKind::symbol || role.text.front() != ':')
        throw error("edge label missing leading colon: '" + role.text + "'");
      if (role.text.size() == 1) throw error("empty edge label");
      next();
      EdgeLabel label(role.text.substr(1));
      switch (peek().kind) {
        case TokenKind::open: {
          const std::size_t edge = edges_.size();
          edges_.push_back({var.text, {}, label});
          edges_[edge].target = read_node();
          break;
        }
        case TokenKind::symbol:
          if (peek().text.front() == ':') throw error("missing value for " + role.text);
          [[fallthrough]];
        case TokenKind::quoted:
          pending_.push_back({edges_.size(), peek().text, peek().kind == TokenKind::quoted});
          edges_.push_back({var.text, {}, label});
          next();
          break;
        default:
          throw error("missing value for " + role.text);
      }
    }
    next();
    return var.text;
  }

  // Bare symbols naming a defined variable become re-entrant edges; all other
  // constants become concept nodes with generated variables.
  void resolve_values() {
    std::size_t counter = 0;
    std::vector<AmrNode> constants;
    for (const auto& p : pending_) {
      if (!p.quoted && defined_.count(p.symbol)) {
        edges_[p.edge].target = p.symbol;
        continue;
      }
      std::string var;
      do var = "x" + std::to_string(++counter);
      while (defined_.count(var));
      defined_.insert(var);
      edges_[p.edge].target = var;
      constants.push_back({var, p.symbol});
    }
    nodes_.insert(nodes_.end(), constants.begin(), constants.end());
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::vector<AmrNode> nodes_;
  std::vector<AmrEdge> edges_;
  std::set<std::string> defined_;
  std::vector<PendingValue> pending_;
};

}  // namespace penman_detail

/// Reads one PENMAN expression (newlines allowed). Throws ParseError with the
/// source position on malformed text, FormatError on graph invariant
/// violations (e.g. a re-entrancy that closes a cycle).
inline AmrGraph parse_penman(std::string_view text) { return penman_detail::Reader(text).read(); }

enum class PenmanLayout { single_line, indented };

/// Writes the graph depth-first from the root. The single-line layout is the
/// canonical form; the indented layout is for display only.
inline std::string serialize_penman(const AmrGraph& g, PenmanLayout layout = PenmanLayout::single_line) {
  std::string out;
  std::set<std::string> emitted;
  auto write = [&](auto&& self, const std::string& var, std::size_t depth) -> void {
    emitted.insert(var);
    out += "(" + var + " / " + g.concept_of(var);
    for (const auto& e : g.edges()) {
      if (e.source != var) continue;
      if (layout == PenmanLayout::indented)
        out += "\n" + std::string(4 * (depth + 1), ' ');
      else
        out += ' ';
      out += e.label.penman() + ' ';
      if (emitted.count(e.target))
        out += e.target;
      else
        self(self, e.target, depth + 1);
    }
    out += ')';
  };
  write(write, g.root(), 0);
  return out;
}

}  // namespace indoamr
