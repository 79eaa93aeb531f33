/*
 * Copyright 2026 The ksred Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "ksred/ltl.hpp"

#include <algorithm>
#include <cctype>
#include <optional>

#include "ksred/error.hpp"

namespace ksred {

namespace {

struct Token {
  enum class Kind { ident, symbol, end } kind;
  std::string text;
  std::size_t column;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < text.size()) {
    const char ch = text[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      ++i;
    } else if (std::isalnum(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_' || text[j] == '\'')) {
        ++j;
      }
      out.push_back({Token::Kind::ident, std::string(text.substr(i, j - i)), i + 1});
      i = j;
    } else if (text.substr(i, 2) == "->") {
      out.push_back({Token::Kind::symbol, "->", i + 1});
      i += 2;
    } else if (std::string_view("!&|()").find(ch) != std::string_view::npos) {
      out.push_back({Token::Kind::symbol, std::string(1, ch), i + 1});
      ++i;
    } else {
      throw ParseError("unexpected character '" + std::string(1, ch) + "' at column " + std::to_string(i + 1));
    }
  }
  out.push_back({Token::Kind::end, "", text.size() + 1});
  return out;
}

bool is_keyword(const std::string& s) {
  return s == "X" || s == "U" || s == "R" || s == "F" || s == "G" || s == "true" || s == "false";
}

}  // namespace

// Recursive descent straight into the postorder node list.
class LtlBuilder {
 public:
  explicit LtlBuilder(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  LtlFormula run() {
    implication();
    if (peek().kind != Token::Kind::end) fail("unexpected '" + peek().text + "'");
    return std::move(out_);
  }

 private:
  using Op = LtlFormula::Op;

  const Token& peek() const { return tokens_[pos_]; }
  bool accept(std::string_view s) {
    if (peek().text == s && peek().kind != Token::Kind::end) {
      ++pos_;
      return true;
    }
    return false;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " at column " + std::to_string(peek().column));
  }

  std::uint32_t emit(Op op, std::uint32_t lhs = 0, std::uint32_t rhs = 0, std::string atom = {}) {
    out_.nodes_.push_back({op, std::move(atom), lhs, rhs});
    return static_cast<std::uint32_t>(out_.nodes_.size() - 1);
  }
  std::uint32_t neg(std::uint32_t a) { return emit(Op::neg, a); }

  std::uint32_t implication() {
    const std::uint32_t lhs = disjunction();
    if (!accept("->")) return lhs;
    const std::uint32_t not_lhs = neg(lhs);
    const std::uint32_t rhs = implication();
    return emit(Op::disj, not_lhs, rhs);
  }
  std::uint32_t disjunction() {
    std::uint32_t lhs = conjunction();
    while (accept("|")) lhs = emit(Op::disj, lhs, conjunction());
    return lhs;
  }
  std::uint32_t conjunction() {
    std::uint32_t lhs = binary_temporal();
    while (accept("&")) lhs = emit(Op::conj, lhs, binary_temporal());
    return lhs;
  }
  std::uint32_t binary_temporal() {
    const std::uint32_t lhs = unary();
    if (accept("U")) {
      const std::uint32_t rhs = binary_temporal();
      return emit(Op::until, lhs, rhs);
    }
    if (accept("R")) {
      const std::uint32_t not_lhs = neg(lhs);
      const std::uint32_t not_rhs = neg(binary_temporal());
      return neg(emit(Op::until, not_lhs, not_rhs));
    }
    return lhs;
  }
  std::uint32_t unary() {
    if (accept("!")) return neg(unary());
    if (accept("X")) return emit(Op::next, unary());
    if (accept("F")) {
      const std::uint32_t t = emit(Op::tt);
      return emit(Op::until, t, unary());
    }
    if (accept("G")) {
      const std::uint32_t t = emit(Op::tt);
      const std::uint32_t inner = neg(unary());
      return neg(emit(Op::until, t, inner));
    }
    return primary();
  }
  std::uint32_t primary() {
    if (accept("(")) {
      const std::uint32_t inner = implication();
      if (!accept(")")) fail("expected ')'");
      return inner;
    }
    if (accept("true")) return emit(Op::tt);
    if (accept("false")) return neg(emit(Op::tt));
    const Token& t = peek();
    if (t.kind == Token::Kind::ident && !is_keyword(t.text)) {
      ++pos_;
      return emit(Op::atom, 0, 0, t.text);
    }
    fail(t.kind == Token::Kind::end ? "unexpected end of formula" : "unexpected '" + t.text + "'");
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  LtlFormula out_;
};

LtlFormula LtlFormula::parse(std::string_view text) { return LtlBuilder(lex(text)).run(); }

bool LtlFormula::uses_next() const {
  return std::any_of(nodes_.begin(), nodes_.end(), [](const Node& n) { return n.op == Op::next; });
}

std::string LtlFormula::to_string() const {
  std::vector<std::string> text(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Node& n = nodes_[i];
    switch (n.op) {
      case Op::tt: text[i] = "true"; break;
      case Op::atom: text[i] = n.atom; break;
      case Op::neg: text[i] = "!" + text[n.lhs]; break;
      case Op::next: text[i] = "X " + text[n.lhs]; break;
      case Op::conj: text[i] = "(" + text[n.lhs] + " & " + text[n.rhs] + ")"; break;
      case Op::disj: text[i] = "(" + text[n.lhs] + " | " + text[n.rhs] + ")"; break;
      case Op::until: text[i] = "(" + text[n.lhs] + " U " + text[n.rhs] + ")"; break;
    }
  }
  return text.back();
}

bool ltl_eval_lasso(const LtlFormula& f, const TraceWord& w) {
  if (w.loop.empty()) throw InvalidArgument("word has an empty loop");
  using Op = LtlFormula::Op;
  const std::size_t n = w.size();
  const auto& nodes = f.nodes();
  std::vector<std::vector<bool>> val(nodes.size(), std::vector<bool>(n, false));
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const auto& node = nodes[k];
    auto& out = val[k];
    for (std::size_t i = 0; i < n; ++i) {
      switch (node.op) {
        case Op::tt: out[i] = true; break;
        case Op::atom: {
          const Label& l = w.at(i);
          out[i] = std::binary_search(l.begin(), l.end(), node.atom);
          break;
        }
        case Op::neg: out[i] = !val[node.lhs][i]; break;
        case Op::conj: out[i] = val[node.lhs][i] && val[node.rhs][i]; break;
        case Op::disj: out[i] = val[node.lhs][i] || val[node.rhs][i]; break;
        case Op::next: out[i] = val[node.lhs][w.next(i)]; break;
        case Op::until: break;
      }
    }
    if (node.op != Op::until) continue;
    // Least fixpoint of out = rhs | (lhs & X out); backward sweeps converge
    // within two passes over the loop.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i = n; i-- > 0;) {
        const bool v = val[node.rhs][i] || (val[node.lhs][i] && out[w.next(i)]);
        if (v != out[i]) {
          out[i] = v;
          changed = true;
        }
      }
    }
  }
  return val.back()[0];
}

}  // namespace ksred
