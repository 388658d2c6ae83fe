#pragma once

// Propositional formulas over named predicates, used to state claims as
// data. Grammar, loosest binding first:
//
//   formula := impl ('<->' impl)*
//   impl    := or ('->' impl)?        right associative
//   or      := and ('|' and)*
//   and     := unary ('&' unary)*
//   unary   := '!' unary | '(' formula ')' | 'true' | name
//   name    := [A-Za-z0-9_.]+

#include <cctype>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "closure/error.hpp"

namespace closure {

class Formula {
 public:
  /// resolve maps a predicate name to an id ≥ 0, or returns a negative
  /// value for names it does not know.
  static Formula parse(std::string_view text, const std::function<int(std::string_view)>& resolve) {
    Formula f;
    f.text_ = std::string(text);
    Parser p{text, 0, resolve, f.nodes_};
    f.root_ = p.formula();
    p.skip_space();
    if (p.pos != text.size()) p.fail("unexpected trailing input");
    return f;
  }

  /// atom(id) returns the truth value of predicate id.
  template <typename Atom>
  bool evaluate(Atom&& atom) const {
    return eval(root_, atom);
  }

  const std::string& text() const { return text_; }

  /// Predicate ids mentioned anywhere in the formula.
  std::vector<int> atoms() const {
    std::vector<int> out;
    for (const auto& node : nodes_) {
      if (node.op == Op::Atom) out.push_back(node.atom);
    }
    return out;
  }

 private:
  enum class Op : std::uint8_t { True, Atom, Not, And, Or, Implies, Iff };

  struct Node {
    Op op;
    int atom = -1;
    int left = -1;
    int right = -1;
  };

  struct Parser {
    std::string_view text;
    std::size_t pos;
    const std::function<int(std::string_view)>& resolve;
    std::vector<Node>& nodes;

    [[noreturn]] void fail(const std::string& why) const {
      throw Error(ErrorKind::SyntaxError,
                  "formula '" + std::string(text) + "' at offset " + std::to_string(pos) + ": " + why);
    }

    void skip_space() {
      while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    bool accept(std::string_view token) {
      skip_space();
      if (text.substr(pos, token.size()) == token) {
        pos += token.size();
        return true;
      }
      return false;
    }

    int add(Node n) {
      nodes.push_back(n);
      return static_cast<int>(nodes.size()) - 1;
    }

    int formula() {
      int left = implication();
      while (accept("<->")) left = add({Op::Iff, -1, left, implication()});
      return left;
    }

    int implication() {
      int left = disjunction();
      if (accept("->")) return add({Op::Implies, -1, left, implication()});
      return left;
    }

    int disjunction() {
      int left = conjunction();
      while (accept("|")) left = add({Op::Or, -1, left, conjunction()});
      return left;
    }

    int conjunction() {
      int left = unary();
      while (accept("&")) left = add({Op::And, -1, left, unary()});
      return left;
    }

    int unary() {
      if (accept("!")) return add({Op::Not, -1, unary(), -1});
      if (accept("(")) {
        int inner = formula();
        if (!accept(")")) fail("expected ')'");
        return inner;
      }
      skip_space();
      const std::size_t start = pos;
      while (pos < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_' || text[pos] == '.')) {
        ++pos;
      }
      if (start == pos) fail("expected a predicate name");
      const auto name = text.substr(start, pos - start);
      if (name == "true") return add({Op::True});
      const int id = resolve(name);
      if (id < 0) fail("unknown predicate '" + std::string(name) + "'");
      return add({Op::Atom, id});
    }
  };

  template <typename Atom>
  bool eval(int i, Atom& atom) const {
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    switch (n.op) {
      case Op::True: return true;
      case Op::Atom: return atom(n.atom);
      case Op::Not: return !eval(n.left, atom);
      case Op::And: return eval(n.left, atom) && eval(n.right, atom);
      case Op::Or: return eval(n.left, atom) || eval(n.right, atom);
      case Op::Implies: return !eval(n.left, atom) || eval(n.right, atom);
      case Op::Iff: return eval(n.left, atom) == eval(n.right, atom);
    }
    return false;
  }

  std::string text_;
  std::vector<Node> nodes_;
  int root_ = -1;
};

}  // namespace closure
