#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <vector>

#include "affina/error.hpp"
#include "affina/object.hpp"
#include "affina/symbol.hpp"

// Text format for objects:
//   word  ::= '_' | atom+
//   tree  ::= '_' | atom | '(' tree '.' tree ')'
//   atom  ::= letter | 'x' digits | 'y'
// `x<digits>` is a polynomial variable and `y` is the hole of a context; both
// are only accepted when the caller enables them.

namespace affina {

struct ParseOptions {
  bool allow_variables = false;
  bool allow_hole = false;
};

namespace detail {

class TermParser {
 public:
  TermParser(std::string_view text, const Alphabet& alphabet, ParseOptions options)
      : text_(text), alphabet_(alphabet), options_(options) {}

  Object parse(Mode mode) {
    if (text_.empty()) throw ParseError("empty term (use '_' for the empty object)", 0);
    Object result = mode == Mode::word ? parse_word() : parse_tree();
    if (pos_ != text_.size()) throw ParseError(std::string("unexpected '") + text_[pos_] + "'", pos_);
    return result;
  }

 private:
  bool at_end() const { return pos_ >= text_.size(); }
  char peek() const { return at_end() ? '\0' : text_[pos_]; }

  Symbol parse_atom() {
    const std::size_t start = pos_;
    char c = peek();
    if (c == 'x' && pos_ + 1 < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_ + 1]))) {
      if (!options_.allow_variables) throw ParseError("variables are not allowed here", start);
      ++pos_;
      unsigned index = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) {
        index = index * 10 + static_cast<unsigned>(peek() - '0');
        if (index > 100000) throw ParseError("variable index too large", start);
        ++pos_;
      }
      if (index == 0) throw ParseError("variables are numbered from 1", start);
      return Symbol::variable(index);
    }
    if (c == 'y' && options_.allow_hole) {
      ++pos_;
      return Symbol::hole();
    }
    if (alphabet_.contains(c)) {
      ++pos_;
      return Symbol::letter(c);
    }
    if (at_end()) throw ParseError("unexpected end of term", start);
    throw ParseError(std::string("unknown letter '") + c + "'", start);
  }

  Object parse_word() {
    if (text_ == "_") {
      pos_ = 1;
      return Object::empty(Mode::word);
    }
    std::vector<Symbol> symbols;
    while (!at_end()) symbols.push_back(parse_atom());
    return Object::word(std::move(symbols));
  }

  Object parse_tree() {
    if (peek() == '_') {
      ++pos_;
      return Object::empty(Mode::tree);
    }
    if (peek() == '(') {
      ++pos_;
      Object l = parse_tree();
      expect('.');
      Object r = parse_tree();
      expect(')');
      return star(l, r);
    }
    return Object::atom(Mode::tree, parse_atom());
  }

  void expect(char c) {
    if (peek() != c) {
      if (at_end()) throw ParseError(std::string("expected '") + c + "' but reached end of term", pos_);
      throw ParseError(std::string("expected '") + c + "' but found '" + peek() + "'", pos_);
    }
    ++pos_;
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  ParseOptions options_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Object parse_object(std::string_view text, Mode mode, const Alphabet& alphabet, ParseOptions options = {}) {
  return detail::TermParser(text, alphabet, options).parse(mode);
}

inline std::string to_string(const Object& u) {
  if (u.mode() == Mode::word) {
    if (u.is_empty()) return "_";
    std::string out;
    for (Symbol s : u.symbols()) out += s.to_string();
    return out;
  }
  std::string out;
  auto emit = [&](auto&& self, const detail::TreePtr& t) -> void {
    if (!t) {
      out += '_';
    } else if (t->leaf) {
      out += t->symbol.to_string();
    } else {
      out += '(';
      self(self, t->left);
      out += '.';
      self(self, t->right);
      out += ')';
    }
  };
  emit(emit, u.tree());
  return out;
}

/// Length first, then the text form; the order used for every printed listing.
struct ShortLex {
  bool operator()(const Object& x, const Object& y) const {
    if (x.length() != y.length()) return x.length() < y.length();
    if (x.size() != y.size()) return x.size() < y.size();
    return to_string(x) < to_string(y);
  }
};

}  // namespace affina
