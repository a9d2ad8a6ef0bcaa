#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "affina/error.hpp"

namespace affina {

/// A symbol of the extended alphabet: a letter of the alphabet, a polynomial
/// variable x1, x2, ..., or the context hole y.
class Symbol {
 public:
  constexpr Symbol() = default;

  static constexpr Symbol letter(char c) { return Symbol(static_cast<unsigned char>(c)); }
  static constexpr Symbol variable(unsigned index) { return Symbol(-static_cast<std::int32_t>(index)); }
  static constexpr Symbol hole() { return Symbol(0); }

  constexpr bool is_letter() const { return code_ > 0; }
  constexpr bool is_variable() const { return code_ < 0; }
  constexpr bool is_hole() const { return code_ == 0; }

  constexpr char as_letter() const { return static_cast<char>(code_); }
  constexpr unsigned variable_index() const { return static_cast<unsigned>(-code_); }
  constexpr std::int32_t code() const { return code_; }

  std::string to_string() const {
    if (is_letter()) return std::string(1, as_letter());
    if (is_hole()) return "y";
    return "x" + std::to_string(variable_index());
  }

  constexpr auto operator<=>(const Symbol&) const = default;

 private:
  constexpr explicit Symbol(std::int32_t code) : code_(code) {}

  std::int32_t code_ = 0;
};

/// Ordered finite set of letters. The first two letters are the designated
/// `a` and `b` used by the word-mode curated set aⁿbabⁿ.
class Alphabet {
 public:
  Alphabet() = default;

  explicit Alphabet(std::string_view letters) {
    if (letters.empty()) throw PreconditionError("alphabet must be nonempty");
    for (char c : letters) {
      if (!(c >= 'a' && c <= 'z') && !(c >= 'A' && c <= 'Z') && !(c >= '0' && c <= '9'))
        throw PreconditionError(std::string("invalid letter '") + c + "' in alphabet");
      if (letters_.find(c) != std::string::npos)
        throw PreconditionError(std::string("duplicate letter '") + c + "' in alphabet");
      letters_.push_back(c);
    }
  }

  std::size_t size() const { return letters_.size(); }
  const std::string& letters() const { return letters_; }

  bool contains(char c) const { return letters_.find(c) != std::string::npos; }
  bool contains(Symbol s) const { return s.is_letter() && contains(s.as_letter()); }

  Symbol a() const { return Symbol::letter(letters_.at(0)); }
  Symbol b() const {
    if (letters_.size() < 2) throw PreconditionError("alphabet needs at least two letters");
    return Symbol::letter(letters_[1]);
  }

  std::vector<Symbol> symbols() const {
    std::vector<Symbol> out;
    out.reserve(letters_.size());
    for (char c : letters_) out.push_back(Symbol::letter(c));
    return out;
  }

  bool operator==(const Alphabet&) const = default;

 private:
  std::string letters_;
};

}  // namespace affina

template <>
struct std::hash<affina::Symbol> {
  std::size_t operator()(affina::Symbol s) const noexcept { return std::hash<std::int32_t>{}(s.code()); }
};
