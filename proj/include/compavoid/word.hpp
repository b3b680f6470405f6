#pragma once

#include <compare>
#include <cstddef>
#include <functional>
#include <iosfwd>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "compavoid/rational.hpp"

namespace compavoid {

/// Finite word over the ordered alphabet {0, ..., k-1}, k <= 3.
///
/// Symbols are held one byte each as the ASCII digits '0'..'2', so the
/// serialized form and the storage coincide. The alphabet size is part of the
/// value: the binary word 01 and the ternary word 01 compare unequal.
class Word {
 public:
  static constexpr int kMaxAlphabet = 3;

  Word() = default;

  /// Parses an ASCII string over {0,1,2}. With alphabet_size == 0 the size is
  /// inferred as max(2, largest symbol + 1).
  explicit Word(std::string_view ascii, int alphabet_size = 0);

  static Word binary(std::string_view ascii) { return Word(ascii, 2); }
  static Word ternary(std::string_view ascii) { return Word(ascii, 3); }

  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  int alphabet_size() const { return alphabet_; }

  /// Symbol index at position i (0-based).
  int operator[](std::size_t i) const { return data_[i] - '0'; }

  /// ASCII view, e.g. "0110".
  std::string_view str() const { return data_; }

  Word substr(std::size_t pos, std::size_t len) const;
  Word prefix(std::size_t len) const { return substr(0, len); }
  Word suffix(std::size_t len) const { return substr(size() - len, len); }

  void push_back(int symbol);
  void pop_back() { data_.pop_back(); }
  Word& operator+=(const Word& other);

  bool contains(const Word& factor) const { return data_.find(factor.data_) != std::string::npos; }

  friend Word operator+(Word a, const Word& b) { return a += b; }
  friend bool operator==(const Word&, const Word&) = default;
  /// Shorter words first, then lexicographic.
  friend std::strong_ordering operator<=>(const Word& a, const Word& b);

 private:
  std::string data_;
  int alphabet_ = 2;
};

using WordSet = std::set<Word>;

std::ostream& operator<<(std::ostream& os, const Word& w);

/// 0 <-> 1 exchange. Binary words only.
Word complement(const Word& w);
Word reverse(const Word& w);

/// Border (failure) table: border[i] is the length of the longest proper
/// border of w[0..i].
std::vector<std::size_t> border_table(std::string_view w);

/// Least p >= 1 with w[i] = w[i+p] wherever defined; O(n) via the border table.
std::size_t smallest_period(const Word& w);
ExponentValue exponent(const Word& w);

/// Distinct length-n factors.
WordSet factors(const Word& w, std::size_t n);

struct CriticalExponent {
  ExponentValue value;
  Word witness;
  std::size_t position = 0;
};

/// Maximum factor exponent with a witness; ties go to the shortest factor,
/// then the leftmost occurrence. O(n^2).
CriticalExponent critical_exponent_finite(const Word& w);

}  // namespace compavoid

template <>
struct std::hash<compavoid::Word> {
  std::size_t operator()(const compavoid::Word& w) const noexcept {
    return std::hash<std::string_view>{}(w.str()) ^ static_cast<std::size_t>(w.alphabet_size());
  }
};
