#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compavoid/rational.hpp"
#include "compavoid/word.hpp"

namespace compavoid {

/// Repetition bound. A word passes (v, strict) iff every nonempty factor has
/// exponent < v ("v-free"); it passes (v, inclusive) iff every nonempty factor
/// has exponent <= v ("v+-free").
struct ExponentThreshold {
  Rational value;
  bool inclusive = false;

  static ExponentThreshold strict(Rational v) { return {v, false}; }
  static ExponentThreshold plus(Rational v) { return {v, true}; }

  /// "7/3" is strict, "7/3+" inclusive.
  static ExponentThreshold parse(std::string_view text);
  std::string str() const;

  /// True when a factor of length `length` with period `period` breaks the bound.
  bool violated_by(std::uint64_t length, std::uint64_t period) const;
  /// Shortest length at which a factor of the given period breaks the bound.
  std::uint64_t min_violating_length(std::uint64_t period) const;

  /// t dominates u when every word passing u also passes t.
  bool dominates(const ExponentThreshold& other) const;

  friend bool operator==(const ExponentThreshold&, const ExponentThreshold&) = default;
};

struct Violation {
  Word factor;
  std::size_t position = 0;
  friend bool operator==(const Violation&, const Violation&) = default;
};

/// Empty optional means the word passes; otherwise the shortest, leftmost
/// violating factor.
using FreenessVerdict = std::optional<Violation>;

FreenessVerdict is_free(const Word& w, const ExponentThreshold& t);

/// Incremental freeness checker for backtracking.
///
/// For every period p the checker keeps the length of the longest suffix with
/// period p (stored as the run of positions i with w[i] = w[i-p]); an append
/// updates each run in O(1), so one append costs O(n). Any new violation is a
/// suffix, so only these runs need to be inspected.
class StreamChecker {
 public:
  explicit StreamChecker(ExponentThreshold t, int alphabet_size = 2);

  /// Appends a symbol and returns the verdict for the whole accumulated word.
  FreenessVerdict append(int symbol);
  /// Drops the last symbol, restoring the previous state exactly.
  void retract();

  bool ok() const { return !first_violation_.has_value(); }
  /// Verdict for the accumulated word (pass, or the first violation found).
  FreenessVerdict verdict() const;

  std::size_t size() const { return text_.size(); }
  std::string_view text() const { return text_; }
  const ExponentThreshold& threshold() const { return threshold_; }

 private:
  ExponentThreshold threshold_;
  int alphabet_;
  std::string text_;
  // Triangular table: for each prefix length n and period p < n, the count of
  // trailing positions i with text[i] == text[i-p].
  std::vector<std::uint32_t> runs_;
  std::optional<std::size_t> first_violation_;  // depth at which it appeared
  Violation violation_;
};

}  // namespace compavoid
