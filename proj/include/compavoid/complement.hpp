#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "compavoid/word.hpp"

namespace compavoid {

/// Words x such that both x and its complement are factors.
struct ComplementedSet {
  WordSet members;
  std::map<std::size_t, std::size_t> by_length;

  std::size_t count() const { return members.size(); }
  std::size_t max_length() const { return by_length.empty() ? 0 : by_length.rbegin()->first; }
};

/// Complemented factors of length 1..max_len. The scan stops at the first
/// length without a pair: the set is factor-closed.
ComplementedSet complemented_factors(const Word& w, std::size_t max_len);
ComplementedSet complemented_factors(const Word& w);

/// Same, over the union of the factor sets of several words.
ComplementedSet complemented_factors(const std::vector<Word>& words);

/// True iff no length-ell factor x has its complement as a factor (and hence
/// no pair of any length >= ell exists).
bool cal_ok(const Word& w, std::size_t ell);

std::size_t can_count(const Word& w);

/// Incremental CAL_ell check with append/retract.
class CalStream {
 public:
  explicit CalStream(std::size_t ell);

  bool append(int symbol);
  void retract();
  bool ok() const { return !first_violation_; }
  std::size_t size() const { return text_.size(); }

 private:
  std::uint64_t window_key() const;

  std::size_t ell_;
  std::string text_;
  std::unordered_map<std::uint64_t, std::uint32_t> windows_;
  std::size_t first_violation_ = 0;  // depth, 0 = none
};

/// Incremental complemented-factor counter with append/retract.
///
/// The factors that are new after an append are exactly the suffixes longer
/// than the longest suffix that already occurred; each new factor whose
/// complement is present adds two complemented words.
class CanStream {
 public:
  /// limit: the largest allowed count; ok() turns false once it is exceeded.
  explicit CanStream(std::size_t limit = SIZE_MAX);

  bool append(int symbol);
  void retract();
  bool ok() const { return count_ <= limit_; }
  std::size_t count() const { return count_; }
  std::size_t size() const { return text_.size(); }

 private:
  std::size_t limit_;
  std::string text_;
  std::size_t count_ = 0;
  std::vector<std::size_t> deltas_;
};

}  // namespace compavoid
