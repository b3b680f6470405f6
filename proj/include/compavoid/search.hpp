#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "compavoid/complement.hpp"
#include "compavoid/freeness.hpp"
#include "compavoid/word.hpp"

namespace compavoid {

/// Every factor of length <= `length` must occur inside one of `windows`
/// (all of the same length). For words at least `length` long this says every
/// length-`length` window is listed; shorter words must be factors of a
/// listed window, which keeps the predicate factor-closed and lets the search
/// prune before the first full window.
class AllowedWindows {
 public:
  AllowedWindows(std::size_t length, std::unordered_set<std::string> windows);

  std::size_t length() const { return data_->length; }
  const std::unordered_set<std::string>& windows() const { return data_->windows; }
  /// Checks the suffix of s of length min(|s|, length()).
  bool allows_suffix(std::string_view s) const;
  bool allows(std::string_view s) const;

 private:
  struct Data {
    std::size_t length;
    std::unordered_set<std::string> windows;
    std::unordered_set<std::string> shorter;  // factors of windows of length < `length`
  };
  std::shared_ptr<const Data> data_;
};

/// Conjunction of avoidance predicates on binary words.
struct ConstraintSet {
  std::optional<ExponentThreshold> freeness;
  std::optional<std::size_t> cal;
  std::optional<std::size_t> can;
  std::vector<Word> forbidden;
  /// For each u: u and its complement may not both occur.
  std::vector<Word> required_absent_pairs;
  std::optional<AllowedWindows> allowed;

  bool empty() const;
  /// True when complementing a passing word always gives a passing word.
  bool complement_invariant() const;
  std::string describe() const;
  /// Throws std::domain_error for non-binary words or bad lengths.
  void validate() const;
};

/// Batch check of a whole word.
bool satisfies(const Word& w, const ConstraintSet& c);

/// Incremental checker combining all constraints. try_append leaves the state
/// unchanged when the extended word fails, so the accumulated word always
/// passes.
class ConstraintChecker {
 public:
  explicit ConstraintChecker(const ConstraintSet& c);
  ~ConstraintChecker();
  ConstraintChecker(ConstraintChecker&&) noexcept;
  ConstraintChecker& operator=(ConstraintChecker&&) noexcept;

  bool try_append(int symbol);
  void retract();
  std::size_t size() const;
  std::string_view text() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct SearchOptions {
  unsigned threads = 1;
  /// Prefix depth at which the tree is split into work units.
  std::size_t split_depth = 12;
  std::size_t max_witnesses = 4096;
  /// Disable the complement symmetry reduction.
  bool no_symmetry = false;
};

struct SearchOutcome {
  enum class Kind { Exhausted, CapReached };
  Kind kind = Kind::Exhausted;
  std::size_t max_length = 0;       // Exhausted: longest passing length
  std::size_t cap = 0;              // CapReached: the cap
  std::vector<Word> witnesses;      // Exhausted: all longest words (sorted); CapReached: one sample
  bool witnesses_truncated = false;
  std::uint64_t nodes_visited = 0;
};

/// Depth-first search for the longest binary word satisfying c, up to cap.
SearchOutcome longest_word(const ConstraintSet& c, std::size_t cap, const SearchOptions& opt = {});

/// Number of words of exactly `length` satisfying c.
std::uint64_t count_words(const ConstraintSet& c, std::size_t length, const SearchOptions& opt = {});

/// counts[n] for n = 0..max_len.
std::vector<std::uint64_t> count_profile(const ConstraintSet& c, std::size_t max_len,
                                         const SearchOptions& opt = {});

/// All f with |f| = f_len such that some e, g with |e| = |g| = context_len
/// make efg satisfy c.
WordSet extendable_factors(const ConstraintSet& c, std::size_t f_len, std::size_t context_len,
                           const SearchOptions& opt = {});

struct ClosureOptions {
  bool complement = false;
  bool reversal = false;
};

struct FactorSetComparison {
  bool equal() const { return missing.empty() && extra.empty(); }
  std::size_t reference_size = 0;
  std::vector<Word> missing;  // in the reference, not in S
  std::vector<Word> extra;    // in S, not in the reference
};

/// Compares S with the length-n factors of the reference words, closed under
/// the requested symmetries.
FactorSetComparison compare_factor_sets(const WordSet& s, const std::vector<Word>& reference_prefixes,
                                        std::size_t length, ClosureOptions closure = {});

}  // namespace compavoid
