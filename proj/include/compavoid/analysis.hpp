#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <algorithm>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "compavoid/morphism.hpp"
#include "compavoid/rational.hpp"
#include "compavoid/word.hpp"

namespace compavoid {

/// Raised when the analysed prefix is too short (or not recurrent enough) to
/// answer a query about the infinite word.
class InsufficientData : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct IndexOptions {
  /// Overrides the default reliable length |prefix| / 20.
  std::optional<std::size_t> reliable_length;
  /// When set, queries at length n also need every length-(n+2) factor of the
  /// first half of the prefix to recur in the second half.
  bool check_recurrence = true;
};

/// Suffix array + LCP index over a finite prefix of an infinite word.
/// Immutable after construction; safe to share between threads.
class FactorIndex {
 public:
  explicit FactorIndex(Word prefix, IndexOptions options = {});

  const Word& prefix() const { return prefix_; }
  std::size_t size() const { return prefix_.size(); }
  /// L_max: longest factor length the index answers questions about.
  std::size_t reliable_length() const { return reliable_; }
  /// Largest m <= L_max + 2 at which the recurrence check holds (SIZE_MAX if
  /// the check is disabled).
  std::size_t recurrent_length() const { return recurrent_; }

  /// Throws std::out_of_range past L_max, InsufficientData if n + 2 exceeds
  /// the recurrent length.
  void require(std::size_t n) const;

  bool contains(const Word& w) const;
  /// Sorted start positions of w in the prefix.
  std::vector<std::size_t> occurrences(const Word& w) const;
  /// Bit a is set when aw (resp. wa) occurs in the prefix.
  unsigned left_extensions(const Word& w) const;
  unsigned right_extensions(const Word& w) const;

  const std::vector<std::int32_t>& suffix_array() const { return sa_; }
  /// lcp()[i] = longest common prefix of suffixes sa[i-1] and sa[i]; lcp()[0] = 0.
  const std::vector<std::int32_t>& lcp() const { return lcp_; }

  /// Calls f(lo, hi) for each maximal suffix-array range [lo, hi) whose
  /// suffixes share a length-n prefix (one range per distinct factor).
  template <class F>
  void for_each_factor_group(std::size_t n, F&& f) const;

  /// Bitmask of the symbols preceding suffixes sa[lo..hi).
  unsigned left_mask(std::size_t lo, std::size_t hi) const;

 private:
  std::pair<std::size_t, std::size_t> range_of(std::string_view w) const;
  bool recurrent_at(std::size_t m) const;

  Word prefix_;
  std::size_t reliable_ = 0;
  std::size_t recurrent_ = 0;
  std::vector<std::int32_t> sa_;
  std::vector<std::int32_t> lcp_;
  // left_count_[c * (N + 1) + i]: suffixes among sa[0..i) preceded by c.
  std::vector<std::uint32_t> left_count_;
};

template <class F>
void FactorIndex::for_each_factor_group(std::size_t n, F&& f) const {
  // Suffixes shorter than n may sit between groups but never inside one.
  const std::size_t N = sa_.size();
  std::size_t start = N, last = N;
  std::int64_t run_min = 0;
  for (std::size_t i = 0; i < N; ++i) {
    if (i > 0) run_min = std::min<std::int64_t>(run_min, lcp_[i]);
    if (N - static_cast<std::size_t>(sa_[i]) < n) continue;
    if (start != N && run_min < static_cast<std::int64_t>(n)) {
      f(start, last + 1);
      start = N;
    }
    if (start == N) start = i;
    last = i;
    run_min = std::numeric_limits<std::int64_t>::max();
  }
  if (start != N) f(start, last + 1);
}

std::size_t factor_complexity(const FactorIndex& index, std::size_t n);
/// Convenience overload building a default index over the prefix.
std::size_t factor_complexity(const Word& prefix, std::size_t n);

struct SpecialFactors {
  std::vector<Word> left;
  std::vector<Word> right;
  std::vector<Word> bispecial;
};

/// Left/right special and bispecial factors of length n, sorted.
SpecialFactors special_factors(const FactorIndex& index, std::size_t n);

/// Return words to w observed in the prefix: the factors between consecutive
/// occurrences. Throws InsufficientData if w occurs fewer than twice.
WordSet return_words(const FactorIndex& index, const Word& w);
/// Shortest return word; ties go to the lexicographically least.
Word shortest_return_word(const FactorIndex& index, const Word& w);

/// Sorted list of symbols set in an extension mask.
std::vector<int> mask_symbols(unsigned mask);

struct BispecialRecord {
  Word factor;
  std::vector<int> left_extensions;
  std::vector<int> right_extensions;
  Word shortest_return;
  Rational ratio;  // |factor| / |shortest_return|
};

/// Every nonempty bispecial factor of length <= max_len, sorted by length and
/// then lexicographically.
std::vector<BispecialRecord> bispecial_survey(const FactorIndex& index, std::size_t max_len,
                                              unsigned threads = 1);

struct CriticalExponentEstimate {
  Rational lower_bound;  // 1 + max ratio
  BispecialRecord record;
};

/// 1 + the largest |w| / |r| over the survey; a lower bound on the critical
/// exponent of the infinite word. Throws InsufficientData on an empty survey.
CriticalExponentEstimate critical_exponent_estimate(const FactorIndex& index, std::size_t max_len,
                                                    unsigned threads = 1);

struct RecurrenceCheck {
  std::string name;
  std::vector<std::int64_t> initial;        // first three values
  std::vector<std::int64_t> coefficients{2, -1, 1};
  std::size_t verified_upto = 0;            // relation checked for n + 1 <= this
  bool ok = false;
  std::optional<std::size_t> failed_index;  // first n + 1 where it breaks
};

/// Checks v[n+1] = 2 v[n] - v[n-1] + v[n-2] over the supplied values (>= 4).
RecurrenceCheck recurrence_verify(const std::vector<std::int64_t>& values, std::string name);

/// |outer(base^n(seed))| for n = 0..count-1, through Parikh vectors.
std::vector<std::int64_t> image_length_sequence(const Morphism& outer, const Morphism& base, const Word& seed,
                                                std::size_t count);

struct PolynomialRoot {
  long double value = 0;
  long double lo = 0;  // certified enclosure
  long double hi = 0;
};

/// Unique real root > 1 of the polynomial with the given coefficients
/// (highest degree first). Throws std::domain_error if none is bracketed.
PolynomialRoot characteristic_root(const std::vector<std::int64_t>& coeffs);

/// Characteristic Sturmian word for the continued fraction [0; d1, d2, ...]
/// (leading 0 included, last quotient repeated), built from standard words
/// s_{-1} = 1, s_0 = 0, s_1 = 0^{d1-1} 1, s_n = s_{n-1}^{d_n} s_{n-2}.
Word sturmian_prefix(const std::vector<unsigned>& directive, std::size_t n);

/// Bispecial factor families of the fixed point of 0 -> 01, 1 -> 21, 2 -> 0.
enum class PhiFamily { A, B, C, D };
Word phi_bispecial(PhiFamily family, unsigned n);

}  // namespace compavoid
