#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "compavoid/complement.hpp"
#include "compavoid/freeness.hpp"
#include "compavoid/morphism.hpp"
#include "compavoid/rational.hpp"
#include "compavoid/word.hpp"

namespace compavoid {

/// Length bound for the uniform-morphism transfer test:
///   t = max(2b / (b - a), 2 (q - 1)(2b - 1) / (q (b - 1))),  1 < a < b, q >= 1.
/// If h(w) is beta-free for every alpha-free w with |w| <= t, then h(z) is
/// beta-free for every alpha-free z (h synchronizing and q-uniform).
Rational lemma_t(const Rational& a, const Rational& b, std::int64_t q);

/// Calls visit(w) for every word over {0..k-1} of length 1..max_len passing the
/// threshold, in lexicographic (depth-first) order. Stops early when visit
/// returns false.
void for_each_free_word(int alphabet_size, const ExponentThreshold& t, std::size_t max_len,
                        const std::function<bool(const Word&)>& visit);

std::vector<Word> enumerate_free_words(int alphabet_size, const ExponentThreshold& t,
                                       std::size_t max_len);

struct TransferCertificate {
  std::string morphism_name;
  ExponentThreshold alpha;
  ExponentThreshold beta;
  std::size_t q = 0;
  Rational t;
  std::size_t checked_length = 0;  // ceil(t)
  std::uint64_t words_checked = 0;
  bool uniform = false;
  bool synchronizing = false;
  bool pass = false;
  std::string reason;
  std::optional<Word> failing_word;
  std::optional<Violation> failing_factor;
};

/// Checks the hypotheses and the finite condition of the transfer lemma.
/// extra_length checks that many lengths beyond ceil(t) as well.
TransferCertificate verify_transfer(const Morphism& m, const ExponentThreshold& alpha,
                                    const ExponentThreshold& beta, std::string name = {},
                                    std::size_t extra_length = 0);

/// Complement-side predicate evaluated on the images of all alpha-free source
/// words of one length.
struct SideCondition {
  std::optional<std::size_t> cal;             // no complementary pair of length >= cal
  std::optional<std::size_t> can_max;         // at most this many complemented words
  std::optional<std::size_t> can_exact;       // exactly this many
  std::optional<WordSet> complemented_exact;  // complemented set equals this
  std::vector<Word> forbidden;                // none of these as factors
};

struct SideConditionReport {
  bool pass = false;
  std::size_t source_words = 0;
  /// Complemented set of the union of all image factor sets: an upper bound
  /// for the image of any source word.
  ComplementedSet complemented;
  /// Fewest complemented words in a single image: a lower bound for any
  /// infinite source word.
  std::size_t min_per_image = 0;
  std::string reason;
  std::optional<Word> witness_source;
  std::optional<Word> witness_factor;
};

SideConditionReport verify_image_side_conditions(const Morphism& m, std::size_t source_len,
                                                 const SideCondition& condition,
                                                 const ExponentThreshold& source_threshold =
                                                     ExponentThreshold::strict(Rational(2)));

}  // namespace compavoid
