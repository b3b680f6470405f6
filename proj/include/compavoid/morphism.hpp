#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "compavoid/word.hpp"

namespace compavoid {

/// Non-erasing morphism from words over a source alphabet to words over a
/// target alphabet, given by one image per source symbol.
class Morphism {
 public:
  Morphism(std::vector<Word> images, int target_alphabet_size = 0);

  /// Parses the "symbol -> image" line format; blank lines and lines starting
  /// with '#' are skipped.
  static Morphism parse(std::string_view text);
  std::string serialize() const;

  int source_alphabet_size() const { return static_cast<int>(images_.size()); }
  int target_alphabet_size() const { return target_alphabet_; }
  const Word& image(int symbol) const;
  const std::vector<Word>& images() const { return images_; }

  Word apply(const Word& w) const;
  Word operator()(const Word& w) const { return apply(w); }

  /// Length-n prefix of the fixed point starting with `seed`.
  Word fixed_point_prefix(int seed, std::size_t n) const;

  /// n-fold iterate applied to w.
  Word power(const Word& w, unsigned n) const;

  std::optional<std::size_t> uniform_length() const;
  bool is_synchronizing() const;
  bool is_primitive() const;

  /// entry[i][j] = occurrences of symbol i in the image of symbol j.
  std::vector<std::vector<std::uint64_t>> incidence_matrix() const;

  friend bool operator==(const Morphism&, const Morphism&) = default;

 private:
  std::vector<Word> images_;
  int target_alphabet_ = 2;
};

inline Word apply(const Morphism& m, const Word& w) { return m.apply(w); }
inline std::optional<std::size_t> is_uniform(const Morphism& m) { return m.uniform_length(); }
inline bool is_synchronizing(const Morphism& m) { return m.is_synchronizing(); }
inline bool is_primitive(const Morphism& m) { return m.is_primitive(); }
inline Word fixed_point_prefix(const Morphism& m, int seed, std::size_t n) {
  return m.fixed_point_prefix(seed, n);
}

/// Occurrence count per alphabet symbol.
std::vector<std::uint64_t> parikh_vector(const Word& w);

/// incidence_matrix(m) * v.
std::vector<std::uint64_t> parikh_image(const Morphism& m, const std::vector<std::uint64_t>& v);

/// Total image length of a word with Parikh vector v.
std::uint64_t image_length(const Morphism& m, const std::vector<std::uint64_t>& v);

}  // namespace compavoid
