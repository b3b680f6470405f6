#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "compavoid/morphism.hpp"
#include "compavoid/word.hpp"

namespace compavoid::catalog {

struct Entry {
  std::string_view name;
  std::vector<std::string_view> images;
  std::string_view note;
};

/// The named morphisms, images stored as text.
const std::vector<Entry>& entries();

Morphism morphism(std::string_view name);
bool has_morphism(std::string_view name);

/// Catalog name or path to a file in the "symbol -> image" format.
Morphism load_morphism(std::string_view name_or_path);

/// Length-n prefix of a named infinite word:
///   f, p, tm            Fibonacci, fixed point of phi, Thue-Morse
///   <morphism>-of-<word>  image of a named word, e.g. psi-of-p, h-of-f
///   sturmian:0,3,1      characteristic Sturmian word, last quotient repeating
Word word_prefix(std::string_view name, std::size_t n);

}  // namespace compavoid::catalog
