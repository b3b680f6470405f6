#include "compavoid/catalog.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "compavoid/analysis.hpp"

namespace compavoid::catalog {

const std::vector<Entry>& entries() {
  static const std::vector<Entry> table = {
      {"mu", {"01", "10"}, "Thue-Morse morphism"},
      {"fib", {"01", "0"}, "Fibonacci morphism"},
      {"phi", {"01", "21", "0"}, "fixed point p = 0121021010210121..."},
      {"psi", {"011001", "0", "01101"}, "psi(p) has critical exponent 2.48086..., CAL 11"},
      {"xi", {"01", "0110", "1"}, "xi(p) has critical exponent 5/2, CAL 8"},
      {"rho", {"01100101101", "0110010", "011001"}, "rho(p) is 5/2+-free, CAL 8, 40 complemented factors"},
      {"h", {"0", "01"}, "h(f) is the 11/3-free CAL 4 word"},
      {"h17",
       {"01000101000101001", "01000101000100100", "01000101000100010"},
       "17-uniform, squarefree images are 3+-free, CAL 5"},
      {"h36",
       {"001001010011001010010011001001010011", "001001010010011001010011001010010011",
        "001001010010011001001010011001010011"},
       "36-uniform, squarefree images are 8/3+-free, CAL 7"},
      {"h69",
       {"001001100101101001100101100100110100110010110100110010011010011001011",
        "001001100101101001100100110100110010110100110010110010011010011001011",
        "001001100101101001100100110100110010110010011010011001011010011001011"},
       "69-uniform, squarefree images are 7/3+-free, CAL 13"},
      {"h31a",
       {"0010001001001000100100100010010", "0010001001001000100100100010001",
        "0010001001001000100100010010010"},
       "31-uniform, squarefree images are 11/3+-free with complemented factors 0, 1, 01, 10"},
      {"h84",
       {"100101100100110010100101100101001011001001100101100101001011001001100101100100110010",
        "100101100100110010100101100101001011001001100101100101001011001001100101001011001001",
        "100101100100110010100101100101001011001001100101100100110010100101100100110010110010"},
       "84-uniform, squarefree images are 29/11+-free, CAL 8, 36 complemented factors"},
      {"h31b",
       {"0010100110010011001010011001011", "0010100101100101001100101001011",
        "0010011001011001010010110010011"},
       "31-uniform, squarefree images are 5/2+-free, CAL 9, 40 complemented factors"},
      {"id2", {"0", "1"}, "identity on {0,1}"},
      {"id3", {"0", "1", "2"}, "identity on {0,1,2}"},
  };
  return table;
}

namespace {

const Entry* find_entry(std::string_view name) {
  if (name == "h1") name = "h17";
  for (const auto& e : entries())
    if (e.name == name) return &e;
  return nullptr;
}

std::vector<unsigned> parse_directive(std::string_view spec) {
  std::vector<unsigned> out;
  while (!spec.empty()) {
    auto comma = spec.find(',');
    auto tok = spec.substr(0, comma);
    unsigned v = 0;
    auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || ptr != tok.data() + tok.size())
      throw std::invalid_argument("bad continued fraction: " + std::string(spec));
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    spec.remove_prefix(comma + 1);
  }
  return out;
}

}  // namespace

bool has_morphism(std::string_view name) { return find_entry(name) != nullptr; }

Morphism morphism(std::string_view name) {
  const Entry* e = find_entry(name);
  if (!e) throw std::invalid_argument("unknown morphism: " + std::string(name));
  std::vector<Word> images;
  int largest = 1;
  for (auto img : e->images)
    for (char c : img) largest = std::max(largest, c - '0');
  for (auto img : e->images) images.emplace_back(img, largest + 1);
  return Morphism(std::move(images), largest + 1);
}

Morphism load_morphism(std::string_view name_or_path) {
  if (has_morphism(name_or_path)) return morphism(name_or_path);
  std::ifstream in{std::string(name_or_path)};
  if (!in) throw std::invalid_argument("no catalog morphism or readable file named " + std::string(name_or_path));
  std::stringstream buf;
  buf << in.rdbuf();
  return Morphism::parse(buf.str());
}

Word word_prefix(std::string_view name, std::size_t n) {
  if (name == "f") return morphism("fib").fixed_point_prefix(0, n);
  if (name == "p") return morphism("phi").fixed_point_prefix(0, n);
  if (name == "tm") return morphism("mu").fixed_point_prefix(0, n);
  if (name.starts_with("sturmian:")) return sturmian_prefix(parse_directive(name.substr(9)), n);
  if (auto pos = name.find("-of-"); pos != std::string_view::npos) {
    Morphism outer = morphism(name.substr(0, pos));
    // Non-erasing: n source symbols give at least n target symbols.
    Word inner = word_prefix(name.substr(pos + 4), n);
    Word image = outer.apply(inner);
    return image.prefix(n);
  }
  throw std::invalid_argument("unknown word: " + std::string(name));
}

}  // namespace compavoid::catalog
