#include "compavoid/morphism.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace compavoid {

Morphism::Morphism(std::vector<Word> images, int target_alphabet_size) {
  if (images.empty() || static_cast<int>(images.size()) > Word::kMaxAlphabet)
    throw std::domain_error("morphism needs 1..3 source symbols");
  int largest = 1;
  for (const auto& img : images) {
    if (img.empty()) throw std::domain_error("erasing morphisms are not supported");
    for (std::size_t i = 0; i < img.size(); ++i) largest = std::max(largest, img[i]);
  }
  target_alphabet_ = target_alphabet_size == 0 ? largest + 1 : target_alphabet_size;
  for (auto& img : images) images_.emplace_back(img.str(), target_alphabet_);
}

Morphism Morphism::parse(std::string_view text) {
  std::vector<std::optional<Word>> slots(Word::kMaxAlphabet);
  std::istringstream in{std::string(text)};
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    auto arrow = line.find("->");
    if (arrow == std::string::npos) throw std::invalid_argument("morphism line without '->': " + line);
    std::string lhs = line.substr(0, arrow);
    std::string rhs = line.substr(arrow + 2);
    auto trim = [](std::string& s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
    };
    trim(lhs);
    trim(rhs);
    if (lhs.size() != 1 || lhs[0] < '0' || lhs[0] >= '0' + Word::kMaxAlphabet)
      throw std::invalid_argument("bad source symbol in morphism line: " + line);
    int sym = lhs[0] - '0';
    if (slots[sym]) throw std::invalid_argument("duplicate image for symbol " + lhs);
    slots[sym] = Word(rhs, 3);
    ++count;
  }
  std::vector<Word> images;
  for (int s = 0; s < count; ++s) {
    if (!slots[s]) throw std::invalid_argument("morphism source symbols must be 0..k-1");
    images.push_back(*slots[s]);
  }
  return Morphism(std::move(images));
}

std::string Morphism::serialize() const {
  std::string out;
  for (int s = 0; s < source_alphabet_size(); ++s) {
    out += static_cast<char>('0' + s);
    out += " -> ";
    out += images_[s].str();
    out += '\n';
  }
  return out;
}

const Word& Morphism::image(int symbol) const {
  if (symbol < 0 || symbol >= source_alphabet_size()) throw std::domain_error("symbol outside morphism domain");
  return images_[symbol];
}

Word Morphism::apply(const Word& w) const {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) out += image(w[i]).str();
  return Word(out, target_alphabet_);
}

Word Morphism::fixed_point_prefix(int seed, std::size_t n) const {
  const Word& first = image(seed);
  if (first[0] != seed || first.size() < 2)
    throw std::domain_error("morphism is not prolongable on the seed symbol");
  if (source_alphabet_size() > target_alphabet_) throw std::domain_error("fixed point needs an endomorphism");
  Word w(std::string(1, static_cast<char>('0' + seed)), target_alphabet_);
  while (w.size() < n) {
    Word next = apply(w);
    w = next.size() > n ? next.prefix(n) : next;
  }
  return w.size() > n ? w.prefix(n) : w;
}

Word Morphism::power(const Word& w, unsigned n) const {
  Word out = w;
  for (unsigned i = 0; i < n; ++i) out = apply(out);
  return out;
}

std::optional<std::size_t> Morphism::uniform_length() const {
  std::size_t q = images_.front().size();
  for (const auto& img : images_)
    if (img.size() != q) return std::nullopt;
  return q;
}

bool Morphism::is_synchronizing() const {
  auto q = uniform_length();
  if (!q) throw std::domain_error("synchronization is defined for uniform morphisms");
  const int k = source_alphabet_size();
  for (int a = 0; a < k; ++a) {
    for (int b = 0; b < k; ++b) {
      std::string ab = std::string(images_[a].str()) + std::string(images_[b].str());
      for (int c = 0; c < k; ++c) {
        for (std::size_t off = 0; off <= *q; ++off) {
          if (std::string_view(ab).substr(off, *q) != images_[c].str()) continue;
          bool allowed = (off == 0 && a == c) || (off == *q && b == c);
          if (!allowed) return false;
        }
      }
    }
  }
  return true;
}

std::vector<std::vector<std::uint64_t>> Morphism::incidence_matrix() const {
  const int k = source_alphabet_size();
  std::vector<std::vector<std::uint64_t>> m(target_alphabet_, std::vector<std::uint64_t>(k, 0));
  for (int j = 0; j < k; ++j)
    for (std::size_t i = 0; i < images_[j].size(); ++i) ++m[images_[j][i]][j];
  return m;
}

bool Morphism::is_primitive() const {
  const int k = source_alphabet_size();
  if (k != target_alphabet_) throw std::domain_error("primitivity needs equal source and target alphabets");
  std::vector<std::vector<bool>> base(k, std::vector<bool>(k));
  auto inc = incidence_matrix();
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) base[i][j] = inc[i][j] > 0;
  auto power = base;
  // Wielandt: a primitive k x k matrix has a positive power with exponent at
  // most (k-1)^2 + 1.
  const int limit = (k - 1) * (k - 1) + 1;
  for (int e = 1; e <= limit; ++e) {
    bool positive = true;
    for (int i = 0; i < k && positive; ++i)
      for (int j = 0; j < k && positive; ++j) positive = power[i][j];
    if (positive) return true;
    std::vector<std::vector<bool>> next(k, std::vector<bool>(k, false));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l) next[i][j] = next[i][j] || (power[i][l] && base[l][j]);
    power = std::move(next);
  }
  return false;
}

std::vector<std::uint64_t> parikh_vector(const Word& w) {
  std::vector<std::uint64_t> v(w.alphabet_size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) ++v[w[i]];
  return v;
}

std::vector<std::uint64_t> parikh_image(const Morphism& m, const std::vector<std::uint64_t>& v) {
  auto inc = m.incidence_matrix();
  std::vector<std::uint64_t> out(m.target_alphabet_size(), 0);
  for (std::size_t i = 0; i < out.size(); ++i)
    for (std::size_t j = 0; j < v.size() && j < inc[i].size(); ++j) out[i] += inc[i][j] * v[j];
  return out;
}

std::uint64_t image_length(const Morphism& m, const std::vector<std::uint64_t>& v) {
  std::uint64_t total = 0;
  for (std::size_t j = 0; j < v.size() && j < static_cast<std::size_t>(m.source_alphabet_size()); ++j)
    total += m.image(static_cast<int>(j)).size() * v[j];
  return total;
}

}  // namespace compavoid
