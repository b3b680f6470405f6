#include "compavoid/word.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace compavoid {

Word::Word(std::string_view ascii, int alphabet_size) : data_(ascii) {
  int largest = -1;
  for (char c : data_) {
    if (c < '0' || c >= '0' + kMaxAlphabet)
      throw std::invalid_argument("word symbol out of range: '" + std::string(1, c) + "'");
    largest = std::max(largest, c - '0');
  }
  if (alphabet_size == 0) {
    alphabet_ = std::max(2, largest + 1);
  } else {
    if (alphabet_size < 1 || alphabet_size > kMaxAlphabet)
      throw std::domain_error("alphabet size must be in 1..3");
    if (largest >= alphabet_size)
      throw std::domain_error("word '" + data_ + "' is not over an alphabet of size " +
                              std::to_string(alphabet_size));
    alphabet_ = alphabet_size;
  }
}

Word Word::substr(std::size_t pos, std::size_t len) const {
  if (pos > size() || len > size() - pos) throw std::out_of_range("factor out of range");
  Word out;
  out.data_ = data_.substr(pos, len);
  out.alphabet_ = alphabet_;
  return out;
}

void Word::push_back(int symbol) {
  if (symbol < 0 || symbol >= alphabet_) throw std::domain_error("symbol out of alphabet");
  data_.push_back(static_cast<char>('0' + symbol));
}

Word& Word::operator+=(const Word& other) {
  if (other.alphabet_ > alphabet_) alphabet_ = other.alphabet_;
  data_ += other.data_;
  return *this;
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  if (auto c = a.data_.compare(b.data_); c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return a.alphabet_ <=> b.alphabet_;
}

Word complement(const Word& w) {
  if (w.alphabet_size() != 2) throw std::domain_error("complement needs a binary word");
  std::string s(w.str());
  for (char& c : s) c ^= 1;  // '0' <-> '1'
  return Word(s, 2);
}

Word reverse(const Word& w) {
  std::string s(w.str());
  std::reverse(s.begin(), s.end());
  return Word(s, w.alphabet_size());
}

std::vector<std::size_t> border_table(std::string_view w) {
  std::vector<std::size_t> border(w.size(), 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < w.size(); ++i) {
    while (k > 0 && w[i] != w[k]) k = border[k - 1];
    if (w[i] == w[k]) ++k;
    border[i] = k;
  }
  return border;
}

std::size_t smallest_period(const Word& w) {
  if (w.empty()) throw std::domain_error("period of the empty word");
  return w.size() - border_table(w.str()).back();
}

ExponentValue exponent(const Word& w) {
  return ExponentValue(static_cast<std::int64_t>(w.size()),
                       static_cast<std::int64_t>(smallest_period(w)));
}

WordSet factors(const Word& w, std::size_t n) {
  if (n > w.size()) throw std::domain_error("factor length exceeds word length");
  WordSet out;
  for (std::size_t i = 0; i + n <= w.size(); ++i) out.insert(w.substr(i, n));
  return out;
}

CriticalExponent critical_exponent_finite(const Word& w) {
  if (w.empty()) throw std::domain_error("critical exponent of the empty word");
  // For each start i, the border table of the suffix w[i..] yields the period of
  // every prefix w[i..j] in one pass.
  CriticalExponent best{ExponentValue(1), w.substr(0, 1), 0};
  std::string_view s = w.str();
  for (std::size_t i = 0; i < s.size(); ++i) {
    auto border = border_table(s.substr(i));
    for (std::size_t len = 1; len <= border.size(); ++len) {
      auto period = len - border[len - 1];
      ExponentValue e(static_cast<std::int64_t>(len), static_cast<std::int64_t>(period));
      bool better = e > best.value ||
                    (e == best.value && (len < best.witness.size() ||
                                         (len == best.witness.size() && i < best.position)));
      if (better) best = {e, w.substr(i, len), i};
    }
  }
  return best;
}

std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.str(); }

}  // namespace compavoid
