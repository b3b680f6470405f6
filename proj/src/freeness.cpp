#include "compavoid/freeness.hpp"

#include <algorithm>
#include <stdexcept>

namespace compavoid {

namespace {

using wide = unsigned __int128;

// Runs for the prefix of length n live at runs[offset(n) .. offset(n) + n - 1).
std::size_t run_offset(std::size_t n) { return (n - 1) * (n - 2) / 2; }

}  // namespace

ExponentThreshold ExponentThreshold::parse(std::string_view text) {
  bool inclusive = !text.empty() && text.back() == '+';
  if (inclusive) text.remove_suffix(1);
  Rational v = Rational::parse(text);
  if (v < Rational(1)) throw std::domain_error("threshold must be at least 1");
  return {v, inclusive};
}

std::string ExponentThreshold::str() const {
  std::string s = value.den() == 1 ? std::to_string(value.num()) : value.str();
  return inclusive ? s + "+" : s;
}

bool ExponentThreshold::violated_by(std::uint64_t length, std::uint64_t period) const {
  wide lhs = wide(length) * static_cast<std::uint64_t>(value.den());
  wide rhs = wide(period) * static_cast<std::uint64_t>(value.num());
  return inclusive ? lhs > rhs : lhs >= rhs;
}

std::uint64_t ExponentThreshold::min_violating_length(std::uint64_t period) const {
  wide prod = wide(period) * static_cast<std::uint64_t>(value.num());
  auto den = static_cast<std::uint64_t>(value.den());
  wide len = inclusive ? prod / den + 1 : (prod + den - 1) / den;
  return std::max<std::uint64_t>(static_cast<std::uint64_t>(len), 1);
}

bool ExponentThreshold::dominates(const ExponentThreshold& other) const {
  if (value != other.value) return value > other.value;
  return inclusive || !other.inclusive;
}

FreenessVerdict is_free(const Word& w, const ExponentThreshold& t) {
  std::string_view s = w.str();
  const std::size_t n = s.size();
  std::optional<Violation> best;
  for (std::size_t p = 1; p <= n; ++p) {
    std::uint64_t need = t.min_violating_length(p);
    if (need > n) break;  // need grows with p
    if (best && need > best->factor.size()) break;
    // Leftmost window of length `need` with period p: need - p consecutive
    // matches s[j] == s[j+p] starting at its first position.
    const std::size_t k = need - p;
    std::optional<std::size_t> start;
    if (k == 0) {
      start = 0;
    } else {
      std::size_t run = 0;
      for (std::size_t j = 0; j + p < n; ++j) {
        run = (s[j] == s[j + p]) ? run + 1 : 0;
        if (run >= k) {
          start = j + 1 - k;
          break;
        }
      }
    }
    if (!start) continue;
    if (!best || need < best->factor.size() ||
        (need == best->factor.size() && *start < best->position))
      best = Violation{w.substr(*start, need), *start};
  }
  return best;
}

StreamChecker::StreamChecker(ExponentThreshold t, int alphabet_size)
    : threshold_(t), alphabet_(alphabet_size) {}

FreenessVerdict StreamChecker::append(int symbol) {
  if (symbol < 0 || symbol >= alphabet_) throw std::domain_error("symbol out of alphabet");
  text_.push_back(static_cast<char>('0' + symbol));
  const std::size_t n = text_.size();
  const std::size_t off = run_offset(n);
  if (runs_.size() < off + n - 1) runs_.resize(off + n - 1);
  auto& runs = runs_;

  const std::size_t prev_off = n >= 2 ? run_offset(n - 1) : 0;
  std::uint64_t best_len = 0;
  for (std::size_t p = 1; p < n; ++p) {
    std::uint32_t prev = p + 1 < n ? runs[prev_off + p - 1] : 0;
    std::uint32_t r = text_[n - 1] == text_[n - 1 - p] ? prev + 1 : 0;
    runs[off + p - 1] = r;
    if (!first_violation_ && threshold_.violated_by(r + p, p)) {
      std::uint64_t need = threshold_.min_violating_length(p);
      if (best_len == 0 || need < best_len) best_len = need;
    }
  }
  if (!first_violation_ && threshold_.violated_by(n, n)) {
    std::uint64_t need = threshold_.min_violating_length(n);
    if (best_len == 0 || need < best_len) best_len = std::min<std::uint64_t>(need, n);
  }
  if (!first_violation_ && best_len > 0) {
    first_violation_ = n;
    violation_ = Violation{Word(std::string_view(text_).substr(n - best_len), alphabet_), n - best_len};
  }
  return verdict();
}

void StreamChecker::retract() {
  if (text_.empty()) throw std::logic_error("retract on an empty stream checker");
  if (first_violation_ && *first_violation_ == text_.size()) first_violation_.reset();
  text_.pop_back();
}

FreenessVerdict StreamChecker::verdict() const {
  if (first_violation_) return violation_;
  return std::nullopt;
}

}  // namespace compavoid
