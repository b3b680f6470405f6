#include "compavoid/complement.hpp"

#include <stdexcept>
#include <string_view>
#include <unordered_set>

namespace compavoid {

namespace {

void require_binary(const Word& w) {
  if (w.alphabet_size() != 2) throw std::domain_error("complement avoidance needs a binary word");
}

std::string complement_of(std::string_view s) {
  std::string out(s);
  for (char& c : out) c ^= 1;
  return out;
}

}  // namespace

ComplementedSet complemented_factors(const std::vector<Word>& words) {
  ComplementedSet out;
  for (const auto& w : words) require_binary(w);
  for (std::size_t len = 1;; ++len) {
    std::unordered_set<std::string_view> seen;
    for (const auto& w : words) {
      std::string_view s = w.str();
      for (std::size_t i = 0; i + len <= s.size(); ++i) seen.insert(s.substr(i, len));
    }
    std::size_t found = 0;
    for (auto f : seen) {
      if (seen.contains(complement_of(f))) {
        out.members.insert(Word(f, 2));
        ++found;
      }
    }
    if (found == 0) break;
    out.by_length[len] = found;
  }
  return out;
}

ComplementedSet complemented_factors(const Word& w, std::size_t max_len) {
  require_binary(w);
  if (max_len > w.size()) throw std::domain_error("max_len exceeds word length");
  ComplementedSet out;
  std::string_view s = w.str();
  for (std::size_t len = 1; len <= max_len; ++len) {
    std::unordered_set<std::string_view> seen;
    for (std::size_t i = 0; i + len <= s.size(); ++i) seen.insert(s.substr(i, len));
    std::size_t found = 0;
    for (auto f : seen) {
      if (seen.contains(complement_of(f))) {
        out.members.insert(Word(f, 2));
        ++found;
      }
    }
    if (found == 0) break;
    out.by_length[len] = found;
  }
  return out;
}

ComplementedSet complemented_factors(const Word& w) { return complemented_factors(w, w.size()); }

bool cal_ok(const Word& w, std::size_t ell) {
  require_binary(w);
  if (ell == 0) throw std::domain_error("CAL length must be positive");
  std::string_view s = w.str();
  std::unordered_set<std::string_view> seen;
  for (std::size_t i = 0; i + ell <= s.size(); ++i) seen.insert(s.substr(i, ell));
  for (auto f : seen)
    if (seen.contains(complement_of(f))) return false;
  return true;
}

std::size_t can_count(const Word& w) { return complemented_factors(w).count(); }

CalStream::CalStream(std::size_t ell) : ell_(ell) {
  if (ell == 0 || ell > 63) throw std::domain_error("CAL length must be in 1..63");
}

std::uint64_t CalStream::window_key() const {
  std::uint64_t key = 1;  // leading sentinel bit
  for (std::size_t i = text_.size() - ell_; i < text_.size(); ++i) key = (key << 1) | (text_[i] & 1);
  return key;
}

bool CalStream::append(int symbol) {
  if (symbol != 0 && symbol != 1) throw std::domain_error("CAL stream is binary");
  text_.push_back(static_cast<char>('0' + symbol));
  if (text_.size() < ell_) return ok();
  std::uint64_t key = window_key();
  std::uint64_t mask = (std::uint64_t{1} << ell_) - 1;
  std::uint64_t comp = key ^ mask;
  if (!first_violation_) {
    auto it = windows_.find(comp);
    if (it != windows_.end() && it->second > 0) first_violation_ = text_.size();
  }
  ++windows_[key];
  return ok();
}

void CalStream::retract() {
  if (text_.empty()) throw std::logic_error("retract on an empty CAL stream");
  if (text_.size() >= ell_) --windows_[window_key()];
  if (first_violation_ == text_.size()) first_violation_ = 0;
  text_.pop_back();
}

CanStream::CanStream(std::size_t limit) : limit_(limit) {}

bool CanStream::append(int symbol) {
  if (symbol != 0 && symbol != 1) throw std::domain_error("CAN stream is binary");
  text_.push_back(static_cast<char>('0' + symbol));
  std::string_view s = text_;
  const std::size_t n = s.size();
  std::size_t delta = 0;
  std::string comp;
  for (std::size_t k = 1; k <= n; ++k) {
    std::string_view suffix = s.substr(n - k);
    comp.assign(suffix);
    for (char& c : comp) c ^= 1;
    // Complemented words are factor-closed: once the complement of a suffix is
    // absent, it is absent for every longer suffix.
    if (s.find(comp) == std::string_view::npos) break;
    // New factor iff it does not occur ending before the last position.
    bool seen_before = s.substr(0, n - 1).find(suffix) != std::string_view::npos;
    if (!seen_before) delta += 2;
  }
  count_ += delta;
  deltas_.push_back(delta);
  return ok();
}

void CanStream::retract() {
  if (text_.empty()) throw std::logic_error("retract on an empty CAN stream");
  count_ -= deltas_.back();
  deltas_.pop_back();
  text_.pop_back();
}

}  // namespace compavoid
