#pragma once
// Definitional brute-force implementations used as independent test oracles.
// Deliberately naive: nothing here shares code with the library.

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

inline std::size_t period(const std::string& w) {
  for (std::size_t p = 1; p <= w.size(); ++p) {
    bool ok = true;
    for (std::size_t i = 0; i + p < w.size() && ok; ++i) ok = w[i] == w[i + p];
    if (ok) return p;
  }
  return w.size();
}

/// Exponent as (length, period).
inline std::pair<std::int64_t, std::int64_t> exponent(const std::string& w) {
  return {static_cast<std::int64_t>(w.size()), static_cast<std::int64_t>(period(w))};
}

/// Passes (num/den, inclusive) iff every factor has exponent < (<=) num/den.
inline bool is_free(const std::string& w, std::int64_t num, std::int64_t den, bool inclusive) {
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j <= w.size(); ++j) {
      auto [len, per] = exponent(w.substr(i, j - i));
      // len/per vs num/den
      std::int64_t lhs = len * den, rhs = num * per;
      if (inclusive ? lhs > rhs : lhs >= rhs) return false;
    }
  return true;
}

inline std::string complement(std::string w) {
  for (char& c : w) c = c == '0' ? '1' : '0';
  return w;
}

inline std::set<std::string> factor_set(const std::string& w) {
  std::set<std::string> out;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j <= w.size(); ++j) out.insert(w.substr(i, j - i));
  return out;
}

inline std::set<std::string> complemented(const std::string& w) {
  auto f = factor_set(w);
  std::set<std::string> out;
  for (const auto& x : f)
    if (f.count(complement(x))) out.insert(x);
  return out;
}

inline bool cal_ok(const std::string& w, std::size_t ell) {
  for (const auto& x : complemented(w))
    if (x.size() >= ell) return false;
  return true;
}

/// All strings of length n over {0..k-1}.
inline std::vector<std::string> all_words(int k, std::size_t n) {
  std::vector<std::string> out{""};
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> next;
    for (const auto& w : out)
      for (int c = 0; c < k; ++c) next.push_back(w + static_cast<char>('0' + c));
    out.swap(next);
  }
  return out;
}

struct Bispecial {
  std::string factor;
  std::set<char> left, right;
  std::string shortest_return;
};

/// Bispecial factors up to max_len by scanning every window; shortest return
/// from all occurrence gaps, ties to the lexicographically least.
inline std::vector<Bispecial> bispecials(const std::string& t, std::size_t max_len) {
  std::vector<Bispecial> out;
  for (std::size_t n = 1; n <= max_len && n <= t.size(); ++n) {
    std::map<std::string, std::pair<std::set<char>, std::set<char>>> ext;
    for (std::size_t i = 0; i + n <= t.size(); ++i) {
      auto& e = ext[t.substr(i, n)];
      if (i > 0) e.first.insert(t[i - 1]);
      if (i + n < t.size()) e.second.insert(t[i + n]);
    }
    for (const auto& [w, e] : ext) {
      if (e.first.size() < 2 || e.second.size() < 2) continue;
      std::vector<std::size_t> occ;
      for (std::size_t i = 0; i + n <= t.size(); ++i)
        if (t.compare(i, n, w) == 0) occ.push_back(i);
      std::string best;
      for (std::size_t k = 1; k < occ.size(); ++k) {
        std::string r = t.substr(occ[k - 1], occ[k] - occ[k - 1]);
        if (best.empty() || r.size() < best.size() || (r.size() == best.size() && r < best)) best = r;
      }
      out.push_back({w, e.first, e.second, best});
    }
  }
  return out;
}

/// max over all factors w occurring twice of |w| / (smallest gap), as (num, den).
inline std::pair<std::int64_t, std::int64_t> max_return_ratio(const std::string& t) {
  std::pair<std::int64_t, std::int64_t> best{0, 1};
  for (std::size_t n = 1; n < t.size(); ++n)
    for (std::size_t i = 0; i + n <= t.size(); ++i) {
      std::size_t j = t.find(t.substr(i, n), i + 1);
      if (j == std::string::npos) continue;
      std::int64_t num = static_cast<std::int64_t>(n), den = static_cast<std::int64_t>(j - i);
      if (num * best.second > best.first * den) best = {num, den};
    }
  return best;
}

}  // namespace oracle
