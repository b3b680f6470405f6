#include "compavoid/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <thread>

#include "compavoid/catalog.hpp"

namespace compavoid {

namespace {

// Prefix doubling with counting sorts, O(N log N).
std::vector<std::int32_t> build_suffix_array(std::string_view s) {
  const std::size_t n = s.size();
  std::vector<std::int32_t> sa(n), cls(n), tmp(n), next_cls(n);
  if (n == 0) return sa;
  {
    std::vector<std::int32_t> cnt(256, 0);
    for (unsigned char c : s) ++cnt[c];
    for (std::size_t i = 1; i < 256; ++i) cnt[i] += cnt[i - 1];
    for (std::size_t i = n; i-- > 0;) sa[--cnt[static_cast<unsigned char>(s[i])]] = static_cast<std::int32_t>(i);
    cls[sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) cls[sa[i]] = cls[sa[i - 1]] + (s[sa[i]] != s[sa[i - 1]]);
  }
  std::vector<std::int32_t> cnt(n + 1);
  for (std::size_t k = 1; cls[sa[n - 1]] + 1 < static_cast<std::int32_t>(n); k <<= 1) {
    // Order by the second key: suffixes without one first, then by sa.
    std::size_t m = 0;
    for (std::size_t i = n - std::min(k, n); i < n; ++i) tmp[m++] = static_cast<std::int32_t>(i);
    for (std::size_t j = 0; j < n; ++j)
      if (static_cast<std::size_t>(sa[j]) >= k) tmp[m++] = sa[j] - static_cast<std::int32_t>(k);
    std::fill(cnt.begin(), cnt.end(), 0);
    for (std::size_t i = 0; i < n; ++i) ++cnt[cls[i] + 1];
    for (std::size_t i = 1; i <= n; ++i) cnt[i] += cnt[i - 1];
    for (std::size_t j = 0; j < n; ++j) sa[cnt[cls[tmp[j]]]++] = tmp[j];
    auto second = [&](std::int32_t i) { return i + k < n ? cls[i + k] : -1; };
    next_cls[sa[0]] = 0;
    for (std::size_t i = 1; i < n; ++i) {
      bool same = cls[sa[i]] == cls[sa[i - 1]] && second(sa[i]) == second(sa[i - 1]);
      next_cls[sa[i]] = next_cls[sa[i - 1]] + (same ? 0 : 1);
    }
    cls.swap(next_cls);
  }
  return sa;
}

// Kasai et al.
std::vector<std::int32_t> build_lcp(std::string_view s, const std::vector<std::int32_t>& sa) {
  const std::size_t n = s.size();
  std::vector<std::int32_t> rank(n), lcp(n, 0);
  for (std::size_t i = 0; i < n; ++i) rank[sa[i]] = static_cast<std::int32_t>(i);
  std::size_t h = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (rank[i] > 0) {
      std::size_t j = sa[rank[i] - 1];
      while (i + h < n && j + h < n && s[i + h] == s[j + h]) ++h;
      lcp[rank[i]] = static_cast<std::int32_t>(h);
      if (h > 0) --h;
    } else {
      h = 0;
    }
  }
  return lcp;
}

unsigned bit(int symbol) { return 1u << symbol; }

}  // namespace

// ---------------------------------------------------------------------------
// FactorIndex

FactorIndex::FactorIndex(Word prefix, IndexOptions options) : prefix_(std::move(prefix)) {
  const std::string_view s = prefix_.str();
  const std::size_t N = s.size();
  if (N > static_cast<std::size_t>(std::numeric_limits<std::int32_t>::max()))
    throw std::length_error("prefix too long for the factor index");
  reliable_ = options.reliable_length.value_or(N / 20);
  if (reliable_ > N) throw std::domain_error("reliable length exceeds the prefix length");
  sa_ = build_suffix_array(s);
  lcp_ = build_lcp(s, sa_);

  const int k = prefix_.alphabet_size();
  left_count_.assign(static_cast<std::size_t>(k) * (N + 1), 0);
  for (int c = 0; c < k; ++c) {
    std::uint32_t* row = left_count_.data() + static_cast<std::size_t>(c) * (N + 1);
    for (std::size_t i = 0; i < N; ++i) row[i + 1] = row[i] + (sa_[i] > 0 && prefix_[sa_[i] - 1] == c);
  }

  if (!options.check_recurrence) {
    recurrent_ = std::numeric_limits<std::size_t>::max();
    return;
  }
  // Recurrence at m implies it at every smaller length, so binary search.
  std::size_t lo = 0, hi = std::min(reliable_ + 2, N / 2);
  while (lo < hi) {
    std::size_t mid = (lo + hi + 1) / 2;
    if (recurrent_at(mid))
      lo = mid;
    else
      hi = mid - 1;
  }
  recurrent_ = lo;
}

bool FactorIndex::recurrent_at(std::size_t m) const {
  const std::size_t N = sa_.size();
  const std::size_t half = N / 2;
  if (m == 0) return true;
  if (m > half) return false;
  bool ok = true;
  for_each_factor_group(m, [&](std::size_t lo, std::size_t hi) {
    if (!ok) return;
    bool first = false, second = false;
    for (std::size_t i = lo; i < hi; ++i) {
      std::size_t p = sa_[i];
      if (p + m <= half) first = true;
      if (p >= half) second = true;
    }
    if (first && !second) ok = false;
  });
  return ok;
}

void FactorIndex::require(std::size_t n) const {
  if (n > reliable_)
    throw std::out_of_range("length " + std::to_string(n) + " exceeds the reliable length " +
                            std::to_string(reliable_) + " of a " + std::to_string(size()) + "-symbol prefix");
  if (recurrent_ != std::numeric_limits<std::size_t>::max() && n + 2 > recurrent_)
    throw InsufficientData("factors of length " + std::to_string(n + 2) +
                           " from the first half of the prefix do not all recur in the second half");
}

std::pair<std::size_t, std::size_t> FactorIndex::range_of(std::string_view w) const {
  const std::string_view s = prefix_.str();
  auto suffix = [&](std::int32_t i) { return s.substr(static_cast<std::size_t>(i)); };
  auto lo = std::partition_point(sa_.begin(), sa_.end(),
                                 [&](std::int32_t i) { return suffix(i).substr(0, w.size()) < w; });
  auto hi = std::partition_point(lo, sa_.end(),
                                 [&](std::int32_t i) { return suffix(i).substr(0, w.size()) == w; });
  return {static_cast<std::size_t>(lo - sa_.begin()), static_cast<std::size_t>(hi - sa_.begin())};
}

bool FactorIndex::contains(const Word& w) const {
  auto [lo, hi] = range_of(w.str());
  return lo < hi;
}

std::vector<std::size_t> FactorIndex::occurrences(const Word& w) const {
  auto [lo, hi] = range_of(w.str());
  std::vector<std::size_t> out;
  out.reserve(hi - lo);
  for (std::size_t i = lo; i < hi; ++i) out.push_back(static_cast<std::size_t>(sa_[i]));
  std::sort(out.begin(), out.end());
  return out;
}

unsigned FactorIndex::left_mask(std::size_t lo, std::size_t hi) const {
  const std::size_t N = sa_.size();
  unsigned mask = 0;
  for (int c = 0; c < prefix_.alphabet_size(); ++c) {
    const std::uint32_t* row = left_count_.data() + static_cast<std::size_t>(c) * (N + 1);
    if (row[hi] > row[lo]) mask |= bit(c);
  }
  return mask;
}

unsigned FactorIndex::left_extensions(const Word& w) const {
  auto [lo, hi] = range_of(w.str());
  return left_mask(lo, hi);
}

unsigned FactorIndex::right_extensions(const Word& w) const {
  auto [lo, hi] = range_of(w.str());
  unsigned mask = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    std::size_t end = sa_[i] + w.size();
    if (end < size()) mask |= bit(prefix_[end]);
  }
  return mask;
}

// ---------------------------------------------------------------------------
// Queries

std::size_t factor_complexity(const FactorIndex& index, std::size_t n) {
  index.require(n);
  std::size_t count = 0;
  index.for_each_factor_group(n, [&](std::size_t, std::size_t) { ++count; });
  return count;
}

std::size_t factor_complexity(const Word& prefix, std::size_t n) { return factor_complexity(FactorIndex(prefix), n); }

std::vector<int> mask_symbols(unsigned mask) {
  std::vector<int> out;
  for (int c = 0; mask >> c; ++c)
    if (mask & bit(c)) out.push_back(c);
  return out;
}

SpecialFactors special_factors(const FactorIndex& index, std::size_t n) {
  index.require(n + 1);
  const auto& sa = index.suffix_array();
  const Word& text = index.prefix();
  SpecialFactors out;
  index.for_each_factor_group(n, [&](std::size_t lo, std::size_t hi) {
    unsigned right = 0;
    for (std::size_t i = lo; i < hi; ++i)
      if (sa[i] + n < text.size()) right |= bit(text[sa[i] + n]);
    const bool ls = std::popcount(index.left_mask(lo, hi)) >= 2;
    const bool rs = std::popcount(right) >= 2;
    if (!ls && !rs) return;
    Word w = text.substr(sa[lo], n);
    if (ls) out.left.push_back(w);
    if (rs) out.right.push_back(w);
    if (ls && rs) out.bispecial.push_back(w);
  });
  for (auto* v : {&out.left, &out.right, &out.bispecial}) std::sort(v->begin(), v->end());
  return out;
}

namespace {

Word shortest_gap_word(const Word& text, std::vector<std::size_t> occ) {
  std::sort(occ.begin(), occ.end());
  std::size_t gap = std::numeric_limits<std::size_t>::max();
  for (std::size_t i = 1; i < occ.size(); ++i) gap = std::min(gap, occ[i] - occ[i - 1]);
  const std::string_view s = text.str();
  std::string_view best;
  for (std::size_t i = 1; i < occ.size(); ++i) {
    if (occ[i] - occ[i - 1] != gap) continue;
    std::string_view cand = s.substr(occ[i - 1], gap);
    if (best.empty() || cand < best) best = cand;
  }
  return Word(best, text.alphabet_size());
}

}  // namespace

WordSet return_words(const FactorIndex& index, const Word& w) {
  if (w.empty()) throw std::domain_error("return words need a nonempty factor");
  index.require(w.size());
  auto occ = index.occurrences(w);
  if (occ.size() < 2)
    throw InsufficientData(std::string(w.str()) + " occurs fewer than twice in the prefix");
  WordSet out;
  for (std::size_t i = 1; i < occ.size(); ++i) out.insert(index.prefix().substr(occ[i - 1], occ[i] - occ[i - 1]));
  return out;
}

Word shortest_return_word(const FactorIndex& index, const Word& w) {
  if (w.empty()) throw std::domain_error("return words need a nonempty factor");
  index.require(w.size());
  auto occ = index.occurrences(w);
  if (occ.size() < 2)
    throw InsufficientData(std::string(w.str()) + " occurs fewer than twice in the prefix");
  return shortest_gap_word(index.prefix(), std::move(occ));
}

std::vector<BispecialRecord> bispecial_survey(const FactorIndex& index, std::size_t max_len, unsigned threads) {
  index.require(max_len + 1);
  const auto& sa = index.suffix_array();
  const auto& lcp = index.lcp();
  const Word& text = index.prefix();
  const std::size_t N = sa.size();
  auto right_bit = [&](std::size_t pos) { return pos < N ? bit(text[pos]) : 0u; };

  // Bottom-up traversal of lcp-intervals: every right special factor is the
  // common prefix of exactly one interval; its right extensions are the
  // symbols that follow it at the child boundaries.
  struct Interval {
    std::size_t depth, lb;
    unsigned right;
  };
  struct Found {
    std::size_t lo, hi, depth;
    unsigned left, right;
  };
  std::vector<Found> found;
  std::vector<Interval> stack;
  if (N > 0) stack.push_back({0, 0, 0});
  for (std::size_t i = 1; i <= N; ++i) {
    const std::size_t h = i < N ? static_cast<std::size_t>(lcp[i]) : 0;
    std::size_t lb = i - 1;
    while (h < stack.back().depth) {
      Interval top = stack.back();
      stack.pop_back();
      lb = top.lb;
      if (top.depth <= max_len && std::popcount(top.right) >= 2) {
        unsigned left = index.left_mask(top.lb, i);
        if (std::popcount(left) >= 2) found.push_back({top.lb, i, top.depth, left, top.right});
      }
    }
    if (i == N) break;
    if (h > stack.back().depth) stack.push_back({h, lb, right_bit(sa[lb] + h)});
    stack.back().right |= right_bit(sa[i] + stack.back().depth);
  }

  std::vector<BispecialRecord> out(found.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t j; (j = next.fetch_add(1)) < found.size();) {
      const Found& f = found[j];
      std::vector<std::size_t> occ(sa.begin() + f.lo, sa.begin() + f.hi);
      BispecialRecord r;
      r.factor = text.substr(sa[f.lo], f.depth);
      r.left_extensions = mask_symbols(f.left);
      r.right_extensions = mask_symbols(f.right);
      r.shortest_return = shortest_gap_word(text, std::move(occ));
      r.ratio = Rational(static_cast<std::int64_t>(f.depth), static_cast<std::int64_t>(r.shortest_return.size()));
      out[j] = std::move(r);
    }
  };
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(found.size())));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.factor < b.factor; });
  return out;
}

CriticalExponentEstimate critical_exponent_estimate(const FactorIndex& index, std::size_t max_len,
                                                    unsigned threads) {
  auto survey = bispecial_survey(index, max_len, threads);
  if (survey.empty()) throw InsufficientData("no bispecial factors up to length " + std::to_string(max_len));
  auto best = std::max_element(survey.begin(), survey.end(),
                               [](const auto& a, const auto& b) { return a.ratio < b.ratio; });
  return {Rational(1) + best->ratio, *best};
}

// ---------------------------------------------------------------------------
// Numerics

RecurrenceCheck recurrence_verify(const std::vector<std::int64_t>& values, std::string name) {
  if (values.size() < 4) throw std::domain_error("recurrence check needs at least 4 values");
  RecurrenceCheck check;
  check.name = std::move(name);
  check.initial.assign(values.begin(), values.begin() + 3);
  check.ok = true;
  for (std::size_t n = 2; n + 1 < values.size(); ++n) {
    if (values[n + 1] != 2 * values[n] - values[n - 1] + values[n - 2]) {
      check.ok = false;
      check.failed_index = n + 1;
      break;
    }
    check.verified_upto = n + 1;
  }
  return check;
}

std::vector<std::int64_t> image_length_sequence(const Morphism& outer, const Morphism& base, const Word& seed,
                                                std::size_t count) {
  std::vector<std::int64_t> out;
  auto v = parikh_vector(seed);
  v.resize(base.source_alphabet_size(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    out.push_back(static_cast<std::int64_t>(image_length(outer, v)));
    v = parikh_image(base, v);
  }
  return out;
}

PolynomialRoot characteristic_root(const std::vector<std::int64_t>& coeffs) {
  if (coeffs.size() < 2 || coeffs.front() == 0) throw std::domain_error("need a polynomial of degree >= 1");
  auto eval = [&](long double x) {
    long double acc = 0;
    for (auto c : coeffs) acc = acc * x + static_cast<long double>(c);
    return acc;
  };
  auto deriv = [&](long double x) {
    long double acc = 0;
    const std::size_t deg = coeffs.size() - 1;
    for (std::size_t i = 0; i < deg; ++i) acc = acc * x + static_cast<long double>(coeffs[i]) * (deg - i);
    return acc;
  };
  // Cauchy bound: every root has |x| < 1 + max |a_i / a_0|.
  long double bound = 0;
  for (std::size_t i = 1; i < coeffs.size(); ++i)
    bound = std::max(bound, std::fabs(static_cast<long double>(coeffs[i]) / coeffs.front()));
  long double lo = 1, hi = 1 + bound + 1;
  const bool lo_sign = eval(lo) > 0, hi_sign = eval(hi) > 0;
  if (eval(lo) == 0 || lo_sign == hi_sign) throw std::domain_error("no simple real root bracketed in (1, inf)");
  while (hi - lo > 1e-14L) {
    long double mid = (lo + hi) / 2;
    if ((eval(mid) > 0) == lo_sign)
      lo = mid;
    else
      hi = mid;
  }
  long double x = (lo + hi) / 2;
  for (int i = 0; i < 4; ++i) {
    long double d = deriv(x);
    if (d == 0) break;
    long double nx = x - eval(x) / d;
    if (nx < lo || nx > hi) break;  // stay inside the certified bracket
    x = nx;
  }
  return {x, lo, hi};
}

Word sturmian_prefix(const std::vector<unsigned>& directive, std::size_t n) {
  if (directive.size() < 2) throw std::domain_error("directive needs [0; d1, ...]");
  if (directive.front() != 0) throw std::domain_error("slope must lie in (0, 1): directive starts with 0");
  for (std::size_t i = 1; i < directive.size(); ++i)
    if (directive[i] == 0) throw std::domain_error("partial quotients must be positive");
  std::string older = "1", prev = "0";
  auto quotient = [&](std::size_t i) { return directive[std::min(i, directive.size() - 1)]; };
  // s_1 = s_0^{d1 - 1} s_{-1}; afterwards s_k = s_{k-1}^{d_k} s_{k-2}.
  std::string cur;
  for (unsigned r = 0; r + 1 < quotient(1); ++r) cur += prev;
  cur += older;
  older = prev;
  prev = cur;
  for (std::size_t k = 2; prev.size() < n; ++k) {
    cur.clear();
    for (unsigned r = 0; r < quotient(k); ++r) cur += prev;
    cur += older;
    older = std::move(prev);
    prev = std::move(cur);
  }
  return Word(std::string_view(prev).substr(0, n), 2);
}

Word phi_bispecial(PhiFamily family, unsigned n) {
  const Morphism phi = catalog::morphism("phi");
  const Word one("1", 3), zero("0", 3);
  // Ones part phi^j(1) for ascending j, then zeros part phi^j(0) descending.
  unsigned ones_from = 0, ones_to = 2 * n;
  long zeros_from = 2 * static_cast<long>(n) - 1, zeros_to = 1;
  switch (family) {
    case PhiFamily::A:
      break;
    case PhiFamily::B:
      ones_from = 1, ones_to = 2 * n + 1, zeros_from = 2 * n, zeros_to = 0;
      break;
    case PhiFamily::C:
      zeros_from = 2 * n, zeros_to = 0;
      break;
    case PhiFamily::D:
      ones_from = 1, ones_to = 2 * n + 1, zeros_from = 2 * n + 1, zeros_to = 1;
      break;
  }
  Word out(std::string_view{}, 3);
  for (unsigned j = ones_from; j <= ones_to; j += 2) out += phi.power(one, j);
  for (long j = zeros_from; j >= zeros_to; j -= 2) out += phi.power(zero, static_cast<unsigned>(j));
  return out;
}

}  // namespace compavoid
