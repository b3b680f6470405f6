#include "compavoid/search.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>

namespace compavoid {

namespace {

std::string complement_str(std::string_view s) {
  std::string out(s);
  for (char& c : out) c ^= 1;
  return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

}  // namespace

// ---------------------------------------------------------------------------
// AllowedWindows

AllowedWindows::AllowedWindows(std::size_t length, std::unordered_set<std::string> windows) {
  if (length == 0) throw std::domain_error("allowed window length must be positive");
  auto d = std::make_shared<Data>();
  d->length = length;
  for (const auto& w : windows) {
    if (w.size() != length) throw std::domain_error("allowed windows must share one length");
    if (w.find_first_not_of("01") != std::string::npos) throw std::domain_error("allowed windows must be binary");
    for (std::size_t i = 0; i < length; ++i)
      for (std::size_t n = 1; i + n <= length && n < length; ++n) d->shorter.insert(w.substr(i, n));
  }
  d->windows = std::move(windows);
  data_ = std::move(d);
}

bool AllowedWindows::allows_suffix(std::string_view s) const {
  if (s.size() >= data_->length) return data_->windows.contains(std::string(s.substr(s.size() - data_->length)));
  return s.empty() || data_->shorter.contains(std::string(s));
}

bool AllowedWindows::allows(std::string_view s) const {
  if (s.size() < data_->length) return allows_suffix(s);
  for (std::size_t i = 0; i + data_->length <= s.size(); ++i)
    if (!data_->windows.contains(std::string(s.substr(i, data_->length)))) return false;
  return true;
}

// ---------------------------------------------------------------------------
// ConstraintSet

bool ConstraintSet::empty() const {
  return !freeness && !cal && !can && forbidden.empty() && required_absent_pairs.empty() && !allowed;
}

bool ConstraintSet::complement_invariant() const {
  std::set<std::string> forb;
  for (const auto& f : forbidden) forb.emplace(f.str());
  for (const auto& f : forb)
    if (!forb.contains(complement_str(f))) return false;
  if (allowed) {
    for (const auto& w : allowed->windows())
      if (!allowed->windows().contains(complement_str(w))) return false;
  }
  return true;
}

std::string ConstraintSet::describe() const {
  std::string out;
  auto add = [&](const std::string& part) {
    if (!out.empty()) out += ", ";
    out += part;
  };
  if (freeness) add(freeness->str() + "-free");
  if (cal) add("CAL " + std::to_string(*cal));
  if (can) add("CAN " + std::to_string(*can));
  if (!forbidden.empty()) {
    std::string f = "forbid {";
    for (std::size_t i = 0; i < forbidden.size(); ++i) f += (i ? "," : "") + std::string(forbidden[i].str());
    add(f + "}");
  }
  if (!required_absent_pairs.empty()) {
    std::string f = "not both {";
    for (std::size_t i = 0; i < required_absent_pairs.size(); ++i)
      f += (i ? "," : "") + std::string(required_absent_pairs[i].str());
    add(f + "} and complements");
  }
  if (allowed) add("windows of length " + std::to_string(allowed->length()) + " from a set of " +
                   std::to_string(allowed->windows().size()));
  return out.empty() ? "unconstrained" : out;
}

void ConstraintSet::validate() const {
  if (cal && (*cal == 0 || *cal > 63)) throw std::domain_error("CAL length must be in 1..63");
  for (const auto& f : forbidden)
    if (f.alphabet_size() != 2 || f.empty()) throw std::domain_error("forbidden words must be nonempty binary words");
  for (const auto& f : required_absent_pairs)
    if (f.alphabet_size() != 2 || f.empty()) throw std::domain_error("pair words must be nonempty binary words");
}

bool satisfies(const Word& w, const ConstraintSet& c) {
  c.validate();
  if (w.alphabet_size() != 2) throw std::domain_error("constraint sets apply to binary words");
  if (c.freeness && is_free(w, *c.freeness)) return false;
  if (c.cal && !cal_ok(w, *c.cal)) return false;
  if (c.can && can_count(w) > *c.can) return false;
  for (const auto& f : c.forbidden)
    if (w.contains(f)) return false;
  for (const auto& u : c.required_absent_pairs)
    if (w.contains(u) && w.contains(complement(u))) return false;
  if (c.allowed && !c.allowed->allows(w.str())) return false;
  return true;
}

// ---------------------------------------------------------------------------
// ConstraintChecker

struct ConstraintChecker::Impl {
  explicit Impl(const ConstraintSet& c) : set(c) {
    c.validate();
    if (c.freeness) freeness.emplace(*c.freeness, 2);
    if (c.cal) cal.emplace(*c.cal);
    if (c.can) can.emplace(*c.can);
    for (const auto& f : c.forbidden) forbidden[f.size()].emplace(f.str());
    for (const auto& u : c.required_absent_pairs) {
      pair_words.emplace_back(u.str());
      pair_words.push_back(complement_str(u.str()));
      pair_counts.push_back(0);
      pair_counts.push_back(0);
    }
  }

  bool cheap_checks() const {
    std::string_view s = text;
    for (const auto& [len, words] : forbidden)
      if (s.size() >= len && words.contains(std::string(s.substr(s.size() - len)))) return false;
    if (set.allowed && !set.allowed->allows_suffix(s)) return false;
    return true;
  }

  // Returns false (and leaves the pair counters unchanged) on a pair violation.
  bool push_pairs() {
    std::vector<std::uint32_t> hit;
    for (std::size_t i = 0; i < pair_words.size(); ++i)
      if (ends_with(text, pair_words[i])) hit.push_back(static_cast<std::uint32_t>(i));
    for (auto i : hit) {
      if (pair_counts[i ^ 1] > 0) return false;
    }
    for (auto i : hit) ++pair_counts[i];
    pair_log.push_back(std::move(hit));
    return true;
  }

  void pop_pairs() {
    for (auto i : pair_log.back()) --pair_counts[i];
    pair_log.pop_back();
  }

  ConstraintSet set;
  std::string text;
  std::optional<StreamChecker> freeness;
  std::optional<CalStream> cal;
  std::optional<CanStream> can;
  std::map<std::size_t, std::unordered_set<std::string>> forbidden;
  std::vector<std::string> pair_words;  // u, complement(u), ...
  std::vector<std::uint32_t> pair_counts;
  std::vector<std::vector<std::uint32_t>> pair_log;
};

ConstraintChecker::ConstraintChecker(const ConstraintSet& c) : impl_(std::make_unique<Impl>(c)) {}
ConstraintChecker::~ConstraintChecker() = default;
ConstraintChecker::ConstraintChecker(ConstraintChecker&&) noexcept = default;
ConstraintChecker& ConstraintChecker::operator=(ConstraintChecker&&) noexcept = default;

bool ConstraintChecker::try_append(int symbol) {
  if (symbol != 0 && symbol != 1) throw std::domain_error("constraint checker is binary");
  Impl& s = *impl_;
  s.text.push_back(static_cast<char>('0' + symbol));
  if (!s.cheap_checks()) {
    s.text.pop_back();
    return false;
  }
  if (!s.push_pairs()) {
    s.text.pop_back();
    return false;
  }
  bool ok = true;
  int stage = 0;
  if (s.cal) {
    ok = s.cal->append(symbol);
    stage = 1;
  }
  if (ok && s.freeness) {
    ok = !s.freeness->append(symbol).has_value();
    stage = 2;
  }
  if (ok && s.can) {
    ok = s.can->append(symbol);
    stage = 3;
  }
  if (!ok) {
    if (stage >= 3) s.can->retract();
    if (stage >= 2 && s.freeness) s.freeness->retract();
    if (stage >= 1 && s.cal) s.cal->retract();
    s.pop_pairs();
    s.text.pop_back();
  }
  return ok;
}

void ConstraintChecker::retract() {
  Impl& s = *impl_;
  if (s.text.empty()) throw std::logic_error("retract on an empty constraint checker");
  if (s.can) s.can->retract();
  if (s.freeness) s.freeness->retract();
  if (s.cal) s.cal->retract();
  s.pop_pairs();
  s.text.pop_back();
}

std::size_t ConstraintChecker::size() const { return impl_->text.size(); }
std::string_view ConstraintChecker::text() const { return impl_->text; }

// ---------------------------------------------------------------------------
// Parallel depth-first engine

namespace {

enum class Step { Descend, Skip, Abort };

constexpr std::size_t kNoUnit = std::numeric_limits<std::size_t>::max();

/// Visits every passing word of length <= max_depth (the empty word included)
/// in depth-first 0-before-1 order. Nodes above the split depth are visited
/// sequentially; subtrees below it are distributed over worker threads, each
/// with its own checker and accumulator. visit(acc, text, unit) returns the
/// next step; `unit` is the index of the work unit (kNoUnit above the split).
template <class Acc, class Make, class Visit>
Acc dfs_search(const ConstraintSet& c, std::size_t max_depth, bool symmetric, const SearchOptions& opt,
               Make make, Visit visit, const std::atomic<std::size_t>* stop_unit = nullptr) {
  const std::size_t split = std::min(opt.split_depth, max_depth);
  Acc root = make();
  std::vector<std::string> units;
  bool aborted = false;
  {
    ConstraintChecker checker(c);
    auto rec = [&](auto&& self, std::size_t depth) -> void {
      Step step = visit(root, checker.text(), kNoUnit);
      if (step == Step::Abort) aborted = true;
      if (step != Step::Descend || aborted) return;
      if (depth == split) {
        if (depth < max_depth) units.emplace_back(checker.text());
        return;
      }
      for (int s = 0; s < 2 && !aborted; ++s) {
        if (depth == 0 && symmetric && s == 1) break;
        if (checker.try_append(s)) {
          self(self, depth + 1);
          checker.retract();
        }
      }
    };
    rec(rec, 0);
  }
  if (aborted || units.empty()) return root;

  unsigned threads = opt.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opt.threads;
  threads = std::min<unsigned>(threads, static_cast<unsigned>(units.size()));
  std::atomic<std::size_t> next{0};
  std::vector<Acc> accs;
  accs.reserve(threads);
  for (unsigned t = 0; t < threads; ++t) accs.push_back(make());

  auto worker = [&](Acc& acc) {
    for (;;) {
      std::size_t u = next.fetch_add(1);
      if (u >= units.size()) return;
      if (stop_unit && u > stop_unit->load()) continue;
      ConstraintChecker checker(c);
      for (char ch : units[u]) checker.try_append(ch - '0');
      bool abort_unit = false;
      auto rec = [&](auto&& self, std::size_t depth) -> void {
        for (int s = 0; s < 2 && !abort_unit; ++s) {
          if (!checker.try_append(s)) continue;
          Step step = visit(acc, checker.text(), u);
          if (step == Step::Abort || (stop_unit && u > stop_unit->load())) abort_unit = true;
          if (step == Step::Descend && !abort_unit && depth + 1 < max_depth) self(self, depth + 1);
          checker.retract();
        }
      };
      rec(rec, split);
    }
  };

  if (threads == 1) {
    worker(accs[0]);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, std::ref(accs[t]));
    for (auto& th : pool) th.join();
  }
  for (auto& a : accs) root.merge(std::move(a));
  return root;
}

struct LongestAcc {
  std::size_t max_witnesses = 0;
  std::size_t best = 0;
  std::set<std::string> witnesses;
  bool truncated = false;
  std::uint64_t nodes = 0;
  std::size_t cap_unit = kNoUnit;
  std::optional<std::string> cap_sample;
  bool cap_hit = false;

  void offer(std::string_view w) {
    if (w.size() > best) {
      best = w.size();
      witnesses.clear();
      truncated = false;
    }
    if (w.size() != best) return;
    witnesses.emplace(w);
    if (witnesses.size() > max_witnesses) {
      witnesses.erase(std::prev(witnesses.end()));
      truncated = true;
    }
  }

  void merge(LongestAcc&& o) {
    nodes += o.nodes;
    if (o.cap_hit && (!cap_hit || o.cap_unit < cap_unit)) {
      cap_hit = true;
      cap_unit = o.cap_unit;
      cap_sample = std::move(o.cap_sample);
    }
    if (o.best > best) {
      best = o.best;
      witnesses = std::move(o.witnesses);
      truncated = o.truncated;
    } else if (o.best == best) {
      truncated = truncated || o.truncated;
      for (auto& w : o.witnesses) offer(w);
    }
  }
};

struct CountAcc {
  std::vector<std::uint64_t> counts;
  void merge(CountAcc&& o) {
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += o.counts[i];
  }
};

struct FactorAcc {
  std::set<std::string> factors;
  void merge(FactorAcc&& o) { factors.merge(o.factors); }
};

}  // namespace

SearchOutcome longest_word(const ConstraintSet& c, std::size_t cap, const SearchOptions& opt) {
  if (cap < 1) throw std::domain_error("cap must be at least 1");
  c.validate();
  const bool symmetric = !opt.no_symmetry && c.complement_invariant();
  std::atomic<std::size_t> stop_unit{kNoUnit};
  std::mutex stop_mutex;

  auto make = [&] {
    LongestAcc a;
    a.max_witnesses = opt.max_witnesses;
    return a;
  };
  auto visit = [&](LongestAcc& acc, std::string_view text, std::size_t unit) {
    ++acc.nodes;
    if (text.size() >= cap) {
      if (!acc.cap_hit || unit < acc.cap_unit) {
        acc.cap_hit = true;
        acc.cap_unit = unit;
        acc.cap_sample = std::string(text);
      }
      std::lock_guard lock(stop_mutex);
      if (unit < stop_unit.load()) stop_unit.store(unit);
      return Step::Abort;
    }
    acc.offer(text);
    return Step::Descend;
  };
  LongestAcc acc = dfs_search<LongestAcc>(c, cap, symmetric, opt, make, visit, &stop_unit);

  SearchOutcome out;
  out.nodes_visited = acc.nodes;
  if (acc.cap_hit) {
    out.kind = SearchOutcome::Kind::CapReached;
    out.cap = cap;
    out.witnesses.push_back(Word(*acc.cap_sample, 2));
    return out;
  }
  out.kind = SearchOutcome::Kind::Exhausted;
  out.max_length = acc.best;
  std::set<std::string> all = acc.witnesses;
  if (symmetric)
    for (const auto& w : acc.witnesses) all.insert(complement_str(w));
  for (const auto& w : all) {
    if (out.witnesses.size() == opt.max_witnesses) {
      out.witnesses_truncated = true;
      break;
    }
    out.witnesses.emplace_back(w, 2);
  }
  out.witnesses_truncated = out.witnesses_truncated || acc.truncated;
  return out;
}

std::vector<std::uint64_t> count_profile(const ConstraintSet& c, std::size_t max_len, const SearchOptions& opt) {
  c.validate();
  auto make = [&] {
    CountAcc a;
    a.counts.assign(max_len + 1, 0);
    return a;
  };
  auto visit = [](CountAcc& acc, std::string_view text, std::size_t) {
    ++acc.counts[text.size()];
    return Step::Descend;
  };
  return dfs_search<CountAcc>(c, max_len, false, opt, make, visit).counts;
}

std::uint64_t count_words(const ConstraintSet& c, std::size_t length, const SearchOptions& opt) {
  return count_profile(c, length, opt)[length];
}

WordSet extendable_factors(const ConstraintSet& c, std::size_t f_len, std::size_t context_len,
                           const SearchOptions& opt) {
  if (f_len < 1 || context_len < 1) throw std::domain_error("factor and context lengths must be positive");
  c.validate();
  const bool symmetric = !opt.no_symmetry && c.complement_invariant();
  const std::size_t depth = 2 * context_len + f_len;
  auto make = [] { return FactorAcc{}; };
  auto visit = [&](FactorAcc& acc, std::string_view text, std::size_t) {
    if (text.size() == depth) acc.factors.emplace(text.substr(context_len, f_len));
    return Step::Descend;
  };
  FactorAcc acc = dfs_search<FactorAcc>(c, depth, symmetric, opt, make, visit);
  WordSet out;
  for (const auto& f : acc.factors) {
    out.emplace(f, 2);
    if (symmetric) out.emplace(complement_str(f), 2);
  }
  return out;
}

FactorSetComparison compare_factor_sets(const WordSet& s, const std::vector<Word>& reference_prefixes,
                                        std::size_t length, ClosureOptions closure) {
  for (const auto& w : s)
    if (w.size() != length) throw std::domain_error("factor set members must have the stated length");
  WordSet reference;
  for (const auto& ref : reference_prefixes) {
    if (ref.size() < length) throw std::domain_error("reference prefix shorter than the factor length");
    reference.merge(factors(ref, length));
  }
  if (closure.reversal) {
    WordSet extra;
    for (const auto& w : reference) extra.insert(reverse(w));
    reference.merge(extra);
  }
  if (closure.complement) {
    WordSet extra;
    for (const auto& w : reference) extra.insert(complement(w));
    reference.merge(extra);
  }
  FactorSetComparison out;
  out.reference_size = reference.size();
  std::set_difference(reference.begin(), reference.end(), s.begin(), s.end(), std::back_inserter(out.missing));
  std::set_difference(s.begin(), s.end(), reference.begin(), reference.end(), std::back_inserter(out.extra));
  return out;
}

}  // namespace compavoid
