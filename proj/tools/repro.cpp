#include "repro.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "compavoid/analysis.hpp"
#include "compavoid/catalog.hpp"
#include "compavoid/complement.hpp"
#include "compavoid/freeness.hpp"
#include "compavoid/morphism.hpp"
#include "compavoid/search.hpp"
#include "compavoid/transfer.hpp"

namespace compavoid::repro {

namespace {

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_list(std::string_view s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in{std::string(s)};
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::string fmt_rational(const Rational& r) {
  return r.den() == 1 ? std::to_string(r.num()) : r.str();
}

std::string fmt_double(double v, int digits = 10) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

/// Parameter access with error messages naming the task.
class Params {
 public:
  explicit Params(const Task& t) : task_(t) {}

  bool has(const std::string& key) const { return task_.params.count(key) > 0; }
  bool has_expect(const std::string& key) const { return task_.expect.count(key) > 0; }

  std::string str(const std::string& key) const {
    auto it = task_.params.find(key);
    if (it == task_.params.end()) throw ReproError(task_.id + ": missing parameter '" + key + "'");
    return it->second;
  }
  std::string str(const std::string& key, const std::string& fallback) const {
    return has(key) ? str(key) : fallback;
  }
  std::size_t size(const std::string& key) const { return to_size(key, str(key)); }
  std::size_t size(const std::string& key, std::size_t fallback) const { return has(key) ? size(key) : fallback; }
  std::optional<std::size_t> opt_size(const std::string& key) const {
    return has(key) ? std::optional<std::size_t>(size(key)) : std::nullopt;
  }

  std::string expect(const std::string& key) const {
    auto it = task_.expect.find(key);
    if (it == task_.expect.end()) throw ReproError(task_.id + ": missing expectation 'expect." + key + "'");
    return it->second;
  }
  std::size_t expect_size(const std::string& key) const { return to_size("expect." + key, expect(key)); }
  double expect_double(const std::string& key) const {
    try {
      return std::stod(expect(key));
    } catch (const std::logic_error&) {
      throw ReproError(task_.id + ": expect." + key + " is not a number");
    }
  }

 private:
  std::size_t to_size(const std::string& key, const std::string& v) const {
    if (v.empty() || !std::all_of(v.begin(), v.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw ReproError(task_.id + ": parameter '" + key + "' must be a nonnegative integer");
    return std::stoull(v);
  }
  const Task& task_;
};

/// A literal word over {0,1,2}, a readable file holding one, or a catalog
/// word name whose first `prefix` symbols are taken.
Word resolve_word(const std::string& spec, std::size_t prefix) {
  if (!spec.empty() && spec.find_first_not_of("012") == std::string::npos) return Word(spec);
  if (std::filesystem::is_regular_file(spec)) {
    std::ifstream in(spec);
    std::string text((std::istreambuf_iterator<char>(in)), {});
    text.erase(std::remove_if(text.begin(), text.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
               text.end());
    return Word(text);
  }
  return catalog::word_prefix(spec, prefix);
}

std::vector<Word> word_list(const std::string& s) {
  std::vector<Word> out;
  for (const auto& w : split_list(s)) out.emplace_back(w, 2);
  return out;
}

/// Checks collect into the result; the first failing check sets the message.
struct Outcome {
  Result& r;
  bool ok = true;
  void observe(const std::string& key, const std::string& value) { r.observed.emplace_back(key, value); }
  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      r.message = what;
    }
  }
};

ConstraintSet constraints(const Params& p) {
  ConstraintSet c;
  if (p.has("free")) c.freeness = ExponentThreshold::parse(p.str("free"));
  c.cal = p.opt_size("cal");
  c.can = p.opt_size("can");
  if (p.has("forbid")) c.forbidden = word_list(p.str("forbid"));
  if (p.has("absent_pairs")) c.required_absent_pairs = word_list(p.str("absent_pairs"));
  // Forbid the complements of all length-n factors of a source word.
  if (p.has("forbid_complements_of")) {
    Word src = resolve_word(p.str("forbid_complements_of"), p.size("forbid_source_prefix", 1000));
    for (const auto& f : factors(src, p.size("forbid_window"))) c.forbidden.push_back(complement(f));
  }
  if (p.has("allowed_from")) {
    const std::size_t len = p.size("allowed_length");
    Word src = resolve_word(p.str("allowed_from"), p.size("allowed_prefix", 100000));
    std::unordered_set<std::string> windows;
    for (const auto& f : factors(src, len)) windows.insert(std::string(f.str()));
    c.allowed = AllowedWindows(len, std::move(windows));
  }
  return c;
}

SearchOptions search_options(const Params& p, const RunOptions& o) {
  SearchOptions s;
  s.threads = o.threads;
  s.split_depth = p.size("split_depth", s.split_depth);
  s.no_symmetry = p.str("no_symmetry", "false") == "true";
  return s;
}

// --- operations ------------------------------------------------------------

void op_search_longest(const Params& p, const RunOptions& o, Outcome& out) {
  ConstraintSet c = constraints(p);
  auto r = longest_word(c, p.size("cap", 400), search_options(p, o));
  out.observe("constraints", c.describe());
  out.observe("nodes", std::to_string(r.nodes_visited));
  if (r.kind == SearchOutcome::Kind::CapReached) {
    out.observe("result", "cap " + std::to_string(r.cap) + " reached");
    if (!r.witnesses.empty()) out.r.witnesses.push_back(std::string(r.witnesses.front().str()));
    out.require(p.has_expect("capped") && p.expect("capped") == "true", "search reached the cap");
    return;
  }
  out.observe("max_length", std::to_string(r.max_length));
  out.observe("longest_words", std::to_string(r.witnesses.size()) + (r.witnesses_truncated ? "+" : ""));
  for (std::size_t i = 0; i < r.witnesses.size() && i < 4; ++i) out.r.witnesses.push_back(std::string(r.witnesses[i].str()));
  out.require(!p.has_expect("capped") || p.expect("capped") == "false", "search exhausted below the cap");
  if (p.has_expect("max_length"))
    out.require(r.max_length == p.expect_size("max_length"),
                "longest length " + std::to_string(r.max_length) + ", expected " + p.expect("max_length"));
  if (p.has_expect("witness")) {
    Word w(p.expect("witness"), 2);
    out.require(satisfies(w, c), "expected witness fails the batch checks");
    out.require(std::find(r.witnesses.begin(), r.witnesses.end(), w) != r.witnesses.end() || r.witnesses_truncated,
                "expected witness not among the longest words");
  }
}

void op_search_count(const Params& p, const RunOptions& o, Outcome& out) {
  ConstraintSet c = constraints(p);
  auto n = count_words(c, p.size("length"), search_options(p, o));
  out.observe("constraints", c.describe());
  out.observe("count", std::to_string(n));
  if (p.has_expect("count"))
    out.require(n == p.expect_size("count"), "count " + std::to_string(n) + ", expected " + p.expect("count"));
}

void op_search_factors(const Params& p, const RunOptions& o, Outcome& out) {
  ConstraintSet c = constraints(p);
  const std::size_t flen = p.size("flen"), ctx = p.size("context");
  WordSet s = extendable_factors(c, flen, ctx, search_options(p, o));
  out.observe("constraints", c.describe());
  out.observe("size", std::to_string(s.size()));
  if (p.has("note")) out.observe("note", p.str("note"));
  if (p.has_expect("size")) out.require(s.size() == p.expect_size("size"), "|S| = " + std::to_string(s.size()));
  if (!p.has("reference")) return;

  std::vector<Word> refs;
  const std::size_t ref_len = p.size("reference_prefix", 100000);
  for (const auto& name : split_list(p.str("reference"))) refs.push_back(resolve_word(name, ref_len));
  ClosureOptions closure;
  for (const auto& k : split_list(p.str("closure", ""))) {
    if (k == "complement") closure.complement = true;
    else if (k == "reversal") closure.reversal = true;
    else throw ReproError("unknown closure '" + k + "'");
  }
  auto cmp = compare_factor_sets(s, refs, flen, closure);
  out.observe("reference_size", std::to_string(cmp.reference_size));
  out.observe("missing", std::to_string(cmp.missing.size()));
  out.observe("extra", std::to_string(cmp.extra.size()));
  for (std::size_t i = 0; i < cmp.extra.size() && i < 3; ++i) out.r.witnesses.push_back(std::string(cmp.extra[i].str()));
  const std::string rel = p.expect("relation");
  if (rel == "equal") out.require(cmp.equal(), "S differs from the reference factor set");
  else if (rel == "subset") out.require(cmp.extra.empty(), "S has factors outside the reference");
  else if (rel == "superset") out.require(cmp.missing.empty(), "S misses reference factors");
  else throw ReproError("expect.relation must be equal, subset or superset");
}

void op_transfer(const Params& p, const RunOptions&, Outcome& out) {
  const std::string name = p.str("morphism");
  Morphism m = catalog::load_morphism(name);
  auto cert = verify_transfer(m, ExponentThreshold::parse(p.str("alpha", "2")), ExponentThreshold::parse(p.str("beta")),
                              name, p.size("extra_length", 0));
  out.observe("q", std::to_string(cert.q));
  out.observe("t", fmt_rational(cert.t));
  out.observe("checked_length", std::to_string(cert.checked_length));
  out.observe("words_checked", std::to_string(cert.words_checked));
  out.observe("synchronizing", cert.synchronizing ? "true" : "false");
  const bool want = p.has_expect("pass") ? p.expect("pass") == "true" : true;
  out.require(cert.pass == want, "transfer " + std::string(cert.pass ? "passed" : "failed") + ": " + cert.reason);
  if (cert.failing_word) out.r.witnesses.push_back(std::string(cert.failing_word->str()));
  if (p.has_expect("t")) out.require(cert.t == Rational::parse(p.expect("t")), "t = " + fmt_rational(cert.t));

  SideCondition side;
  side.cal = p.opt_size("side.cal");
  side.can_max = p.opt_size("side.can_max");
  side.can_exact = p.opt_size("side.can_exact");
  if (p.has("side.complemented")) {
    WordSet set;
    for (auto& w : word_list(p.str("side.complemented"))) set.insert(w);
    side.complemented_exact = std::move(set);
  }
  if (p.has("side.forbid")) side.forbidden = word_list(p.str("side.forbid"));
  if (side.cal || side.can_max || side.can_exact || side.complemented_exact || !side.forbidden.empty()) {
    auto rep = verify_image_side_conditions(m, p.size("side.source_len", 5), side);
    out.observe("side_source_words", std::to_string(rep.source_words));
    out.observe("side_complemented", std::to_string(rep.complemented.count()));
    out.observe("side_min_per_image", std::to_string(rep.min_per_image));
    out.require(rep.pass, "side condition failed: " + rep.reason);
  }
}

void op_word_check(const Params& p, const RunOptions&, Outcome& out) {
  Word w = resolve_word(p.str("word"), p.size("prefix", 10000));
  out.observe("length", std::to_string(w.size()));
  if (p.has("free")) {
    auto t = ExponentThreshold::parse(p.str("free"));
    auto v = is_free(w, t);
    const bool want = p.has_expect("free") ? p.expect("free") == "true" : true;
    out.observe("free", v ? "false" : "true");
    if (v) out.r.witnesses.push_back(std::string(v->factor.str()));
    out.require(!v.has_value() == want, "freeness " + t.str() + " is " + (v ? "false" : "true"));
  }
  if (p.has("contains"))
    for (const auto& f : word_list(p.str("contains"))) out.require(w.contains(f), "missing factor " + std::string(f.str()));
  if (p.has("avoids"))
    for (const auto& f : word_list(p.str("avoids"))) out.require(!w.contains(f), "contains " + std::string(f.str()));
  if (p.has_expect("cal")) {
    const std::size_t ell = p.expect_size("cal");
    out.require(cal_ok(w, ell), "a complementary pair of length " + std::to_string(ell) + " occurs");
    if (ell > 1) out.require(!cal_ok(w, ell - 1), "no complementary pair of length " + std::to_string(ell - 1));
  }
  if (p.has_expect("complemented")) {
    auto set = complemented_factors(w);
    out.observe("complemented", std::to_string(set.count()));
    out.require(set.count() == p.expect_size("complemented"), "complemented count " + std::to_string(set.count()));
  }
  if (p.has_expect("prefix"))
    out.require(w.prefix(std::min(w.size(), p.expect("prefix").size())).str() == p.expect("prefix"),
                "prefix differs from the expected display");
}

void op_complexity(const Params& p, const RunOptions&, Outcome& out) {
  FactorIndex idx(resolve_word(p.str("word"), p.size("prefix")));
  const std::size_t max_n = p.size("max_n");
  const std::size_t slope = p.expect_size("slope"), offset = p.expect_size("offset");
  std::size_t bad = 0;
  for (std::size_t n = 1; n <= max_n; ++n)
    if (factor_complexity(idx, n) != slope * n + offset && !bad) bad = n;
  out.observe("checked_upto", std::to_string(max_n));
  out.require(bad == 0, "complexity differs at n = " + std::to_string(bad));
  if (p.has("factors_length")) {
    WordSet want;
    for (auto& w : word_list(p.expect("factors"))) want.insert(w);
    const auto n = p.size("factors_length");
    WordSet got;
    idx.for_each_factor_group(n, [&](std::size_t lo, std::size_t) {
      got.insert(idx.prefix().substr(idx.suffix_array()[lo], n));
    });
    out.require(got == want, "length-" + std::to_string(n) + " factor set differs");
  }
}

Rational max_ratio(const std::vector<BispecialRecord>& survey) {
  Rational m(0);
  for (const auto& r : survey) m = std::max(m, r.ratio);
  return m;
}

void op_survey(const Params& p, const RunOptions& o, Outcome& out) {
  FactorIndex idx(resolve_word(p.str("word"), p.size("prefix")));
  auto survey = bispecial_survey(idx, p.size("max_len"), o.threads);
  const Rational m = max_ratio(survey);
  out.observe("records", std::to_string(survey.size()));
  out.observe("max_ratio", fmt_rational(m));
  out.observe("max_ratio_decimal", fmt_double(m.to_double()));
  if (p.has_expect("max_ratio")) out.require(m == Rational::parse(p.expect("max_ratio")), "max ratio " + m.str());
  if (p.has_expect("max_ratio_min")) out.require(m.to_double() >= p.expect_double("max_ratio_min"), "max ratio too small");
  if (p.has_expect("max_ratio_max")) out.require(m.to_double() <= p.expect_double("max_ratio_max"), "max ratio too large");
  if (p.has_expect("rows")) {
    std::map<std::string, std::string> got;
    for (const auto& r : survey) got[std::string(r.factor.str())] = std::string(r.shortest_return.str());
    for (const auto& row : split_list(p.expect("rows"))) {
      auto slash = row.find('/');
      if (slash == std::string::npos) throw ReproError("rows entries are factor/return");
      const std::string w = row.substr(0, slash), r = row.substr(slash + 1);
      out.require(got.count(w) && got[w] == r, "row " + row + " not reproduced");
    }
  }
  if (p.has_expect("length_pairs")) {
    std::set<std::pair<std::size_t, std::size_t>> shapes;
    for (const auto& r : survey) shapes.emplace(r.factor.size(), r.shortest_return.size());
    for (const auto& pair : split_list(p.expect("length_pairs"))) {
      auto slash = pair.find('/');
      const std::size_t a = std::stoull(pair.substr(0, slash)), b = std::stoull(pair.substr(slash + 1));
      out.require(shapes.contains({a, b}), "no bispecial/return pair with lengths " + pair);
    }
  }
}

void op_cexp(const Params& p, const RunOptions& o, Outcome& out) {
  FactorIndex idx(resolve_word(p.str("word"), p.size("prefix")));
  auto est = critical_exponent_estimate(idx, p.size("max_len"), o.threads);
  out.observe("lower_bound", fmt_rational(est.lower_bound));
  out.observe("lower_bound_decimal", fmt_double(est.lower_bound.to_double()));
  out.observe("record", std::string(est.record.factor.str()));
  out.observe("record_return", std::string(est.record.shortest_return.str()));
  if (p.has_expect("exact"))
    out.require(est.lower_bound == Rational::parse(p.expect("exact")), "estimate " + est.lower_bound.str());
  if (p.has_expect("min")) out.require(est.lower_bound.to_double() >= p.expect_double("min"), "estimate below band");
  if (p.has_expect("max")) out.require(est.lower_bound.to_double() <= p.expect_double("max"), "estimate above band");
}

void op_recurrence(const Params& p, const RunOptions&, Outcome& out) {
  auto values = image_length_sequence(catalog::morphism(p.str("outer")), catalog::morphism(p.str("base", "phi")),
                                      Word(p.str("seed"), 3), p.size("count"));
  auto check = recurrence_verify(values, p.str("name", p.str("outer")));
  std::string init;
  for (auto v : check.initial) init += (init.empty() ? "" : ",") + std::to_string(v);
  out.observe("initial", init);
  out.observe("verified_upto", std::to_string(check.verified_upto));
  out.require(check.ok, "recurrence breaks at index " + std::to_string(check.failed_index.value_or(0)));
  if (p.has_expect("initial")) out.require(init == p.expect("initial"), "initial values " + init);
}

void op_root(const Params& p, const RunOptions&, Outcome& out) {
  std::vector<std::int64_t> coeffs;
  for (const auto& c : split_list(p.str("coefficients"))) coeffs.push_back(std::stoll(c));
  auto root = characteristic_root(coeffs);
  const long double b = root.value;
  long double residual = 0;
  for (auto c : coeffs) residual = residual * b + c;
  residual = std::fabs(residual);
  out.observe("root", fmt_double(static_cast<double>(b), 17));
  out.observe("residual", fmt_double(static_cast<double>(residual), 3));
  out.require(residual < p.expect_double("residual_max"), "residual too large");
  if (p.has_expect("gamma")) {
    const long double g = 2 + 1 / (b * b - 1);
    out.observe("gamma", fmt_double(static_cast<double>(g), 17));
    out.require(std::fabs(static_cast<double>(g) - p.expect_double("gamma")) <= p.expect_double("gamma_tol"),
                "2 + 1/(root^2 - 1) outside tolerance");
  }
}

void op_families(const Params& p, const RunOptions& o, Outcome& out) {
  FactorIndex idx(catalog::word_prefix("p", p.size("prefix")));
  const std::size_t max_len = p.size("max_len");
  WordSet found, families;
  for (const auto& r : bispecial_survey(idx, max_len, o.threads)) found.insert(r.factor);
  for (auto f : {PhiFamily::A, PhiFamily::B, PhiFamily::C, PhiFamily::D})
    for (unsigned n = 0;; ++n) {
      Word w = phi_bispecial(f, n);
      if (w.size() > max_len) break;
      families.insert(w);
    }
  out.observe("bispecials", std::to_string(found.size()));
  out.observe("family_members", std::to_string(families.size()));
  out.require(found == families, "bispecial factors differ from the four families");
  const Morphism phi = catalog::morphism("phi");
  for (unsigned n = 0; n <= p.size("return_parikh_upto", 0); ++n) {
    Word ret = shortest_return_word(idx, phi_bispecial(PhiFamily::C, n));
    out.require(parikh_vector(ret) == parikh_vector(phi.power(Word("01", 3), 2 * n)),
                "C-family return word Parikh vector differs at n = " + std::to_string(n));
  }
}

void op_family_ratios(const Params& p, const RunOptions&, Outcome& out) {
  auto want = split_list(p.expect("values"));
  const double tol = p.expect_double("tolerance");
  auto x = image_length_sequence(catalog::morphism(p.str("outer", "xi")), catalog::morphism("phi"), Word("012", 3),
                                 2 * want.size() + 1);
  std::int64_t sum = 6;
  std::string got;
  for (std::size_t n = 1; n <= want.size(); ++n) {
    const std::int64_t den = x[2 * n - 1];
    sum += den;
    const double v = static_cast<double>(sum) / static_cast<double>(den);
    got += (got.empty() ? "" : ",") + std::to_string(sum) + "/" + std::to_string(den);
    out.require(std::fabs(v - std::stod(want[n - 1])) <= tol, "A_" + std::to_string(n) + " = " + fmt_double(v));
  }
  out.observe("ratios", got);
}

void op_thue_morse(const Params& p, const RunOptions&, Outcome& out) {
  Morphism mu = catalog::morphism("mu");
  const std::size_t max_n = p.size("max_n");
  for (unsigned n = 1; n <= max_n; ++n) {
    Word prefix = mu.fixed_point_prefix(0, std::size_t{1} << (n + 1));
    Word a = mu.power(Word("0"), n - 1), b = mu.power(Word("1"), n - 1);
    out.require(prefix.contains(a) && prefix.contains(b) && complement(a) == b,
                "complementary blocks fail at n = " + std::to_string(n));
  }
  out.observe("largest_pair_length", std::to_string(std::size_t{1} << (max_n - 1)));
}

using OpFn = std::function<void(const Params&, const RunOptions&, Outcome&)>;

const std::map<std::string, OpFn>& op_table() {
  static const std::map<std::string, OpFn> table = {
      {"search.longest", op_search_longest},   {"search.count", op_search_count},
      {"search.factors", op_search_factors},   {"transfer.verify", op_transfer},
      {"word.check", op_word_check},           {"analysis.complexity", op_complexity},
      {"analysis.survey", op_survey},          {"analysis.cexp", op_cexp},
      {"analysis.recurrence", op_recurrence},  {"analysis.root", op_root},
      {"analysis.families", op_families},      {"analysis.family_ratios", op_family_ratios},
      {"thue_morse.pairs", op_thue_morse},
  };
  return table;
}

int status_rank(const std::string& s) {
  if (s == "fail") return 0;
  if (s == "error") return 1;
  if (s == "pass") return 2;
  return 3;
}

}  // namespace

const std::vector<std::string>& operations() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : op_table()) v.push_back(k);
    return v;
  }();
  return names;
}

std::vector<Task> parse_tasks(std::string_view text, const std::string& origin) {
  std::vector<Task> tasks;
  std::set<std::string> ids;
  std::istringstream in{std::string(text)};
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    const std::string where = origin + ":" + std::to_string(lineno);
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string::npos) throw ReproError(where + ": expected key = value");
    std::string key = trim(t.substr(0, eq)), value = trim(t.substr(eq + 1));
    if (key.empty()) throw ReproError(where + ": empty key");
    if (key == "id") {
      if (value.empty()) throw ReproError(where + ": empty id");
      if (!ids.insert(value).second) throw ReproError(where + ": duplicate id " + value);
      tasks.push_back(Task{});
      tasks.back().id = value;
      tasks.back().source = where;
      continue;
    }
    if (tasks.empty()) throw ReproError(where + ": '" + key + "' before the first id");
    Task& task = tasks.back();
    if (key == "op") {
      if (!op_table().count(value)) throw ReproError(where + ": unknown op '" + value + "'");
      task.op = value;
    } else if (key == "tier") {
      if (value != "default" && value != "full") throw ReproError(where + ": tier must be default or full");
      task.tier = value;
    } else if (key == "provenance") {
      if (value != "paper" && !value.starts_with("derived:")) throw ReproError(where + ": provenance must be paper or derived:<oracle>");
      task.provenance = value;
    } else if (key.starts_with("expect.")) {
      if (!task.expect.emplace(key.substr(7), value).second) throw ReproError(where + ": repeated key " + key);
    } else if (!task.params.emplace(key, value).second) {
      throw ReproError(where + ": repeated key " + key);
    }
  }
  for (const auto& t : tasks) {
    if (t.op.empty()) throw ReproError(t.source + ": task " + t.id + " has no op");
    if (t.provenance.empty()) throw ReproError(t.source + ": task " + t.id + " has no provenance");
    if (t.expect.empty()) throw ReproError(t.source + ": task " + t.id + " has no expectations");
  }
  return tasks;
}

std::vector<Task> load_tasks(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ReproError("cannot read " + path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  return parse_tasks(text, path);
}

bool Report::ok() const {
  return std::none_of(tasks.begin(), tasks.end(),
                      [](const Result& r) { return r.status == "fail" || r.status == "error"; });
}

Result run_task(const Task& task, const RunOptions& options) {
  Result r;
  r.id = task.id;
  r.op = task.op;
  r.tier = task.tier;
  r.provenance = task.provenance;
  if (task.tier == "full" && !options.full) {
    r.status = "skipped";
    r.message = "full tier; pass --full to run";
    return r;
  }
  Outcome out{r};
  try {
    op_table().at(task.op)(Params(task), options, out);
    r.status = out.ok ? "pass" : "fail";
  } catch (const std::exception& e) {
    r.status = "error";
    r.message = e.what();
  }
  return r;
}

Report run_tasks(const std::vector<Task>& tasks, const RunOptions& options) {
  std::vector<const Task*> selected;
  if (options.only.empty()) {
    for (const auto& t : tasks) selected.push_back(&t);
  } else {
    for (const auto& id : options.only) {
      auto it = std::find_if(tasks.begin(), tasks.end(), [&](const Task& t) { return t.id == id; });
      if (it == tasks.end()) throw ReproError("unknown task id " + id);
      selected.push_back(&*it);
    }
  }

  std::vector<Result> results(selected.size());
  std::vector<double> seconds(selected.size(), 0);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < selected.size();) {
      auto start = std::chrono::steady_clock::now();
      results[i] = run_task(*selected[i], options);
      seconds[i] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(selected.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  Report report;
  const std::time_t now = std::time(nullptr);
  char stamp[32];
  std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  report.run["timestamp"] = stamp;
  report.run["tier"] = options.full ? "full" : "default";
  std::ostringstream timings;
  for (std::size_t i = 0; i < selected.size(); ++i)
    timings << (i ? "," : "") << selected[i]->id << "=" << std::fixed << std::setprecision(3) << seconds[i];
  report.run["seconds"] = timings.str();

  std::vector<std::size_t> order(results.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return status_rank(results[a].status) < status_rank(results[b].status);
  });
  for (auto i : order) report.tasks.push_back(std::move(results[i]));
  return report;
}

std::string emit_report(const Report& report) {
  using nlohmann::ordered_json;
  ordered_json doc;
  doc["run"] = ordered_json::object();
  for (const auto& [k, v] : report.run) doc["run"][k] = v;
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& t : report.tasks) ++counts[status_rank(t.status)];
  doc["summary"] = {{"ok", report.ok()},       {"failed", counts[0]}, {"errors", counts[1]},
                    {"passed", counts[2]},     {"skipped", counts[3]}};
  doc["tasks"] = ordered_json::array();
  for (const auto& t : report.tasks) {
    ordered_json j;
    j["id"] = t.id;
    j["status"] = t.status;
    j["op"] = t.op;
    j["tier"] = t.tier;
    j["provenance"] = t.provenance;
    j["message"] = t.message;
    j["observed"] = ordered_json::object();
    for (const auto& [k, v] : t.observed) j["observed"][k] = v;
    j["witnesses"] = t.witnesses;
    doc["tasks"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

Report parse_report(std::string_view text) {
  using nlohmann::ordered_json;
  Report report;
  try {
    auto doc = ordered_json::parse(text);
    for (const auto& [k, v] : doc.at("run").items()) report.run[k] = v.get<std::string>();
    for (const auto& j : doc.at("tasks")) {
      Result r;
      r.id = j.at("id").get<std::string>();
      r.status = j.at("status").get<std::string>();
      r.op = j.at("op").get<std::string>();
      r.tier = j.at("tier").get<std::string>();
      r.provenance = j.at("provenance").get<std::string>();
      r.message = j.at("message").get<std::string>();
      for (const auto& [k, v] : j.at("observed").items()) r.observed.emplace_back(k, v.get<std::string>());
      r.witnesses = j.at("witnesses").get<std::vector<std::string>>();
      report.tasks.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ReproError(std::string("malformed report: ") + e.what());
  }
  return report;
}

}  // namespace compavoid::repro
