// compavoid: command-line front end for the verification library.

#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "compavoid/analysis.hpp"
#include "compavoid/catalog.hpp"
#include "compavoid/complement.hpp"
#include "compavoid/freeness.hpp"
#include "compavoid/search.hpp"
#include "compavoid/transfer.hpp"
#include "repro.hpp"

using namespace compavoid;
using json = nlohmann::ordered_json;

namespace {

struct Globals {
  bool json = false;
  unsigned jobs = 0;  // 0 = hardware concurrency
  unsigned threads() const { return jobs ? jobs : std::max(1u, std::thread::hardware_concurrency()); }
};

std::string rat(const Rational& r) { return r.den() == 1 ? std::to_string(r.num()) : r.str(); }

json words_json(const std::vector<Word>& ws, std::size_t limit = SIZE_MAX) {
  json a = json::array();
  for (std::size_t i = 0; i < ws.size() && i < limit; ++i) a.push_back(std::string(ws[i].str()));
  return a;
}

void print_text(const json& j, const std::string& indent = "") {
  for (const auto& [k, v] : j.items()) {
    if (v.is_object()) {
      std::cout << indent << k << ":\n";
      print_text(v, indent + "  ");
    } else if (v.is_array()) {
      std::cout << indent << k << ": (" << v.size() << ")\n";
      for (const auto& e : v) {
        if (e.is_object()) {
          std::string line;
          for (const auto& [ek, ev] : e.items()) line += (line.empty() ? "" : "  ") + ek + "=" + (ev.is_string() ? ev.get<std::string>() : ev.dump());
          std::cout << indent << "  " << line << "\n";
        } else {
          std::cout << indent << "  " << (e.is_string() ? e.get<std::string>() : e.dump()) << "\n";
        }
      }
    } else {
      std::cout << indent << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
  }
}

int emit(const Globals& g, const json& j, bool pass) {
  if (g.json) std::cout << j.dump(2) << "\n";
  else print_text(j);
  return pass ? 0 : 1;
}

Word load_word(const std::string& spec, std::size_t prefix) {
  if (!spec.empty() && spec.find_first_not_of("012") == std::string::npos) return Word(spec);
  std::ifstream in(spec);
  if (in) {
    std::string s, text;
    while (in >> s) text += s;
    return Word(text);
  }
  return catalog::word_prefix(spec, prefix);
}

std::vector<Word> read_word_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::vector<Word> out;
  std::string s;
  while (in >> s)
    if (s[0] != '#') out.emplace_back(s, 2);
  return out;
}

/// Constraint flags shared by `check` and `search`.
struct ConstraintFlags {
  std::string free;
  std::optional<std::size_t> cal, can;
  std::vector<std::string> forbid;
  std::string forbid_file;

  void add(CLI::App* app) {
    app->add_option("--free", free, "repetition threshold, e.g. 5/2 (strict) or 5/2+ (inclusive)");
    app->add_option("--cal", cal, "no complementary pair of length >= L");
    app->add_option("--can", can, "at most N complemented factors");
    app->add_option("--forbid", forbid, "forbidden factors");
    app->add_option("--forbid-file", forbid_file, "file of forbidden factors, whitespace separated");
  }
  ConstraintSet build() const {
    ConstraintSet c;
    if (!free.empty()) c.freeness = ExponentThreshold::parse(free);
    c.cal = cal;
    c.can = can;
    for (const auto& f : forbid) c.forbidden.emplace_back(f, 2);
    if (!forbid_file.empty())
      for (auto& w : read_word_file(forbid_file)) c.forbidden.push_back(std::move(w));
    c.validate();
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repetition and complement avoidance in binary words"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_option("--jobs,-j", g.jobs, "worker threads (default: all cores)");
  std::function<int()> action;

  // check ------------------------------------------------------------------
  auto* check = app.add_subcommand("check", "report exponents and complement data of one word");
  std::string check_word;
  std::size_t check_prefix = 1000;
  ConstraintFlags check_flags;
  check->add_option("word", check_word, "literal word, file, or catalog word name")->required();
  check->add_option("--prefix", check_prefix, "prefix length for catalog words");
  check_flags.add(check);
  check->callback([&] {
    action = [&] {
      Word w = load_word(check_word, check_prefix);
      ConstraintSet c = check_flags.build();
      json j;
      j["length"] = w.size();
      if (w.size() <= 200) j["word"] = std::string(w.str());
      if (!w.empty()) {
        j["smallest_period"] = smallest_period(w);
        j["exponent"] = rat(exponent(w));
        auto ce = critical_exponent_finite(w);
        j["critical_exponent"] = rat(ce.value);
        j["critical_witness"] = std::string(ce.witness.str());
        j["critical_position"] = ce.position;
      }
      if (w.alphabet_size() == 2) {
        auto set = complemented_factors(w);
        j["complemented"] = set.count();
        j["longest_complementary_pair"] = set.max_length();
      }
      bool pass = true;
      if (!c.empty()) {
        if (c.freeness) {
          auto v = is_free(w, *c.freeness);
          j["freeness"] = v ? "violated by " + std::string(v->factor.str()) + " at " + std::to_string(v->position)
                            : "ok";
        }
        pass = satisfies(w, c);
        j["constraints"] = c.describe();
        j["pass"] = pass;
      }
      return emit(g, j, pass);
    };
  });

  // search -----------------------------------------------------------------
  auto* search = app.add_subcommand("search", "exhaustive backtracking searches");
  search->require_subcommand(1);
  ConstraintFlags sflags;
  SearchOptions sopt;
  std::size_t cap = 400, length = 0, flen = 0, context = 0, ref_prefix = 100000;
  bool profile = false, symmetric_off = false;
  std::vector<std::string> references, closure;
  auto common = [&](CLI::App* sub) {
    sflags.add(sub);
    sub->add_option("--split-depth", sopt.split_depth, "prefix depth of parallel work units");
    sub->add_flag("--no-symmetry", symmetric_off, "do not use complement symmetry");
  };
  auto* longest = search->add_subcommand("longest", "longest word satisfying the constraints");
  common(longest);
  longest->add_option("--cap", cap, "stop once a word of this length is found");
  longest->add_option("--max-witnesses", sopt.max_witnesses, "longest words to keep");
  auto* count = search->add_subcommand("count", "number of words of a given length");
  common(count);
  count->add_option("--length", length, "word length")->required();
  count->add_flag("--profile", profile, "counts for every length up to --length");
  auto* fac = search->add_subcommand("factors", "middle factors of long words satisfying the constraints");
  common(fac);
  fac->add_option("--flen", flen, "factor length")->required();
  fac->add_option("--context", context, "context length on each side")->required();
  fac->add_option("--reference", references, "compare with factors of these words");
  fac->add_option("--reference-prefix", ref_prefix, "prefix length for reference words");
  fac->add_option("--closure", closure, "close the reference under: complement, reversal");
  auto prepare = [&] {
    sopt.threads = g.threads();
    sopt.no_symmetry = symmetric_off;
    return sflags.build();
  };
  longest->callback([&] {
    action = [&] {
      auto c = prepare();
      auto r = longest_word(c, cap, sopt);
      json j;
      j["constraints"] = c.describe();
      j["result"] = r.kind == SearchOutcome::Kind::Exhausted ? "exhausted" : "cap reached";
      if (r.kind == SearchOutcome::Kind::Exhausted) j["max_length"] = r.max_length;
      else j["cap"] = r.cap;
      j["witness_count"] = r.witnesses.size();
      j["witnesses_truncated"] = r.witnesses_truncated;
      j["witnesses"] = words_json(r.witnesses, g.json ? SIZE_MAX : 10);
      j["nodes_visited"] = r.nodes_visited;
      return emit(g, j, true);
    };
  });
  count->callback([&] {
    action = [&] {
      auto c = prepare();
      json j;
      j["constraints"] = c.describe();
      if (profile) {
        json counts = json::array();
        for (auto n : count_profile(c, length, sopt)) counts.push_back(n);
        j["counts"] = counts;
      } else {
        j["length"] = length;
        j["count"] = count_words(c, length, sopt);
      }
      return emit(g, j, true);
    };
  });
  fac->callback([&] {
    action = [&] {
      auto c = prepare();
      auto s = extendable_factors(c, flen, context, sopt);
      json j;
      j["constraints"] = c.describe();
      j["flen"] = flen;
      j["context"] = context;
      j["size"] = s.size();
      std::vector<Word> list(s.begin(), s.end());
      j["factors"] = words_json(list, g.json ? SIZE_MAX : 20);
      bool pass = true;
      if (!references.empty()) {
        std::vector<Word> refs;
        for (const auto& r : references) refs.push_back(load_word(r, ref_prefix));
        ClosureOptions opt;
        for (const auto& k : closure) {
          if (k == "complement") opt.complement = true;
          else if (k == "reversal") opt.reversal = true;
          else throw std::invalid_argument("unknown closure " + k);
        }
        auto cmp = compare_factor_sets(s, refs, flen, opt);
        j["reference_size"] = cmp.reference_size;
        j["equal"] = cmp.equal();
        j["missing"] = words_json(cmp.missing, 20);
        j["extra"] = words_json(cmp.extra, 20);
        pass = cmp.equal();
      }
      return emit(g, j, pass);
    };
  });

  // transfer ---------------------------------------------------------------
  auto* transfer = app.add_subcommand("transfer", "uniform-morphism transfer certificates");
  transfer->require_subcommand(1);
  auto* tverify = transfer->add_subcommand("verify", "check the hypotheses and the finite condition");
  std::string morphism, alpha = "2", beta;
  std::size_t extra_length = 0, side_len = 5;
  SideCondition side;
  std::vector<std::string> side_set;
  tverify->add_option("--morphism", morphism, "catalog name or morphism file")->required();
  tverify->add_option("--alpha", alpha, "source threshold");
  tverify->add_option("--beta", beta, "target threshold")->required();
  tverify->add_option("--extra-length", extra_length, "also check lengths beyond ceil(t)");
  tverify->add_option("--side-cal", side.cal, "images of source words have no complementary pair this long");
  tverify->add_option("--side-can-max", side.can_max, "at most this many complemented factors");
  tverify->add_option("--side-can-exact", side.can_exact, "exactly this many complemented factors");
  tverify->add_option("--side-complemented", side_set, "complemented set equals these words");
  tverify->add_option("--side-source-len", side_len, "source word length for side conditions");
  tverify->callback([&] {
    action = [&] {
      Morphism m = catalog::load_morphism(morphism);
      auto cert = verify_transfer(m, ExponentThreshold::parse(alpha), ExponentThreshold::parse(beta), morphism,
                                  extra_length);
      json j;
      j["morphism"] = cert.morphism_name;
      j["alpha"] = cert.alpha.str();
      j["beta"] = cert.beta.str();
      j["q"] = cert.q;
      j["t"] = rat(cert.t);
      j["checked_length"] = cert.checked_length;
      j["words_checked"] = cert.words_checked;
      j["uniform"] = cert.uniform;
      j["synchronizing"] = cert.synchronizing;
      j["pass"] = cert.pass;
      j["reason"] = cert.reason;
      if (cert.failing_word) j["failing_word"] = std::string(cert.failing_word->str());
      if (cert.failing_factor) j["failing_factor"] = std::string(cert.failing_factor->factor.str());
      bool pass = cert.pass;
      if (!side_set.empty()) {
        WordSet s;
        for (const auto& w : side_set) s.emplace(w, 2);
        side.complemented_exact = s;
      }
      if (side.cal || side.can_max || side.can_exact || side.complemented_exact) {
        auto rep = verify_image_side_conditions(m, side_len, side);
        json sj;
        sj["source_length"] = side_len;
        sj["source_words"] = rep.source_words;
        sj["complemented"] = rep.complemented.count();
        sj["min_per_image"] = rep.min_per_image;
        sj["pass"] = rep.pass;
        sj["reason"] = rep.reason;
        if (rep.witness_source) sj["witness_source"] = std::string(rep.witness_source->str());
        j["side_conditions"] = sj;
        pass = pass && rep.pass;
      }
      return emit(g, j, pass);
    };
  });

  // analyze ----------------------------------------------------------------
  auto* analyze = app.add_subcommand("analyze", "factor statistics of infinite words");
  analyze->require_subcommand(1);
  std::string word_name;
  std::size_t prefix = 100000, max_len = 100, n_len = 1;
  std::optional<std::size_t> reliable;
  std::string factor;
  auto aopts = [&](CLI::App* sub) {
    sub->add_option("--word", word_name, "catalog word, e.g. p, psi-of-p, sturmian:0,3,1")->required();
    sub->add_option("--prefix", prefix, "prefix length to index");
    sub->add_option("--reliable-length", reliable, "override the reliable factor length");
  };
  auto index = [&] {
    IndexOptions o;
    o.reliable_length = reliable;
    return FactorIndex(load_word(word_name, prefix), o);
  };
  auto* comp = analyze->add_subcommand("complexity", "number of factors of each length");
  aopts(comp);
  comp->add_option("--max-len", max_len, "largest length");
  comp->callback([&] {
    action = [&] {
      auto idx = index();
      json counts = json::array();
      for (std::size_t n = 1; n <= max_len; ++n) counts.push_back(factor_complexity(idx, n));
      json j;
      j["word"] = word_name;
      j["prefix"] = idx.size();
      j["complexity"] = counts;
      return emit(g, j, true);
    };
  });
  auto* bis = analyze->add_subcommand("bispecials", "bispecial factors with shortest return words");
  aopts(bis);
  bis->add_option("--max-len", max_len, "longest factor surveyed");
  bis->callback([&] {
    action = [&] {
      auto idx = index();
      json rows = json::array();
      for (const auto& r : bispecial_survey(idx, max_len, g.threads())) {
        json row;
        row["factor"] = std::string(r.factor.str());
        row["left"] = r.left_extensions;
        row["right"] = r.right_extensions;
        row["return"] = std::string(r.shortest_return.str());
        row["ratio"] = rat(r.ratio);
        rows.push_back(row);
      }
      json j;
      j["word"] = word_name;
      j["prefix"] = idx.size();
      j["max_len"] = max_len;
      j["records"] = rows;
      return emit(g, j, true);
    };
  });
  auto* ret = analyze->add_subcommand("returns", "return words to a factor");
  aopts(ret);
  ret->add_option("--factor", factor, "the factor")->required();
  ret->callback([&] {
    action = [&] {
      auto idx = index();
      Word w(factor, idx.prefix().alphabet_size());
      auto set = return_words(idx, w);
      json j;
      j["factor"] = factor;
      j["occurrences"] = idx.occurrences(w).size();
      j["shortest"] = std::string(shortest_return_word(idx, w).str());
      j["return_words"] = words_json(std::vector<Word>(set.begin(), set.end()));
      return emit(g, j, true);
    };
  });
  auto* cexp = analyze->add_subcommand("cexp", "critical exponent lower bound from bispecial factors");
  aopts(cexp);
  cexp->add_option("--max-len", max_len, "longest factor surveyed");
  cexp->callback([&] {
    action = [&] {
      auto idx = index();
      auto e = critical_exponent_estimate(idx, max_len, g.threads());
      json j;
      j["word"] = word_name;
      j["prefix"] = idx.size();
      j["lower_bound"] = rat(e.lower_bound);
      j["lower_bound_decimal"] = e.lower_bound.to_double();
      j["factor"] = std::string(e.record.factor.str());
      j["return"] = std::string(e.record.shortest_return.str());
      return emit(g, j, true);
    };
  });

  // repro ------------------------------------------------------------------
  auto* repro_cmd = app.add_subcommand("repro", "replay the bundled task files");
  std::vector<std::string> files;
  std::vector<std::string> only;
  std::string out_path;
  bool full = false, list = false;
  repro_cmd->add_option("files", files, "task files (*.cfg)")->required();
  repro_cmd->add_flag("--full", full, "also run the long full-tier tasks");
  repro_cmd->add_option("--task", only, "run only these task ids");
  repro_cmd->add_option("--out", out_path, "write the JSON report here");
  repro_cmd->add_flag("--list", list, "list tasks without running them");
  repro_cmd->callback([&] {
    action = [&] {
      std::vector<repro::Task> tasks;
      for (const auto& f : files)
        for (auto& t : repro::load_tasks(f)) tasks.push_back(std::move(t));
      if (list) {
        for (const auto& t : tasks) std::cout << t.id << "  " << t.op << "  " << t.tier << "  " << t.provenance << "\n";
        return 0;
      }
      repro::RunOptions o;
      o.full = full;
      o.only = only;
      o.jobs = g.jobs ? g.jobs : 1;
      o.threads = std::max(1u, g.threads() / o.jobs);
      auto report = repro::run_tasks(tasks, o);
      const std::string doc = repro::emit_report(report);
      if (!out_path.empty()) std::ofstream(out_path) << doc;
      if (g.json) {
        std::cout << doc;
      } else {
        for (const auto& r : report.tasks) {
          std::cout << (r.status == "pass" ? "PASS " : r.status == "skipped" ? "SKIP " : r.status == "fail" ? "FAIL " : "ERR  ")
                    << r.id;
          if (!r.message.empty()) std::cout << "  (" << r.message << ")";
          std::cout << "\n";
        }
        std::cout << (report.ok() ? "all tasks passed" : "some tasks failed") << "\n";
      }
      return report.ok() ? 0 : 1;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  try {
    return action ? action() : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
