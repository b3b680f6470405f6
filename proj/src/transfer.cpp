#include "compavoid/transfer.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace compavoid {

Rational lemma_t(const Rational& a, const Rational& b, std::int64_t q) {
  const Rational one(1);
  if (!(one < a && a < b)) throw std::domain_error("lemma_t needs 1 < a < b");
  if (q < 1) throw std::domain_error("lemma_t needs q >= 1");
  const Rational two(2);
  Rational first = two * b / (b - a);
  Rational second = two * Rational(q - 1) * (two * b - one) / (Rational(q) * (b - one));
  return std::max(first, second);
}

void for_each_free_word(int alphabet_size, const ExponentThreshold& t, std::size_t max_len,
                        const std::function<bool(const Word&)>& visit) {
  if (max_len == 0) return;
  StreamChecker checker(t, alphabet_size);
  Word current(std::string_view{}, alphabet_size);
  bool stop = false;
  auto rec = [&](auto&& self) -> void {
    for (int s = 0; s < alphabet_size && !stop; ++s) {
      bool ok = !checker.append(s).has_value();
      if (ok) {
        current.push_back(s);
        if (!visit(current)) stop = true;
        if (!stop && current.size() < max_len) self(self);
        current.pop_back();
      }
      checker.retract();
    }
  };
  rec(rec);
}

std::vector<Word> enumerate_free_words(int alphabet_size, const ExponentThreshold& t,
                                       std::size_t max_len) {
  std::vector<Word> out;
  for_each_free_word(alphabet_size, t, max_len, [&](const Word& w) {
    out.push_back(w);
    return true;
  });
  std::sort(out.begin(), out.end(), [](const Word& a, const Word& b) { return a.str() < b.str(); });
  return out;
}

TransferCertificate verify_transfer(const Morphism& m, const ExponentThreshold& alpha,
                                    const ExponentThreshold& beta, std::string name,
                                    std::size_t extra_length) {
  TransferCertificate cert;
  cert.morphism_name = std::move(name);
  cert.alpha = alpha;
  cert.beta = beta;
  auto q = m.uniform_length();
  cert.uniform = q.has_value();
  if (!q) {
    cert.reason = "morphism is not uniform";
    return cert;
  }
  cert.q = *q;
  cert.synchronizing = m.is_synchronizing();
  cert.t = lemma_t(alpha.value, beta.value, static_cast<std::int64_t>(*q));
  cert.checked_length = static_cast<std::size_t>(cert.t.ceil());
  if (!cert.synchronizing) {
    cert.reason = "morphism is not synchronizing";
    return cert;
  }

  const std::size_t max_len = cert.checked_length + extra_length;
  const int k = m.source_alphabet_size();
  StreamChecker source(alpha, k);
  StreamChecker image(beta, m.target_alphabet_size());
  Word current(std::string_view{}, k);
  bool failed = false;
  auto rec = [&](auto&& self) -> void {
    for (int s = 0; s < k && !failed; ++s) {
      if (!source.append(s)) {
        current.push_back(s);
        ++cert.words_checked;
        const Word& img = m.image(s);
        for (std::size_t i = 0; i < img.size(); ++i) image.append(img[i]);
        if (!image.ok()) {
          failed = true;
          cert.failing_word = current;
          cert.failing_factor = is_free(m.apply(current), beta);
        } else if (current.size() < max_len) {
          self(self);
        }
        for (std::size_t i = 0; i < img.size(); ++i) image.retract();
        current.pop_back();
      }
      source.retract();
    }
  };
  rec(rec);
  cert.pass = !failed;
  if (failed) cert.reason = "image of " + std::string(cert.failing_word->str()) + " is not " + beta.str() + "-free";
  return cert;
}

SideConditionReport verify_image_side_conditions(const Morphism& m, std::size_t source_len,
                                                 const SideCondition& condition,
                                                 const ExponentThreshold& source_threshold) {
  SideConditionReport report;
  std::vector<Word> sources;
  for_each_free_word(m.source_alphabet_size(), source_threshold, source_len, [&](const Word& w) {
    if (w.size() == source_len) sources.push_back(w);
    return true;
  });
  report.source_words = sources.size();
  std::vector<Word> images;
  images.reserve(sources.size());
  for (const auto& w : sources) images.push_back(m.apply(w));

  report.complemented = complemented_factors(images);
  report.min_per_image = std::numeric_limits<std::size_t>::max();
  for (const auto& img : images)
    report.min_per_image = std::min(report.min_per_image, complemented_factors(img).count());
  if (images.empty()) report.min_per_image = 0;

  auto locate = [&](const Word& factor) {
    for (std::size_t i = 0; i < images.size(); ++i)
      if (images[i].contains(factor)) return std::optional<Word>(sources[i]);
    return std::optional<Word>();
  };
  auto fail = [&](std::string reason, std::optional<Word> factor) {
    report.pass = false;
    report.reason = std::move(reason);
    report.witness_factor = factor;
    if (factor) report.witness_source = locate(*factor);
    return report;
  };

  const auto& comp = report.complemented;
  if (condition.cal) {
    for (const auto& x : comp.members)
      if (x.size() >= *condition.cal)
        return fail("complementary pair of length " + std::to_string(x.size()), x);
  }
  if (condition.can_max && comp.count() > *condition.can_max)
    return fail("union has " + std::to_string(comp.count()) + " complemented words", std::nullopt);
  if (condition.can_exact &&
      (comp.count() != *condition.can_exact || report.min_per_image != *condition.can_exact))
    return fail("complemented count ranges over [" + std::to_string(report.min_per_image) + ", " +
                    std::to_string(comp.count()) + "]",
                std::nullopt);
  if (condition.complemented_exact) {
    const auto& want = *condition.complemented_exact;
    for (const auto& x : comp.members)
      if (!want.contains(x)) return fail("unexpected complemented word", x);
    if (comp.members != want || report.min_per_image != want.size())
      return fail("some expected complemented word is missing from an image", std::nullopt);
  }
  for (const auto& f : condition.forbidden)
    for (std::size_t i = 0; i < images.size(); ++i)
      if (images[i].contains(f)) {
        report.witness_source = sources[i];
        report.witness_factor = f;
        report.reason = "forbidden factor present";
        return report;
      }
  report.pass = true;
  return report;
}

}  // namespace compavoid
