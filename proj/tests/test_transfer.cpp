#include <doctest.h>

#include <stdexcept>

#include "compavoid/catalog.hpp"
#include "compavoid/transfer.hpp"
#include "oracles.hpp"

using namespace compavoid;
using catalog::morphism;

namespace {
ExponentThreshold th(const char* s) { return ExponentThreshold::parse(s); }
}  // namespace

TEST_CASE("lemma t") {
  CHECK(lemma_t(Rational(2), Rational(3), 17) == Rational(6));
  CHECK_THROWS_AS(lemma_t(Rational(2), Rational(2), 17), std::domain_error);
  CHECK(lemma_t(Rational(2), Rational(3), 36) == Rational(6));
  CHECK_THROWS_AS(lemma_t(Rational(1), Rational(3), 2), std::domain_error);
  CHECK_THROWS_AS(lemma_t(Rational(2), Rational(3), 0), std::domain_error);
  CHECK(lemma_t(Rational(2), Rational(7, 3), 69) == Rational(14));
  CHECK(lemma_t(Rational(2), Rational(29, 11), 84) == Rational(58, 7));
}

TEST_CASE("enumerate free words") {
  auto count_len = [](const std::vector<Word>& ws, std::size_t n) {
    return std::count_if(ws.begin(), ws.end(), [&](const Word& w) { return w.size() == n; });
  };
  auto tern = enumerate_free_words(3, th("2"), 7);
  for (std::size_t n = 1; n <= 7; ++n) {
    long oracle_count = 0;
    for (const auto& w : oracle::all_words(3, n)) oracle_count += oracle::is_free(w, 2, 1, false);
    CHECK(count_len(tern, n) == oracle_count);
  }
  CHECK(count_len(tern, 1) == 3);
  CHECK(count_len(tern, 2) == 6);
  CHECK(count_len(tern, 3) == 12);
  CHECK(enumerate_free_words(2, th("2"), 6).size() == 2 + 2 + 2);
  CHECK(count_len(enumerate_free_words(2, th("2"), 6), 4) == 0);
  CHECK(enumerate_free_words(3, th("2"), 0).empty());
  // Lexicographic order.
  CHECK(tern.front() == Word("0", 3));
}

TEST_CASE("transfer certificates") {
  auto h1 = verify_transfer(morphism("h1"), th("2"), th("3+"), "h1");
  CHECK(h1.pass);
  CHECK(h1.t == Rational(6));
  CHECK(h1.checked_length == 6);
  CHECK(h1.q == 17);

  auto h69 = verify_transfer(morphism("h69"), th("2"), th("7/3+"), "h69");
  CHECK(h69.pass);

  // Flip a bit of h1(0) to create 0000.
  auto images = morphism("h1").images();
  std::string corrupted(images[0].str());
  REQUIRE(corrupted.substr(0, 4) == "0100");
  corrupted[1] = '0';
  images[0] = Word(corrupted);
  auto bad = verify_transfer(Morphism(images), th("2"), th("3+"), "corrupted");
  CHECK_FALSE(bad.pass);
  REQUIRE(bad.failing_word.has_value());
  REQUIRE(bad.failing_factor.has_value());
  CHECK(is_free(Morphism(images).apply(*bad.failing_word), th("3+")).has_value());

  auto phi = verify_transfer(morphism("phi"), th("2"), th("3+"));
  CHECK_FALSE(phi.pass);
  CHECK_FALSE(phi.uniform);
  auto mu = verify_transfer(morphism("mu"), th("2"), th("3+"));
  CHECK_FALSE(mu.pass);
  CHECK_FALSE(mu.synchronizing);
}

TEST_CASE("image side conditions") {
  SideCondition cal6;
  cal6.cal = 6;
  auto r = verify_image_side_conditions(morphism("h1"), 5, cal6);
  CHECK(r.pass);
  CHECK(r.source_words == 30);

  SideCondition four;
  four.complemented_exact = WordSet{Word("0"), Word("1"), Word("01"), Word("10")};
  CHECK(verify_image_side_conditions(morphism("h31a"), 5, four).pass);

  // Identity on {0,1,2} read as binary fails on 01 already.
  Morphism id = Morphism(std::vector<Word>{Word("0"), Word("1"), Word("1")});
  SideCondition cal1;
  cal1.cal = 1;
  auto f = verify_image_side_conditions(id, 2, cal1);
  CHECK_FALSE(f.pass);
  REQUIRE(f.witness_source.has_value());
  CHECK(f.witness_source->str() == "01");

  SideCondition forbid;
  forbid.forbidden = {Word("0000")};
  CHECK(verify_image_side_conditions(morphism("h1"), 5, forbid).pass);
}
