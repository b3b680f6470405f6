#include <doctest.h>

#include <stdexcept>

#include "compavoid/rational.hpp"
#include "compavoid/word.hpp"
#include "oracles.hpp"

using namespace compavoid;

TEST_CASE("rational arithmetic and ordering") {
  CHECK(Rational(6, 4) == Rational(3, 2));
  CHECK(Rational(-2, -4).str() == "1/2");
  CHECK_FALSE(Rational::parse("7/3") > Rational::parse("5/2"));
  CHECK(Rational::parse("29/11") < Rational::parse("8/3"));
  CHECK(Rational::parse("4") == Rational(4));
  CHECK(Rational(7, 3).ceil() == 3);
  CHECK(Rational(7, 3).floor() == 2);
  CHECK(Rational(6, 3).ceil() == 2);
  CHECK(Rational(1, 2) + Rational(1, 3) == Rational(5, 6));
  CHECK(Rational(1, 2) / Rational(1, 4) == Rational(2));
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(Rational::parse("x/3"));
}

TEST_CASE("word construction and alphabet") {
  Word w("0121");
  CHECK(w.alphabet_size() == 3);
  CHECK(Word("0101").alphabet_size() == 2);
  CHECK(Word("").empty());
  CHECK(w[2] == 2);
  CHECK_THROWS(Word("0a1"));
  CHECK_THROWS(Word("012", 2));
}

TEST_CASE("complement") {
  CHECK(complement(Word("0110")) == Word("1001"));
  CHECK(complement(Word("")) == Word(""));
  CHECK(complement(complement(Word("01101"))) == Word("01101"));
  CHECK_THROWS_AS(complement(Word("012")), std::domain_error);
}

TEST_CASE("reverse") {
  CHECK(reverse(Word("02")) == Word("20"));
  CHECK(reverse(Word("")) == Word(""));
  CHECK(reverse(reverse(Word("10110"))) == Word("10110"));
}

TEST_CASE("smallest period") {
  CHECK(smallest_period(Word("00100100100")) == 3);
  CHECK(smallest_period(Word("0")) == 1);
  CHECK(smallest_period(Word("01010")) == 2);
  CHECK_THROWS_AS(smallest_period(Word("")), std::domain_error);
}

TEST_CASE("exponent") {
  CHECK(exponent(Word("00100100100")) == Rational(11, 3));
  CHECK(exponent(Word("0")) == Rational(1));
  CHECK(exponent(Word("01010")) == Rational(5, 2));
  CHECK_THROWS_AS(exponent(Word("")), std::domain_error);
}

TEST_CASE("factors") {
  WordSet want{Word("001"), Word("010"), Word("100"), Word("000")};
  CHECK(factors(Word("001000"), 3) == want);
  CHECK(factors(Word("0110"), 0) == WordSet{Word("")});
  CHECK(factors(Word("0110"), 2) == WordSet{Word("01"), Word("11"), Word("10")});
  CHECK_THROWS_AS(factors(Word("01"), 3), std::domain_error);
}

TEST_CASE("critical exponent of finite words") {
  auto a = critical_exponent_finite(Word("00100100100"));
  CHECK(a.value == Rational(11, 3));
  CHECK(a.witness == Word("00100100100"));
  auto b = critical_exponent_finite(Word("01"));
  CHECK(b.value == Rational(1));
  CHECK(b.witness.size() == 1);
  auto c = critical_exponent_finite(Word("0110110"));
  CHECK(c.value == Rational(7, 3));
  CHECK(c.witness == Word("0110110"));
  // Tie-break: shortest, then leftmost.
  auto d = critical_exponent_finite(Word("1001"));
  CHECK(d.value == Rational(2));
  CHECK(d.witness == Word("00"));
  CHECK(d.position == 1);
  CHECK_THROWS(critical_exponent_finite(Word("")));
}

TEST_CASE("word ordering is by length then lexicographic") {
  CHECK(Word("1") < Word("00"));
  CHECK(Word("01") < Word("10"));
}
