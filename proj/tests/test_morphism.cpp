#include <doctest.h>

#include <stdexcept>
#include <string>

#include "compavoid/catalog.hpp"
#include "compavoid/morphism.hpp"

using namespace compavoid;
using catalog::morphism;

TEST_CASE("apply") {
  CHECK(apply(morphism("phi"), Word("012")) == Word("01210"));
  CHECK(apply(morphism("phi"), Word("", 3)).empty());
  CHECK(apply(morphism("psi"), Word("0120")) == Word("011001" "0" "01101" "011001"));
  CHECK_THROWS(morphism("fib").apply(Word("012")));
}

TEST_CASE("fixed points") {
  CHECK(fixed_point_prefix(morphism("phi"), 0, 25) == Word("0121021010210121010210121", 3));
  CHECK(fixed_point_prefix(morphism("mu"), 0, 8) == Word("01101001"));
  CHECK(fixed_point_prefix(morphism("fib"), 0, 25) == Word("0100101001001010010100100"));
  CHECK(fixed_point_prefix(morphism("phi"), 0, 0).empty());
  CHECK_THROWS_AS(fixed_point_prefix(morphism("phi"), 1, 5), std::domain_error);
  CHECK_THROWS_AS(fixed_point_prefix(morphism("id2"), 0, 5), std::domain_error);
}

TEST_CASE("catalog words") {
  const std::string psi_p = "011001" "0" "01101" "0" "011001" "01101" "0";
  CHECK(catalog::word_prefix("psi-of-p", psi_p.size()) == Word(psi_p));
  const std::string xi_p = "01" "0110" "1" "0110" "01" "1" "0110" "01" "0110" "01" "1" "0110";
  CHECK(catalog::word_prefix("xi-of-p", xi_p.size()) == Word(xi_p));
  CHECK(catalog::word_prefix("p", 25) == Word("0121021010210121010210121", 3));
  CHECK(catalog::word_prefix("tm", 8) == Word("01101001"));
  CHECK(catalog::word_prefix("h-of-f", 10) == Word("0010001001"));
  CHECK_THROWS(catalog::word_prefix("nope", 5));
  CHECK(catalog::has_morphism("h1"));
  CHECK(morphism("h1") == morphism("h17"));
}

TEST_CASE("uniformity") {
  CHECK(is_uniform(morphism("h1")) == 17u);
  CHECK_FALSE(is_uniform(morphism("phi")).has_value());
  CHECK(is_uniform(morphism("id2")) == 1u);
  CHECK(is_uniform(morphism("h36")) == 36u);
  CHECK(is_uniform(morphism("h69")) == 69u);
  CHECK(is_uniform(morphism("h31a")) == 31u);
  CHECK(is_uniform(morphism("h84")) == 84u);
  CHECK(is_uniform(morphism("h31b")) == 31u);
}

TEST_CASE("synchronization") {
  CHECK(is_synchronizing(morphism("h1")));
  // mu(00) = 0101 contains mu(1) = 10 at offset 1.
  CHECK_FALSE(is_synchronizing(morphism("mu")));
  CHECK(is_synchronizing(morphism("id2")));
  CHECK_THROWS_AS(is_synchronizing(morphism("phi")), std::domain_error);
  for (auto name : {"h36", "h69", "h31a", "h84", "h31b"}) CHECK(is_synchronizing(morphism(name)));
}

TEST_CASE("primitivity") {
  CHECK(is_primitive(morphism("phi")));
  CHECK_FALSE(is_primitive(morphism("id2")));
  CHECK(is_primitive(morphism("mu")));
  CHECK(is_primitive(morphism("fib")));
  CHECK_THROWS_AS(is_primitive(morphism("psi")), std::domain_error);
}

TEST_CASE("parikh vectors") {
  CHECK(parikh_vector(Word("01210")) == std::vector<std::uint64_t>{2, 2, 1});
  CHECK(parikh_vector(Word("", 3)) == std::vector<std::uint64_t>{0, 0, 0});
  CHECK(image_length(morphism("psi"), parikh_vector(Word("012"))) == 12);
  auto m = morphism("phi").incidence_matrix();
  // Column j counts the symbols of phi(j): phi(1) = 21.
  CHECK(m[0][1] == 0);
  CHECK(m[1][1] == 1);
  CHECK(m[2][1] == 1);
}

TEST_CASE("morphism text format") {
  Morphism m = Morphism::parse("# phi\n0 -> 01\n1 -> 21\n\n2 -> 0\n");
  CHECK(m == morphism("phi"));
  CHECK(Morphism::parse(m.serialize()) == m);
  CHECK_THROWS(Morphism::parse("0 -> 01\n2 -> 1\n"));
  CHECK_THROWS(Morphism::parse("0 01\n"));
  CHECK_THROWS(Morphism(std::vector<Word>{Word("01"), Word("")}));
}
