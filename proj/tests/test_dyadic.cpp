#include <doctest.h>

#include <random>

#include "vn/dyadic.hpp"
#include "vn/errors.hpp"

using vn::Dyadic;

TEST_CASE("dyadic construction and normalization") {
  CHECK(Dyadic(0).mantissa() == 0);
  CHECK(Dyadic(0).exponent() == 0);
  CHECK(Dyadic(12) == Dyadic::scaled(3, 2));
  CHECK(Dyadic::scaled(8, -3) == Dyadic(1));
  CHECK(Dyadic::scaled(-6, -1) == Dyadic(-3));
}

TEST_CASE("dyadic arithmetic is exact") {
  Dyadic a = Dyadic::scaled(3, -2);   // 0.75
  Dyadic b = Dyadic::scaled(5, -2);   // 1.25
  CHECK(a + b == Dyadic(2));
  CHECK(a - b == Dyadic::scaled(-1, -1));
  CHECK(-a == Dyadic::scaled(-3, -2));
  CHECK(a + Dyadic(0) == a);

  // 0.1 is not dyadic, but 0.5 + 0.25 + ... stays exact at any depth.
  Dyadic sum(0);
  Dyadic term(1);
  for (int i = 0; i < 50; ++i) {
    term = Dyadic::scaled(term.mantissa(), term.exponent() - 1);
    sum += term;
  }
  CHECK(sum == Dyadic(1) - Dyadic::scaled(1, -50));
}

TEST_CASE("dyadic ordering") {
  CHECK(Dyadic::scaled(1, -1) < Dyadic(1));
  CHECK(Dyadic(-2) < Dyadic::scaled(-3, -1));
  CHECK(Dyadic(3) >= 3);
  CHECK(Dyadic::scaled(1, 40) > Dyadic::scaled(1, -40));
  CHECK(Dyadic::scaled(-1, 100) < Dyadic::scaled(1, -100));
  CHECK(Dyadic::scaled(-1, 100) < Dyadic::scaled(-1, -100));
}

TEST_CASE("dyadic overflow is an error, not a wrap") {
  Dyadic big = Dyadic::scaled((1ll << 62) - 1, 0);
  CHECK_THROWS_AS(big + big + big, vn::Error);
  CHECK_THROWS_AS(Dyadic::scaled(1, 200) + Dyadic::scaled(1, -200), vn::Error);
}

TEST_CASE("decimal rendering is exact") {
  CHECK(Dyadic(0).to_string() == "0");
  CHECK(Dyadic(42).to_string() == "42");
  CHECK(Dyadic(-7).to_string() == "-7");
  CHECK(Dyadic::scaled(-21, -2).to_string() == "-5.25");
  CHECK(Dyadic::scaled(1, -10).to_string() == "0.0009765625");
  CHECK(Dyadic::scaled(1, 10).to_string() == "1024");
  CHECK(Dyadic::scaled(54417, -8).to_string() == "212.56640625");
}

TEST_CASE("decimal parsing round-trips") {
  auto roundtrip = [](const char* text) {
    auto v = Dyadic::from_decimal(text);
    REQUIRE(v.has_value());
    CHECK(v->to_string() == text);
  };
  roundtrip("0");
  roundtrip("3");
  roundtrip("-11.375");
  roundtrip("0.625");
  roundtrip("212.56640625");
  roundtrip("-0.0078125");

  CHECK(Dyadic::from_decimal("00.50") == Dyadic::scaled(1, -1));
  CHECK(Dyadic::from_decimal("+3") == Dyadic(3));
  CHECK_FALSE(Dyadic::from_decimal("0.3").has_value());   // not dyadic
  CHECK_FALSE(Dyadic::from_decimal("1/3").has_value());
  CHECK_FALSE(Dyadic::from_decimal("").has_value());
  CHECK_FALSE(Dyadic::from_decimal("1.2.3").has_value());
}

TEST_CASE("random dyadics survive a text round trip") {
  std::mt19937_64 gen(20240811);
  for (int i = 0; i < 2000; ++i) {
    auto man = static_cast<std::int64_t>(gen() >> 24);
    int exp = static_cast<int>(gen() % 33) - 16;
    if (gen() & 1) man = -man;
    Dyadic v = Dyadic::scaled(man, exp);
    auto back = Dyadic::from_decimal(v.to_string());
    REQUIRE(back.has_value());
    CHECK(*back == v);
  }
}
