#include <doctest.h>

#include <cmath>
#include <random>

#include "vn/errors.hpp"
#include "vn/mu.hpp"

using namespace vn;

namespace {

DyadicValue natural(std::uint64_t v) {
  return {Dyadic(static_cast<std::int64_t>(v)), Dyadic(0)};
}

}  // namespace

TEST_CASE("constant function ignores its argument") {
  PrecisionVector p{16, 0, 0, 0};
  FunctionCircuit c7 = build_constant(natural(7), p);
  CHECK(evaluate(c7, natural(3)).value() == Dyadic(7));
  CHECK(evaluate(c7, natural(65535)).value() == Dyadic(7));

  FunctionCircuit c0 = build_constant(natural(0), p);
  CHECK(evaluate(c0, natural(12345)).value() == Dyadic(0));

  PrecisionVector rp{4, 4, 4, 4};
  FunctionCircuit cr = build_constant(DyadicValue::from_strings("5.25", "0"), rp);
  DyadicValue x = DyadicValue::from_strings("0", "-2.5");
  CHECK(evaluate(cr, x).value().to_string() == "5.25");

  CHECK_THROWS_AS(build_constant(natural(1 << 20), {4, 0, 0, 0}),
                  NotRepresentable);
}

TEST_CASE("successor adds one") {
  PrecisionVector p{16, 0, 0, 0};
  FunctionCircuit succ = build_successor(p);
  CHECK(evaluate(succ, natural(0)).value() == Dyadic(1));
  CHECK(evaluate(succ, natural(3)).value() == Dyadic(4));
  CHECK(evaluate(succ, natural(65535)).value() == Dyadic(65536));  // carry out

  FunctionCircuit frac = build_successor({4, 1, 0, 0});
  CHECK(evaluate(frac, {Dyadic::scaled(5, -1), Dyadic(0)}).value() ==
        Dyadic::scaled(7, -1));  // 2.5 + 1 = 3.5

  CHECK_THROWS_AS(build_successor({0, 4, 0, 0}), ArgumentError);
  CHECK_THROWS_AS(evaluate(succ, natural(1 << 17)), NotRepresentable);
}

TEST_CASE("predecessor subtracts one, dual rail") {
  PrecisionVector p{16, 0, 1, 0};
  FunctionCircuit pred = build_predecessor(p);
  DyadicValue five = evaluate(pred, natural(5));
  CHECK(five.pos == Dyadic(5));
  CHECK(five.neg == Dyadic(-1));
  CHECK(five.value() == Dyadic(4));

  DyadicValue one = evaluate(pred, natural(1));
  CHECK(one.pos == Dyadic(1));
  CHECK(one.neg == Dyadic(-1));
  CHECK(one.value() == Dyadic(0));  // non-canonical zero

  CHECK(evaluate(pred, natural(0)).value() == Dyadic(-1));

  CHECK_THROWS_AS(build_predecessor({16, 0, 0, 0}), ArgumentError);
}

TEST_CASE("negate swaps the rails") {
  PrecisionVector p{4, 4, 4, 4};
  FunctionCircuit neg = build_negate(p);

  DyadicValue a = evaluate(neg, DyadicValue::from_strings("3.5", "0"));
  CHECK(a.pos == Dyadic(0));
  CHECK(a.neg.to_string() == "-3.5");

  DyadicValue z = evaluate(neg, DyadicValue::from_strings("0", "0"));
  CHECK(z.value() == Dyadic(0));

  DyadicValue b = evaluate(neg, DyadicValue::from_strings("2.25", "-1.0"));
  CHECK(b.pos == Dyadic(1));
  CHECK(b.neg.to_string() == "-2.25");
  CHECK(b.value().to_string() == "-1.25");

  CHECK_THROWS_AS(build_negate({4, 4, 2, 2}), ArgumentError);
}

TEST_CASE("negate is an involution at the value level") {
  PrecisionVector p{4, 4, 4, 4};
  FunctionCircuit inner = build_negate(p);
  FunctionCircuit outer = build_negate({5, 4, 5, 4});
  std::mt19937_64 gen(424242);
  for (int round = 0; round < 250; ++round) {
    DyadicValue x{Dyadic::scaled(static_cast<std::int64_t>(gen() & 255), -4),
                  Dyadic::scaled(-static_cast<std::int64_t>(gen() & 255), -4)};
    DyadicValue once = evaluate(inner, x);
    CHECK(once.value() == -x.value());
    DyadicValue twice = evaluate(outer, once);
    CHECK(twice.value() == x.value());
  }
}

TEST_CASE("sum tree shapes") {
  PrecisionVector p{4, 4, 4, 4};
  FunctionCircuit two = build_sum_tree(2, p);
  CHECK(two.depth == 1);
  CHECK(two.vn_count() == 3);  // one adder over two leaves

  FunctionCircuit three = build_sum_tree(3, p);
  CHECK(three.depth == 2);  // one pass-through pairing

  FunctionCircuit sixteen = build_sum_tree(16, p);
  CHECK(sixteen.depth == 4);
  CHECK(sixteen.vn_count() == 31);  // 16 leaves + 15 tree nodes

  for (std::size_t n = 2; n <= 64; ++n) {
    FunctionCircuit t = build_sum_tree(n, {2, 0, 0, 0});
    CHECK(t.depth == static_cast<int>(std::ceil(std::log2(n))));
    CHECK(t.vn_count() - n <= 2 * n - 1);  // tree nodes beyond the given inputs
    if ((n & (n - 1)) == 0) CHECK(t.vn_count() == 2 * n - 1);
  }
  CHECK_THROWS_AS(build_sum_tree(1, p), ArgumentError);
}

TEST_CASE("sum tree adds exactly") {
  PrecisionVector p{4, 4, 4, 4};
  std::mt19937_64 gen(1618);
  for (std::size_t n : {2ul, 3ul, 5ul, 16ul}) {
    FunctionCircuit tree = build_sum_tree(n, p);
    for (int round = 0; round < 10; ++round) {
      std::vector<DyadicValue> xs;
      Dyadic pos(0), neg(0);
      for (std::size_t i = 0; i < n; ++i) {
        xs.push_back({Dyadic::scaled(static_cast<std::int64_t>(gen() & 255), -4),
                      Dyadic::scaled(-static_cast<std::int64_t>(gen() & 255), -4)});
        pos += xs.back().pos;
        neg += xs.back().neg;
      }
      DyadicValue out = evaluate(tree, xs);
      CHECK(out.pos == pos);
      CHECK(out.neg == neg);
    }
  }
}

TEST_CASE("seeded sweeps match native arithmetic oracles") {
  std::mt19937_64 gen(20260809);
  PrecisionVector nat{16, 0, 0, 0};
  FunctionCircuit succ = build_successor(nat);
  FunctionCircuit pred = build_predecessor({16, 0, 1, 0});
  for (int round = 0; round < 300; ++round) {
    std::uint64_t x = gen() & 0xffff;
    CHECK(evaluate(succ, natural(x)).value() ==
          Dyadic(static_cast<std::int64_t>(x) + 1));
    CHECK(evaluate(pred, natural(x)).value() ==
          Dyadic(static_cast<std::int64_t>(x) - 1));
  }
}

TEST_CASE("evaluate validates arity") {
  FunctionCircuit succ = build_successor({4, 0, 0, 0});
  std::vector<DyadicValue> none;
  CHECK_THROWS_AS(evaluate(succ, none), ArgumentError);
}

TEST_CASE("every function circuit is feed-forward") {
  PrecisionVector p{4, 4, 4, 4};
  CHECK(is_feedforward(build_constant(natural(1), {4, 0, 0, 0}).network));
  CHECK(is_feedforward(build_successor({4, 0, 0, 0}).network));
  CHECK(is_feedforward(build_predecessor({4, 0, 1, 0}).network));
  CHECK(is_feedforward(build_negate(p).network));
  CHECK(is_feedforward(build_sum_tree(7, p).network));
}
