#include <doctest.h>

#include <random>

#include "charnum/constraint.hpp"
#include "charnum/errors.hpp"
#include "charnum/multiset.hpp"

using namespace charnum;

namespace {

Constraint make(int r, int t, std::vector<int> inc) {
  Constraint c = Constraint::empty(r);
  c.tangencies = t;
  for (std::size_t k = 0; k < inc.size(); ++k) c.add(static_cast<int>(k) + 1, inc[k]);
  return c;
}

}  // namespace

TEST_CASE("weight counts codimension minus one") {
  auto c = make(3, 0, {0, 6, 3});
  CHECK(weight(c) == 12);
  CHECK(rank(c) == -(6 * 4 + 3 * 9));
  auto t = make(2, 1, {0, 8});
  CHECK(weight(t) == 9);
  CHECK(rank(make(3, 0, {0, 2, 3})) == -35);
  CHECK(rank(make(4, 0, {3, 1, 0, 2})) == -36);
  CHECK(weight(make(4, 0, {5})) == 0);
}

TEST_CASE("compare prefers tangencies, then fewer subspaces, then rank") {
  CHECK(compare(make(2, 1, {0, 8}), make(2, 0, {0, 9})) == Order::Less);
  // hyperplanes sit outside the rank, so these two tie
  CHECK(compare(make(3, 0, {1, 2, 1}), make(3, 0, {0, 2, 1})) == Order::Tie);
  CHECK(compare(make(3, 0, {0, 1, 2}), make(3, 0, {0, 3, 1})) == Order::Less);
  CHECK(compare(make(3, 0, {0, 6, 3}), make(3, 0, {0, 6, 3})) == Order::Tie);
}

TEST_CASE("derived constraints keep weight and move down") {
  for (int r = 2; r <= 6; ++r) {
    for (int i = 2; i <= r; ++i) {
      auto c = Constraint::empty(r);
      c.add(i, 2);
      c.add(2, 1);
      c.add(r, 1);
      auto ds = derive(c, i);
      CHECK(weight(ds.tilde) == weight(c) - 2 * (i - 1));
      std::vector<const DerivedConstraint*> same_weight{&ds.d0, &ds.d2};
      if (i > 2) {
        REQUIRE(ds.d1.has_value());
        same_weight.push_back(&*ds.d1);
      } else {
        CHECK_FALSE(ds.d1.has_value());
      }
      for (auto* d : same_weight) {
        if (d->is_empty()) {
          CHECK(*d->empty_codim > r);
          continue;
        }
        CHECK(weight(d->value) == weight(c));
        CHECK(compare(d->value, c) == Order::Less);
      }
      if (!ds.dc.is_empty()) CHECK(weight(ds.dc.value) == weight(c) - 2);
    }
  }
}

TEST_CASE("derive marks codim beyond r as empty") {
  auto ds = derive(make(3, 0, {0, 6, 3}), 3);
  CHECK(ds.d0.is_empty());
  CHECK(*ds.d0.empty_codim == 4);
  CHECK(ds.d1.has_value());
  CHECK(ds.d1->is_empty());
  CHECK(ds.d2.is_empty());
  CHECK_FALSE(ds.dc.is_empty());
  // pivot 2 trades a codim-2 pair for a hyperplane and a codim-3 space;
  // only the latter is ranked, so the drop is 1 rather than 2
  auto c = make(3, 0, {0, 6, 3});
  CHECK(rank(derive(c, 2).d0.value) == rank(c) - 1);
  auto c4 = make(4, 0, {0, 2, 4, 1});
  auto ds4 = derive(c4, 3);
  CHECK(rank(ds4.d0.value) == rank(c4) - 2);
  CHECK(rank(ds4.d1->value) == rank(c4) - 2);
}

TEST_CASE("derive rejects bad pivots") {
  CHECK_THROWS_AS(derive(make(3, 0, {0, 1, 3}), 2), Error);
  CHECK_THROWS_AS(derive(make(3, 1, {0, 6, 3}), 2), Error);
}

TEST_CASE("splits enumerate labelled distributions") {
  auto c = make(2, 0, {0, 7});
  std::int64_t total = 0, two_on_first = 0;
  for (auto& s : splits(c, 2)) {
    total += s.mult;
    if (s.parts[0].count(2) == 2) two_on_first = s.mult;
  }
  CHECK(total == 128);
  CHECK(two_on_first == 21);

  auto mixed = make(3, 2, {1, 2, 3});
  total = 0;
  for (auto& s : splits(mixed, 3)) {
    total += s.mult;
    Constraint sum = Constraint::empty(3);
    for (auto& p : s.parts) {
      sum.tangencies += p.tangencies;
      for (int k = 1; k <= 3; ++k) sum.add(k, p.count(k));
    }
    CHECK(sum == mixed);
  }
  CHECK(total == 6561);
}

TEST_CASE("submultisets and distribute agree with counting") {
  Codims ms{2, 2, 2, 3, 3};
  std::int64_t total = 0;
  for (auto& s : submultisets(ms)) total += s.mult;
  CHECK(total == 32);
  total = 0;
  for (auto& d : distribute(ms, 3)) total += d.mult;
  CHECK(total == 243);
  CHECK(format_codims(ms) == "2^3 3^2");
  CHECK(binomial(7, 2) == 21);
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("hyperplanes fold into a power of d") {
  std::mt19937 gen(5);
  for (int trial = 0; trial < 50; ++trial) {
    int r = 2 + static_cast<int>(gen() % 4);
    int d = 1 + static_cast<int>(gen() % 6);
    auto c = Constraint::empty(r);
    int h = static_cast<int>(gen() % 5);
    c.add(1, h);
    c.add(r, static_cast<int>(gen() % 3));
    auto f = fold_hyperplanes(c, d);
    CHECK(f.constraint.count(1) == 0);
    CHECK(f.constraint.count(r) == c.count(r));
    Rational expect = 1;
    for (int j = 0; j < h; ++j) expect *= d;
    CHECK(f.factor == expect);
  }
}

TEST_CASE("query text parses and prints") {
  auto q = parse_query("r=3 d=3 t=0 c1=2 c2=4 c3=3");
  CHECK(q.d == 3);
  CHECK(q.factor == 9);
  CHECK(q.raw.count(1) == 2);
  CHECK(q.constraint.count(1) == 0);
  CHECK(format_row(q.raw) == "(0, 4, 3)");
  CHECK(format_query(q.raw, 3) == "r=3 d=3 t=0 c1=2 c2=4 c3=3");
  CHECK_THROWS_AS(parse_query("r=3 d=x"), Error);
  CHECK_THROWS_AS(parse_query("d=3 c2=1"), Error);
  try {
    parse_query("r=3 r=3 d=2");
    FAIL("duplicate field accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
  }
}
