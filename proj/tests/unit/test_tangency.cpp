#include <doctest.h>

#include "charnum/engine.hpp"
#include "charnum/table.hpp"

using namespace charnum;

namespace {

Constraint with(int r, std::vector<std::pair<int, int>> counts, int t = 0) {
  auto c = Constraint::empty(r);
  for (auto [k, n] : counts) c.add(k, n);
  c.tangencies = t;
  return c;
}

}  // namespace

TEST_CASE("one tangency on plane cubics") {
  Engine e(2);
  auto a = e.lemma51_audit(3, with(2, {{2, 8}}));
  CHECK(a.line() == "4 = 1 + 3 + 0");
  CHECK(e.elliptic_characteristic(3, with(2, {{2, 8}}, 1)) == 4);
}

TEST_CASE("one tangency on space cubics") {
  Engine e(3);
  CHECK(e.elliptic_characteristic(3, with(3, {{2, 5}, {3, 3}}, 1)) == 4);
}

TEST_CASE("tangency decomposition holds across families") {
  for (auto [r, d] : {std::pair{2, 3}, {2, 4}, {3, 3}}) {
    for (const auto& res : verify_lemma51(r, d)) {
      CAPTURE(res.instance);
      CAPTURE(res.detail);
      CHECK(res.pass);
    }
  }
}

TEST_CASE("tangencies are distributed over both components") {
  auto shares = reducible_tangency_expand(2);
  Rational total = 0;
  for (const auto& s : shares) total += s.mult;
  CHECK(total > 0);
  for (const auto& s : shares) CHECK(s.first + s.second + s.node == 2);
}

TEST_CASE("full plane cubic table") {
  Engine e(2);
  CHECK(e.elliptic_characteristic(3, with(2, {}, 9)) == 33616);
}
