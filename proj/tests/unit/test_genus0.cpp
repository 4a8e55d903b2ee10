#include <doctest.h>

#include "charnum/engine.hpp"
#include "charnum/errors.hpp"
#include "oracles.hpp"

using namespace charnum;

namespace {

Constraint points(int r, int n, int t = 0) {
  auto c = Constraint::empty(r);
  c.add(r, n);
  c.tangencies = t;
  return c;
}

}  // namespace

TEST_CASE("plane rational curves follow the recursion") {
  Engine e(2);
  for (int d = 1; d <= 7; ++d) {
    CAPTURE(d);
    CHECK(e.rational_incidence(d, points(2, 3 * d - 1)) == Rational(oracle::plane_rational(d)));
  }
}

TEST_CASE("lines meeting codim-2 spaces match Schubert calculus") {
  CHECK(oracle::schubert_sigma1_power(2, 4) == 2);
  for (int r = 3; r <= 6; ++r) {
    Engine e(r);
    auto c = Constraint::empty(r);
    c.add(2, 2 * (r - 1));
    CAPTURE(r);
    CHECK(e.rational_incidence(1, c) == oracle::schubert_sigma1_power(2, r + 1));
  }
}

TEST_CASE("conic counts agree with linear algebra and duality") {
  Engine e(2);
  CHECK(e.rational_characteristic(2, points(2, 5)) == oracle::conics_through_five_points());
  CHECK(e.rational_characteristic(2, points(2, 4, 1)) == oracle::conics_through_four_tangent_to_line());
  CHECK(e.rational_characteristic(2, points(2, 0, 5)) == oracle::conics_tangent_to_five_lines());
}

TEST_CASE("space cubics through six points") {
  Engine e(3);
  CHECK(e.rational_incidence(3, points(3, 6)) == 1);
}

TEST_CASE("hyperplanes multiply by the degree") {
  Engine e(3);
  auto folded = Constraint::empty(3);
  folded.add(2, 4);
  folded.add(3, 4);
  auto with_h = folded;
  with_h.add(1, 2);
  CHECK(e.rational_incidence(3, with_h) == 9 * e.rational_incidence(3, folded));
}

TEST_CASE("balance is enforced") {
  Engine e(2);
  CHECK(e.rational_incidence(3, points(2, 9)) == 0);
  CHECK_THROWS_AS(e.rational_incidence(3, points(2, 7)), Error);
  try {
    e.rational_incidence(3, points(2, 7));
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::InfiniteFamily);
  }
}

TEST_CASE("empty subspaces give zero") {
  Engine e(3);
  CHECK(e.rational_raw(1, {2, 2, 2, 4}) == 0);
}
