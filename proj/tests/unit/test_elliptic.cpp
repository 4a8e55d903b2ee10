#include <doctest.h>

#include "charnum/engine.hpp"
#include "charnum/errors.hpp"
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

TEST_CASE("elliptic incidence examples") {
  Engine e2(2), e3(3);
  CHECK(e3.elliptic_incidence(3, with(3, {{2, 6}, {3, 3}})) == 1);
  CHECK(e2.elliptic_incidence(3, with(2, {{2, 9}})) == 1);
  CHECK(e2.elliptic_incidence(4, with(2, {{2, 12}})) == 225);
  CHECK(e3.elliptic_incidence(4, with(3, {{3, 8}})) == 1);
}

TEST_CASE("elliptic counts below degree three vanish") {
  Engine e(3);
  CHECK(e.elliptic_incidence(2, with(3, {{2, 4}, {3, 2}})) == 0);
}

TEST_CASE("unbalanced elliptic queries") {
  Engine e(3);
  CHECK(e.elliptic_incidence(3, with(3, {{2, 6}, {3, 4}})) == 0);
  try {
    e.elliptic_incidence(3, with(3, {{2, 6}, {3, 2}}));
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::InfiniteFamily);
  }
}

TEST_CASE("every balanced incidence row has a pivot in the supported range") {
  for (int r = 2; r <= 5; ++r) {
    Engine e(r);
    for (int d = 3; d <= 6; ++d) {
      for (const auto& c : balanced_rows(r, d, true)) {
        auto folded = fold_hyperplanes(c, d).constraint;
        CAPTURE(format_query(c, d));
        CHECK_FALSE(e.admissible_pivots(folded).empty());
      }
    }
  }
}

TEST_CASE("no pivot when every codimension appears once") {
  Engine e(9);
  auto c = with(9, {{5, 1}, {6, 1}, {7, 1}, {8, 1}, {9, 1}});
  CHECK(e.admissible_pivots(c).empty());
  try {
    e.elliptic_incidence(3, c);
    FAIL("expected an error");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NoPivot);
  }
}

TEST_CASE("audit ledger balances on the cubic example") {
  Engine e(3);
  auto c = with(3, {{2, 6}, {3, 3}});
  auto a = e.audit_getzler(3, c, 2);
  CHECK(a.lhs == 1);
  CHECK(a.balance() == 0);
  CHECK(a.balance_line() == "36·1 + 972 - 1008 = 0");
  auto b = e.audit_getzler(3, c, 3);
  CHECK(b.balance() == 0);
  CHECK(b.lhs == 1);
}

TEST_CASE("audit on a row with no curves") {
  Engine e(3);
  for (int pivot : {2, 3}) {
    auto a = e.audit_getzler(3, with(3, {{2, 4}, {3, 4}}), pivot);
    CHECK(a.lhs == 0);
    CHECK(a.balance() == 0);
  }
}

TEST_CASE("getzler coefficients") {
  std::vector<int> got;
  for (auto s : kStrata) got.push_back(getzler_coefficient(s));
  CHECK(got == std::vector<int>{12, -4, -2, 6, 1, 1, -2});
}

TEST_CASE("pivot policies agree") {
  Engine a(3), b(3);
  b.set_pivot_policy(PivotPolicy::Smallest);
  for (const auto& c : balanced_rows(3, 4, true)) {
    auto f = fold_hyperplanes(c, 4);
    CHECK(a.elliptic_incidence(4, c) == b.elliptic_incidence(4, c));
    CHECK(a.elliptic_incidence(4, f.constraint) * f.factor == a.elliptic_incidence(4, c));
  }
}
