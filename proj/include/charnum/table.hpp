#pragma once

#include <string>
#include <vector>

#include "charnum/constraint.hpp"
#include "charnum/engine.hpp"
#include "charnum/memo_store.hpp"

namespace charnum {

// Every tuple (t, c2, ..., cr) of total weight (r+1)d, in ascending
// lexicographic order, i.e. tangency count ascending.
std::vector<Constraint> balanced_rows(int r, int d, bool incidence_only = false);

struct TableRow {
  Constraint constraint;
  Rational value;
};

// Elliptic characteristic numbers for the given rows. With jobs > 1 the rows
// are spread over that many threads, each with its own Engine; the output
// order and values do not depend on jobs.
std::vector<TableRow> compute_table(int r, int d, const std::vector<Constraint>& rows, MemoStore* store = nullptr,
                                    int jobs = 1);

std::string format_table(const std::vector<TableRow>& rows);

struct CheckResult {
  std::string instance;
  bool pass;
  std::string detail;
};

// Top-level value under every admissible pivot, plus full recursions under
// both pivot policies, for every balanced incidence-only row with two or more
// admissible pivots.
std::vector<CheckResult> verify_pivot_invariance(int r, int d_min, int d_max);
CheckResult verify_getzler_balance(int r, int d, const Constraint& c, int pivot);
// T = I + dJ/12 + Σ d₁·ER for every one-dimensional family of degree d.
std::vector<CheckResult> verify_lemma51(int r, int d);

}  // namespace charnum
