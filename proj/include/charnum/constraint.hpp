#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charnum/multiset.hpp"
#include "charnum/rational.hpp"

namespace charnum {

// The tuple (tangencies; Δ(1), ..., Δ(r)).
struct Constraint {
  int r = 2;
  int tangencies = 0;
  std::vector<int> incidences;  // incidences[k - 1] = Δ(k)

  static Constraint empty(int r);
  static Constraint from_codims(int r, int tangencies, const Codims& codims);

  // count(0) is the tangency count.
  int count(int k) const;
  void add(int k, int n = 1);
  // Incidence codimensions including hyperplanes, sorted.
  Codims codims() const;
  int non_hyperplane_count() const;

  bool operator==(const Constraint&) const = default;
};

int weight(const Constraint& c);
int rank(const Constraint& c);

enum class Order { Less, Greater, Tie };
Order compare(const Constraint& a, const Constraint& b);

// A derived constraint whose construction asked for a subspace of codim > r.
// Such a constraint stands for the empty subspace and every term using it is 0.
struct DerivedConstraint {
  Constraint value;
  std::optional<int> empty_codim;
  bool is_empty() const { return empty_codim.has_value(); }
};

struct DerivedSet {
  Constraint tilde;
  DerivedConstraint d0;
  std::optional<DerivedConstraint> d1;  // only for pivots i > 2
  DerivedConstraint d2;
  DerivedConstraint dc;
};

DerivedSet derive(const Constraint& c, int i);

struct ConstraintSplit {
  std::vector<Constraint> parts;
  std::int64_t mult;
};

std::vector<ConstraintSplit> splits(const Constraint& c, int n);

struct Folded {
  Constraint constraint;
  Rational factor;
};

Folded fold_hyperplanes(const Constraint& c, int d);

// Text syntax "r=3 d=3 t=0 c2=6 c3=3"; c1 is folded on parse.
struct ParsedQuery {
  Constraint raw;         // as written, hyperplanes included
  Constraint constraint;  // hyperplanes folded into factor
  int d = 0;
  Rational factor = 1;
};

ParsedQuery parse_query(std::string_view text);
std::string format_query(const Constraint& c, int d);
// Table row "(t, c2, ..., cr)".
std::string format_row(const Constraint& c);

}  // namespace charnum
