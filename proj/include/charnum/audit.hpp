#pragma once

#include <array>
#include <string>
#include <vector>

#include "charnum/rational.hpp"

namespace charnum {

// Codimension-2 boundary strata of M̄₁,₄ entering Getzler's relation.
enum class Stratum { D22, D23, D24, D34, D03, D04, DBeta };

inline constexpr std::array<Stratum, 7> kStrata{Stratum::D22, Stratum::D23, Stratum::D24, Stratum::D34,
                                                Stratum::D03, Stratum::D04, Stratum::DBeta};
inline constexpr std::array<int, 7> kGetzlerCoefficients{12, -4, -2, 6, 1, 1, -2};

std::string stratum_name(Stratum s);
int getzler_coefficient(Stratum s);

// One nonzero product inside one summand of the elliptic recursion.
struct TermAudit {
  std::string term;
  Stratum stratum = Stratum::D22;
  std::string prefactor;
  std::string degrees;
  std::string distribution;
  std::string beta;  // "-" when the summand is not a sum over S4
  Rational value;    // prefactor already applied
};

struct GetzlerAudit {
  int pivot = 0;
  int lhs_multiplier = 0;
  Rational lhs;
  std::vector<TermAudit> terms;

  // Relation-side totals per stratum; the LHS sits in δ₂,₂.
  std::array<Rational, 7> stratum_totals() const;
  Rational balance() const;
  // "36·1 + 972 - 1008 = 0"
  std::string balance_line() const;
  std::string ledger() const;
};

struct Lemma51Audit {
  Rational incidence;   // I: one tangency traded for a codim-2 space
  Rational fixed_j;     // the J count itself; it enters as d·J/12
  Rational tails;       // Σ d₁·#ER over rational tails
  Rational total;       // the characteristic number with one more tangency
  int d = 0;

  Rational j_term() const { return Rational(d) * fixed_j / 12; }
  bool holds() const { return total == incidence + j_term() + tails; }
  std::string line() const;
};

}  // namespace charnum
