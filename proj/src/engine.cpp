#include <sstream>

#include "charnum/engine.hpp"

namespace charnum {

std::string stack_name(Stack s) {
  switch (s) {
    case Stack::R: return "R";
    case Stack::N: return "N";
    case Stack::CU: return "CU";
    case Stack::E: return "E";
    case Stack::J: return "J";
    case Stack::RR: return "RR";
    case Stack::NR: return "NR";
    case Stack::ER: return "ER";
    case Stack::RR2: return "RR2";
    case Stack::ERR: return "ERR";
    case Stack::RER: return "RER";
  }
  return "?";
}

Stack parse_stack(std::string_view name) {
  for (Stack s : {Stack::R, Stack::N, Stack::CU, Stack::E, Stack::J, Stack::RR, Stack::NR, Stack::ER, Stack::RR2,
                  Stack::ERR, Stack::RER})
    if (stack_name(s) == name) return s;
  throw Error(ErrorCode::Parse, "unknown stack '" + std::string(name) + "'");
}

int expected_weight(Stack s, int r, int d, int k) {
  switch (s) {
    case Stack::R: return (r + 1) * d + r - 3;
    case Stack::E: return (r + 1) * d;
    case Stack::N: return (r + 1) * d - 1 - k;
    case Stack::CU: return (r + 1) * d - 2;
    case Stack::J: return (r + 1) * d - 1;
    case Stack::ER: return (r + 1) * d - 1 - k;
    case Stack::NR: return (r + 1) * d - 2 - k;
    case Stack::RR: return (r + 1) * d + r - 4 - k;
    case Stack::RR2:
    case Stack::ERR:
    case Stack::RER: return (r + 1) * d - 2;
  }
  return 0;
}

std::string Engine::store_key(std::string_view kind, int d, int k, int t, const Codims& u) const {
  return MemoStore::make_key(kind, r_, {d}, k, {Constraint::from_codims(r_, t, u)});
}

std::string stratum_name(Stratum s) {
  switch (s) {
    case Stratum::D22: return "δ2,2";
    case Stratum::D23: return "δ2,3";
    case Stratum::D24: return "δ2,4";
    case Stratum::D34: return "δ3,4";
    case Stratum::D03: return "δ0,3";
    case Stratum::D04: return "δ0,4";
    case Stratum::DBeta: return "δβ";
  }
  return "?";
}

int getzler_coefficient(Stratum s) { return kGetzlerCoefficients[static_cast<int>(s)]; }

std::array<Rational, 7> GetzlerAudit::stratum_totals() const {
  std::array<Rational, 7> out;
  for (auto& x : out) x = 0;
  out[static_cast<int>(Stratum::D22)] = lhs_multiplier * lhs;
  // the recursion moved every other summand to the right-hand side
  for (const auto& t : terms) out[static_cast<int>(t.stratum)] -= t.value;
  return out;
}

Rational GetzlerAudit::balance() const {
  Rational b = 0;
  for (const auto& x : stratum_totals()) b += x;
  return b;
}

std::string GetzlerAudit::balance_line() const {
  std::ostringstream os;
  os << lhs_multiplier << "·" << lhs.get_str();
  auto totals = stratum_totals();
  totals[static_cast<int>(Stratum::D22)] -= lhs_multiplier * lhs;
  for (const auto& x : totals) {
    if (x == 0) continue;
    if (x < 0)
      os << " - " << Rational(-x).get_str();
    else
      os << " + " << x.get_str();
  }
  os << " = " << balance().get_str();
  return os.str();
}

std::string GetzlerAudit::ledger() const {
  std::ostringstream os;
  os << "pivot codim " << pivot << ", left side " << lhs_multiplier << "·X with X = " << lhs.get_str() << "\n";
  os << "term | stratum | prefactor | degrees | distribution | β | value\n";
  for (const auto& t : terms)
    os << t.term << " | " << stratum_name(t.stratum) << " | " << t.prefactor << " | " << t.degrees << " | "
       << t.distribution << " | " << t.beta << " | " << t.value.get_str() << "\n";
  auto totals = stratum_totals();
  for (Stratum s : kStrata)
    os << "total " << stratum_name(s) << " (coefficient " << getzler_coefficient(s)
       << ") = " << totals[static_cast<int>(s)].get_str() << "\n";
  os << "balance: " << balance_line() << "\n";
  return os.str();
}

std::string Lemma51Audit::line() const {
  std::ostringstream os;
  os << total.get_str() << " = " << incidence.get_str() << " + " << j_term().get_str() << " + " << tails.get_str();
  return os.str();
}

}  // namespace charnum
