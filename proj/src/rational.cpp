#include "charnum/rational.hpp"

#include <cctype>

#include "charnum/errors.hpp"

namespace charnum {

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (s.empty()) return false;
  std::size_t i = 0;
  if (allow_sign && (s[0] == '-' || s[0] == '+')) i = 1;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  std::string_view num = text.substr(0, slash);
  std::string_view den =
      slash == std::string_view::npos ? std::string_view{"1"} : text.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false))
    throw Error(ErrorCode::Parse, "malformed rational '" + std::string(text) + "'");
  mpz_class n(std::string(num[0] == '+' ? num.substr(1) : num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw Error(ErrorCode::Parse, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InfiniteFamily: return "INFINITE_FAMILY";
    case ErrorCode::NoPivot: return "NO_PIVOT";
    case ErrorCode::Parse: return "PARSE_ERROR";
    case ErrorCode::Integrity: return "INTEGRITY_ERROR";
    case ErrorCode::Unsupported: return "UNSUPPORTED";
    case ErrorCode::InvalidArgument: return "INVALID_ARGUMENT";
  }
  return "ERROR";
}

}  // namespace charnum
