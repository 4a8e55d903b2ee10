#include "charnum/constraint.hpp"

#include <charconv>
#include <map>
#include <sstream>

#include "charnum/errors.hpp"

namespace charnum {

Constraint Constraint::empty(int r) {
  if (r < 2) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be at least 2");
  Constraint c;
  c.r = r;
  c.incidences.assign(r, 0);
  return c;
}

Constraint Constraint::from_codims(int r, int tangencies, const Codims& codims) {
  Constraint c = empty(r);
  c.tangencies = tangencies;
  for (int k : codims) c.add(k);
  return c;
}

int Constraint::count(int k) const { return k == 0 ? tangencies : incidences.at(k - 1); }

void Constraint::add(int k, int n) {
  if (k < 0 || k > r)
    throw Error(ErrorCode::InvalidArgument, "codimension " + std::to_string(k) + " outside 0.." + std::to_string(r));
  if (k == 0)
    tangencies += n;
  else
    incidences[k - 1] += n;
}

Codims Constraint::codims() const {
  Codims out;
  for (int k = 1; k <= r; ++k) out.insert(out.end(), incidences[k - 1], k);
  return out;
}

int Constraint::non_hyperplane_count() const {
  int n = 0;
  for (int k = 2; k <= r; ++k) n += incidences[k - 1];
  return n;
}

int weight(const Constraint& c) {
  int w = c.tangencies;
  for (int k = 2; k <= c.r; ++k) w += (k - 1) * c.incidences[k - 1];
  return w;
}

int rank(const Constraint& c) {
  int s = 0;
  for (int k = 2; k <= c.r; ++k) s += c.incidences[k - 1] * k * k;
  return -s;
}

Order compare(const Constraint& a, const Constraint& b) {
  if (a.r != b.r) throw Error(ErrorCode::InvalidArgument, "comparing constraints in different dimensions");
  if (a.tangencies != b.tangencies) return a.tangencies > b.tangencies ? Order::Less : Order::Greater;
  int na = a.non_hyperplane_count(), nb = b.non_hyperplane_count();
  if (na != nb) return na < nb ? Order::Less : Order::Greater;
  int ra = rank(a), rb = rank(b);
  if (ra != rb) return ra < rb ? Order::Less : Order::Greater;
  return Order::Tie;
}

namespace {

DerivedConstraint extend(const Constraint& base, std::initializer_list<int> extra) {
  DerivedConstraint out{base, std::nullopt};
  for (int k : extra) {
    if (k > base.r) {
      out.empty_codim = k;
      continue;
    }
    out.value.add(k);
  }
  return out;
}

}  // namespace

DerivedSet derive(const Constraint& c, int i) {
  if (c.tangencies != 0) throw Error(ErrorCode::InvalidArgument, "derive expects an incidence-only constraint");
  if (i < 2 || i > c.r || c.count(i) < 2)
    throw Error(ErrorCode::InvalidArgument, "pivot " + std::to_string(i) + " needs two codim-i spaces");
  DerivedSet out;
  out.tilde = c;
  out.tilde.add(i, -2);
  out.d0 = extend(out.tilde, {i - 1, i + 1});
  if (i > 2) out.d1 = extend(out.tilde, {2, 2 * (i - 1)});
  out.d2 = extend(out.tilde, {1, 2 * i - 1});
  out.dc = extend(out.tilde, {i - 1, i - 1, 1, 1});
  return out;
}

namespace {

// Compositions of n into `parts` ordered pieces with multinomial weight.
void compositions(int n, int parts, std::vector<int>& cur,
                  std::vector<std::pair<std::vector<int>, std::int64_t>>& out) {
  if (static_cast<int>(cur.size()) == parts - 1) {
    cur.push_back(n);
    std::int64_t m = 1;
    int placed = 0;
    for (int x : cur) {
      placed += x;
      m *= binomial(placed, x);
    }
    out.push_back({cur, m});
    cur.pop_back();
    return;
  }
  for (int a = 0; a <= n; ++a) {
    cur.push_back(a);
    compositions(n - a, parts, cur, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<ConstraintSplit> splits(const Constraint& c, int n) {
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "splits needs at least one part");
  std::vector<ConstraintSplit> out{ConstraintSplit{std::vector<Constraint>(n, Constraint::empty(c.r)), 1}};
  for (int k = 0; k <= c.r; ++k) {
    std::vector<std::pair<std::vector<int>, std::int64_t>> comps;
    std::vector<int> cur;
    compositions(c.count(k), n, cur, comps);
    std::vector<ConstraintSplit> next;
    next.reserve(out.size() * comps.size());
    for (const auto& s : out) {
      for (const auto& [pieces, m] : comps) {
        ConstraintSplit t = s;
        for (int j = 0; j < n; ++j) t.parts[j].add(k, pieces[j]);
        t.mult *= m;
        next.push_back(std::move(t));
      }
    }
    out = std::move(next);
  }
  return out;
}

Folded fold_hyperplanes(const Constraint& c, int d) {
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "hyperplane folding needs d >= 1");
  Folded f{c, 1};
  mpz_class factor;
  mpz_ui_pow_ui(factor.get_mpz_t(), static_cast<unsigned long>(d), static_cast<unsigned long>(c.count(1)));
  f.factor = Rational(factor);
  f.constraint.incidences[0] = 0;
  return f;
}

namespace {

int parse_int(std::string_view s, std::string_view field) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || v < 0)
    throw Error(ErrorCode::Parse, "bad value for " + std::string(field) + ": '" + std::string(s) + "'");
  return v;
}

}  // namespace

ParsedQuery parse_query(std::string_view text) {
  std::map<std::string, int> fields;
  std::istringstream in{std::string(text)};
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos || eq == 0) throw Error(ErrorCode::Parse, "expected key=value, got '" + tok + "'");
    std::string key = tok.substr(0, eq);
    if (fields.count(key)) throw Error(ErrorCode::Parse, "duplicate field '" + key + "'");
    fields[key] = parse_int(std::string_view(tok).substr(eq + 1), key);
  }
  if (!fields.count("r")) throw Error(ErrorCode::Parse, "missing r=");
  if (!fields.count("d")) throw Error(ErrorCode::Parse, "missing d=");
  int r = fields["r"];
  if (r < 2) throw Error(ErrorCode::Parse, "r must be at least 2");
  ParsedQuery q;
  q.d = fields["d"];
  if (q.d < 1) throw Error(ErrorCode::Parse, "d must be at least 1");
  q.constraint = Constraint::empty(r);
  for (const auto& [key, v] : fields) {
    if (key == "r" || key == "d") continue;
    if (key == "t") {
      q.constraint.tangencies = v;
      continue;
    }
    if (key.size() < 2 || key[0] != 'c') throw Error(ErrorCode::Parse, "unknown field '" + key + "'");
    int k = parse_int(std::string_view(key).substr(1), key);
    if (k < 1 || k > r) throw Error(ErrorCode::Parse, "codimension in '" + key + "' outside 1..r");
    q.constraint.add(k, v);
  }
  q.raw = q.constraint;
  auto f = fold_hyperplanes(q.constraint, q.d);
  q.constraint = f.constraint;
  q.factor = f.factor;
  return q;
}

std::string format_query(const Constraint& c, int d) {
  std::ostringstream os;
  os << "r=" << c.r << " d=" << d << " t=" << c.tangencies;
  for (int k = 1; k <= c.r; ++k)
    if (k > 1 || c.count(1) > 0) os << " c" << k << "=" << c.count(k);
  return os.str();
}

std::string format_row(const Constraint& c) {
  std::ostringstream os;
  os << "(" << c.tangencies;
  for (int k = 2; k <= c.r; ++k) os << ", " << c.count(k);
  os << ")";
  return os.str();
}

}  // namespace charnum
