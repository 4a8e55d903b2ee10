#include <algorithm>
#include <array>
#include <functional>

#include "charnum/engine.hpp"

namespace charnum {

std::vector<int> Engine::admissible_pivots(const Constraint& c) const {
  std::vector<int> out;
  for (int i = 2; i <= r_; ++i)
    if (c.count(i) >= 2) out.push_back(i);
  return out;
}

Rational Engine::elliptic_unmarked(int d, const Codims& u) {
  std::vector<int> key{d};
  key.insert(key.end(), u.begin(), u.end());
  if (auto it = ell_.find(key); it != ell_.end()) return it->second;
  std::string skey = store_key("E", d, 0, 0, u);
  if (store_) {
    if (auto hit = store_->find(skey)) {
      ell_.emplace(std::move(key), *hit);
      return *hit;
    }
  }
  int pivot = 0;
  for (int i = 2; i <= r_; ++i) {
    if (count_of(u, i) < 2) continue;
    if (policy_ == PivotPolicy::Largest || pivot == 0) pivot = i;
  }
  if (pivot == 0)
    throw Error(ErrorCode::NoPivot, "no codimension occurs twice in " + format_row(Constraint::from_codims(r_, 0, u)));
  Rational v = elliptic_pivot(d, u, pivot);
  if (store_) store_->insert(skey, v);
  ell_.emplace(std::move(key), v);
  return v;
}

Rational Engine::elliptic_pivot(int d, const Codims& u, int i, GetzlerAudit* audit) {
  Codims dt = without(without(u, i), i);
  AuditScope scope{audit ? &audit->terms : nullptr, "", Stratum::D22, "", 0, "-"};
  AuditScope* sc = audit ? &scope : nullptr;
  Rational total = 0;

  Codims last_fixed;
  auto fixed = [&](std::initializer_list<int> extra) -> Rational {
    for (int c : extra)
      if (c > r_) return 0;  // empty subspace
    last_fixed = with(dt, extra);
    return stack_raw(Stack::E, d, last_fixed);
  };
  auto term = [&](const char* name, Stratum s, const char* ptext, Rational p, const std::function<Rational()>& body) {
    p.canonicalize();
    scope.term = name;
    scope.stratum = s;
    scope.prefactor_text = ptext;
    scope.prefactor = p;
    scope.beta = "-";
    total += p * body();
  };
  auto single = [&](Rational v, const std::string& kind = "E") {
    if (audit && v != 0)
      audit->terms.push_back({scope.term, scope.stratum, scope.prefactor_text, kind + std::to_string(d),
                              kind + ": " + format_codims(last_fixed), "-", scope.prefactor * v});
    return v;
  };

  // Sum over S4 acting on the marked points h, k (hyperplanes) and p, q (the
  // two codim-(i-1) conditions left after the pivot pair is split).
  const std::array<char, 4> letters{'h', 'k', 'p', 'q'};
  auto over_s4 = [&](const std::function<Rational(int, int, int, int)>& f) {
    auto mark = [&](char c) { return c == 'h' || c == 'k' ? 1 : i - 1; };
    std::array<char, 4> b = letters;
    Rational tot = 0;
    do {
      scope.beta = std::string(b.begin(), b.end());
      tot += f(mark(b[0]), mark(b[1]), mark(b[2]), mark(b[3]));
    } while (std::next_permutation(b.begin(), b.end()));
    scope.beta = "-";
    return tot;
  };

  auto ER = [&](Codims em, Codims rm, int k) {
    Rational tot = 0;
    for (int d1 = 1; d1 < d; ++d1) {
      int de = d - d1;
      if (de < 3) continue;
      tot += composite({{Stack::E, de, em}, {Stack::R, d1, rm}}, {{0, 1, k}}, dt, sc);
    }
    return tot;
  };
  auto RER = [&](Codims m1, Codims m2) {
    Rational tot = 0;
    for (int d1 = 1; d1 < d; ++d1)
      for (int d2 = 1; d1 + d2 < d; ++d2) {
        int de = d - d1 - d2;
        if (de < 3) continue;
        tot += composite({{Stack::R, d1, m1}, {Stack::E, de, {}}, {Stack::R, d2, m2}}, {{1, 0, 0}, {1, 2, 0}}, dt, sc);
      }
    return tot;
  };
  // a chain E - R1 - R2
  auto ERR = [&](Codims me, Codims m1, Codims m2) {
    Rational tot = 0;
    for (int d1 = 1; d1 < d; ++d1)
      for (int d2 = 1; d1 + d2 < d; ++d2) {
        int de = d - d1 - d2;
        if (de < 3) continue;
        tot += composite({{Stack::E, de, me}, {Stack::R, d1, m1}, {Stack::R, d2, m2}}, {{0, 1, 0}, {1, 2, 0}}, dt, sc);
      }
    return tot;
  };
  auto NR = [&](Codims mn, Codims mr) {
    Rational tot = 0;
    for (int d1 = 1; d1 < d; ++d1)
      tot += composite({{Stack::N, d - d1, mn}, {Stack::R, d1, mr}}, {{0, 1, 0}}, dt, sc);
    return tot;
  };
  auto RR2 = [&](Codims m1, Codims m2) {
    Rational tot = 0;
    for (int d1 = 1; d1 < d; ++d1) {
      for (const auto& dist : distribute(dt, 2)) {
        Codims c1 = merge(sorted(m1), dist.parts[0]), c2 = merge(sorted(m2), dist.parts[1]);
        Rational v = dist.mult * rr2_raw(d1, c1, d - d1, c2);
        if (v == 0) continue;
        tot += v;
        if (audit)
          audit->terms.push_back({scope.term, scope.stratum, scope.prefactor_text,
                                  "R" + std::to_string(d1) + " R" + std::to_string(d - d1),
                                  "R: " + format_codims(c1) + " / R: " + format_codims(c2), scope.beta,
                                  scope.prefactor * v});
      }
    }
    return tot;
  };

  if (i > 2) term("D1", Stratum::D22, "-12", -12, [&] { return single(fixed({2, 2 * (i - 1)})); });
  term("ER22", Stratum::D22, "-12/4", Rational(-12, 4), [&] {
    return over_s4([&](int h, int k, int p, int q) { return ER({h + k}, {p, q}, 0); });
  });
  term("RER22", Stratum::D22, "-12/8", Rational(-12, 8), [&] {
    return over_s4([&](int h, int k, int p, int q) { return RER({h, k}, {p, q}); });
  });
  term("ER23a", Stratum::D23, "4/2", Rational(4, 2), [&] {
    return over_s4([&](int h, int k, int p, int q) { return ER({h}, {k, p + q}, 0); });
  });
  term("ER23b", Stratum::D23, "4/2", Rational(4, 2), [&] {
    return over_s4([&](int h, int k, int p, int q) { return ER({h}, {p, q}, k); });
  });
  term("D0", Stratum::D23, "24", 24, [&] { return single(fixed({i - 1, i + 1})); });
  term("D2", Stratum::D23, "24", 24, [&] { return single(fixed({1, 2 * i - 1})); });
  term("ERR23", Stratum::D23, "4/2", Rational(4, 2), [&] {
    return over_s4([&](int h, int k, int p, int q) { return ERR({h}, {k}, {p, q}); });
  });
  term("ER24", Stratum::D24, "2/4", Rational(2, 4), [&] {
    return over_s4([&](int h, int k, int p, int q) { return ER({}, {h, k, p + q}, 0); });
  });
  term("ERR24", Stratum::D24, "2/4", Rational(2, 4), [&] {
    return over_s4([&](int h, int k, int p, int q) { return ERR({}, {h, k}, {p, q}); });
  });
  term("ER34", Stratum::D34, "-6/6", Rational(-6, 6), [&] {
    return over_s4([&](int h, int k, int p, int q) { return ER({}, {k, p, q}, h); });
  });
  term("ERR34", Stratum::D34, "-6/6", Rational(-6, 6), [&] {
    return over_s4([&](int h, int k, int p, int q) { return ERR({}, {h}, {k, p, q}); });
  });
  // ½ for swapping the branches over the node
  term("NR03", Stratum::D03, "-1/6 * 1/2", Rational(-1, 12), [&] {
    return over_s4([&](int h, int k, int p, int q) { return NR({h}, {k, p, q}); });
  });
  term("NR04", Stratum::D04, "-1/2", Rational(-1, 2), [&] { return NR({}, {1, 1, i - 1, i - 1}); });
  term("CU", Stratum::D04, "-1/2", Rational(-1, 2), [&] {
    last_fixed = with(dt, {1, 1, i - 1, i - 1});
    return single(cusp_raw(d, last_fixed), "CU");
  });
  term("RR2", Stratum::DBeta, "2/8 * 1/2", Rational(2, 16), [&] {
    return over_s4([&](int h, int k, int p, int q) { return RR2({h, k}, {p, q}); });
  });

  int mult = 12 * (2 + (i == 2 ? 1 : 0));
  Rational v = total / mult;
  if (audit) {
    audit->pivot = i;
    audit->lhs_multiplier = mult;
    audit->lhs = v;
  }
  return v;
}

// The rational tails term of the tangency reduction: the tangency class
// restricted to E ∪ R meets the elliptic side, the rational side or the node.
Rational Engine::tangency_tails(int d, const Codims& u, int t) {
  Rational res = 0;
  auto shares = reducible_tangency_expand(t);
  auto subs = submultisets(u);
  for (int de = 2; de < d; ++de) {
    int d1 = d - de;
    for (const auto& U : subs) {
      for (const auto& sh : shares) {
        for (int a = 0; a <= r_; ++a) {
          int b = r_ + sh.node - a;
          if (b < 0 || b > r_) continue;
          Rational x = elliptic_raw(de, with(U.first, {a}), sh.first);
          if (x == 0) continue;
          mpz_class two;
          mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(sh.node));
          res += d1 * (U.mult * sh.mult) * Rational(two) * x * rational_raw(d1, with(U.second, {b}), sh.second);
        }
      }
    }
  }
  return res;
}

Rational Engine::elliptic_raw(int d, const Codims& conds, int t) {
  auto f = fold(d, conds);
  if (f.zero || d < 2) return 0;
  const Codims& u = f.unmarked;
  if (weight_of(u) + t != (r_ + 1) * d) return 0;
  if (d == 2) return f.factor * double_cover(u, t);
  if (t == 0) return f.factor * elliptic_unmarked(d, u);

  std::vector<int> key{d, t};
  key.insert(key.end(), u.begin(), u.end());
  if (auto it = ell_t_.find(key); it != ell_t_.end()) return f.factor * it->second;
  std::string skey = store_key("E", d, 0, t, u);
  if (store_) {
    if (auto hit = store_->find(skey)) {
      ell_t_.emplace(std::move(key), *hit);
      return f.factor * *hit;
    }
  }
  Rational v = elliptic_raw(d, with(u, {2}), t - 1) + Rational(d, 12) * fixed_j_raw(d, u, t - 1) +
               tangency_tails(d, u, t - 1);
  if (store_) store_->insert(skey, v);
  ell_t_.emplace(std::move(key), v);
  return f.factor * v;
}

Rational Engine::elliptic_incidence(int d, const Constraint& c) {
  if (c.r != r_) throw Error(ErrorCode::InvalidArgument, "constraint lives in a different P^r");
  if (c.tangencies != 0) throw Error(ErrorCode::InvalidArgument, "incidence counts take no tangencies");
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "degree must be positive");
  int expected = (r_ + 1) * d;
  int w = weight(c);
  check_balance(w, expected);
  if (w > expected || d < 3) return 0;
  return elliptic_raw(d, c.codims());
}

GetzlerAudit Engine::audit_getzler(int d, const Constraint& c, int pivot) {
  GetzlerAudit audit;
  if (c.tangencies != 0) throw Error(ErrorCode::InvalidArgument, "the Getzler audit takes incidences only");
  int expected = (r_ + 1) * d;
  int w = weight(c);
  check_balance(w, expected);
  if (w > expected || d < 3) return audit;
  auto pivots = admissible_pivots(c);
  if (pivots.empty()) throw Error(ErrorCode::NoPivot, "no codimension occurs twice in " + format_row(c));
  if (std::find(pivots.begin(), pivots.end(), pivot) == pivots.end())
    throw Error(ErrorCode::InvalidArgument, "pivot " + std::to_string(pivot) + " needs two codim-" +
                                                std::to_string(pivot) + " spaces");
  auto f = fold(d, c.codims());
  elliptic_pivot(d, f.unmarked, pivot, &audit);
  audit.lhs *= f.factor;
  for (auto& t : audit.terms) t.value *= f.factor;
  return audit;
}

Rational Engine::elliptic_characteristic(int d, const Constraint& c) {
  if (c.r != r_) throw Error(ErrorCode::InvalidArgument, "constraint lives in a different P^r");
  if (c.tangencies == 0) return elliptic_incidence(d, c);
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "degree must be positive");
  int expected = (r_ + 1) * d;
  int w = weight(c);
  check_balance(w, expected);
  if (w > expected) return 0;
  return elliptic_raw(d, c.codims(), c.tangencies);
}

Lemma51Audit Engine::lemma51_audit(int d, const Constraint& c) {
  int expected = (r_ + 1) * d - 1;
  int w = weight(c);
  check_balance(w, expected);
  if (w > expected) throw Error(ErrorCode::InvalidArgument, "the tangency decomposition needs a one-dimensional family");
  auto f = fold(d, c.codims());
  Lemma51Audit out;
  out.d = d;
  if (f.zero) {
    out.incidence = out.fixed_j = out.tails = out.total = 0;
    return out;
  }
  const Codims& u = f.unmarked;
  out.incidence = f.factor * elliptic_raw(d, with(u, {2}), c.tangencies);
  out.fixed_j = f.factor * fixed_j_raw(d, u, c.tangencies);
  out.tails = f.factor * tangency_tails(d, u, c.tangencies);
  out.total = f.factor * elliptic_raw(d, u, c.tangencies + 1);
  return out;
}

Rational Engine::count(Stack kind, int d, const Constraint& c, int node_codim) {
  switch (kind) {
    case Stack::R: return rational_characteristic(d, c);
    case Stack::E: return elliptic_characteristic(d, c);
    case Stack::N: return nodal_count(d, c, node_codim);
    case Stack::CU: return cuspidal_count(d, c);
    case Stack::J: return fixed_j_count(d, c);
    default:
      throw Error(ErrorCode::InvalidArgument, stack_name(kind) + " needs several degrees; use composite_count");
  }
}

}  // namespace charnum
