#include <boost/container_hash/hash.hpp>

#include "charnum/engine.hpp"

namespace charnum {

std::size_t VecHash::operator()(const std::vector<int>& v) const noexcept {
  return boost::hash_range(v.begin(), v.end());
}

Engine::Engine(int r, MemoStore* store) : r_(r), store_(store) {
  if (r < 2) throw Error(ErrorCode::InvalidArgument, "ambient dimension must be at least 2");
}

void Engine::set_pivot_policy(PivotPolicy p) {
  if (p == policy_) return;
  policy_ = p;
  ell_.clear();
  ell_t_.clear();
}

Engine::FoldResult Engine::fold(int d, const Codims& conds) const {
  FoldResult out{false, 1, {}};
  for (int c : conds) {
    if (c == 0 || c > r_) return {true, 0, {}};
    if (c == 1)
      out.factor *= d;
    else
      out.unmarked.push_back(c);
  }
  out.unmarked = sorted(std::move(out.unmarked));
  return out;
}

int Engine::weight_of(const Codims& u) const {
  int w = 0;
  for (int c : u) w += c - 1;
  return w;
}

void Engine::check_balance(int weight, int expected) const {
  if (weight < expected)
    throw Error(ErrorCode::InfiniteFamily, "condition weight " + std::to_string(weight) + " is below the " +
                                               std::to_string(expected) + " needed for a finite count");
}

std::vector<TangencyShare> reducible_tangency_expand(int t) {
  std::vector<TangencyShare> out;
  for (int t1 = 0; t1 <= t; ++t1)
    for (int t2 = 0; t1 + t2 <= t; ++t2)
      out.push_back({t1, t2, t - t1 - t2, binomial(t, t1) * binomial(t - t1, t2)});
  return out;
}

namespace {

std::vector<int> key_of(std::initializer_list<int> head, const Codims& a, const Codims& b = {}) {
  std::vector<int> k(head);
  k.push_back(static_cast<int>(a.size()));
  k.insert(k.end(), a.begin(), a.end());
  k.insert(k.end(), b.begin(), b.end());
  return k;
}

Rational pow2(int n) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return Rational(p);
}

}  // namespace

Rational Engine::primary(int d, const Codims& ms) {
  if (d == 0) {
    int s = 0;
    for (int a : ms) s += a;
    return ms.size() == 3 && s == r_ ? 1 : 0;
  }
  for (int a : ms)
    if (a > r_ || a == 0) return 0;
  if (count_of(ms, 1) > 0) return d * primary(d, without(ms, 1));
  if (weight_of(ms) != (r_ + 1) * d + r_ - 3) return 0;
  if (ms.size() <= 2) return d == 1 && ms.size() == 2 && ms[0] == r_ && ms[1] == r_ ? 1 : 0;

  auto key = key_of({d}, ms);
  if (auto it = prim_.find(key); it != prim_.end()) return it->second;

  // WDVV on the four points (γ_{a1-1}, H, γ_{a2}, γ_{a3}); the lone term with
  // a constant left side is the invariant we want.
  Codims rest(ms.begin() + 3, ms.end());
  auto subs = submultisets(rest);
  auto pairing = [&](int y1, int y2, int y3, int y4, bool exclude_target) {
    Rational tot = 0;
    for (int d1 = 0; d1 <= d; ++d1) {
      for (const auto& s : subs) {
        for (int e = 0; e <= r_; ++e) {
          if (exclude_target && d1 == 0 && s.first.empty()) continue;
          Codims left = s.first;
          left.insert(left.end(), {y1, y2, e});
          Rational v1 = primary(d1, sorted(std::move(left)));
          if (v1 == 0) continue;
          Codims right = s.second;
          right.insert(right.end(), {y3, y4, r_ - e});
          Rational v2 = primary(d - d1, sorted(std::move(right)));
          tot += s.mult * v1 * v2;
        }
      }
    }
    return tot;
  };
  int x1 = ms[0] - 1, x2 = 1, x3 = ms[1], x4 = ms[2];
  Rational v = pairing(x1, x3, x2, x4, false) - pairing(x1, x2, x3, x4, true);
  prim_.emplace(std::move(key), v);
  return v;
}

Rational Engine::descendant(int d, int m, int g, const Codims& ms) {
  if (m == 0) return primary(d, with(ms, {g}));
  if (g > r_) return 0;
  for (int a : ms)
    if (a > r_) return 0;
  int n = 1 + static_cast<int>(ms.size());
  int s = 0;
  for (int a : ms) s += a;
  if (m + g + s != (r_ + 1) * d + r_ - 3 + n) return 0;
  if (d == 0) return n >= 3 && m == n - 3 && g + s == r_ ? 1 : 0;
  if (count_of(ms, 0) > 0) return descendant(d, m - 1, g, without(ms, 0));

  auto key = key_of({d, m, g}, ms);
  if (auto it = desc_.find(key); it != desc_.end()) return it->second;

  Rational v = 0;
  if (ms.size() < 2) {
    // divisor equation read backwards, to get two primary insertions
    v = (descendant(d, m, g, with(ms, {1})) - descendant(d, m - 1, g + 1, ms)) / d;
  } else {
    // topological recursion for ψ on the first point
    Codims rest(ms.begin() + 2, ms.end());
    for (int d1 = 0; d1 <= d; ++d1) {
      for (const auto& sp : submultisets(rest)) {
        for (int e = 0; e <= r_; ++e) {
          Rational v1 = descendant(d1, m - 1, g, with(sp.first, {e}));
          if (v1 == 0) continue;
          Codims right = sp.second;
          right.insert(right.end(), {r_ - e, ms[0], ms[1]});
          v += sp.mult * v1 * primary(d - d1, sorted(std::move(right)));
        }
      }
    }
  }
  desc_.emplace(std::move(key), v);
  return v;
}

// ψ̄ is pulled back from the space where the unmarked incidences carry no
// points; peel them off one at a time with ψ̄ = ψ − (boundary where x meets 1).
Rational Engine::psibar(int d, int m, int g, const Codims& marked, const Codims& unmarked) {
  if (m < 0 || g > r_) return 0;
  if (unmarked.empty()) return descendant(d, m, g, marked);
  auto key = key_of({d, m, g}, marked, unmarked);
  if (auto it = psibar_.find(key); it != psibar_.end()) return it->second;
  int x = unmarked[0];
  Codims rest(unmarked.begin() + 1, unmarked.end());
  Rational v = psibar(d, m, g, with(marked, {x}), rest) - psibar(d, m - 1, g + x, marked, rest);
  psibar_.emplace(std::move(key), v);
  return v;
}

// Tangency to a general hyperplane is the divisor
//   ((d-1)/d)·H² + Σ (d₁d₂/d)·Δ_{d₁|d₂}
// where H² means one more codim-2 incidence. On a boundary divisor a
// tangency either lands on a side or puts the node on the hyperplane; the
// latter has multiplicity 2.
Rational Engine::psi_class(int d, int m, int g, const Codims& marked, const Codims& unm, int t) {
  if (g > r_ || m < 0) return 0;
  if (t == 0) return psibar(d, m, g, marked, unm);
  auto key = key_of({d, m, g, t}, marked, unm);
  if (auto it = psi_.find(key); it != psi_.end()) return it->second;

  Rational v = Rational(d - 1, d) * psi_class(d, m, g, marked, with(unm, {2}), t - 1);
  v.canonicalize();
  auto marked_splits = submultisets(marked);
  auto unm_splits = submultisets(unm);
  auto shares = reducible_tangency_expand(t - 1);
  for (int d1 = 1; d1 < d; ++d1) {
    int d2 = d - d1;
    Rational w(d1 * d2, d);
    w.canonicalize();
    for (const auto& M : marked_splits) {
      for (const auto& U : unm_splits) {
        for (const auto& sh : shares) {
          for (int a = 0; a <= r_; ++a) {
            int b = r_ + sh.node - a;
            if (b < 0 || b > r_) continue;
            Rational s2 = rational_raw(d2, merge(merge(M.second, {b}), U.second), sh.second);
            if (s2 == 0) continue;
            Rational s1 = psi_class(d1, m, g, with(M.first, {a}), U.first, sh.first);
            if (s1 == 0) continue;
            v += w * (M.mult * U.mult * sh.mult) * pow2(sh.node) * s1 * s2;
          }
        }
      }
    }
  }
  psi_.emplace(std::move(key), v);
  return v;
}

Rational Engine::rational_raw(int d, const Codims& conds, int t) {
  if (d < 1) return 0;
  auto f = fold(d, conds);
  if (f.zero) return 0;
  const Codims& u = f.unmarked;
  if (weight_of(u) + t != (r_ + 1) * d + r_ - 3) return 0;
  if (t == 0) return f.factor * primary(d, u);

  auto key = key_of({d, t}, u);
  if (auto it = rchar_.find(key); it != rchar_.end()) return f.factor * it->second;

  Rational v = Rational(d - 1, d) * rational_raw(d, with(u, {2}), t - 1);
  v.canonicalize();
  Rational acc = 0;
  auto shares = reducible_tangency_expand(t - 1);
  for (int d1 = 1; d1 < d; ++d1) {
    int d2 = d - d1;
    Rational w(d1 * d2, d);
    w.canonicalize();
    for (const auto& U : submultisets(u)) {
      for (const auto& sh : shares) {
        for (int a = 0; a <= r_; ++a) {
          int b = r_ + sh.node - a;
          if (b < 0 || b > r_) continue;
          Rational s1 = rational_raw(d1, with(U.first, {a}), sh.first);
          if (s1 == 0) continue;
          Rational s2 = rational_raw(d2, with(U.second, {b}), sh.second);
          acc += w * (U.mult * sh.mult) * pow2(sh.node) * s1 * s2;
        }
      }
    }
  }
  // ordered degree splits count each boundary divisor twice
  v += acc / 2;
  rchar_.emplace(std::move(key), v);
  return f.factor * v;
}

Rational Engine::rational_characteristic(int d, const Constraint& c, const Codims& marked) {
  if (c.r != r_) throw Error(ErrorCode::InvalidArgument, "constraint lives in a different P^r");
  if (d < 1) throw Error(ErrorCode::InvalidArgument, "degree must be positive");
  int w = weight(c);
  for (int a : marked) {
    if (a < 1 || a > r_)
      throw Error(ErrorCode::InvalidArgument, "marked condition codim " + std::to_string(a) + " outside 1..r");
    w += a - 1;
  }
  int expected = (r_ + 1) * d + r_ - 3;
  check_balance(w, expected);
  if (w > expected) return 0;
  return rational_raw(d, merge(c.codims(), sorted(marked)), c.tangencies);
}

Rational Engine::rational_incidence(int d, const Constraint& c, const Codims& marked) {
  if (c.tangencies != 0) throw Error(ErrorCode::InvalidArgument, "incidence counts take no tangencies");
  return rational_characteristic(d, c, marked);
}

}  // namespace charnum
