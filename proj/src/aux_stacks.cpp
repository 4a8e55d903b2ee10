#include <functional>
#include <map>
#include <sstream>

#include "charnum/engine.hpp"

namespace charnum {

namespace {

using Poly = std::map<std::vector<int>, std::int64_t>;

// Product in Q[H, ψ..., x]/(x²); x is the point class of M̄₀,₄.
Poly poly_mul(const Poly& p, const Poly& q) {
  Poly out;
  for (const auto& [k1, v1] : p) {
    for (const auto& [k2, v2] : q) {
      std::vector<int> k(k1.size());
      for (std::size_t i = 0; i < k.size(); ++i) k[i] = k1[i] + k2[i];
      if (k.back() > 1) continue;
      out[k] += v1 * v2;
    }
  }
  return out;
}

// Every way to hand t labelled tangencies to m branches and the node.
struct BranchShare {
  std::vector<int> branch;
  int node;
  std::int64_t mult;
};

std::vector<BranchShare> share_tangencies(int t, int m) {
  std::vector<BranchShare> out;
  std::vector<int> ts(m, 0);
  while (true) {
    int s = 0;
    for (int x : ts) s += x;
    if (s <= t) {
      std::int64_t w = 1;
      int placed = 0;
      for (int x : ts) {
        placed += x;
        w *= binomial(placed, x);
      }
      w *= binomial(t, s);
      out.push_back({ts, t - s, w});
    }
    int i = 0;
    while (i < m && ts[i] == t) ts[i++] = 0;
    if (i == m) break;
    ++ts[i];
  }
  return out;
}

Rational pow2(int n) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return Rational(p);
}

void for_each_degree_vector(int d, int m, std::vector<int>& cur, const std::function<void()>& f) {
  if (static_cast<int>(cur.size()) == m - 1) {
    if (d >= 1) {
      cur.push_back(d);
      f();
      cur.pop_back();
    }
    return;
  }
  for (int a = 1; a < d; ++a) {
    cur.push_back(a);
    for_each_degree_vector(d - a, m, cur, f);
    cur.pop_back();
  }
}

}  // namespace

// Branches of the given degrees meeting at one point p, each carrying ψ^mono[i]
// at the meeting point, times H(p)^a. Branch order matters; callers divide.
Rational Engine::config_integral(const std::vector<int>& degs, const Codims& unm, const std::vector<int>& mono,
                                 int a, int t) {
  int m = static_cast<int>(degs.size());
  Rational tot = 0;
  auto shares = share_tangencies(t, m);
  for (const auto& dist : distribute(unm, m)) {
    for (const auto& sh : shares) {
      int total = (m - 1) * r_ + a + sh.node;
      std::function<Rational(int, int)> rec = [&](int i, int rem) -> Rational {
        if (i == m - 1) {
          if (rem < 0 || rem > r_) return 0;
          return psi_class(degs[i], mono[i], rem, {}, dist.parts[i], sh.branch[i]);
        }
        Rational acc = 0;
        for (int b = 0; b <= std::min(r_, rem); ++b) {
          Rational x = psi_class(degs[i], mono[i], b, {}, dist.parts[i], sh.branch[i]);
          if (x != 0) acc += x * rec(i + 1, rem - b);
        }
        return acc;
      };
      tot += (dist.mult * sh.mult) * pow2(sh.node) * rec(0, total);
    }
  }
  return tot;
}

// Excess contribution of the locus where the marked points sit on a ghost
// component joining `branches` branches through one image point. The
// integrand is c(T ⊗ O(twist·x)) · H^extra_h / Π(1 − ψ_i − psi_shift·x),
// taken in total degree `top`.
Rational Engine::ghost_correction(int branches, int d, const Codims& unm, int twist, int psi_shift, int top,
                                  int extra_h, int t) {
  int nv = branches + 2;
  Poly p;
  for (int j = 0; j <= r_; ++j) {
    std::vector<int> k(nv, 0);
    k[0] = j + extra_h;
    p[k] += binomial(r_ + 1, j);
    if (j >= 1 && twist != 0) {
      k[0] = j - 1 + extra_h;
      k.back() = 1;
      p[k] += static_cast<std::int64_t>(twist) * (r_ - j + 1) * binomial(r_ + 1, j - 1);
    }
  }
  for (int i = 0; i < branches; ++i) {
    Poly s;
    for (int n = 0; n <= top; ++n) {
      std::vector<int> k(nv, 0);
      k[1 + i] = n;
      s[k] += 1;
      if (n >= 1 && psi_shift != 0) {
        k[1 + i] = n - 1;
        k.back() = 1;
        s[k] += static_cast<std::int64_t>(n) * psi_shift;
      }
    }
    p = poly_mul(p, s);
  }
  int need_x = branches >= 3 || psi_shift != 0 ? 1 : 0;
  Rational tot = 0;
  std::vector<int> degs;
  for_each_degree_vector(d, branches, degs, [&] {
    for (const auto& [k, coef] : p) {
      if (coef == 0 || k.back() != need_x) continue;
      int s = 0;
      for (int x : k) s += x;
      if (s != top) continue;
      std::vector<int> mono(k.begin() + 1, k.begin() + 1 + branches);
      tot += coef * config_integral(degs, unm, mono, k[0], t);
    }
  });
  return tot / factorial(branches);
}

// Maps with two ordered marked points A, B sharing an image point on a
// codim-k space. The diagonal split overcounts maps where A and B sit on a
// contracted component; those loci are removed explicitly.
Rational Engine::nodal_ordered(int d, const Codims& conds, int k, int t) {
  auto f = fold(d, conds);
  if (f.zero || k > r_ || k < 0) return 0;
  const Codims& u = f.unmarked;
  if (weight_of(u) + k + t != (r_ + 1) * d - 1) return 0;
  if (d < 3) return 0;
  if (r_ >= 5)
    throw Error(ErrorCode::Unsupported, "marked-node counts need a three-branch correction for r >= 5");

  std::vector<int> key{d, k, t};
  key.insert(key.end(), u.begin(), u.end());
  if (auto it = nodal_.find(key); it != nodal_.end()) return f.factor * it->second;

  Rational split = 0;
  for (int a = 0; a <= r_; ++a) {
    int b = r_ + k - a;
    if (b >= 0 && b <= r_) split += rational_raw(d, with(u, {a, b}), t);
  }
  Rational bubble = 0;
  for (int j = 0; j < r_; ++j) bubble += binomial(r_ + 1, j) * psi_class(d, r_ - 1 - j, j + k, {}, u, t);
  Rational v = split - bubble;
  if (r_ >= 3) v -= ghost_correction(2, d, u, -1, 1, r_ - 2 + k, k, t);
  nodal_.emplace(std::move(key), v);
  return f.factor * v;
}

Rational Engine::cusp_unmarked(int d, const Codims& u) {
  if (d < 3) return 0;
  if (r_ >= 6) throw Error(ErrorCode::Unsupported, "cuspidal counts need a four-branch correction for r >= 6");
  std::vector<int> key{d};
  key.insert(key.end(), u.begin(), u.end());
  if (auto it = cusp_.find(key); it != cusp_.end()) return it->second;

  std::string skey = store_key("CU", d, 0, 0, u);
  if (store_) {
    if (auto hit = store_->find(skey)) {
      cusp_.emplace(std::move(key), *hit);
      return *hit;
    }
  }
  // Euler class of Hom(T_x C, T P^r) on the one-pointed space, i.e. the
  // differential vanishing at x.
  Rational v = 0;
  for (int j = 0; j <= r_; ++j) v += binomial(r_ + 1, j) * psibar(d, r_ - j, j, {}, u);
  v -= ghost_correction(2, d, u, 0, 0, r_ - 2, 0, 0);
  if (r_ >= 4) v -= ghost_correction(3, d, u, -2, 2, r_ - 3, 0, 0);
  if (store_) store_->insert(skey, v);
  cusp_.emplace(std::move(key), v);
  return v;
}

Rational Engine::cusp_raw(int d, const Codims& conds) {
  auto f = fold(d, conds);
  if (f.zero) return 0;
  if (weight_of(f.unmarked) != (r_ + 1) * d - 2) return 0;
  return f.factor * cusp_unmarked(d, f.unmarked);
}

// Nodal members of the family, a node on a tangency hyperplane counting twice.
Rational Engine::fixed_j_raw(int d, const Codims& conds, int t) {
  Rational tot = 0;
  for (int s = 0; s <= t; ++s) tot += binomial(t, s) * pow2(s) * nodal_ordered(d, conds, s, t - s);
  return tot / 2;
}

Rational Engine::rr2_excess(int d1, const Codims& u1, int d2, const Codims& u2) {
  Rational tot = 0;
  for (int j = 0; j <= r_ - 2; ++j) {
    for (int a = 0; a <= r_ - 2 - j; ++a) {
      int b = r_ - 2 - j - a;
      for (int g = 0; g <= r_; ++g) {
        int h = r_ + j - g;
        if (h < 0 || h > r_) continue;
        Rational x = psibar(d1, a, g, {}, u1);
        if (x == 0) continue;
        tot += binomial(r_ + 1, j) * x * psibar(d2, b, h, {}, u2);
      }
    }
  }
  return tot;
}

Rational Engine::branch_integral(const std::vector<std::pair<int, Codims>>& groups, const std::vector<int>& mono,
                                 int a) {
  int m = static_cast<int>(groups.size());
  std::function<Rational(int, int)> rec = [&](int i, int rem) -> Rational {
    const auto& [di, ui] = groups[i];
    if (i == m - 1) {
      if (rem < 0 || rem > r_) return 0;
      return psibar(di, mono[i], rem, {}, ui);
    }
    Rational acc = 0;
    for (int b = 0; b <= std::min(r_, rem); ++b) {
      Rational x = psibar(di, mono[i], b, {}, ui);
      if (x != 0) acc += x * rec(i + 1, rem - b);
    }
    return acc;
  };
  return rec(0, (m - 1) * r_ + a);
}

// Side 1 bubbles off its node pair while side 2 breaks into two branches with
// its pair on a ghost joining them: three branches through one point.
Rational Engine::rr2_triple(int d1, const Codims& u1, int d2, const Codims& u2) {
  int top = r_ - 3;
  if (top < 0) return 0;
  Poly p;
  for (int j = 0; j <= r_; ++j) {
    p[{j, 0, 0, 0, 0}] += binomial(r_ + 1, j);
    if (j >= 1) p[{j - 1, 0, 0, 0, 1}] -= (r_ - j + 1) * binomial(r_ + 1, j - 1);
  }
  for (int i = 0; i < 3; ++i) {
    Poly s;
    for (int n = 0; n <= top + 1; ++n) {
      std::vector<int> k(5, 0);
      k[1 + i] = n;
      s[k] += 1;
      if (n >= 1) {
        k[1 + i] = n - 1;
        k[4] = 1;
        s[k] += n;
      }
    }
    p = poly_mul(p, s);
  }
  Rational tot = 0;
  for (int e = 1; e < d2; ++e) {
    for (const auto& dist : distribute(u2, 2)) {
      std::vector<std::pair<int, Codims>> groups{{d1, u1}, {e, dist.parts[0]}, {d2 - e, dist.parts[1]}};
      for (const auto& [k, coef] : p) {
        if (coef == 0 || k[4] != 1) continue;
        if (k[0] + k[1] + k[2] + k[3] + k[4] != top) continue;
        tot += dist.mult * coef * branch_integral(groups, {k[1], k[2], k[3]}, k[0]);
      }
    }
  }
  return tot / 2;
}

Rational Engine::rr2_raw(int d1, const Codims& c1, int d2, const Codims& c2) {
  auto f1 = fold(d1, c1);
  auto f2 = fold(d2, c2);
  if (f1.zero || f2.zero) return 0;
  const Codims &u1 = f1.unmarked, &u2 = f2.unmarked;

  std::vector<int> key{d1, d2, static_cast<int>(u1.size())};
  key.insert(key.end(), u1.begin(), u1.end());
  key.insert(key.end(), u2.begin(), u2.end());
  if (auto it = rr2_.find(key); it != rr2_.end()) return f1.factor * f2.factor * it->second;

  Rational v = 0;
  for (int a = 1; a <= r_; ++a) {
    for (int b = 1; b <= r_; ++b) {
      Rational x = rational_raw(d1, with(u1, {a, b}));
      if (x == 0) continue;
      v += x * rational_raw(d2, with(u2, {r_ - a, r_ - b}));
    }
  }
  v -= rr2_excess(d1, u1, d2, u2);
  v -= rr2_triple(d1, u1, d2, u2) + rr2_triple(d2, u2, d1, u1);
  // a nodal component through the other one's node is not in the closure
  for (int a = 0; a <= r_; ++a) {
    int b = r_ - a;
    v -= nodal_ordered(d2, u2, a) * rational_raw(d1, with(u1, {b}));
    v -= nodal_ordered(d1, u1, a) * rational_raw(d2, with(u2, {b}));
  }
  rr2_.emplace(std::move(key), v);
  return f1.factor * f2.factor * v;
}

namespace {

// Set partitions of t labelled items into exactly `blocks` nonempty blocks,
// grouped by block sizes.
void block_shapes(int t, int blocks, int max_size, std::vector<int>& sizes,
                  std::vector<std::pair<std::vector<int>, std::int64_t>>& out) {
  if (blocks == 0) {
    if (t != 0) return;
    std::int64_t n = 1;
    int placed = 0;
    for (int s : sizes) {
      placed += s;
      n *= binomial(placed, s);
    }
    for (std::size_t i = 0; i < sizes.size();) {
      std::size_t j = i;
      while (j < sizes.size() && sizes[j] == sizes[i]) ++j;
      n /= factorial(static_cast<int>(j - i));
      i = j;
    }
    out.push_back({sizes, n});
    return;
  }
  for (int s = std::min(t - blocks + 1, max_size); s >= 1; --s) {
    sizes.push_back(s);
    block_shapes(t - s, blocks - 1, s, sizes, out);
    sizes.pop_back();
  }
}

}  // namespace

// A degree-2 genus-1 map is a double cover of a line branched at 4 points.
// Each incidence fixes the line and offers 2 preimages; a tangency hyperplane
// must pass through a branch point, and a branch point shared by s
// tangencies imposes a codim-s space on the line.
Rational Engine::double_cover(const Codims& conds, int t) {
  for (int c : conds)
    if (c == 0 || c > r_) return 0;
  if (weight_of(conds) + t != 2 * (r_ + 1)) return 0;
  std::vector<std::pair<std::vector<int>, std::int64_t>> shapes;
  std::vector<int> sizes;
  block_shapes(t, 4, t, sizes, shapes);
  Rational tot = 0;
  for (const auto& [shape, n] : shapes) {
    if (shape.front() > r_) continue;
    Codims all = conds;
    all.insert(all.end(), shape.begin(), shape.end());
    tot += n * primary(1, sorted(std::move(all)));
  }
  return tot * pow2(static_cast<int>(conds.size())) / 2;
}

Rational Engine::stack_raw(Stack kind, int d, const Codims& conds) {
  switch (kind) {
    case Stack::R: return rational_raw(d, conds);
    case Stack::E: return elliptic_raw(d, conds);
    case Stack::N: return nodal_ordered(d, conds, 0);
    case Stack::CU: return cusp_raw(d, conds);
    default: throw Error(ErrorCode::InvalidArgument, "no single-component counter for " + stack_name(kind));
  }
}

Rational Engine::composite(const std::vector<Component>& comps, const std::vector<Edge>& edges, const Codims& delta,
                           AuditScope* scope) {
  int n = static_cast<int>(comps.size());
  auto dists = distribute(delta, n);
  Rational tot = 0;
  std::vector<int> choice(edges.size(), 0);  // codim a on edge.a; r+k-a on edge.b
  std::function<void(std::size_t)> walk = [&](std::size_t e) {
    if (e < edges.size()) {
      for (int a = 0; a <= r_; ++a) {
        int b = r_ + edges[e].k - a;
        if (b < 0 || b > r_) continue;
        choice[e] = a;
        walk(e + 1);
      }
      return;
    }
    std::vector<Codims> marks(n);
    for (int i = 0; i < n; ++i) marks[i] = comps[i].marks;
    for (std::size_t j = 0; j < edges.size(); ++j) {
      marks[edges[j].a].push_back(choice[j]);
      marks[edges[j].b].push_back(r_ + edges[j].k - choice[j]);
    }
    for (const auto& m : marks)
      if (count_of(m, 0) > 0) return;
    for (const auto& dist : dists) {
      Rational prod = dist.mult;
      std::vector<Codims> full(n);
      for (int i = 0; i < n && prod != 0; ++i) {
        full[i] = merge(sorted(marks[i]), dist.parts[i]);
        prod *= stack_raw(comps[i].kind, comps[i].d, full[i]);
      }
      if (prod == 0) continue;
      tot += prod;
      if (scope && scope->out) {
        std::ostringstream deg, dis;
        for (int i = 0; i < n; ++i) {
          if (i) {
            deg << ' ';
            dis << " / ";
          }
          deg << stack_name(comps[i].kind) << comps[i].d;
          dis << stack_name(comps[i].kind) << ": " << format_codims(full[i]);
        }
        scope->out->push_back(
            {scope->term, scope->stratum, scope->prefactor_text, deg.str(), dis.str(), scope->beta, scope->prefactor * prod});
      }
    }
  };
  walk(0);
  return tot;
}

// Public, balance-checked entry points.

Rational Engine::nodal_count(int d, const Constraint& c, int node_codim) {
  if (node_codim < 0 || node_codim > r_) throw Error(ErrorCode::InvalidArgument, "node codimension outside 0..r");
  int expected = (r_ + 1) * d - 1;
  int w = weight(c) + node_codim;
  check_balance(w, expected);
  if (w > expected) return 0;
  // The raw count orders the two branches at the node.
  return nodal_ordered(d, c.codims(), node_codim, c.tangencies) / 2;
}

Rational Engine::cuspidal_count(int d, const Constraint& c) {
  if (c.tangencies != 0) throw Error(ErrorCode::Unsupported, "cuspidal counts take incidences only");
  int expected = (r_ + 1) * d - 2;
  int w = weight(c);
  check_balance(w, expected);
  if (w > expected) return 0;
  return cusp_raw(d, c.codims());
}

Rational Engine::fixed_j_count(int d, const Constraint& c) {
  int expected = (r_ + 1) * d - 1;
  int w = weight(c);
  check_balance(w, expected);
  if (w > expected) return 0;
  auto u = fold(d, c.codims());
  if (u.zero) return 0;
  std::string skey = store_key("J", d, 0, c.tangencies, u.unmarked);
  if (store_) {
    if (auto hit = store_->find(skey)) return u.factor * *hit;
  }
  Rational v = fixed_j_raw(d, u.unmarked, c.tangencies);
  if (store_) store_->insert(skey, v);
  return u.factor * v;
}

Rational Engine::rr2_count(int d1, const Constraint& c1, int d2, const Constraint& c2) {
  if (d1 < 1 || d2 < 1) throw Error(ErrorCode::InvalidArgument, "component degrees must be positive");
  if (c1.tangencies || c2.tangencies) throw Error(ErrorCode::Unsupported, "two-nodal counts take incidences only");
  int expected = (r_ + 1) * (d1 + d2) - 2;
  int w = weight(c1) + weight(c2);
  check_balance(w, expected);
  if (w > expected) return 0;
  return rr2_raw(d1, c1.codims(), d2, c2.codims());
}

namespace {

int base_dimension(Stack kind, int r, int d) {
  switch (kind) {
    case Stack::R: return (r + 1) * d + r - 3;
    case Stack::E: return (r + 1) * d;
    case Stack::N: return (r + 1) * d - 1;
    case Stack::CU: return (r + 1) * d - 2;
    default: throw Error(ErrorCode::InvalidArgument, "diagonal_split sides must be R, E, N or CU");
  }
}

}  // namespace

Rational Engine::diagonal_split(const Side& first, const Side& second, int k) {
  if (k < 0 || k > r_) throw Error(ErrorCode::InvalidArgument, "node codimension outside 0..r");
  int need = 0, have = r_ + k;
  for (const Side* s : {&first, &second}) {
    if (s->constraint.tangencies) throw Error(ErrorCode::Unsupported, "diagonal_split takes incidences only");
    if (s->d < 1) throw Error(ErrorCode::InvalidArgument, "component degrees must be positive");
    need += base_dimension(s->kind, r_, s->d) + 1 + static_cast<int>(s->marks.size());
    have += weight(s->constraint) + static_cast<int>(s->marks.size());
    for (int m : s->marks) have += m - 1;
  }
  check_balance(have, need);
  if (have > need) return 0;
  Rational tot = 0;
  for (int a = 0; a <= r_; ++a) {
    int b = r_ + k - a;
    if (b < 0 || b > r_ || a == 0 || b == 0) continue;
    Codims c1 = merge(first.constraint.codims(), sorted(first.marks));
    Codims c2 = merge(second.constraint.codims(), sorted(second.marks));
    Rational x = stack_raw(first.kind, first.d, with(c1, {a}));
    if (x == 0) continue;
    tot += x * stack_raw(second.kind, second.d, with(c2, {b}));
  }
  return tot;
}

Rational Engine::composite_count(Stack kind, const std::vector<int>& degrees, const Constraint& c, int k) {
  if (c.tangencies) throw Error(ErrorCode::Unsupported, "composite counts take incidences only");
  for (int x : degrees)
    if (x < 1) throw Error(ErrorCode::InvalidArgument, "component degrees must be positive");
  std::size_t want = kind == Stack::ERR || kind == Stack::RER ? 3 : 2;
  if (degrees.size() != want) throw Error(ErrorCode::InvalidArgument, stack_name(kind) + " needs " +
                                                                         std::to_string(want) + " degrees");
  std::vector<Component> comps;
  std::vector<Edge> edges;
  switch (kind) {
    case Stack::ER:
      comps = {{Stack::E, degrees[0], {}}, {Stack::R, degrees[1], {}}};
      edges = {{0, 1, k}};
      break;
    case Stack::NR:
      comps = {{Stack::N, degrees[0], {}}, {Stack::R, degrees[1], {}}};
      edges = {{0, 1, k}};
      break;
    case Stack::RR:
      comps = {{Stack::R, degrees[0], {}}, {Stack::R, degrees[1], {}}};
      edges = {{0, 1, k}};
      break;
    case Stack::ERR:
      comps = {{Stack::E, degrees[0], {}}, {Stack::R, degrees[1], {}}, {Stack::R, degrees[2], {}}};
      edges = {{0, 1, 0}, {1, 2, 0}};
      break;
    case Stack::RER:
      comps = {{Stack::R, degrees[0], {}}, {Stack::E, degrees[1], {}}, {Stack::R, degrees[2], {}}};
      edges = {{1, 0, 0}, {1, 2, 0}};
      break;
    default:
      throw Error(ErrorCode::InvalidArgument, stack_name(kind) + " is not a composite stack");
  }
  int total = 0;
  for (int x : degrees) total += x;
  int expected = expected_weight(kind, r_, total, k);
  int w = weight(c);
  check_balance(w, expected);
  if (w > expected) return 0;
  return composite(comps, edges, c.codims());
}

}  // namespace charnum
