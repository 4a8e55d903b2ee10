#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "charnum/audit.hpp"
#include "charnum/constraint.hpp"
#include "charnum/errors.hpp"
#include "charnum/memo_store.hpp"
#include "charnum/multiset.hpp"
#include "charnum/rational.hpp"

namespace charnum {

enum class Stack { R, N, CU, E, J, RR, NR, ER, RR2, ERR, RER };

std::string stack_name(Stack s);
Stack parse_stack(std::string_view name);
// Total condition weight a balanced query on this stack must carry.
int expected_weight(Stack s, int r, int total_degree, int node_codim = 0);

enum class PivotPolicy { Largest, Smallest };

struct AuditScope;

struct Component {
  Stack kind;
  int d;
  Codims marks;  // marked conditions; a node adds one more
};

struct Edge {
  int a;
  int b;
  int k;  // the node lies on a general codim-k space
};

struct Side {
  Stack kind;
  int d;
  Constraint constraint;
  Codims marks;
};

// One way a tangency on a two-component curve can be realised.
struct TangencyShare {
  int first;
  int second;
  int node;  // each of these raises the node codimension by one
  std::int64_t mult;
};

std::vector<TangencyShare> reducible_tangency_expand(int tangencies);

struct VecHash {
  std::size_t operator()(const std::vector<int>& v) const noexcept;
};

using Memo = std::unordered_map<std::vector<int>, Rational, VecHash>;

// Exact counting engine for one ambient P^r.
//
// Not thread-safe; use one Engine per thread. Engines may share a MemoStore.
//
// Methods taking a Constraint check balance: an overconstrained query is 0,
// an underconstrained one throws Error(InfiniteFamily). The raw methods below
// take folded codimension multisets and quietly return 0 off balance, which is
// what the recursions want.
class Engine {
 public:
  explicit Engine(int r, MemoStore* store = nullptr);

  int r() const { return r_; }
  void set_pivot_policy(PivotPolicy p);
  PivotPolicy pivot_policy() const { return policy_; }
  MemoStore* store() const { return store_; }

  // genus 0
  Rational rational_incidence(int d, const Constraint& c, const Codims& marked = {});
  Rational rational_characteristic(int d, const Constraint& c, const Codims& marked = {});

  // auxiliary stacks
  // Curves with a chosen node, its two branches unordered.
  Rational nodal_count(int d, const Constraint& c, int node_codim = 0);
  Rational cuspidal_count(int d, const Constraint& c);
  Rational fixed_j_count(int d, const Constraint& c);
  // Both nodes ordered, branch labels fixed by the components.
  Rational rr2_count(int d1, const Constraint& c1, int d2, const Constraint& c2);
  Rational diagonal_split(const Side& first, const Side& second, int k);
  // degrees: ER (d_e, d₁), NR (d_n, d₁), RR (d₁, d₂), ERR (d_e, d₁, d₂) as a chain, RER (d₁, d_e, d₂).
  Rational composite_count(Stack kind, const std::vector<int>& degrees, const Constraint& c, int k = 0);

  // elliptic
  Rational elliptic_incidence(int d, const Constraint& c);
  GetzlerAudit audit_getzler(int d, const Constraint& c, int pivot);
  Rational elliptic_characteristic(int d, const Constraint& c);
  Lemma51Audit lemma51_audit(int d, const Constraint& one_dimensional);
  // Dispatch used by the CLI; node_codim only applies to N.
  Rational count(Stack kind, int d, const Constraint& c, int node_codim = 0);
  std::vector<int> admissible_pivots(const Constraint& c) const;

  // raw layer: folded codims, no balance errors
  Rational primary(int d, const Codims& ms);
  Rational descendant(int d, int m, int g, const Codims& ms);
  // ∫ ψ̄^m ev*(H^g) over M̄₀,₁₊|marked|(P^r,d) cut by unmarked incidences and t tangencies
  Rational psi_class(int d, int m, int g, const Codims& marked, const Codims& unmarked, int t = 0);
  Rational rational_raw(int d, const Codims& conds, int t = 0);
  Rational nodal_ordered(int d, const Codims& conds, int k, int t = 0);
  Rational cusp_raw(int d, const Codims& conds);
  Rational fixed_j_raw(int d, const Codims& conds, int t);
  Rational rr2_raw(int d1, const Codims& c1, int d2, const Codims& c2);
  Rational double_cover(const Codims& conds, int t);
  Rational elliptic_raw(int d, const Codims& conds, int t = 0);
  Rational elliptic_pivot(int d, const Codims& u, int pivot, GetzlerAudit* audit = nullptr);
  Rational composite(const std::vector<Component>& comps, const std::vector<Edge>& edges, const Codims& delta,
                     AuditScope* scope = nullptr);
  Rational stack_raw(Stack kind, int d, const Codims& conds);

 private:
  struct FoldResult {
    bool zero;
    Rational factor;
    Codims unmarked;
  };
  FoldResult fold(int d, const Codims& conds) const;
  int weight_of(const Codims& u) const;

  Rational psibar(int d, int m, int g, const Codims& marked, const Codims& unmarked);
  Rational cusp_unmarked(int d, const Codims& u);
  Rational elliptic_unmarked(int d, const Codims& u);
  Rational tangency_tails(int d, const Codims& u, int t);
  Rational ghost_correction(int branches, int d, const Codims& unm, int twist, int psi_shift, int top, int extra_h,
                            int t);
  Rational config_integral(const std::vector<int>& degs, const Codims& unm, const std::vector<int>& mono, int a,
                           int t);
  Rational branch_integral(const std::vector<std::pair<int, Codims>>& groups, const std::vector<int>& mono, int a);
  Rational rr2_excess(int d1, const Codims& u1, int d2, const Codims& u2);
  Rational rr2_triple(int d1, const Codims& u1, int d2, const Codims& u2);

  void check_balance(int weight, int expected) const;
  std::string store_key(std::string_view kind, int d, int k, int t, const Codims& u) const;

  int r_;
  MemoStore* store_;
  PivotPolicy policy_ = PivotPolicy::Largest;

  Memo prim_, desc_, psibar_, psi_, rchar_, nodal_, cusp_, rr2_, ell_, ell_t_;
};

// Collects audit rows while the top-level summands are evaluated.
struct AuditScope {
  std::vector<TermAudit>* out;
  std::string term;
  Stratum stratum;
  std::string prefactor_text;
  Rational prefactor;
  std::string beta;
};

}  // namespace charnum
