#include "charnum/table.hpp"

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

namespace charnum {

namespace {

void enumerate(int r, int k, int remaining, Constraint& cur, std::vector<Constraint>& out) {
  if (k > r) {
    if (remaining == 0) out.push_back(cur);
    return;
  }
  for (int n = 0; n * (k - 1) <= remaining; ++n) {
    cur.incidences[k - 1] = n;
    enumerate(r, k + 1, remaining - n * (k - 1), cur, out);
  }
  cur.incidences[k - 1] = 0;
}

std::vector<Constraint> rows_of_weight(int r, int total, bool incidence_only) {
  std::vector<Constraint> out;
  for (int t = 0; t <= (incidence_only ? 0 : total); ++t) {
    Constraint cur = Constraint::empty(r);
    cur.tangencies = t;
    enumerate(r, 2, total - t, cur, out);
  }
  return out;
}

}  // namespace

std::vector<Constraint> balanced_rows(int r, int d, bool incidence_only) {
  return rows_of_weight(r, (r + 1) * d, incidence_only);
}

std::vector<TableRow> compute_table(int r, int d, const std::vector<Constraint>& rows, MemoStore* store, int jobs) {
  std::vector<TableRow> out(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) out[i].constraint = rows[i];
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(rows.size())));
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&] {
    try {
      Engine engine(r, store);
      for (std::size_t i = next++; i < rows.size(); i = next++) out[i].value = engine.elliptic_characteristic(d, rows[i]);
    } catch (...) {
      std::lock_guard lock(failure_mu);
      if (!failure) failure = std::current_exception();
      next = rows.size();
    }
  };
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::string format_table(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  for (const auto& row : rows) os << format_row(row.constraint) << ' ' << row.value.get_str() << '\n';
  return os.str();
}

std::vector<CheckResult> verify_pivot_invariance(int r, int d_min, int d_max) {
  std::vector<CheckResult> out;
  Engine largest(r), smallest(r);
  smallest.set_pivot_policy(PivotPolicy::Smallest);
  for (int d = std::max(3, d_min); d <= d_max; ++d) {
    for (const auto& c : balanced_rows(r, d, true)) {
      auto pivots = largest.admissible_pivots(c);
      if (pivots.size() < 2) continue;
      std::ostringstream detail;
      Rational first = largest.elliptic_incidence(d, c);
      bool pass = smallest.elliptic_incidence(d, c) == first;
      detail << "largest-first " << first.get_str() << ", smallest-first "
             << smallest.elliptic_incidence(d, c).get_str();
      for (int i : pivots) {
        Rational v = largest.elliptic_pivot(d, c.codims(), i);
        pass = pass && v == first;
        detail << ", pivot " << i << ": " << v.get_str();
      }
      out.push_back({"r=" + std::to_string(r) + " d=" + std::to_string(d) + " " + format_row(c), pass, detail.str()});
    }
  }
  return out;
}

CheckResult verify_getzler_balance(int r, int d, const Constraint& c, int pivot) {
  Engine engine(r);
  auto audit = engine.audit_getzler(d, c, pivot);
  bool pass = audit.balance() == 0 && audit.lhs == engine.elliptic_incidence(d, c);
  return {"r=" + std::to_string(r) + " d=" + std::to_string(d) + " " + format_row(c) + " pivot " +
              std::to_string(pivot),
          pass, audit.balance_line()};
}

std::vector<CheckResult> verify_lemma51(int r, int d) {
  std::vector<CheckResult> out;
  Engine engine(r);
  for (const auto& c : rows_of_weight(r, (r + 1) * d - 1, false)) {
    auto a = engine.lemma51_audit(d, c);
    Constraint with_tangency = c;
    ++with_tangency.tangencies;
    bool pass = a.holds() && a.total == engine.elliptic_characteristic(d, with_tangency);
    out.push_back({"r=" + std::to_string(r) + " d=" + std::to_string(d) + " family " + format_row(c), pass, a.line()});
  }
  return out;
}

}  // namespace charnum
