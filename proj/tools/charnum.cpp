// charnum: exact characteristic numbers of elliptic and rational curves in P^r.
#include <CLI11.hpp>

#include <array>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>

#include "charnum/engine.hpp"
#include "charnum/memo_store.hpp"
#include "charnum/table.hpp"

namespace {

enum Exit : int {
  kOk = 0,
  kInternal = 1,
  kParse = 2,
  kInfiniteFamily = 3,
  kNoPivot = 4,
  kIntegrity = 5,
  kUnsupported = 6,
  kInvalid = 7,
  kCheckFailed = 8,
};

int exit_code(charnum::ErrorCode c) {
  using charnum::ErrorCode;
  switch (c) {
    case ErrorCode::InfiniteFamily: return kInfiniteFamily;
    case ErrorCode::NoPivot: return kNoPivot;
    case ErrorCode::Parse: return kParse;
    case ErrorCode::Integrity: return kIntegrity;
    case ErrorCode::Unsupported: return kUnsupported;
    case ErrorCode::InvalidArgument: return kInvalid;
  }
  return kInternal;
}

constexpr int kMaxCodim = 9;

struct QueryArgs {
  int r = 2;
  int d = 3;
  int tangents = 0;
  std::array<int, kMaxCodim + 1> c{};
  std::string text;

  void attach(CLI::App* app, bool with_conditions) {
    app->add_option("--r", r, "ambient dimension")->check(CLI::Range(2, kMaxCodim));
    app->add_option("--d", d, "degree")->check(CLI::PositiveNumber);
    if (!with_conditions) return;
    app->add_option("--tangents", tangents, "number of tangency hyperplanes")->check(CLI::NonNegativeNumber);
    for (int k = 1; k <= kMaxCodim; ++k)
      app->add_option("--c" + std::to_string(k), c[k], "number of codim-" + std::to_string(k) + " spaces")
          ->check(CLI::NonNegativeNumber);
    app->add_option("--query", text, "query text, e.g. \"r=3 d=3 c2=6 c3=3\"");
  }

  charnum::Constraint constraint() {
    if (!text.empty()) {
      auto q = charnum::parse_query(text);
      r = q.raw.r;
      d = q.d;
      return q.raw;
    }
    auto out = charnum::Constraint::empty(r);
    out.tangencies = tangents;
    for (int k = 1; k <= kMaxCodim; ++k) {
      if (c[k] == 0) continue;
      if (k > r) throw charnum::Error(charnum::ErrorCode::Parse, "--c" + std::to_string(k) + " exceeds --r");
      out.add(k, c[k]);
    }
    return out;
  }
};

std::unique_ptr<charnum::MemoStore> open_cache(const std::string& override_path) {
  std::string path = override_path;
  if (path.empty()) {
    if (const char* env = std::getenv("CHARNUM_CACHE")) path = env;
  }
  if (path.empty()) return nullptr;
  auto store = std::make_unique<charnum::MemoStore>();
  if (std::filesystem::exists(path)) store->load(path);
  store->attach_journal(path);
  return store;
}

int report(const std::vector<charnum::CheckResult>& results) {
  int failed = 0;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS " : "FAIL ") << r.instance << ": " << r.detail << "\n";
    failed += r.pass ? 0 : 1;
  }
  std::cout << results.size() - failed << "/" << results.size() << " passed\n";
  return failed ? kCheckFailed : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact characteristic numbers of elliptic and rational curves in P^r"};
  app.require_subcommand(0, 1);

  QueryArgs q;
  std::string stack = "E";
  std::string policy = "largest";
  std::string cache_path;
  int node = 0;
  int pivot = 0;
  bool audit = false;
  q.attach(&app, true);
  app.add_option("--stack", stack, "E, R, N, CU or J")->check(CLI::IsMember({"E", "R", "N", "CU", "J"}));
  app.add_option("--node", node, "codimension of the space holding the node (stack N)");
  app.add_flag("--audit", audit, "print the term-by-term breakdown");
  app.add_option("--pivot", pivot, "pivot codimension for --audit (default: by policy)");
  app.add_option("--pivot-policy", policy, "largest or smallest")->check(CLI::IsMember({"largest", "smallest"}));
  app.add_option("--cache", cache_path, "cache journal (default: $CHARNUM_CACHE)");

  auto* table = app.add_subcommand("table", "every balanced row for one (r, d)");
  QueryArgs tq;
  int jobs = 1;
  bool incidence_only = false;
  tq.attach(table, false);
  table->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);
  table->add_flag("--incidence-only", incidence_only, "skip rows with tangencies");

  auto* verify = app.add_subcommand("verify", "run a property check");
  QueryArgs vq;
  std::string mode;
  int d_min = 3;
  verify->add_option("mode", mode, "pivot-invariance, getzler-balance or lemma51")
      ->required()
      ->check(CLI::IsMember({"pivot-invariance", "getzler-balance", "lemma51"}));
  vq.attach(verify, true);
  verify->add_option("--d-min", d_min, "smallest degree for pivot-invariance");
  verify->add_option("--pivot", pivot, "pivot codimension for getzler-balance");

  CLI11_PARSE(app, argc, argv);

  try {
    auto store = open_cache(cache_path);

    if (*table) {
      auto rows = charnum::balanced_rows(tq.r, tq.d, incidence_only);
      std::cout << charnum::format_table(charnum::compute_table(tq.r, tq.d, rows, store.get(), jobs));
      return kOk;
    }

    if (*verify) {
      if (mode == "pivot-invariance") return report(charnum::verify_pivot_invariance(vq.r, d_min, vq.d));
      if (mode == "lemma51") return report(charnum::verify_lemma51(vq.r, vq.d));
      auto c = vq.constraint();
      if (pivot == 0) {
        charnum::Engine e(vq.r);
        auto p = e.admissible_pivots(c);
        if (p.empty()) throw charnum::Error(charnum::ErrorCode::NoPivot, "no admissible pivot");
        pivot = p.back();
      }
      return report({charnum::verify_getzler_balance(vq.r, vq.d, c, pivot)});
    }

    auto c = q.constraint();
    charnum::Engine engine(q.r, store.get());
    if (policy == "smallest") engine.set_pivot_policy(charnum::PivotPolicy::Smallest);
    auto kind = charnum::parse_stack(stack);
    // A single number is only meaningful for a balanced query; the library
    // would answer 0 when overconstrained, the CLI refuses instead.
    int expected = charnum::expected_weight(kind, q.r, q.d, node);
    if (charnum::weight(c) != expected)
      throw charnum::Error(charnum::ErrorCode::InfiniteFamily,
                           "condition weight " + std::to_string(charnum::weight(c)) + " != " +
                               std::to_string(expected) + "; the query does not cut out finitely many curves");
    std::cout << engine.count(kind, q.d, c, node).get_str() << "\n";

    if (audit && kind == charnum::Stack::E) {
      if (c.tangencies == 0) {
        auto pivots = engine.admissible_pivots(c);
        if (pivot == 0 && !pivots.empty())
          pivot = engine.pivot_policy() == charnum::PivotPolicy::Largest ? pivots.back() : pivots.front();
        if (pivot != 0 || !pivots.empty()) std::cout << engine.audit_getzler(q.d, c, pivot).ledger();
      } else {
        auto fewer = c;
        --fewer.tangencies;
        auto a = engine.lemma51_audit(q.d, fewer);
        std::cout << "one tangency traded: I = " << a.incidence.get_str() << ", J = " << a.fixed_j.get_str()
                  << " (weight d/12), tails = " << a.tails.get_str() << "\n"
                  << a.line() << "\n";
      }
    }
    return kOk;
  } catch (const charnum::Error& e) {
    std::cerr << charnum::error_name(e.code()) << ": " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInternal;
  }
}
