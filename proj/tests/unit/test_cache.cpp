#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "charnum/engine.hpp"
#include "charnum/errors.hpp"
#include "charnum/memo_store.hpp"
#include "charnum/table.hpp"

using namespace charnum;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  auto dir = fs::temp_directory_path() / "charnum-unit";
  fs::create_directories(dir);
  auto p = dir / name;
  fs::remove(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("journal line round-trips") {
  MemoStore s;
  s.load_text("E 3 3 0 | 0,6,3 = 1\n");
  auto c = Constraint::empty(3);
  c.add(2, 6);
  c.add(3, 3);
  auto key = MemoStore::make_key("E", 3, {3}, 0, {c});
  REQUIRE(s.find(key).has_value());
  CHECK(*s.find(key) == 1);
  CHECK(s.canonical_text() == "E 3 3 0 | 0,6,3 = 1\n");

  auto path = scratch("roundtrip.txt");
  s.save(path);
  MemoStore t;
  t.load(path);
  CHECK(t.canonical_text() == s.canonical_text());
  t.save(path);
  CHECK(slurp(path) == s.canonical_text());
}

TEST_CASE("merging identical journals changes nothing") {
  MemoStore a, b;
  a.load_text("E 3 3 0 | 0,6,3 = 1\nR 2 3 0 | 0,8 = 12\n");
  b.load_text("R 2 3 0 | 0,8 = 12\n");
  auto before = a.canonical_text();
  a.merge(b);
  CHECK(a.canonical_text() == before);
  CHECK(a.size() == 2);
}

TEST_CASE("conflicting values are rejected") {
  MemoStore a, b;
  a.load_text("E 3 3 0 | 0,6,3 = 1\n");
  b.load_text("E 3 3 0 | 0,6,3 = 2\n");
  try {
    a.merge(b);
    FAIL("expected an integrity error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Integrity);
  }
  CHECK(*a.find(a.snapshot().begin()->first) == 1);
  CHECK_THROWS_AS(a.insert(a.snapshot().begin()->first, 3), Error);
}

TEST_CASE("parse errors name the line") {
  MemoStore s;
  try {
    s.load_text("E 3 3 0 | 0,6,3 = 1\nE 3 3 0 0,6,3 = 1\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("seeded entries keep their tag") {
  MemoStore s;
  s.load_text("J 2 3 0 | 0,8 = 12 # oracle-seeded\n");
  auto snap = s.snapshot();
  REQUIRE(snap.size() == 1);
  CHECK(snap.begin()->second.provenance == Provenance::OracleSeeded);
  CHECK(s.canonical_text().find("oracle-seeded") != std::string::npos);
}

TEST_CASE("cold and warm caches give the same table") {
  auto rows = balanced_rows(3, 3);
  MemoStore cold;
  auto first = compute_table(3, 3, rows, &cold);
  CHECK(cold.size() > 0);

  auto path = scratch("warm.txt");
  cold.save(path);
  MemoStore warm;
  warm.load(path);
  auto second = compute_table(3, 3, rows, &warm);
  CHECK(format_table(first) == format_table(second));
  CHECK(warm.canonical_text() == cold.canonical_text());
}

TEST_CASE("parallel and serial tables match") {
  auto rows = balanced_rows(3, 3);
  auto serial = compute_table(3, 3, rows, nullptr, 1);
  MemoStore shared;
  auto parallel = compute_table(3, 3, rows, &shared, 4);
  CHECK(format_table(serial) == format_table(parallel));
}

TEST_CASE("appended journal reloads") {
  auto path = scratch("journal.txt");
  {
    MemoStore s;
    s.attach_journal(path);
    Engine e(2, &s);
    auto c = Constraint::empty(2);
    c.add(2, 9);
    CHECK(e.elliptic_incidence(3, c) == 1);
  }
  MemoStore again;
  again.load(path);
  CHECK(again.size() > 0);
}
