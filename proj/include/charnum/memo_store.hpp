#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <vector>

#include "charnum/constraint.hpp"
#include "charnum/rational.hpp"

namespace charnum {

enum class Provenance { Computed, OracleSeeded };

// Persistent map from canonical query keys to exact values.
//
// Journal lines look like
//   E 3 3 0 | 0,6,3 = 1
// i.e. KIND r degrees k | one tuple per component = value, optionally
// followed by "# oracle-seeded". Safe for concurrent readers and writers.
class MemoStore {
 public:
  struct Entry {
    Rational value;
    Provenance provenance = Provenance::Computed;
  };

  MemoStore() = default;
  MemoStore(const MemoStore&) = delete;
  MemoStore& operator=(const MemoStore&) = delete;

  static std::string make_key(std::string_view kind, int r, const std::vector<int>& degrees, int k,
                              const std::vector<Constraint>& components);

  std::optional<Rational> find(const std::string& key) const;
  // Rebinding a key to a different value throws Error(Integrity).
  void insert(const std::string& key, const Rational& value, Provenance p = Provenance::Computed);
  void merge(const MemoStore& other);

  void load(const std::filesystem::path& path);
  void load_text(std::string_view text);
  void save(const std::filesystem::path& path) const;
  // Every new entry is appended to this file as it is inserted.
  void attach_journal(const std::filesystem::path& path);

  std::string canonical_text() const;
  std::size_t size() const;
  std::map<std::string, Entry> snapshot() const;

 private:
  void insert_locked(const std::string& key, const Entry& e);

  mutable std::shared_mutex mu_;
  std::map<std::string, Entry> entries_;
  std::ofstream journal_;
};

}  // namespace charnum
