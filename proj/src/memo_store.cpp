#include "charnum/memo_store.hpp"

#include <cctype>
#include <sstream>

#include "charnum/errors.hpp"

namespace charnum {

namespace {

const char* kOracleTag = "# oracle-seeded";

std::string trim(std::string_view s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return std::string(s.substr(a, b - a));
}

std::vector<int> parse_int_list(const std::string& s, std::size_t line) {
  std::vector<int> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty() || item.find_first_not_of("0123456789") != std::string::npos)
      throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": bad number '" + item + "'");
    out.push_back(std::stoi(item));
  }
  return out;
}

// Re-renders a key so that equal keys compare equal as strings.
std::string canonical_key(const std::string& raw, std::size_t line) {
  std::vector<std::string> sections;
  std::stringstream in(raw);
  std::string part;
  while (std::getline(in, part, '|')) sections.push_back(trim(part));
  if (sections.size() < 2) throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": missing '|'");
  std::istringstream head(sections[0]);
  std::string kind, degrees;
  int r = -1, k = -1;
  if (!(head >> kind >> r >> degrees >> k) || r < 2 || k < 0)
    throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": expected 'KIND r degrees k'");
  std::string extra;
  if (head >> extra) throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": trailing '" + extra + "'");
  for (char c : kind)
    if (!std::isalnum(static_cast<unsigned char>(c)))
      throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": bad kind '" + kind + "'");
  auto degs = parse_int_list(degrees, line);
  std::vector<Constraint> comps;
  for (std::size_t i = 1; i < sections.size(); ++i) {
    auto v = parse_int_list(sections[i], line);
    if (static_cast<int>(v.size()) != r)
      throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": a component tuple needs " +
                                        std::to_string(r) + " entries");
    Constraint c = Constraint::empty(r);
    c.tangencies = v[0];
    for (int j = 2; j <= r; ++j) c.add(j, v[j - 1]);
    comps.push_back(c);
  }
  return MemoStore::make_key(kind, r, degs, k, comps);
}

}  // namespace

std::string MemoStore::make_key(std::string_view kind, int r, const std::vector<int>& degrees, int k,
                                const std::vector<Constraint>& components) {
  std::ostringstream os;
  os << kind << ' ' << r << ' ';
  for (std::size_t i = 0; i < degrees.size(); ++i) os << (i ? "," : "") << degrees[i];
  os << ' ' << k;
  for (const auto& c : components) {
    os << " | " << c.tangencies;
    for (int j = 2; j <= r; ++j) os << ',' << c.count(j);
  }
  return os.str();
}

std::optional<Rational> MemoStore::find(const std::string& key) const {
  std::shared_lock lock(mu_);
  auto it = entries_.find(key);
  if (it == entries_.end()) return std::nullopt;
  return it->second.value;
}

void MemoStore::insert_locked(const std::string& key, const Entry& e) {
  auto [it, fresh] = entries_.emplace(key, e);
  if (!fresh) {
    if (it->second.value != e.value)
      throw Error(ErrorCode::Integrity, "cache key '" + key + "' already holds " + it->second.value.get_str() +
                                            ", refusing " + e.value.get_str());
    return;
  }
  if (journal_.is_open()) {
    journal_ << key << " = " << e.value.get_str();
    if (e.provenance == Provenance::OracleSeeded) journal_ << ' ' << kOracleTag;
    journal_ << '\n';
    journal_.flush();
  }
}

void MemoStore::insert(const std::string& key, const Rational& value, Provenance p) {
  std::unique_lock lock(mu_);
  insert_locked(key, Entry{value, p});
}

void MemoStore::merge(const MemoStore& other) {
  if (&other == this) return;
  auto theirs = other.snapshot();
  std::unique_lock lock(mu_);
  for (const auto& [key, e] : theirs) {
    auto it = entries_.find(key);
    if (it != entries_.end() && it->second.value != e.value)
      throw Error(ErrorCode::Integrity, "merge conflict on '" + key + "': " + it->second.value.get_str() + " vs " +
                                            e.value.get_str());
  }
  for (const auto& [key, e] : theirs) insert_locked(key, e);
}

void MemoStore::load_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t n = 0;
  std::vector<std::pair<std::string, Entry>> parsed;
  while (std::getline(in, line)) {
    ++n;
    std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    Provenance prov = Provenance::Computed;
    if (auto tag = body.find('#'); tag != std::string::npos) {
      if (trim(body.substr(tag)) != kOracleTag)
        throw Error(ErrorCode::Parse, "line " + std::to_string(n) + ": unknown annotation");
      prov = Provenance::OracleSeeded;
      body = trim(body.substr(0, tag));
    }
    auto eq = body.rfind('=');
    if (eq == std::string::npos) throw Error(ErrorCode::Parse, "line " + std::to_string(n) + ": missing '='");
    std::string key = canonical_key(body.substr(0, eq), n);
    Rational value;
    try {
      value = parse_rational(trim(body.substr(eq + 1)));
    } catch (const Error& e) {
      throw Error(ErrorCode::Parse, "line " + std::to_string(n) + ": " + e.what());
    }
    parsed.push_back({key, Entry{value, prov}});
  }
  std::unique_lock lock(mu_);
  for (const auto& [key, e] : parsed) insert_locked(key, e);
}

void MemoStore::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Parse, "cannot read cache journal " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  load_text(buf.str());
}

void MemoStore::save(const std::filesystem::path& path) const {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + tmp.string());
    out << canonical_text();
  }
  std::filesystem::rename(tmp, path);
}

void MemoStore::attach_journal(const std::filesystem::path& path) {
  std::unique_lock lock(mu_);
  journal_.close();
  journal_.open(path, std::ios::app);
  if (!journal_) throw Error(ErrorCode::InvalidArgument, "cannot append to " + path.string());
}

std::string MemoStore::canonical_text() const {
  std::shared_lock lock(mu_);
  std::ostringstream os;
  for (const auto& [key, e] : entries_) {
    os << key << " = " << e.value.get_str();
    if (e.provenance == Provenance::OracleSeeded) os << ' ' << kOracleTag;
    os << '\n';
  }
  return os.str();
}

std::size_t MemoStore::size() const {
  std::shared_lock lock(mu_);
  return entries_.size();
}

std::map<std::string, MemoStore::Entry> MemoStore::snapshot() const {
  std::shared_lock lock(mu_);
  return entries_;
}

}  // namespace charnum
