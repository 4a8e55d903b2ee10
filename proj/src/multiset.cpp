#include "charnum/multiset.hpp"

#include <algorithm>
#include <sstream>

namespace charnum {

Codims sorted(Codims c) {
  std::sort(c.begin(), c.end());
  return c;
}

Codims with(const Codims& base, std::initializer_list<int> extra) {
  Codims out = base;
  out.insert(out.end(), extra.begin(), extra.end());
  return sorted(std::move(out));
}

Codims merge(const Codims& a, const Codims& b) {
  Codims out;
  out.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

Codims without(const Codims& base, int v) {
  Codims out = base;
  out.erase(std::find(out.begin(), out.end(), v));
  return out;
}

int count_of(const Codims& c, int v) {
  return static_cast<int>(std::count(c.begin(), c.end(), v));
}

std::int64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::int64_t out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

std::int64_t factorial(int n) {
  std::int64_t out = 1;
  for (int i = 2; i <= n; ++i) out *= i;
  return out;
}

std::vector<SubSplit> submultisets(const Codims& ms) {
  std::vector<std::pair<int, int>> groups;  // (value, multiplicity)
  for (int v : ms) {
    if (!groups.empty() && groups.back().first == v)
      ++groups.back().second;
    else
      groups.push_back({v, 1});
  }
  std::vector<SubSplit> out;
  std::vector<int> pick(groups.size(), 0);
  while (true) {
    SubSplit s{{}, {}, 1};
    for (std::size_t g = 0; g < groups.size(); ++g) {
      auto [v, n] = groups[g];
      s.mult *= binomial(n, pick[g]);
      s.first.insert(s.first.end(), pick[g], v);
      s.second.insert(s.second.end(), n - pick[g], v);
    }
    out.push_back(std::move(s));
    std::size_t g = 0;
    while (g < groups.size() && pick[g] == groups[g].second) pick[g++] = 0;
    if (g == groups.size()) break;
    ++pick[g];
  }
  return out;
}

std::vector<Distribution> distribute(const Codims& ms, int n) {
  if (n == 1) return {Distribution{{ms}, 1}};
  std::vector<Distribution> out;
  for (auto& s : submultisets(ms)) {
    for (auto& rest : distribute(s.second, n - 1)) {
      Distribution d{{s.first}, s.mult * rest.mult};
      d.parts.insert(d.parts.end(), rest.parts.begin(), rest.parts.end());
      out.push_back(std::move(d));
    }
  }
  return out;
}

std::string format_codims(const Codims& c) {
  if (c.empty()) return "none";
  std::ostringstream os;
  for (std::size_t i = 0; i < c.size();) {
    std::size_t j = i;
    while (j < c.size() && c[j] == c[i]) ++j;
    if (i) os << ' ';
    os << c[i];
    if (j - i > 1) os << '^' << (j - i);
    i = j;
  }
  return os.str();
}

}  // namespace charnum
