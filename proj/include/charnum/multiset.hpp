#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

namespace charnum {

// Sorted multiset of codimensions of general linear subspaces.
using Codims = std::vector<int>;

Codims sorted(Codims c);
Codims with(const Codims& base, std::initializer_list<int> extra);
Codims merge(const Codims& a, const Codims& b);
// Removes one occurrence of v; the caller guarantees it is present.
Codims without(const Codims& base, int v);
int count_of(const Codims& c, int v);

// "2^6 3^3" for six codim-2 and three codim-3 spaces.
std::string format_codims(const Codims& c);

std::int64_t binomial(int n, int k);
std::int64_t factorial(int n);

struct SubSplit {
  Codims first;
  Codims second;
  std::int64_t mult;
};

// All ways to split a multiset of interchangeable general spaces in two.
// mult counts the underlying set partitions.
std::vector<SubSplit> submultisets(const Codims& ms);

struct Distribution {
  std::vector<Codims> parts;
  std::int64_t mult;
};

std::vector<Distribution> distribute(const Codims& ms, int n);

}  // namespace charnum
