#pragma once

#include <string>
#include <vector>

#include "kap/graph.hpp"

namespace kap {

// one row of the forbidden-subgraph catalog
struct PatternEntry {
  std::string name;
  Graph pattern;
  std::string source;  // provenance note carried from the catalog file
};

// catalog file: name<TAB>graph6<TAB>source, in sieve order
std::vector<PatternEntry> load_patterns(const std::string& path);

// plain subgraph containment: an injective vertex map carrying every
// pattern edge to a host edge; induced additionally forbids host edges
// between images of non-adjacent pattern vertices (offered for
// completeness, the census never uses it)
bool contains_subgraph(const Graph& host, const Graph& pattern,
                       bool induced = false);

// the two cubic "band of squares" families: the prism ladder on g.n
// vertices and its Moebius twist
bool is_Ln(const Graph& g);
bool is_Mn(const Graph& g);

struct CensusRow {
  int n = 0;
  std::vector<long long> pattern_counts;  // aligned with the catalog
  long long ln = 0, mn = 0, remains = 0;
  long long total() const;
};

// sequential sieve over generate(n): each host is charged to the first
// catalog pattern it contains, then the Ln / Mn recognizers, then remains
CensusRow census(int n, const std::vector<PatternEntry>& catalog,
                 int jobs = 0);

// reference census table (rows = patterns plus Ln/Mn/Remains/Total,
// columns = n)
struct CensusExpected {
  std::vector<int> ns;
  std::vector<std::string> names;
  std::vector<std::vector<long long>> counts;

  const std::vector<long long>* row(const std::string& name) const;
  int col(int n) const;  // column index, -1 if absent
};

CensusExpected load_census_expected(const std::string& path);

}  // namespace kap
