#pragma once

#include <string>
#include <vector>

#include "kap/graph.hpp"

namespace kap {

// cited product-set lower bounds for |BC| with |B| = 3, |C| = n, applied as
// formulas: the nonabelian torsion-free bound gives n + 4 (needs n >= 4,
// recorded as a side condition on each report), the plain torsion-free
// bound gives n + 2
enum class ProductBoundKind { NonabelianHamidoune, TorsionfreeKemperman };
int product_bound(ProductBoundKind kind, int n);

// one small-support case: the 3n products h_i g_j fall into cells of equal
// value; a vanishing product needs every cell to hold >= 2 points (for a
// unit, the identity cell may be a singleton), and the product-set bound
// caps how many cells that leaves
struct CaseReport {
  enum class Verdict { Infeasible, Reduces, Feasible };
  enum class Target { None, F2ZeroDivisor, F2Unit };

  int n = 0;
  int lower = 0;  // product-set lower bound
  int upper = 0;  // 3n
  std::vector<std::string> constraints;
  Verdict verdict = Verdict::Feasible;
  Target target = Target::None;  // set when verdict == Reduces
  int target_n = 0;
  std::string reason;
  int witness = -1;  // the surplus 3n - lower where the pigeonhole bites
  // inputs the closure of this case leans on, as stable keys:
  // "census-8", "external-unit-odd", "n8-search"
  std::vector<std::string> depends;
};

CaseReport zero_divisor_case(int n);  // 3 <= n <= 9
CaseReport unit_case(int n);          // 2 <= n <= 8

// cell-size multisets for the unit n=8 tight case: all multisets of
// positive cell sizes summing to `total` with at least `min_cells` cells,
// non-increasing order
std::vector<std::vector<int>> cell_multisets(int total, int min_cells);

// verdict per multiset under the two structural constraints (at most one
// singleton cell; at least 12 cells from the product-set bound); exactly
// two survive: all-pairs, and one singleton + one triple + ten pairs
struct MultisetVerdict {
  std::vector<int> cells;
  bool survives = false;
  std::string why;
};
std::vector<MultisetVerdict> n8_unit_multisets();

// exhaustive search for the unit n=8 residual branch: simple graphs on 8
// labeled vertices with exactly one triangle {v0,v2,v3}, deg(v0)=3,
// deg(v2)=deg(v3)=4, all other degrees 3, connected, no two triangles
// sharing an edge, no K_{2,3} subgraph; labeled completion first, then
// canonical dedup.  relaxations flip the final two screens
struct N8SearchOptions {
  bool ban_k23 = true;         // drop to admit K_{2,3}
  bool single_triangle = true; // drop to admit extra (edge-disjoint) triangles
};
std::vector<Graph> unit_n8_search(const N8SearchOptions& opts = {},
                                  int jobs = 0);

// the chained bounds with a dependency trace.  census_verified_max_n is the
// largest even order whose census column was verified locally; columns
// above it up to 18 are taken as attested reference input and flagged
// conditional.  external_unit_theorem asserts the cited nonexistence of
// units with 3-element support and odd co-support at the sizes used by the
// small cases (3, 7, 9); it is an input, never re-proved
struct FinalBounds {
  int zero_divisor_general = 0;
  int zero_divisor_f2 = 0;
  int unit_general = 0;
  std::vector<std::string> trace;        // "<bound> <- <input>" lines
  std::vector<std::string> conditional;  // attested-input caveats
};
FinalBounds final_bounds(int census_verified_max_n, bool external_unit_theorem);

}  // namespace kap
