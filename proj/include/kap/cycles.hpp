#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "kap/quotient.hpp"
#include "kap/words.hpp"

namespace kap {

// letter attached to one end of a cycle edge: the identity or one of the
// two nontrivial support translates
enum class Letter : uint8_t { One = 0, H2 = 1, H3 = 2 };

// a labeling of a single 2k-gon, flattened as [a1,b1,a2,b2,...,ak,bk]
// where edge i carries tail letter a_i and head letter b_i; admissible
// tuples satisfy a_i != b_i (edge ends differ) and b_i != a_{i+1}
// cyclically (the two ends meeting at a vertex differ)
using Tuple = std::vector<Letter>;

// all admissible tuples for a k-edge cycle, lexicographic order
std::vector<Tuple> enumerate_tuples(int k);

// representative of the orbit of t under the k rotations (shift by one
// edge) and the k reversals of the cycle
Tuple tuple_canonical(const Tuple& t);

// sorted canonical representatives, one per orbit
std::vector<Tuple> tuple_classes(int k);

// the cycle relator prod_i a_i^-1 b_i; never cancels internally, so its
// reduced length is the number of non-identity slots
Word tuple_relator(const Tuple& t);

struct CycleClassInfo {
  Tuple rep;
  Word relator;  // canonical_relator form
  Verdict verdict;
};

// classify the quotient presented by each class relator of the k-cycle
std::vector<CycleClassInfo> classify_cycle_classes(int k, const Budget& b = {});

// canonical relators of the classes left unresolved, sorted
std::vector<Word> surviving_relators(int k, const Budget& b = {});

// canonical relators of the rows a reference verdict table leaves
// unresolved ("*" in label columns, "0" in star columns), sorted; the
// tables shipped under data/ disagree with the computed verdicts on two
// pentagon rows whose tabulated reductions do not hold up (see the tests
// for machine-checked refutations), so the prefilter source is explicit
std::vector<Word> load_reference_survivors(const std::string& table_path);

// per-cycle-length survivor sets (each sorted) overriding the computed
// ones in the composite prefilter
using SurvivorSets = std::map<int, std::vector<Word>>;

// a union of two cycles sharing a path, given as an undirected graph plus
// the two defining cycle walks
struct CycleComplex {
  enum class Mode { Raw, Prefiltered };

  std::string name;
  int nv = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> cycles;  // vertex walks, closed implicitly
  int normalized_edge = 0;               // labelings pin this edge's tail to One
  Mode mode = Mode::Raw;
};

// parse data/complexes.txt-style catalogs; throws std::invalid_argument on
// malformed input
std::vector<CycleComplex> load_complex_catalog(const std::string& path);

struct LabelingSet {
  // one letter per incidence slot; edge e owns slots 2e (end at
  // edges[e].first) and 2e+1 (end at edges[e].second)
  std::vector<std::vector<Letter>> labelings;
  bool degree_ok = true;    // false when some vertex has degree > 3
  long long total_raw = 0;  // count without the pinned end
};

// every labeling where the two ends of each edge differ and the ends
// meeting at a vertex are pairwise distinct; when normalize is set, the
// tail slot of the normalized edge is pinned to One (a letter permutation
// argument gives total_raw = 3 * normalized count)
LabelingSet enumerate_labelings(const CycleComplex& c, bool normalize = true);

// relator read along defining cycle ci of c
Word labeling_relator(const CycleComplex& c, const std::vector<Letter>& lab,
                      int ci);

struct SurvivorPair {
  Word r1, r2;  // canonical relators of the two cycles
  Verdict verdict;
  long long weight = 0;  // labelings realizing this pair
};

struct ComplexReport {
  std::string name;
  CycleComplex::Mode mode = CycleComplex::Mode::Raw;
  bool reference_prefilter = false;  // survivor sets came from tables
  long long total_raw = 0;         // labelings without normalization
  long long normalized = 0;        // labelings with the pinned end
  long long after_prefilter = 0;   // labelings whose relators both survive
                                   // their single-cycle tables (== normalized
                                   // in raw mode)
  long long distinct_pairs = 0;    // distinct (r1, r2) canonical pairs
  long long distinct_presentations = 0;
  long long finite_labelings = 0;  // labelings whose presentation closes
  long long finite_rows = 0;       // pairs whose presentation closes
  long long finite_solvable_rows = 0;  // closed pairs whose group is solvable
  std::map<long, long long> finite_orders;        // order -> presentations
  std::map<std::string, long long> resolved_by;   // verdict kind -> pairs
  std::vector<SurvivorPair> survivors;            // unresolved pairs
};

// enumerate labelings, read off the two relators, and classify each
// distinct pair; pairs sharing a presentation are classified once.  When
// reference is given, prefiltering uses its entry for a cycle's length
// instead of the computed surviving set (lengths without an entry fall
// back to the computed one).
ComplexReport classify_complex(const CycleComplex& c, const Budget& b = {},
                               const SurvivorSets* reference = nullptr);

}  // namespace kap
