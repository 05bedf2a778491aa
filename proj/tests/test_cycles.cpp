#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "kap/cycles.hpp"
#include "kap/quotient.hpp"
#include "kap/words.hpp"

using namespace kap;

namespace {

// ---- independent orbit oracle ---------------------------------------------
// rotations and reversals implemented from scratch; orbits found by
// union-find over the full tuple list, never via tuple_canonical

Tuple o_rot(const Tuple& t) {
  Tuple out(t.begin() + 2, t.end());
  out.push_back(t[0]);
  out.push_back(t[1]);
  return out;
}

Tuple o_rev(const Tuple& t) {
  const int k = static_cast<int>(t.size()) / 2;
  Tuple out(t.size());
  for (int j = 0; j < k; ++j) {
    out[2 * j] = t[2 * (k - 1 - j) + 1];
    out[2 * j + 1] = t[2 * (k - 1 - j)];
  }
  return out;
}

struct OrbitOracle {
  std::vector<Tuple> tuples;
  std::map<Tuple, int> index;
  std::vector<int> root;

  explicit OrbitOracle(int k) : tuples(enumerate_tuples(k)) {
    for (int i = 0; i < static_cast<int>(tuples.size()); ++i) index[tuples[i]] = i;
    root.resize(tuples.size());
    std::iota(root.begin(), root.end(), 0);
    for (int i = 0; i < static_cast<int>(tuples.size()); ++i) {
      unite(i, index.at(o_rot(tuples[i])));
      unite(i, index.at(o_rev(tuples[i])));
    }
  }
  int find(int x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  }
  void unite(int a, int b) { root[find(a)] = find(b); }
  long orbits() {
    std::set<int> rs;
    for (int i = 0; i < static_cast<int>(tuples.size()); ++i) rs.insert(find(i));
    return static_cast<long>(rs.size());
  }
};

int count_non_one(const Tuple& t) {
  int c = 0;
  for (Letter l : t)
    if (l != Letter::One) ++c;
  return c;
}

struct TableRow {
  Word relator;
  std::string label;
};

std::vector<TableRow> load_table(const std::string& name) {
  std::ifstream in(std::string(KAP_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::vector<TableRow> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string num, rel, label;
    REQUIRE(std::getline(ss, num, '\t'));
    REQUIRE(std::getline(ss, rel, '\t'));
    REQUIRE(std::getline(ss, label));
    REQUIRE(std::stoul(num) == rows.size() + 1);
    rows.push_back({parse_word(rel), label});
  }
  return rows;
}

// match a classifier verdict against a table label: T, A, BS(m,n), or *
bool label_matches(const Verdict& v, const std::string& label) {
  if (label == "T") return v.kind == VerdictKind::TorsionWitness;
  if (label == "A")
    return v.kind == VerdictKind::Cyclic || v.kind == VerdictKind::Abelian;
  if (label == "*") return v.kind == VerdictKind::Unresolved;
  if (label.rfind("BS(", 0) == 0) {
    if (v.kind != VerdictKind::BSQuotient) return false;
    int m = 0, n = 0;
    char c = 0;
    std::istringstream ss(label.substr(3));
    ss >> m >> c >> n;
    return bs_params_equal(v.m, v.n, m, n);
  }
  return false;
}

std::vector<std::pair<Word, Word>> load_pairs(const std::string& name) {
  std::ifstream in(std::string(KAP_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::vector<std::pair<Word, Word>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string num, r1, r2;
    REQUIRE(std::getline(ss, num, '\t'));
    REQUIRE(std::getline(ss, r1, '\t'));
    REQUIRE(std::getline(ss, r2));
    rows.push_back({parse_word(r1), parse_word(r2)});
  }
  return rows;
}

CycleComplex single_cycle(int k) {
  CycleComplex c;
  c.name = "cycle" + std::to_string(k);
  c.nv = k;
  std::vector<int> walk(k);
  for (int i = 0; i < k; ++i) {
    c.edges.emplace_back(i, (i + 1) % k);
    walk[i] = i;
  }
  c.cycles.push_back(walk);
  return c;
}

const CycleComplex& catalog_complex(const std::string& name) {
  static std::vector<CycleComplex> cat =
      load_complex_catalog(std::string(KAP_DATA_DIR) + "/complexes.txt");
  for (const auto& c : cat)
    if (c.name == name) return c;
  REQUIRE(false);
  return cat.front();
}

// ---- small permutation-image utilities -------------------------------------
// used to exhibit nonabelian simple quotients of one-relator groups, which
// rules out solvability of the presented group

using Perm5 = std::array<int, 5>;

Perm5 pcompose(const Perm5& p, const Perm5& q) {  // apply q, then p
  Perm5 r{};
  for (int i = 0; i < 5; ++i) r[i] = p[q[i]];
  return r;
}

Perm5 pinverse(const Perm5& p) {
  Perm5 r{};
  for (int i = 0; i < 5; ++i) r[p[i]] = i;
  return r;
}

Perm5 peval(const Word& w, const Perm5& s2, const Perm5& s3) {
  Perm5 acc{0, 1, 2, 3, 4};
  for (const Syllable& s : w.syllables()) {
    Perm5 g = s.gen == Gen::H2 ? s2 : s3;
    if (s.exp < 0) g = pinverse(g);
    for (int i = 0; i < std::abs(s.exp); ++i) acc = pcompose(acc, g);
  }
  return acc;
}

long closure_order(const std::vector<Perm5>& gens) {
  std::set<Perm5> seen{Perm5{0, 1, 2, 3, 4}};
  std::vector<Perm5> frontier(seen.begin(), seen.end());
  while (!frontier.empty()) {
    std::vector<Perm5> next;
    for (const Perm5& x : frontier)
      for (const Perm5& g : gens) {
        Perm5 y = pcompose(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return static_cast<long>(seen.size());
}

}  // namespace

TEST_CASE("tuple enumeration matches the closed form and the orbit oracle") {
  const long expected_classes[] = {0, 0, 0, 0, 36, 105, 351, 1173};
  for (int k = 2; k <= 7; ++k) {
    auto all = enumerate_tuples(k);
    CHECK(static_cast<long>(all.size()) == (1L << (2 * k)) + 2);
    OrbitOracle oracle(k);
    auto classes = tuple_classes(k);
    CHECK(static_cast<long>(classes.size()) == oracle.orbits());
    if (k >= 4) CHECK(static_cast<long>(classes.size()) == expected_classes[k]);
    // canonical form is constant on oracle orbits and distinct across them
    std::map<int, Tuple> canon_of_orbit;
    for (const auto& t : all) {
      int r = oracle.find(oracle.index.at(t));
      Tuple c = tuple_canonical(t);
      auto [it, fresh] = canon_of_orbit.emplace(r, c);
      if (!fresh) CHECK(it->second == c);
      CHECK(c <= t);
    }
    CHECK(canon_of_orbit.size() == classes.size());
  }
}

TEST_CASE("tuple relators: reduced length, cyclic reduction, orbit invariance") {
  std::mt19937_64 rng(20240811);
  int checked = 0;
  for (int k = 2; k <= 7; ++k) {
    auto all = enumerate_tuples(k);
    std::shuffle(all.begin(), all.end(), rng);
    size_t take = std::min<size_t>(all.size(), 250);
    for (size_t i = 0; i < take; ++i) {
      const Tuple& t = all[i];
      Word r = tuple_relator(t);
      CHECK(static_cast<int>(r.length()) == count_non_one(t));
      CHECK(cyclic_reduce(r) == r);
      CHECK(same_relation(r, tuple_relator(o_rot(t))));
      CHECK(same_relation(r, tuple_relator(o_rev(t))));
      ++checked;
    }
  }
  CHECK(checked >= 1000);
}

TEST_CASE("4-cycle classes reproduce the reference verdict table") {
  auto infos = classify_cycle_classes(4);
  auto table = load_table("c4_table.tsv");
  REQUIRE(infos.size() == 36);
  REQUIRE(table.size() == 36);
  std::set<size_t> matched;
  std::set<size_t> unresolved_rows;
  for (const auto& info : infos) {
    int hits = 0;
    size_t row = 0;
    for (size_t j = 0; j < table.size(); ++j)
      if (same_relation(info.relator, table[j].relator)) {
        ++hits;
        row = j;
      }
    REQUIRE(hits == 1);  // classes correspond to table rows bijectively
    CHECK(matched.insert(row).second);
    INFO("row ", row + 1, " label ", table[row].label, " got ",
         info.verdict.label());
    CHECK(label_matches(info.verdict, table[row].label));
    if (info.verdict.kind == VerdictKind::Unresolved) unresolved_rows.insert(row + 1);
  }
  CHECK(matched.size() == 36);
  CHECK(unresolved_rows == std::set<size_t>{5, 7, 14, 17, 21, 22, 25, 26, 29});
}

TEST_CASE("5-cycle classes: verdicts against the starred reference table") {
  auto infos = classify_cycle_classes(5);
  auto table = load_table("c5_table.tsv");
  REQUIRE(infos.size() == 105);
  REQUIRE(table.size() == 105);

  // the reference table stars rows 73 and 77 on the strength of a generator
  // substitution that does not exist: any substitution acts on relator
  // exponent sums by GL(2,Z), and the claimed image has gcd 3 where the row
  // has gcd 1.  The classifier is expected to leave exactly those two open;
  // the A5 witnesses below close the question.
  const Word disputed73 = canonical_relator(parse_word("h2 h3^-2 h2^2 h3^-1 h2"));
  const Word disputed77 = canonical_relator(parse_word("h2 h3^-2 h2 h3^-2 h2"));

  std::set<size_t> matched;
  int starred_total = 0, resolved_total = 0;
  for (const auto& info : infos) {
    int hits = 0;
    size_t row = 0;
    for (size_t j = 0; j < table.size(); ++j)
      if (same_relation(info.relator, table[j].relator)) {
        ++hits;
        row = j;
      }
    REQUIRE(hits == 1);
    CHECK(matched.insert(row).second);
    bool starred = table[row].label == "1";
    bool resolved = info.verdict.kind != VerdictKind::Unresolved;
    bool disputed = info.relator == disputed73 || info.relator == disputed77;
    if (starred) ++starred_total;
    if (resolved) ++resolved_total;
    INFO("row ", row + 1, " starred ", starred, " verdict ",
         info.verdict.label());
    if (disputed) {
      CHECK(starred);
      CHECK_FALSE(resolved);
      CHECK((row + 1 == 73 || row + 1 == 77));
    } else {
      CHECK(resolved == starred);
    }
  }
  CHECK(matched.size() == 105);
  CHECK(starred_total == 35);
  CHECK(resolved_total == 33);

  // both disputed one-relator groups surject onto A5, hence are not
  // solvable and not isomorphic to any BS(1,n); no verdict in this
  // toolkit's vocabulary can validly settle them.  Witness generator
  // images found by exhaustive search over A5 x A5: each pair satisfies
  // the relator and generates all 60 elements.
  struct WitnessCase {
    Word relator;
    Perm5 s2, s3;
  };
  const WitnessCase witnesses[] = {
      {disputed73, {0, 2, 1, 4, 3}, {1, 3, 2, 0, 4}},
      {disputed77, {0, 1, 3, 4, 2}, {2, 3, 0, 1, 4}},
  };
  const Perm5 id{0, 1, 2, 3, 4};
  for (const auto& wc : witnesses) {
    CHECK(peval(wc.relator, wc.s2, wc.s3) == id);
    CHECK(closure_order({wc.s2, wc.s3}) == 60);
  }
}

TEST_CASE("all pairs of surviving 4-cycle relators present finite solvable groups") {
  auto surv = surviving_relators(4);
  REQUIRE(surv.size() == 9);
  int pairs = 0;
  for (size_t i = 0; i < surv.size(); ++i)
    for (size_t j = i + 1; j < surv.size(); ++j) {
      Presentation p = Presentation::of({surv[i], surv[j]});
      EnumResult a = coset_enumerate(p, 200000, 0);
      EnumResult b = coset_enumerate(p, 200000, 1);
      REQUIRE(a.outcome == EnumOutcome::Closed);
      REQUIRE(b.outcome == EnumOutcome::Closed);
      CHECK(a.table->cosets() == b.table->cosets());
      CHECK(finite_solvable(*a.table));
      ++pairs;
    }
  CHECK(pairs == 36);
}

TEST_CASE("labelings of a plain cycle agree with the tuple enumeration") {
  for (int k : {4, 5}) {
    CycleComplex c = single_cycle(k);
    LabelingSet labs = enumerate_labelings(c, false);
    REQUIRE(labs.degree_ok);
    auto tuples = enumerate_tuples(k);
    CHECK(labs.total_raw == static_cast<long long>(tuples.size()));
    CHECK(labs.labelings.size() == tuples.size());
    std::multiset<Word> from_labelings, from_tuples;
    for (const auto& lab : labs.labelings)
      from_labelings.insert(canonical_relator(labeling_relator(c, lab, 0)));
    for (const auto& t : tuples)
      from_tuples.insert(canonical_relator(tuple_relator(t)));
    CHECK(from_labelings == from_tuples);
  }
}

TEST_CASE("labeling enumeration: normalization, degree guard, determinism") {
  const CycleComplex& c45 = catalog_complex("C4--C5");
  CHECK(c45.mode == CycleComplex::Mode::Prefiltered);
  LabelingSet pinned = enumerate_labelings(c45, true);
  LabelingSet full = enumerate_labelings(c45, false);
  REQUIRE(pinned.degree_ok);
  CHECK(pinned.labelings.size() == 920);
  CHECK(pinned.total_raw == 2760);
  // the claimed factor of three is the actual unpinned count
  CHECK(full.labelings.size() == 2760);
  CHECK(full.total_raw == 2760);

  // a vertex of degree four admits no labeling from three letters
  CycleComplex k4;
  k4.name = "star4";
  k4.nv = 5;
  k4.edges = {{0, 1}, {0, 2}, {0, 3}, {0, 4}};
  CHECK_FALSE(enumerate_labelings(k4, false).degree_ok);

  // shuffling the edge list while keeping the same pinned slot changes nothing
  CycleComplex shuffled = c45;
  std::vector<size_t> order(c45.edges.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(7);
  std::shuffle(order.begin() + 1, order.end(), rng);  // keep pinned edge first
  shuffled.edges.clear();
  for (size_t e : order) shuffled.edges.push_back(c45.edges[e]);
  auto pair_set = [](const CycleComplex& c) {
    std::set<std::pair<Word, Word>> s;
    for (const auto& lab : enumerate_labelings(c, true).labelings)
      s.insert({canonical_relator(labeling_relator(c, lab, 0)),
                canonical_relator(labeling_relator(c, lab, 1))});
    return s;
  };
  CHECK(pair_set(shuffled) == pair_set(c45));
}

TEST_CASE("catalog entries parse and walk their graphs") {
  for (const char* name : {"C4--C5", "C4--C6", "C5--C5"}) {
    const CycleComplex& c = catalog_complex(name);
    REQUIRE(c.cycles.size() == 2);
    // defining cycles share exactly two edges
    auto eset = [](const std::vector<int>& w) {
      std::set<std::pair<int, int>> s;
      for (size_t j = 0; j < w.size(); ++j)
        s.insert(std::minmax(w[j], w[(j + 1) % w.size()]));
      return s;
    };
    auto s0 = eset(c.cycles[0]), s1 = eset(c.cycles[1]);
    std::vector<std::pair<int, int>> shared;
    std::set_intersection(s0.begin(), s0.end(), s1.begin(), s1.end(),
                          std::back_inserter(shared));
    CHECK(shared.size() == 2);
  }
  CHECK_THROWS_AS(load_complex_catalog("/nonexistent/x.txt"), std::invalid_argument);
}

TEST_CASE("square-pentagon complex: counts and the surviving pair table") {
  const CycleComplex& c = catalog_complex("C4--C5");
  ComplexReport rep = classify_complex(c);
  CHECK_FALSE(rep.reference_prefilter);
  CHECK(rep.normalized == 920);
  CHECK(rep.after_prefilter == 160);
  CHECK(rep.distinct_pairs == 123);
  CHECK(rep.finite_rows == 113);
  CHECK(rep.finite_solvable_rows == 113);
  CHECK(rep.finite_labelings == 148);
  REQUIRE(rep.survivors.size() == 10);

  auto table = load_pairs("c4_c5_pairs.tsv");
  REQUIRE(table.size() == 10);
  std::set<std::pair<Word, Word>> mine, expected;
  std::multiset<long long> weights;
  for (const auto& s : rep.survivors) {
    weights.insert(s.weight);
    mine.insert({s.r1, s.r2});
  }
  for (const auto& [r1, r2] : table)
    expected.insert({canonical_relator(r1), canonical_relator(r2)});
  CHECK(mine == expected);
  CHECK(weights == std::multiset<long long>{1, 1, 1, 1, 1, 1, 1, 1, 2, 2});
  // nothing in this family resolves by any route other than closing
  for (const auto& [kind, cnt] : rep.resolved_by)
    CHECK((kind == "finite" || kind == "unresolved"));

  // reference-table calibration: the two disputed pentagon rows drop out
  // of the prefilter, each of which carried exactly one pair that closes
  // at order 5 anyway; the surviving set is unchanged
  SurvivorSets ref;
  ref[4] = load_reference_survivors(std::string(KAP_DATA_DIR) + "/c4_table.tsv");
  ref[5] = load_reference_survivors(std::string(KAP_DATA_DIR) + "/c5_table.tsv");
  REQUIRE(ref[4].size() == 9);
  REQUIRE(ref[5].size() == 70);
  CHECK(ref[4] == surviving_relators(4));
  auto s5 = surviving_relators(5);
  std::vector<Word> dropped;
  std::set_difference(s5.begin(), s5.end(), ref[5].begin(), ref[5].end(),
                      std::back_inserter(dropped));
  std::vector<Word> disputed = {
      canonical_relator(parse_word("h2 h3^-2 h2^2 h3^-1 h2")),
      canonical_relator(parse_word("h2 h3^-2 h2 h3^-2 h2"))};
  std::sort(disputed.begin(), disputed.end());
  CHECK(dropped == disputed);

  ComplexReport cal = classify_complex(c, Budget{}, &ref);
  CHECK(cal.reference_prefilter);
  CHECK(cal.after_prefilter == 158);
  CHECK(cal.distinct_pairs == 121);
  CHECK(cal.finite_rows == 111);
  CHECK(cal.finite_solvable_rows == 111);
  CHECK(cal.finite_labelings == 146);
  REQUIRE(cal.survivors.size() == 10);
  std::set<std::pair<Word, Word>> calibrated;
  for (const auto& s : cal.survivors) calibrated.insert({s.r1, s.r2});
  CHECK(calibrated == expected);
}

TEST_CASE("prefiltered complexes: computed numbers for the larger families") {
  const CycleComplex& c46 = catalog_complex("C4--C6");
  ComplexReport r46 = classify_complex(c46);
  MESSAGE("C4--C6: normalized ", r46.normalized, ", prefiltered ",
          r46.after_prefilter, ", distinct pairs ", r46.distinct_pairs,
          ", finite rows ", r46.finite_rows, " (labelings ", r46.finite_labelings,
          "), survivors ", r46.survivors.size());
  CHECK(r46.after_prefilter > 0);
  CHECK(r46.survivors.size() > 0);
  // every surviving pair from the reference list should be realizable here;
  // report the overlap with our survivors
  auto table = load_pairs("c4_c6_pairs.tsv");
  REQUIRE(table.size() == 20);
  std::set<std::pair<Word, Word>> mine;
  for (const auto& s : r46.survivors) mine.insert({s.r1, s.r2});
  int overlap = 0;
  for (const auto& [r1, r2] : table)
    overlap += mine.count({canonical_relator(r1), canonical_relator(r2)});
  MESSAGE("C4--C6 survivor overlap with the reference 20 rows: ", overlap);
  CHECK(r46.survivors.size() == 20);
  CHECK(overlap == 20);

  const CycleComplex& c55 = catalog_complex("C5--C5");
  ComplexReport r55 = classify_complex(c55);
  MESSAGE("C5--C5: normalized ", r55.normalized, ", prefiltered ",
          r55.after_prefilter, ", distinct pairs ", r55.distinct_pairs,
          ", finite rows ", r55.finite_rows, ", survivors ",
          r55.survivors.size());
  CHECK(r55.after_prefilter > 0);
}
