#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "kap/gen.hpp"
#include "kap/graph.hpp"
#include "kap/patterns.hpp"

using namespace kap;

namespace {

const std::string kData = KAP_DATA_DIR;

Graph from_edges(int n, const std::vector<std::pair<int, int>>& es) {
  Graph g(n);
  for (auto [u, v] : es) g.add_edge(u, v);
  return g;
}

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

Graph complete_bipartite(int a, int b) {
  Graph g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g;
}

Graph prism(int half) {
  Graph g(2 * half);
  for (int i = 0; i < half; ++i) {
    g.add_edge(i, (i + 1) % half);
    g.add_edge(half + i, half + (i + 1) % half);
    g.add_edge(i, half + i);
  }
  return g;
}

Graph moebius(int n) {
  Graph g = cycle(n);
  for (int i = 0; i < n / 2; ++i) g.add_edge(i, i + n / 2);
  return g;
}

Graph random_graph(std::mt19937& rng, int n, double p) {
  Graph g(n);
  std::bernoulli_distribution coin(p);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng)) g.add_edge(i, j);
  return g;
}

// exhaustive injective-map subgraph test (oracle for small hosts)
bool brute_contains(const Graph& host, const Graph& pat, bool induced) {
  if (pat.n > host.n) return false;
  std::vector<int> img(pat.n, -1);
  uint32_t used = 0;
  auto rec = [&](auto&& self, int pv) -> bool {
    if (pv == pat.n) return true;
    for (int hv = 0; hv < host.n; ++hv) {
      if (used >> hv & 1) continue;
      bool ok = true;
      for (int q = 0; q < pv && ok; ++q) {
        bool pe = pat.has_edge(pv, q);
        bool he = host.has_edge(hv, img[q]);
        ok = pe ? he : (!induced || !he);
      }
      if (!ok) continue;
      img[pv] = hv;
      used |= 1u << hv;
      if (self(self, pv + 1)) return true;
      used &= ~(1u << hv);
    }
    return false;
  };
  return rec(rec, 0);
}

std::map<std::string, Graph> load_variants() {
  auto rows = load_patterns(kData + "/pattern_variants.tsv");
  std::map<std::string, Graph> m;
  for (auto& r : rows) m.emplace(r.name, r.pattern);
  return m;
}

void check_row_against(const CensusRow& got,
                       const std::vector<PatternEntry>& cat,
                       const CensusExpected& exp, int n) {
  int c = exp.col(n);
  REQUIRE(c >= 0);
  REQUIRE(got.pattern_counts.size() == cat.size());
  for (size_t i = 0; i < cat.size(); ++i) {
    CAPTURE(n);
    CAPTURE(cat[i].name);
    const auto* want = exp.row(cat[i].name);
    REQUIRE(want != nullptr);
    CHECK(got.pattern_counts[i] == (*want)[c]);
  }
  CHECK(got.ln == (*exp.row("Ln"))[c]);
  CHECK(got.mn == (*exp.row("Mn"))[c]);
  CHECK(got.remains == (*exp.row("Remains"))[c]);
  CHECK(got.total() == (*exp.row("Total"))[c]);
}

}  // namespace

TEST_CASE("catalog: 44 rows, sane pattern shapes") {
  auto cat = load_patterns(kData + "/patterns.tsv");
  REQUIRE(cat.size() == 44);
  std::set<std::string> names;
  for (const auto& e : cat) {
    CAPTURE(e.name);
    CHECK(names.insert(e.name).second);
    CHECK(!e.source.empty());
    CHECK(is_connected(e.pattern));
    CHECK(is_triangle_free(e.pattern));
    int maxdeg = 0;
    for (int v = 0; v < e.pattern.n; ++v)
      maxdeg = std::max(maxdeg, e.pattern.degree(v));
    CHECK(maxdeg <= 3);
    CHECK(e.pattern.n >= 5);
    CHECK(e.pattern.n <= 14);
  }
  CHECK(cat[0].name == "K_{2,3}");
  CHECK(canonical_form(cat[0].pattern) ==
        canonical_form(complete_bipartite(2, 3)));
}

TEST_CASE("matcher: basic containments") {
  Graph k23 = complete_bipartite(2, 3);
  Graph k33 = complete_bipartite(3, 3);
  Graph tri = cycle(3);

  CHECK(contains_subgraph(k33, k23));
  CHECK_FALSE(contains_subgraph(k23, k33));  // pattern larger than host
  CHECK(contains_subgraph(k33, cycle(4)));
  CHECK(contains_subgraph(k33, cycle(6)));
  CHECK_FALSE(contains_subgraph(k33, cycle(5)));  // bipartite host
  CHECK_FALSE(contains_subgraph(k33, tri));
  CHECK_FALSE(contains_subgraph(prism(4), tri));
  CHECK(contains_subgraph(prism(3), tri));
  CHECK(contains_subgraph(k33, Graph(0)));  // empty pattern
  CHECK(contains_subgraph(k33, Graph(1)));

  // plain vs induced: a 3-path maps into a triangle only non-induced
  Graph p3 = from_edges(3, {{0, 1}, {1, 2}});
  CHECK(contains_subgraph(tri, p3));
  CHECK_FALSE(contains_subgraph(tri, p3, true));
  CHECK(contains_subgraph(cycle(4), p3, true));

  // the single 6-vertex census graph carries K_{2,3}
  auto hosts = generate(6);
  REQUIRE(hosts.size() == 1);
  CHECK(contains_subgraph(hosts[0], k23));
}

TEST_CASE("matcher agrees with the injective brute force on hosts <= 8") {
  std::mt19937 rng(20260815);
  int checked = 0, hits = 0, misses = 0;
  for (int t = 0; t < 1000; ++t) {
    int hn = 4 + t % 5;  // hosts on 4..8 vertices
    Graph host = random_graph(rng, hn, 0.45);
    int pn = 2 + int(rng() % hn);
    Graph pat = random_graph(rng, pn, 0.35);
    bool induced = t % 3 == 0;
    bool want = brute_contains(host, pat, induced);
    bool got = contains_subgraph(host, pat, induced);
    CAPTURE(encode_graph6(host));
    CAPTURE(encode_graph6(pat));
    CAPTURE(induced);
    CHECK(got == want);
    ++(want ? hits : misses);
    ++checked;
  }
  // catalog patterns against census hosts: cross-check on the real shapes
  auto cat = load_patterns(kData + "/patterns.tsv");
  for (const Graph& host : generate(8)) {
    for (const auto& e : cat) {
      bool want = brute_contains(host, e.pattern, false);
      CHECK(contains_subgraph(host, e.pattern) == want);
      ++checked;
      ++(want ? hits : misses);
    }
  }
  CHECK(checked >= 1000);
  CHECK(hits > 100);
  CHECK(misses > 100);
}

TEST_CASE("matcher monotonicity under pattern edge deletion") {
  std::mt19937 rng(77);
  auto cat = load_patterns(kData + "/patterns.tsv");
  auto hosts = generate(12);
  int checked = 0;
  for (int t = 0; t < 500; ++t) {
    const Graph& host = hosts[rng() % hosts.size()];
    const Graph& q = cat[rng() % cat.size()].pattern;
    if (!contains_subgraph(host, q)) continue;
    auto es = edge_list(q);
    auto [u, v] = es[rng() % es.size()];
    Graph p = q;
    p.remove_edge(u, v);
    CHECK(contains_subgraph(host, p));
    ++checked;
  }
  CHECK(checked > 60);
}

TEST_CASE("ladder families: recognizers") {
  CHECK(is_Ln(prism(8)));       // L_16
  CHECK(is_Mn(moebius(14)));    // M_14
  CHECK(is_Ln(prism(4)));       // the cube opens the family
  CHECK(is_Mn(moebius(8)));
  Graph k33 = complete_bipartite(3, 3);
  CHECK_FALSE(is_Ln(k33));
  CHECK_FALSE(is_Mn(k33));
  CHECK_FALSE(is_Ln(moebius(16)));
  CHECK_FALSE(is_Mn(prism(8)));
  CHECK_FALSE(is_Ln(Graph(7)));
  std::mt19937 rng(3);
  std::vector<int> p(16);
  for (int i = 0; i < 16; ++i) p[i] = i;
  std::shuffle(p.begin(), p.end(), rng);
  CHECK(is_Ln(relabel(prism(8), p)));
  CHECK(is_Mn(relabel(moebius(16), p)));
}

TEST_CASE("census: every column through n = 14") {
  auto cat = load_patterns(kData + "/patterns.tsv");
  auto exp = load_census_expected(kData + "/census_expected.csv");
  REQUIRE(exp.names.size() == 48);  // 44 patterns + Ln + Mn + Remains + Total
  CHECK(exp.row("K_{2,3}") != nullptr);
  CHECK(exp.row("no-such-row") == nullptr);
  CHECK(exp.col(18) == 7);
  CHECK(exp.col(5) == -1);
  for (int n : {4, 6, 8, 10, 12, 14}) {
    CensusRow got = census(n, cat);
    check_row_against(got, cat, exp, n);
  }
}

TEST_CASE("census: extended n = 16 column") {
  auto cat = load_patterns(kData + "/patterns.tsv");
  auto exp = load_census_expected(kData + "/census_expected.csv");
  CensusRow got = census(16, cat);
  check_row_against(got, cat, exp, 16);
}

TEST_CASE("ambiguous drawings: variants recorded, primaries calibrated") {
  auto cat = load_patterns(kData + "/patterns.tsv");
  auto variants = load_variants();
  REQUIRE(variants.size() == 6);
  auto byname = [&](const std::string& nm) -> size_t {
    for (size_t i = 0; i < cat.size(); ++i)
      if (cat[i].name == nm) return i;
    REQUIRE(false);
    return 0;
  };
  for (auto& [nm, alt] : variants) {
    size_t i = byname(nm);
    CHECK(canonical_form(alt) != canonical_form(cat[i].pattern));
  }

  auto exp = load_census_expected(kData + "/census_expected.csv");

  // swapping the two hexagon-attachment drawings of rows 18/19 breaks the
  // n=16 column (the only column separating them: 7 vs 1)
  auto swapped = cat;
  std::swap(swapped[17].pattern, swapped[18].pattern);
  CensusRow r16 = census(16, swapped);
  int c16 = exp.col(16);
  bool differs = false;
  for (size_t i = 0; i < swapped.size(); ++i)
    if (r16.pattern_counts[i] != (*exp.row(swapped[i].name))[c16])
      differs = true;
  CHECK(differs);
  CHECK(r16.total() == 792);  // conservation holds regardless

  // swapping the two-square and collapsed drawings of rows 13/16 is ruled
  // out by the calibration columns as well
  auto swapped2 = cat;
  std::swap(swapped2[12].pattern, swapped2[15].pattern);
  bool differs2 = false;
  for (int n : {12, 16}) {
    CensusRow r = census(n, swapped2);
    int c = exp.col(n);
    for (size_t i = 0; i < swapped2.size(); ++i)
      if (r.pattern_counts[i] != (*exp.row(swapped2[i].name))[c])
        differs2 = true;
  }
  CHECK(differs2);
}
