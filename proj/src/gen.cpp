#include "kap/gen.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

#ifdef KAP_HAVE_OPENMP
#include <omp.h>
#endif

namespace kap {

namespace {

void check_n(int n) {
  if (n < 4 || n > 20 || n % 2)
    throw std::domain_error("census wants even n in 4..20");
}

int total_deficit(const Graph& g) {
  int d = 0;
  for (int i = 0; i < g.n; ++i) d += 3 - g.degree(i);
  return d;
}

// can a partial state on g.n vertices still complete to a connected cubic
// triangle-free graph on n vertices?  necessary counts only: enough free
// ends to reach the future part, future capacity not exceeded, and an even
// number of endpoints left for edges inside the future part
bool feasible(const Graph& g, int n) {
  int d = total_deficit(g);
  int future = n - g.n;
  if (future == 0) return d == 0;
  if (d == 0 || d > 3 * future) return false;
  return (3 * future - d) % 2 == 0;
}

// attachment sets for a new vertex: one to three old vertices of degree
// < 3, pairwise non-adjacent (adjacent ends would close a triangle)
std::vector<uint32_t> attachment_sets(const Graph& g) {
  std::vector<int> open;
  for (int i = 0; i < g.n; ++i)
    if (g.degree(i) < 3) open.push_back(i);
  std::vector<uint32_t> sets;
  for (size_t a = 0; a < open.size(); ++a) {
    uint32_t ma = 1u << open[a];
    sets.push_back(ma);
    for (size_t b = a + 1; b < open.size(); ++b) {
      if (g.has_edge(open[a], open[b])) continue;
      uint32_t mb = ma | 1u << open[b];
      sets.push_back(mb);
      for (size_t c = b + 1; c < open.size(); ++c) {
        if (g.has_edge(open[a], open[c]) || g.has_edge(open[b], open[c]))
          continue;
        sets.push_back(mb | 1u << open[c]);
      }
    }
  }
  return sets;
}

std::vector<Graph> expand(const Graph& g, int n) {
  std::vector<Graph> kids;
  for (uint32_t att : attachment_sets(g)) {
    Graph h(g.n + 1);
    std::copy(g.adj.begin(), g.adj.end(), h.adj.begin());
    uint32_t m = att;
    while (m) {
      int v = std::countr_zero(m);
      m &= m - 1;
      h.add_edge(g.n, v);
    }
    if (feasible(h, n)) kids.push_back(std::move(h));
  }
  return kids;
}

std::vector<Graph> finish(const std::map<std::string, Graph>& final_level) {
  std::vector<Graph> out;
  out.reserve(final_level.size());
  for (const auto& [cf, g] : final_level) out.push_back(canonical_graph(g));
  return out;
}

}  // namespace

std::vector<Graph> generate_serial(int n) {
  check_n(n);
  std::vector<Graph> level = {Graph(1)};
  std::map<std::string, Graph> next;
  for (int k = 1; k < n; ++k) {
    next.clear();
    for (const Graph& st : level)
      for (Graph& child : expand(st, n))
        next.try_emplace(canonical_form(child), std::move(child));
    level.clear();
    for (auto& [cf, g] : next) level.push_back(std::move(g));
  }
  std::map<std::string, Graph> done;
  for (const Graph& g : level) done.emplace(canonical_form(g), g);
  return finish(done);
}

std::vector<Graph> generate(int n, int jobs, uint64_t seed) {
  check_n(n);
#ifdef KAP_HAVE_OPENMP
  int threads = jobs > 0 ? jobs : omp_get_max_threads();
#else
  int threads = 1;
  (void)jobs;
#endif
  std::vector<Graph> level = {Graph(1)};
  std::mt19937_64 rng(seed ? seed : 0x6b617067656e6ull);
  for (int k = 1; k < n; ++k) {
    std::shuffle(level.begin(), level.end(), rng);  // shard schedule only
    std::vector<std::vector<std::pair<std::string, Graph>>> local(threads);
#ifdef KAP_HAVE_OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads)
#endif
    for (size_t i = 0; i < level.size(); ++i) {
#ifdef KAP_HAVE_OPENMP
      auto& buf = local[omp_get_thread_num()];
#else
      auto& buf = local[0];
#endif
      for (Graph& child : expand(level[i], n))
        buf.emplace_back(canonical_form(child), std::move(child));
    }
    std::map<std::string, Graph> next;
    for (auto& buf : local)
      for (auto& [cf, g] : buf) next.try_emplace(std::move(cf), std::move(g));
    level.clear();
    for (auto& [cf, g] : next) level.push_back(std::move(g));
  }
  std::map<std::string, Graph> done;
  for (const Graph& g : level) done.emplace(canonical_form(g), g);
  return finish(done);
}

std::vector<Graph> generate_bruteforce(int n) {
  check_n(n);
  if (n > 10) throw std::domain_error("labeled oracle is practical to n = 10");
  std::map<std::string, Graph> seen;
  Graph g(n);
  // complete the least vertex of positive deficit by edges to increasing
  // partners; every labeled cubic graph arises from exactly one branch
  auto rec = [&](auto&& self, int from) -> void {
    int v = 0;
    while (v < n && g.degree(v) == 3) ++v;
    if (v == n) {
      if (is_connected(g)) seen.emplace(canonical_form(g), canonical_graph(g));
      return;
    }
    for (int u = from; u < n; ++u) {
      if (u == v || g.degree(u) == 3 || g.has_edge(v, u)) continue;
      if (g.adj[v] & g.adj[u]) continue;  // common neighbor: triangle
      g.add_edge(v, u);
      int w = 0;
      while (w < n && g.degree(w) == 3) ++w;
      self(self, w == v ? u + 1 : 0);
      g.remove_edge(v, u);
    }
  };
  rec(rec, 0);
  std::vector<Graph> out;
  for (auto& [cf, gg] : seen) out.push_back(gg);
  return out;
}

}  // namespace kap
