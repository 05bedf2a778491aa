#include "kap/patterns.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "kap/gen.hpp"

#ifdef KAP_HAVE_OPENMP
#include <omp.h>
#endif

namespace kap {

std::vector<PatternEntry> load_patterns(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open catalog: " + path);
  std::vector<PatternEntry> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string name, g6, source;
    if (!std::getline(ss, name, '\t') || !std::getline(ss, g6, '\t'))
      throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                  ": want name<TAB>graph6");
    std::getline(ss, source, '\t');
    out.push_back({name, decode_graph6(g6), source});
  }
  return out;
}

namespace {

// most-constrained-first static order: start at the max-degree vertex,
// then always take the vertex with the most already-placed neighbors
std::vector<int> match_order(const Graph& p) {
  std::vector<int> order;
  uint32_t placed = 0;
  for (int step = 0; step < p.n; ++step) {
    int best = -1, bb = -1, bd = -1;
    for (int v = 0; v < p.n; ++v) {
      if (placed >> v & 1) continue;
      int back = std::popcount(p.adj[v] & placed);
      int d = p.degree(v);
      if (back > bb || (back == bb && d > bd)) {
        best = v;
        bb = back;
        bd = d;
      }
    }
    order.push_back(best);
    placed |= 1u << best;
  }
  return order;
}

bool extend(const Graph& host, const Graph& pat, const std::vector<int>& ord,
            std::vector<int>& img, uint32_t used, size_t at, bool induced) {
  if (at == ord.size()) return true;
  int pv = ord[at];
  for (int hv = 0; hv < host.n; ++hv) {
    if (used >> hv & 1) continue;
    if (host.degree(hv) < pat.degree(pv)) continue;
    bool ok = true;
    for (size_t k = 0; k < at && ok; ++k) {
      bool pe = pat.has_edge(pv, ord[k]);
      bool he = host.has_edge(hv, img[ord[k]]);
      ok = pe ? he : (!induced || !he);
    }
    if (!ok) continue;
    img[pv] = hv;
    if (extend(host, pat, ord, img, used | 1u << hv, at + 1, induced))
      return true;
  }
  return false;
}

}  // namespace

bool contains_subgraph(const Graph& host, const Graph& pattern, bool induced) {
  if (pattern.n > host.n || pattern.edge_count() > host.edge_count())
    return false;
  auto ord = match_order(pattern);
  std::vector<int> img(pattern.n, -1);
  return extend(host, pattern, ord, img, 0, 0, induced);
}

namespace {

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
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  for (int i = 0; i < n / 2; ++i) g.add_edge(i, i + n / 2);
  return g;
}

}  // namespace

// the families start at four squares: the three-square band degenerates
// (the prism into two triangles, the Moebius twist into K_{3,3})
bool is_Ln(const Graph& g) {
  if (g.n < 8 || g.n % 2) return false;
  return canonical_form(g) == canonical_form(prism(g.n / 2));
}

bool is_Mn(const Graph& g) {
  if (g.n < 8 || g.n % 2) return false;
  return canonical_form(g) == canonical_form(moebius(g.n));
}

long long CensusRow::total() const {
  return std::accumulate(pattern_counts.begin(), pattern_counts.end(), 0ll) +
         ln + mn + remains;
}

CensusRow census(int n, const std::vector<PatternEntry>& catalog, int jobs) {
  std::vector<Graph> hosts = generate(n, jobs);
  const int m = int(catalog.size());
  CensusRow row;
  row.n = n;
  row.pattern_counts.assign(m, 0);
  std::vector<int> charge(hosts.size());
#ifdef KAP_HAVE_OPENMP
  int threads = jobs > 0 ? jobs : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
  for (size_t i = 0; i < hosts.size(); ++i) {
    int hit = m + 2;  // remains
    for (int pidx = 0; pidx < m; ++pidx)
      if (contains_subgraph(hosts[i], catalog[pidx].pattern)) {
        hit = pidx;
        break;
      }
    if (hit == m + 2 && is_Ln(hosts[i])) hit = m;
    if (hit == m + 2 && is_Mn(hosts[i])) hit = m + 1;
    charge[i] = hit;
  }
  for (int hit : charge) {
    if (hit < m)
      ++row.pattern_counts[hit];
    else if (hit == m)
      ++row.ln;
    else if (hit == m + 1)
      ++row.mn;
    else
      ++row.remains;
  }
  return row;
}

const std::vector<long long>* CensusExpected::row(
    const std::string& name) const {
  for (size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return &counts[i];
  return nullptr;
}

int CensusExpected::col(int n) const {
  for (size_t i = 0; i < ns.size(); ++i)
    if (ns[i] == n) return int(i);
  return -1;
}

CensusExpected load_census_expected(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open census table: " + path);
  CensusExpected out;
  std::string line;
  if (!std::getline(in, line))
    throw std::invalid_argument(path + ": empty census table");
  std::istringstream head(line);
  std::string cell;
  std::getline(head, cell, ',');  // "name"
  while (std::getline(head, cell, ',')) out.ns.push_back(std::stoi(cell));
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    // names may contain commas (K_{2,3}), so peel the numeric columns off
    // the right and keep the remainder as the name
    std::vector<std::string> cells;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() < out.ns.size() + 1)
      throw std::invalid_argument(path + ": ragged row " + line);
    std::vector<long long> vals;
    for (size_t i = cells.size() - out.ns.size(); i < cells.size(); ++i)
      vals.push_back(std::stoll(cells[i]));
    std::string name = cells[0];
    for (size_t i = 1; i + out.ns.size() < cells.size(); ++i)
      name += "," + cells[i];
    out.names.push_back(std::move(name));
    out.counts.push_back(std::move(vals));
  }
  return out;
}

}  // namespace kap
