#include "kap/graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace kap {

int Graph::edge_count() const {
  int twice = 0;
  for (int i = 0; i < n; ++i) twice += degree(i);
  return twice / 2;
}

Graph relabel(const Graph& g, const std::vector<int>& p) {
  Graph h(g.n);
  for (int i = 0; i < g.n; ++i) {
    uint32_t row = g.adj[i];
    while (row) {
      int j = std::countr_zero(row);
      row &= row - 1;
      h.adj[p[i]] |= 1u << p[j];
    }
  }
  return h;
}

std::vector<std::pair<int, int>> edge_list(const Graph& g) {
  std::vector<std::pair<int, int>> es;
  for (int i = 0; i < g.n; ++i) {
    uint32_t row = g.adj[i] >> (i + 1) << (i + 1);
    while (row) {
      int j = std::countr_zero(row);
      row &= row - 1;
      es.emplace_back(i, j);
    }
  }
  return es;
}

bool is_connected(const Graph& g) {
  if (g.n == 0) return true;
  uint32_t seen = 1, frontier = 1;
  while (frontier) {
    uint32_t next = 0;
    while (frontier) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      next |= g.adj[v];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return std::popcount(seen) == g.n;
}

bool is_regular(const Graph& g, int d) {
  for (int i = 0; i < g.n; ++i)
    if (g.degree(i) != d) return false;
  return true;
}

bool is_triangle_free(const Graph& g) {
  for (int i = 0; i < g.n; ++i) {
    uint32_t row = g.adj[i] >> (i + 1) << (i + 1);
    while (row) {
      int j = std::countr_zero(row);
      row &= row - 1;
      if (g.adj[i] & g.adj[j]) return false;
    }
  }
  return true;
}

std::string encode_graph6(const Graph& g) {
  if (g.n > 62) throw std::invalid_argument("graph6 short form needs n < 63");
  std::string out;
  out.push_back(char(63 + g.n));
  int bits = 0, acc = 0;
  for (int j = 1; j < g.n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = acc << 1 | (g.has_edge(i, j) ? 1 : 0);
      if (++bits == 6) {
        out.push_back(char(63 + acc));
        bits = acc = 0;
      }
    }
  if (bits) out.push_back(char(63 + (acc << (6 - bits))));
  return out;
}

Graph decode_graph6(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("graph6: empty string");
  for (char c : s)
    if (c < 63 || c > 126)
      throw std::invalid_argument("graph6: byte out of range");
  int n = s[0] - 63;
  if (n > 32) throw std::invalid_argument("graph6: vertex count beyond 32");
  size_t nbits = size_t(n) * (n - 1) / 2;
  if (s.size() != 1 + (nbits + 5) / 6)
    throw std::invalid_argument("graph6: length mismatch");
  Graph g(n);
  size_t k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k)
      if ((s[1 + k / 6] - 63) >> (5 - k % 6) & 1) g.add_edge(i, j);
  for (; k < (s.size() - 1) * 6; ++k)
    if ((s[1 + k / 6] - 63) >> (5 - k % 6) & 1)
      throw std::invalid_argument("graph6: nonzero padding");
  return g;
}

namespace {

// pack the adjacency matrix of g relabeled by p, preceded by n
std::string matrix_bytes(const Graph& g, const std::vector<int>& p) {
  Graph h = relabel(g, p);
  std::string out;
  out.push_back(char(h.n));
  int bits = 0, acc = 0;
  for (int i = 0; i < h.n; ++i)
    for (int j = 0; j < h.n; ++j) {
      acc = acc << 1 | (h.has_edge(i, j) ? 1 : 0);
      if (++bits == 8) {
        out.push_back(char(acc));
        bits = acc = 0;
      }
    }
  if (bits) out.push_back(char(acc << (8 - bits)));
  return out;
}

// ordered partition of the vertices as a permutation plus cell boundaries;
// value semantics keep the individualization search simple
struct Part {
  int n;
  int perm[32];   // vertices in cell order
  bool bnd[33];   // cell starts at i; bnd[n] is a sentinel

  int cell_end(int st) const {
    int e = st + 1;
    while (e < n && !bnd[e]) ++e;
    return e;
  }
  bool discrete() const {
    for (int i = 0; i < n; ++i)
      if (!bnd[i]) return false;
    return true;
  }
};

// 1-D Weisfeiler-Leman refinement: split every cell by neighbor counts
// into splitter cells until equitable; fragments ordered by ascending
// count, so the evolution is label-independent
void make_equitable(const Graph& g, Part& p) {
  bool on[33] = {};
  int stk[33];
  int top = 0;
  for (int st = 0; st < p.n; st = p.cell_end(st)) {
    stk[top++] = st;
    on[st] = true;
  }
  while (top) {
    int wst = stk[--top];
    on[wst] = false;
    int wend = p.cell_end(wst);
    uint32_t wm = 0;
    for (int i = wst; i < wend; ++i) wm |= 1u << p.perm[i];
    for (int st = 0; st < p.n;) {
      int en = p.cell_end(st);
      if (en - st > 1) {
        int deg[32], lo = 33, hi = -1;
        for (int i = st; i < en; ++i) {
          deg[i - st] = std::popcount(g.adj[p.perm[i]] & wm);
          lo = std::min(lo, deg[i - st]);
          hi = std::max(hi, deg[i - st]);
        }
        if (lo != hi) {
          int tmp[32], at = st;
          for (int c = lo; c <= hi; ++c) {
            int frag = at;
            for (int i = st; i < en; ++i)
              if (deg[i - st] == c) tmp[at++ - st] = p.perm[i];
            if (at > frag && !on[frag]) {
              stk[top++] = frag;
              on[frag] = true;
            }
            if (at > frag) p.bnd[frag] = true;
          }
          for (int i = st; i < en; ++i) p.perm[i] = tmp[i - st];
        }
      }
      st = en;
    }
  }
}

struct CanonSearch {
  const Graph& g;
  std::string best;
  std::vector<int> best_label;

  void leaf(const Part& p) {
    std::vector<int> lab(g.n);
    for (int i = 0; i < g.n; ++i) lab[p.perm[i]] = i;
    std::string bytes = matrix_bytes(g, lab);
    if (best.empty() || bytes < best) {
      best = std::move(bytes);
      best_label = std::move(lab);
    }
  }

  void descend(Part p) {
    make_equitable(g, p);
    if (p.discrete()) {
      leaf(p);
      return;
    }
    int t = 0;
    while (p.cell_end(t) == t + 1) t = t + 1;
    int en = p.cell_end(t);
    for (int i = t; i < en; ++i) {
      Part q = p;
      std::swap(q.perm[t], q.perm[i]);  // individualize perm[i] at front
      std::sort(q.perm + t + 1, q.perm + en);
      q.bnd[t + 1] = true;
      descend(q);
    }
  }
};

}  // namespace

std::vector<int> canonical_labeling(const Graph& g) {
  if (g.n == 0) return {};
  Part p{g.n, {}, {}};
  for (int i = 0; i < g.n; ++i) p.perm[i] = i;
  p.bnd[0] = true;
  p.bnd[g.n] = true;
  CanonSearch s{g};
  s.descend(p);
  return s.best_label;
}

std::string canonical_form(const Graph& g) {
  if (g.n == 0) return std::string(1, '\0');
  return matrix_bytes(g, canonical_labeling(g));
}

Graph canonical_graph(const Graph& g) {
  return relabel(g, canonical_labeling(g));
}

}  // namespace kap
