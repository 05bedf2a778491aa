#include "kap/quotient.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include <nlohmann/json.hpp>

namespace kap {

std::string verdict_kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::TorsionWitness: return "torsion_witness";
    case VerdictKind::BSQuotient: return "bs_quotient";
    case VerdictKind::Finite: return "finite";
    case VerdictKind::Cyclic: return "cyclic";
    case VerdictKind::Abelian: return "abelian";
    case VerdictKind::Unresolved: return "unresolved";
  }
  return "?";
}

std::string Verdict::to_json() const {
  nlohmann::json j;
  j["kind"] = verdict_kind_name(kind);
  nlohmann::json params = nlohmann::json::object();
  switch (kind) {
    case VerdictKind::TorsionWitness:
      params["root"] = print_word(root);
      params["exponent"] = exponent;
      break;
    case VerdictKind::BSQuotient:
      params["m"] = m;
      params["n"] = n;
      break;
    case VerdictKind::Finite:
      params["order"] = order;
      params["solvable"] = solvable;
      break;
    default:
      break;
  }
  j["parameters"] = params;
  j["evidence"] = evidence;
  return j.dump();
}

std::string Verdict::label() const {
  std::ostringstream s;
  switch (kind) {
    case VerdictKind::TorsionWitness: s << "T"; break;
    case VerdictKind::BSQuotient: s << "BS(" << m << "," << n << ")"; break;
    case VerdictKind::Finite: s << "F(" << order << (solvable ? ",solvable" : ",nonsolvable") << ")"; break;
    case VerdictKind::Cyclic: s << "A"; break;
    case VerdictKind::Abelian: s << "A"; break;
    case VerdictKind::Unresolved: s << "*"; break;
  }
  return s.str();
}

std::array<long, 2> abelian_invariants(const Presentation& p) {
  // exponent-sum rows; d1 = gcd of entries, d1*d2 = gcd of 2x2 minors
  std::vector<std::array<long, 2>> rows;
  for (const auto& w : p.relators) {
    std::array<long, 2> r{0, 0};
    for (const auto& s : w.syllables()) r[static_cast<int>(s.gen)] += s.exp;
    rows.push_back(r);
  }
  long d1 = 0;
  for (const auto& r : rows) d1 = std::gcd(std::gcd(d1, r[0]), r[1]);
  long g2 = 0;
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = i + 1; j < rows.size(); ++j)
      g2 = std::gcd(g2, rows[i][0] * rows[j][1] - rows[i][1] * rows[j][0]);
  if (g2 < 0) g2 = -g2;
  long d2 = (d1 == 0) ? 0 : g2 / d1;
  return {d1, d2};
}

std::pair<Word, int> cyclic_root(const Word& w) {
  auto f = cyclic_reduce(w).flat();
  size_t n = f.size();
  if (n == 0) return {Word(), 1};
  for (size_t p = 1; p <= n / 2; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (size_t i = p; i < n && ok; ++i) ok = f[i] == f[i - p];
    if (ok) return {Word::from_flat({f.begin(), f.begin() + p}), static_cast<int>(n / p)};
  }
  return {cyclic_reduce(w), 1};
}

bool bs_params_equal(int m1, int n1, int m2, int n2) {
  return (m1 == m2 && n1 == n2) || (m1 == n2 && n1 == m2) ||
         (m1 == -m2 && n1 == -n2) || (m1 == -n2 && n1 == -m2);
}

namespace {

// syllables of the cyclic word (first/last runs of a cyclically reduced word
// merged when they share a generator)
std::vector<Syllable> cyclic_syllables(const Word& w) {
  std::vector<Syllable> s = w.syllables();
  if (s.size() >= 2 && s.front().gen == s.back().gen) {
    Syllable merged{s.front().gen, s.front().exp + s.back().exp};
    std::vector<Syllable> out(s.begin() + 1, s.end() - 1);
    out.push_back(merged);
    return out;
  }
  return s;
}

std::optional<std::pair<int, int>> bs_shape_of(const Word& w) {
  auto l = cyclic_syllables(cyclic_reduce(w));
  if (l.size() != 4) return std::nullopt;
  if (l[0].gen != l[2].gen || l[1].gen != l[3].gen || l[0].gen == l[1].gen) return std::nullopt;
  // stable letter t with exponents {+1,-1}: relator rotates to t a^m t^-1 a^-n
  if (l[1].exp == 1 && l[3].exp == -1) return std::pair{l[2].exp, -l[0].exp};
  if (l[1].exp == -1 && l[3].exp == 1) return std::pair{l[0].exp, -l[2].exp};
  if (l[0].exp == 1 && l[2].exp == -1) return std::pair{l[1].exp, -l[3].exp};
  if (l[0].exp == -1 && l[2].exp == 1) return std::pair{l[3].exp, -l[1].exp};
  return std::nullopt;
}

std::optional<std::pair<int, int>> cyclic_shape_of(const Word& w) {
  auto l = cyclic_syllables(cyclic_reduce(w));
  if (l.size() == 1 && (l[0].exp == 1 || l[0].exp == -1)) return std::pair{l[0].exp, 0};
  if (l.size() == 2 && (l[0].exp == 1 || l[0].exp == -1 || l[1].exp == 1 || l[1].exp == -1))
    return std::pair{l[0].exp, l[1].exp};
  return std::nullopt;
}

bool abelian_shape_of(const Word& w) {
  auto l = cyclic_syllables(cyclic_reduce(w));
  return l.size() == 4 && l[0].gen == l[2].gen && l[1].gen == l[3].gen &&
         l[0].gen != l[1].gen && l[0].exp == -l[2].exp && l[1].exp == -l[3].exp &&
         (l[0].exp == 1 || l[0].exp == -1) && (l[1].exp == 1 || l[1].exp == -1);
}

}  // namespace

std::optional<std::pair<int, int>> bs_shape(const Presentation& p) {
  // only meaningful when the presentation is exactly the one-relator BS
  // presentation; with extra relators the group is a proper quotient
  if (p.relators.size() != 1) return std::nullopt;
  return bs_shape_of(p.relators[0]);
}

std::optional<std::pair<int, int>> cyclic_shape(const Presentation& p) {
  for (const auto& w : p.relators)
    if (auto c = cyclic_shape_of(w)) return c;
  return std::nullopt;
}

bool abelian_shape(const Presentation& p) {
  for (const auto& w : p.relators)
    if (abelian_shape_of(w)) return true;
  return false;
}

BallScan scan_tietze_ball(const Presentation& p, const Budget& b) {
  BallScan out;
  struct Node {
    Presentation pres;
    int parent;
    TietzeMove mv;
    int depth;
  };
  std::vector<Node> nodes;
  std::unordered_set<std::string> seen;
  auto state_key = [&](const Presentation& q) {
    return b.use_symmetry ? symmetry_key(q) : q.key();
  };
  Presentation start = Presentation::of(p.relators);
  nodes.push_back({start, -1, TietzeMove::H2_H2H3, 0});
  seen.insert(state_key(start));

  auto trail = [&](int idx) {
    std::vector<std::string> t;
    for (int i = idx; nodes[i].parent >= 0; i = nodes[i].parent)
      t.push_back("apply " + move_name(nodes[i].mv));
    std::reverse(t.begin(), t.end());
    return t;
  };

  for (size_t i = 0; i < nodes.size(); ++i) {
    // copy: pushing children below may reallocate the node vector
    const Presentation q = nodes[i].pres;
    const int depth = nodes[i].depth;
    if (!out.bs) {
      if (auto mn = bs_shape(q)) {
        Verdict v;
        v.kind = VerdictKind::BSQuotient;
        v.m = mn->first;
        v.n = mn->second;
        v.evidence = trail(static_cast<int>(i));
        v.evidence.push_back("relator " + print_word(q.relators[0]) + " presents BS(" +
                             std::to_string(v.m) + "," + std::to_string(v.n) + ")");
        out.bs = v;
      }
    }
    if (!out.cyclic) {
      if (auto c = cyclic_shape(q)) {
        (void)c;
        Verdict v;
        v.kind = VerdictKind::Cyclic;
        v.evidence = trail(static_cast<int>(i));
        for (const auto& w : q.relators)
          if (cyclic_shape_of(w)) {
            v.evidence.push_back("relator " + print_word(w) +
                                 " eliminates one generator; the quotient is cyclic");
            break;
          }
        out.cyclic = v;
      }
    }
    if (!out.abelian) {
      if (abelian_shape(q)) {
        Verdict v;
        v.kind = VerdictKind::Abelian;
        v.evidence = trail(static_cast<int>(i));
        v.evidence.push_back("a relator is a commutator; the quotient is abelian");
        out.abelian = v;
      }
    }
    if (out.bs && out.cyclic && out.abelian) break;
    if (depth >= b.depth) continue;
    for (int mi = 0; mi < kNumTietzeMoves; ++mi) {
      TietzeMove m = static_cast<TietzeMove>(mi);
      Presentation nxt = apply_move(q, m);
      bool too_long = false;
      for (const auto& w : nxt.relators)
        if (static_cast<int>(w.length()) > b.max_len) too_long = true;
      if (too_long) continue;
      std::string k = state_key(nxt);
      if (seen.insert(k).second)
        nodes.push_back({std::move(nxt), static_cast<int>(i), m, depth + 1});
    }
  }
  out.states = static_cast<long>(nodes.size());
  return out;
}

std::optional<Verdict> bs_quotient_search(const Presentation& p, const Budget& b) {
  return scan_tietze_ball(p, b).bs;
}

// ---- coset enumeration -------------------------------------------------

std::vector<int> CosetTable::perm(Gen g) const {
  std::vector<int> out(act.size());
  for (size_t c = 0; c < act.size(); ++c) out[c] = act[c][2 * static_cast<int>(g)];
  return out;
}

bool CosetTable::satisfies(const Word& w) const {
  auto f = w.flat();
  for (size_t c = 0; c < act.size(); ++c) {
    int cur = static_cast<int>(c);
    for (uint8_t x : f) cur = act[cur][x];
    if (cur != static_cast<int>(c)) return false;
  }
  return true;
}

namespace {

constexpr int inv_letter(int x) { return x ^ 1; }

struct Enumerator {
  std::vector<std::array<int, 4>> tab;  // -1 = undefined
  std::vector<int> rep_;                // union-find parents
  std::deque<int> dead;                 // merged cosets pending processing
  long ndef = 0;
  int cap;

  explicit Enumerator(int cap_) : cap(cap_) {
    new_coset();
  }

  int new_coset() {
    tab.push_back({-1, -1, -1, -1});
    rep_.push_back(static_cast<int>(tab.size()) - 1);
    ++ndef;
    return static_cast<int>(tab.size()) - 1;
  }

  int rep(int c) {
    while (rep_[c] != c) {
      rep_[c] = rep_[rep_[c]];
      c = rep_[c];
    }
    return c;
  }

  bool alive(int c) { return rep_[c] == c; }

  void merge(int a, int b) {
    a = rep(a);
    b = rep(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    rep_[b] = a;
    dead.push_back(b);
  }

  void process_coincidences() {
    while (!dead.empty()) {
      int d = dead.front();
      dead.pop_front();
      for (int x = 0; x < 4; ++x) {
        int e = tab[d][x];
        if (e < 0) continue;
        tab[d][x] = -1;
        // detach the back edge if it still points at d
        int er = rep(e);
        if (tab[er][inv_letter(x)] >= 0 && rep(tab[er][inv_letter(x)]) == rep(d))
          tab[er][inv_letter(x)] = -1;
        int dr = rep(d);
        er = rep(e);
        // re-attach edge dr --x--> er, merging on clash
        if (tab[dr][x] >= 0)
          merge(tab[dr][x], er);
        else
          tab[dr][x] = er;
        dr = rep(d);
        er = rep(e);
        if (tab[er][inv_letter(x)] >= 0)
          merge(tab[er][inv_letter(x)], dr);
        else
          tab[er][inv_letter(x)] = dr;
      }
    }
  }

  // scan relator word (as letters) from coset c, filling gaps (HLT)
  bool scan_and_fill(int c, const std::vector<uint8_t>& w) {
    int f = c, bck = c;
    size_t i = 0, j = w.size();
    for (;;) {
      while (i < j && tab[f][w[i]] >= 0) f = tab[f][w[i++]];
      if (i == j) {
        if (f != bck) {
          merge(f, bck);
          process_coincidences();
        }
        return true;
      }
      while (j > i && tab[bck][inv_letter(w[j - 1])] >= 0) bck = tab[bck][inv_letter(w[--j])];
      if (j == i) {
        merge(f, bck);
        process_coincidences();
        return true;
      }
      if (j == i + 1) {
        tab[f][w[i]] = bck;
        tab[bck][inv_letter(w[i])] = f;
        return true;
      }
      if (ndef >= cap) return false;
      int n = new_coset();
      tab[f][w[i]] = n;
      tab[n][inv_letter(w[i])] = f;
      f = n;
      ++i;
    }
  }
};

}  // namespace

EnumResult coset_enumerate(const Presentation& p, int max_cosets, int strategy) {
  std::vector<std::vector<uint8_t>> rels;
  for (const auto& w : p.relators) rels.push_back(w.flat());
  if (strategy == 1) std::reverse(rels.begin(), rels.end());
  std::array<int, 4> fill_order = strategy == 1 ? std::array<int, 4>{3, 2, 1, 0}
                                                : std::array<int, 4>{0, 1, 2, 3};

  Enumerator e(max_cosets);
  for (int c = 0; c < static_cast<int>(e.tab.size()); ++c) {
    if (!e.alive(c)) continue;
    for (const auto& r : rels) {
      if (!e.scan_and_fill(c, r)) return {EnumOutcome::CapExceeded, std::nullopt, e.ndef};
      if (!e.alive(c)) break;
    }
    if (!e.alive(c)) continue;
    for (int x : fill_order) {
      if (e.tab[c][x] >= 0) continue;
      if (e.ndef >= e.cap) return {EnumOutcome::CapExceeded, std::nullopt, e.ndef};
      int n = e.new_coset();
      e.tab[c][x] = n;
      e.tab[n][inv_letter(x)] = c;
    }
  }

  // closed: renumber live cosets in breadth-first order from 0
  std::vector<int> idx(e.tab.size(), -1);
  std::vector<int> order;
  int r0 = e.rep(0);
  idx[r0] = 0;
  order.push_back(r0);
  for (size_t q = 0; q < order.size(); ++q) {
    for (int x = 0; x < 4; ++x) {
      int t = e.tab[order[q]][x];
      if (t < 0) throw std::logic_error("open entry in closed table");
      t = e.rep(t);
      if (idx[t] < 0) {
        idx[t] = static_cast<int>(order.size());
        order.push_back(t);
      }
    }
  }
  CosetTable ct;
  ct.act.resize(order.size());
  for (size_t q = 0; q < order.size(); ++q)
    for (int x = 0; x < 4; ++x) ct.act[q][x] = idx[e.rep(e.tab[order[q]][x])];
  return {EnumOutcome::Closed, std::move(ct), e.ndef};
}

// ---- solvability on the regular representation --------------------------

namespace {

using Perm = std::vector<int>;

Perm pinv(const Perm& a) {
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[a[i]] = static_cast<int>(i);
  return r;
}

Perm pmul(const Perm& a, const Perm& b) {  // (a*b)(i) = a(b(i))
  Perm r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

bool is_identity(const Perm& a) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] != static_cast<int>(i)) return false;
  return true;
}

// orbit of point 0 under the subgroup generated by gens; in a regular ambient
// group, membership of g in that subgroup is exactly g(0) lying in the orbit
struct Orbit {
  std::vector<char> in;
  long size = 0;
  void recompute(const std::vector<Perm>& gens, const std::vector<Perm>& invs, size_t npoints) {
    in.assign(npoints, 0);
    std::vector<int> stk{0};
    in[0] = 1;
    size = 1;
    auto visit = [&](int q) {
      if (!in[q]) {
        in[q] = 1;
        ++size;
        stk.push_back(q);
      }
    };
    while (!stk.empty()) {
      int p = stk.back();
      stk.pop_back();
      for (size_t k = 0; k < gens.size(); ++k) {
        visit(gens[k][p]);
        visit(invs[k][p]);
      }
    }
  }
};

}  // namespace

bool finite_solvable(const CosetTable& t) {
  size_t n = t.act.size();
  if (n <= 1) return true;
  std::vector<Perm> gens{t.perm(Gen::H2), t.perm(Gen::H3)};
  std::vector<Perm> ginv{pinv(gens[0]), pinv(gens[1])};
  Orbit orb;
  orb.recompute(gens, ginv, n);
  long size = orb.size;

  // derived series: replace gens by a generating set of the derived subgroup
  // (normal closure of generator commutators), tracking subgroup order as the
  // orbit size of point 0
  for (int iter = 0; iter < 64; ++iter) {
    std::vector<Perm> next, ninv;
    Orbit norb;
    norb.recompute(next, ninv, n);  // trivial orbit {0}
    std::deque<Perm> work;
    for (size_t i = 0; i < gens.size(); ++i)
      for (size_t j = i + 1; j < gens.size(); ++j) {
        Perm c = pmul(pmul(ginv[i], ginv[j]), pmul(gens[i], gens[j]));
        if (!is_identity(c)) work.push_back(std::move(c));
      }
    while (!work.empty()) {
      Perm h = std::move(work.front());
      work.pop_front();
      if (norb.in[h[0]]) continue;  // already in the subgroup
      next.push_back(std::move(h));
      ninv.push_back(pinv(next.back()));
      norb.recompute(next, ninv, n);
      for (size_t k = 0; k < gens.size(); ++k)
        work.push_back(pmul(pmul(ginv[k], next.back()), gens[k]));
    }
    if (norb.size == 1) return true;
    if (norb.size == size) return false;  // perfect nontrivial section
    gens = std::move(next);
    ginv = std::move(ninv);
    size = norb.size;
  }
  return false;
}

// ---- classifier ----------------------------------------------------------

Verdict classify(const Presentation& pin, const Budget& b) {
  std::vector<std::string> evidence;
  std::vector<Word> rels = Presentation::of(pin.relators).relators;

  // proper-power reduction: in a torsion-free ambient group u^k = 1 forces
  // u = 1, so relators may be replaced by their primitive roots; a
  // single-generator root is an immediate torsion witness
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& w : rels) {
      auto [root, k] = cyclic_root(w);
      if (k < 2) continue;
      Word croot = canonical_relator(root);
      if (croot.syllables().size() == 1) {
        // the primitive root has exponent +-1; canonicalization makes it +1
        Verdict v;
        v.kind = VerdictKind::TorsionWitness;
        v.root = croot;
        v.exponent = k;
        evidence.push_back("relator " + print_word(w) + " is a proper power of a generator");
        v.evidence = std::move(evidence);
        return v;
      }
      evidence.push_back("relator " + print_word(w) + " replaced by its root " + print_word(croot));
      w = croot;
      changed = true;
    }
    if (changed) rels = Presentation::of(rels).relators;
  }
  Presentation p = Presentation::of(rels);

  BallScan scan = scan_tietze_ball(p, b);
  if (scan.bs) {
    Verdict v = *scan.bs;
    if (v.m == 1 || v.m == -1 || v.n == 1 || v.n == -1) {
      v.evidence.insert(v.evidence.begin(), evidence.begin(), evidence.end());
      return v;
    }
    evidence.push_back("BS(" + std::to_string(v.m) + "," + std::to_string(v.n) +
                       ") quotient found but not solvable; ignored");
  }

  EnumResult er = coset_enumerate(p, b.max_cosets);
  if (er.outcome == EnumOutcome::Closed) {
    Verdict v;
    v.kind = VerdictKind::Finite;
    v.order = er.table->cosets();
    v.solvable = finite_solvable(*er.table);
    evidence.push_back("coset enumeration closed at order " + std::to_string(v.order));
    v.evidence = std::move(evidence);
    return v;
  }
  evidence.push_back("coset enumeration hit the cap after " + std::to_string(er.defined) +
                     " cosets");

  for (auto* hit : {&scan.cyclic, &scan.abelian}) {
    if (*hit) {
      Verdict v = **hit;
      v.evidence.insert(v.evidence.begin(), evidence.begin(), evidence.end());
      return v;
    }
  }

  Verdict v;
  v.kind = VerdictKind::Unresolved;
  evidence.push_back("search ball of " + std::to_string(scan.states) + " states exhausted");
  v.evidence = std::move(evidence);
  return v;
}

std::vector<Verdict> classify_lines(const std::vector<std::string>& lines, const Budget& b) {
  std::vector<Verdict> out;
  out.reserve(lines.size());
  for (const auto& line : lines) out.push_back(classify(Presentation::of(parse_relator_list(line)), b));
  return out;
}

}  // namespace kap
