#include "kap/cycles.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace kap {

std::vector<Tuple> enumerate_tuples(int k) {
  if (k < 2) throw std::invalid_argument("cycle needs at least two edges");
  const int n = 2 * k;
  std::vector<Tuple> out;
  Tuple cur(n, Letter::One);
  // slot s must differ from slot s-1 (edge constraint on even/odd pairs,
  // vertex constraint across consecutive edges) and the last from the first
  std::function<void(int)> rec = [&](int s) {
    if (s == n) {
      if (cur[n - 1] != cur[0]) out.push_back(cur);
      return;
    }
    for (int l = 0; l < 3; ++l) {
      Letter L = static_cast<Letter>(l);
      if (s > 0 && cur[s - 1] == L) continue;
      cur[s] = L;
      rec(s + 1);
    }
  };
  rec(0);
  return out;
}

namespace {

Tuple rotate_tuple(const Tuple& t) {
  // shift by one edge: [a2,b2,...,ak,bk,a1,b1]
  Tuple out(t.begin() + 2, t.end());
  out.push_back(t[0]);
  out.push_back(t[1]);
  return out;
}

Tuple reverse_tuple(const Tuple& t) {
  // traverse the cycle backwards: edge j becomes edge k-1-j with its two
  // ends swapped
  const int k = static_cast<int>(t.size()) / 2;
  Tuple out(t.size());
  for (int j = 0; j < k; ++j) {
    out[2 * j] = t[2 * (k - 1 - j) + 1];
    out[2 * j + 1] = t[2 * (k - 1 - j)];
  }
  return out;
}

}  // namespace

Tuple tuple_canonical(const Tuple& t) {
  Tuple best = t;
  for (Tuple s : {t, reverse_tuple(t)}) {
    for (int r = 0; r < static_cast<int>(t.size()) / 2; ++r) {
      if (s < best) best = s;
      s = rotate_tuple(s);
    }
  }
  return best;
}

std::vector<Tuple> tuple_classes(int k) {
  std::set<Tuple> reps;
  for (const Tuple& t : enumerate_tuples(k)) reps.insert(tuple_canonical(t));
  return {reps.begin(), reps.end()};
}

namespace {

void append_end(Word& w, Letter a, Letter b) {
  if (a == Letter::H2) w.append(Gen::H2, -1);
  else if (a == Letter::H3) w.append(Gen::H3, -1);
  if (b == Letter::H2) w.append(Gen::H2, 1);
  else if (b == Letter::H3) w.append(Gen::H3, 1);
}

}  // namespace

Word tuple_relator(const Tuple& t) {
  Word w;
  for (size_t i = 0; i + 1 < t.size(); i += 2) append_end(w, t[i], t[i + 1]);
  return w;
}

std::vector<CycleClassInfo> classify_cycle_classes(int k, const Budget& b) {
  std::vector<CycleClassInfo> out;
  for (const Tuple& rep : tuple_classes(k)) {
    CycleClassInfo info;
    info.rep = rep;
    info.relator = canonical_relator(tuple_relator(rep));
    info.verdict = classify(Presentation::of({info.relator}), b);
    out.push_back(std::move(info));
  }
  return out;
}

std::vector<Word> surviving_relators(int k, const Budget& b) {
  std::vector<Word> out;
  for (const auto& info : classify_cycle_classes(k, b))
    if (info.verdict.kind == VerdictKind::Unresolved) out.push_back(info.relator);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Word> load_reference_survivors(const std::string& table_path) {
  std::ifstream in(table_path);
  if (!in) throw std::invalid_argument("cannot open table: " + table_path);
  std::vector<Word> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ss(line);
    std::string idx, relator, status;
    if (!std::getline(ss, idx, '\t') || !std::getline(ss, relator, '\t') ||
        !std::getline(ss, status, '\t'))
      throw std::invalid_argument(table_path + ":" + std::to_string(lineno) +
                                  ": expected idx<TAB>relator<TAB>status");
    if (status == "*" || status == "0")
      out.push_back(canonical_relator(parse_word(relator)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<CycleComplex> load_complex_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open complex catalog: " + path);
  std::vector<CycleComplex> out;
  CycleComplex cur;
  bool open = false;
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> tok)) continue;
    if (tok == "complex") {
      if (open) fail("nested complex");
      cur = CycleComplex{};
      if (!(ss >> cur.name)) fail("complex needs a name");
      open = true;
    } else if (!open) {
      fail("directive outside a complex block");
    } else if (tok == "vertices") {
      if (!(ss >> cur.nv) || cur.nv <= 0) fail("bad vertex count");
    } else if (tok == "edges") {
      std::string e;
      while (ss >> e) {
        auto comma = e.find(',');
        if (comma == std::string::npos) fail("edge needs u,v");
        int u = std::stoi(e.substr(0, comma));
        int v = std::stoi(e.substr(comma + 1));
        if (u < 0 || v < 0 || u >= cur.nv || v >= cur.nv || u == v)
          fail("edge endpoint out of range");
        cur.edges.emplace_back(u, v);
      }
    } else if (tok == "cycle") {
      std::vector<int> walk;
      int v;
      while (ss >> v) {
        if (v < 0 || v >= cur.nv) fail("cycle vertex out of range");
        walk.push_back(v);
      }
      if (walk.size() < 3) fail("cycle too short");
      cur.cycles.push_back(std::move(walk));
    } else if (tok == "normalized_edge") {
      if (!(ss >> cur.normalized_edge)) fail("bad normalized_edge");
    } else if (tok == "mode") {
      std::string m;
      ss >> m;
      if (m == "raw") cur.mode = CycleComplex::Mode::Raw;
      else if (m == "prefiltered") cur.mode = CycleComplex::Mode::Prefiltered;
      else fail("unknown mode " + m);
    } else if (tok == "end") {
      if (cur.normalized_edge < 0 ||
          cur.normalized_edge >= static_cast<int>(cur.edges.size()))
        fail("normalized_edge out of range");
      std::set<std::pair<int, int>> eset;
      for (auto [u, v] : cur.edges) eset.insert(std::minmax(u, v));
      if (eset.size() != cur.edges.size()) fail("duplicate edge");
      for (const auto& walk : cur.cycles)
        for (size_t j = 0; j < walk.size(); ++j) {
          auto [u, v] = std::minmax(walk[j], walk[(j + 1) % walk.size()]);
          if (!eset.count({u, v})) fail("cycle walk leaves the graph");
        }
      out.push_back(cur);
      open = false;
    } else {
      fail("unknown directive " + tok);
    }
  }
  if (open) fail("unterminated complex block");
  return out;
}

LabelingSet enumerate_labelings(const CycleComplex& c, bool normalize) {
  LabelingSet out;
  const int m = static_cast<int>(c.edges.size());
  std::vector<std::vector<int>> at(c.nv);
  for (int e = 0; e < m; ++e) {
    at[c.edges[e].first].push_back(2 * e);
    at[c.edges[e].second].push_back(2 * e + 1);
  }
  for (const auto& slots : at)
    if (slots.size() > 3) {
      out.degree_ok = false;  // only three letters are available per vertex
      return out;
    }
  // each constraint (two slots differ) is attached to the later slot
  const int n = 2 * m;
  std::vector<std::vector<int>> diff(n);
  for (int e = 0; e < m; ++e) diff[2 * e + 1].push_back(2 * e);
  for (const auto& slots : at)
    for (size_t i = 0; i < slots.size(); ++i)
      for (size_t j = i + 1; j < slots.size(); ++j)
        diff[std::max(slots[i], slots[j])].push_back(std::min(slots[i], slots[j]));
  const int pin = normalize ? 2 * c.normalized_edge : -1;
  std::vector<Letter> cur(n, Letter::One);
  std::function<void(int)> rec = [&](int s) {
    if (s == n) {
      out.labelings.push_back(cur);
      return;
    }
    for (int l = 0; l < 3; ++l) {
      if (s == pin && l != 0) break;
      Letter L = static_cast<Letter>(l);
      bool ok = true;
      for (int t : diff[s])
        if (cur[t] == L) {
          ok = false;
          break;
        }
      if (!ok) continue;
      cur[s] = L;
      rec(s + 1);
    }
  };
  rec(0);
  // every labeling uses at least two letters, so the letter-permutation
  // action is free and pinning one end keeps exactly a third of them
  out.total_raw = static_cast<long long>(out.labelings.size()) * (normalize ? 3 : 1);
  return out;
}

Word labeling_relator(const CycleComplex& c, const std::vector<Letter>& lab,
                      int ci) {
  std::map<std::pair<int, int>, int> eidx;
  for (int e = 0; e < static_cast<int>(c.edges.size()); ++e) eidx[c.edges[e]] = e;
  const auto& walk = c.cycles.at(ci);
  Word w;
  for (size_t j = 0; j < walk.size(); ++j) {
    int u = walk[j], v = walk[(j + 1) % walk.size()];
    int tail, head;
    if (auto it = eidx.find({u, v}); it != eidx.end()) {
      tail = 2 * it->second;
      head = 2 * it->second + 1;
    } else if (it = eidx.find({v, u}); it != eidx.end()) {
      tail = 2 * it->second + 1;
      head = 2 * it->second;
    } else {
      throw std::invalid_argument("cycle walk leaves the graph");
    }
    append_end(w, lab.at(tail), lab.at(head));
  }
  return w;
}

ComplexReport classify_complex(const CycleComplex& c, const Budget& b,
                               const SurvivorSets* reference) {
  if (c.cycles.size() != 2)
    throw std::invalid_argument("complex needs exactly two defining cycles");
  ComplexReport rep;
  rep.name = c.name;
  rep.mode = c.mode;
  LabelingSet labs = enumerate_labelings(c, true);
  if (!labs.degree_ok)
    throw std::invalid_argument(c.name + ": vertex of degree > 3 admits no labeling");
  rep.total_raw = labs.total_raw;
  rep.normalized = static_cast<long long>(labs.labelings.size());

  std::map<int, std::vector<Word>> surv;
  if (c.mode == CycleComplex::Mode::Prefiltered)
    for (const auto& walk : c.cycles) {
      int k = static_cast<int>(walk.size());
      if (surv.count(k)) continue;
      if (reference && reference->count(k)) {
        surv[k] = reference->at(k);
        rep.reference_prefilter = true;
      } else {
        surv[k] = surviving_relators(k, b);
      }
    }

  std::map<std::pair<Word, Word>, long long> rows;
  for (const auto& lab : labs.labelings) {
    Word r1 = canonical_relator(labeling_relator(c, lab, 0));
    Word r2 = canonical_relator(labeling_relator(c, lab, 1));
    if (c.mode == CycleComplex::Mode::Prefiltered) {
      const auto& s1 = surv[static_cast<int>(c.cycles[0].size())];
      const auto& s2 = surv[static_cast<int>(c.cycles[1].size())];
      if (!std::binary_search(s1.begin(), s1.end(), r1) ||
          !std::binary_search(s2.begin(), s2.end(), r2))
        continue;
    }
    ++rep.after_prefilter;
    rows[{r1, r2}] += 1;
  }
  rep.distinct_pairs = static_cast<long long>(rows.size());

  std::map<std::string, Verdict> memo;
  std::set<std::string> finite_keys;
  for (const auto& [pair, weight] : rows) {
    Presentation p = Presentation::of({pair.first, pair.second});
    const std::string key = p.key();
    auto it = memo.find(key);
    if (it == memo.end()) {
      Verdict v;
      EnumResult er = coset_enumerate(p, b.max_cosets);
      if (er.outcome == EnumOutcome::Closed) {
        v.kind = VerdictKind::Finite;
        v.order = er.table->cosets();
        v.solvable = finite_solvable(*er.table);
        v.evidence.push_back("coset enumeration closed at order " +
                             std::to_string(v.order));
      } else {
        v = classify(p, b);
      }
      it = memo.emplace(key, std::move(v)).first;
    }
    const Verdict& v = it->second;
    if (v.kind == VerdictKind::Finite) {
      rep.finite_labelings += weight;
      rep.finite_rows += 1;
      if (v.solvable) rep.finite_solvable_rows += 1;
      if (finite_keys.insert(key).second) rep.finite_orders[v.order] += 1;
    } else if (v.kind == VerdictKind::Unresolved) {
      rep.survivors.push_back({pair.first, pair.second, v, weight});
    }
    rep.resolved_by[verdict_kind_name(v.kind)] += 1;
  }
  rep.distinct_presentations = static_cast<long long>(memo.size());
  return rep;
}

}  // namespace kap
