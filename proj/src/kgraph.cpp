#include "kap/kgraph.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace kap {

namespace {

long long checked_stoll(const std::string& s) {
  size_t used = 0;
  long long v = std::stoll(s, &used);
  if (used != s.size()) throw std::invalid_argument("trailing junk: " + s);
  return v;
}

struct Cyclic : GroupModel {
  int m;
  explicit Cyclic(int mm) : m(mm) {
    if (mm < 1) throw std::domain_error("cyclic order must be positive");
  }
  std::string name() const override { return "Z/" + std::to_string(m); }
  std::string identity() const override { return "1"; }
  std::string form(long long k) const {
    k %= m;
    if (k < 0) k += m;
    return k == 0 ? "1" : k == 1 ? "x" : "x^" + std::to_string(k);
  }
  long long exponent(const std::string& a) const {
    if (a == "1") return 0;
    if (a == "x") return 1;
    if (a.rfind("x^", 0) != 0)
      throw std::invalid_argument("bad cyclic element: " + a);
    return checked_stoll(a.substr(2));
  }
  std::string multiply(const std::string& a,
                       const std::string& b) const override {
    return form(exponent(a) + exponent(b));
  }
  std::string invert(const std::string& a) const override {
    return form(-exponent(a));
  }
  std::string parse(const std::string& text) const override {
    return form(exponent(text));
  }
};

// free rank 2 on a, b; letters 0=a, 1=a^-1, 2=b, 3=b^-1
struct Free2 : GroupModel {
  std::string name() const override { return "free"; }
  std::string identity() const override { return "1"; }

  static std::vector<int> letters(const std::string& a) {
    std::vector<int> out;
    std::istringstream ss(a);
    std::string tok;
    while (ss >> tok) {
      if (tok == "1") continue;
      char gen = tok[0];
      if (gen != 'a' && gen != 'b')
        throw std::invalid_argument("bad free-group token: " + tok);
      long long e = 1;
      if (tok.size() > 1) {
        if (tok[1] != '^')
          throw std::invalid_argument("bad free-group token: " + tok);
        e = checked_stoll(tok.substr(2));
      }
      int base = gen == 'a' ? 0 : 2;
      for (long long k = 0; k < std::llabs(e); ++k)
        push(out, e > 0 ? base : base + 1);
    }
    return out;
  }
  static void push(std::vector<int>& st, int letter) {
    if (!st.empty() && (st.back() ^ 1) == letter)
      st.pop_back();
    else
      st.push_back(letter);
  }
  static std::string form(const std::vector<int>& ls) {
    if (ls.empty()) return "1";
    std::string out;
    size_t i = 0;
    while (i < ls.size()) {
      size_t j = i;
      while (j < ls.size() && ls[j] == ls[i]) ++j;
      long long e = (ls[i] & 1) ? -(long long)(j - i) : (long long)(j - i);
      if (!out.empty()) out += ' ';
      out += (ls[i] < 2 ? 'a' : 'b');
      if (e != 1) out += "^" + std::to_string(e);
      i = j;
    }
    return out;
  }
  std::string multiply(const std::string& a,
                       const std::string& b) const override {
    std::vector<int> st = letters(a);
    for (int l : letters(b)) push(st, l);
    return form(st);
  }
  std::string invert(const std::string& a) const override {
    std::vector<int> ls = letters(a), inv;
    for (auto it = ls.rbegin(); it != ls.rend(); ++it) inv.push_back(*it ^ 1);
    return form(inv);
  }
  std::string parse(const std::string& text) const override {
    return form(letters(text));
  }
};

struct Z2 : GroupModel {
  std::string name() const override { return "Z^2"; }
  std::string identity() const override { return "(0,0)"; }
  static std::pair<long long, long long> coords(const std::string& a) {
    if (a.size() < 5 || a.front() != '(' || a.back() != ')')
      throw std::invalid_argument("bad Z^2 element: " + a);
    auto comma = a.find(',');
    if (comma == std::string::npos)
      throw std::invalid_argument("bad Z^2 element: " + a);
    return {checked_stoll(a.substr(1, comma - 1)),
            checked_stoll(a.substr(comma + 1, a.size() - comma - 2))};
  }
  static std::string form(long long x, long long y) {
    return "(" + std::to_string(x) + "," + std::to_string(y) + ")";
  }
  std::string multiply(const std::string& a,
                       const std::string& b) const override {
    auto [ax, ay] = coords(a);
    auto [bx, by] = coords(b);
    return form(ax + bx, ay + by);
  }
  std::string invert(const std::string& a) const override {
    auto [x, y] = coords(a);
    return form(-x, -y);
  }
  std::string parse(const std::string& text) const override {
    std::string stripped;
    for (char c : text)
      if (c != ' ') stripped += c;
    auto [x, y] = coords(stripped);
    return form(x, y);
  }
};

}  // namespace

std::unique_ptr<GroupModel> make_cyclic(int m) {
  return std::make_unique<Cyclic>(m);
}
std::unique_ptr<GroupModel> make_free2() { return std::make_unique<Free2>(); }
std::unique_ptr<GroupModel> make_z2() { return std::make_unique<Z2>(); }

std::unique_ptr<GroupModel> make_model(const std::string& spec) {
  if (spec == "free" || spec == "F_2" || spec == "free2") return make_free2();
  if (spec == "Z^2" || spec == "ZxZ") return make_z2();
  if (spec.rfind("Z/", 0) == 0) return make_cyclic(int(checked_stoll(spec.substr(2))));
  throw std::invalid_argument("unknown group model: " + spec);
}

SupportInput load_support_json(const std::string& json_text) {
  nlohmann::json j = nlohmann::json::parse(json_text);
  SupportInput in;
  in.model = make_model(j.at("model").get<std::string>());
  for (const char* key : {"alpha", "beta"}) {
    const auto& arr = j.at(key);
    if (!arr.is_array())
      throw std::invalid_argument(std::string(key) + " must be an array");
    auto& dst = key[0] == 'a' ? in.sp.alpha : in.sp.beta;
    for (const auto& e : arr) dst.push_back(in.model->parse(e.get<std::string>()));
  }
  return in;
}

namespace {

void check_support(const SupportPair& sp) {
  auto distinct = [](const std::vector<std::string>& v) {
    std::set<std::string> s(v.begin(), v.end());
    return s.size() == v.size();
  };
  if (sp.alpha.empty() || sp.beta.empty())
    throw std::invalid_argument("supports must be nonempty");
  if (!distinct(sp.alpha) || !distinct(sp.beta))
    throw std::invalid_argument("support elements must be distinct");
  if (sp.beta.size() > 32)
    throw std::invalid_argument("at most 32 beta elements");
}

}  // namespace

Graph kaplansky_graph(const GroupModel& gm, const SupportPair& sp) {
  check_support(sp);
  const int n = int(sp.beta.size());
  const int m = int(sp.alpha.size());
  // all products h_{i'} g_i, bucketed by value
  std::map<std::string, std::vector<std::pair<int, int>>> cells;
  for (int i = 0; i < n; ++i)
    for (int ip = 0; ip < m; ++ip)
      cells[gm.multiply(sp.alpha[ip], sp.beta[i])].push_back({ip, i});
  Graph g(n);
  for (const auto& [val, hits] : cells)
    for (size_t s = 0; s < hits.size(); ++s)
      for (size_t t = s + 1; t < hits.size(); ++t)
        if (hits[s].first != hits[t].first && hits[s].second != hits[t].second)
          g.add_edge(hits[s].second, hits[t].second);
  return g;
}

std::vector<std::string> connection_set(
    const GroupModel& gm, const std::vector<std::string>& alpha) {
  std::set<std::string> s;
  for (const auto& h : alpha)
    for (const auto& hp : alpha)
      if (h != hp) s.insert(gm.multiply(gm.invert(h), hp));
  return {s.begin(), s.end()};
}

Graph cayley_induced(const GroupModel& gm, const SupportPair& sp) {
  check_support(sp);
  auto svec = connection_set(gm, sp.alpha);
  std::set<std::string> s(svec.begin(), svec.end());
  const int n = int(sp.beta.size());
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (s.count(gm.multiply(sp.beta[i], gm.invert(sp.beta[j]))))
        g.add_edge(i, j);
  return g;
}

std::vector<std::string> check_structure(const Graph& g, StructureMode mode) {
  std::vector<std::string> out;
  auto k3k3 = [&] {
    for (auto [u, v] : edge_list(g))
      if (std::popcount(g.adj[u] & g.adj[v]) >= 2) return true;
    return false;
  };
  auto k23 = [&] {
    for (int u = 0; u < g.n; ++u)
      for (int v = u + 1; v < g.n; ++v)
        if (std::popcount(g.adj[u] & g.adj[v] & ~(1u << u) & ~(1u << v)) >= 3)
          return true;
    return false;
  };
  if (mode == StructureMode::ZeroDivisorF2) {
    if (!is_connected(g)) out.push_back("not-connected");
    if (!is_regular(g, 3)) out.push_back("not-cubic");
    if (!is_triangle_free(g)) out.push_back("triangle");
    if (k3k3()) out.push_back("K3-K3");
  } else {
    if (k3k3()) out.push_back("K3-K3");
    if (k23()) out.push_back("K_{2,3}");
  }
  return out;
}

bool f2_pairing(const GroupModel& gm, const SupportPair& sp) {
  check_support(sp);
  std::map<std::string, int> parity;
  for (const auto& h : sp.alpha)
    for (const auto& g : sp.beta) parity[gm.multiply(h, g)] ^= 1;
  for (const auto& [val, odd] : parity)
    if (odd) return false;
  return true;
}

}  // namespace kap
