#pragma once

#include <memory>
#include <string>
#include <vector>

#include "kap/graph.hpp"

namespace kap {

// concrete group with elements carried as normal-form strings (unique per
// element, totally ordered as plain strings); parse accepts the
// model-specific input syntax and normalizes
struct GroupModel {
  virtual ~GroupModel() = default;
  virtual std::string name() const = 0;
  virtual std::string identity() const = 0;
  virtual std::string multiply(const std::string& a,
                               const std::string& b) const = 0;
  virtual std::string invert(const std::string& a) const = 0;
  virtual std::string parse(const std::string& text) const = 0;
};

std::unique_ptr<GroupModel> make_cyclic(int m);  // Z/m, "x^2", identity "1"
std::unique_ptr<GroupModel> make_free2();        // rank 2, "a b^-1 a"
std::unique_ptr<GroupModel> make_z2();           // Z^2, "(1,-3)"

// "Z/5", "free", "Z^2"
std::unique_ptr<GroupModel> make_model(const std::string& spec);

// the two supports; elements kept in normal form, pairwise distinct
struct SupportPair {
  std::vector<std::string> alpha;
  std::vector<std::string> beta;
};

// JSON {"model": ..., "alpha": [...], "beta": [...]}
struct SupportInput {
  std::unique_ptr<GroupModel> model;
  SupportPair sp;
};
SupportInput load_support_json(const std::string& json_text);

// vertices are the beta positions; i ~ j iff some alpha[i'] * beta[i] =
// alpha[j'] * beta[j] with i' != j'
Graph kaplansky_graph(const GroupModel& gm, const SupportPair& sp);

// S = {h^-1 h' : h != h' in alpha}, sorted and deduplicated
std::vector<std::string> connection_set(const GroupModel& gm,
                                        const std::vector<std::string>& alpha);

// induced subgraph of Cay(G, S) on beta: i ~ j iff beta[i] beta[j]^-1 in S;
// must coincide with kaplansky_graph on every input
Graph cayley_induced(const GroupModel& gm, const SupportPair& sp);

// structural screens on a candidate graph; returns violated requirements
// (empty = consistent).  zero_divisor_F2 wants a connected cubic
// triangle-free graph without edge-sharing triangle pairs; unit_F screens
// the two subgraphs the unit argument forbids
enum class StructureMode { ZeroDivisorF2, UnitF };
std::vector<std::string> check_structure(const Graph& g, StructureMode mode);

// does alpha * beta vanish over F_2, i.e. does every product value
// h_i g_j occur an even number of times?
bool f2_pairing(const GroupModel& gm, const SupportPair& sp);

}  // namespace kap
