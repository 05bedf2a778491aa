#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "kap/words.hpp"

namespace kap {

enum class VerdictKind {
  TorsionWitness,  // some relator is a proper power of a generator
  BSQuotient,      // maps onto a solvable Baumslag-Solitar group
  Finite,          // coset enumeration closed
  Cyclic,          // a relator expresses one generator in the other
  Abelian,         // a relator is a commutator
  Unresolved,
};

std::string verdict_kind_name(VerdictKind k);

struct Verdict {
  VerdictKind kind = VerdictKind::Unresolved;
  // TorsionWitness: witness root and exponent
  Word root;
  int exponent = 0;
  // BSQuotient: parameters of BS(m, n)
  int m = 0, n = 0;
  // Finite: group order and solvability
  long order = 0;
  bool solvable = false;
  // human-readable trail: substitutions applied, detectors fired
  std::vector<std::string> evidence;

  std::string to_json() const;
  // short table-style label: "T", "A", "BS(m,n)", "F(order)", "*"
  std::string label() const;
};

struct Budget {
  int depth = 6;           // Tietze search radius
  int max_cosets = 200000; // cap on defined cosets per enumeration
  int max_len = 48;        // per-relator letter cap inside the search ball
  bool use_symmetry = true;// quotient the ball by generator relabelings
};

// Smith-style invariants (d1, d2) of the abelianization: the group is
// Z/d1 x Z/d2 with the convention d=0 meaning a free Z factor.
std::array<long, 2> abelian_invariants(const Presentation& p);

// Proper-power reduction: returns the primitive root of w viewed as a cyclic
// word and the multiplicity (1 when w is not a proper power).
std::pair<Word, int> cyclic_root(const Word& w);

// BS(m, n) parameters are reported up to the symmetries (m,n) ~ (n,m) ~
// (-m,-n); this is the orbit used when comparing against reference tables.
bool bs_params_equal(int m1, int n1, int m2, int n2);

// Detects, at depth 0, whether some relator literally has the cyclic shape
// g^m h g^-n h^-1 (up to rotation/inversion).  Returns (m, n) normalized.
std::optional<std::pair<int, int>> bs_shape(const Presentation& p);
std::optional<std::pair<int, int>> cyclic_shape(const Presentation& p);
bool abelian_shape(const Presentation& p);

// Breadth-first search of the Tietze ball recording the first state, if any,
// whose shape matches each detector.  Results carry the move trail.
struct BallScan {
  std::optional<Verdict> bs;       // solvable or not; caller decides
  std::optional<Verdict> cyclic;
  std::optional<Verdict> abelian;
  long states = 0;
};
BallScan scan_tietze_ball(const Presentation& p, const Budget& b);

// search wrapper returning only the BS detection
std::optional<Verdict> bs_quotient_search(const Presentation& p, const Budget& b);

// ---- coset enumeration -------------------------------------------------

struct CosetTable {
  // act[c][x]: image of coset c (0-based) under letter x (0=h2,1=h2^-1,...)
  std::vector<std::array<int, 4>> act;
  long cosets() const { return static_cast<long>(act.size()); }
  // permutations of {0..n-1} induced by each generator
  std::vector<int> perm(Gen g) const;
  bool satisfies(const Word& w) const;
};

enum class EnumOutcome { Closed, CapExceeded };

struct EnumResult {
  EnumOutcome outcome;
  std::optional<CosetTable> table;  // present iff Closed
  long defined = 0;                 // total cosets defined, including merged
};

// HLT-style enumeration over the trivial subgroup.  strategy selects the
// relator scanning order (0/1), used as a cross-check that both close to the
// same order.  Never claims infiniteness: a cap hit is just CapExceeded.
EnumResult coset_enumerate(const Presentation& p, int max_cosets, int strategy = 0);

// Solvability of the finite group presented by a closed table, computed on
// the regular permutation representation via derived series; membership in a
// subgroup of the regular representation is an orbit lookup.
bool finite_solvable(const CosetTable& t);

// Full classifier; detector order: torsion witness (after root reduction),
// BS quotient search, coset enumeration, then cyclic/abelian shapes in the
// same ball.  Monotone in the budget.
Verdict classify(const Presentation& p, const Budget& b = {});

// batch interface: one relator list per line; returns one verdict per line
std::vector<Verdict> classify_lines(const std::vector<std::string>& lines, const Budget& b = {});

}  // namespace kap
