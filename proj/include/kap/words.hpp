#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace kap {

// Generators of the rank-2 free group all relators live in.
enum class Gen : uint8_t { H2 = 0, H3 = 1 };

// One maximal run g^e with e != 0.
struct Syllable {
  Gen gen;
  int exp;
  friend bool operator==(const Syllable&, const Syllable&) = default;
};

// A freely reduced word stored as syllable runs.  Construction goes through
// append(), which merges and cancels, so a Word is reduced by invariant.
class Word {
public:
  Word() = default;
  static Word generator(Gen g, int exp = 1);

  void append(Gen g, int exp);
  void append(const Word& w);

  const std::vector<Syllable>& syllables() const { return syl_; }
  bool empty() const { return syl_.empty(); }
  // letter length: sum of |exp|
  size_t length() const;

  Word inverse() const;

  // letters as 0=h2, 1=h2^-1, 2=h3, 3=h3^-1 (the order used for all
  // lexicographic comparisons)
  std::vector<uint8_t> flat() const;
  static Word from_flat(const std::vector<uint8_t>& letters);

  friend bool operator==(const Word&, const Word&) = default;
  bool operator<(const Word& o) const;

private:
  std::vector<Syllable> syl_;
};

// Free reduction of a raw letter sequence (pairs may carry any exponent).
Word reduce(const std::vector<std::pair<Gen, int>>& raw);

Word cyclic_reduce(const Word& w);

// Least rotation of the cyclic reduction, as a word.
Word cyclic_canonical(const Word& w);

// Canonical representative of the relation {w}: the smaller of the least
// rotations of w and w^-1 after cyclic reduction.  Two words define the same
// relation up to rotation and inversion iff their canonical relators match.
Word canonical_relator(const Word& w);

bool same_relation(const Word& a, const Word& b);

// Generator substitutions used by the quotient search.  Each is invertible,
// so applying one to every relator of a presentation yields an isomorphic
// presentation.
enum class TietzeMove : uint8_t {
  H2_H2H3,     // h2 -> h2 h3
  H2_H2H3inv,  // h2 -> h2 h3^-1
  H3_H3H2,     // h3 -> h3 h2
  H3_H3H2inv,  // h3 -> h3 h2^-1
  H2_H3H2,     // h2 -> h3 h2
  H3_H2H3,     // h3 -> h2 h3
  H2_inv,      // h2 -> h2^-1
  H3_inv,      // h3 -> h3^-1
};
constexpr int kNumTietzeMoves = 8;

Word apply_move(const Word& w, TietzeMove m);
std::string move_name(TietzeMove m);

// Relabelings of the generator pair (swap h2<->h3 and/or invert either);
// detectors downstream are invariant under these, so the search space may be
// quotiented by them.  Index 0 is the identity.
constexpr int kNumRelabelings = 8;
Word apply_relabeling(const Word& w, int idx);

// A finite presentation on {h2, h3}: relators stored canonically, sorted,
// deduplicated, with trivial relators dropped.
struct Presentation {
  std::vector<Word> relators;

  static Presentation of(std::vector<Word> rels);
  // stable text key for hashing/deduplication
  std::string key() const;
  friend bool operator==(const Presentation&, const Presentation&) = default;
};

Presentation apply_move(const Presentation& p, TietzeMove m);
Presentation apply_relabeling(const Presentation& p, int idx);
// least key over the 8 relabelings
std::string symmetry_key(const Presentation& p);

// Text format: whitespace-separated factors "h2", "h3^-1", "h2^3"; "1" for
// the empty word.  parse throws std::invalid_argument on malformed input.
Word parse_word(const std::string& text);
std::string print_word(const Word& w);

// One relator set per line, relators separated by commas.
std::vector<Word> parse_relator_list(const std::string& line);

}  // namespace kap
