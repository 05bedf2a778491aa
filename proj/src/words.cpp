#include "kap/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

namespace kap {

Word Word::generator(Gen g, int exp) {
  Word w;
  w.append(g, exp);
  return w;
}

void Word::append(Gen g, int exp) {
  if (exp == 0) return;
  if (!syl_.empty() && syl_.back().gen == g) {
    syl_.back().exp += exp;
    if (syl_.back().exp == 0) syl_.pop_back();
    return;
  }
  syl_.push_back({g, exp});
}

void Word::append(const Word& w) {
  for (const auto& s : w.syl_) append(s.gen, s.exp);
}

size_t Word::length() const {
  size_t n = 0;
  for (const auto& s : syl_) n += static_cast<size_t>(s.exp < 0 ? -s.exp : s.exp);
  return n;
}

Word Word::inverse() const {
  Word r;
  for (auto it = syl_.rbegin(); it != syl_.rend(); ++it) r.append(it->gen, -it->exp);
  return r;
}

std::vector<uint8_t> Word::flat() const {
  std::vector<uint8_t> out;
  out.reserve(length());
  for (const auto& s : syl_) {
    uint8_t code = static_cast<uint8_t>(2 * static_cast<int>(s.gen) + (s.exp < 0 ? 1 : 0));
    int n = s.exp < 0 ? -s.exp : s.exp;
    for (int i = 0; i < n; ++i) out.push_back(code);
  }
  return out;
}

Word Word::from_flat(const std::vector<uint8_t>& letters) {
  Word w;
  for (uint8_t c : letters) w.append(static_cast<Gen>(c / 2), c % 2 ? -1 : 1);
  return w;
}

bool Word::operator<(const Word& o) const {
  auto a = flat(), b = o.flat();
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

Word reduce(const std::vector<std::pair<Gen, int>>& raw) {
  Word w;
  for (const auto& [g, e] : raw) w.append(g, e);
  return w;
}

Word cyclic_reduce(const Word& w) {
  auto f = w.flat();
  size_t lo = 0, hi = f.size();
  while (hi - lo >= 2 && (f[lo] ^ 1u) == f[hi - 1]) {
    ++lo;
    --hi;
  }
  return Word::from_flat({f.begin() + lo, f.begin() + hi});
}

namespace {

// least rotation by plain comparison; words here are short
std::vector<uint8_t> least_rotation(const std::vector<uint8_t>& v) {
  if (v.empty()) return v;
  std::vector<uint8_t> best = v;
  std::vector<uint8_t> cur = v;
  for (size_t i = 1; i < v.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (cur < best) best = cur;
  }
  return best;
}

}  // namespace

Word cyclic_canonical(const Word& w) {
  return Word::from_flat(least_rotation(cyclic_reduce(w).flat()));
}

Word canonical_relator(const Word& w) {
  Word a = cyclic_canonical(w);
  Word b = cyclic_canonical(w.inverse());
  return b < a ? b : a;
}

bool same_relation(const Word& a, const Word& b) {
  return canonical_relator(a) == canonical_relator(b);
}

Word apply_move(const Word& w, TietzeMove m) {
  Gen target;
  // image of the target generator, as (gen, exp) pairs
  std::vector<std::pair<Gen, int>> image;
  switch (m) {
    case TietzeMove::H2_H2H3:   target = Gen::H2; image = {{Gen::H2, 1}, {Gen::H3, 1}}; break;
    case TietzeMove::H2_H2H3inv:target = Gen::H2; image = {{Gen::H2, 1}, {Gen::H3, -1}}; break;
    case TietzeMove::H3_H3H2:   target = Gen::H3; image = {{Gen::H3, 1}, {Gen::H2, 1}}; break;
    case TietzeMove::H3_H3H2inv:target = Gen::H3; image = {{Gen::H3, 1}, {Gen::H2, -1}}; break;
    case TietzeMove::H2_H3H2:   target = Gen::H2; image = {{Gen::H3, 1}, {Gen::H2, 1}}; break;
    case TietzeMove::H3_H2H3:   target = Gen::H3; image = {{Gen::H2, 1}, {Gen::H3, 1}}; break;
    case TietzeMove::H2_inv:    target = Gen::H2; image = {{Gen::H2, -1}}; break;
    case TietzeMove::H3_inv:    target = Gen::H3; image = {{Gen::H3, -1}}; break;
    default: throw std::invalid_argument("bad move");
  }
  Word out;
  for (const auto& s : w.syllables()) {
    if (s.gen != target) {
      out.append(s.gen, s.exp);
      continue;
    }
    int n = s.exp < 0 ? -s.exp : s.exp;
    for (int i = 0; i < n; ++i) {
      if (s.exp > 0) {
        for (const auto& [g, e] : image) out.append(g, e);
      } else {
        for (auto it = image.rbegin(); it != image.rend(); ++it) out.append(it->first, -it->second);
      }
    }
  }
  return out;
}

std::string move_name(TietzeMove m) {
  switch (m) {
    case TietzeMove::H2_H2H3: return "h2->h2 h3";
    case TietzeMove::H2_H2H3inv: return "h2->h2 h3^-1";
    case TietzeMove::H3_H3H2: return "h3->h3 h2";
    case TietzeMove::H3_H3H2inv: return "h3->h3 h2^-1";
    case TietzeMove::H2_H3H2: return "h2->h3 h2";
    case TietzeMove::H3_H2H3: return "h3->h2 h3";
    case TietzeMove::H2_inv: return "h2->h2^-1";
    case TietzeMove::H3_inv: return "h3->h3^-1";
  }
  return "?";
}

Word apply_relabeling(const Word& w, int idx) {
  // bit 0: invert h2; bit 1: invert h3; bit 2: swap h2<->h3
  bool i2 = idx & 1, i3 = idx & 2, sw = idx & 4;
  Word out;
  for (const auto& s : w.syllables()) {
    Gen g = s.gen;
    int e = s.exp;
    if (g == Gen::H2 && i2) e = -e;
    if (g == Gen::H3 && i3) e = -e;
    if (sw) g = g == Gen::H2 ? Gen::H3 : Gen::H2;
    out.append(g, e);
  }
  return out;
}

Presentation Presentation::of(std::vector<Word> rels) {
  Presentation p;
  for (auto& w : rels) {
    Word c = canonical_relator(w);
    if (!c.empty()) p.relators.push_back(std::move(c));
  }
  std::sort(p.relators.begin(), p.relators.end());
  p.relators.erase(std::unique(p.relators.begin(), p.relators.end()), p.relators.end());
  return p;
}

std::string Presentation::key() const {
  std::string k;
  for (const auto& w : relators) {
    for (uint8_t c : w.flat()) k.push_back(static_cast<char>('a' + c));
    k.push_back('|');
  }
  return k;
}

Presentation apply_move(const Presentation& p, TietzeMove m) {
  std::vector<Word> rels;
  rels.reserve(p.relators.size());
  for (const auto& w : p.relators) rels.push_back(apply_move(w, m));
  return Presentation::of(std::move(rels));
}

Presentation apply_relabeling(const Presentation& p, int idx) {
  std::vector<Word> rels;
  rels.reserve(p.relators.size());
  for (const auto& w : p.relators) rels.push_back(apply_relabeling(w, idx));
  return Presentation::of(std::move(rels));
}

std::string symmetry_key(const Presentation& p) {
  std::string best;
  for (int i = 0; i < kNumRelabelings; ++i) {
    std::string k = apply_relabeling(p, i).key();
    if (i == 0 || k < best) best = std::move(k);
  }
  return best;
}

Word parse_word(const std::string& text) {
  Word w;
  std::istringstream in(text);
  std::string tok;
  bool any = false;
  while (in >> tok) {
    any = true;
    if (tok == "1") continue;
    size_t caret = tok.find('^');
    std::string base = tok.substr(0, caret == std::string::npos ? tok.size() : caret);
    Gen g;
    if (base == "h2") {
      g = Gen::H2;
    } else if (base == "h3") {
      g = Gen::H3;
    } else {
      throw std::invalid_argument("unknown generator: " + tok);
    }
    int exp = 1;
    if (caret != std::string::npos) {
      std::string es = tok.substr(caret + 1);
      try {
        size_t used = 0;
        exp = std::stoi(es, &used);
        if (used != es.size()) throw std::invalid_argument(es);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent: " + tok);
      }
    }
    w.append(g, exp);
  }
  if (!any) throw std::invalid_argument("empty word text");
  return w;
}

std::string print_word(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream out;
  bool first = true;
  for (const auto& s : w.syllables()) {
    if (!first) out << ' ';
    first = false;
    out << (s.gen == Gen::H2 ? "h2" : "h3");
    if (s.exp != 1) out << '^' << s.exp;
  }
  return out.str();
}

std::vector<Word> parse_relator_list(const std::string& line) {
  std::vector<Word> rels;
  std::string piece;
  std::istringstream in(line);
  while (std::getline(in, piece, ',')) {
    if (piece.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    rels.push_back(parse_word(piece));
  }
  return rels;
}

}  // namespace kap
