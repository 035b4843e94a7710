#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coalg/coalgebra.hpp"
#include "coalg/finite_algebra.hpp"
#include "coalg/util.hpp"
#include "coalg/word.hpp"

namespace coalg::sese {

// ---------------------------------------------------------------------------
// Level-2 and level-3 tower words over idempotent generators, packed as
// small integers: level 2 uses 0..3 = x00,x01,x10,x11; level 3 uses
// 0..7 = x000..x111 (binary reading of the subscripts).
// ---------------------------------------------------------------------------

using PackedWord = std::vector<std::uint8_t>;

inline PackedWord collapse(const PackedWord& w) {
  PackedWord out;
  for (std::uint8_t c : w)
    if (out.empty() || out.back() != c) out.push_back(c);
  return out;
}

inline PackedWord concat_collapse(PackedWord a, const PackedWord& b) {
  for (std::uint8_t c : b)
    if (a.empty() || a.back() != c) a.push_back(c);
  return a;
}

template <std::size_t N>
inline PackedWord apply_table(const PackedWord& w, const std::array<std::uint8_t, N>& tab) {
  PackedWord out;
  for (std::uint8_t c : w) {
    std::uint8_t v = tab[c];
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

inline std::string packed_to_string(const PackedWord& w, int bits) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    out += 'x';
    for (int b = bits - 1; b >= 0; --b) out += static_cast<char>('0' + ((w[i] >> b) & 1));
  }
  return out;
}

// Conversions to the general word engine (generators x{b1,..,bk}).
inline Word packed_to_word(const PackedWord& w, int bits) {
  std::vector<GenId> seq;
  for (std::uint8_t c : w) {
    std::vector<int> tags(static_cast<std::size_t>(bits));
    for (int b = 0; b < bits; ++b) tags[static_cast<std::size_t>(b)] = (c >> (bits - 1 - b)) & 1;
    seq.push_back(GenId{"x", tags, true});
  }
  return Word::se(std::move(seq));
}

inline PackedWord word_to_packed(const Word& w, int bits) {
  PackedWord out;
  for (const GenId& g : w.as_seq()) {
    if (g.name != "x" || static_cast<int>(g.tags.size()) != bits)
      throw DomainError("not a packed tower word");
    std::uint8_t c = 0;
    for (int t : g.tags) c = static_cast<std::uint8_t>((c << 1) | t);
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The three level-2 comparison homomorphisms into <x_lambda,x_mu,x_rho>
// (targets packed 0=lambda, 1=mu, 2=rho).
// ---------------------------------------------------------------------------

inline constexpr std::array<std::uint8_t, 4> kLmrR = {0, 1, 2, 2};
inline constexpr std::array<std::uint8_t, 4> kLmrL = {0, 0, 1, 2};
inline constexpr std::array<std::uint8_t, 4> kLmrM = {0, 1, 1, 2};

struct LmrImages {
  PackedWord r, l, m;
};

inline LmrImages lmr_images(const PackedWord& w) {
  return {apply_table(w, kLmrR), apply_table(w, kLmrL), apply_table(w, kLmrM)};
}

// Membership in |R|: all three images agree.
inline bool r_member(const PackedWord& w) {
  LmrImages im = lmr_images(w);
  return im.r == im.l && im.l == im.m;
}

// The level-2 precoalgebra condition alone (used for the carrier language):
// agreement of the two derived pseudo-co-operations of associativity.
inline bool equalizer_member(const PackedWord& w) {
  return apply_table(w, kLmrR) == apply_table(w, kLmrL);
}

// ---------------------------------------------------------------------------
// Canonical generators of |R| and their normal form (no substrings
// X00 X00, X11 X11, X00 P, P X11, X11 Q, Q X00).
// ---------------------------------------------------------------------------

struct RLetter {
  enum Kind : std::uint8_t { X00, X11, P, Q } kind = X00;
  int index = 0;  // P/Q only

  friend bool operator==(const RLetter& a, const RLetter& b) {
    return a.kind == b.kind && (a.kind < P || a.index == b.index);
  }
  friend bool operator!=(const RLetter& a, const RLetter& b) { return !(a == b); }
  friend bool operator<(const RLetter& a, const RLetter& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    if (a.kind < P) return false;
    return a.index < b.index;
  }
};

using RWord = std::vector<RLetter>;

inline std::optional<RLetter> combine(const RLetter& a, const RLetter& b) {
  using K = RLetter::Kind;
  if (a.kind == K::X00 && b.kind == K::X00) return a;
  if (a.kind == K::X11 && b.kind == K::X11) return a;
  if (a.kind == K::X00 && b.kind == K::P) return b;
  if (a.kind == K::P && b.kind == K::X11) return a;
  if (a.kind == K::X11 && b.kind == K::Q) return b;
  if (a.kind == K::Q && b.kind == K::X00) return a;
  return std::nullopt;
}

inline RWord normalize_r(const RWord& w) {
  RWord out;
  for (RLetter l : w) {
    out.push_back(l);
    while (out.size() >= 2) {
      auto merged = combine(out[out.size() - 2], out.back());
      if (!merged) break;
      out.pop_back();
      out.back() = *merged;
    }
  }
  return out;
}

inline RWord r_mul(RWord a, const RWord& b) {
  for (const RLetter& l : b) a.push_back(l);
  return normalize_r(a);
}

inline bool r_normal(const RWord& w) { return normalize_r(w) == w; }

// p_i = (x00 x01)^{i+1} (x10 x01)^i (x10 x11)^{i+1}
inline PackedWord p_word(int i) {
  PackedWord w;
  for (int t = 0; t <= i; ++t) {
    w.push_back(0);
    w.push_back(1);
  }
  for (int t = 0; t < i; ++t) {
    w.push_back(2);
    w.push_back(1);
  }
  for (int t = 0; t <= i; ++t) {
    w.push_back(2);
    w.push_back(3);
  }
  return w;
}

// q_i = (x11 x10)^{i+1} (x01 x10)^i (x01 x00)^{i+1}
inline PackedWord q_word(int i) {
  PackedWord w;
  for (int t = 0; t <= i; ++t) {
    w.push_back(3);
    w.push_back(2);
  }
  for (int t = 0; t < i; ++t) {
    w.push_back(1);
    w.push_back(2);
  }
  for (int t = 0; t <= i; ++t) {
    w.push_back(1);
    w.push_back(0);
  }
  return w;
}

inline PackedWord expand_letter(const RLetter& l) {
  switch (l.kind) {
    case RLetter::X00: return {0};
    case RLetter::X11: return {3};
    case RLetter::P: return p_word(l.index);
    case RLetter::Q: return q_word(l.index);
  }
  return {};
}

// Expansion into (P'_2)_base with idempotent collapse at the interfaces.
inline PackedWord expand(const RWord& w) {
  PackedWord out;
  for (const RLetter& l : w) out = concat_collapse(std::move(out), expand_letter(l));
  return out;
}

// ---------------------------------------------------------------------------
// factor_R: the left-to-right peeling of a member word into canonical
// generators (leftmost-longest match; splits at x00/x11 interfaces).
// ---------------------------------------------------------------------------

inline RWord factor_r(const PackedWord& input) {
  if (!r_member(input)) throw DomainError("factor_r: word is not in |R|");
  RWord out;
  PackedWord w = input;
  while (!w.empty()) {
    if (w[0] == 0 || w[0] == 3) {
      bool zero_side = w[0] == 0;  // starts with x00 (else the x11 mirror)
      std::uint8_t a = zero_side ? 0 : 3;   // x00 / x11
      std::uint8_t ab = zero_side ? 1 : 2;  // x01 / x10
      std::uint8_t ba = zero_side ? 2 : 1;  // x10 / x01
      std::uint8_t b = zero_side ? 3 : 0;   // x11 / x00
      if (w.size() == 1 || w[1] == b) {
        // bare generator, possibly at an interface
        out.push_back(RLetter{zero_side ? RLetter::X00 : RLetter::X11, 0});
        w.erase(w.begin());
        continue;
      }
      // match p_i / q_i: (a ab)^{i+1} (ba ab)^i (ba b)^{i+1}
      std::size_t pos = 0;
      int lead = 0;
      while (pos + 1 < w.size() && w[pos] == a && w[pos + 1] == ab) {
        ++lead;
        pos += 2;
      }
      int i = lead - 1;
      if (i < 0) throw DomainError("factor_r: malformed member word");
      for (int t = 0; t < i; ++t) {
        if (pos + 1 >= w.size() || w[pos] != ba || w[pos + 1] != ab)
          throw DomainError("factor_r: malformed member word (middle)");
        pos += 2;
      }
      for (int t = 0; t <= i; ++t) {
        if (pos + 1 >= w.size() || w[pos] != ba || w[pos + 1] != b)
          throw DomainError("factor_r: malformed member word (tail)");
        pos += 2;
      }
      out.push_back(RLetter{zero_side ? RLetter::P : RLetter::Q, i});
      if (pos == w.size()) {
        w.clear();
      } else {
        // peel, re-exposing the trailing idempotent letter
        PackedWord rest;
        rest.push_back(b);
        rest.insert(rest.end(), w.begin() + static_cast<long>(pos), w.end());
        w = std::move(rest);
      }
      continue;
    }
    throw DomainError("factor_r: member word must start with x00 or x11");
  }
  RWord nf = normalize_r(out);
  return nf;
}

// ---------------------------------------------------------------------------
// phi: the unique good lift |R| -> (P'_3)_base.
// ---------------------------------------------------------------------------

// p'_i, the level-3 lift of p_i ("counting from 0 to 7 in base 2" at i=0).
inline PackedWord p3_word(int i) {
  PackedWord w;
  auto rep = [&w](std::uint8_t x, std::uint8_t y, int times) {
    for (int t = 0; t < times; ++t) {
      w.push_back(x);
      w.push_back(y);
    }
  };
  rep(0, 1, i + 1);
  rep(2, 1, i);
  rep(2, 3, i + 1);
  rep(4, 3, i);
  rep(4, 5, i + 1);
  rep(6, 5, i);
  rep(6, 7, i + 1);
  return w;
}

inline PackedWord q3_word(int i) {
  PackedWord w;
  auto rep = [&w](std::uint8_t x, std::uint8_t y, int times) {
    for (int t = 0; t < times; ++t) {
      w.push_back(x);
      w.push_back(y);
    }
  };
  rep(7, 6, i + 1);
  rep(5, 6, i);
  rep(5, 4, i + 1);
  rep(3, 4, i);
  rep(3, 2, i + 1);
  rep(1, 2, i);
  rep(1, 0, i + 1);
  return w;
}

inline PackedWord phi_letter(const RLetter& l) {
  switch (l.kind) {
    case RLetter::X00: return {0};
    case RLetter::X11: return {7};
    case RLetter::P: return p3_word(l.index);
    case RLetter::Q: return q3_word(l.index);
  }
  return {};
}

inline PackedWord phi(const RWord& w) {
  PackedWord out;
  for (const RLetter& l : w) out = concat_collapse(std::move(out), phi_letter(l));
  return out;
}

// Level-3 drop-last-bit map onto level 2.
inline PackedWord drop_last_bit(const PackedWord& w3) {
  PackedWord out;
  for (std::uint8_t c : w3) {
    std::uint8_t v = c >> 1;
    if (out.empty() || out.back() != v) out.push_back(v);
  }
  return out;
}

// The (3,1)-instance maps of associativity on level-3 words, into the free
// semigroup on x_{lambda 0..rho 1} (packed 0..5).  The last two slots of the
// first map and the first two of the second lose the trailing subscript.
inline constexpr std::array<std::uint8_t, 8> kLmrR3 = {0, 1, 2, 3, 4, 4, 5, 5};
inline constexpr std::array<std::uint8_t, 8> kLmrL3 = {0, 0, 1, 1, 2, 3, 4, 5};

// Maximal constant-first-bit runs of a level-3 word, stripped to level 2.
inline std::vector<std::pair<int, PackedWord>> split_first_bit(const PackedWord& w3) {
  std::vector<std::pair<int, PackedWord>> out;
  for (std::uint8_t c : w3) {
    int tag = (c >> 2) & 1;
    std::uint8_t low = c & 3;
    if (out.empty() || out.back().first != tag) out.emplace_back(tag, PackedWord{});
    PackedWord& seg = out.back().second;
    if (seg.empty() || seg.back() != low) seg.push_back(low);
  }
  return out;
}

// ---------------------------------------------------------------------------
// The co-operation beta^R into the 2-copower of |R|, and coassociativity.
// Tagged words: free-product normal form = alternating runs of R-letters
// under distinct copy tags, each run in R-normal form.
// ---------------------------------------------------------------------------

struct TaggedRLetter {
  int tag = 0;
  RLetter letter;
  friend bool operator==(const TaggedRLetter& a, const TaggedRLetter& b) {
    return a.tag == b.tag && a.letter == b.letter;
  }
};

using TaggedRWord = std::vector<TaggedRLetter>;

inline TaggedRWord normalize_tagged(const TaggedRWord& w) {
  // group runs by tag and normalize each run in R
  TaggedRWord out;
  std::size_t i = 0;
  while (i < w.size()) {
    int tag = w[i].tag;
    RWord run;
    while (i < w.size() && w[i].tag == tag) run.push_back(w[i++].letter);
    run = normalize_r(run);
    if (!out.empty() && out.back().tag == tag) {
      // merge with previous run of the same tag (can happen after upstream
      // normalization steps); re-normalize the combined run
      RWord prev;
      while (!out.empty() && out.back().tag == tag) {
        prev.insert(prev.begin(), out.back().letter);
        out.pop_back();
      }
      run = r_mul(prev, run);
    }
    for (const RLetter& l : run) out.push_back(TaggedRLetter{tag, l});
  }
  return out;
}

inline TaggedRWord beta_r_letter(const RLetter& l) {
  using K = RLetter::Kind;
  TaggedRWord out;
  switch (l.kind) {
    case K::X00: out.push_back({0, l}); break;
    case K::X11: out.push_back({1, l}); break;
    case K::P: {
      out.push_back({0, l});
      for (int t = 0; t < l.index; ++t) {
        out.push_back({1, RLetter{K::X00, 0}});
        out.push_back({0, RLetter{K::X11, 0}});
      }
      out.push_back({1, l});
      break;
    }
    case K::Q: {
      out.push_back({1, l});
      for (int t = 0; t < l.index; ++t) {
        out.push_back({0, RLetter{K::X11, 0}});
        out.push_back({1, RLetter{K::X00, 0}});
      }
      out.push_back({0, l});
      break;
    }
  }
  return out;
}

inline TaggedRWord beta_r(const RWord& w) {
  TaggedRWord out;
  for (const RLetter& l : w) {
    TaggedRWord img = beta_r_letter(l);
    out.insert(out.end(), img.begin(), img.end());
  }
  return normalize_tagged(out);
}

// Derived co-operations for the two sides of associativity, into the
// 3-copower (tags 0 = lambda, 1 = mu, 2 = rho).
inline TaggedRWord assoc_side(const RWord& w, bool left_associated) {
  TaggedRWord first = beta_r(w);
  TaggedRWord out;
  for (const TaggedRLetter& tl : first) {
    if (left_associated ? tl.tag == 0 : tl.tag == 1) {
      // expand this copy again
      TaggedRWord img = beta_r_letter(tl.letter);
      for (const TaggedRLetter& in : img)
        out.push_back(TaggedRLetter{left_associated ? in.tag : in.tag + 1, in.letter});
    } else {
      int tag = left_associated ? 2 : 0;
      out.push_back(TaggedRLetter{tag, tl.letter});
    }
  }
  return normalize_tagged(out);
}

inline bool check_coassoc(const RWord& w) {
  return assoc_side(w, true) == assoc_side(w, false);
}

// Expected value of both sides at p_i:
// p_i^(l) (x00^(m) x11^(l))^i p_i^(m) (x00^(r) x11^(m))^i p_i^(r).
inline TaggedRWord p_i_lmr(int i) {
  using K = RLetter::Kind;
  TaggedRWord out;
  RLetter p{K::P, i};
  out.push_back({0, p});
  for (int t = 0; t < i; ++t) {
    out.push_back({1, RLetter{K::X00, 0}});
    out.push_back({0, RLetter{K::X11, 0}});
  }
  out.push_back({1, p});
  for (int t = 0; t < i; ++t) {
    out.push_back({2, RLetter{K::X00, 0}});
    out.push_back({1, RLetter{K::X11, 0}});
  }
  out.push_back({2, p});
  return normalize_tagged(out);
}

// ---------------------------------------------------------------------------
// The represented functor E: tuples (a; b; c_0..c_{N-1}; d_0..d_{N-1}) with
// a^2=a, b^2=b, a c_i = c_i = c_i b, b d_i = d_i = d_i a, multiplied by the
// Rees-matrix formula.
// ---------------------------------------------------------------------------

struct EValue {
  int n_of_a = 0;            // |A|
  int cutoff = 0;            // N
  std::vector<std::vector<int>> carrier;  // tuples (a,b,c_0..,d_0..)
  FiniteAlgebra algebra;     // binary op over carrier indices
};

inline std::vector<std::vector<int>> e_carrier(const FiniteAlgebra& a, int n) {
  std::vector<std::vector<int>> out;
  int slots = 2 + 2 * n;
  std::vector<int> t(static_cast<std::size_t>(slots), 0);
  while (true) {
    int av = t[0], bv = t[1];
    bool ok = a.mul(av, av) == av && a.mul(bv, bv) == bv;
    for (int i = 0; i < n && ok; ++i) {
      int c = t[static_cast<std::size_t>(2 + i)];
      int d = t[static_cast<std::size_t>(2 + n + i)];
      ok = a.mul(av, c) == c && a.mul(c, bv) == c && a.mul(bv, d) == d && a.mul(d, av) == d;
    }
    if (ok) out.push_back(t);
    int i = slots - 1;
    for (; i >= 0; --i) {
      if (++t[static_cast<std::size_t>(i)] < a.size) break;
      t[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

inline int a_power_sandwich(const FiniteAlgebra& a, int left, int mid, int i, int right) {
  // left (mid)^i right
  int acc = left;
  for (int t = 0; t < i; ++t) acc = a.mul(acc, mid);
  return a.mul(acc, right);
}

// The Rees-matrix product of two carrier tuples.
inline std::vector<int> e_product(const FiniteAlgebra& a, int n, const std::vector<int>& u,
                                  const std::vector<int>& v) {
  std::vector<int> r(u.size());
  r[0] = u[0];
  r[1] = v[1];
  int ab = a.mul(v[0], u[1]);  // a' b
  int ba = a.mul(u[1], v[0]);  // b a'
  for (int i = 0; i < n; ++i) {
    r[static_cast<std::size_t>(2 + i)] =
        a_power_sandwich(a, u[static_cast<std::size_t>(2 + i)], ab, i,
                         v[static_cast<std::size_t>(2 + i)]);
    r[static_cast<std::size_t>(2 + n + i)] =
        a_power_sandwich(a, v[static_cast<std::size_t>(2 + n + i)], ba, i,
                         u[static_cast<std::size_t>(2 + n + i)]);
  }
  return r;
}

inline EValue e_value(const FiniteAlgebra& a, int n) {
  if (!is_associative(a)) throw DomainError("e_value requires an associative Cayley table");
  EValue ev;
  ev.n_of_a = a.size;
  ev.cutoff = n;
  ev.carrier = e_carrier(a, n);
  int sz = static_cast<int>(ev.carrier.size());
  // tuples pack to base-|A| integers for O(1) index lookup
  std::size_t packed_space = 1;
  for (int i = 0; i < 2 + 2 * n; ++i) packed_space *= static_cast<std::size_t>(a.size);
  auto pack = [&](const std::vector<int>& t) {
    std::size_t idx = 0;
    for (int v : t) idx = idx * static_cast<std::size_t>(a.size) + static_cast<std::size_t>(v);
    return idx;
  };
  std::vector<int> index(packed_space, -1);
  for (int i = 0; i < sz; ++i) index[pack(ev.carrier[static_cast<std::size_t>(i)])] = i;
  std::vector<int> table(static_cast<std::size_t>(sz) * static_cast<std::size_t>(sz), 0);
  for (int x = 0; x < sz; ++x)
    for (int y = 0; y < sz; ++y) {
      std::vector<int> r = e_product(a, n, ev.carrier[static_cast<std::size_t>(x)],
                                     ev.carrier[static_cast<std::size_t>(y)]);
      int idx = index[pack(r)];
      if (idx < 0) throw DomainError("e_value: product left the carrier");
      table[static_cast<std::size_t>(x) * static_cast<std::size_t>(sz) + static_cast<std::size_t>(y)] = idx;
    }
  ev.algebra = make_magma(sz, std::move(table));
  return ev;
}

// The same operation computed through the presentation: a tuple is the
// generator-image list of a truncated homomorphism |R| -> A, and h h' sends
// each generator g to the evaluation of beta^R(g) with tag 0 -> h, 1 -> h'.
inline int eval_tagged_in_a(const FiniteAlgebra& a, const TaggedRWord& w,
                            const std::vector<int>& h0, const std::vector<int>& h1, int n) {
  auto letter_value = [&](const TaggedRLetter& tl) -> int {
    const std::vector<int>& h = tl.tag == 0 ? h0 : h1;
    switch (tl.letter.kind) {
      case RLetter::X00: return h[0];
      case RLetter::X11: return h[1];
      case RLetter::P: return h[static_cast<std::size_t>(2 + tl.letter.index)];
      case RLetter::Q: return h[static_cast<std::size_t>(2 + n + tl.letter.index)];
    }
    return -1;
  };
  if (w.empty()) throw DomainError("empty tagged word has no value");
  int acc = letter_value(w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) acc = a.mul(acc, letter_value(w[i]));
  return acc;
}

// beta^R images of the 2 + 2n truncated generators, in carrier slot order.
inline std::vector<TaggedRWord> generator_betas(int n) {
  using K = RLetter::Kind;
  std::vector<TaggedRWord> out;
  out.push_back(beta_r({RLetter{K::X00, 0}}));
  out.push_back(beta_r({RLetter{K::X11, 0}}));
  for (int i = 0; i < n; ++i) out.push_back(beta_r({RLetter{K::P, i}}));
  for (int i = 0; i < n; ++i) out.push_back(beta_r({RLetter{K::Q, i}}));
  return out;
}

// Product of truncated homs by evaluating beta^R; indices above the cutoff
// never appear because beta^R(g) only involves generators of g's own index.
inline std::vector<int> hom_product(const FiniteAlgebra& a, const std::vector<int>& h0,
                                    const std::vector<int>& h1, int n,
                                    const std::vector<TaggedRWord>* cached_betas = nullptr) {
  std::vector<TaggedRWord> local;
  if (!cached_betas) {
    local = generator_betas(n);
    cached_betas = &local;
  }
  std::vector<int> out(h0.size());
  for (std::size_t slot = 0; slot < out.size(); ++slot)
    out[slot] = eval_tagged_in_a(a, (*cached_betas)[slot], h0, h1, n);
  return out;
}

// ---------------------------------------------------------------------------
// Word-indexed representable functors: m+n+1 tuples with the sandwich
// product by w(a'_1..a'_m, b_1..b_n).
// ---------------------------------------------------------------------------

struct WWord {
  int m = 0;                // number of a-letters
  int n = 0;                // number of b-letters
  std::vector<int> letters; // 0..m-1 = a_r, m..m+n-1 = b_r; nonempty
};

// Blocks of a-letters alternating with blocks of b-letters, counted from the
// first a-block to the last b-block; leading b's and trailing a's ignored.
inline int w_block_count(const WWord& w) {
  std::vector<int> kinds;  // 0 = a-block, 1 = b-block
  for (int l : w.letters) {
    int kind = l < w.m ? 0 : 1;
    if (kinds.empty() || kinds.back() != kind) kinds.push_back(kind);
  }
  std::size_t lo = 0, hi = kinds.size();
  while (lo < hi && kinds[lo] == 1) ++lo;      // ignore leading b-blocks
  while (hi > lo && kinds[hi - 1] == 0) --hi;  // ignore trailing a-blocks
  return static_cast<int>((hi - lo) / 2);
}

inline int eval_w(const FiniteAlgebra& alg, const WWord& w, const std::vector<int>& a_args,
                  const std::vector<int>& b_args) {
  int acc = -1;
  for (int l : w.letters) {
    int v = l < w.m ? a_args[static_cast<std::size_t>(l)]
                    : b_args[static_cast<std::size_t>(l - w.m)];
    acc = acc < 0 ? v : alg.mul(acc, v);
  }
  return acc;
}

// Product of two (m+n+1)-tuples: keep the a-block of the left factor and
// the b-block of the right, sandwiching c w(a', b) c'.
inline std::vector<int> w_product(const FiniteAlgebra& alg, const WWord& w,
                                  const std::vector<int>& u, const std::vector<int>& v) {
  int slots = w.m + w.n + 1;
  std::vector<int> r(static_cast<std::size_t>(slots));
  for (int i = 0; i < w.m; ++i) r[static_cast<std::size_t>(i)] = u[static_cast<std::size_t>(i)];
  for (int i = 0; i < w.n; ++i)
    r[static_cast<std::size_t>(w.m + i)] = v[static_cast<std::size_t>(w.m + i)];
  std::vector<int> a_args(v.begin(), v.begin() + w.m);
  std::vector<int> b_args(u.begin() + w.m, u.begin() + w.m + w.n);
  int mid = eval_w(alg, w, a_args, b_args);
  r[static_cast<std::size_t>(slots - 1)] =
      alg.mul(alg.mul(u[static_cast<std::size_t>(slots - 1)], mid),
              v[static_cast<std::size_t>(slots - 1)]);
  return r;
}

// carrier = all (m+n+1)-tuples; product keeps the a-block of the left factor
// and the b-block of the right, sandwiching c w(a', b) c'.
inline FiniteAlgebra w_functor(const FiniteAlgebra& alg, const WWord& w) {
  int slots = w.m + w.n + 1;
  std::vector<std::vector<int>> carrier;
  std::vector<int> t(static_cast<std::size_t>(slots), 0);
  while (true) {
    carrier.push_back(t);
    int i = slots - 1;
    for (; i >= 0; --i) {
      if (++t[static_cast<std::size_t>(i)] < alg.size) break;
      t[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  auto pack = [&](const std::vector<int>& t) {
    std::size_t idx = 0;
    for (int v : t) idx = idx * static_cast<std::size_t>(alg.size) + static_cast<std::size_t>(v);
    return idx;
  };
  int sz = static_cast<int>(carrier.size());
  std::vector<int> table(static_cast<std::size_t>(sz) * static_cast<std::size_t>(sz), 0);
  for (int x = 0; x < sz; ++x)
    for (int y = 0; y < sz; ++y) {
      std::vector<int> r = w_product(alg, w, carrier[static_cast<std::size_t>(x)],
                                     carrier[static_cast<std::size_t>(y)]);
      table[static_cast<std::size_t>(x) * static_cast<std::size_t>(sz) + static_cast<std::size_t>(y)] =
          static_cast<int>(pack(r));
    }
  return make_magma(sz, std::move(table));
}

// The morphism from E(A): every a_r slot takes a, every b_r slot takes b,
// the last slot takes c_i with i the block count.
inline std::vector<int> morphism_from_e(const WWord& w, const std::vector<int>& e_tuple,
                                        int cutoff) {
  int i = w_block_count(w);
  if (i >= cutoff) throw DomainError("block count exceeds the E cutoff");
  std::vector<int> out;
  for (int r = 0; r < w.m; ++r) out.push_back(e_tuple[0]);
  for (int r = 0; r < w.n; ++r) out.push_back(e_tuple[1]);
  out.push_back(e_tuple[static_cast<std::size_t>(2 + i)]);
  return out;
}

// ---------------------------------------------------------------------------
// Cosemigroups whose map to R is constant at x00: a semigroup B with an
// idempotent endomorphism, beta(b) = eps(b) in copy 0.
// ---------------------------------------------------------------------------

struct X00Coalgebra {
  FiniteCoalgebra coalgebra;
  FiniteAlgebra b;
  std::vector<int> eps;
};

inline X00Coalgebra x00_coalgebra(const FiniteAlgebra& b, const std::vector<int>& eps) {
  if (!is_associative(b)) throw DomainError("x00_coalgebra needs a semigroup");
  if (eps.size() != static_cast<std::size_t>(b.size))
    throw DomainError("endomap must be total");
  for (int x = 0; x < b.size; ++x) {
    if (eps[static_cast<std::size_t>(eps[static_cast<std::size_t>(x)])] !=
        eps[static_cast<std::size_t>(x)])
      throw DomainError("endomap is not idempotent");
    for (int y = 0; y < b.size; ++y)
      if (eps[static_cast<std::size_t>(b.mul(x, y))] !=
          b.mul(eps[static_cast<std::size_t>(x)], eps[static_cast<std::size_t>(y)]))
        throw DomainError("endomap is not a homomorphism");
  }
  X00Coalgebra out;
  out.b = b;
  out.eps = eps;
  out.coalgebra.size = b.size;
  out.coalgebra.sig = one_binary_op_signature();
  std::vector<CopowerElem> co;
  for (int x = 0; x < b.size; ++x) co.push_back(CopowerElem{0, eps[static_cast<std::size_t>(x)]});
  out.coalgebra.coops[kTowerOp] = std::move(co);
  return out;
}

// Functor value: homs B -> A with h h' = h . eps.
inline FiniteAlgebra x00_functor_value(const X00Coalgebra& s, const FiniteAlgebra& a) {
  auto homs = semigroup_homs(s.b, a);
  std::map<std::vector<int>, int> index;
  for (std::size_t i = 0; i < homs.size(); ++i) index[homs[i]] = static_cast<int>(i);
  int sz = static_cast<int>(homs.size());
  std::vector<int> table(static_cast<std::size_t>(sz) * static_cast<std::size_t>(sz), 0);
  for (int x = 0; x < sz; ++x) {
    std::vector<int> prod(homs[static_cast<std::size_t>(x)].size());
    for (int e = 0; e < s.b.size; ++e)
      prod[static_cast<std::size_t>(e)] =
          homs[static_cast<std::size_t>(x)][static_cast<std::size_t>(s.eps[static_cast<std::size_t>(e)])];
    int pi = index.at(prod);
    for (int y = 0; y < sz; ++y)
      table[static_cast<std::size_t>(x) * static_cast<std::size_t>(sz) + static_cast<std::size_t>(y)] = pi;
  }
  return make_magma(sz, std::move(table));
}

// ---------------------------------------------------------------------------
// Finitely generated cosemigroups (or cobinars) given by the co-operation on
// generators, and their unique maps into the tower levels: f_0 sends every
// generator to the point, and f_{k+1}(g) glues the coprojections of the f_k
// images along beta(g).
// ---------------------------------------------------------------------------

struct CoalgebraPresentation {
  Catalog variety = Catalog::Se;                        // Se or Bi carrier
  int gen_count = 0;
  std::vector<std::vector<std::pair<int, int>>> coop;   // per gen: (tag, gen)*

  void validate() const {
    if (static_cast<int>(coop.size()) != gen_count)
      throw DomainError("co-operation table must cover every generator");
    for (const auto& img : coop) {
      if (img.empty()) throw DomainError("empty co-operation image");
      for (auto [t, g] : img)
        if (t < 0 || t > 1 || g < 0 || g >= gen_count)
          throw DomainError("co-operation image out of range");
    }
  }
};

// level-k images of the generators, as words over k-bit generators
inline std::vector<Word> tower_images(const CoalgebraPresentation& s, int k) {
  s.validate();
  GenId point{"x", {}, true};
  std::vector<Word> cur(static_cast<std::size_t>(s.gen_count),
                        s.variety == Catalog::Se ? Word::se({point}) : Word::bi_leaf(point));
  for (int level = 0; level < k; ++level) {
    std::vector<Word> next;
    for (int g = 0; g < s.gen_count; ++g) {
      const auto& img = s.coop[static_cast<std::size_t>(g)];
      std::optional<Word> acc;
      for (auto [t, h] : img) {
        Word piece = coprojection(t, 2, cur[static_cast<std::size_t>(h)]);
        acc = acc ? word_mul(*acc, piece) : piece;
      }
      next.push_back(*acc);
    }
    cur = std::move(next);
  }
  return cur;
}

// The cosemigroup representing the identity functor: one generator y with
// beta(y) = y^(0) y^(1).
inline CoalgebraPresentation identity_cosemigroup() {
  CoalgebraPresentation s;
  s.variety = Catalog::Se;
  s.gen_count = 1;
  s.coop = {{{0, 0}, {1, 0}}};
  return s;
}

// ---------------------------------------------------------------------------
// Text form for RWords: X00.P1.X11 style.
// ---------------------------------------------------------------------------

inline std::string print_rword(const RWord& w) {
  std::string out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += '.';
    switch (w[i].kind) {
      case RLetter::X00: out += "X00"; break;
      case RLetter::X11: out += "X11"; break;
      case RLetter::P: out += "P" + std::to_string(w[i].index); break;
      case RLetter::Q: out += "Q" + std::to_string(w[i].index); break;
    }
  }
  return out;
}

inline RWord parse_rword(const std::string& text) {
  RWord out;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text.compare(i, 3, "X00") == 0) {
      out.push_back(RLetter{RLetter::X00, 0});
      i += 3;
    } else if (text.compare(i, 3, "X11") == 0) {
      out.push_back(RLetter{RLetter::X11, 0});
      i += 3;
    } else if (text[i] == 'P' || text[i] == 'Q') {
      char kind = text[i++];
      std::size_t j = i;
      while (j < text.size() && text[j] >= '0' && text[j] <= '9') ++j;
      if (j == i) throw ParseError("R-generator needs an index: " + text);
      int idx = std::stoi(text.substr(i, j - i));
      out.push_back(RLetter{kind == 'P' ? RLetter::P : RLetter::Q, idx});
      i = j;
    } else {
      throw ParseError("bad RWord at '" + text.substr(i) + "'");
    }
    if (i < text.size()) {
      if (text[i] != '.') throw ParseError("expected '.' in RWord: " + text);
      ++i;
    }
  }
  return out;
}

}  // namespace coalg::sese
