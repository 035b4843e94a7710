#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coalg/finite_algebra.hpp"
#include "coalg/util.hpp"
#include "coalg/word.hpp"

namespace coalg {

// ---------------------------------------------------------------------------
// Cogroups in Gp are free groups on pointed sets: the canonical generators
// are the nonbasepoint elements, and the comultiplication sends each
// generator x to x^(0) x^(1).  Morphisms correspond to based maps sending
// generators to generators or to the identity element.
// ---------------------------------------------------------------------------

struct PointedSet {
  std::vector<std::string> elements;
  std::size_t basepoint = 0;

  void validate() const {
    if (basepoint >= elements.size()) throw DomainError("basepoint not in the set");
    std::set<std::string> seen(elements.begin(), elements.end());
    if (seen.size() != elements.size()) throw DomainError("pointed set has duplicates");
  }
  std::vector<std::string> nonbasepoint() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (i != basepoint) out.push_back(elements[i]);
    return out;
  }
};

struct Cogroup {
  std::vector<std::string> generators;  // carrier = free group on these

  GenId gen(const std::string& name) const { return GenId{name, {}, false}; }

  // x -> x^(0) x^(1) in the 2-copower
  Word comultiplication(const std::string& name) const {
    return Word::group({SignedGen{gen(name).with_prefix_tag(0), false},
                        SignedGen{gen(name).with_prefix_tag(1), false}});
  }
};

// A cogroup morphism is a generator assignment to generators-or-identity.
using BasedMap = std::map<std::string, std::optional<std::string>>;

inline Word apply_based_map(const Cogroup& target, const BasedMap& f, const Word& w) {
  return word_substitute(w, [&](const GenId& g) -> Word {
    // tags pass through untouched
    auto it = f.find(g.name);
    if (it == f.end()) throw DomainError("based map undefined on " + g.name);
    if (!it->second) return Word::group({});
    GenId h = target.gen(*it->second);
    h.tags = g.tags;
    return Word::group({SignedGen{h, false}});
  });
}

struct CogroupProduct {
  PointedSet product_set;
  Cogroup cogroup;
  BasedMap proj1, proj2;
  std::vector<std::pair<std::string, std::string>> labels;  // generator -> (x,y)
};

// Product of the cogroups on pointed sets (X,e) and (Y,e): free on
// (|X|)(|Y|) - 1 generators labeled by pairs, projections reading off the
// coordinates ("cover all possible choices exactly once").
inline CogroupProduct cogroup_product(const PointedSet& xs, const PointedSet& ys) {
  xs.validate();
  ys.validate();
  CogroupProduct out;
  for (std::size_t i = 0; i < xs.elements.size(); ++i)
    for (std::size_t j = 0; j < ys.elements.size(); ++j) {
      if (i == xs.basepoint && j == ys.basepoint) continue;
      std::string gx = i == xs.basepoint ? "e" : xs.elements[i];
      std::string gy = j == ys.basepoint ? "e" : ys.elements[j];
      std::string name = "g_" + gx + "," + gy;
      out.cogroup.generators.push_back(name);
      out.labels.emplace_back(gx, gy);
      out.proj1[name] = i == xs.basepoint ? std::nullopt : std::make_optional(xs.elements[i]);
      out.proj2[name] = j == ys.basepoint ? std::nullopt : std::make_optional(ys.elements[j]);
      out.product_set.elements.push_back(name);
    }
  out.product_set.elements.push_back("e");
  out.product_set.basepoint = out.product_set.elements.size() - 1;
  return out;
}

struct NonseparationWitness {
  Word w1, w2;       // distinct reduced words
  Word image1_proj1, image2_proj1;
  Word image1_proj2, image2_proj2;
};

// g_{x,e} g_{e,x} vs g_{e,x} g_{x,e} in the square of the rank-1 cogroup.
inline NonseparationWitness nonseparation_witness() {
  PointedSet one{{"x", "e"}, 1};
  CogroupProduct prod = cogroup_product(one, one);
  Cogroup x_cogroup{{"x"}};
  GenId a{"g_x,e", {}, false}, b{"g_e,x", {}, false};
  NonseparationWitness out{
      Word::group({SignedGen{a, false}, SignedGen{b, false}}),
      Word::group({SignedGen{b, false}, SignedGen{a, false}}),
      Word::group({}), Word::group({}), Word::group({}), Word::group({})};
  out.image1_proj1 = apply_based_map(x_cogroup, prod.proj1, out.w1);
  out.image2_proj1 = apply_based_map(x_cogroup, prod.proj1, out.w2);
  out.image1_proj2 = apply_based_map(x_cogroup, prod.proj2, out.w1);
  out.image2_proj2 = apply_based_map(x_cogroup, prod.proj2, out.w2);
  return out;
}

// Group axioms for a Cayley table; returns the identity element.
inline int group_identity(const FiniteAlgebra& a) {
  if (!is_associative(a)) throw DomainError("not associative");
  for (int e = 0; e < a.size; ++e) {
    bool ok = true;
    for (int x = 0; x < a.size && ok; ++x) ok = a.mul(e, x) == x && a.mul(x, e) == x;
    if (!ok) continue;
    for (int x = 0; x < a.size; ++x) {
      bool inv = false;
      for (int y = 0; y < a.size && !inv; ++y) inv = a.mul(x, y) == e && a.mul(y, x) == e;
      if (!inv) throw DomainError("no inverse; not a group");
    }
    return e;
  }
  throw DomainError("no identity; not a group");
}

struct CofreeCogroup {
  Cogroup cogroup;                       // free on |A| - 1 generators
  std::map<std::string, int> universal;  // generator -> element of A
};

// The cofree cogroup on a finite group A: free on the nonidentity elements,
// the universal homomorphism evaluating each generator to its element.
inline CofreeCogroup cofree_cogroup(const FiniteAlgebra& a) {
  int e = group_identity(a);
  CofreeCogroup out;
  for (int x = 0; x < a.size; ++x) {
    if (x == e) continue;
    std::string name = "g_" + a.name_of(x);
    out.cogroup.generators.push_back(name);
    out.universal[name] = x;
  }
  return out;
}

// Evaluate a group word in A under a generator assignment.
inline int eval_group_word(const FiniteAlgebra& a, int identity,
                           const std::map<std::string, int>& assign, const Word& w) {
  int acc = identity;
  for (const SignedGen& l : w.as_group()) {
    int v = assign.at(l.gen.name);
    if (l.inverse) {
      for (int y = 0; y < a.size; ++y)
        if (a.mul(v, y) == identity) {
          v = y;
          break;
        }
    }
    acc = a.mul(acc, v);
  }
  return acc;
}

// ---------------------------------------------------------------------------
// The three monoid comonoids R -> R' -> R'' on <x,y>, <x,y | xy=e>,
// <x,y | xy=e=yx>, comultiplication x -> x^(0) x^(1), y -> y^(1) y^(0).
// ---------------------------------------------------------------------------

enum class MonoidModel { Free, Bicyclic, Integers };

// Normal forms: Free = letter strings over {0=x, 1=y}; Bicyclic = y^a x^b;
// Integers = x^n.
struct BicyclicElem {
  long long a = 0, b = 0;  // y^a x^b
  friend bool operator==(const BicyclicElem& p, const BicyclicElem& q) {
    return p.a == q.a && p.b == q.b;
  }
  friend bool operator<(const BicyclicElem& p, const BicyclicElem& q) {
    if (p.a != q.a) return p.a < q.a;
    return p.b < q.b;
  }
};

inline BicyclicElem bicyclic_mul(const BicyclicElem& p, const BicyclicElem& q) {
  // y^pa x^pb . y^qa x^qb with xy = e
  if (p.b >= q.a) return {p.a, p.b - q.a + q.b};
  return {p.a + (q.a - p.b), q.b};
}

inline BicyclicElem bicyclic_of_string(const std::vector<int>& s) {
  BicyclicElem acc;
  for (int c : s) acc = bicyclic_mul(acc, c == 0 ? BicyclicElem{0, 1} : BicyclicElem{1, 0});
  return acc;
}

inline long long integers_of_string(const std::vector<int>& s) {
  long long n = 0;
  for (int c : s) n += c == 0 ? 1 : -1;
  return n;
}

// Rewriting in the 2-copower of the bicyclic monoid: strings over tagged
// letters with rules x_i y_i -> empty, applied to a fixed point.
struct TaggedLetter {
  int tag = 0;
  int letter = 0;  // 0 = x, 1 = y
  friend bool operator==(const TaggedLetter& a, const TaggedLetter& b) {
    return a.tag == b.tag && a.letter == b.letter;
  }
};

inline std::vector<TaggedLetter> bicyclic_copower_reduce(std::vector<TaggedLetter> w) {
  std::vector<TaggedLetter> out;
  for (const TaggedLetter& l : w) {
    if (!out.empty() && out.back().tag == l.tag && out.back().letter == 0 && l.letter == 1)
      out.pop_back();
    else
      out.push_back(l);
  }
  return out;
}

// Comultiplication images of the generators: x -> x^(0) x^(1),
// y -> y^(1) y^(0).
inline std::vector<TaggedLetter> comonoid_comult(int letter) {
  if (letter == 0) return {{0, 0}, {1, 0}};
  return {{1, 1}, {0, 1}};
}

// Functor values at a finite monoid A (Cayley table with an identity):
// Free: A x A^op; Bicyclic: pairs with ab = e; Integers: ab = e = ba.
inline int monoid_identity(const FiniteAlgebra& a) {
  for (int e = 0; e < a.size; ++e) {
    bool ok = true;
    for (int x = 0; x < a.size && ok; ++x) ok = a.mul(e, x) == x && a.mul(x, e) == x;
    if (ok) return e;
  }
  throw DomainError("no identity element");
}

inline std::vector<std::pair<int, int>> monoid_model_carrier(MonoidModel model,
                                                             const FiniteAlgebra& a) {
  int e = monoid_identity(a);
  std::vector<std::pair<int, int>> out;
  for (int x = 0; x < a.size; ++x)
    for (int y = 0; y < a.size; ++y) {
      bool keep = true;
      if (model == MonoidModel::Bicyclic) keep = a.mul(x, y) == e;
      if (model == MonoidModel::Integers) keep = a.mul(x, y) == e && a.mul(y, x) == e;
      if (keep) out.emplace_back(x, y);
    }
  return out;
}

// operation induced by the comultiplication: (h h')(x) = h(x) h'(x),
// (h h')(y) = h'(y) h(y)
inline std::pair<int, int> monoid_model_mul(const FiniteAlgebra& a, std::pair<int, int> h,
                                            std::pair<int, int> h2) {
  return {a.mul(h.first, h2.first), a.mul(h2.second, h.second)};
}

// ---------------------------------------------------------------------------
// Smith normal form and finitely generated abelian groups.
// ---------------------------------------------------------------------------

using Mat = std::vector<std::vector<long long>>;

inline Mat identity_mat(std::size_t n) {
  Mat m(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

inline Mat mat_mul(const Mat& a, const Mat& b) {
  std::size_t r = a.size(), k = b.size(), c = b.empty() ? 0 : b[0].size();
  Mat out(r, std::vector<long long>(c, 0));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t t = 0; t < k; ++t) out[i][j] += a[i][t] * b[t][j];
  return out;
}

struct Snf {
  Mat u, d, v;  // u * m * v = d, u and v unimodular
};

// Standard elimination with gcd pivoting, then the divisibility fix-up.
inline Snf smith_normal_form(Mat m) {
  std::size_t rows = m.size(), cols = rows ? m[0].size() : 0;
  for (const auto& row : m)
    if (row.size() != cols) throw DomainError("ragged matrix");
  Snf out{identity_mat(rows), m, identity_mat(cols)};
  Mat& d = out.d;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    std::swap(d[i], d[j]);
    std::swap(out.u[i], out.u[j]);
  };
  auto swap_cols = [&](std::size_t i, std::size_t j) {
    for (auto& row : d) std::swap(row[i], row[j]);
    for (auto& row : out.v) std::swap(row[i], row[j]);
  };
  auto add_row = [&](std::size_t dst, std::size_t src, long long f) {
    for (std::size_t c = 0; c < cols; ++c) d[dst][c] += f * d[src][c];
    for (std::size_t c = 0; c < rows; ++c) out.u[dst][c] += f * out.u[src][c];
  };
  auto add_col = [&](std::size_t dst, std::size_t src, long long f) {
    for (std::size_t r = 0; r < rows; ++r) d[r][dst] += f * d[r][src];
    for (std::size_t r = 0; r < cols; ++r) out.v[r][dst] += f * out.v[r][src];
  };
  auto negate_row = [&](std::size_t i) {
    for (auto& x : d[i]) x = -x;
    for (auto& x : out.u[i]) x = -x;
  };

  std::size_t t = 0;
  while (t < rows && t < cols) {
    // find a nonzero pivot in the remaining block
    std::size_t pi = t, pj = t;
    bool found = false;
    for (std::size_t i = t; i < rows && !found; ++i)
      for (std::size_t j = t; j < cols && !found; ++j)
        if (d[i][j] != 0) {
          pi = i;
          pj = j;
          found = true;
        }
    if (!found) break;
    swap_rows(t, pi);
    swap_cols(t, pj);
    // eliminate row and column t
    bool dirty = true;
    while (dirty) {
      dirty = false;
      for (std::size_t i = t + 1; i < rows; ++i)
        while (d[i][t] != 0) {
          if (std::abs(d[i][t]) < std::abs(d[t][t])) swap_rows(t, i);
          long long f = d[i][t] / d[t][t];
          add_row(i, t, -f);
        }
      for (std::size_t j = t + 1; j < cols; ++j)
        while (d[t][j] != 0) {
          long long f = d[t][j] / d[t][t];
          add_col(j, t, -f);
          if (d[t][j] != 0) {
            swap_cols(t, j);
            dirty = true;
          }
        }
      // column ops can revive entries below the pivot
      for (std::size_t i = t + 1; i < rows && !dirty; ++i)
        if (d[i][t] != 0) dirty = true;
    }
    if (d[t][t] < 0) negate_row(t);
    ++t;
  }
  // divisibility chain: d[i][i] | d[i+1][i+1]
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < t; ++i) {
      long long a = d[i][i], b = d[i + 1][i + 1];
      if (a != 0 && b % a != 0) {
        // fold b into position (i, i): standard trick via one column add
        add_col(i, i + 1, 1);
        // re-eliminate the 2x2 block
        while (d[i + 1][i] != 0) {
          if (std::abs(d[i + 1][i]) < std::abs(d[i][i])) swap_rows(i, i + 1);
          long long f = d[i + 1][i] / d[i][i];
          add_row(i + 1, i, -f);
        }
        while (d[i][i + 1] != 0) {
          long long f = d[i][i + 1] / d[i][i];
          add_col(i + 1, i, -f);
          if (d[i][i + 1] != 0) swap_cols(i, i + 1);
        }
        if (d[i][i] < 0) negate_row(i);
        if (d[i + 1][i + 1] < 0) negate_row(i + 1);
        changed = true;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Finitely generated abelian groups by canonical invariants: orders[i] = 0
// for a Z summand, or the torsion order (> 1).  Elements are coordinate
// vectors reduced modulo the orders.
// ---------------------------------------------------------------------------

struct FgAbGroup {
  std::vector<long long> orders;

  void validate() const {
    for (long long d : orders)
      if (d < 0 || d == 1) throw DomainError("invariants are 0 or > 1");
  }

  std::vector<long long> reduce(std::vector<long long> x) const {
    for (std::size_t i = 0; i < orders.size(); ++i)
      if (orders[i] != 0) {
        x[i] %= orders[i];
        if (x[i] < 0) x[i] += orders[i];
      }
    return x;
  }

  // order of an element: lcm over components (0 = infinite)
  long long element_order(const std::vector<long long>& raw) const {
    std::vector<long long> x = reduce(raw);
    long long ord = 1;
    for (std::size_t i = 0; i < orders.size(); ++i) {
      if (x[i] == 0) continue;
      if (orders[i] == 0) return 0;  // infinite
      long long d = orders[i] / std::gcd(orders[i], x[i]);
      ord = std::lcm(ord, d);
    }
    return ord;
  }
};

// Canonical form from a relation matrix: group = Z^n / row space of M.
inline FgAbGroup fg_ab_from_relations(int generators, const Mat& relations) {
  Mat mt(static_cast<std::size_t>(generators));
  for (auto& row : mt) row.assign(relations.size(), 0);
  for (std::size_t i = 0; i < relations.size(); ++i) {
    if (relations[i].size() != static_cast<std::size_t>(generators))
      throw DomainError("relation width mismatch");
    for (std::size_t j = 0; j < relations[i].size(); ++j) mt[j][i] = relations[i][j];
  }
  Snf snf = smith_normal_form(mt);
  FgAbGroup g;
  std::size_t k = std::min(mt.size(), relations.size());
  std::vector<long long> torsion;
  std::size_t free_rank = static_cast<std::size_t>(generators);
  for (std::size_t i = 0; i < k; ++i) {
    long long di = snf.d[i][i];
    if (di == 0) continue;
    --free_rank;
    if (di > 1) torsion.push_back(di);
  }
  g.orders = torsion;
  for (std::size_t i = 0; i < free_rank; ++i) g.orders.push_back(0);
  return g;
}

// Sorted invariants with multiplicity (isomorphism invariant).
inline std::vector<long long> canonical_invariants(const FgAbGroup& g) {
  std::vector<long long> inv;
  for (long long d : g.orders)
    if (d != 0) inv.push_back(d);
  // merge the torsion multiset into an invariant-factor chain via SNF of the
  // diagonal matrix
  if (!inv.empty()) {
    Mat diag(inv.size(), std::vector<long long>(inv.size(), 0));
    for (std::size_t i = 0; i < inv.size(); ++i) diag[i][i] = inv[i];
    Snf snf = smith_normal_form(diag);
    inv.clear();
    for (std::size_t i = 0; i < snf.d.size(); ++i)
      if (snf.d[i][i] > 1) inv.push_back(snf.d[i][i]);
  }
  long long free_rank = 0;
  for (long long d : g.orders)
    if (d == 0) ++free_rank;
  inv.push_back(-free_rank);  // sentinel: free rank as a trailing negative
  return inv;
}

struct TensorProduct {
  FgAbGroup group;                        // orders indexed by basis pairs
  std::size_t left_rank = 0, right_rank = 0;

  std::size_t pair_index(std::size_t i, std::size_t j) const { return i * right_rank + j; }

  // pure tensor a (x) b as coordinates
  std::vector<long long> pure(const std::vector<long long>& a,
                              const std::vector<long long>& b) const {
    std::vector<long long> out(left_rank * right_rank, 0);
    for (std::size_t i = 0; i < left_rank; ++i)
      for (std::size_t j = 0; j < right_rank; ++j) out[pair_index(i, j)] = a[i] * b[j];
    return group.reduce(out);
  }
};

inline TensorProduct tensor_fg_ab(const FgAbGroup& a, const FgAbGroup& b) {
  TensorProduct t;
  t.left_rank = a.orders.size();
  t.right_rank = b.orders.size();
  t.group.orders.assign(t.left_rank * t.right_rank, 0);
  for (std::size_t i = 0; i < t.left_rank; ++i)
    for (std::size_t j = 0; j < t.right_rank; ++j) {
      // gcd(0,x) = x; order-1 components are trivial but stay in place so
      // pair indexing remains simple (their coordinates reduce to 0)
      t.group.orders[t.pair_index(i, j)] = std::gcd(a.orders[i], b.orders[j]);
    }
  return t;
}

// Induced map f (x) g on tensor coordinates; f and g are matrices with
// columns = images of the domain generators in the codomain bases.
inline std::vector<long long> tensor_map_apply(const TensorProduct& dom,
                                               const TensorProduct& cod, const Mat& f,
                                               const Mat& g,
                                               const std::vector<long long>& x) {
  std::vector<long long> out(cod.left_rank * cod.right_rank, 0);
  for (std::size_t i = 0; i < dom.left_rank; ++i)
    for (std::size_t j = 0; j < dom.right_rank; ++j) {
      long long c = x[dom.pair_index(i, j)];
      if (c == 0) continue;
      for (std::size_t k = 0; k < cod.left_rank; ++k)
        for (std::size_t l = 0; l < cod.right_rank; ++l)
          out[cod.pair_index(k, l)] += c * f[k][i] * g[l][j];
    }
  return cod.group.reduce(out);
}

struct RingAbWitness {
  long long p = 0;
  long long order_in_bb = 0;             // order of (pa)(x)b in B (x) B
  std::vector<long long> image_in_aa;    // its image in A (x) A
  bool image_is_zero = false;
};

// A = <a, b | pb = 0>, B = <pa, b> inside A.  The element (pa)(x)b has order
// p in B (x) B but maps to p(ab) = a(pb) = 0 in A (x) A.
inline RingAbWitness ringab_witness(long long p) {
  if (p < 2) throw DomainError("ringab_witness needs a prime p >= 2");
  FgAbGroup a{{0, p}};  // basis (a, b)
  FgAbGroup b{{0, p}};  // abstract basis (u = pa, v = b)
  Mat incl = {{p, 0}, {0, 1}};  // columns: u -> (p,0), v -> (0,1)
  TensorProduct bb = tensor_fg_ab(b, b);
  TensorProduct aa = tensor_fg_ab(a, a);
  std::vector<long long> u = {1, 0}, v = {0, 1};
  std::vector<long long> elt = bb.pure(u, v);
  RingAbWitness out;
  out.p = p;
  out.order_in_bb = bb.group.element_order(elt);
  out.image_in_aa = tensor_map_apply(bb, aa, incl, incl, elt);
  out.image_is_zero = true;
  for (long long c : out.image_in_aa)
    if (c != 0) out.image_is_zero = false;
  return out;
}

}  // namespace coalg
