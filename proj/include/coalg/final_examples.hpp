#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coalg/coalgebra.hpp"
#include "coalg/finite_algebra.hpp"
#include "coalg/tower.hpp"
#include "coalg/util.hpp"

#include "json.hpp"

namespace coalg {

// ---------------------------------------------------------------------------
// The Cantor coalgebra and its subvariety languages (C = Set).
// ---------------------------------------------------------------------------

// Head/tail splitting of a truncated Cantor point.
inline std::pair<int, std::string> cantor_coop(const std::string& bits) {
  if (bits.empty()) throw DomainError("cantor_coop needs a nonempty string");
  return {bits[0] - '0', bits.substr(1)};
}

// n-step unfolding of an element of a finite Set-Bi coalgebra: the unique
// morphism into the level-n truncation.
inline std::string unfold_bits(const FiniteCoalgebra& r, int x, int n) {
  std::string out;
  int cur = x;
  for (int i = 0; i < n; ++i) {
    CopowerElem ce = r.coop(kTowerOp, cur);
    out += static_cast<char>('0' + ce.copy);
    cur = ce.elem;
  }
  return out;
}

// Level-n carrier of the tower over the trivial pseudocoalgebra, as strings.
inline std::set<std::string> subvariety_language(const std::vector<Identity>& ids, int n) {
  SetTower tower = SetTower::over_trivial(ids);
  std::set<std::string> out;
  for (const SetPath& p : tower.carrier(n)) out.insert(p.bit_string());
  return out;
}

// ---------------------------------------------------------------------------
// Closed-form functor values (C = Set).
// ---------------------------------------------------------------------------

enum class SetLanguage { Full, No11, No10, Constants };

inline std::vector<Identity> language_identities(SetLanguage lang) {
  switch (lang) {
    case SetLanguage::Full: return {};
    case SetLanguage::No11: return {identity_no11()};
    case SetLanguage::No10: return {identity_no10()};
    case SetLanguage::Constants: return {identity_assoc()};
  }
  return {};
}

// Rectangular band on A x A: beta((a0,a1),(b0,b1)) = (a0,b1).
inline FiniteAlgebra rectangular_band(int a_size) {
  int n = a_size * a_size;
  std::vector<int> table(static_cast<std::size_t>(n) * n, 0);
  std::vector<std::string> names;
  for (int a0 = 0; a0 < a_size; ++a0)
    for (int a1 = 0; a1 < a_size; ++a1)
      names.push_back("(" + std::to_string(a0) + "," + std::to_string(a1) + ")");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int a0 = x / a_size, b1 = y % a_size;
      table[static_cast<std::size_t>(x) * n + y] = a0 * a_size + b1;
    }
  FiniteAlgebra alg = make_magma(n, std::move(table), std::move(names));
  return alg;
}

// Exact model for the no-10 language: tuples (a_0,...,a_m, a_omega) with
// beta(a, b) = (b_0, a_0, ..., a_{m-1}, a_omega).
inline FiniteAlgebra no10_model(int m, int a_size) {
  int slots = m + 2;
  int n = 1;
  for (int i = 0; i < slots; ++i) n *= a_size;
  auto digits = [&](int x) {
    std::vector<int> d(static_cast<std::size_t>(slots));
    for (int i = slots - 1; i >= 0; --i) {
      d[static_cast<std::size_t>(i)] = x % a_size;
      x /= a_size;
    }
    return d;
  };
  auto pack = [&](const std::vector<int>& d) {
    int x = 0;
    for (int v : d) x = x * a_size + v;
    return x;
  };
  std::vector<int> table(static_cast<std::size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x) {
    std::vector<int> a = digits(x);
    for (int y = 0; y < n; ++y) {
      std::vector<int> b = digits(y);
      std::vector<int> r(static_cast<std::size_t>(slots));
      r[0] = b[0];
      for (int i = 0; i < m; ++i) r[static_cast<std::size_t>(i + 1)] = a[static_cast<std::size_t>(i)];
      r[static_cast<std::size_t>(slots - 1)] = a[static_cast<std::size_t>(slots - 1)];
      table[static_cast<std::size_t>(x) * n + y] = pack(r);
    }
  }
  return make_magma(n, std::move(table));
}

// Functor of the 2-element coalgebra {x -> (1,y), y -> (1,x)}:
// beta((a,b),(a',b')) = (b',a').
inline FiniteAlgebra xy_model(int a_size) {
  int n = a_size * a_size;
  std::vector<int> table(static_cast<std::size_t>(n) * n, 0);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int b1 = y % a_size, a1 = y / a_size;
      table[static_cast<std::size_t>(x) * n + y] = b1 * a_size + a1;
    }
  return make_magma(n, std::move(table));
}

// Functor value at a finite set A for a language with a closed model.
inline FiniteAlgebra functor_value_set(SetLanguage lang, int a_size, int truncation = 3) {
  switch (lang) {
    case SetLanguage::Constants: return rectangular_band(a_size);
    case SetLanguage::No10: return no10_model(truncation, a_size);
    default:
      throw CapabilityError("no closed finite model for this language; use the induced operation");
  }
}

// The induced operation on A-valued functions on tower carriers:
// beta(f,g)(x) = f(tail x) or g(tail x) by the head bit.  Levels n and n+1
// are identified through the connecting bijection, which must hold.
inline FiniteAlgebra induced_functor_algebra(SetTower& tower, int n, int a_size) {
  if (!tower.connecting_bijective(n))
    throw CapabilityError("language not stabilized at this level");
  const auto& lo = tower.carrier(n);
  const auto& hi = tower.carrier(n + 1);
  // identify hi with lo via connecting (drop last)
  std::map<SetPath, int> lo_index;
  for (std::size_t i = 0; i < lo.size(); ++i) lo_index[lo[i]] = static_cast<int>(i);
  int pts = static_cast<int>(lo.size());
  int fn_count = 1;
  for (int i = 0; i < pts; ++i) fn_count *= a_size;
  auto value = [&](int f, int point) {
    for (int i = pts - 1; i > point; --i) f /= a_size;
    return f % a_size;
  };
  std::vector<int> table(static_cast<std::size_t>(fn_count) * fn_count, 0);
  for (int f = 0; f < fn_count; ++f)
    for (int g = 0; g < fn_count; ++g) {
      // build beta(f,g) as a function on lo (= hi via connecting)
      int packed = 0;
      for (int i = 0; i < pts; ++i) {
        // the hi path over lo[i]
        const SetPath* hi_path = nullptr;
        for (const SetPath& q : hi)
          if (SetTower::connect_down(q, 1) == lo[static_cast<std::size_t>(i)]) {
            hi_path = &q;
            break;
          }
        SetPath tail = SetTower::shift(*hi_path);
        int j = lo_index.at(tail);
        int v = hi_path->bits[0] == 0 ? value(f, j) : value(g, j);
        packed = packed * a_size + v;
      }
      table[static_cast<std::size_t>(f) * fn_count + g] = packed;
    }
  return make_magma(fn_count, std::move(table));
}

// ---------------------------------------------------------------------------
// Bi -> Bi: continuous functions at finite resolution.
// ---------------------------------------------------------------------------

// A function {0,1}^n -> {0,1}^m, table indexed by input bits (first bit most
// significant), outputs packed likewise.  Canonical form has minimal n: the
// table is reduced while independent of the last input bit.
struct ResFunction {
  int n = 0;
  int m = 0;
  std::vector<int> table;  // size 2^n, values < 2^m

  friend bool operator==(const ResFunction& a, const ResFunction& b) {
    return a.n == b.n && a.m == b.m && a.table == b.table;
  }
  friend bool operator<(const ResFunction& a, const ResFunction& b) {
    if (a.n != b.n) return a.n < b.n;
    if (a.m != b.m) return a.m < b.m;
    return a.table < b.table;
  }
};

inline ResFunction res_constant(int value, int m) { return ResFunction{0, m, {value}}; }

inline ResFunction res_expand(const ResFunction& f, int n) {
  if (n < f.n) throw DomainError("res_expand cannot lower resolution");
  ResFunction g{n, f.m, {}};
  g.table.resize(std::size_t{1} << n);
  for (std::size_t u = 0; u < g.table.size(); ++u)
    g.table[u] = f.table[u >> (n - f.n)];
  return g;
}

inline ResFunction res_canonical(ResFunction f) {
  while (f.n > 0) {
    bool drop = true;
    for (std::size_t u = 0; u + 1 < f.table.size(); u += 2)
      if (f.table[u] != f.table[u + 1]) {
        drop = false;
        break;
      }
    if (!drop) break;
    std::vector<int> half(f.table.size() / 2);
    for (std::size_t u = 0; u < half.size(); ++u) half[u] = f.table[2 * u];
    f.table = std::move(half);
    --f.n;
  }
  return f;
}

// Graph concatenation with input compression, at matched resolution:
// h(0u) = f(u), h(1u) = g(u).  Raw (no canonicalization).
inline ResFunction bibi_beta_raw(const ResFunction& f, const ResFunction& g) {
  if (f.n != g.n || f.m != g.m) throw DomainError("bibi_beta_raw needs matching resolutions");
  ResFunction h{f.n + 1, f.m, {}};
  h.table = f.table;
  h.table.insert(h.table.end(), g.table.begin(), g.table.end());
  return h;
}

inline ResFunction bibi_beta(const ResFunction& f, const ResFunction& g) {
  int n = std::max(f.n, g.n);
  return res_canonical(bibi_beta_raw(res_expand(f, n), res_expand(g, n)));
}

// encode: a level-k tower word in Bi as a {0,1}^k-valued function.
inline ResFunction bibi_encode(const BiTreePtr& t, int level) {
  if (t->is_leaf()) {
    int v = 0;
    for (int b : t->leaf.tags) v = (v << 1) | b;
    return res_constant(v, level);
  }
  return bibi_beta(bibi_encode(t->left, level), bibi_encode(t->right, level));
}

inline ResFunction bibi_encode(const Word& w, int level) { return bibi_encode(w.as_bi(), level); }

// decode: the unique reduced tree realizing a canonical table.
inline BiTreePtr bibi_decode_tree(const ResFunction& f) {
  if (f.table.size() != (std::size_t{1} << f.n))
    throw DomainError("bibi_decode: malformed table");
  for (int v : f.table)
    if (v < 0 || v >= (1 << f.m)) throw DomainError("bibi_decode: output out of range");
  ResFunction c = res_canonical(f);
  if (c.n == 0) {
    std::vector<int> bits(static_cast<std::size_t>(c.m));
    for (int i = 0; i < c.m; ++i) bits[static_cast<std::size_t>(i)] = (c.table[0] >> (c.m - 1 - i)) & 1;
    return BiTree::make_leaf(GenId{"x", bits, true});
  }
  ResFunction left{c.n - 1, c.m, {}}, right{c.n - 1, c.m, {}};
  std::size_t half = c.table.size() / 2;
  left.table.assign(c.table.begin(), c.table.begin() + static_cast<long>(half));
  right.table.assign(c.table.begin() + static_cast<long>(half), c.table.end());
  return BiTree::make_node(bibi_decode_tree(left), bibi_decode_tree(right));
}

inline Word bibi_decode(const ResFunction& f) { return Word::bi(bibi_decode_tree(f)); }

// The co-operation: break a function up by the first output bit into maximal
// cylinder segments; each segment keeps the remaining output bits and is
// tagged by the bit it dropped.
struct CoopTree {
  // leaf iff left == nullptr
  int tag = -1;
  ResFunction fn;
  std::shared_ptr<const CoopTree> left, right;

  static std::shared_ptr<const CoopTree> make_leaf(int tag, ResFunction f) {
    auto t = std::make_shared<CoopTree>();
    t->tag = tag;
    t->fn = std::move(f);
    return t;
  }
  static std::shared_ptr<const CoopTree> make_node(std::shared_ptr<const CoopTree> l,
                                                   std::shared_ptr<const CoopTree> r) {
    auto t = std::make_shared<CoopTree>();
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
  }
  bool is_leaf() const { return left == nullptr; }
};

inline std::shared_ptr<const CoopTree> bibi_coop(const ResFunction& f) {
  if (f.m < 1) throw DomainError("bibi_coop needs at least one output bit");
  ResFunction c = res_canonical(f);
  bool mono = true;
  int first = (c.table[0] >> (c.m - 1)) & 1;
  for (int v : c.table)
    if (((v >> (c.m - 1)) & 1) != first) {
      mono = false;
      break;
    }
  if (mono) {
    ResFunction seg{c.n, c.m - 1, {}};
    int mask = (1 << (c.m - 1)) - 1;
    for (int v : c.table) seg.table.push_back(v & mask);
    return CoopTree::make_leaf(first, res_canonical(seg));
  }
  ResFunction left{c.n - 1, c.m, {}}, right{c.n - 1, c.m, {}};
  std::size_t half = c.table.size() / 2;
  left.table.assign(c.table.begin(), c.table.begin() + static_cast<long>(half));
  right.table.assign(c.table.begin() + static_cast<long>(half), c.table.end());
  return CoopTree::make_node(bibi_coop(left), bibi_coop(right));
}

// Evaluates a coop tree under beta-semantics on the untagged segment
// functions; reproduces the input with its first output bit dropped.
inline ResFunction coop_eval_untagged(const std::shared_ptr<const CoopTree>& t) {
  if (t->is_leaf()) return t->fn;
  return bibi_beta(coop_eval_untagged(t->left), coop_eval_untagged(t->right));
}

// --- JSON: {"n": n, "m": m, "table": {"bits": "bits", ...}} ----------------

inline nlohmann::json resfunction_to_json(const ResFunction& f) {
  nlohmann::json j;
  j["n"] = f.n;
  j["m"] = f.m;
  nlohmann::json table = nlohmann::json::object();
  for (std::size_t u = 0; u < f.table.size(); ++u) {
    std::string in, out;
    for (int i = f.n - 1; i >= 0; --i) in += static_cast<char>('0' + ((u >> i) & 1));
    for (int i = f.m - 1; i >= 0; --i) out += static_cast<char>('0' + ((f.table[u] >> i) & 1));
    table[in] = out;
  }
  j["table"] = table;
  return j;
}

inline ResFunction resfunction_from_json(const nlohmann::json& j) {
  ResFunction f;
  f.n = j.at("n").get<int>();
  f.m = j.at("m").get<int>();
  f.table.assign(std::size_t{1} << f.n, 0);
  for (const auto& [in, out] : j.at("table").items()) {
    if (static_cast<int>(in.size()) != f.n) throw ParseError("table key has wrong length");
    std::size_t u = 0;
    for (char c : in) u = (u << 1) | static_cast<std::size_t>(c - '0');
    int v = 0;
    std::string o = out.get<std::string>();
    if (static_cast<int>(o.size()) != f.m) throw ParseError("table value has wrong length");
    for (char c : o) v = (v << 1) | (c - '0');
    f.table[u] = v;
  }
  return f;
}

// ---------------------------------------------------------------------------
// Bi -> Se: the final cosemigroup in Bi.
// ---------------------------------------------------------------------------

struct BiSeFinal {
  // free binar on two idempotent generators; the co-operation sends each
  // generator to its own image under the matching coprojection.
  GenId g0{"x", {0}, true};
  GenId g1{"x", {1}, true};
  Word coop_image(int which) const {
    const GenId& g = which == 0 ? g0 : g1;
    return coprojection(which, 2, Word::bi_leaf(g));
  }
};

inline BiSeFinal bise_final() { return {}; }

// Functor value at a finite binar A: idempotent pairs with (a,b)(c,d)=(a,d).
inline FiniteAlgebra bise_functor_value(const FiniteAlgebra& a) {
  std::vector<int> idem = idempotents(a);
  int n = static_cast<int>(idem.size()) * static_cast<int>(idem.size());
  std::vector<int> table(static_cast<std::size_t>(n) * n, 0);
  std::vector<std::string> names;
  int k = static_cast<int>(idem.size());
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      names.push_back("(" + a.name_of(idem[static_cast<std::size_t>(i)]) + "," +
                      a.name_of(idem[static_cast<std::size_t>(j)]) + ")");
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int a0 = x / k, d1 = y % k;
      table[static_cast<std::size_t>(x) * n + y] = a0 * k + d1;
    }
  return make_magma(n, std::move(table), std::move(names));
}

// ---------------------------------------------------------------------------
// Zeroary + unary D: truncations of I_C^omega (one zeroary alpha0, one unary
// alpha1, no identities).  alpha0 projects to component 0; alpha1 is the
// left shift.
// ---------------------------------------------------------------------------

enum class UnaryBase { PointEndo, AbPoint };

struct UnaryFinal {
  UnaryBase base = UnaryBase::PointEndo;
  int truncation = 0;   // m: number of retained components
  int depth_bound = 0;  // PointEndo: I_C elements are 0..depth_bound

  // carrier enumeration for PointEndo
  std::vector<std::vector<int>> carrier() const {
    if (base != UnaryBase::PointEndo)
      throw CapabilityError("finite enumeration only for the point+endomap base");
    std::vector<std::vector<int>> out;
    std::vector<int> cur(static_cast<std::size_t>(truncation), 0);
    while (true) {
      out.push_back(cur);
      int i = truncation - 1;
      for (; i >= 0; --i) {
        if (++cur[static_cast<std::size_t>(i)] <= depth_bound) break;
        cur[static_cast<std::size_t>(i)] = 0;
      }
      if (i < 0) break;
    }
    return out;
  }

  template <typename T>
  static T zeroary(const std::vector<T>& tuple) {
    return tuple.at(0);
  }
  template <typename T>
  static std::vector<T> left_shift(const std::vector<T>& tuple) {
    return std::vector<T>(tuple.begin() + 1, tuple.end());
  }
};

inline UnaryFinal unary_final(UnaryBase base, int m, int depth_bound = 3) {
  UnaryFinal uf;
  uf.base = base;
  uf.truncation = m;
  uf.depth_bound = depth_bound;
  return uf;
}

// Homs Z^m -> (Z, point n) in abelian-groups-with-point: integer coefficient
// rows summing to n.  Enumerated with |c_i| <= coeff_bound.
inline std::vector<std::vector<int>> ab_point_hom_carrier(int m, int n, int coeff_bound) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(static_cast<std::size_t>(m), -coeff_bound);
  while (true) {
    int sum = 0;
    for (int c : cur) sum += c;
    if (sum == n) out.push_back(cur);
    int i = m - 1;
    for (; i >= 0; --i) {
      if (++cur[static_cast<std::size_t>(i)] <= coeff_bound) break;
      cur[static_cast<std::size_t>(i)] = -coeff_bound;
    }
    if (i < 0) break;
  }
  return out;
}

// distinguished element: n times the projection onto the 0-component
inline std::vector<int> ab_point_distinguished(int m, int n) {
  std::vector<int> c(static_cast<std::size_t>(m), 0);
  c.at(0) = n;
  return c;
}

// endomap: right shift on coefficient rows
inline std::vector<int> ab_point_endomap(const std::vector<int>& c) {
  std::vector<int> out(c.size(), 0);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) out[i + 1] = c[i];
  return out;
}

// Polyunary D (every operation unary): the final coalgebra is a point with
// identity co-operations; the functor value at a finite algebra A is the set
// of one-point subalgebras, every operation acting as the identity.
inline std::vector<int> polyunary_functor_value(const FiniteAlgebra& a,
                                                const std::vector<std::string>& unary_ops) {
  std::vector<int> out;
  for (int x = 0; x < a.size; ++x) {
    bool fixed = true;
    for (const auto& op : unary_ops)
      if (a.apply(op, {x}) != x) {
        fixed = false;
        break;
      }
    if (fixed) out.push_back(x);
  }
  return out;
}

}  // namespace coalg
