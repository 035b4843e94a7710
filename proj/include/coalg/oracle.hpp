#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coalg/coalgebra.hpp"
#include "coalg/finite_algebra.hpp"
#include "coalg/sig.hpp"
#include "coalg/util.hpp"

namespace coalg {

// ---------------------------------------------------------------------------
// Brute-force ground truth over small Set-based coalgebras.
// ---------------------------------------------------------------------------

// Derived co-operation of a term: projections pick a copy, applications
// follow the primitive co-operation and dispatch on the copy index.
inline CopowerElem derived_coop(const FiniteCoalgebra& r, const Term& t, int x) {
  if (t.is_projection()) return {t.projection_index(), x};
  CopowerElem ce = r.coop(t.symbol(), x);
  return derived_coop(r, t.child(static_cast<std::size_t>(ce.copy)), ce.elem);
}

inline bool cosatisfies(const FiniteCoalgebra& r, const Identity& id) {
  for (int x = 0; x < r.size; ++x)
    if (!(derived_coop(r, id.lhs, x) == derived_coop(r, id.rhs, x))) return false;
  return true;
}

// A morphism of coalgebras over S is a carrier map commuting with every
// co-operation and with the anchors when present.
inline bool is_coalgebra_morphism(const FiniteCoalgebra& r1, const FiniteCoalgebra& r2,
                                  const std::vector<int>& f) {
  for (const auto& [alpha, arity] : r1.sig.ops)
    for (int x = 0; x < r1.size; ++x) {
      CopowerElem a = r1.coop(alpha, x);
      CopowerElem b = r2.coop(alpha, f[static_cast<std::size_t>(x)]);
      if (!(b == CopowerElem{a.copy, f[static_cast<std::size_t>(a.elem)]})) return false;
    }
  if (!r1.anchor.empty() && !r2.anchor.empty())
    for (int x = 0; x < r1.size; ++x)
      if (r1.anchor[static_cast<std::size_t>(x)] !=
          r2.anchor[static_cast<std::size_t>(f[static_cast<std::size_t>(x)])])
        return false;
  return true;
}

inline std::vector<std::vector<int>> morphisms(const FiniteCoalgebra& r1,
                                               const FiniteCoalgebra& r2) {
  std::vector<std::vector<int>> out;
  if (r1.size == 0) {
    out.push_back({});
    return out;
  }
  if (r2.size == 0) return out;
  std::vector<int> f(static_cast<std::size_t>(r1.size), 0);
  while (true) {
    if (is_coalgebra_morphism(r1, r2, f)) out.push_back(f);
    int i = r1.size - 1;
    for (; i >= 0; --i) {
      if (++f[static_cast<std::size_t>(i)] < r2.size) break;
      f[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

// Anchor validity for a coalgebra over a pseudocoalgebra S: the base map
// must make commuting squares with pseudocoprojections and
// pseudo-co-operations.
inline bool anchor_valid(const FiniteCoalgebra& r, const PseudoCoalgebra& s) {
  if (r.anchor.size() != static_cast<std::size_t>(r.size)) return false;
  for (const auto& [alpha, arity] : r.sig.ops)
    for (int x = 0; x < r.size; ++x) {
      CopowerElem ce = r.coop(alpha, x);
      int lhs = s.coproj(alpha, ce.copy, r.anchor[static_cast<std::size_t>(ce.elem)]);
      int rhs = s.coop(alpha, r.anchor[static_cast<std::size_t>(x)]);
      if (lhs != rhs) return false;
    }
  return true;
}

// Canonical labeling by exhaustive permutation search (carriers <= 4).
inline std::string canonical_form(const FiniteCoalgebra& r) {
  std::vector<int> perm(static_cast<std::size_t>(r.size));
  for (int i = 0; i < r.size; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::string best;
  do {
    std::vector<int> inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) inv[static_cast<std::size_t>(perm[i])] = static_cast<int>(i);
    std::string cur;
    for (const auto& [alpha, arity] : r.sig.ops) {
      cur += alpha + ":";
      for (int x = 0; x < r.size; ++x) {
        CopowerElem ce = r.coop(alpha, inv[static_cast<std::size_t>(x)]);
        cur += std::to_string(ce.copy) + "," + std::to_string(perm[static_cast<std::size_t>(ce.elem)]) + ";";
      }
    }
    if (!r.anchor.empty()) {
      cur += "@";
      for (int x = 0; x < r.size; ++x)
        cur += std::to_string(r.anchor[static_cast<std::size_t>(inv[static_cast<std::size_t>(x)])]) + ",";
    }
    if (best.empty() || cur < best) best = cur;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// All D-coalgebras over S with carrier of exactly the given size, up to
// isomorphism over S.  S may be omitted (no anchors).
inline std::vector<FiniteCoalgebra> enumerate_coalgebras(
    const Signature& d_sig, const std::vector<Identity>& d_ids, int size,
    const std::optional<PseudoCoalgebra>& s = std::nullopt) {
  if (size > 4) throw DomainError("enumeration capped at carrier size 4");
  std::vector<FiniteCoalgebra> out;
  std::set<std::string> seen;
  FiniteCoalgebra base;
  base.size = size;
  base.sig = d_sig;
  if (size == 0) {
    for (const auto& [alpha, arity] : d_sig.ops) base.coops[alpha] = {};
    if (s) base.anchor = {};
    out.push_back(base);
    return out;
  }
  for (const auto& [alpha, arity] : d_sig.ops) {
    if (arity == 0) return out;  // zeroary co-op forbids nonempty Set carriers
    base.coops[alpha].assign(static_cast<std::size_t>(size), CopowerElem{0, 0});
  }
  // iterate all co-operation tables
  std::vector<std::pair<std::string, int>> slots;  // (alpha, x)
  for (const auto& [alpha, arity] : d_sig.ops)
    for (int x = 0; x < size; ++x) slots.emplace_back(alpha, x);
  std::map<std::string, int> arity_of;
  for (const auto& [alpha, arity] : d_sig.ops) arity_of[alpha] = arity;
  std::vector<int> choice(slots.size(), 0);
  auto decode = [&](FiniteCoalgebra& r) {
    for (std::size_t i = 0; i < slots.size(); ++i) {
      const auto& [alpha, x] = slots[i];
      int c = choice[i];
      r.coops[alpha][static_cast<std::size_t>(x)] =
          CopowerElem{c / size, c % size};
    }
  };
  while (true) {
    FiniteCoalgebra r = base;
    decode(r);
    bool ok = true;
    for (const auto& id : d_ids)
      if (!cosatisfies(r, id)) {
        ok = false;
        break;
      }
    if (ok) {
      if (!s) {
        std::string cf = canonical_form(r);
        if (seen.insert(cf).second) out.push_back(r);
      } else {
        // enumerate anchors as well
        std::vector<int> anchor(static_cast<std::size_t>(size), 0);
        while (true) {
          r.anchor = anchor;
          if (anchor_valid(r, *s)) {
            std::string cf = canonical_form(r);
            if (seen.insert(cf).second) out.push_back(r);
          }
          int i = size - 1;
          for (; i >= 0; --i) {
            if (++anchor[static_cast<std::size_t>(i)] < s->base_size) break;
            anchor[static_cast<std::size_t>(i)] = 0;
          }
          if (i < 0) break;
        }
      }
    }
    std::size_t i = 0;
    for (; i < slots.size(); ++i) {
      int limit = arity_of[slots[i].first] * size;
      if (++choice[i] < limit) break;
      choice[i] = 0;
    }
    if (i == slots.size()) break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Standard images: quotients by equivalence relations whose classes inherit
// the coalgebra-over-S structure.
// ---------------------------------------------------------------------------

// partition[i] = class id of element i, class ids 0..k-1 in first-seen order
using Partition = std::vector<int>;

inline std::vector<Partition> all_partitions(int n) {
  std::vector<Partition> out;
  Partition p;
  std::function<void(int, int)> rec = [&](int i, int classes) {
    if (i == n) {
      out.push_back(p);
      return;
    }
    for (int c = 0; c <= classes; ++c) {
      p.push_back(c);
      rec(i + 1, std::max(classes, c + 1));
      p.pop_back();
    }
  };
  rec(0, 0);
  return out;
}

// The quotient coalgebra, if the structure descends.
inline std::optional<FiniteCoalgebra> quotient_coalgebra(const FiniteCoalgebra& r,
                                                         const Partition& p) {
  int classes = p.empty() ? 0 : *std::max_element(p.begin(), p.end()) + 1;
  FiniteCoalgebra q;
  q.size = classes;
  q.sig = r.sig;
  for (const auto& [alpha, arity] : r.sig.ops) {
    std::vector<CopowerElem> co(static_cast<std::size_t>(classes), CopowerElem{-1, -1});
    for (int x = 0; x < r.size; ++x) {
      CopowerElem ce = r.coop(alpha, x);
      CopowerElem image{ce.copy, p[static_cast<std::size_t>(ce.elem)]};
      CopowerElem& slot = co[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
      if (slot.copy == -1)
        slot = image;
      else if (!(slot == image))
        return std::nullopt;
    }
    q.coops[alpha] = std::move(co);
  }
  if (!r.anchor.empty()) {
    std::vector<int> anchor(static_cast<std::size_t>(classes), -1);
    for (int x = 0; x < r.size; ++x) {
      int& slot = anchor[static_cast<std::size_t>(p[static_cast<std::size_t>(x)])];
      if (slot == -1)
        slot = r.anchor[static_cast<std::size_t>(x)];
      else if (slot != r.anchor[static_cast<std::size_t>(x)])
        return std::nullopt;
    }
    q.anchor = std::move(anchor);
  }
  // identities: quotients of cosatisfying coalgebras cosatisfy (images of
  // coalgebra morphisms are coalgebras); nothing to check here
  return q;
}

struct StandardImage {
  Partition partition;
  FiniteCoalgebra quotient;
};

inline std::vector<StandardImage> standard_images(const FiniteCoalgebra& r) {
  std::vector<StandardImage> out;
  for (const Partition& p : all_partitions(r.size)) {
    auto q = quotient_coalgebra(r, p);
    if (q) out.push_back(StandardImage{p, std::move(*q)});
  }
  return out;
}

// coarser-or-equal: every class of a is contained in a class of b
inline bool partition_refines(const Partition& a, const Partition& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (a[i] == a[j] && b[i] != b[j]) return false;
  return true;
}

inline Partition partition_join(const Partition& a, const Partition& b) {
  // transitive closure of the union relation
  int n = static_cast<int>(a.size());
  std::vector<int> cls(a.size());
  for (int i = 0; i < n; ++i) cls[static_cast<std::size_t>(i)] = i;
  std::function<int(int)> find = [&](int x) {
    while (cls[static_cast<std::size_t>(x)] != x) x = cls[static_cast<std::size_t>(x)] = cls[static_cast<std::size_t>(cls[static_cast<std::size_t>(x)])];
    return x;
  };
  auto unite = [&](int x, int y) { cls[static_cast<std::size_t>(find(x))] = find(y); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (a[static_cast<std::size_t>(i)] == a[static_cast<std::size_t>(j)]) unite(i, j);
      if (b[static_cast<std::size_t>(i)] == b[static_cast<std::size_t>(j)]) unite(i, j);
    }
  Partition out(a.size());
  std::map<int, int> relabel;
  for (int i = 0; i < n; ++i) {
    int root = find(i);
    auto it = relabel.find(root);
    if (it == relabel.end()) it = relabel.emplace(root, static_cast<int>(relabel.size())).first;
    out[static_cast<std::size_t>(i)] = it->second;
  }
  return out;
}

inline bool strongly_quasifinal(const FiniteCoalgebra& r) {
  for (const auto& img : standard_images(r))
    if (img.quotient.size != r.size) return false;
  return true;
}

// Searches the enumerated coalgebras over S (sizes 0..max_size) for one
// admitting exactly one morphism from every other.
inline std::optional<FiniteCoalgebra> final_over_s(const Signature& d_sig,
                                                   const std::vector<Identity>& d_ids,
                                                   const PseudoCoalgebra& s, int max_size) {
  std::vector<FiniteCoalgebra> all;
  for (int sz = 0; sz <= max_size; ++sz)
    for (auto& r : enumerate_coalgebras(d_sig, d_ids, sz, s)) all.push_back(std::move(r));
  for (const FiniteCoalgebra& cand : all) {
    bool good = true;
    for (const FiniteCoalgebra& r : all)
      if (morphisms(r, cand).size() != 1) {
        good = false;
        break;
      }
    if (good) return cand;
  }
  return std::nullopt;
}

// Maps into the level-n truncation of the Cantor coalgebra: g with
// g(x) = b_x . drop_last(g(y_x)) where beta(x) = (b_x, y_x).  Returned as
// n-bit strings per element.
inline std::vector<std::vector<std::string>> truncation_morphisms(const FiniteCoalgebra& r,
                                                                  int n) {
  std::vector<std::vector<std::string>> out;
  std::vector<int> g(static_cast<std::size_t>(r.size), 0);
  if (r.size == 0) {
    out.push_back({});
    return out;
  }
  auto bits_of = [&](int v) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int i = 0; i < n; ++i)
      if ((v >> (n - 1 - i)) & 1) s[static_cast<std::size_t>(i)] = '1';
    return s;
  };
  while (true) {
    bool ok = true;
    for (int x = 0; x < r.size && ok; ++x) {
      CopowerElem ce = r.coop(kTowerOp, x);
      int expected = (ce.copy << (n - 1)) | (g[static_cast<std::size_t>(ce.elem)] >> 1);
      ok = g[static_cast<std::size_t>(x)] == expected;
    }
    if (ok) {
      std::vector<std::string> m;
      for (int x = 0; x < r.size; ++x) m.push_back(bits_of(g[static_cast<std::size_t>(x)]));
      out.push_back(std::move(m));
    }
    int i = r.size - 1;
    for (; i >= 0; --i) {
      if (++g[static_cast<std::size_t>(i)] < (1 << n)) break;
      g[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

// Hom-functor value of a Set-based coalgebra at a finite set of size
// a_size: all maps carrier -> A with the induced operations.
inline FiniteAlgebra hom_functor_value(const FiniteCoalgebra& r, int a_size) {
  int fn_count = 1;
  for (int i = 0; i < r.size; ++i) fn_count *= a_size;
  auto value = [&](int f, int x) {
    for (int i = r.size - 1; i > x; --i) f /= a_size;
    return f % a_size;
  };
  FiniteAlgebra alg;
  alg.size = fn_count;
  for (const auto& [alpha, arity] : r.sig.ops) {
    if (arity == 0) {
      if (r.size > 0) throw DomainError("zeroary co-op on nonempty carrier");
      alg.ops[alpha] = {0};
      continue;
    }
    std::size_t rows = 1;
    for (int i = 0; i < arity; ++i) rows *= static_cast<std::size_t>(fn_count);
    std::vector<int> table(rows, 0);
    std::vector<int> args(static_cast<std::size_t>(arity), 0);
    std::size_t idx = 0;
    while (true) {
      int packed = 0;
      for (int x = 0; x < r.size; ++x) {
        CopowerElem ce = r.coop(alpha, x);
        packed = packed * a_size + value(args[static_cast<std::size_t>(ce.copy)], ce.elem);
      }
      table[idx] = packed;
      ++idx;
      int i = arity - 1;
      for (; i >= 0; --i) {
        if (++args[static_cast<std::size_t>(i)] < fn_count) break;
        args[static_cast<std::size_t>(i)] = 0;
      }
      if (i < 0) break;
    }
    alg.ops[alpha] = std::move(table);
  }
  return alg;
}

}  // namespace coalg
