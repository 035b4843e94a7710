#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coalg/sig.hpp"
#include "coalg/util.hpp"

#include "json.hpp"

namespace coalg {

// The single binary operation of the implemented D-family.
inline const std::string& kTowerOp = kBinaryOp;

// A value in an n-fold disjoint union of a finite carrier: (copy, element).
struct CopowerElem {
  int copy = 0;
  int elem = 0;
  friend bool operator==(const CopowerElem& a, const CopowerElem& b) {
    return a.copy == b.copy && a.elem == b.elem;
  }
  friend bool operator<(const CopowerElem& a, const CopowerElem& b) {
    if (a.copy != b.copy) return a.copy < b.copy;
    return a.elem < b.elem;
  }
};

// ---------------------------------------------------------------------------
// Set-based D-coalgebras as explicit finite maps.  For each operation alpha
// of arity r, coop maps every carrier element into the r-fold disjoint union
// of the carrier.  Operations of arity 0 would map into the empty set, so a
// nonempty carrier admits none.
// ---------------------------------------------------------------------------

struct FiniteCoalgebra {
  int size = 0;
  std::vector<std::string> names;                      // optional
  Signature sig;                                       // D's signature
  std::map<std::string, std::vector<CopowerElem>> coops;
  std::vector<int> anchor;                             // optional map into S_base

  std::string name_of(int e) const {
    if (e >= 0 && static_cast<std::size_t>(e) < names.size()) return names[e];
    return std::to_string(e);
  }

  CopowerElem coop(const std::string& alpha, int x) const {
    return coops.at(alpha).at(static_cast<std::size_t>(x));
  }

  void validate() const {
    sig.validate();
    for (const auto& [alpha, arity] : sig.ops) {
      auto it = coops.find(alpha);
      if (it == coops.end()) throw DomainError("missing co-operation " + alpha);
      if (it->second.size() != static_cast<std::size_t>(size))
        throw DomainError("co-operation " + alpha + " not total");
      if (arity == 0 && size > 0)
        throw DomainError("zeroary co-operation on a nonempty Set carrier");
      for (const auto& ce : it->second)
        if (ce.copy < 0 || ce.copy >= arity || ce.elem < 0 || ce.elem >= size)
          throw DomainError("co-operation " + alpha + " out of range");
    }
  }
};

// The 2-element coalgebra x -> (1,y), y -> (1,x) over one binary operation.
inline FiniteCoalgebra example_xy_coalgebra() {
  FiniteCoalgebra r;
  r.size = 2;
  r.names = {"x", "y"};
  r.sig = one_binary_op_signature();
  r.coops["beta"] = {{1, 1}, {1, 0}};
  return r;
}

// ---------------------------------------------------------------------------
// Finite Set-based D-pseudocoalgebras: a base set, a pseudocopower set per
// operation, with pseudocoprojections and pseudo-co-operations from the base.
// The trivial pseudocoalgebra is the one-point one.
// ---------------------------------------------------------------------------

struct PseudoCoalgebra {
  Signature sig;
  int base_size = 1;
  std::vector<std::string> base_names;
  struct PerOp {
    int pseudo_size = 1;                      // |S_alpha|
    std::vector<std::vector<int>> coproj;     // [iota][base elem] -> S_alpha
    std::vector<int> coop;                    // [base elem] -> S_alpha
  };
  std::map<std::string, PerOp> per_op;
  bool trivial = false;

  static PseudoCoalgebra trivial_for(const Signature& sig) {
    PseudoCoalgebra s;
    s.sig = sig;
    s.trivial = true;
    s.base_size = 1;
    for (const auto& [alpha, arity] : sig.ops) {
      PerOp p;
      p.pseudo_size = 1;
      p.coproj.assign(static_cast<std::size_t>(arity), std::vector<int>{0});
      p.coop = {0};
      s.per_op[alpha] = p;
    }
    return s;
  }

  int coproj(const std::string& alpha, int iota, int x) const {
    return per_op.at(alpha).coproj.at(static_cast<std::size_t>(iota)).at(
        static_cast<std::size_t>(x));
  }
  int coop(const std::string& alpha, int x) const {
    return per_op.at(alpha).coop.at(static_cast<std::size_t>(x));
  }

  void validate() const {
    sig.validate();
    if (base_size < 0) throw DomainError("pseudocoalgebra base must be a finite set");
    for (const auto& [alpha, arity] : sig.ops) {
      auto it = per_op.find(alpha);
      if (it == per_op.end()) throw DomainError("missing pseudocopower data for " + alpha);
      const PerOp& p = it->second;
      if (static_cast<int>(p.coproj.size()) != arity)
        throw DomainError("pseudocoprojection count mismatch for " + alpha);
      for (const auto& c : p.coproj)
        if (static_cast<int>(c.size()) != base_size)
          throw DomainError("pseudocoprojection not total for " + alpha);
      if (static_cast<int>(p.coop.size()) != base_size)
        throw DomainError("pseudo-co-operation not total for " + alpha);
    }
  }
};

// psi: a coalgebra seen as a pseudocoalgebra, with genuine copowers for the
// pseudocopower objects.  S_alpha is the disjoint union, indexed
// copy * size + elem.
inline PseudoCoalgebra psi(const FiniteCoalgebra& r) {
  PseudoCoalgebra s;
  s.sig = r.sig;
  s.base_size = r.size;
  s.base_names = r.names;
  s.trivial = (r.size == 1);
  for (const auto& [alpha, arity] : r.sig.ops) {
    PseudoCoalgebra::PerOp p;
    p.pseudo_size = arity * r.size;
    p.coproj.assign(static_cast<std::size_t>(arity), std::vector<int>(r.size, 0));
    for (int i = 0; i < arity; ++i)
      for (int x = 0; x < r.size; ++x)
        p.coproj[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] = i * r.size + x;
    p.coop.assign(static_cast<std::size_t>(r.size), 0);
    for (int x = 0; x < r.size; ++x) {
      CopowerElem ce = r.coop(alpha, x);
      p.coop[static_cast<std::size_t>(x)] = ce.copy * r.size + ce.elem;
    }
    s.per_op[alpha] = p;
  }
  return s;
}

// Componentwise product of pseudocoalgebras (the pseudocoalgebra of a
// product diagram): base and pseudocopower objects are cartesian products,
// pseudocoprojections and pseudo-co-operations act in each coordinate.
inline PseudoCoalgebra product_pseudo(const PseudoCoalgebra& s1, const PseudoCoalgebra& s2) {
  if (!(s1.sig.ops == s2.sig.ops)) throw DomainError("product_pseudo: signature mismatch");
  PseudoCoalgebra s;
  s.sig = s1.sig;
  s.base_size = s1.base_size * s2.base_size;
  s.trivial = s1.trivial && s2.trivial;
  auto pair_base = [&](int x1, int x2) { return x1 * s2.base_size + x2; };
  for (const auto& [alpha, arity] : s.sig.ops) {
    const auto& p1 = s1.per_op.at(alpha);
    const auto& p2 = s2.per_op.at(alpha);
    PseudoCoalgebra::PerOp p;
    p.pseudo_size = p1.pseudo_size * p2.pseudo_size;
    auto pair_ps = [&](int y1, int y2) { return y1 * p2.pseudo_size + y2; };
    p.coproj.assign(static_cast<std::size_t>(arity), std::vector<int>(s.base_size, 0));
    p.coop.assign(static_cast<std::size_t>(s.base_size), 0);
    for (int x1 = 0; x1 < s1.base_size; ++x1)
      for (int x2 = 0; x2 < s2.base_size; ++x2) {
        int x = pair_base(x1, x2);
        for (int i = 0; i < arity; ++i)
          p.coproj[static_cast<std::size_t>(i)][static_cast<std::size_t>(x)] =
              pair_ps(p1.coproj[static_cast<std::size_t>(i)][static_cast<std::size_t>(x1)],
                      p2.coproj[static_cast<std::size_t>(i)][static_cast<std::size_t>(x2)]);
        p.coop[static_cast<std::size_t>(x)] =
            pair_ps(p1.coop[static_cast<std::size_t>(x1)], p2.coop[static_cast<std::size_t>(x2)]);
      }
    s.per_op[alpha] = p;
  }
  return s;
}

// --- JSON ------------------------------------------------------------------
// {"carrier": [names], "coops": {"alpha": [[copy, elem], ...]}, "anchor": [..]}

inline FiniteCoalgebra coalgebra_from_json(const nlohmann::json& j) {
  FiniteCoalgebra r;
  r.names = j.at("carrier").get<std::vector<std::string>>();
  r.size = static_cast<int>(r.names.size());
  for (const auto& [alpha, arr] : j.at("coops").items()) {
    std::vector<CopowerElem> co;
    int max_copy = 0;
    for (const auto& cell : arr) {
      CopowerElem ce{cell.at(0).get<int>(), cell.at(1).get<int>()};
      max_copy = std::max(max_copy, ce.copy);
      co.push_back(ce);
    }
    r.coops[alpha] = std::move(co);
    r.sig.ops.emplace_back(alpha, max_copy + 1);
  }
  if (j.contains("anchor")) r.anchor = j["anchor"].get<std::vector<int>>();
  // arities are lower bounds from the data; callers may override r.sig
  return r;
}

inline nlohmann::json coalgebra_to_json(const FiniteCoalgebra& r) {
  nlohmann::json j;
  std::vector<std::string> names;
  for (int i = 0; i < r.size; ++i) names.push_back(r.name_of(i));
  j["carrier"] = names;
  nlohmann::json co = nlohmann::json::object();
  for (const auto& [alpha, arr] : r.coops) {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& ce : arr) list.push_back({ce.copy, ce.elem});
    co[alpha] = list;
  }
  j["coops"] = co;
  if (!r.anchor.empty()) j["anchor"] = r.anchor;
  return j;
}

}  // namespace coalg
