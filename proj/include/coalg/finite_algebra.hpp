#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coalg/sig.hpp"
#include "coalg/util.hpp"

#include "json.hpp"

namespace coalg {

// ---------------------------------------------------------------------------
// Finite algebras as explicit operation tables.  Elements are 0..size-1 with
// optional display names.  A table entry of -1 means the operation is
// undefined there (partial tables arise when truncating infinite algebras).
// ---------------------------------------------------------------------------

struct FiniteAlgebra {
  int size = 0;
  std::vector<std::string> names;  // optional; empty -> "0","1",...
  // op symbol -> table in row-major order over all argument tuples
  // (lexicographic, last argument fastest).  A zeroary op has one entry.
  std::map<std::string, std::vector<int>> ops;

  std::string name_of(int e) const {
    if (e >= 0 && static_cast<std::size_t>(e) < names.size()) return names[e];
    return std::to_string(e);
  }

  int arity_of(const std::string& op) const {
    auto it = ops.find(op);
    if (it == ops.end()) throw DomainError("unknown operation " + op);
    std::size_t n = it->second.size();
    if (n == 1) return 0;
    int a = 0;
    std::size_t m = 1;
    while (m < n) {
      m *= static_cast<std::size_t>(size);
      ++a;
    }
    if (m != n) throw DomainError("malformed table for " + op);
    return a;
  }

  // args listed first-to-last
  int apply(const std::string& op, const std::vector<int>& args) const {
    auto it = ops.find(op);
    if (it == ops.end()) throw DomainError("unknown operation " + op);
    std::size_t idx = 0;
    for (int a : args) {
      if (a < 0 || a >= size) throw DomainError("element out of range");
      idx = idx * static_cast<std::size_t>(size) + static_cast<std::size_t>(a);
    }
    return it->second.at(idx);
  }

  int mul(int a, int b) const { return apply(kBinaryOp, {a, b}); }
};

inline FiniteAlgebra make_magma(int n, std::vector<int> table,
                                std::vector<std::string> names = {}) {
  if (table.size() != static_cast<std::size_t>(n) * static_cast<std::size_t>(n))
    throw DomainError("magma table must have n*n entries");
  FiniteAlgebra a;
  a.size = n;
  a.names = std::move(names);
  a.ops[kBinaryOp] = std::move(table);
  return a;
}

inline bool is_associative(const FiniteAlgebra& a) {
  for (int x = 0; x < a.size; ++x)
    for (int y = 0; y < a.size; ++y)
      for (int z = 0; z < a.size; ++z) {
        int xy = a.mul(x, y), yz = a.mul(y, z);
        if (xy < 0 || yz < 0) return false;
        if (a.mul(xy, z) != a.mul(x, yz)) return false;
      }
  return true;
}

inline std::vector<int> idempotents(const FiniteAlgebra& a) {
  std::vector<int> out;
  for (int x = 0; x < a.size; ++x)
    if (a.mul(x, x) == x) out.push_back(x);
  return out;
}

// Evaluates a term (over a signature realized by the tables) at an argument
// tuple indexed by projection indices.  Returns -1 when any step is
// undefined.
inline int eval_term(const FiniteAlgebra& a, const Term& t, const std::vector<int>& args) {
  if (t.is_projection()) return args.at(static_cast<std::size_t>(t.projection_index()));
  std::vector<int> vals;
  vals.reserve(t.child_count());
  for (std::size_t i = 0; i < t.child_count(); ++i) {
    int v = eval_term(a, t.child(i), args);
    if (v < 0) return -1;
    vals.push_back(v);
  }
  return a.apply(t.symbol(), vals);
}

// Exhaustive identity check over all argument tuples.
inline bool satisfies_identity(const FiniteAlgebra& a, const Identity& id) {
  int arity = id.context_arity();
  std::vector<int> args(static_cast<std::size_t>(arity), 0);
  while (true) {
    if (eval_term(a, id.lhs, args) != eval_term(a, id.rhs, args)) return false;
    int i = arity - 1;
    for (; i >= 0; --i) {
      if (++args[static_cast<std::size_t>(i)] < a.size) break;
      args[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) return true;
  }
}

// All associative Cayley tables on 0..n-1 (raw tables, not deduplicated).
inline std::vector<FiniteAlgebra> all_semigroups(int n) {
  std::vector<FiniteAlgebra> out;
  if (n == 0) return out;
  std::size_t cells = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  std::vector<int> table(cells, 0);
  while (true) {
    FiniteAlgebra a = make_magma(n, table);
    if (is_associative(a)) out.push_back(a);
    std::size_t i = 0;
    for (; i < cells; ++i) {
      if (++table[i] < n) break;
      table[i] = 0;
    }
    if (i == cells) break;
  }
  return out;
}

// All semigroup homomorphisms A -> B as element maps.
inline std::vector<std::vector<int>> semigroup_homs(const FiniteAlgebra& a,
                                                    const FiniteAlgebra& b) {
  std::vector<std::vector<int>> out;
  std::vector<int> f(static_cast<std::size_t>(a.size), 0);
  if (a.size == 0) return {f};
  while (true) {
    bool ok = true;
    for (int x = 0; x < a.size && ok; ++x)
      for (int y = 0; y < a.size && ok; ++y)
        ok = f[static_cast<std::size_t>(a.mul(x, y))] ==
             b.mul(f[static_cast<std::size_t>(x)], f[static_cast<std::size_t>(y)]);
    if (ok) out.push_back(f);
    int i = a.size - 1;
    for (; i >= 0; --i) {
      if (++f[static_cast<std::size_t>(i)] < b.size) break;
      f[static_cast<std::size_t>(i)] = 0;
    }
    if (i < 0) break;
  }
  return out;
}

// --- JSON: {"elements": [names], "table": row-major} ----------------------

inline FiniteAlgebra semigroup_from_json(const nlohmann::json& j) {
  if (!j.contains("elements") || !j.contains("table"))
    throw ParseError("semigroup JSON needs 'elements' and 'table'");
  std::vector<std::string> names = j["elements"].get<std::vector<std::string>>();
  std::vector<int> raw;
  for (const auto& cell : j["table"]) {
    if (cell.is_number_integer()) {
      raw.push_back(cell.get<int>());
    } else {
      std::string s = cell.get<std::string>();
      auto it = std::find(names.begin(), names.end(), s);
      if (it == names.end()) throw ParseError("table entry not an element: " + s);
      raw.push_back(static_cast<int>(it - names.begin()));
    }
  }
  FiniteAlgebra a = make_magma(static_cast<int>(names.size()), std::move(raw), names);
  return a;
}

inline nlohmann::json semigroup_to_json(const FiniteAlgebra& a) {
  nlohmann::json j;
  std::vector<std::string> names;
  for (int i = 0; i < a.size; ++i) names.push_back(a.name_of(i));
  j["elements"] = names;
  j["table"] = a.ops.at(kBinaryOp);
  return j;
}

}  // namespace coalg
