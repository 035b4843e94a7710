#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "coalg/util.hpp"

namespace coalg {

// ---------------------------------------------------------------------------
// Signatures and terms.  Terms carry an explicit arity context: the leaves
// are projections p0..p(arity-1), not free variables.
// ---------------------------------------------------------------------------

// The canonical name of a single binary operation; towers, identities, and
// Cayley tables over one binary op all use it.
inline const std::string kBinaryOp = "beta";

struct Signature {
  std::vector<std::pair<std::string, int>> ops;  // (symbol, arity), arity >= 0

  std::optional<int> arity_of(const std::string& symbol) const {
    for (const auto& [s, a] : ops)
      if (s == symbol) return a;
    return std::nullopt;
  }

  void validate() const {
    std::set<std::string> seen;
    for (const auto& [s, a] : ops) {
      if (s.empty()) throw DomainError("signature: empty operation symbol");
      if (a < 0) throw DomainError("signature: negative arity for " + s);
      if (!seen.insert(s).second) throw DomainError("signature: duplicate symbol " + s);
    }
  }
};

inline Signature one_binary_op_signature(const std::string& symbol = "beta") {
  return Signature{{{symbol, 2}}};
}

class Term {
 public:
  static Term projection(int index, int context_arity) {
    if (index < 0 || index >= context_arity)
      throw DomainError("projection index out of context arity");
    Term t;
    t.context_arity_ = context_arity;
    t.index_ = index;
    return t;
  }

  static Term app(std::string symbol, std::vector<Term> children, int context_arity) {
    Term t;
    t.context_arity_ = context_arity;
    t.symbol_ = std::move(symbol);
    for (auto& c : children) {
      if (c.context_arity_ != context_arity)
        throw DomainError("term children disagree on context arity");
      t.children_.push_back(std::make_shared<Term>(std::move(c)));
    }
    return t;
  }

  bool is_projection() const { return symbol_.empty(); }
  int projection_index() const { return index_; }
  const std::string& symbol() const { return symbol_; }
  int context_arity() const { return context_arity_; }
  std::size_t child_count() const { return children_.size(); }
  const Term& child(std::size_t i) const { return *children_[i]; }

  void validate(const Signature& sig) const {
    if (is_projection()) return;
    auto a = sig.arity_of(symbol_);
    if (!a) throw DomainError("unknown operation symbol " + symbol_);
    if (static_cast<std::size_t>(*a) != children_.size())
      throw DomainError("arity mismatch for " + symbol_);
    for (const auto& c : children_) c->validate(sig);
  }

  bool operator==(const Term& o) const {
    if (context_arity_ != o.context_arity_ || symbol_ != o.symbol_) return false;
    if (is_projection()) return index_ == o.index_;
    if (children_.size() != o.children_.size()) return false;
    for (std::size_t i = 0; i < children_.size(); ++i)
      if (!(*children_[i] == *o.children_[i])) return false;
    return true;
  }

 private:
  int context_arity_ = 0;
  int index_ = -1;          // projections only
  std::string symbol_;      // empty <=> projection
  std::vector<std::shared_ptr<Term>> children_;
};

// Projections have depth 0; an application has depth 1 + sup over children
// (so a zeroary application has depth 1).
inline int term_depth(const Term& t) {
  if (t.is_projection()) return 0;
  int d = 0;
  for (std::size_t i = 0; i < t.child_count(); ++i) d = std::max(d, term_depth(t.child(i)));
  return d + 1;
}

// A (j,k)-instance of s exists iff k >= j + depth(s).
inline bool instance_exists(const Term& s, int j, int k) {
  if (j > k) throw DomainError("instance_exists requires j <= k");
  return k >= j + term_depth(s);
}

struct Identity {
  Term lhs;
  Term rhs;

  Identity(Term l, Term r) : lhs(std::move(l)), rhs(std::move(r)) {
    if (lhs.context_arity() != rhs.context_arity())
      throw DomainError("identity sides disagree on context arity");
  }
  int context_arity() const { return lhs.context_arity(); }
};

// ---------------------------------------------------------------------------
// Term text form: s-expressions, e.g. (beta (p 0) (beta (p 1) (p 2))).
// ---------------------------------------------------------------------------

namespace detail {
inline Term term_from_sexpr(const Sexpr& e, int context_arity) {
  if (e.is_atom()) throw ParseError("bare atom is not a term: " + e.atom);
  if (e.children.empty()) throw ParseError("empty list is not a term");
  const Sexpr& head = e.children[0];
  if (!head.is_atom()) throw ParseError("term head must be a symbol");
  if (head.atom == "p") {
    if (e.children.size() != 2 || !e.children[1].is_atom())
      throw ParseError("projection must be (p <index>)");
    int idx = 0;
    try {
      idx = std::stoi(e.children[1].atom);
    } catch (...) {
      throw ParseError("bad projection index: " + e.children[1].atom);
    }
    return Term::projection(idx, context_arity);
  }
  std::vector<Term> children;
  for (std::size_t i = 1; i < e.children.size(); ++i)
    children.push_back(term_from_sexpr(e.children[i], context_arity));
  return Term::app(head.atom, std::move(children), context_arity);
}

inline int max_projection_index(const Sexpr& e) {
  if (e.is_atom()) return -1;
  if (e.children.size() == 2 && e.children[0].is_atom() && e.children[0].atom == "p" &&
      e.children[1].is_atom())
    return std::stoi(e.children[1].atom);
  int m = -1;
  for (const auto& c : e.children) m = std::max(m, max_projection_index(c));
  return m;
}
}  // namespace detail

inline Term parse_term(const std::string& text, int context_arity) {
  return detail::term_from_sexpr(parse_sexpr(text), context_arity);
}

// Context arity inferred as 1 + max projection index.
inline Term parse_term(const std::string& text) {
  Sexpr e = parse_sexpr(text);
  int arity = detail::max_projection_index(e) + 1;
  return detail::term_from_sexpr(e, arity);
}

inline std::string print_term(const Term& t) {
  if (t.is_projection()) return "(p " + std::to_string(t.projection_index()) + ")";
  std::string out = "(" + t.symbol();
  for (std::size_t i = 0; i < t.child_count(); ++i) out += " " + print_term(t.child(i));
  out += ")";
  return out;
}

// Identity text form: (= lhs rhs :arity n)
inline Identity parse_identity(const std::string& text) {
  Sexpr e = parse_sexpr(text);
  if (e.is_atom() || e.children.size() != 5 || !e.children[0].is_atom() ||
      e.children[0].atom != "=" || !e.children[3].is_atom() || e.children[3].atom != ":arity" ||
      !e.children[4].is_atom())
    throw ParseError("identity must be (= lhs rhs :arity n)");
  int arity = std::stoi(e.children[4].atom);
  return Identity(detail::term_from_sexpr(e.children[1], arity),
                  detail::term_from_sexpr(e.children[2], arity));
}

inline std::string print_identity(const Identity& id) {
  return "(= " + print_term(id.lhs) + " " + print_term(id.rhs) +
         " :arity " + std::to_string(id.context_arity()) + ")";
}

// ---------------------------------------------------------------------------
// Variety descriptors.  Finitary only; the catalog covers every variety the
// library computes in.
// ---------------------------------------------------------------------------

enum class Catalog { Set, Bi, Se, Monoid, Group, FgAb, ZeroaryUnary };

inline std::string catalog_name(Catalog c) {
  switch (c) {
    case Catalog::Set: return "set";
    case Catalog::Bi: return "bi";
    case Catalog::Se: return "se";
    case Catalog::Monoid: return "monoid";
    case Catalog::Group: return "group";
    case Catalog::FgAb: return "fg_ab";
    case Catalog::ZeroaryUnary: return "zeroary_unary";
  }
  return "?";
}

inline Catalog catalog_from_name(const std::string& s) {
  if (s == "set") return Catalog::Set;
  if (s == "bi") return Catalog::Bi;
  if (s == "se") return Catalog::Se;
  if (s == "monoid") return Catalog::Monoid;
  if (s == "group") return Catalog::Group;
  if (s == "fg_ab") return Catalog::FgAb;
  if (s == "zeroary_unary") return Catalog::ZeroaryUnary;
  throw ParseError("unknown catalog variety: " + s);
}

struct VarietyDescriptor {
  Catalog catalog = Catalog::Set;
  // Signature for ZeroaryUnary; the other catalog entries have fixed
  // signatures and ignore this field.
  Signature signature;
  // Used only when the variety sits on the D side.
  std::vector<Identity> d_side_identities;

  Signature effective_signature() const {
    switch (catalog) {
      case Catalog::Set: return Signature{};
      case Catalog::Bi:
      case Catalog::Se: return one_binary_op_signature();
      case Catalog::Monoid: return Signature{{{"mul", 2}, {"e", 0}}};
      case Catalog::Group: return Signature{{{"mul", 2}, {"inv", 1}, {"e", 0}}};
      case Catalog::FgAb: return Signature{{{"add", 2}, {"neg", 1}, {"zero", 0}}};
      case Catalog::ZeroaryUnary: return signature;
    }
    return Signature{};
  }

  void validate() const {
    Signature sig = effective_signature();
    sig.validate();
    if (catalog == Catalog::ZeroaryUnary) {
      for (const auto& [s, a] : sig.ops)
        if (a > 1) throw DomainError("zeroary_unary descriptor has an operation of arity > 1");
    }
    for (const auto& id : d_side_identities) {
      id.lhs.validate(sig);
      id.rhs.validate(sig);
    }
  }
};

// Named identities over one binary operation, as used throughout.
inline Identity identity_assoc() {
  return parse_identity("(= (beta (beta (p 0) (p 1)) (p 2)) (beta (p 0) (beta (p 1) (p 2))) :arity 3)");
}
// beta(-,beta(-,-)) independent of its last argument; forbids "11".
inline Identity identity_no11() {
  return parse_identity("(= (beta (p 0) (beta (p 1) (p 2))) (beta (p 0) (beta (p 1) (p 3))) :arity 4)");
}
// beta(-,beta(-,-)) independent of its middle argument; forbids "10".
inline Identity identity_no10() {
  return parse_identity("(= (beta (p 0) (beta (p 1) (p 3))) (beta (p 0) (beta (p 2) (p 3))) :arity 4)");
}
inline Identity identity_comm() {
  return parse_identity("(= (beta (p 0) (p 1)) (beta (p 1) (p 0)) :arity 2)");
}
inline Identity identity_bb_eq_b() {
  return parse_identity("(= (beta (p 0) (beta (p 1) (p 2))) (beta (p 0) (p 2)) :arity 3)");
}

inline std::vector<Identity> identities_from_name(const std::string& name) {
  if (name.empty() || name == "none") return {};
  if (name == "assoc") return {identity_assoc()};
  if (name == "no11") return {identity_no11()};
  if (name == "no10") return {identity_no10()};
  if (name == "comm") return {identity_comm()};
  throw ParseError("unknown identity set name: " + name);
}

// ---------------------------------------------------------------------------
// Triviality chart for the initial representable functor, by counts of
// derived zeroary operations on each side.
// ---------------------------------------------------------------------------

enum class ZeroaryCount { None, One, Many };
enum class InitialFunctorClass { STAR, I_BANG, IF, IF_BANG, F, I };

inline std::string initial_functor_class_name(InitialFunctorClass c) {
  switch (c) {
    case InitialFunctorClass::STAR: return "*";
    case InitialFunctorClass::I_BANG: return "I!";
    case InitialFunctorClass::IF: return "IF";
    case InitialFunctorClass::IF_BANG: return "IF(!)";
    case InitialFunctorClass::F: return "F";
    case InitialFunctorClass::I: return "I";
  }
  return "?";
}

inline InitialFunctorClass classify_initial_functor(ZeroaryCount c_zeroary,
                                                    ZeroaryCount d_zeroary) {
  using Z = ZeroaryCount;
  using R = InitialFunctorClass;
  switch (c_zeroary) {
    case Z::None:
      return d_zeroary == Z::None ? R::STAR : R::I_BANG;
    case Z::One:
      return d_zeroary == Z::Many ? R::IF_BANG : R::IF;
    case Z::Many:
      switch (d_zeroary) {
        case Z::None: return R::F;
        case Z::One: return R::I;
        case Z::Many: return R::STAR;
      }
  }
  return R::STAR;
}

}  // namespace coalg
