#pragma once

#include <algorithm>
#include <map>
#include <memory>
#include <numeric>
#include <string>
#include <variant>
#include <vector>

#include "coalg/sig.hpp"
#include "coalg/util.hpp"

namespace coalg {

// ---------------------------------------------------------------------------
// Generators.  Tags accumulate copy indices, outermost copower first, so the
// i-th coprojection prefixes i.  Equality is structural.
// ---------------------------------------------------------------------------

struct GenId {
  std::string name;
  std::vector<int> tags;
  bool idempotent = false;

  friend bool operator==(const GenId& a, const GenId& b) {
    return a.name == b.name && a.tags == b.tags && a.idempotent == b.idempotent;
  }
  friend bool operator!=(const GenId& a, const GenId& b) { return !(a == b); }
  friend bool operator<(const GenId& a, const GenId& b) {
    if (a.name != b.name) return a.name < b.name;
    if (a.tags != b.tags) return a.tags < b.tags;
    return a.idempotent < b.idempotent;
  }

  GenId with_prefix_tag(int t) const {
    GenId g = *this;
    g.tags.insert(g.tags.begin(), t);
    return g;
  }
  // Splits the outermost tag off: (copy index, remaining generator).
  std::pair<int, GenId> split_outer_tag() const {
    if (tags.empty()) throw DomainError("generator has no outer tag: " + name);
    GenId g = *this;
    int t = g.tags.front();
    g.tags.erase(g.tags.begin());
    return {t, g};
  }
  GenId drop_last_tag() const {
    if (tags.empty()) throw DomainError("generator has no tags to drop: " + name);
    GenId g = *this;
    g.tags.pop_back();
    return g;
  }
};

struct SignedGen {
  GenId gen;
  bool inverse = false;
  friend bool operator==(const SignedGen& a, const SignedGen& b) {
    return a.gen == b.gen && a.inverse == b.inverse;
  }
  friend bool operator<(const SignedGen& a, const SignedGen& b) {
    if (!(a.gen == b.gen)) return a.gen < b.gen;
    return a.inverse < b.inverse;
  }
};

// Binary trees for Bi words.  Immutable, shared.
struct BiTree;
using BiTreePtr = std::shared_ptr<const BiTree>;
struct BiTree {
  // leaf iff left == nullptr
  GenId leaf;
  BiTreePtr left, right;

  static BiTreePtr make_leaf(GenId g) {
    auto t = std::make_shared<BiTree>();
    t->leaf = std::move(g);
    return t;
  }
  static BiTreePtr make_node(BiTreePtr l, BiTreePtr r) {
    auto t = std::make_shared<BiTree>();
    t->left = std::move(l);
    t->right = std::move(r);
    return t;
  }
  bool is_leaf() const { return left == nullptr; }
};

inline bool bitree_equal(const BiTreePtr& a, const BiTreePtr& b) {
  if (a.get() == b.get()) return true;
  if (a->is_leaf() != b->is_leaf()) return false;
  if (a->is_leaf()) return a->leaf == b->leaf;
  return bitree_equal(a->left, b->left) && bitree_equal(a->right, b->right);
}

inline bool bitree_less(const BiTreePtr& a, const BiTreePtr& b) {
  if (a->is_leaf() != b->is_leaf()) return a->is_leaf();
  if (a->is_leaf()) return a->leaf < b->leaf;
  if (bitree_less(a->left, b->left)) return true;
  if (bitree_less(b->left, a->left)) return false;
  return bitree_less(a->right, b->right);
}

inline int bitree_size(const BiTreePtr& t) {
  return t->is_leaf() ? 1 : bitree_size(t->left) + bitree_size(t->right);
}

// ---------------------------------------------------------------------------
// Words: normal-form elements of the catalog free algebras.
// ---------------------------------------------------------------------------

class Word {
 public:
  using SetPayload = GenId;
  using SeqPayload = std::vector<GenId>;       // Se (nonempty), Monoid
  using GroupPayload = std::vector<SignedGen>; // reduced
  using AbPayload = std::map<GenId, long long>;// free abelian, no zero entries

  static Word set(GenId g) { return Word(Catalog::Set, SetPayload{std::move(g)}); }

  static Word se(SeqPayload letters) {
    SeqPayload nf = collapse_idempotent(std::move(letters));
    if (nf.empty()) throw DomainError("semigroups have no empty word");
    return Word(Catalog::Se, std::move(nf));
  }

  static Word monoid(SeqPayload letters) {
    return Word(Catalog::Monoid, collapse_idempotent(std::move(letters)));
  }

  static Word group(GroupPayload letters) {
    GroupPayload nf;
    for (auto& l : letters) {
      if (!nf.empty() && nf.back().gen == l.gen && nf.back().inverse != l.inverse)
        nf.pop_back();
      else
        nf.push_back(std::move(l));
    }
    return Word(Catalog::Group, std::move(nf));
  }

  static Word bi(BiTreePtr t) { return Word(Catalog::Bi, reduce_bi(std::move(t))); }
  static Word bi_leaf(GenId g) { return Word(Catalog::Bi, BiTree::make_leaf(std::move(g))); }

  static Word fg_ab(AbPayload coeffs) {
    for (auto it = coeffs.begin(); it != coeffs.end();) {
      if (it->second == 0)
        it = coeffs.erase(it);
      else
        ++it;
    }
    return Word(Catalog::FgAb, std::move(coeffs));
  }

  Catalog variety() const { return variety_; }
  const SetPayload& as_set() const { return std::get<SetPayload>(payload_); }
  const SeqPayload& as_seq() const { return std::get<SeqPayload>(payload_); }
  const GroupPayload& as_group() const { return std::get<GroupPayload>(payload_); }
  const BiTreePtr& as_bi() const { return std::get<BiTreePtr>(payload_); }
  const AbPayload& as_ab() const { return std::get<AbPayload>(payload_); }

  // Generator occurrences (Bi: leaves; FgAb: sum of |coefficients|).
  int length() const {
    switch (variety_) {
      case Catalog::Set: return 1;
      case Catalog::Se:
      case Catalog::Monoid: return static_cast<int>(as_seq().size());
      case Catalog::Group: return static_cast<int>(as_group().size());
      case Catalog::Bi: return bitree_size(as_bi());
      default: {
        long long n = 0;
        for (const auto& [g, c] : as_ab()) n += c < 0 ? -c : c;
        return static_cast<int>(n);
      }
    }
  }

  std::vector<GenId> generators() const {
    std::vector<GenId> out;
    switch (variety_) {
      case Catalog::Set: out.push_back(as_set()); break;
      case Catalog::Se:
      case Catalog::Monoid: out = as_seq(); break;
      case Catalog::Group:
        for (const auto& l : as_group()) out.push_back(l.gen);
        break;
      case Catalog::Bi: collect_leaves(as_bi(), out); break;
      default:
        for (const auto& [g, c] : as_ab()) out.push_back(g);
        break;
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  friend bool operator==(const Word& a, const Word& b) {
    if (a.variety_ != b.variety_) return false;
    if (a.variety_ == Catalog::Bi) return bitree_equal(a.as_bi(), b.as_bi());
    return a.payload_ == b.payload_;
  }
  friend bool operator!=(const Word& a, const Word& b) { return !(a == b); }
  friend bool operator<(const Word& a, const Word& b) {
    if (a.variety_ != b.variety_) return a.variety_ < b.variety_;
    if (a.variety_ == Catalog::Bi) return bitree_less(a.as_bi(), b.as_bi());
    return a.payload_ < b.payload_;
  }

  static void collect_leaves(const BiTreePtr& t, std::vector<GenId>& out) {
    if (t->is_leaf()) {
      out.push_back(t->leaf);
      return;
    }
    collect_leaves(t->left, out);
    collect_leaves(t->right, out);
  }

 private:
  using Payload = std::variant<SetPayload, SeqPayload, GroupPayload, BiTreePtr, AbPayload>;
  Word(Catalog v, Payload p) : variety_(v), payload_(std::move(p)) {}

  static SeqPayload collapse_idempotent(SeqPayload in) {
    SeqPayload out;
    for (auto& g : in) {
      if (!out.empty() && out.back() == g && g.idempotent) continue;
      out.push_back(std::move(g));
    }
    return out;
  }

  // Only beta(g,g) with g an idempotent generator leaf reduces.
  static BiTreePtr reduce_bi(BiTreePtr t) {
    if (t->is_leaf()) return t;
    BiTreePtr l = reduce_bi(t->left);
    BiTreePtr r = reduce_bi(t->right);
    if (l->is_leaf() && r->is_leaf() && l->leaf == r->leaf && l->leaf.idempotent) return l;
    if (l.get() == t->left.get() && r.get() == t->right.get()) return t;
    return BiTree::make_node(std::move(l), std::move(r));
  }

  Catalog variety_;
  Payload payload_;
};

// Variety product of two words (Se/Monoid concatenation, Group product,
// FgAb sum, Bi pairing).  Not defined for Set.
inline Word word_mul(const Word& a, const Word& b) {
  if (a.variety() != b.variety()) throw DomainError("word_mul across varieties");
  switch (a.variety()) {
    case Catalog::Se: {
      Word::SeqPayload s = a.as_seq();
      s.insert(s.end(), b.as_seq().begin(), b.as_seq().end());
      return Word::se(std::move(s));
    }
    case Catalog::Monoid: {
      Word::SeqPayload s = a.as_seq();
      s.insert(s.end(), b.as_seq().begin(), b.as_seq().end());
      return Word::monoid(std::move(s));
    }
    case Catalog::Group: {
      Word::GroupPayload s = a.as_group();
      s.insert(s.end(), b.as_group().begin(), b.as_group().end());
      return Word::group(std::move(s));
    }
    case Catalog::Bi:
      return Word::bi(BiTree::make_node(a.as_bi(), b.as_bi()));
    case Catalog::FgAb: {
      Word::AbPayload s = a.as_ab();
      for (const auto& [g, c] : b.as_ab()) s[g] += c;
      return Word::fg_ab(std::move(s));
    }
    default:
      throw CapabilityError("word_mul undefined for variety set");
  }
}

// ---------------------------------------------------------------------------
// Coprojections, cotuples, homomorphism application.
// ---------------------------------------------------------------------------

namespace detail {
template <typename GenFn>
inline BiTreePtr map_bi_leaves_to_words(const BiTreePtr& t, GenFn&& image_of) {
  if (!t->is_leaf())
    return BiTree::make_node(map_bi_leaves_to_words(t->left, image_of),
                             map_bi_leaves_to_words(t->right, image_of));
  Word w = image_of(t->leaf);
  return w.as_bi();
}
}  // namespace detail

// Applies image_of to every generator occurrence and glues the images with
// the variety structure.  image_of must return words of the same variety.
template <typename GenFn>
inline Word word_substitute(const Word& w, GenFn&& image_of) {
  switch (w.variety()) {
    case Catalog::Set:
      return image_of(w.as_set());
    case Catalog::Se: {
      Word::SeqPayload out;
      for (const auto& g : w.as_seq()) {
        Word img = image_of(g);
        out.insert(out.end(), img.as_seq().begin(), img.as_seq().end());
      }
      return Word::se(std::move(out));
    }
    case Catalog::Monoid: {
      Word::SeqPayload out;
      for (const auto& g : w.as_seq()) {
        Word img = image_of(g);
        out.insert(out.end(), img.as_seq().begin(), img.as_seq().end());
      }
      return Word::monoid(std::move(out));
    }
    case Catalog::Group: {
      Word::GroupPayload out;
      for (const auto& l : w.as_group()) {
        Word img = image_of(l.gen);
        const auto& seq = img.as_group();
        if (!l.inverse) {
          out.insert(out.end(), seq.begin(), seq.end());
        } else {
          for (auto it = seq.rbegin(); it != seq.rend(); ++it)
            out.push_back(SignedGen{it->gen, !it->inverse});
        }
      }
      return Word::group(std::move(out));
    }
    case Catalog::Bi:
      return Word::bi(detail::map_bi_leaves_to_words(w.as_bi(), image_of));
    case Catalog::FgAb: {
      Word::AbPayload out;
      for (const auto& [g, c] : w.as_ab()) {
        Word img = image_of(g);
        for (const auto& [h, d] : img.as_ab()) out[h] += c * d;
      }
      return Word::fg_ab(std::move(out));
    }
  }
  throw DomainError("unreachable");
}

// iota-th coprojection into a kappa-fold copower: every generator gains the
// outer tag iota.  Catalog varieties are copower-pure, so the normal form is
// preserved verbatim.
inline Word coprojection(int iota, int kappa, const Word& w) {
  if (iota < 0 || iota >= kappa) throw DomainError("coprojection index out of range");
  return word_substitute(w, [&](const GenId& g) -> Word {
    GenId h = g.with_prefix_tag(iota);
    switch (w.variety()) {
      case Catalog::Set: return Word::set(std::move(h));
      case Catalog::Se: return Word::se({std::move(h)});
      case Catalog::Monoid: return Word::monoid({std::move(h)});
      case Catalog::Group: return Word::group({SignedGen{std::move(h), false}});
      case Catalog::Bi: return Word::bi_leaf(std::move(h));
      default: return Word::fg_ab({{std::move(h), 1}});
    }
  });
}

using GenAssignment = std::map<GenId, Word>;

// Structure-preserving substitution by a total generator assignment.
inline Word apply_hom(const GenAssignment& assignment, const Word& w) {
  return word_substitute(w, [&](const GenId& g) -> const Word& {
    auto it = assignment.find(g);
    if (it == assignment.end())
      throw DomainError("apply_hom: assignment not defined on generator " + g.name);
    return it->second;
  });
}

// Cotuple of kappa maps out of a kappa-fold copower: generator tagged iota is
// sent through maps[iota].
inline Word cotuple(const std::vector<GenAssignment>& maps, const Word& w) {
  return word_substitute(w, [&](const GenId& g) -> const Word& {
    auto [t, rest] = g.split_outer_tag();
    if (t < 0 || static_cast<std::size_t>(t) >= maps.size())
      throw DomainError("cotuple: copy index " + std::to_string(t) + " out of range");
    auto it = maps[t].find(rest);
    if (it == maps[t].end())
      throw DomainError("cotuple: unknown generator " + rest.name + " in copy " +
                        std::to_string(t));
    return it->second;
  });
}

// ---------------------------------------------------------------------------
// Text form.  Generators print as name{t1,t2}; `~` marks group inverses;
// Bi words nest as (l.r); FgAb words are n*gen joined by `.` (zero word `0`);
// the empty monoid word is `1`.  Idempotence is contextual (the parser takes
// a flag), not part of the text.
// ---------------------------------------------------------------------------

inline std::string print_gen(const GenId& g) {
  std::string out = g.name;
  if (!g.tags.empty()) {
    out += '{';
    for (std::size_t i = 0; i < g.tags.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(g.tags[i]);
    }
    out += '}';
  }
  return out;
}

namespace detail {
inline std::string print_bi(const BiTreePtr& t) {
  if (t->is_leaf()) return print_gen(t->leaf);
  return "(" + print_bi(t->left) + "." + print_bi(t->right) + ")";
}
}  // namespace detail

inline std::string print_word(const Word& w) {
  switch (w.variety()) {
    case Catalog::Set:
      return print_gen(w.as_set());
    case Catalog::Se:
    case Catalog::Monoid: {
      if (w.as_seq().empty()) return "1";
      std::string out;
      for (std::size_t i = 0; i < w.as_seq().size(); ++i) {
        if (i) out += '.';
        out += print_gen(w.as_seq()[i]);
      }
      return out;
    }
    case Catalog::Group: {
      if (w.as_group().empty()) return "1";
      std::string out;
      for (std::size_t i = 0; i < w.as_group().size(); ++i) {
        if (i) out += '.';
        if (w.as_group()[i].inverse) out += '~';
        out += print_gen(w.as_group()[i].gen);
      }
      return out;
    }
    case Catalog::Bi:
      return detail::print_bi(w.as_bi());
    case Catalog::FgAb: {
      if (w.as_ab().empty()) return "0";
      std::string out;
      bool first = true;
      for (const auto& [g, c] : w.as_ab()) {
        if (!first) out += '.';
        first = false;
        out += std::to_string(c) + "*" + print_gen(g);
      }
      return out;
    }
  }
  throw DomainError("unreachable");
}

namespace detail {

inline bool is_name_char(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

// name{t1,t2} or the sugar form nameBITS (trailing digits become 0/1 tags
// when the braces are absent, e.g. x00 = x{0,0}).
inline GenId parse_gen_at(const std::string& s, std::size_t& i, bool idempotent) {
  std::size_t start = i;
  while (i < s.size() && is_name_char(s[i])) ++i;
  if (i == start) throw ParseError("expected generator at '" + s.substr(start) + "'");
  std::string token = s.substr(start, i - start);
  GenId g;
  g.idempotent = idempotent;
  if (i < s.size() && s[i] == '{') {
    ++i;
    g.name = token;
    while (i < s.size() && s[i] != '}') {
      std::size_t j = i;
      while (j < s.size() && (s[j] == '-' || (s[j] >= '0' && s[j] <= '9'))) ++j;
      if (j == i) throw ParseError("bad tag list in generator " + token);
      g.tags.push_back(std::stoi(s.substr(i, j - i)));
      i = j;
      if (i < s.size() && s[i] == ',') ++i;
    }
    if (i >= s.size()) throw ParseError("missing '}' in generator " + token);
    ++i;
    return g;
  }
  // sugar: trailing 0/1 digits are bit tags
  std::size_t split = token.size();
  while (split > 0 && (token[split - 1] == '0' || token[split - 1] == '1')) --split;
  if (split == 0) split = 1;  // all digits: keep first char as name
  g.name = token.substr(0, split);
  for (std::size_t k = split; k < token.size(); ++k) g.tags.push_back(token[k] - '0');
  return g;
}

inline BiTreePtr parse_bi_at(const std::string& s, std::size_t& i, bool idempotent) {
  if (i < s.size() && s[i] == '(') {
    ++i;
    BiTreePtr l = parse_bi_at(s, i, idempotent);
    if (i >= s.size() || s[i] != '.') throw ParseError("expected '.' in bi word");
    ++i;
    BiTreePtr r = parse_bi_at(s, i, idempotent);
    if (i >= s.size() || s[i] != ')') throw ParseError("expected ')' in bi word");
    ++i;
    return BiTree::make_node(std::move(l), std::move(r));
  }
  return BiTree::make_leaf(parse_gen_at(s, i, idempotent));
}

}  // namespace detail

inline Word parse_word(Catalog variety, const std::string& text, bool idempotent_gens = false) {
  std::size_t i = 0;
  switch (variety) {
    case Catalog::Set: {
      GenId g = detail::parse_gen_at(text, i, idempotent_gens);
      if (i != text.size()) throw ParseError("trailing input in set word: " + text);
      return Word::set(std::move(g));
    }
    case Catalog::Se:
    case Catalog::Monoid: {
      Word::SeqPayload seq;
      if (text == "1") {
        if (variety == Catalog::Se) throw DomainError("semigroups have no empty word");
        return Word::monoid({});
      }
      while (true) {
        seq.push_back(detail::parse_gen_at(text, i, idempotent_gens));
        if (i == text.size()) break;
        if (text[i] != '.') throw ParseError("expected '.' in word: " + text);
        ++i;
      }
      return variety == Catalog::Se ? Word::se(std::move(seq)) : Word::monoid(std::move(seq));
    }
    case Catalog::Group: {
      Word::GroupPayload seq;
      if (text == "1") return Word::group({});
      while (true) {
        bool inv = false;
        if (i < text.size() && text[i] == '~') {
          inv = true;
          ++i;
        }
        seq.push_back(SignedGen{detail::parse_gen_at(text, i, idempotent_gens), inv});
        if (i == text.size()) break;
        if (text[i] != '.') throw ParseError("expected '.' in group word: " + text);
        ++i;
      }
      return Word::group(std::move(seq));
    }
    case Catalog::Bi: {
      BiTreePtr t = detail::parse_bi_at(text, i, idempotent_gens);
      if (i != text.size()) throw ParseError("trailing input in bi word: " + text);
      return Word::bi(std::move(t));
    }
    case Catalog::FgAb: {
      Word::AbPayload coeffs;
      if (text == "0") return Word::fg_ab({});
      while (true) {
        std::size_t j = i;
        while (j < text.size() && (text[j] == '-' || (text[j] >= '0' && text[j] <= '9'))) ++j;
        if (j == i || j >= text.size() || text[j] != '*')
          throw ParseError("fg_ab terms are n*gen: " + text);
        long long c = std::stoll(text.substr(i, j - i));
        i = j + 1;
        coeffs[detail::parse_gen_at(text, i, idempotent_gens)] += c;
        if (i == text.size()) break;
        if (text[i] != '.') throw ParseError("expected '.' in fg_ab word: " + text);
        ++i;
      }
      return Word::fg_ab(std::move(coeffs));
    }
    default:
      throw CapabilityError("no word form for this variety");
  }
}

}  // namespace coalg
