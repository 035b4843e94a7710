#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "coalg/coalgebra.hpp"
#include "coalg/sig.hpp"
#include "coalg/util.hpp"
#include "coalg/word.hpp"

#include "json.hpp"

namespace coalg {

// ---------------------------------------------------------------------------
// Universal D-precoalgebra towers over a pseudocoalgebra, at finite levels.
// Implemented family: D has one binary operation "beta" plus arbitrary
// finitary identities; C is Set (over any finite pseudocoalgebra) or Bi/Se
// (over the trivial pseudocoalgebra).  Level-k carriers sit inside the free
// C-algebra on idempotent generators x_a, a in {0,1}^k; the connecting map
// drops the last bit, the pseudo-co-operation splits the first bit.
// ---------------------------------------------------------------------------

struct CacheConfig {
  bool enabled = false;
  std::string dir = "cache";
};

namespace towerdetail {

inline void require_beta_term(const Term& s) {
  if (s.is_projection()) return;
  if (s.symbol() != kTowerOp || s.child_count() != 2)
    throw CapabilityError("tower instances support one binary operation 'beta'");
  for (std::size_t i = 0; i < s.child_count(); ++i) require_beta_term(s.child(i));
}

}  // namespace towerdetail

// === Word towers: C in {Bi, Se} over the trivial pseudocoalgebra ===========

class WordTower {
 public:
  WordTower(Catalog c, std::vector<Identity> d_identities, int length_bound,
            CacheConfig cache = {})
      : c_(c), ids_(std::move(d_identities)), bound_(length_bound), cache_(cache) {
    if (c_ != Catalog::Bi && c_ != Catalog::Se)
      throw CapabilityError("word towers are implemented for C in {bi, se}");
    for (const auto& id : ids_) {
      towerdetail::require_beta_term(id.lhs);
      towerdetail::require_beta_term(id.rhs);
    }
  }

  Catalog base_variety() const { return c_; }
  int length_bound() const { return bound_; }
  const std::vector<Identity>& identities() const { return ids_; }

  GenId gen(std::vector<int> bits) const { return GenId{"x", std::move(bits), true}; }

  Word single(const GenId& g) const {
    return c_ == Catalog::Se ? Word::se({g}) : Word::bi_leaf(g);
  }

  Word trivial_word() const { return single(gen({})); }

  int level_of(const Word& w) const {
    auto gens = w.generators();
    if (gens.empty()) throw DomainError("level_of: word has no generators");
    std::size_t k = gens[0].tags.size();
    for (const auto& g : gens)
      if (g.tags.size() != k || g.name != "x" || !g.idempotent)
        throw DomainError("not a tower word");
    return static_cast<int>(k);
  }

  Word connect_down(const Word& w, int from, int to) const {
    if (to > from) throw DomainError("connect_down: to > from");
    Word out = w;
    for (int step = 0; step < from - to; ++step)
      out = word_substitute(out, [&](const GenId& g) { return single(g.drop_last_tag()); });
    return out;
  }

  // The (i,k)-instance of s evaluated at w, a level-k word; lands in the
  // gamma-fold copower of level i (gamma = context arity of s).  Evaluation
  // splits at level k and recurses, which by instance uniqueness agrees with
  // every other choice of intermediate level.
  Word instance_eval(const Term& s, int i, int k, const Word& w) const {
    if (!instance_exists(s, i, k))
      throw DomainError("no (" + std::to_string(i) + "," + std::to_string(k) +
                        ")-instance: term needs depth " + std::to_string(term_depth(s)));
    if (s.is_projection())
      return coprojection(s.projection_index(), s.context_arity(), connect_down(w, k, i));
    return word_substitute(w, [&](const GenId& g) {
      auto [t, rest] = g.split_outer_tag();
      return instance_eval(s.child(static_cast<std::size_t>(t)), i, k - 1, single(rest));
    });
  }

  // Same instance by way of an explicit intermediate level j (i <= j < k).
  Word instance_eval_via(const Term& s, int i, int j, int k, const Word& w) const {
    if (s.is_projection()) return instance_eval(s, i, k, w);
    if (j < i || j >= k) throw DomainError("instance_eval_via: need i <= j < k");
    Word wj1 = connect_down(w, k, j + 1);
    return word_substitute(wj1, [&](const GenId& g) {
      auto [t, rest] = g.split_outer_tag();
      return instance_eval(s.child(static_cast<std::size_t>(t)), i, j, single(rest));
    });
  }

  bool cosatisfied_at(const Word& w, const Identity& id, int k) const {
    for (int j = 0; j < k; ++j) {
      if (!instance_exists(id.lhs, j, k) || !instance_exists(id.rhs, j, k)) continue;
      if (!(instance_eval(id.lhs, j, k, w) == instance_eval(id.rhs, j, k, w))) return false;
    }
    return true;
  }

  // First (identity index, j) whose instance pair separates w, if any.
  std::optional<std::pair<std::size_t, int>> failing_instance(const Word& w, int k) const {
    for (std::size_t n = 0; n < ids_.size(); ++n)
      for (int j = 0; j < k; ++j) {
        if (!instance_exists(ids_[n].lhs, j, k) || !instance_exists(ids_[n].rhs, j, k)) continue;
        if (!(instance_eval(ids_[n].lhs, j, k, w) == instance_eval(ids_[n].rhs, j, k, w)))
          return std::make_pair(n, j);
      }
    return std::nullopt;
  }

  // Maximal monochromatic pieces of the first-bit splitting, stripped of
  // that bit: the components of the pseudo-co-operation image.
  std::vector<std::pair<int, Word>> split_segments(const Word& w) const {
    std::vector<std::pair<int, Word>> out;
    if (c_ == Catalog::Se) {
      const auto& seq = w.as_seq();
      std::vector<GenId> run;
      int run_tag = -1;
      auto flush = [&] {
        if (!run.empty()) out.emplace_back(run_tag, Word::se(run));
        run.clear();
      };
      for (const auto& g : seq) {
        auto [t, rest] = g.split_outer_tag();
        if (t != run_tag) {
          flush();
          run_tag = t;
        }
        run.push_back(rest);
      }
      flush();
      return out;
    }
    collect_bi_segments(w.as_bi(), out);
    return out;
  }

  // Membership predicate for a word at level k (valid at any length):
  //   (a) the connecting image lies in level k-1,
  //   (b) all existing instance pairs of the identities agree at w,
  //   (c) the pseudo-co-operation image lies in the subalgebra generated by
  //       the coprojection images of level k-1.
  bool member(const Word& w, int k) {
    if (k == 0) return true;  // the unique level-0 element
    auto key = std::make_pair(k, w);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    bool ok = member(connect_down(w, k, k - 1), k - 1);
    if (ok)
      for (const auto& [tag, piece] : split_segments(w))
        if (!member(piece, k - 1)) {
          ok = false;
          break;
        }
    if (ok)
      for (const auto& id : ids_)
        if (!cosatisfied_at(w, id, k)) {
          ok = false;
          break;
        }
    memo_.emplace(std::move(key), ok);
    return ok;
  }

  // Enumerated carrier at level k, words of length <= bound, sorted.
  const std::vector<Word>& carrier(int k) {
    auto it = carriers_.find(k);
    if (it != carriers_.end()) return it->second;
    if (cache_.enabled) {
      auto loaded = load_cache(k);
      if (loaded) {
        carriers_[k] = std::move(*loaded);
        return carriers_[k];
      }
    }
    std::vector<Word> out;
    if (k == 0) {
      out.push_back(trivial_word());
    } else if (c_ == Catalog::Se) {
      out = enumerate_se(k);
    } else {
      out = enumerate_bi(k);
    }
    std::sort(out.begin(), out.end());
    if (cache_.enabled) store_cache(k, out);
    carriers_[k] = std::move(out);
    return carriers_[k];
  }

  std::string cache_path(int k) const {
    return cache_.dir + "/" + catalog_name(c_) + "__" + hex64(identity_hash()) + "__k" +
           std::to_string(k) + "__L" + std::to_string(bound_) + ".words";
  }

  std::uint64_t identity_hash() const {
    std::string desc = catalog_name(c_) + ";" + kTowerOp + "/2";
    for (const auto& id : ids_) desc += ";" + print_identity(id);
    return fnv1a(desc);
  }

 private:
  void collect_bi_segments(const BiTreePtr& t, std::vector<std::pair<int, Word>>& out) const {
    int tag = monochrome_tag(t);
    if (tag >= 0) {
      out.emplace_back(tag, Word::bi(strip_first_tag(t)));
      return;
    }
    collect_bi_segments(t->left, out);
    collect_bi_segments(t->right, out);
  }

  static int monochrome_tag(const BiTreePtr& t) {
    if (t->is_leaf()) return t->leaf.tags.empty() ? -1 : t->leaf.tags.front();
    int l = monochrome_tag(t->left);
    if (l < 0) return -1;
    int r = monochrome_tag(t->right);
    return l == r ? l : -1;
  }

  static BiTreePtr strip_first_tag(const BiTreePtr& t) {
    if (t->is_leaf()) return BiTree::make_leaf(t->leaf.split_outer_tag().second);
    return BiTree::make_node(strip_first_tag(t->left), strip_first_tag(t->right));
  }

  // Level-k Se carrier: alternating concatenations of tagged level-(k-1)
  // elements realize condition (c) exactly; (a) and (b) filter.
  std::vector<Word> enumerate_se(int k) {
    const std::vector<Word>& below = carrier(k - 1);
    std::vector<std::vector<Word>> by_len(static_cast<std::size_t>(bound_) + 1);
    for (const Word& u : below) {
      int len = u.length();
      if (len <= bound_) by_len[static_cast<std::size_t>(len)].push_back(u);
    }
    std::vector<Word> out;
    // partial: current word (already tagged), last tag, remaining budget
    struct Frame {
      Word w;
      int last_tag;
      int budget;
    };
    std::vector<Frame> stack;
    for (int t = 0; t < 2; ++t)
      for (int len = 1; len <= bound_; ++len)
        for (const Word& u : by_len[static_cast<std::size_t>(len)])
          stack.push_back(Frame{coprojection(t, 2, u), t, bound_ - len});
    while (!stack.empty()) {
      Frame f = std::move(stack.back());
      stack.pop_back();
      if (accept(f.w, k)) out.push_back(f.w);
      int t = 1 - f.last_tag;
      for (int len = 1; len <= f.budget; ++len)
        for (const Word& u : by_len[static_cast<std::size_t>(len)])
          stack.push_back(Frame{word_mul(f.w, coprojection(t, 2, u)), t, f.budget - len});
    }
    return out;
  }

  // Bi carriers are enumerated naively (all reduced trees, then the
  // membership predicate); viable only for small bounds.
  std::vector<Word> enumerate_bi(int k) {
    std::vector<GenId> gens;
    int n = 1 << k;
    for (int a = 0; a < n; ++a) {
      std::vector<int> bits(static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i) bits[static_cast<std::size_t>(i)] = (a >> (k - 1 - i)) & 1;
      gens.push_back(gen(bits));
    }
    std::vector<std::vector<Word>> by_size(static_cast<std::size_t>(bound_) + 1);
    if (bound_ >= 1)
      for (const auto& g : gens) by_size[1].push_back(Word::bi_leaf(g));
    for (int sz = 2; sz <= bound_; ++sz)
      for (int ls = 1; ls < sz; ++ls)
        for (const Word& l : by_size[static_cast<std::size_t>(ls)])
          for (const Word& r : by_size[static_cast<std::size_t>(sz - ls)]) {
            Word w = Word::bi(BiTree::make_node(l.as_bi(), r.as_bi()));
            if (w.length() == sz) by_size[static_cast<std::size_t>(sz)].push_back(w);
          }
    std::vector<Word> out;
    for (int sz = 1; sz <= bound_; ++sz)
      for (const Word& w : by_size[static_cast<std::size_t>(sz)]) {
        // reduced trees only appear once; a reduction would change length
        if (member(w, k)) out.push_back(w);
      }
    return out;
  }

  bool accept(const Word& w, int k) {
    // segments are carrier elements by construction; check (a) and (b)
    if (!member(connect_down(w, k, k - 1), k - 1)) return false;
    for (const auto& id : ids_)
      if (!cosatisfied_at(w, id, k)) return false;
    memo_.emplace(std::make_pair(k, w), true);
    return true;
  }

  std::optional<std::vector<Word>> load_cache(int k) const {
    std::ifstream in(cache_path(k));
    if (!in) return std::nullopt;
    std::vector<Word> out;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      out.push_back(parse_word(c_, line, /*idempotent=*/true));
    }
    return out;
  }

  void store_cache(int k, const std::vector<Word>& words) const {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(cache_.dir, ec);
    std::string path = cache_path(k);
    std::string tmp = path + ".tmp";
    {
      std::ofstream out(tmp);
      for (const Word& w : words) out << print_word(w) << "\n";
    }
    fs::rename(tmp, path, ec);
    nlohmann::json meta;
    meta["schema"] = 1;
    meta["c"] = catalog_name(c_);
    meta["k"] = k;
    meta["L"] = bound_;
    meta["count"] = words.size();
    std::vector<std::string> ids;
    for (const auto& id : ids_) ids.push_back(print_identity(id));
    meta["identities"] = ids;
    std::string mtmp = path + ".meta.tmp";
    {
      std::ofstream out(mtmp);
      out << meta.dump(2) << "\n";
    }
    fs::rename(mtmp, path + ".meta", ec);
  }

  Catalog c_;
  std::vector<Identity> ids_;
  int bound_;
  CacheConfig cache_;
  std::map<int, std::vector<Word>> carriers_;
  std::map<std::pair<int, Word>, bool> memo_;
};

// === Set towers: C = Set over any finite pseudocoalgebra ====================

// A level-k element: vertices v_0..v_k in S_base and bits b_0..b_{k-1} with
// coproj(beta, b_i, v_{i+1}) = coop(beta, v_i).  The connecting map drops the
// last (bit, vertex) pair; the pseudo-co-operation is (b_0, shifted path).
struct SetPath {
  std::vector<int> verts;
  std::vector<int> bits;

  int level() const { return static_cast<int>(bits.size()); }
  friend bool operator==(const SetPath& a, const SetPath& b) {
    return a.verts == b.verts && a.bits == b.bits;
  }
  friend bool operator<(const SetPath& a, const SetPath& b) {
    if (a.bits != b.bits) return a.bits < b.bits;
    return a.verts < b.verts;
  }
  std::string bit_string() const {
    std::string s;
    for (int b : bits) s += static_cast<char>('0' + b);
    return s;
  }
};

struct ExtractReport {
  bool stabilized = false;
  int stable_from = -1;                  // first level with bijective connecting above
  std::vector<std::size_t> level_sizes;  // |carrier(k)| for k = 0..max_k
  std::optional<FiniteCoalgebra> final_truncation;
  std::vector<SetPath> final_carrier;    // matching order of the coalgebra carrier
  std::string note;
};

class SetTower {
 public:
  SetTower(PseudoCoalgebra s, std::vector<Identity> d_identities)
      : s_(std::move(s)), ids_(std::move(d_identities)) {
    s_.validate();
    bool has_beta = false;
    for (const auto& [alpha, arity] : s_.sig.ops) {
      if (alpha == kTowerOp && arity == 2)
        has_beta = true;
      else
        throw CapabilityError("set towers are implemented for D = one binary 'beta'");
    }
    if (!has_beta) throw CapabilityError("set towers need the binary operation 'beta'");
    for (const auto& id : ids_) {
      towerdetail::require_beta_term(id.lhs);
      towerdetail::require_beta_term(id.rhs);
    }
  }

  static SetTower over_trivial(std::vector<Identity> d_identities) {
    return SetTower(PseudoCoalgebra::trivial_for(one_binary_op_signature()),
                    std::move(d_identities));
  }

  const PseudoCoalgebra& pseudo() const { return s_; }

  static SetPath connect_down(const SetPath& p, int steps) {
    SetPath q = p;
    for (int i = 0; i < steps; ++i) {
      q.verts.pop_back();
      q.bits.pop_back();
    }
    return q;
  }

  static SetPath shift(const SetPath& p) {
    SetPath q;
    q.verts.assign(p.verts.begin() + 1, p.verts.end());
    q.bits.assign(p.bits.begin() + 1, p.bits.end());
    return q;
  }

  // (i,k)-instance of s at p: a copy index below gamma and a level-i path.
  std::pair<int, SetPath> instance_eval(const Term& s, int i, int k, const SetPath& p) const {
    if (!instance_exists(s, i, k))
      throw DomainError("no (" + std::to_string(i) + "," + std::to_string(k) + ")-instance");
    if (s.is_projection())
      return {s.projection_index(), connect_down(p, k - i)};
    int t = p.bits.at(0);
    return instance_eval(s.child(static_cast<std::size_t>(t)), i, k - 1, shift(p));
  }

  bool cosatisfied_at(const SetPath& p, const Identity& id, int k) const {
    for (int j = 0; j < k; ++j) {
      if (!instance_exists(id.lhs, j, k) || !instance_exists(id.rhs, j, k)) continue;
      if (!(instance_eval(id.lhs, j, k, p) == instance_eval(id.rhs, j, k, p))) return false;
    }
    return true;
  }

  const std::vector<SetPath>& carrier(int k) {
    auto it = carriers_.find(k);
    if (it != carriers_.end()) return it->second;
    std::vector<SetPath> out;
    if (k == 0) {
      for (int v = 0; v < s_.base_size; ++v) out.push_back(SetPath{{v}, {}});
    } else {
      const auto& below = carrier(k - 1);
      std::set<SetPath> below_set(below.begin(), below.end());
      for (const SetPath& p : below) {
        int target = s_.coop(kTowerOp, p.verts.back());
        for (int b = 0; b < 2; ++b)
          for (int v = 0; v < s_.base_size; ++v) {
            if (s_.coproj(kTowerOp, b, v) != target) continue;
            SetPath q = p;
            q.bits.push_back(b);
            q.verts.push_back(v);
            if (k >= 2 && !below_set.count(shift(q))) continue;
            bool ok = true;
            for (const auto& id : ids_)
              if (!cosatisfied_at(q, id, k)) {
                ok = false;
                break;
              }
            if (ok) out.push_back(q);
          }
      }
      std::sort(out.begin(), out.end());
    }
    carriers_[k] = std::move(out);
    return carriers_[k];
  }

  bool member(const SetPath& p, int k) {
    const auto& c = carrier(k);
    return std::binary_search(c.begin(), c.end(), p);
  }

  // Stabilization scan and largest-subcoalgebra extraction.  When the
  // connecting maps become bijections, the top level is taken as the
  // truncation of P_omega, and the descending iteration keeps the elements
  // whose co-operation image stays inside the kept region.
  ExtractReport extract_final(int max_k) {
    ExtractReport rep;
    for (int k = 0; k <= max_k; ++k) rep.level_sizes.push_back(carrier(k).size());
    int stable_from = -1;
    for (int k0 = 0; k0 < max_k; ++k0) {
      bool all = true;
      for (int k = k0; k < max_k; ++k)
        if (!connecting_bijective(k)) {
          all = false;
          break;
        }
      if (all) {
        stable_from = k0;
        break;
      }
    }
    if (stable_from < 0) {
      rep.note = "not stabilized within bound";
      return rep;
    }
    rep.stabilized = true;
    rep.stable_from = stable_from;
    int top = max_k;
    // unique extension map: level top-1 path -> its carrier(top) preimage
    std::map<SetPath, SetPath> ext;
    for (const SetPath& q : carrier(top)) ext[connect_down(q, 1)] = q;
    std::set<SetPath> kept(carrier(top).begin(), carrier(top).end());
    while (true) {
      std::set<SetPath> next;
      for (const SetPath& p : kept) {
        auto it = ext.find(shift(p));
        if (it != ext.end() && kept.count(it->second)) next.insert(p);
      }
      if (next.size() == kept.size()) break;
      kept = std::move(next);
    }
    FiniteCoalgebra r;
    r.sig = one_binary_op_signature();
    r.size = static_cast<int>(kept.size());
    std::map<SetPath, int> index;
    for (const SetPath& p : kept) {
      index.emplace(p, static_cast<int>(index.size()));
      rep.final_carrier.push_back(p);
      r.names.push_back(p.bit_string());
    }
    std::vector<CopowerElem> co;
    std::vector<int> anchor;
    for (const SetPath& p : rep.final_carrier) {
      const SetPath& succ = ext.at(shift(p));
      co.push_back(CopowerElem{p.bits.at(0), index.at(succ)});
      anchor.push_back(p.verts.at(0));
    }
    r.coops[kTowerOp] = std::move(co);
    r.anchor = std::move(anchor);
    rep.final_truncation = std::move(r);
    return rep;
  }

  bool connecting_bijective(int k) {
    const auto& lo = carrier(k);
    const auto& hi = carrier(k + 1);
    if (hi.size() != lo.size()) return false;
    std::set<SetPath> images;
    for (const SetPath& q : hi) images.insert(connect_down(q, 1));
    return images.size() == lo.size();
  }

 private:
  PseudoCoalgebra s_;
  std::vector<Identity> ids_;
  std::map<int, std::vector<SetPath>> carriers_;
};

}  // namespace coalg
