// Command-line front door: towers, membership, instances, functors, oracle
// enumerations, and the verify-all reproduction suite.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "coalg/final_examples.hpp"
#include "coalg/oracle.hpp"
#include "coalg/sese.hpp"
#include "coalg/tower.hpp"
#include "coalg/verify.hpp"

using namespace coalg;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitMemberNo = 2;
constexpr int kExitCapability = 3;
constexpr int kExitParse = 4;

struct GlobalOpts {
  std::string format = "text";
  std::string cache_dir;
  std::uint64_t seed = 20260809;
};

CacheConfig cache_config(const GlobalOpts& g) {
  CacheConfig cache;
  if (!g.cache_dir.empty()) {
    cache.enabled = true;
    cache.dir = g.cache_dir;
  } else if (const char* env = std::getenv("COALG_CACHE")) {
    cache.enabled = true;
    cache.dir = env;
  }
  return cache;
}

std::vector<Identity> identities_for(const std::string& d, const std::string& ident,
                                     const std::vector<std::string>& exprs) {
  std::vector<Identity> ids;
  if (d == "se")
    ids.push_back(identity_assoc());
  else if (d != "bi")
    throw CapabilityError("supported D varieties: bi, se");
  if (!ident.empty())
    for (Identity& id : identities_from_name(ident)) ids.push_back(std::move(id));
  for (const std::string& e : exprs) ids.push_back(parse_identity(e));
  return ids;
}

int run_tower(const GlobalOpts& g, const std::string& c, const std::string& d,
              const std::string& ident, const std::vector<std::string>& exprs, int k, int bound) {
  std::vector<Identity> ids = identities_for(d, ident, exprs);
  nlohmann::json out;
  out["schema"] = 1;
  out["c"] = c;
  out["levels"] = nlohmann::json::array();
  if (c == "set") {
    SetTower tower = SetTower::over_trivial(ids);
    for (int lvl = 0; lvl <= k; ++lvl) {
      nlohmann::json j;
      j["k"] = lvl;
      j["count"] = tower.carrier(lvl).size();
      if (g.format == "text") {
        std::cout << "k=" << lvl << " count=" << tower.carrier(lvl).size();
        if (lvl == k) {
          std::cout << " carrier:";
          for (const SetPath& p : tower.carrier(lvl)) std::cout << " " << p.bit_string();
        }
        std::cout << "\n";
      } else {
        std::vector<std::string> bits;
        for (const SetPath& p : tower.carrier(lvl)) bits.push_back(p.bit_string());
        j["carrier"] = bits;
      }
      out["levels"].push_back(j);
    }
  } else {
    WordTower tower(catalog_from_name(c), ids, bound, cache_config(g));
    for (int lvl = 0; lvl <= k; ++lvl) {
      nlohmann::json j;
      j["k"] = lvl;
      j["L"] = bound;
      j["count"] = tower.carrier(lvl).size();
      if (g.format == "text") {
        std::cout << "k=" << lvl << " L=" << bound << " count=" << tower.carrier(lvl).size()
                  << "\n";
      } else {
        std::vector<std::string> words;
        for (const Word& w : tower.carrier(lvl)) words.push_back(print_word(w));
        j["carrier"] = words;
      }
      out["levels"].push_back(j);
    }
  }
  if (g.format == "json") std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_member(const GlobalOpts& g, const std::string& c, const std::string& d,
               const std::string& ident, const std::vector<std::string>& exprs,
               const std::string& word_text, int k) {
  std::vector<Identity> ids = identities_for(d, ident, exprs);
  WordTower tower(catalog_from_name(c), ids, 16, cache_config(g));
  Word w = parse_word(catalog_from_name(c), word_text, /*idempotent=*/true);
  int level = k >= 0 ? k : tower.level_of(w);
  bool yes = tower.member(w, level);
  nlohmann::json out;
  out["schema"] = 1;
  out["word"] = print_word(w);
  out["k"] = level;
  out["member"] = yes;
  if (!yes) {
    auto failing = tower.failing_instance(w, level);
    if (failing) {
      out["failing_identity"] = print_identity(ids[failing->first]);
      out["failing_j"] = failing->second;
    }
  }
  if (g.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else if (yes) {
    std::cout << "yes: " << print_word(w) << " lies in level " << level << "\n";
  } else {
    std::cout << "no: " << print_word(w) << " is not in level " << level;
    if (out.contains("failing_identity"))
      std::cout << " (instance pair at j=" << out["failing_j"] << " of "
                << out["failing_identity"].get<std::string>() << " separates it)";
    std::cout << "\n";
  }
  return yes ? kExitOk : kExitMemberNo;
}

int run_instance(const GlobalOpts& g, const std::string& c, const std::string& term_text, int j,
                 int k, const std::string& word_text) {
  WordTower tower(catalog_from_name(c), {}, 16, cache_config(g));
  Term term = parse_term(term_text);
  Word w = parse_word(catalog_from_name(c), word_text, /*idempotent=*/true);
  Word image = tower.instance_eval(term, j, k, w);
  if (g.format == "json") {
    nlohmann::json out;
    out["schema"] = 1;
    out["term"] = print_term(term);
    out["image"] = print_word(image);
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << print_word(image) << "\n";
  }
  return kExitOk;
}

FiniteAlgebra load_semigroup(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  nlohmann::json j = nlohmann::json::parse(in);
  return semigroup_from_json(j);
}

void print_algebra(const GlobalOpts& g, const FiniteAlgebra& alg) {
  if (g.format == "json") {
    nlohmann::json out = semigroup_to_json(alg);
    out["schema"] = 1;
    std::cout << out.dump(2) << "\n";
    return;
  }
  std::cout << "carrier size " << alg.size << "\n";
  for (int x = 0; x < alg.size; ++x) {
    for (int y = 0; y < alg.size; ++y) std::cout << (y ? " " : "") << alg.mul(x, y);
    std::cout << "\n";
  }
}

int run_functor(const GlobalOpts& g, bool sese_kind, bool bise_kind, const std::string& band,
                int n, const std::string& algebra_path) {
  if (sese_kind) {
    FiniteAlgebra a = load_semigroup(algebra_path);
    sese::EValue ev = sese::e_value(a, n);
    print_algebra(g, ev.algebra);
    return kExitOk;
  }
  if (bise_kind) {
    FiniteAlgebra a = load_semigroup(algebra_path);
    print_algebra(g, bise_functor_value(a));
    return kExitOk;
  }
  if (!band.empty()) {
    int size = std::stoi(band);
    print_algebra(g, rectangular_band(size));
    return kExitOk;
  }
  throw CapabilityError("choose one of --sese, --bise, --band");
}

int run_oracle(const GlobalOpts& g, const std::string& d, const std::string& ident, int size,
               bool final_cert) {
  Signature sig = one_binary_op_signature();
  if (d != "bi" && d != "se") throw CapabilityError("oracle supports D in {bi, se}");
  std::vector<Identity> ids = identities_for(d, ident, {});
  nlohmann::json out;
  out["schema"] = 1;
  auto all = enumerate_coalgebras(sig, ids, size);
  out["count"] = all.size();
  if (g.format == "text")
    std::cout << all.size() << " coalgebras of size " << size << " up to isomorphism\n";
  if (final_cert) {
    nlohmann::json certs = nlohmann::json::array();
    for (const FiniteCoalgebra& r : all) {
      for (int lvl = 1; lvl <= 6; ++lvl) {
        auto ms = truncation_morphisms(r, lvl);
        nlohmann::json c;
        c["coalgebra"] = coalgebra_to_json(r);
        c["level"] = lvl;
        c["morphisms"] = ms.size();
        certs.push_back(c);
        if (g.format == "text")
          std::cout << "  level " << lvl << ": " << ms.size()
                    << " morphism(s) into the truncation\n";
      }
    }
    out["certificates"] = certs;
  }
  if (g.format == "json") std::cout << out.dump(2) << "\n";
  return kExitOk;
}

int run_verify_all(const GlobalOpts& g) {
  AcceptanceConfig config;
  config.seed = g.seed;
  auto results = run_acceptance(config);
  bool all = true;
  std::string first_failure;
  nlohmann::json out;
  out["schema"] = 1;
  out["criteria"] = nlohmann::json::array();
  for (const auto& r : results) {
    if (!r.passed && first_failure.empty()) first_failure = r.name;
    all = all && r.passed;
    if (g.format == "json") {
      nlohmann::json j;
      j["number"] = r.number;
      j["name"] = r.name;
      j["passed"] = r.passed;
      j["detail"] = r.detail;
      j["ms"] = r.millis;
      out["criteria"].push_back(j);
    } else {
      std::printf("[%s] criterion %2d: %-28s %8.1f ms  %s\n", r.passed ? "PASS" : "FAIL",
                  r.number, r.name.c_str(), r.millis, r.detail.c_str());
    }
  }
  if (g.format == "json") {
    out["passed"] = all;
    std::cout << out.dump(2) << "\n";
  } else if (!all) {
    std::cout << "verify-all failed: first failing criterion is '" << first_failure << "'\n";
  } else {
    std::cout << "verify-all: all criteria passed\n";
  }
  return all ? kExitOk : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite truncations of final coalgebras over catalog varieties"};
  app.require_subcommand(1);
  GlobalOpts g;
  app.add_option("--format", g.format, "output format: text or json")
      ->check(CLI::IsMember({"text", "json"}));
  app.add_option("--cache-dir", g.cache_dir, "cache directory (overrides COALG_CACHE)");
  app.add_option("--seed", g.seed, "seed for sampled property checks");

  auto* tower = app.add_subcommand("tower", "build tower levels and print counts");
  std::string c = "set", d = "bi", ident, word_text, term_text, algebra_path, band;
  std::vector<std::string> exprs;
  int k = 3, bound = 8, j = 0, n = 3, size = 2;
  bool sese_kind = false, bise_kind = false, final_cert = false;
  tower->add_option("--c", c, "base variety: set, bi, se");
  tower->add_option("--d", d, "D variety: bi (free) or se (associative)");
  tower->add_option("--ident", ident, "extra identity set: no11, no10, assoc, comm");
  tower->add_option("--ident-expr", exprs, "identity s-expression (= lhs rhs :arity n)");
  tower->add_option("--k", k, "top level to build");
  tower->add_option("--L", bound, "word length bound for bi/se towers");

  auto* member = app.add_subcommand("member", "test membership of a word in a tower level");
  member->add_option("--c", c, "base variety: bi or se");
  member->add_option("--d", d, "D variety: bi or se");
  member->add_option("--ident", ident, "extra identity set");
  member->add_option("--ident-expr", exprs, "identity s-expression");
  member->add_option("--word", word_text, "word, e.g. x00.x01.x10.x11")->required();
  member->add_option("--k", k, "level (default: inferred from the tags)")->default_val(-1);

  auto* instance = app.add_subcommand("instance", "evaluate a (j,k)-instance at a word");
  instance->add_option("--c", c, "base variety: bi or se");
  instance->add_option("--term", term_text, "term s-expression")->required();
  instance->add_option("--j", j, "target level")->required();
  instance->add_option("--k", k, "source level")->required();
  instance->add_option("--word", word_text, "level-k word")->required();

  auto* functor = app.add_subcommand("functor", "print a represented functor value");
  functor->add_flag("--sese", sese_kind, "final cosemigroup functor E(A, N)");
  functor->add_flag("--bise", bise_kind, "Bi->Se functor (idempotent pairs)");
  functor->add_option("--band", band, "rectangular band on a set of this size");
  functor->add_option("--n", n, "index cutoff N");
  functor->add_option("--algebra", algebra_path, "semigroup JSON file");

  auto* oracle = app.add_subcommand("oracle", "enumerate small coalgebras");
  oracle->add_option("--d", d, "D variety: bi or se");
  oracle->add_option("--ident", ident, "extra identity set");
  oracle->add_option("--size", size, "carrier size (<= 4)");
  oracle->add_flag("--final", final_cert, "emit morphism-uniqueness certificates");

  app.add_subcommand("verify-all", "run the full acceptance suite");

  CLI11_PARSE(app, argc, argv);

  try {
    if (tower->parsed()) return run_tower(g, c, d, ident, exprs, k, bound);
    if (member->parsed()) return run_member(g, c, d, ident, exprs, word_text, k);
    if (instance->parsed()) return run_instance(g, c, term_text, j, k, word_text);
    if (functor->parsed()) return run_functor(g, sese_kind, bise_kind, band, n, algebra_path);
    if (oracle->parsed()) return run_oracle(g, d, ident, size, final_cert);
    return run_verify_all(g);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const CapabilityError& e) {
    std::cerr << "capability error: " << e.what() << "\n";
    return kExitCapability;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
