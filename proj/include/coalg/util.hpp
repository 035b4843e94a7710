#pragma once

#include <cstdint>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace coalg {

// Error taxonomy, mirrored by CLI exit codes.
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct CapabilityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

// Deterministic work splitter. Results are merged in block order, so
// output does not depend on the number of workers.
template <typename Fn>
void parallel_blocks(std::size_t n, std::size_t workers, Fn&& fn) {
  if (n == 0) return;
  if (workers < 2 || n < 1024) {
    fn(std::size_t{0}, n, std::size_t{0});
    return;
  }
  std::size_t block = (n + workers - 1) / workers;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) {
    std::size_t lo = w * block;
    if (lo >= n) break;
    std::size_t hi = std::min(n, lo + block);
    pool.emplace_back([&fn, lo, hi, w] { fn(lo, hi, w); });
  }
  for (auto& t : pool) t.join();
}

// --- minimal s-expression reader ------------------------------------------

struct Sexpr {
  // Leaf iff children empty and atom nonempty; "()" is a node with no
  // children and empty atom.
  std::string atom;
  std::vector<Sexpr> children;
  bool is_atom() const { return children.empty() && !atom.empty(); }
};

namespace detail {
inline void skip_ws(const std::string& s, std::size_t& i) {
  while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\n' || s[i] == '\r')) ++i;
}

inline Sexpr parse_sexpr_at(const std::string& s, std::size_t& i) {
  skip_ws(s, i);
  if (i >= s.size()) throw ParseError("unexpected end of s-expression");
  if (s[i] == '(') {
    ++i;
    Sexpr node;
    skip_ws(s, i);
    while (i < s.size() && s[i] != ')') {
      node.children.push_back(parse_sexpr_at(s, i));
      skip_ws(s, i);
    }
    if (i >= s.size()) throw ParseError("missing ')' in s-expression");
    ++i;
    return node;
  }
  if (s[i] == ')') throw ParseError("unexpected ')' in s-expression");
  Sexpr leaf;
  while (i < s.size() && s[i] != '(' && s[i] != ')' && s[i] != ' ' && s[i] != '\t' &&
         s[i] != '\n' && s[i] != '\r') {
    leaf.atom.push_back(s[i]);
    ++i;
  }
  return leaf;
}
}  // namespace detail

inline Sexpr parse_sexpr(const std::string& s) {
  std::size_t i = 0;
  Sexpr e = detail::parse_sexpr_at(s, i);
  detail::skip_ws(s, i);
  if (i != s.size()) throw ParseError("trailing input after s-expression: '" + s.substr(i) + "'");
  return e;
}

inline std::string print_sexpr(const Sexpr& e) {
  if (e.is_atom()) return e.atom;
  std::string out = "(";
  for (std::size_t i = 0; i < e.children.size(); ++i) {
    if (i) out += ' ';
    out += print_sexpr(e.children[i]);
  }
  out += ')';
  return out;
}

}  // namespace coalg
