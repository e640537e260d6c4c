#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tqa/errors.hpp"

namespace tqa {

struct Arrow {
  std::string label;
  int source = 0;
  int target = 0;
};

class Quiver {
 public:
  Quiver() = default;

  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows)
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    std::set<std::string> seen;
    for (const auto& v : vertices_) {
      if (!seen.insert(v).second) throw ValidationError("duplicate vertex label '" + v + "'");
    }
    std::set<std::string> seen_arrows;
    for (const auto& a : arrows_) {
      if (!seen_arrows.insert(a.label).second) throw ValidationError("duplicate arrow label '" + a.label + "'");
      if (seen.count(a.label)) throw ValidationError("arrow label '" + a.label + "' clashes with a vertex label");
      if (a.source < 0 || a.source >= num_vertices() || a.target < 0 || a.target >= num_vertices())
        throw ValidationError("arrow '" + a.label + "' references an undeclared vertex");
    }
    out_.assign(vertices_.size(), {});
    in_.assign(vertices_.size(), {});
    for (int i = 0; i < num_arrows(); ++i) {
      out_[arrows_[i].source].push_back(i);
      in_[arrows_[i].target].push_back(i);
    }
  }

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  int num_arrows() const { return static_cast<int>(arrows_.size()); }
  const std::string& vertex_label(int v) const { return vertices_.at(v); }
  const Arrow& arrow(int a) const { return arrows_.at(a); }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  const std::vector<int>& out_arrows(int v) const { return out_.at(v); }
  const std::vector<int>& in_arrows(int v) const { return in_.at(v); }

  std::optional<int> vertex_index(const std::string& label) const {
    for (int i = 0; i < num_vertices(); ++i)
      if (vertices_[i] == label) return i;
    return std::nullopt;
  }
  std::optional<int> arrow_index(const std::string& label) const {
    for (int i = 0; i < num_arrows(); ++i)
      if (arrows_[i].label == label) return i;
    return std::nullopt;
  }

  bool operator==(const Quiver& o) const {
    if (vertices_ != o.vertices_ || arrows_.size() != o.arrows_.size()) return false;
    for (std::size_t i = 0; i < arrows_.size(); ++i) {
      const auto &a = arrows_[i], &b = o.arrows_[i];
      if (a.label != b.label || a.source != b.source || a.target != b.target) return false;
    }
    return true;
  }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<std::vector<int>> out_, in_;
};

// A vertex (no arrows) or a composable arrow sequence.
struct Path {
  int src = 0;
  int dst = 0;
  std::vector<int> arrows;

  static Path vertex(int v) { return Path{v, v, {}}; }

  static Path of(const Quiver& q, std::vector<int> seq) {
    if (seq.empty()) throw ValidationError("an arrow path needs at least one arrow");
    for (std::size_t i = 0; i + 1 < seq.size(); ++i)
      if (q.arrow(seq[i]).target != q.arrow(seq[i + 1]).source)
        throw ValidationError("arrows do not compose");
    Path p{q.arrow(seq.front()).source, q.arrow(seq.back()).target, std::move(seq)};
    return p;
  }

  int length() const { return static_cast<int>(arrows.size()); }
  bool is_vertex() const { return arrows.empty(); }

  // Sub-path of arrows [from, from + len); len == 0 gives the vertex at that position.
  Path slice(const Quiver& q, int from, int len) const {
    if (len == 0) {
      if (from == length()) return vertex(dst);
      return vertex(q.arrow(arrows[from]).source);
    }
    return Path{q.arrow(arrows[from]).source, q.arrow(arrows[from + len - 1]).target,
                std::vector<int>(arrows.begin() + from, arrows.begin() + from + len)};
  }

  bool operator==(const Path& o) const { return src == o.src && dst == o.dst && arrows == o.arrows; }
  std::strong_ordering operator<=>(const Path& o) const {
    if (auto c = arrows.size() <=> o.arrows.size(); c != 0) return c;
    if (arrows.empty()) return src <=> o.src;
    return arrows <=> o.arrows;
  }
};

// Juxtaposition in the path algebra (no truncation).
inline std::optional<Path> concat(const Path& p, const Path& r) {
  if (p.dst != r.src) return std::nullopt;
  if (p.is_vertex()) return r;
  if (r.is_vertex()) return p;
  Path out{p.src, r.dst, p.arrows};
  out.arrows.insert(out.arrows.end(), r.arrows.begin(), r.arrows.end());
  return out;
}

namespace detail {
inline void extend_paths(const Quiver& q, Path& cur, int remaining, std::vector<Path>& out, std::size_t cap) {
  if (remaining == 0) {
    if (out.size() >= cap) throw ResourceLimit("path enumeration exceeds cap of " + std::to_string(cap));
    out.push_back(cur);
    return;
  }
  for (int a : q.out_arrows(cur.dst)) {
    cur.arrows.push_back(a);
    int saved = cur.dst;
    cur.dst = q.arrow(a).target;
    extend_paths(q, cur, remaining - 1, out, cap);
    cur.dst = saved;
    cur.arrows.pop_back();
  }
}
}  // namespace detail

// All paths of length n, lexicographic by arrow index; n = 0 gives the vertices.
inline std::vector<Path> paths(const Quiver& q, int n, std::size_t cap = kDefaultCap) {
  if (n < 0) throw ValidationError("path length must be non-negative");
  std::vector<Path> out;
  if (n == 0) {
    for (int v = 0; v < q.num_vertices(); ++v) out.push_back(Path::vertex(v));
    return out;
  }
  for (int a = 0; a < q.num_arrows(); ++a) {
    Path cur{q.arrow(a).source, q.arrow(a).target, {a}};
    detail::extend_paths(q, cur, n - 1, out, cap);
  }
  return out;
}

struct ParallelPair {
  Path first;
  Path second;
  auto operator<=>(const ParallelPair&) const = default;
  bool operator==(const ParallelPair&) const = default;
};

inline std::vector<ParallelPair> parallel_pairs(const Quiver& q, int i, int m, std::size_t cap = kDefaultCap) {
  auto firsts = paths(q, i, cap);
  auto seconds = paths(q, m, cap);
  std::map<std::pair<int, int>, std::vector<const Path*>> by_ends;
  for (const auto& p : seconds) by_ends[{p.src, p.dst}].push_back(&p);
  std::vector<ParallelPair> out;
  for (const auto& a : firsts) {
    auto it = by_ends.find({a.src, a.dst});
    if (it == by_ends.end()) continue;
    for (const Path* p : it->second) {
      if (out.size() >= cap) throw ResourceLimit("parallel pair enumeration exceeds cap of " + std::to_string(cap));
      out.push_back({a, *p});
    }
  }
  return out;
}

struct StructureFlags {
  bool is_oriented_cycle = false;
  bool has_sink = false;
  bool has_source = false;
  bool is_acyclic = false;
  bool is_connected = false;
};

inline bool is_sink(const Quiver& q, int v) { return q.out_arrows(v).empty(); }
inline bool is_source(const Quiver& q, int v) { return q.in_arrows(v).empty(); }

inline StructureFlags structure_flags(const Quiver& q) {
  StructureFlags f;
  const int n = q.num_vertices();
  for (int v = 0; v < n; ++v) {
    f.has_sink = f.has_sink || is_sink(q, v);
    f.has_source = f.has_source || is_source(q, v);
  }
  // Kahn's algorithm: acyclic iff every vertex can be peeled off.
  std::vector<int> indeg(n, 0);
  for (const auto& a : q.arrows()) ++indeg[a.target];
  std::vector<int> stack;
  for (int v = 0; v < n; ++v)
    if (indeg[v] == 0) stack.push_back(v);
  int removed = 0;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    ++removed;
    for (int a : q.out_arrows(v))
      if (--indeg[q.arrow(a).target] == 0) stack.push_back(q.arrow(a).target);
  }
  f.is_acyclic = removed == n;

  std::vector<int> comp(n, -1);
  int components = 0;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    ++components;
    std::vector<int> todo{s};
    comp[s] = s;
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      auto visit = [&](int w) {
        if (comp[w] < 0) {
          comp[w] = s;
          todo.push_back(w);
        }
      };
      for (int a : q.out_arrows(v)) visit(q.arrow(a).target);
      for (int a : q.in_arrows(v)) visit(q.arrow(a).source);
    }
  }
  f.is_connected = components <= 1;

  bool regular = n > 0 && q.num_arrows() == n;
  for (int v = 0; regular && v < n; ++v)
    regular = q.out_arrows(v).size() == 1 && q.in_arrows(v).size() == 1;
  f.is_oriented_cycle = regular && f.is_connected;
  return f;
}

// Arrow labels concatenated, runs of one arrow written label^k.
inline std::string format_path(const Quiver& q, const Path& p) {
  if (p.is_vertex()) return q.vertex_label(p.src);
  std::string out;
  for (std::size_t i = 0; i < p.arrows.size();) {
    std::size_t j = i;
    while (j < p.arrows.size() && p.arrows[j] == p.arrows[i]) ++j;
    out += q.arrow(p.arrows[i]).label;
    if (j - i > 1) out += "^" + std::to_string(j - i);
    i = j;
  }
  return out;
}

// Inverse of format_path; also accepts '*' or '.' between factors.
inline Path parse_path(const Quiver& q, const std::string& text) {
  std::string s;
  for (char c : text)
    if (c != ' ' && c != '\t') s += c;
  if (auto v = q.vertex_index(s)) return Path::vertex(*v);
  std::vector<int> seq;
  std::size_t pos = 0;
  while (pos < s.size()) {
    if (s[pos] == '*' || s[pos] == '.') {
      ++pos;
      continue;
    }
    int best = -1;
    std::size_t best_len = 0;
    for (int a = 0; a < q.num_arrows(); ++a) {
      const auto& l = q.arrow(a).label;
      if (l.size() > best_len && s.compare(pos, l.size(), l) == 0) {
        best = a;
        best_len = l.size();
      }
    }
    if (best < 0) throw ValidationError("cannot read path '" + text + "' at position " + std::to_string(pos));
    pos += best_len;
    long reps = 1;
    if (pos < s.size() && s[pos] == '^') {
      std::size_t start = ++pos;
      while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
      if (start == pos) throw ValidationError("missing exponent in path '" + text + "'");
      reps = std::stol(s.substr(start, pos - start));
    }
    for (long r = 0; r < reps; ++r) seq.push_back(best);
  }
  if (seq.empty()) throw ValidationError("empty path '" + text + "'");
  return Path::of(q, std::move(seq));
}

}  // namespace tqa
