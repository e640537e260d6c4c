#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "tqa/errors.hpp"
#include "tqa/quiver.hpp"

namespace tqa {

namespace builtin {

// v1 -a-> v2 -b-> v3 with a loop x at v2.
inline Quiver example83() { return Quiver({"v1", "v2", "v3"}, {{"a", 0, 1}, {"x", 1, 1}, {"b", 1, 2}}); }

inline Quiver loop() { return Quiver({"v"}, {{"x", 0, 0}}); }

// Oriented c-cycle: vertices e1..ec, arrows v_i : e_i -> e_{i+1}.
inline Quiver cycle(int c) {
  if (c < 1) throw ValidationError("cycle length must be positive");
  std::vector<std::string> vs;
  std::vector<Arrow> as;
  for (int i = 0; i < c; ++i) vs.push_back("e" + std::to_string(i + 1));
  for (int i = 0; i < c; ++i) as.push_back({"v" + std::to_string(i + 1), i, (i + 1) % c});
  return Quiver(vs, as);
}

// r loops x1..xr on one vertex.
inline Quiver tensor(int r) {
  if (r < 1) throw ValidationError("tensor needs at least one loop");
  std::vector<Arrow> as;
  for (int i = 0; i < r; ++i) as.push_back({"x" + std::to_string(i + 1), 0, 0});
  return Quiver({"v"}, as);
}

// Linear quiver v1 -> v2 -> ... -> vn with arrows a1..a(n-1).
inline Quiver linear(int n) {
  if (n < 1) throw ValidationError("linear quiver needs at least one vertex");
  std::vector<std::string> vs;
  std::vector<Arrow> as;
  for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i + 1));
  for (int i = 0; i + 1 < n; ++i) as.push_back({"a" + std::to_string(i + 1), i, i + 1});
  return Quiver(vs, as);
}

// Two 2-cycles through a middle vertex e2: v2 v3 around e1, v4 v1 around e3.
inline Quiver two_cycles() {
  return Quiver({"e1", "e2", "e3"}, {{"v1", 2, 1}, {"v2", 1, 0}, {"v3", 0, 1}, {"v4", 1, 2}});
}

}  // namespace builtin

inline std::vector<std::string> builtin_names() {
  return {"example83", "loop", "cycle<c>", "tensor<r>", "a<n>", "example7-1", "example7-2"};
}

inline Quiver builtin_quiver(const std::string& name) {
  auto suffix_int = [&](std::size_t from) -> int {
    std::string rest = name.substr(from);
    if (rest.empty() || rest.size() > 6) throw ValidationError("unknown builtin '" + name + "'");
    for (char c : rest)
      if (!std::isdigit(static_cast<unsigned char>(c))) throw ValidationError("unknown builtin '" + name + "'");
    return std::stoi(rest);
  };
  if (name == "example83") return builtin::example83();
  if (name == "loop") return builtin::loop();
  if (name == "example7-1") return builtin::cycle(4);
  if (name == "example7-2") return builtin::two_cycles();
  if (name.rfind("cycle", 0) == 0) return builtin::cycle(suffix_int(5));
  if (name.rfind("tensor", 0) == 0) return builtin::tensor(suffix_int(6));
  if (name.size() > 1 && name[0] == 'a') return builtin::linear(suffix_int(1));
  throw ValidationError("unknown builtin '" + name + "'");
}

}  // namespace tqa
