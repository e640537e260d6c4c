#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tqa/errors.hpp"
#include "tqa/linalg.hpp"
#include "tqa/quiver.hpp"

namespace tqa {

// Finite rational combination of keys; zero coefficients are never stored.
template <class K>
class LinComb {
 public:
  using Map = std::map<K, Rational>;

  LinComb() = default;
  explicit LinComb(const K& k, const Rational& c = 1) { add(k, c); }

  void add(const K& k, const Rational& c) {
    if (c == 0) return;
    auto [it, fresh] = terms_.try_emplace(k, canonical(c));
    if (!fresh) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  void add(const LinComb& o, const Rational& c = 1) {
    if (c == 0) return;
    for (const auto& [k, v] : o.terms_) add(k, c * v);
  }

  Rational coeff(const K& k) const {
    auto it = terms_.find(k);
    return it == terms_.end() ? Rational(0) : it->second;
  }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  const Map& terms() const { return terms_; }
  auto begin() const { return terms_.begin(); }
  auto end() const { return terms_.end(); }

  LinComb& operator+=(const LinComb& o) {
    add(o);
    return *this;
  }
  LinComb& operator-=(const LinComb& o) {
    add(o, Rational(-1));
    return *this;
  }
  LinComb operator+(const LinComb& o) const { return LinComb(*this) += o; }
  LinComb operator-(const LinComb& o) const { return LinComb(*this) -= o; }
  LinComb operator*(const Rational& c) const {
    LinComb out;
    out.add(*this, c);
    return out;
  }
  bool operator==(const LinComb& o) const { return terms_ == o.terms_; }

 private:
  Map terms_;
};

using Element = LinComb<Path>;

// A = kQ / (paths of length >= N), basis = paths of length < N.
class TruncatedAlgebra {
 public:
  TruncatedAlgebra(Quiver q, int N) : q_(std::move(q)), N_(N) {
    if (N_ < 2) throw ValidationError("truncation N must be at least 2");
  }

  const Quiver& quiver() const { return q_; }
  int N() const { return N_; }

  // Product of two basis paths: nothing on endpoint mismatch or length >= N.
  std::optional<Path> mul(const Path& u, const Path& v) const {
    if (u.length() + v.length() >= N_) return std::nullopt;
    return concat(u, v);
  }

  Element multiply(const Element& u, const Element& v) const {
    Element out;
    for (const auto& [p, a] : u)
      for (const auto& [r, b] : v)
        if (auto pr = mul(p, r)) out.add(*pr, a * b);
    return out;
  }

  Element unit() const {
    Element e;
    for (int v = 0; v < q_.num_vertices(); ++v) e.add(Path::vertex(v), 1);
    return e;
  }

  std::vector<Path> basis(std::size_t cap = kDefaultCap) const {
    std::vector<Path> out;
    for (int n = 0; n < N_; ++n)
      for (auto& p : paths(q_, n, cap)) {
        if (out.size() >= cap) throw ResourceLimit("algebra basis exceeds cap");
        out.push_back(std::move(p));
      }
    return out;
  }

  // Basis paths from u to v.
  std::vector<Path> basis_between(int u, int v) const {
    std::vector<Path> out;
    for (const auto& p : basis())
      if (p.src == u && p.dst == v) out.push_back(p);
    return out;
  }

  bool is_basis_path(const Path& p) const { return p.length() < N_; }

 private:
  Quiver q_;
  int N_;
};

inline std::string format_element(const Quiver& q, const Element& e) {
  if (e.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [p, c] : e) {
    if (!first) out += " + ";
    first = false;
    out += to_string(c) + "*" + format_path(q, p);
  }
  return out;
}

}  // namespace tqa
