#pragma once

#include <compare>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tqa/algebra.hpp"
#include "tqa/errors.hpp"
#include "tqa/report.hpp"

namespace tqa {

// left[inner_1|...|inner_n]right in the reduced bar resolution.
struct QWord {
  Path left;
  std::vector<Path> inner;
  Path right;
  int degree() const { return static_cast<int>(inner.size()); }
  auto operator<=>(const QWord&) const = default;
  bool operator==(const QWord&) const = default;
};

// left (x) middle (x) right in the minimal resolution.
struct PWord {
  Path left;
  Path middle;
  Path right;
  auto operator<=>(const PWord&) const = default;
  bool operator==(const PWord&) const = default;
};

using QChain = LinComb<QWord>;
using PChain = LinComb<PWord>;

// Length of the middle factor of P_n: kN for n = 2k, kN + 1 for n = 2k + 1.
inline int middle_length(int n, int N) { return (n / 2) * N + (n % 2); }

inline int degree_of_middle(int m, int N) {
  if (m % N == 0) return 2 * (m / N);
  if (m % N == 1) return 2 * (m / N) + 1;
  throw ValidationError("path length " + std::to_string(m) + " is not a middle length for N=" + std::to_string(N));
}

template <class W, class F>
LinComb<W> apply_linear(const LinComb<W>& c, F&& f) {
  LinComb<W> out;
  for (const auto& [w, a] : c) out.add(f(w), a);
  return out;
}

template <class W, class V, class F>
LinComb<V> map_linear(const LinComb<W>& c, F&& f) {
  LinComb<V> out;
  for (const auto& [w, a] : c) out.add(f(w), a);
  return out;
}

// ---------------------------------------------------------------- bar side

inline QChain bar_diff(const TruncatedAlgebra& A, const QWord& w) {
  const int n = w.degree();
  if (n < 1) throw ValidationError("bar differential needs degree >= 1");
  QChain out;
  if (auto p = A.mul(w.left, w.inner.front()))
    out.add(QWord{*p, std::vector<Path>(w.inner.begin() + 1, w.inner.end()), w.right}, 1);
  for (int i = 1; i < n; ++i) {
    auto p = A.mul(w.inner[i - 1], w.inner[i]);
    if (!p) continue;
    std::vector<Path> inner;
    inner.reserve(n - 1);
    inner.insert(inner.end(), w.inner.begin(), w.inner.begin() + (i - 1));
    inner.push_back(*p);
    inner.insert(inner.end(), w.inner.begin() + (i + 1), w.inner.end());
    out.add(QWord{w.left, std::move(inner), w.right}, i % 2 ? -1 : 1);
  }
  if (auto p = A.mul(w.inner.back(), w.right))
    out.add(QWord{w.left, std::vector<Path>(w.inner.begin(), w.inner.end() - 1), *p}, n % 2 ? -1 : 1);
  return out;
}

inline QChain bar_diff(const TruncatedAlgebra& A, const QChain& c) {
  return apply_linear(c, [&](const QWord& w) { return bar_diff(A, w); });
}

inline QChain contraction_s(const TruncatedAlgebra&, const QWord& w) {
  if (w.left.is_vertex()) return {};
  std::vector<Path> inner{w.left};
  inner.insert(inner.end(), w.inner.begin(), w.inner.end());
  return QChain(QWord{Path::vertex(w.left.src), std::move(inner), w.right});
}

inline QChain contraction_s(const TruncatedAlgebra& A, const QChain& c) {
  return apply_linear(c, [&](const QWord& w) { return contraction_s(A, w); });
}

// ------------------------------------------------------------ minimal side

inline PChain min_diff(const TruncatedAlgebra& A, const PWord& w) {
  const Quiver& q = A.quiver();
  const int N = A.N();
  const int n = degree_of_middle(w.middle.length(), N);
  if (n < 1) throw ValidationError("minimal differential needs degree >= 1");
  const int k = n / 2;
  PChain out;
  if (n % 2 == 0) {
    const int mid = (k - 1) * N + 1;
    for (int j = 0; j < N; ++j) {
      auto l = A.mul(w.left, w.middle.slice(q, 0, j));
      if (!l) continue;
      auto r = A.mul(w.middle.slice(q, j + mid, N - 1 - j), w.right);
      if (!r) continue;
      out.add(PWord{*l, w.middle.slice(q, j, mid), *r}, 1);
    }
  } else {
    const int m = w.middle.length();
    if (auto l = A.mul(w.left, w.middle.slice(q, 0, 1))) out.add(PWord{*l, w.middle.slice(q, 1, m - 1), w.right}, 1);
    if (auto r = A.mul(w.middle.slice(q, m - 1, 1), w.right)) out.add(PWord{w.left, w.middle.slice(q, 0, m - 1), *r}, -1);
  }
  return out;
}

inline PChain min_diff(const TruncatedAlgebra& A, const PChain& c) {
  return apply_linear(c, [&](const PWord& w) { return min_diff(A, w); });
}

inline PChain contraction_r(const TruncatedAlgebra& A, const PWord& w) {
  const Quiver& q = A.quiver();
  const int N = A.N();
  const int n = degree_of_middle(w.middle.length(), N);
  PChain out;
  if (n % 2 == 0) {
    const int k = n / 2;
    const Path whole = *concat(w.left, w.middle);
    const int la = w.left.length();
    for (int j = 1; j <= la; ++j) {
      const int start = j - 1 + k * N + 1;
      auto r = A.mul(whole.slice(q, start, whole.length() - start), w.right);
      if (!r) continue;
      out.add(PWord{whole.slice(q, 0, j - 1), whole.slice(q, j - 1, k * N + 1), *r}, 1);
    }
  } else if (w.left.length() == N - 1) {
    out.add(PWord{Path::vertex(w.left.src), *concat(w.left, w.middle), w.right}, 1);
  }
  return out;
}

inline PChain contraction_r(const TruncatedAlgebra& A, const PChain& c) {
  return apply_linear(c, [&](const PWord& w) { return contraction_r(A, w); });
}

// epsilon(left (x) right) = left * right
inline Element augment(const TruncatedAlgebra& A, const QChain& c) {
  Element out;
  for (const auto& [w, a] : c) {
    if (w.degree() != 0) throw ValidationError("augmentation needs degree 0");
    if (auto p = A.mul(w.left, w.right)) out.add(*p, a);
  }
  return out;
}

inline Element augment(const TruncatedAlgebra& A, const PChain& c) {
  Element out;
  for (const auto& [w, a] : c) {
    if (!w.middle.is_vertex()) throw ValidationError("augmentation needs degree 0");
    if (auto p = A.mul(w.left, w.right)) out.add(*p, a);
  }
  return out;
}

// lambda . c . rho for basis paths lambda, rho.
inline QChain act(const TruncatedAlgebra& A, const Path& lambda, const QChain& c, const Path& rho) {
  QChain out;
  for (const auto& [w, a] : c) {
    auto l = A.mul(lambda, w.left);
    auto r = A.mul(w.right, rho);
    if (l && r) out.add(QWord{*l, w.inner, *r}, a);
  }
  return out;
}

inline PChain act(const TruncatedAlgebra& A, const Path& lambda, const PChain& c, const Path& rho) {
  PChain out;
  for (const auto& [w, a] : c) {
    auto l = A.mul(lambda, w.left);
    auto r = A.mul(w.right, rho);
    if (l && r) out.add(PWord{*l, w.middle, *r}, a);
  }
  return out;
}

// ------------------------------------------------------------------ bases

// Composable sequences of n paths with lengths 1..N-1.
inline std::vector<std::vector<Path>> bar_sequences(const TruncatedAlgebra& A, int n, std::size_t cap = kDefaultCap) {
  const Quiver& q = A.quiver();
  std::vector<std::vector<Path>> by_src(q.num_vertices());
  for (const auto& p : A.basis())
    if (!p.is_vertex()) by_src[p.src].push_back(p);
  std::vector<std::vector<Path>> out;
  std::vector<Path> cur;
  std::function<void(int)> rec = [&](int v) {
    if (static_cast<int>(cur.size()) == n) {
      if (out.size() >= cap) throw ResourceLimit("bar word enumeration exceeds cap of " + std::to_string(cap));
      out.push_back(cur);
      return;
    }
    for (const auto& p : by_src[v]) {
      cur.push_back(p);
      rec(p.dst);
      cur.pop_back();
    }
  };
  if (n == 0) return {{}};
  for (int v = 0; v < q.num_vertices(); ++v) rec(v);
  return out;
}

// Words 1[a_1|...|a_n]1 (vertex outer factors).
inline std::vector<QWord> q_basis_reduced(const TruncatedAlgebra& A, int n, std::size_t cap = kDefaultCap) {
  std::vector<QWord> out;
  if (n == 0) {
    for (int v = 0; v < A.quiver().num_vertices(); ++v) out.push_back({Path::vertex(v), {}, Path::vertex(v)});
    return out;
  }
  for (auto& s : bar_sequences(A, n, cap)) {
    Path l = Path::vertex(s.front().src), r = Path::vertex(s.back().dst);
    out.push_back({l, std::move(s), r});
  }
  return out;
}

inline std::vector<QWord> q_basis(const TruncatedAlgebra& A, int n, std::size_t cap = kDefaultCap) {
  const auto B = A.basis();
  std::vector<QWord> out;
  for (const auto& w : q_basis_reduced(A, n, cap))
    for (const auto& l : B) {
      if (l.dst != w.left.src) continue;
      for (const auto& r : B) {
        if (r.src != w.right.dst) continue;
        if (out.size() >= cap) throw ResourceLimit("bar basis exceeds cap of " + std::to_string(cap));
        out.push_back({l, w.inner, r});
      }
    }
  return out;
}

inline std::vector<PWord> p_basis_reduced(const TruncatedAlgebra& A, int n, std::size_t cap = kDefaultCap) {
  std::vector<PWord> out;
  for (auto& m : paths(A.quiver(), middle_length(n, A.N()), cap))
    out.push_back({Path::vertex(m.src), m, Path::vertex(m.dst)});
  return out;
}

inline std::vector<PWord> p_basis(const TruncatedAlgebra& A, int n, std::size_t cap = kDefaultCap) {
  const auto B = A.basis();
  std::vector<PWord> out;
  for (const auto& w : p_basis_reduced(A, n, cap))
    for (const auto& l : B) {
      if (l.dst != w.middle.src) continue;
      for (const auto& r : B) {
        if (r.src != w.middle.dst) continue;
        if (out.size() >= cap) throw ResourceLimit("minimal basis exceeds cap of " + std::to_string(cap));
        out.push_back({l, w.middle, r});
      }
    }
  return out;
}

// --------------------------------------------------------------- printing

inline std::string format_outer(const Quiver& q, const Path& p) { return p.is_vertex() ? "1" : format_path(q, p); }

inline std::string format_word(const Quiver& q, const QWord& w) {
  std::string s = format_outer(q, w.left) + "[";
  for (std::size_t i = 0; i < w.inner.size(); ++i) s += (i ? "|" : "") + format_path(q, w.inner[i]);
  return s + "]" + format_outer(q, w.right);
}

inline std::string format_word(const Quiver& q, const PWord& w) {
  return format_outer(q, w.left) + "⊗" + format_outer(q, w.middle) + "⊗" + format_outer(q, w.right);
}

template <class W>
std::string format_chain(const Quiver& q, const LinComb<W>& c) {
  if (c.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [w, a] : c) {
    if (!first) s += " + ";
    first = false;
    if (a != 1) s += to_string(a) + "*";
    s += format_word(q, w);
  }
  return s;
}

// ----------------------------------------------------------- verification

struct ResolutionMaps {
  std::function<QChain(const QWord&)> b, s;
  std::function<PChain(const PWord&)> d, r;

  static ResolutionMaps standard(const TruncatedAlgebra& A) {
    return {[&A](const QWord& w) { return bar_diff(A, w); }, [&A](const QWord& w) { return contraction_s(A, w); },
            [&A](const PWord& w) { return min_diff(A, w); }, [&A](const PWord& w) { return contraction_r(A, w); }};
  }
};

namespace detail {
template <class W, class Pred>
CheckResult run_check(const std::string& name, int degree, const std::vector<W>& words, Pred&& failing,
                      const Quiver& q) {
  CheckResult c{name, degree, true, 0, ""};
  for (const auto& w : words) {
    ++c.checked;
    if (failing(w)) {
      c.pass = false;
      c.witness = format_word(q, w);
      break;
    }
  }
  return c;
}
}  // namespace detail

// b^2 = 0, d^2 = 0, sb + bs = 1, rd + dr = 1 on every basis word up to max_degree,
// plus the degree-0 telescoping identities and epsilon b_1 = epsilon d_1 = 0.
inline Report verify_resolutions(const TruncatedAlgebra& A, int max_degree, const ResolutionMaps& maps,
                                 std::size_t cap = kDefaultCap) {
  if (max_degree < 1) throw ValidationError("max_degree must be at least 1");
  const Quiver& q = A.quiver();
  Report rep;
  auto b = [&](const QChain& c) { return apply_linear(c, maps.b); };
  auto s = [&](const QChain& c) { return apply_linear(c, maps.s); };
  auto d = [&](const PChain& c) { return apply_linear(c, maps.d); };
  auto r = [&](const PChain& c) { return apply_linear(c, maps.r); };

  const auto q0 = q_basis(A, 0, cap);
  const auto p0 = p_basis(A, 0, cap);
  rep.checks.push_back(detail::run_check("b1 s0 = 1 - 1(x)eps", 0, q0, [&](const QWord& w) {
    QChain expect(w);
    if (auto p = A.mul(w.left, w.right)) expect.add(QWord{Path::vertex(w.left.src), {}, *p}, -1);
    return b(s(QChain(w))) != expect;
  }, q));
  rep.checks.push_back(detail::run_check("d1 r0 = 1 - 1(x)eps", 0, p0, [&](const PWord& w) {
    PChain expect(w);
    if (auto p = A.mul(w.left, w.right)) expect.add(PWord{Path::vertex(w.left.src), Path::vertex(w.left.src), *p}, -1);
    return d(r(PChain(w))) != expect;
  }, q));

  for (int n = 1; n <= max_degree; ++n) {
    const auto qb = q_basis(A, n, cap);
    const auto pb = p_basis(A, n, cap);
    if (n == 1) {
      rep.checks.push_back(detail::run_check("eps b1 = 0", 1, qb, [&](const QWord& w) {
        return !augment(A, b(QChain(w))).empty();
      }, q));
      rep.checks.push_back(detail::run_check("eps d1 = 0", 1, pb, [&](const PWord& w) {
        return !augment(A, d(PChain(w))).empty();
      }, q));
    } else {
      rep.checks.push_back(detail::run_check("b^2 = 0", n, qb, [&](const QWord& w) { return !b(b(QChain(w))).empty(); }, q));
      rep.checks.push_back(detail::run_check("d^2 = 0", n, pb, [&](const PWord& w) { return !d(d(PChain(w))).empty(); }, q));
    }
    rep.checks.push_back(detail::run_check("sb + bs = 1", n, qb, [&](const QWord& w) {
      QChain x(w);
      return s(b(x)) + b(s(x)) != x;
    }, q));
    rep.checks.push_back(detail::run_check("rd + dr = 1", n, pb, [&](const PWord& w) {
      PChain x(w);
      return r(d(x)) + d(r(x)) != x;
    }, q));
  }
  return rep;
}

inline Report verify_resolutions(const TruncatedAlgebra& A, int max_degree, std::size_t cap = kDefaultCap) {
  return verify_resolutions(A, max_degree, ResolutionMaps::standard(A), cap);
}

}  // namespace tqa
