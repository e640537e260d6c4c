#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "tqa/resolutions.hpp"

namespace tqa {

// ----------------------------------------------------------- compositions

// Ordered parts [x_1,...,x_n]; the first and last parts may be zero.
struct Composition {
  std::vector<int> parts;
  int size() const { return static_cast<int>(parts.size()); }
  int total() const { return std::accumulate(parts.begin(), parts.end(), 0); }
  auto operator<=>(const Composition&) const = default;
  bool operator==(const Composition&) const = default;
};

using CompositionSum = LinComb<Composition>;

inline bool is_reduced(const Composition& c, int N) {
  return std::all_of(c.parts.begin(), c.parts.end(), [N](int x) { return x < N; });
}

inline std::string format_composition(const Composition& c) {
  std::string s = "[";
  for (std::size_t i = 0; i < c.parts.size(); ++i) s += (i ? "," : "") + std::to_string(c.parts[i]);
  return s + "]";
}

inline std::string format_composition_sum(const CompositionSum& s) {
  if (s.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [c, a] : s) {
    if (a < 0)
      out += first ? "-" : " - ";
    else if (!first)
      out += " + ";
    first = false;
    Rational m = abs(a);
    if (m != 1) out += to_string(m) + "*";
    out += format_composition(c);
  }
  return out;
}

// Adds c only if every part is < N; otherwise c is zero in the quotient.
inline void add_reduced(CompositionSum& s, const Composition& c, int N, const Rational& a = 1) {
  if (is_reduced(c, N)) s.add(c, a);
}

inline CompositionSum comp_diff(const Composition& c, int N) {
  if (c.size() < 2) throw ValidationError("composition differential needs at least two parts");
  CompositionSum out;
  for (int j = 1; j < c.size(); ++j) {
    Composition m;
    m.parts.reserve(c.parts.size() - 1);
    m.parts.insert(m.parts.end(), c.parts.begin(), c.parts.begin() + (j - 1));
    m.parts.push_back(c.parts[j - 1] + c.parts[j]);
    m.parts.insert(m.parts.end(), c.parts.begin() + (j + 1), c.parts.end());
    add_reduced(out, m, N, j % 2 ? 1 : -1);
  }
  return out;
}

inline CompositionSum comp_diff(const CompositionSum& s, int N) {
  CompositionSum out;
  for (const auto& [c, a] : s) out.add(comp_diff(c, N), a);
  return out;
}

// [j, s]: prepend a part to every term.
inline CompositionSum prepend(int j, const CompositionSum& s, int N) {
  CompositionSum out;
  for (const auto& [c, a] : s) {
    Composition p{{j}};
    p.parts.insert(p.parts.end(), c.parts.begin(), c.parts.end());
    add_reduced(out, p, N, a);
  }
  return out;
}

namespace detail {

// Calls f(x) for every x in {1,...,N-1}^k in lex order; once with x empty when k = 0.
template <class Fn>
void for_each_tuple(int k, int N, Fn&& f) {
  std::vector<int> x(k, 1);
  while (true) {
    f(x);
    int i = k - 1;
    while (i >= 0 && x[i] == N - 1) x[i--] = 1;
    if (i < 0) return;
    ++x[i];
  }
}

inline void check_family(int k, int M, int N, int kmin) {
  if (N < 2) throw ValidationError("N must be at least 2");
  if (k < kmin) throw ValidationError("k must be at least " + std::to_string(kmin));
  if (M < k * (N - 1)) throw ValidationError("M must be at least k(N-1)");
}

}  // namespace detail

// Sum over x of [x_1,1,x_2,1,...,x_k,1,M - sum x].
inline CompositionSum build_A(int k, int M, int N) {
  detail::check_family(k, M, N, 1);
  CompositionSum out;
  detail::for_each_tuple(k, N, [&](const std::vector<int>& x) {
    Composition c;
    for (int xi : x) c.parts.insert(c.parts.end(), {xi, 1});
    c.parts.push_back(M - std::accumulate(x.begin(), x.end(), 0));
    add_reduced(out, c, N);
  });
  return out;
}

// Sum over x of [1,x_1,1,...,x_k,1,M - sum x]; B_M^0 = [1,M].
inline CompositionSum build_B(int k, int M, int N) {
  detail::check_family(k, M, N, 0);
  CompositionSum out;
  detail::for_each_tuple(k, N, [&](const std::vector<int>& x) {
    Composition c{{1}};
    for (int xi : x) c.parts.insert(c.parts.end(), {xi, 1});
    c.parts.push_back(M - std::accumulate(x.begin(), x.end(), 0));
    add_reduced(out, c, N);
  });
  return out;
}

inline CompositionSum build_A_tilde(int k, int M, int N) { return prepend(0, build_A(k, M, N), N); }
inline CompositionSum build_B_tilde(int k, int M, int N) { return prepend(0, build_B(k, M, N), N); }

// -------------------------------------------------------------------- phi

// Brackets the middle path by the interior parts; the outer parts become the
// outer tensor factors. Extended as a bimodule map.
inline QChain phi(const TruncatedAlgebra& A, const Composition& c, const PWord& w) {
  const Quiver& q = A.quiver();
  if (c.size() < 2) throw ValidationError("phi needs a composition with at least two parts");
  if (c.total() != w.middle.length())
    throw ValidationError("composition " + format_composition(c) + " does not sum to the middle length " +
                          std::to_string(w.middle.length()));
  if (!is_reduced(c, A.N())) return {};
  for (int i = 1; i + 1 < c.size(); ++i)
    if (c.parts[i] <= 0) throw ValidationError("interior parts of " + format_composition(c) + " must be positive");
  int pos = c.parts.front();
  std::vector<Path> inner;
  for (int i = 1; i + 1 < c.size(); ++i) {
    inner.push_back(w.middle.slice(q, pos, c.parts[i]));
    pos += c.parts[i];
  }
  QWord base{w.middle.slice(q, 0, c.parts.front()), std::move(inner), w.middle.slice(q, pos, c.parts.back())};
  return act(A, w.left, QChain(base), w.right);
}

inline QChain phi(const TruncatedAlgebra& A, const CompositionSum& s, const PWord& w) {
  QChain out;
  for (const auto& [c, a] : s) out.add(phi(A, c, w), a);
  return out;
}

inline QChain phi(const TruncatedAlgebra& A, const CompositionSum& s, const PChain& x) {
  return map_linear<PWord, QWord>(x, [&](const PWord& w) { return phi(A, s, w); });
}

// ------------------------------------------------------- comparison maps

// F : P -> Q. F_0 identifies lambda(x)e(x)rho with lambda[]rho.
inline QChain map_F(const TruncatedAlgebra& A, const PWord& w) {
  const Quiver& q = A.quiver();
  const int N = A.N();
  const int n = degree_of_middle(w.middle.length(), N);
  if (n == 0) return QChain(QWord{w.left, {}, w.right});
  const int k = n / 2;
  const bool odd = n % 2;
  QChain base;
  detail::for_each_tuple(k, N, [&](const std::vector<int>& x) {
    const int rest = k * N - k - std::accumulate(x.begin(), x.end(), 0);
    if (rest >= N) return;
    std::vector<int> lens;
    if (odd) lens.push_back(1);
    for (int xi : x) lens.insert(lens.end(), {xi, 1});
    std::vector<Path> inner;
    int pos = 0;
    for (int l : lens) {
      inner.push_back(w.middle.slice(q, pos, l));
      pos += l;
    }
    base.add(QWord{Path::vertex(w.middle.src), std::move(inner), w.middle.slice(q, pos, rest)}, 1);
  });
  return act(A, w.left, base, w.right);
}

inline QChain map_F(const TruncatedAlgebra& A, const PChain& c) {
  return map_linear<PWord, QWord>(c, [&](const PWord& w) { return map_F(A, w); });
}

// F_{2k} = phi of A~^k_{k(N-1)}, F_{2k+1} = phi of B~^k_{k(N-1)}.
inline QChain map_F_phi(const TruncatedAlgebra& A, const PWord& w) {
  const int N = A.N();
  const int n = degree_of_middle(w.middle.length(), N);
  if (n == 0) return QChain(QWord{w.left, {}, w.right});
  const int k = n / 2;
  return phi(A, n % 2 ? build_B_tilde(k, k * (N - 1), N) : build_A_tilde(k, k * (N - 1), N), w);
}

// G : Q -> P.
inline PChain map_G(const TruncatedAlgebra& A, const QWord& w) {
  const Quiver& q = A.quiver();
  const int N = A.N();
  const int n = w.degree();
  if (n == 0) return PChain(PWord{w.left, Path::vertex(w.left.dst), w.right});
  const int k = n / 2;
  const int first = n % 2 ? 1 : 0;
  for (int i = first; i + 1 < n; i += 2)
    if (A.mul(w.inner[i], w.inner[i + 1])) return {};
  Path v = w.inner.front();
  for (int i = 1; i < n; ++i) v = *concat(v, w.inner[i]);
  const int L = v.length();
  PChain base;
  if (n % 2 == 0) {
    if (L - k * N < N) base.add(PWord{Path::vertex(v.src), v.slice(q, 0, k * N), v.slice(q, k * N, L - k * N)}, 1);
  } else {
    for (int j = 1; j <= w.inner.front().length(); ++j) {
      const int rl = L - j - k * N;
      if (rl >= N) continue;
      base.add(PWord{v.slice(q, 0, j - 1), v.slice(q, j - 1, k * N + 1), v.slice(q, j + k * N, rl)}, 1);
    }
  }
  return act(A, w.left, base, w.right);
}

inline PChain map_G(const TruncatedAlgebra& A, const QChain& c) {
  return map_linear<QWord, PWord>(c, [&](const QWord& w) { return map_G(A, w); });
}

// ----------------------------------------------------------- verification

namespace detail {

struct CheckAcc {
  CheckResult c;
  CheckAcc(std::string name, int degree) : c{std::move(name), degree, true, 0, ""} {}
  void operator()(bool ok, const std::function<std::string()>& witness) {
    ++c.checked;
    if (!ok && c.pass) {
      c.pass = false;
      c.witness = witness();
    }
  }
};

// All compositions with `parts` parts: outer parts in [0,N), interior in [1,N).
inline std::vector<Composition> small_compositions(int parts, int N) {
  std::vector<Composition> out;
  Composition c{std::vector<int>(parts, 0)};
  std::function<void(int)> rec = [&](int i) {
    if (i == parts) {
      out.push_back(c);
      return;
    }
    const int lo = (i == 0 || i == parts - 1) ? 0 : 1;
    for (int x = lo; x < N; ++x) {
      c.parts[i] = x;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace detail

// Identities of the composition complex for k = 1..kmax and k(N-1) <= M <= Mmax.
inline Report verify_compositions(int N, int kmax, int Mmax) {
  if (N < 2) throw ValidationError("N must be at least 2");
  if (kmax < 1) throw ValidationError("kmax must be at least 1");
  Report rep;
  for (int parts = 2; parts <= 6; ++parts) {
    detail::CheckAcc acc("D^2 = 0", parts);
    for (const auto& c : detail::small_compositions(parts, N))
      acc(parts < 3 || comp_diff(comp_diff(c, N), N).empty(), [&] { return format_composition(c); });
    rep.checks.push_back(acc.c);
  }
  for (int k = 1; k <= kmax; ++k) {
    detail::CheckAcc vanish("A vanishes iff M > (k+1)(N-1)", k), b_is_1a("B = [1,A]", k),
        a_split("A = sum_j [j,B]", k), d_a("D(A) = -B", k), d_b("D(B) = A", k), d_bt("D(B~_M) = [1,A_M] - [0,A_M+1]", k),
        d_at("D(A~) = sum_j [j,B]", k), d2("D^2 = 0 on families", k);
    for (int M = k * (N - 1); M <= Mmax; ++M) {
      auto wit = [&] { return "k=" + std::to_string(k) + " M=" + std::to_string(M); };
      const auto a = build_A(k, M, N), b = build_B(k, M, N);
      const auto at = build_A_tilde(k, M, N), bt = build_B_tilde(k, M, N);
      vanish(a.empty() == (M > (k + 1) * (N - 1)), wit);
      b_is_1a(b == prepend(1, a, N), wit);
      CompositionSum split, split0;
      for (int j = 0; j < N; ++j) {
        auto t = prepend(j, build_B(k - 1, M - j, N), N);
        if (j > 0) split += t;
        split0 += t;
      }
      a_split(a == split, wit);
      d_a(comp_diff(a, N) == build_B(k - 1, M, N) * Rational(-1), wit);
      d_b(comp_diff(b, N) == build_A(k, M + 1, N), wit);
      d_bt(comp_diff(bt, N) == prepend(1, a, N) - prepend(0, build_A(k, M + 1, N), N), wit);
      d_at(comp_diff(at, N) == split0, wit);
      d2(comp_diff(comp_diff(a, N), N).empty() && comp_diff(comp_diff(b, N), N).empty() &&
             comp_diff(comp_diff(at, N), N).empty() && comp_diff(comp_diff(bt, N), N).empty(),
         wit);
    }
    for (auto* acc : {&vanish, &b_is_1a, &a_split, &d_a, &d_b, &d_bt, &d_at, &d2}) rep.checks.push_back(acc->c);
  }
  return rep;
}

// b phi_alpha = phi_{D alpha} for every reduced composition with n + 2 parts
// against every path of matching length.
inline CheckResult verify_phi(const TruncatedAlgebra& A, int n, std::size_t cap = kDefaultCap) {
  const Quiver& q = A.quiver();
  detail::CheckAcc acc("b phi = phi D", n);
  for (const auto& c : detail::small_compositions(n + 2, A.N())) {
    const auto dc = comp_diff(c, A.N());
    for (const auto& p : paths(q, c.total(), cap)) {
      if (acc.c.checked >= cap) throw ResourceLimit("phi check exceeds cap of " + std::to_string(cap));
      PWord w{Path::vertex(p.src), p, Path::vertex(p.dst)};
      acc(bar_diff(A, phi(A, c, w)) == phi(A, dc, w),
          [&] { return format_composition(c) + " on " + format_word(q, w); });
    }
  }
  return acc.c;
}

// Chain-map squares, G F = 1, the two constructions of F, and the composition identities.
inline Report verify_comparison(const TruncatedAlgebra& A, int max_degree, std::size_t cap = kDefaultCap) {
  if (max_degree < 1) throw ValidationError("max_degree must be at least 1");
  const Quiver& q = A.quiver();
  Report rep;
  for (int n = 0; n <= max_degree; ++n) {
    const auto pb = p_basis_reduced(A, n, cap);
    const auto qb = q_basis_reduced(A, n, cap);
    if (n >= 1) {
      rep.checks.push_back(detail::run_check("b F = F d", n, pb, [&](const PWord& w) {
        return bar_diff(A, map_F(A, w)) != map_F(A, min_diff(A, w));
      }, q));
      rep.checks.push_back(detail::run_check("d G = G b", n, qb, [&](const QWord& w) {
        return min_diff(A, map_G(A, w)) != map_G(A, bar_diff(A, w));
      }, q));
      rep.checks.push_back(verify_phi(A, n, cap));
    }
    rep.checks.push_back(detail::run_check("G F = 1", n, pb, [&](const PWord& w) {
      return map_G(A, map_F(A, w)) != PChain(w);
    }, q));
    rep.checks.push_back(detail::run_check("F = phi(A~ or B~)", n, pb, [&](const PWord& w) {
      return map_F(A, w) != map_F_phi(A, w);
    }, q));
  }
  const int kmax = std::max(1, (max_degree + 1) / 2);
  rep.append(verify_compositions(A.N(), kmax, (kmax + 2) * (A.N() - 1) + 1));
  return rep;
}

}  // namespace tqa
