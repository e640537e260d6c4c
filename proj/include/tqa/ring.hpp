#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "tqa/cohomology.hpp"
#include "tqa/comparison.hpp"

namespace tqa {

// ------------------------------------------------------ cochain products

namespace detail {

inline void require_degree(const DualCochain& f, const char* what) {
  if (f.degree < 0) throw ValidationError(std::string(what) + " has negative degree");
}

}  // namespace detail

// (alpha, pi) v (beta, tau) = (alpha beta, pi tau) unless both degrees are odd.
inline DualCochain cup_vee(const TruncatedAlgebra& A, const DualCochain& f, const DualCochain& g) {
  detail::require_degree(f, "left operand");
  detail::require_degree(g, "right operand");
  DualCochain out{f.degree + g.degree, {}};
  if (f.degree % 2 == 1 && g.degree % 2 == 1) return out;
  for (const auto& [p, a] : f.terms)
    for (const auto& [r, b] : g.terms) {
      if (p.second.dst != r.second.src) continue;
      auto ab = A.mul(p.first, r.first);
      if (!ab) continue;
      out.terms.add(ParallelPair{*ab, *concat(p.second, r.second)}, a * b);
    }
  return out;
}

// Cochain-level product on the minimal resolution. The odd.odd case sums over
// all mu = u pi g tau s with |u| + |g| + |s| = N - 2 and records u alpha g beta s.
inline DualCochain cup_cochain_full(const TruncatedAlgebra& A, const DualCochain& f, const DualCochain& g,
                                    std::size_t cap = kDefaultCap) {
  if (f.degree % 2 == 0 || g.degree % 2 == 0) return cup_vee(A, f, g);
  const Quiver& q = A.quiver();
  const int N = A.N();
  DualCochain out{f.degree + g.degree, {}};
  std::vector<std::vector<Path>> by_len;
  for (int len = 0; len <= N - 2; ++len) by_len.push_back(paths(q, len, cap));
  for (const auto& [p, a] : f.terms)
    for (const auto& [r, b] : g.terms) {
      if (p.first.length() + r.first.length() > 1) continue;
      for (int lu = 0; lu <= N - 2; ++lu)
        for (int lg = 0; lu + lg <= N - 2; ++lg) {
          const int ls = N - 2 - lu - lg;
          for (const auto& u : by_len[lu]) {
            if (u.dst != p.second.src) continue;
            for (const auto& gp : by_len[lg]) {
              if (gp.src != p.second.dst || gp.dst != r.second.src) continue;
              for (const auto& s : by_len[ls]) {
                if (s.src != r.second.dst) continue;
                Path mu = *concat(*concat(*concat(*concat(u, p.second), gp), r.second), s);
                Path gamma = *concat(*concat(*concat(*concat(u, p.first), gp), r.first), s);
                out.terms.add(ParallelPair{gamma, mu}, a * b);
              }
            }
          }
        }
    }
  return out;
}

// f applied to a chain of P: lambda (x) nu (x) rho goes to lambda f(nu) rho.
inline Element evaluate_on_P(const TruncatedAlgebra& A, const DualCochain& f, const PChain& x) {
  std::map<Path, std::vector<std::pair<Path, Rational>>> by_pi;
  for (const auto& [p, c] : f.terms) by_pi[p.second].emplace_back(p.first, c);
  Element out;
  for (const auto& [w, c] : x) {
    auto it = by_pi.find(w.middle);
    if (it == by_pi.end()) continue;
    for (const auto& [alpha, a] : it->second) {
      auto l = A.mul(w.left, alpha);
      if (!l) continue;
      if (auto g = A.mul(*l, w.right)) out.add(*g, c * a);
    }
  }
  return out;
}

// ---------------------------------------------------------- bar cochains

// A cochain on the reduced bar resolution, given by its values on words
// 1[a_1|...|a_n]1 (outer factors are vertices; degree 0 uses e[]e).
struct BarCochain {
  int degree = 0;
  std::function<Element(const QWord&)> eval;
};

namespace detail {

inline QWord bare(const Path& left, std::vector<Path> inner, const Path& right) {
  return {Path::vertex(left.dst), std::move(inner), Path::vertex(right.src)};
}

inline Element sandwich(const TruncatedAlgebra& A, const Path& l, const Element& x, const Path& r) {
  Element out;
  for (const auto& [p, c] : x) {
    auto lp = A.mul(l, p);
    if (!lp) continue;
    if (auto g = A.mul(*lp, r)) out.add(*g, c);
  }
  return out;
}

}  // namespace detail

// f o G.
inline BarCochain bar_pullback(const TruncatedAlgebra& A, const DualCochain& f) {
  return {f.degree, [&A, f](const QWord& w) { return evaluate_on_P(A, f, map_G(A, w)); }};
}

// h o F written in the pair basis.
inline DualCochain bar_pushforward(const TruncatedAlgebra& A, const BarCochain& h, std::size_t cap = kDefaultCap) {
  DualCochain out{h.degree, {}};
  for (const auto& mu : paths(A.quiver(), middle_length(h.degree, A.N()), cap)) {
    QChain image = map_F(A, PWord{Path::vertex(mu.src), mu, Path::vertex(mu.dst)});
    for (const auto& [w, c] : image) {
      Element v = detail::sandwich(A, w.left, h.eval(detail::bare(w.left, w.inner, w.right)), w.right);
      for (const auto& [gamma, a] : v) out.terms.add(ParallelPair{gamma, mu}, c * a);
    }
  }
  return out;
}

// (h1 u h2)[a_1|...|a_n] = h1[a_1|...|a_n1] h2[a_n1+1|...|a_n].
inline BarCochain bar_cup(const TruncatedAlgebra& A, const BarCochain& h1, const BarCochain& h2) {
  return {h1.degree + h2.degree, [&A, h1, h2](const QWord& w) {
            const auto split = w.inner.begin() + h1.degree;
            Path mid = h1.degree > 0 ? Path::vertex(w.inner[h1.degree - 1].dst) : w.left;
            QWord lw{w.left, std::vector<Path>(w.inner.begin(), split), mid};
            QWord rw{mid, std::vector<Path>(split, w.inner.end()), w.right};
            return A.multiply(h1.eval(lw), h2.eval(rw));
          }};
}

inline DualCochain cup_bar_route(const TruncatedAlgebra& A, const DualCochain& f, const DualCochain& g,
                                 std::size_t cap = kDefaultCap) {
  return bar_pushforward(A, bar_cup(A, bar_pullback(A, f), bar_pullback(A, g)), cap);
}

// (delta h)(w) = h(b w).
inline Element bar_coboundary_value(const TruncatedAlgebra& A, const BarCochain& h, const QWord& w) {
  if (w.degree() != h.degree + 1) throw ValidationError("word degree does not match coboundary degree");
  Element out;
  for (const auto& [t, c] : bar_diff(A, w))
    out += detail::sandwich(A, t.left, h.eval(detail::bare(t.left, t.inner, t.right)), t.right) * c;
  return out;
}

inline bool bar_is_cocycle(const TruncatedAlgebra& A, const BarCochain& h, std::size_t cap = kDefaultCap) {
  for (const auto& w : q_basis_reduced(A, h.degree + 1, cap))
    if (!bar_coboundary_value(A, h, w).empty()) return false;
  return true;
}

// beta on words whose odd-even adjacent products vanish and whose
// concatenation is tau; zero elsewhere.
inline BarCochain bar_cocycle_from_pair(const TruncatedAlgebra& A, const ParallelPair& pair, int k) {
  if (k < 1) throw ValidationError("k must be positive");
  if (pair.first.length() != A.N() - 1 || pair.second.length() != k * A.N())
    throw ValidationError("pair must lie in Delta_{N-1} || Delta_{kN}");
  if (starts_together(pair) || ends_together(pair))
    throw ValidationError("pair starts or ends together");
  return {2 * k, [&A, pair](const QWord& w) {
            for (std::size_t i = 0; i + 1 < w.inner.size(); i += 2)
              if (A.mul(w.inner[i], w.inner[i + 1])) return Element{};
            Path cat = w.inner.front();
            for (std::size_t i = 1; i < w.inner.size(); ++i) cat = *concat(cat, w.inner[i]);
            return cat == pair.second ? Element(pair.first) : Element{};
          }};
}

// Bar cocycles of k[x]/(x^N) on the one-loop quiver (vertex 0, arrow 0).
// The odd family carries the factor r_1 so that f_{1,1} is the Euler derivation.
inline BarCochain poly_cochain(int n, int i, int N) {
  if (N < 2) throw ValidationError("truncation N must be at least 2");
  if (n < 0) throw ValidationError("degree must be non-negative");
  if (n % 2 == 0 ? (i < 0 || i > N - 1) : (i < 1 || i > N - 1))
    throw ValidationError("index " + std::to_string(i) + " out of range for degree " + std::to_string(n));
  const int k = n / 2;
  return {n, [n, i, N, k](const QWord& w) {
            std::vector<int> r;
            int total = 0;
            for (const auto& p : w.inner) {
              r.push_back(p.length());
              total += p.length();
            }
            const int first_gate = n % 2 == 0 ? 0 : 1;
            for (int j = 0; j < k; ++j)
              if (r[first_gate + 2 * j] + r[first_gate + 2 * j + 1] < N) return Element{};
            int e = i + total - k * N - (n % 2);
            Rational c = n % 2 == 0 ? Rational(1) : Rational(r[0]);
            if (e >= N) return Element{};
            return Element(Path{0, 0, std::vector<int>(e, 0)}, c);
          }};
}

// --------------------------------------------------------------- oracle

// Hom over Delta_0^e from the reduced bar complex to A, independent of P, F and G.
class BarComplex {
 public:
  struct Basis {
    std::vector<std::pair<std::vector<Path>, Path>> cells;  // (word, beta)
    std::map<std::vector<Path>, std::vector<std::size_t>> by_word;
  };

  explicit BarComplex(const TruncatedAlgebra& A, std::size_t cap = kDefaultCap) : A_(A), cap_(cap) {
    for (const auto& p : A_.basis(cap_)) between_[{p.src, p.dst}].push_back(p);
  }

  const Basis& basis(int n) {
    auto it = bases_.find(n);
    if (it != bases_.end()) return it->second;
    Basis b;
    for (const auto& w : q_basis_reduced(A_, n, cap_)) {
      auto range = between_.find({w.left.src, w.right.dst});
      if (range == between_.end()) continue;
      for (const auto& beta : range->second) {
        if (b.cells.size() >= cap_) throw ResourceLimit("bar cochain basis exceeds cap of " + std::to_string(cap_));
        b.by_word[w.inner].push_back(b.cells.size());
        b.cells.emplace_back(w.inner, beta);
      }
    }
    return bases_.emplace(n, std::move(b)).first->second;
  }

  // delta_n : C^n -> C^{n+1}, assembled one target word at a time.
  Matrix coboundary(int n) {
    const Basis& src = basis(n);
    const Basis& tgt = basis(n + 1);
    std::map<std::pair<std::vector<Path>, Path>, std::size_t> row_of;
    for (std::size_t r = 0; r < tgt.cells.size(); ++r) row_of.emplace(tgt.cells[r], r);
    Matrix m(tgt.cells.size(), src.cells.size());
    for (const auto& w : q_basis_reduced(A_, n + 1, cap_)) {
      for (const auto& [t, c] : bar_diff(A_, w)) {
        auto cols = src.by_word.find(t.inner);
        if (cols == src.by_word.end()) continue;
        for (std::size_t col : cols->second) {
          const Path& beta = src.cells[col].second;
          if (n == 0 && beta.src != t.left.dst) continue;
          auto l = A_.mul(t.left, beta);
          if (!l) continue;
          auto gamma = A_.mul(*l, t.right);
          if (!gamma) continue;
          m.add(row_of.at({w.inner, *gamma}), col, c);
        }
      }
    }
    return m;
  }

  std::size_t dimension(int n) {
    std::size_t d = basis(n).cells.size();
    std::size_t r_out = rank(coboundary(n));
    std::size_t r_in = n > 0 ? rank(coboundary(n - 1)) : 0;
    return d - r_out - r_in;
  }

 private:
  TruncatedAlgebra A_;
  std::size_t cap_;
  std::map<std::pair<int, int>, std::vector<Path>> between_;
  std::map<int, Basis> bases_;
};

inline std::size_t bar_cohomology_oracle(const TruncatedAlgebra& A, int n, std::size_t cap = kDefaultCap) {
  if (n < 0) throw ValidationError("degree must be non-negative");
  BarComplex bc(A, cap);
  return bc.dimension(n);
}

// ---------------------------------------------------------------- center

// Elements commuting with every vertex and arrow, by brute force.
inline std::vector<Element> center_basis(const TruncatedAlgebra& A) {
  const auto B = A.basis();
  std::map<Path, std::size_t> idx;
  for (std::size_t i = 0; i < B.size(); ++i) idx.emplace(B[i], i);
  std::vector<Path> gens;
  const Quiver& q = A.quiver();
  for (int v = 0; v < q.num_vertices(); ++v) gens.push_back(Path::vertex(v));
  for (int a = 0; a < q.num_arrows(); ++a) gens.push_back(detail::arrow_path(q, a));
  Matrix m(B.size() * gens.size(), B.size());
  for (std::size_t g = 0; g < gens.size(); ++g)
    for (std::size_t j = 0; j < B.size(); ++j) {
      if (auto p = A.mul(B[j], gens[g])) m.add(g * B.size() + idx.at(*p), j, 1);
      if (auto p = A.mul(gens[g], B[j])) m.add(g * B.size() + idx.at(*p), j, -1);
    }
  std::vector<Element> out;
  for (const auto& k : kernel_basis(m)) {
    Element e;
    for (const auto& [j, c] : k) e.add(B[j], c);
    out.push_back(std::move(e));
  }
  return out;
}

// A degree-0 cochain as an element of A: sum of c * alpha.
inline Element as_element(const DualCochain& f) {
  if (f.degree != 0) throw ValidationError("only degree-0 cochains are elements");
  Element e;
  for (const auto& [p, c] : f.terms) e.add(p.first, c);
  return e;
}

// --------------------------------------------------------- class product

// Product of two cocycles, reduced to the representative basis.
inline DualCochain cup(Cohomology& H, const DualCochain& f, const DualCochain& g) {
  if (!H.is_cocycle(f)) throw ValidationError("left operand is not a cocycle");
  if (!H.is_cocycle(g)) throw ValidationError("right operand is not a cocycle");
  DualCochain v = cup_vee(H.algebra(), f, g);
  v.degree = f.degree + g.degree;
  return H.canonical(v);
}

// ----------------------------------------------------------------- checks

// Complex-level properties: both coboundary constructions, delta^2, the
// injectivity of the D_0 blocks, the medal-kernel law, H^n_0 and the center.
inline Report cohomology_checks(const TruncatedAlgebra& A, int max_degree, std::size_t cap = kDefaultCap) {
  if (max_degree < 1) throw ValidationError("max degree must be at least 1");
  Cohomology H(A, cap);
  CochainComplex& cx = H.complex();
  const Quiver& q = A.quiver();
  const int N = A.N();
  const auto flags = structure_flags(q);
  Report rep;
  for (int n = 0; n <= max_degree; ++n) {
    detail::CheckAcc same("fast coboundary = dualized d", n);
    const Matrix& fast = cx.coboundary(n);
    Matrix slow = cx.coboundary_dual(n);
    same(fast == slow, [&] { return "matrices differ in degree " + std::to_string(n); });
    rep.checks.push_back(same.c);

    detail::CheckAcc sq("delta^2 = 0", n);
    Matrix prod = cx.coboundary(n + 1) * cx.coboundary(n);
    sq(prod.nonzeros() == 0, [&] { return "nonzero composite in degree " + std::to_string(n); });
    rep.checks.push_back(sq.c);

    if (n % 2 == 1 || (n > 0 && !flags.is_oriented_cycle)) {
      detail::CheckAcc inj("D_0 injective", n);
      Matrix b = cx.block(n, 0, n % 2 == 1 ? N - 1 : 1);
      inj(rank(b) == b.cols(), [&] { return "rank " + std::to_string(rank(b)) + " < " + std::to_string(b.cols()); });
      rep.checks.push_back(inj.c);
    }

    if (n >= 2 && n % 2 == 0) {
      detail::CheckAcc law("medal-kernel law", n);
      for (int j = 1; j <= N - 2; ++j) {
        Matrix b = cx.block(n, j, j + 1);
        auto ker = kernel_basis(b);
        auto classes = medal_classes(q, j, middle_length(n, N), cap);
        const auto& B = cx.basis(n);
        Echelon span(b.cols());
        std::size_t medals = 0;
        bool in_kernel = true;
        for (const auto& mc : classes) {
          if (!mc.is_medal) continue;
          ++medals;
          SparseVec v;
          for (const auto& p : mc.members) v.emplace(*B.index(p) - B.row_begin(j), Rational(1));
          in_kernel = in_kernel && b.apply(v).empty();
          span.insert(v);
        }
        law(medals == ker.size() && in_kernel && span.rank() == ker.size(), [&] {
          return "row " + std::to_string(j) + ": kernel " + std::to_string(ker.size()) + ", medals " +
                 std::to_string(medals);
        });
      }
      rep.checks.push_back(law.c);
    }

    if (n >= 1 && !flags.is_oriented_cycle) {
      detail::CheckAcc zero("H^n_0 = 0", n);
      zero(H.space(n).row_dims[0] == 0, [&] { return "dim " + std::to_string(H.space(n).row_dims[0]); });
      rep.checks.push_back(zero.c);
    }
  }

  detail::CheckAcc center("H^0 = center", 0);
  const auto Z = center_basis(A);
  const auto& h0 = H.space(0);
  Echelon zspan(A.basis(cap).size());
  std::map<Path, std::size_t> idx;
  {
    auto B = A.basis(cap);
    for (std::size_t i = 0; i < B.size(); ++i) idx.emplace(B[i], i);
  }
  auto to_vec = [&](const Element& e) {
    SparseVec v;
    for (const auto& [p, c] : e) v.emplace(idx.at(p), c);
    return v;
  };
  for (const auto& z : Z) zspan.insert(to_vec(z));
  center(Z.size() == h0.total(), [&] {
    return "center " + std::to_string(Z.size()) + " vs H^0 " + std::to_string(h0.total());
  });
  for (const auto& r : h0.reps)
    center(zspan.contains(to_vec(as_element(r))), [&] { return format_cochain(q, r); });
  rep.checks.push_back(center.c);
  return rep;
}

// Ring-level properties on the computed representatives.
inline Report ring_checks(const TruncatedAlgebra& A, int max_degree, std::size_t cap = kDefaultCap) {
  if (max_degree < 2) throw ValidationError("max degree must be at least 2");
  Cohomology H(A, cap);
  const Quiver& q = A.quiver();
  const int N = A.N();
  const auto flags = structure_flags(q);
  // On an oriented cycle the row-0 classes are not nilpotent; they are left
  // out of the nilpotency and medal checks.
  auto usable = [&](int row) { return !flags.is_oriented_cycle || row > 0; };

  struct Rep {
    DualCochain f;
    int row;
  };
  std::vector<Rep> reps;
  for (int n = 1; n <= max_degree; ++n) {
    const auto& sp = H.space(n);
    for (std::size_t r = 0; r < sp.total(); ++r) reps.push_back({sp.reps[r], sp.rep_rows[r]});
  }
  auto name = [&](const DualCochain& f) { return "[" + format_cochain(q, f) + "]"; };

  Report rep;
  detail::CheckAcc odd("odd.odd = 0", max_degree);
  detail::CheckAcc comm("graded commutativity", max_degree);
  detail::CheckAcc trivial("positive products vanish", max_degree);
  detail::CheckAcc medal("nonzero product has a medal factor", max_degree);
  const bool expect_trivial = flags.is_acyclic || (!flags.has_sink && !flags.has_source && !flags.is_oriented_cycle);
  for (const auto& a : reps)
    for (const auto& b : reps) {
      if (a.f.degree + b.f.degree > max_degree) continue;
      DualCochain ab = cup(H, a.f, b.f);
      const bool zero = ab.empty();
      auto pair = [&] { return name(a.f) + " u " + name(b.f); };
      if (a.f.degree % 2 == 1 && b.f.degree % 2 == 1) odd(zero, pair);
      DualCochain ba = cup(H, b.f, a.f);
      Rational sign = (a.f.degree * b.f.degree) % 2 == 0 ? 1 : -1;
      comm(ab == ba * sign, pair);
      if (expect_trivial) trivial(zero, pair);
      if (!zero && usable(a.row) && usable(b.row))
        medal(H.is_medal_combination(a.f) || H.is_medal_combination(b.f), pair);
    }
  rep.checks.push_back(odd.c);
  rep.checks.push_back(comm.c);
  if (expect_trivial) rep.checks.push_back(trivial.c);
  rep.checks.push_back(medal.c);

  // N-fold products, extended one factor at a time and pruned at zero.
  detail::CheckAcc nfold("N-fold products vanish", max_degree);
  std::vector<std::size_t> pool;
  for (std::size_t r = 0; r < reps.size(); ++r)
    if (usable(reps[r].row)) pool.push_back(r);
  std::function<void(std::size_t, int, const DualCochain&, std::string)> grow =
      [&](std::size_t from, int count, const DualCochain& acc, std::string trail) {
        if (acc.empty()) {
          nfold(true, [] { return std::string(); });
          return;
        }
        if (count == N) {
          nfold(false, [&] { return trail; });
          return;
        }
        for (std::size_t t = from; t < pool.size(); ++t)
          grow(t, count + 1, cup(H, acc, reps[pool[t]].f), trail + " u " + name(reps[pool[t]].f));
      };
  for (std::size_t t = 0; t < pool.size(); ++t) grow(t, 1, reps[pool[t]].f, name(reps[pool[t]].f));
  rep.checks.push_back(nfold.c);

  detail::CheckAcc power("class^N = 0", max_degree);
  std::vector<DualCochain> targets;
  for (const auto& r : pool) targets.push_back(reps[r].f);
  for (int n = 1; n <= max_degree; ++n) {
    DualCochain sum{n, {}};
    for (const auto& r : pool)
      if (reps[r].f.degree == n) sum += reps[r].f;
    if (!sum.empty()) targets.push_back(sum);
  }
  for (const auto& f : targets) {
    DualCochain p = f;
    for (int t = 1; t < N && !p.empty(); ++t) p = cup(H, p, f);
    power(p.empty(), [&] { return name(f); });
  }
  rep.checks.push_back(power.c);
  return rep;
}

}  // namespace tqa
