#pragma once

// The three-vertex quiver v1 -a-> v2 -b-> v3 with a loop x at v2: the displayed
// row order for its coboundary blocks, the omega classes and the basis table.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tqa/builtins.hpp"
#include "tqa/cohomology.hpp"

namespace tqa::ex83 {

inline constexpr int kA = 0, kX = 1, kB = 2;
inline constexpr int kV1 = 0, kV2 = 1, kV3 = 2;

// a^{ha} x^p b^{hb}; with no arrows this is v2, or v1/v3 when asked for.
inline Path word(bool ha, int p, bool hb) {
  std::vector<int> seq;
  if (ha) seq.push_back(kA);
  seq.insert(seq.end(), p, kX);
  if (hb) seq.push_back(kB);
  if (seq.empty()) return Path::vertex(kV2);
  const int src = ha ? kV1 : kV2, dst = hb ? kV3 : kV2;
  return Path{src, dst, seq};
}

// Position of alpha within its row in the displayed order:
// vertices v1, v2, v3; then a x^{j-1}, x^j, x^{j-1} b, a x^{j-2} b.
inline int display_position(const Path& alpha) {
  if (alpha.is_vertex()) return alpha.src;
  const bool ha = alpha.arrows.front() == kA, hb = alpha.arrows.back() == kB;
  if (ha && hb) return 3;
  if (ha) return 0;
  if (hb) return 2;
  return 1;
}

// The unique pi of length M parallel to alpha, if any.
inline std::optional<Path> partner(const Path& alpha, int M) {
  if (alpha.is_vertex()) {
    if (alpha.src == kV2) return word(false, M, false);
    if (M == 0) return alpha;
    return std::nullopt;
  }
  const bool ha = alpha.arrows.front() == kA, hb = alpha.arrows.back() == kB;
  const int p = M - ha - hb;
  if (p < 0) return std::nullopt;
  return word(ha, p, hb);
}

// Row indices of basis(n) restricted to `row`, in displayed order.
inline std::vector<std::size_t> display_order(const PairBasis& B, int row) {
  std::vector<std::size_t> idx;
  for (std::size_t i = B.row_begin(row); i < B.row_end(row); ++i) idx.push_back(i);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t l, std::size_t r) {
    return display_position(B.at(l).first) < display_position(B.at(r).first);
  });
  return idx;
}

// Block of delta_n from row i to row t with rows and columns in displayed order.
inline Matrix display_block(CochainComplex& cx, int n, int i, int t) {
  return cx.coboundary(n).submatrix(display_order(cx.basis(n + 1), t), display_order(cx.basis(n), i));
}

struct Term {
  Rational coeff;
  Path alpha;
};

// sum c (alpha, pi) in degree n, dropping terms without a partner.
inline DualCochain cochain(int n, int N, const std::vector<Term>& terms) {
  DualCochain f{n, {}};
  const int M = middle_length(n, N);
  for (const auto& t : terms)
    if (t.alpha.length() < N)
      if (auto pi = partner(t.alpha, M)) f.terms.add(ParallelPair{t.alpha, *pi}, t.coeff);
  return f;
}

// Terms a x^{j-1} + x^j (+ x^{j-1} b + a x^{j-2} b when n is even), absent ones dropped.
inline DualCochain omega(int n, int j, int N) {
  if (n < 1 || j < 1 || j > N - 1) throw ValidationError("omega needs n >= 1 and 1 <= j <= N-1");
  std::vector<Term> t{{1, word(true, j - 1, false)}, {1, word(false, j, false)}};
  if (n % 2 == 0) {
    t.push_back({1, word(false, j - 1, true)});
    if (j >= 2) t.push_back({1, word(true, j - 2, true)});
  }
  return cochain(n, N, t);
}

struct TableCell {
  int row = 0;
  std::vector<DualCochain> cocycles;
  std::vector<DualCochain> coboundaries;
};

// Listed basis elements and coboundaries of H^n, one cell per row.
inline std::vector<TableCell> table(int n, int N) {
  if (N < 3) throw ValidationError("the table needs N >= 3");
  auto ax = [](int p) { return word(true, p, false); };
  auto x = [](int p) { return word(false, p, false); };
  auto xb = [](int p) { return word(false, p, true); };
  auto axb = [](int p) { return word(true, p, true); };
  auto c = [&](std::vector<Term> t) { return cochain(n, N, t); };
  std::vector<TableCell> out;
  if (n == 0) {
    out.push_back({0, {c({{1, Path::vertex(kV1)}, {1, Path::vertex(kV2)}, {1, Path::vertex(kV3)}})}, {}});
    out.push_back({N - 1, {c({{1, x(N - 1)}})}, {}});
  } else if (n == 1) {
    out.push_back({1, {c({{1, x(1)}, {1, ax(0)}})}, {c({{1, ax(0)}}), c({{1, xb(0)}})}});
    for (int j = 2; j <= N - 1; ++j)
      out.push_back({j, {c({{1, x(j)}, {1, ax(j - 1)}}), c({{1, ax(j - 1)}})}, {c({{1, ax(j - 1)}, {-1, xb(j - 1)}})}});
  } else if (n % 2 == 0) {
    out.push_back({1, {omega(n, 1, N)}, {}});
    for (int j = 2; j <= N - 2; ++j) out.push_back({j, {omega(n, j, N), c({{1, axb(j - 2)}})}, {}});
    out.push_back({N - 1,
                   {omega(n, N - 1, N), c({{1, axb(N - 3)}}), c({{1, x(N - 1)}})},
                   {c({{N - 1, ax(N - 2)}, {N, x(N - 1)}, {N - 1, xb(N - 2)}, {N - 2, axb(N - 3)}})}});
  } else {
    out.push_back({1, {c({{1, x(1)}, {1, ax(0)}}), c({{1, ax(0)}})}, {c({{1, ax(0)}, {-1, xb(0)}})}});
    for (int j = 2; j <= N - 1; ++j)
      out.push_back({j,
                     {c({{1, x(j)}, {1, ax(j - 1)}}), c({{1, ax(j - 1)}})},
                     {c({{1, ax(j - 1)}, {1, axb(j - 2)}}), c({{1, xb(j - 1)}, {1, axb(j - 2)}})}});
  }
  return out;
}

}  // namespace tqa::ex83
