#pragma once

#include <algorithm>
#include <cctype>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tqa/algebra.hpp"
#include "tqa/errors.hpp"
#include "tqa/linalg.hpp"
#include "tqa/resolutions.hpp"

namespace tqa {

// ------------------------------------------------------------- cochains

// A cochain on P_n written in the basis of parallel pairs (alpha, pi): the map
// sending pi to alpha and every other path of length m(n) to zero.
struct DualCochain {
  int degree = 0;
  LinComb<ParallelPair> terms;

  bool empty() const { return terms.empty(); }
  bool operator==(const DualCochain& o) const { return degree == o.degree && terms == o.terms; }
  DualCochain& operator+=(const DualCochain& o) {
    if (!o.empty() && !empty() && o.degree != degree) throw ValidationError("adding cochains of different degrees");
    if (empty()) degree = o.degree;
    terms += o.terms;
    return *this;
  }
  DualCochain operator+(const DualCochain& o) const { return DualCochain(*this) += o; }
  DualCochain operator-(const DualCochain& o) const { return *this + o * Rational(-1); }
  DualCochain operator*(const Rational& c) const { return {degree, terms * c}; }
};

inline int row_of(const ParallelPair& p) { return p.first.length(); }

inline std::string format_pair(const Quiver& q, const ParallelPair& p) {
  return "(" + format_path(q, p.first) + "," + format_path(q, p.second) + ")";
}

// "c:(alpha,pi) + ..." with the coefficient always written.
inline std::string format_cochain(const Quiver& q, const DualCochain& f) {
  if (f.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [p, c] : f.terms) {
    if (!first) s += " + ";
    first = false;
    s += to_string(c) + ":" + format_pair(q, p);
  }
  return s;
}

// Parses "c:(alpha,pi) + ..."; a missing coefficient means 1. The degree is
// read off |pi|.
inline DualCochain parse_cochain(const Quiver& q, int N, const std::string& text) {
  DualCochain f;
  std::optional<int> degree;
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  bool any = false;
  while (true) {
    skip();
    if (pos >= text.size()) break;
    std::size_t open = text.find('(', pos);
    std::size_t close = text.find(')', pos);
    if (open == std::string::npos || close == std::string::npos || close < open)
      throw ValidationError("malformed class expression near '" + text.substr(pos) + "'");
    std::string head = text.substr(pos, open - pos);
    Rational coeff = 1;
    if (auto colon = head.find(':'); colon != std::string::npos) {
      std::string c = head.substr(0, colon);
      c.erase(std::remove_if(c.begin(), c.end(), [](unsigned char ch) { return std::isspace(ch); }), c.end());
      if (head.find_first_not_of(" \t", colon + 1) != std::string::npos)
        throw ValidationError("unexpected text before '(' in class expression");
      coeff = parse_rational(c);
    } else if (head.find_first_not_of(" \t") != std::string::npos) {
      throw ValidationError("unexpected text '" + head + "' in class expression");
    }
    std::string inner = text.substr(open + 1, close - open - 1);
    auto comma = inner.find(',');
    if (comma == std::string::npos) throw ValidationError("pair needs two paths: '(" + inner + ")'");
    auto trim = [](std::string s) {
      s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char ch) { return std::isspace(ch); }), s.end());
      return s;
    };
    Path alpha = parse_path(q, trim(inner.substr(0, comma)));
    Path pi = parse_path(q, trim(inner.substr(comma + 1)));
    if (alpha.src != pi.src || alpha.dst != pi.dst)
      throw ValidationError("paths in (" + inner + ") are not parallel");
    if (alpha.length() >= N) throw ValidationError("first path of (" + inner + ") is zero in the algebra");
    int n = degree_of_middle(pi.length(), N);
    if (degree && *degree != n) throw ValidationError("class expression mixes degrees");
    degree = n;
    f.terms.add(ParallelPair{alpha, pi}, coeff);
    any = true;
    pos = close + 1;
    skip();
    if (pos >= text.size()) break;
    if (text[pos] != '+') throw ValidationError("expected '+' between terms of a class expression");
    ++pos;
  }
  if (!any) throw ValidationError("empty class expression");
  f.degree = *degree;
  return f;
}

// ---------------------------------------------------------------- bases

// Parallel pairs Delta_i || Delta_m(n), row-major in i = 0..N-1.
class PairBasis {
 public:
  PairBasis() = default;
  PairBasis(const Quiver& q, int N, int degree, std::size_t cap = kDefaultCap) : degree_(degree) {
    const int m = middle_length(degree, N);
    starts_.push_back(0);
    for (int i = 0; i < N; ++i) {
      for (auto& p : parallel_pairs(q, i, m, cap)) {
        if (pairs_.size() >= cap) throw ResourceLimit("pair basis exceeds cap of " + std::to_string(cap));
        index_.emplace(p, pairs_.size());
        by_second_[p.second].push_back(pairs_.size());
        pairs_.push_back(std::move(p));
      }
      starts_.push_back(pairs_.size());
    }
  }

  int degree() const { return degree_; }
  std::size_t size() const { return pairs_.size(); }
  int rows() const { return static_cast<int>(starts_.size()) - 1; }
  const ParallelPair& at(std::size_t i) const { return pairs_.at(i); }
  const std::vector<ParallelPair>& pairs() const { return pairs_; }
  std::size_t row_begin(int i) const { return starts_.at(i); }
  std::size_t row_end(int i) const { return starts_.at(i + 1); }
  std::size_t row_size(int i) const { return row_end(i) - row_begin(i); }
  int row_of_index(std::size_t idx) const {
    return static_cast<int>(std::upper_bound(starts_.begin(), starts_.end(), idx) - starts_.begin()) - 1;
  }

  std::optional<std::size_t> index(const ParallelPair& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  const std::vector<std::size_t>& with_second(const Path& pi) const {
    static const std::vector<std::size_t> none;
    auto it = by_second_.find(pi);
    return it == by_second_.end() ? none : it->second;
  }

  SparseVec to_vec(const DualCochain& f) const {
    if (!f.empty() && f.degree != degree_) throw ValidationError("cochain degree does not match basis");
    SparseVec v;
    for (const auto& [p, c] : f.terms) {
      auto i = index(p);
      if (!i) throw ValidationError("pair is not a basis element in degree " + std::to_string(degree_));
      v.emplace(*i, c);
    }
    return v;
  }
  DualCochain from_vec(const SparseVec& v) const {
    DualCochain f{degree_, {}};
    for (const auto& [i, c] : v) f.terms.add(pairs_.at(i), c);
    return f;
  }

 private:
  int degree_ = 0;
  std::vector<ParallelPair> pairs_;
  std::vector<std::size_t> starts_;
  std::map<ParallelPair, std::size_t> index_;
  std::map<Path, std::vector<std::size_t>> by_second_;
};

// ------------------------------------------------------------- complex

namespace detail {

inline Path arrow_path(const Quiver& q, int a) { return Path{q.arrow(a).source, q.arrow(a).target, {a}}; }

}  // namespace detail

// Hom(P, A) in the pair basis, with lazily built bases and coboundary matrices.
class CochainComplex {
 public:
  explicit CochainComplex(TruncatedAlgebra A, std::size_t cap = kDefaultCap) : A_(std::move(A)), cap_(cap) {}

  const TruncatedAlgebra& algebra() const { return A_; }
  const Quiver& quiver() const { return A_.quiver(); }
  int N() const { return A_.N(); }
  std::size_t cap() const { return cap_; }

  const PairBasis& basis(int n) {
    if (n < 0) throw ValidationError("degree must be non-negative");
    auto it = bases_.find(n);
    if (it == bases_.end()) it = bases_.emplace(n, PairBasis(quiver(), N(), n, cap_)).first;
    return it->second;
  }

  // The explicit row formulas: even degrees push row j to row j + 1, odd
  // degrees send row 0 to row N-1.
  LinComb<ParallelPair> apply_pair(int n, const ParallelPair& p) {
    const Quiver& q = quiver();
    const int i = row_of(p);
    LinComb<ParallelPair> out;
    if (n % 2 == 0) {
      if (i > N() - 2) return out;
      for (int a : q.in_arrows(p.first.src)) {
        Path ap = detail::arrow_path(q, a);
        out.add(ParallelPair{*concat(ap, p.first), *concat(ap, p.second)}, 1);
      }
      for (int b : q.out_arrows(p.first.dst)) {
        Path bp = detail::arrow_path(q, b);
        out.add(ParallelPair{*concat(p.first, bp), *concat(p.second, bp)}, -1);
      }
    } else if (i == 0) {
      const int v = p.first.src;
      for (int len = 0; len < N(); ++len)
        for (const auto& a : paths_into(v, len))
          for (const auto& b : paths_from(v, N() - 1 - len))
            out.add(ParallelPair{*concat(a, b), *concat(*concat(a, p.second), b)}, 1);
    }
    return out;
  }

  DualCochain apply(const DualCochain& f) {
    DualCochain out{f.degree + 1, {}};
    for (const auto& [p, c] : f.terms) out.terms.add(apply_pair(f.degree, p), c);
    return out;
  }

  // delta_n : C^n -> C^{n+1}; columns index the degree-n basis.
  const Matrix& coboundary(int n) {
    auto it = fast_.find(n);
    if (it != fast_.end()) return it->second;
    const auto& src = basis(n);
    const auto& tgt = basis(n + 1);
    Matrix m(tgt.size(), src.size());
    for (std::size_t j = 0; j < src.size(); ++j)
      for (const auto& [p, c] : apply_pair(n, src.at(j))) m.add(*tgt.index(p), j, c);
    return fast_.emplace(n, std::move(m)).first->second;
  }

  // The same map obtained by composing with d_{n+1} on every generator 1(x)mu(x)1.
  Matrix coboundary_dual(int n) {
    const auto& src = basis(n);
    const auto& tgt = basis(n + 1);
    Matrix m(tgt.size(), src.size());
    for (const auto& w : p_basis_reduced(A_, n + 1, cap_)) {
      for (const auto& [t, c] : min_diff(A_, w)) {
        for (std::size_t j : src.with_second(t.middle)) {
          auto l = A_.mul(t.left, src.at(j).first);
          if (!l) continue;
          auto g = A_.mul(*l, t.right);
          if (!g) continue;
          auto row = tgt.index(ParallelPair{*g, w.middle});
          if (!row) throw ValidationError("internal: product left the pair basis");
          m.add(*row, j, c);
        }
      }
    }
    return m;
  }

  // Block of delta_n from source row i to target row t.
  Matrix block(int n, int i, int t) {
    const auto& src = basis(n);
    const auto& tgt = basis(n + 1);
    std::vector<std::size_t> rs, cs;
    for (std::size_t r = tgt.row_begin(t); r < tgt.row_end(t); ++r) rs.push_back(r);
    for (std::size_t c = src.row_begin(i); c < src.row_end(i); ++c) cs.push_back(c);
    return coboundary(n).submatrix(rs, cs);
  }

  const std::vector<Path>& paths_from(int v, int len) { return endpoint_paths(len).first[v]; }
  const std::vector<Path>& paths_into(int v, int len) { return endpoint_paths(len).second[v]; }

 private:
  using Split = std::pair<std::vector<std::vector<Path>>, std::vector<std::vector<Path>>>;
  const Split& endpoint_paths(int len) {
    auto it = by_len_.find(len);
    if (it != by_len_.end()) return it->second;
    Split s{std::vector<std::vector<Path>>(quiver().num_vertices()),
            std::vector<std::vector<Path>>(quiver().num_vertices())};
    for (const auto& p : paths(quiver(), len, cap_)) {
      s.first[p.src].push_back(p);
      s.second[p.dst].push_back(p);
    }
    return by_len_.emplace(len, std::move(s)).first->second;
  }

  TruncatedAlgebra A_;
  std::size_t cap_;
  std::map<int, PairBasis> bases_;
  std::map<int, Matrix> fast_;
  std::map<int, Split> by_len_;
};

inline Matrix dual_diff_matrix(const TruncatedAlgebra& A, int n, std::size_t cap = kDefaultCap) {
  CochainComplex cx(A, cap);
  return cx.coboundary(n);
}

inline Matrix dual_diff_matrix_mechanical(const TruncatedAlgebra& A, int n, std::size_t cap = kDefaultCap) {
  CochainComplex cx(A, cap);
  return cx.coboundary_dual(n);
}

// --------------------------------------------------------------- medals

inline bool starts_together(const ParallelPair& p) {
  return !p.first.is_vertex() && !p.second.is_vertex() && p.first.arrows.front() == p.second.arrows.front();
}

inline bool ends_together(const ParallelPair& p) {
  return !p.first.is_vertex() && !p.second.is_vertex() && p.first.arrows.back() == p.second.arrows.back();
}

inline std::vector<ParallelPair> plus_movements(const Quiver& q, const ParallelPair& p) {
  std::vector<ParallelPair> out;
  if (!starts_together(p)) return out;
  const Path g = p.first.slice(q, 1, p.first.length() - 1);
  const Path d = p.second.slice(q, 1, p.second.length() - 1);
  for (int w : q.out_arrows(p.first.dst)) {
    Path wp = detail::arrow_path(q, w);
    out.push_back({*concat(g, wp), *concat(d, wp)});
  }
  return out;
}

inline std::vector<ParallelPair> minus_movements(const Quiver& q, const ParallelPair& p) {
  std::vector<ParallelPair> out;
  if (!ends_together(p)) return out;
  const Path g = p.first.slice(q, 0, p.first.length() - 1);
  const Path d = p.second.slice(q, 0, p.second.length() - 1);
  for (int w : q.in_arrows(p.first.src)) {
    Path wp = detail::arrow_path(q, w);
    out.push_back({*concat(wp, g), *concat(wp, d)});
  }
  return out;
}

struct MedalClass {
  std::vector<ParallelPair> members;  // sorted
  std::vector<ParallelPair> plus_extremes;
  std::vector<ParallelPair> minus_extremes;
  bool is_medal = false;

  LinComb<ParallelPair> sum() const {
    LinComb<ParallelPair> s;
    for (const auto& p : members) s.add(p, 1);
    return s;
  }
};

// Classes of Delta_i || Delta_m under +/- movements, ordered by smallest member.
inline std::vector<MedalClass> medal_classes(const Quiver& q, int i, int m, std::size_t cap = kDefaultCap) {
  const auto all = parallel_pairs(q, i, m, cap);
  std::map<ParallelPair, bool> seen;
  for (const auto& p : all) seen.emplace(p, false);
  std::vector<MedalClass> out;
  for (const auto& start : all) {
    if (seen[start]) continue;
    MedalClass c;
    std::deque<ParallelPair> queue{start};
    seen[start] = true;
    while (!queue.empty()) {
      ParallelPair p = std::move(queue.front());
      queue.pop_front();
      auto plus = plus_movements(q, p);
      auto minus = minus_movements(q, p);
      if (plus.empty()) c.plus_extremes.push_back(p);
      if (minus.empty()) c.minus_extremes.push_back(p);
      for (auto* moves : {&plus, &minus})
        for (auto& r : *moves) {
          auto it = seen.find(r);
          if (it == seen.end()) throw ValidationError("internal: movement left the pair set");
          if (!it->second) {
            it->second = true;
            queue.push_back(r);
          }
        }
      c.members.push_back(std::move(p));
    }
    std::sort(c.members.begin(), c.members.end());
    std::sort(c.plus_extremes.begin(), c.plus_extremes.end());
    std::sort(c.minus_extremes.begin(), c.minus_extremes.end());
    c.is_medal = std::all_of(c.plus_extremes.begin(), c.plus_extremes.end(),
                             [&](const ParallelPair& p) { return is_sink(q, p.first.dst); }) &&
                 std::all_of(c.minus_extremes.begin(), c.minus_extremes.end(),
                             [&](const ParallelPair& p) { return is_source(q, p.first.src); });
    out.push_back(std::move(c));
  }
  return out;
}

// ----------------------------------------------------------- cohomology

struct CohomologySpace {
  int degree = 0;
  std::vector<std::size_t> row_dims;
  std::vector<DualCochain> reps;
  std::vector<int> rep_rows;
  std::vector<DualCochain> image;  // basis of the coboundaries in this degree
  std::vector<bool> medal_rows;    // rows whose representatives are medal sums

  std::size_t total() const { return reps.size(); }
};

// Cohomology spaces and class arithmetic over one algebra.
class Cohomology {
 public:
  explicit Cohomology(TruncatedAlgebra A, std::size_t cap = kDefaultCap) : cx_(std::move(A), cap) {}

  CochainComplex& complex() { return cx_; }
  const TruncatedAlgebra& algebra() const { return cx_.algebra(); }
  const Quiver& quiver() const { return cx_.quiver(); }
  int N() const { return cx_.N(); }

  const CohomologySpace& space(int n) {
    auto it = spaces_.find(n);
    if (it != spaces_.end()) return it->second;
    build(n);
    return spaces_.at(n);
  }

  bool is_cocycle(const DualCochain& f) {
    if (f.empty()) return true;
    return cx_.apply(f).empty();
  }

  bool is_coboundary(const DualCochain& f) {
    if (f.empty()) return true;
    space(f.degree);
    return image_.at(f.degree).contains(cx_.basis(f.degree).to_vec(f));
  }

  // Coordinates of the class of f over space(f.degree).reps.
  SparseVec coordinates(const DualCochain& f) {
    if (f.empty()) return {};
    if (!is_cocycle(f)) throw ValidationError("expression is not a cocycle");
    const auto& sp = space(f.degree);
    const auto& red = reducers_.at(f.degree);
    SparseVec coords;
    SparseVec rest = red.reduce(cx_.basis(f.degree).to_vec(f), &coords);
    if (!rest.empty()) throw ValidationError("internal: cocycle outside kernel span");
    SparseVec out;
    const std::size_t skip = sp.image.size();
    for (const auto& [i, c] : coords)
      if (i >= skip) out.emplace(i - skip, c);
    return out;
  }

  // The representative combination equal to f in cohomology.
  DualCochain canonical(const DualCochain& f) {
    if (f.empty()) return f;
    const auto& sp = space(f.degree);
    DualCochain out{f.degree, {}};
    for (const auto& [i, c] : coordinates(f)) out += sp.reps[i] * c;
    out.degree = f.degree;
    return out;
  }

  bool is_zero_class(const DualCochain& f) { return coordinates(f).empty(); }

  bool same_class(const DualCochain& f, const DualCochain& g) {
    if (f.empty() && g.empty()) return true;
    int n = f.empty() ? g.degree : f.degree;
    DualCochain a = f, b = g;
    a.degree = b.degree = n;
    return is_zero_class(a - b);
  }

  // True when f reduces to a combination of medal sums from rows 1..N-2.
  bool is_medal_combination(const DualCochain& f) {
    if (f.empty()) return true;
    const int n = f.degree;
    space(n);
    const auto& B = cx_.basis(n);
    Echelon e(B.size());
    for (const auto& v : image_.at(n).basis()) e.insert(v);
    for (int i = 1; i <= N() - 2; ++i)
      for (const auto& mc : medal_classes(quiver(), i, middle_length(n, N()), cx_.cap()))
        if (mc.is_medal) e.insert(B.to_vec({n, mc.sum()}));
    return e.contains(B.to_vec(f));
  }

 private:
  void build(int n) {
    const auto& B = cx_.basis(n);
    const Matrix& dn = cx_.coboundary(n);
    CohomologySpace sp;
    sp.degree = n;

    Echelon img(B.size());
    if (n > 0)
      for (auto& c : cx_.coboundary(n - 1).column_vectors()) img.insert(std::move(c));
    for (const auto& v : img.basis()) sp.image.push_back(B.from_vec(v));

    std::vector<std::size_t> img_per_row(N(), 0);
    for (const auto& v : img.basis()) {
      const int r = B.row_of_index(v.begin()->first);
      if (B.row_of_index(v.rbegin()->first) != r) throw ValidationError("internal: coboundary mixes rows");
      ++img_per_row[r];
    }

    std::vector<std::size_t> all_rows(dn.rows());
    for (std::size_t r = 0; r < all_rows.size(); ++r) all_rows[r] = r;

    for (int i = 0; i < N(); ++i) {
      std::vector<std::size_t> cols;
      for (std::size_t c = B.row_begin(i); c < B.row_end(i); ++c) cols.push_back(c);
      std::vector<SparseVec> ker;
      for (const auto& k : kernel_basis(dn.submatrix(all_rows, cols))) {
        SparseVec g;
        for (const auto& [j, c] : k) g.emplace(cols[j], c);
        ker.push_back(std::move(g));
      }
      const std::size_t dim = ker.size() - img_per_row[i];
      sp.row_dims.push_back(dim);

      std::vector<SparseVec> reps;
      bool medal = false;
      if (n % 2 == 0 && n >= 2 && i >= 1 && i <= N() - 2 && img_per_row[i] == 0) {
        for (const auto& mc : medal_classes(quiver(), i, middle_length(n, N()), cx_.cap()))
          if (mc.is_medal) reps.push_back(B.to_vec({n, mc.sum()}));
        medal = reps.size() == dim &&
                std::all_of(reps.begin(), reps.end(), [&](const SparseVec& v) { return dn.apply(v).empty(); });
        if (!medal) reps.clear();
      }
      if (!medal) {
        Echelon quotient(B.size());
        for (const auto& k : ker) quotient.insert(img.reduce(k));
        reps = quotient.basis();
      }
      sp.medal_rows.push_back(medal);
      for (auto& v : reps) {
        sp.reps.push_back(B.from_vec(v));
        sp.rep_rows.push_back(i);
      }
    }

    Echelon red(B.size(), true);
    for (const auto& f : sp.image) red.insert(B.to_vec(f));
    for (const auto& f : sp.reps)
      if (!red.insert(B.to_vec(f))) throw ValidationError("internal: representatives are dependent");
    reducers_.emplace(n, std::move(red));
    image_.emplace(n, std::move(img));
    spaces_.emplace(n, std::move(sp));
  }

  CochainComplex cx_;
  std::map<int, CohomologySpace> spaces_;
  std::map<int, Echelon> reducers_;
  std::map<int, Echelon> image_;
};

inline CohomologySpace cohomology(const TruncatedAlgebra& A, int n, std::size_t cap = kDefaultCap) {
  Cohomology h(A, cap);
  return h.space(n);
}

}  // namespace tqa
