#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "tqa/errors.hpp"

namespace tqa {

using Rational = mpq_class;

// "p/q", or "p" when q = 1.
inline Rational canonical(Rational q) {
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return canonical(q).get_str(); }

inline Rational parse_rational(const std::string& s) {
  Rational q;
  if (s.empty() || q.set_str(s, 10) != 0) throw ValidationError("invalid rational '" + s + "'");
  if (q.get_den() == 0) throw ValidationError("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

// index -> nonzero coefficient
using SparseVec = std::map<std::size_t, Rational>;

inline void axpy(SparseVec& y, const Rational& a, const SparseVec& x) {
  if (a == 0) return;
  for (const auto& [i, v] : x) {
    auto [it, fresh] = y.try_emplace(i, a * v);
    if (!fresh) {
      it->second += a * v;
      if (it->second == 0) y.erase(it);
    }
  }
}

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), col_(cols) {}

  static Matrix from_dense(const std::vector<std::vector<Rational>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows[0].size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw ValidationError("ragged dense matrix");
      for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j]);
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void add(std::size_t r, std::size_t c, const Rational& v) {
    check(r, c);
    if (v == 0) return;
    auto [it, fresh] = col_[c].try_emplace(r, canonical(v));
    if (!fresh) {
      it->second += v;
      if (it->second == 0) col_[c].erase(it);
    }
  }
  void set(std::size_t r, std::size_t c, const Rational& v) {
    check(r, c);
    if (v == 0)
      col_[c].erase(r);
    else
      col_[c][r] = canonical(v);
  }
  Rational get(std::size_t r, std::size_t c) const {
    check(r, c);
    auto it = col_[c].find(r);
    return it == col_[c].end() ? Rational(0) : it->second;
  }

  const SparseVec& column(std::size_t c) const { return col_.at(c); }
  std::vector<SparseVec> column_vectors() const { return col_; }
  std::vector<SparseVec> row_vectors() const {
    std::vector<SparseVec> out(rows_);
    for (std::size_t c = 0; c < cols_; ++c)
      for (const auto& [r, v] : col_[c]) out[r].emplace(c, v);
    return out;
  }
  std::size_t nonzeros() const {
    std::size_t n = 0;
    for (const auto& c : col_) n += c.size();
    return n;
  }
  bool is_zero() const { return nonzeros() == 0; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t c = 0; c < cols_; ++c)
      for (const auto& [r, v] : col_[c]) t.col_[r].emplace(c, v);
    return t;
  }

  SparseVec apply(const SparseVec& x) const {
    SparseVec y;
    for (const auto& [c, v] : x) {
      if (c >= cols_) throw ValidationError("vector index out of range");
      axpy(y, v, col_[c]);
    }
    return y;
  }

  Matrix operator*(const Matrix& o) const {
    if (cols_ != o.rows_) throw ValidationError("dimension mismatch in matrix product");
    Matrix p(rows_, o.cols_);
    for (std::size_t c = 0; c < o.cols_; ++c) p.col_[c] = apply(o.col_[c]);
    return p;
  }

  bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && col_ == o.col_; }

  // Rows and columns selected by index lists, in the given order.
  Matrix submatrix(const std::vector<std::size_t>& rs, const std::vector<std::size_t>& cs) const {
    std::map<std::size_t, std::size_t> rpos;
    for (std::size_t i = 0; i < rs.size(); ++i) rpos[rs[i]] = i;
    Matrix s(rs.size(), cs.size());
    for (std::size_t j = 0; j < cs.size(); ++j)
      for (const auto& [r, v] : col_.at(cs[j])) {
        auto it = rpos.find(r);
        if (it != rpos.end()) s.col_[j].emplace(it->second, v);
      }
    return s;
  }

  std::vector<std::vector<Rational>> dense() const {
    std::vector<std::vector<Rational>> d(rows_, std::vector<Rational>(cols_, Rational(0)));
    for (std::size_t c = 0; c < cols_; ++c)
      for (const auto& [r, v] : col_[c]) d[r][c] = v;
    return d;
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) throw ValidationError("matrix index out of range");
  }
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<SparseVec> col_;
};

// Reduced row echelon form of a growing set of vectors. Each stored row
// remembers which combination of the inserted vectors produced it.
class Echelon {
 public:
  explicit Echelon(std::size_t dim, bool track = false) : dim_(dim), track_(track) {}

  // Returns true when v was independent of the rows seen so far.
  bool insert(SparseVec v) {
    SparseVec combo;
    if (track_) combo.emplace(inserted_, Rational(1));
    ++inserted_;
    sweep(v, track_ ? &combo : nullptr, true);
    if (v.empty()) return false;
    auto lead = v.begin()->first;
    Rational inv = 1 / v.begin()->second;
    for (auto& [_, x] : v) x *= inv;
    for (auto& [_, x] : combo) x *= inv;
    for (auto& [p, row] : rows_) {
      auto it = row.vec.find(lead);
      if (it == row.vec.end()) continue;
      Rational f = -it->second;
      axpy(row.vec, f, v);
      if (track_) axpy(row.combo, f, combo);
    }
    rows_.emplace(lead, Row{std::move(v), std::move(combo)});
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  std::size_t dim() const { return dim_; }

  // v minus its projection onto the pivot coordinates; coords receives the
  // inserted-vector combination that was subtracted.
  SparseVec reduce(SparseVec v, SparseVec* coords = nullptr) const {
    sweep(v, coords, false);
    return v;
  }

  bool contains(const SparseVec& v) const { return reduce(v).empty(); }

  std::vector<std::size_t> pivots() const {
    std::vector<std::size_t> p;
    for (const auto& [c, _] : rows_) p.push_back(c);
    return p;
  }
  std::vector<std::size_t> non_pivots() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < dim_; ++i)
      if (!rows_.count(i)) out.push_back(i);
    return out;
  }
  std::vector<SparseVec> basis() const {
    std::vector<SparseVec> b;
    for (const auto& [_, r] : rows_) b.push_back(r.vec);
    return b;
  }
  const SparseVec& row_at_pivot(std::size_t p) const { return rows_.at(p).vec; }

 private:
  struct Row {
    SparseVec vec;
    SparseVec combo;
  };

  // subtract_into: combo tracks v itself (insertion) rather than what was removed.
  void sweep(SparseVec& v, SparseVec* combo, bool subtract_into) const {
    // Pivot rows only have entries at or after their pivot column, so one
    // ascending sweep is enough.
    auto it = v.begin();
    while (it != v.end()) {
      auto rit = rows_.find(it->first);
      if (rit == rows_.end()) {
        ++it;
        continue;
      }
      std::size_t col = it->first;
      Rational f = it->second;
      axpy(v, -f, rit->second.vec);
      if (combo) {
        if (subtract_into)
          axpy(*combo, -f, rit->second.combo);
        else
          axpy(*combo, f, rit->second.combo);
      }
      it = v.upper_bound(col);
    }
  }

  std::size_t dim_;
  bool track_;
  std::size_t inserted_ = 0;
  std::map<std::size_t, Row> rows_;
};

inline std::size_t rank(const Matrix& m) {
  Echelon e(m.cols());
  for (auto& r : m.row_vectors()) e.insert(std::move(r));
  return e.rank();
}

// Reduced-echelon kernel basis: one vector per free column.
inline std::vector<SparseVec> kernel_basis(const Matrix& m) {
  Echelon e(m.cols());
  for (auto& r : m.row_vectors()) e.insert(std::move(r));
  std::vector<SparseVec> out;
  for (std::size_t f : e.non_pivots()) {
    SparseVec k;
    k.emplace(f, Rational(1));
    for (std::size_t p : e.pivots()) {
      const auto& row = e.row_at_pivot(p);
      auto it = row.find(f);
      if (it != row.end()) k.emplace(p, -it->second);
    }
    out.push_back(std::move(k));
  }
  return out;
}

// Reduced-echelon basis of the column span.
inline std::vector<SparseVec> image_basis(const Matrix& m) {
  Echelon e(m.rows());
  for (auto& c : m.column_vectors()) e.insert(std::move(c));
  return e.basis();
}

// Coordinates c with M c = v, or nothing when v is outside the column span.
inline std::optional<SparseVec> in_image(const Matrix& m, const SparseVec& v) {
  for (const auto& [i, _] : v)
    if (i >= m.rows()) throw ValidationError("dimension mismatch in in_image");
  Echelon e(m.rows(), true);
  for (auto& c : m.column_vectors()) e.insert(std::move(c));
  SparseVec coords;
  SparseVec rest = e.reduce(v, &coords);
  if (!rest.empty()) return std::nullopt;
  return coords;
}

// Coordinates outside the pivot set of the image's reduced echelon form.
inline std::vector<std::size_t> quotient_reps(std::size_t dim, const std::vector<SparseVec>& image) {
  Echelon e(dim);
  for (const auto& v : image) {
    for (const auto& [i, _] : v)
      if (i >= dim) throw ValidationError("dimension mismatch in quotient_reps");
    e.insert(v);
  }
  return e.non_pivots();
}

}  // namespace tqa
