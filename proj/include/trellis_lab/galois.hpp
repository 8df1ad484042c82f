#pragma once

// Exact linear algebra over prime fields GF(p).
//
// Vectors are row vectors. A Subspace always stores its basis in reduced
// row-echelon form, so two subspaces are equal iff their bases are equal.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace trellis_lab {

using Elem = std::uint32_t;
using Vec = std::vector<Elem>;

class Field {
 public:
  /// Throws std::invalid_argument unless p is a prime below 2^16.
  explicit Field(std::uint32_t p);

  std::uint32_t p() const noexcept { return p_; }

  Elem add(Elem a, Elem b) const noexcept { return static_cast<Elem>((a + b) % p_); }
  Elem sub(Elem a, Elem b) const noexcept { return static_cast<Elem>((a + p_ - b) % p_); }
  Elem neg(Elem a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Elem mul(Elem a, Elem b) const noexcept {
    return static_cast<Elem>((static_cast<std::uint64_t>(a) * b) % p_);
  }
  Elem inv(Elem a) const;
  Elem reduce(std::int64_t v) const noexcept {
    auto r = v % static_cast<std::int64_t>(p_);
    return static_cast<Elem>(r < 0 ? r + p_ : r);
  }

  friend bool operator==(const Field& a, const Field& b) noexcept { return a.p_ == b.p_; }

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n) noexcept;

class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  static Mat from_rows(std::size_t cols, const std::vector<Vec>& rows);
  static Mat identity(std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Elem& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Elem at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<Elem> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Elem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  Vec row_vec(std::size_t r) const { return Vec(row(r).begin(), row(r).end()); }

  void append_row(std::span<const Elem> v);
  /// Rows of *this followed by rows of other (equal column counts).
  Mat stacked(const Mat& other) const;
  std::vector<Vec> to_rows() const;

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> data_;
};

/// Canonical reduced row-echelon form with zero rows removed.
Mat rref(const Field& f, Mat m);
std::size_t rank(const Field& f, const Mat& m);
/// a * b (row-vector convention).
Mat multiply(const Field& f, const Mat& a, const Mat& b);
/// Inverse of a square matrix, or an empty 0x0 matrix if singular.
Mat inverse(const Field& f, const Mat& m);

class Subspace {
 public:
  /// Zero subspace of F^ambient.
  Subspace(Field f, std::size_t ambient);

  static Subspace span(Field f, std::size_t ambient, const Mat& generators);
  static Subspace span(Field f, std::size_t ambient, const std::vector<Vec>& generators);
  static Subspace full(Field f, std::size_t ambient);

  const Field& field() const noexcept { return field_; }
  std::size_t ambient() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.rows(); }
  bool is_zero() const noexcept { return basis_.rows() == 0; }
  bool is_full() const noexcept { return basis_.rows() == ambient_; }
  const Mat& basis() const noexcept { return basis_; }
  /// Pivot column of each basis row.
  std::vector<std::size_t> pivots() const;

  bool contains(std::span<const Elem> v) const;
  bool contains(const Subspace& other) const;
  /// Coordinates of v (which must lie in the subspace) w.r.t. the RREF basis.
  Vec coordinates(std::span<const Elem> v) const;

  /// Every element, in lexicographic order. Throws UndecidedError above `cap` elements.
  std::vector<Vec> elements(std::size_t cap = std::size_t{1} << 20) const;
  /// Number of elements p^dim, saturating at SIZE_MAX.
  std::size_t cardinality() const noexcept;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.field_ == b.field_ && a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }

 private:
  Field field_;
  std::size_t ambient_;
  Mat basis_;
};

/// {x : m x^T = 0}.
Subspace kernel(const Field& f, const Mat& m);
Subspace orthogonal(const Subspace& s);

struct Lattice {
  Subspace sum;
  Subspace intersection;
};
/// Throws std::invalid_argument on ambient or field mismatch.
Lattice lattice(const Subspace& a, const Subspace& b);
Subspace sum(const Subspace& a, const Subspace& b);
Subspace intersection(const Subspace& a, const Subspace& b);

/// A subspace c with c (+) s = within, built by extending s with unit vectors
/// e_0, e_1, ... that lie in `within`; when none fit, falls back to the
/// RREF rows of `within`. Throws PreconditionError unless s is inside within.
Subspace complement(const Subspace& s, const Subspace& within);

/// Projection onto the listed coordinates, in the listed order.
Subspace project(const Subspace& s, std::span<const std::size_t> coords);
/// {x on coords : x extended by zeros elsewhere lies in s}.
Subspace cross_section(const Subspace& s, std::span<const std::size_t> coords);
/// Image of s under v -> v * m (m has s.ambient() rows).
Subspace image(const Subspace& s, const Mat& m);
/// {v : v * m in target} for m with target.ambient() columns.
Subspace preimage(const Subspace& target, const Mat& m, std::size_t ambient);
/// Coordinate embedding: component c of s lands at position positions[c] of F^ambient.
Subspace embed(const Subspace& s, std::size_t ambient, std::span<const std::size_t> positions);

/// Digit-string rendering, e.g. "0110" (entries comma-separated when p > 7).
std::string to_digits(const Field& f, std::span<const Elem> v);

}  // namespace trellis_lab
