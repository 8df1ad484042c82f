#include "trellis_lab/galois.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <utility>

#include "trellis_lab/errors.hpp"

namespace trellis_lab {

bool is_prime(std::uint32_t n) noexcept {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

Field::Field(std::uint32_t p) : p_(p) {
  if (!is_prime(p) || p >= (1u << 16)) {
    throw std::invalid_argument("field modulus must be a prime below 65536, got " + std::to_string(p));
  }
}

Elem Field::inv(Elem a) const {
  if (a % p_ == 0) throw std::domain_error("inverse of zero");
  // extended Euclid
  std::int64_t t = 0, new_t = 1, r = p_, new_r = a % p_;
  while (new_r != 0) {
    const auto q = r / new_r;
    t = std::exchange(new_t, t - q * new_t);
    r = std::exchange(new_r, r - q * new_r);
  }
  return reduce(t);
}

Mat Mat::from_rows(std::size_t cols, const std::vector<Vec>& rows) {
  Mat m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw std::invalid_argument("row length mismatch");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

void Mat::append_row(std::span<const Elem> v) {
  if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
  data_.insert(data_.end(), v.begin(), v.end());
  ++rows_;
}

Mat Mat::stacked(const Mat& other) const {
  if (other.rows_ > 0 && rows_ > 0 && other.cols_ != cols_) {
    throw std::invalid_argument("column count mismatch");
  }
  if (rows_ == 0) {
    Mat out = other;
    if (other.rows_ == 0) out.cols_ = std::max(cols_, other.cols_);
    return out;
  }
  Mat out = *this;
  out.data_.insert(out.data_.end(), other.data_.begin(), other.data_.end());
  out.rows_ += other.rows_;
  return out;
}

std::vector<Vec> Mat::to_rows() const {
  std::vector<Vec> out;
  out.reserve(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out.push_back(row_vec(r));
  return out;
}

namespace {

// In-place Gauss-Jordan; returns pivot columns. Zero rows end up at the bottom.
std::vector<std::size_t> reduce_in_place(const Field& f, Mat& m) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t r = lead;
    while (r < m.rows() && m.at(r, c) == 0) ++r;
    if (r == m.rows()) continue;
    if (r != lead) {
      for (std::size_t k = 0; k < m.cols(); ++k) std::swap(m.at(r, k), m.at(lead, k));
    }
    const Elem s = f.inv(m.at(lead, c));
    for (std::size_t k = c; k < m.cols(); ++k) m.at(lead, k) = f.mul(m.at(lead, k), s);
    for (std::size_t o = 0; o < m.rows(); ++o) {
      if (o == lead || m.at(o, c) == 0) continue;
      const Elem factor = m.at(o, c);
      for (std::size_t k = c; k < m.cols(); ++k) {
        m.at(o, k) = f.sub(m.at(o, k), f.mul(factor, m.at(lead, k)));
      }
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

Mat take_rows(const Mat& m, std::size_t n) {
  Mat out(n, m.cols());
  for (std::size_t r = 0; r < n; ++r) std::copy(m.row(r).begin(), m.row(r).end(), out.row(r).begin());
  return out;
}

void check_compatible(const Subspace& a, const Subspace& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("subspaces over different fields");
  if (a.ambient() != b.ambient()) {
    throw std::invalid_argument("ambient dimension mismatch: " + std::to_string(a.ambient()) + " vs " +
                                std::to_string(b.ambient()));
  }
}

}  // namespace

Mat rref(const Field& f, Mat m) {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (auto& e : m.row(r)) e %= f.p();
  }
  const auto pivots = reduce_in_place(f, m);
  return take_rows(m, pivots.size());
}

std::size_t rank(const Field& f, const Mat& m) { return rref(f, m).rows(); }

Mat multiply(const Field& f, const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix shape mismatch in multiply");
  Mat out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem x = a.at(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) = f.add(out.at(i, j), f.mul(x, b.at(k, j)));
    }
  }
  return out;
}

Mat inverse(const Field& f, const Mat& m) {
  const std::size_t n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
  Mat aug(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.at(r, c) = m.at(r, c) % f.p();
    aug.at(r, n + r) = 1;
  }
  const auto pivots = reduce_in_place(f, aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1)) return {};
  Mat out(n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out.at(r, c) = aug.at(r, n + c);
  }
  return out;
}

Subspace::Subspace(Field f, std::size_t ambient) : field_(f), ambient_(ambient), basis_(0, ambient) {}

Subspace Subspace::span(Field f, std::size_t ambient, const Mat& generators) {
  Subspace s(f, ambient);
  if (generators.rows() == 0) return s;
  if (generators.cols() != ambient) throw std::invalid_argument("generator length does not match ambient dimension");
  s.basis_ = rref(f, generators);
  return s;
}

Subspace Subspace::span(Field f, std::size_t ambient, const std::vector<Vec>& generators) {
  return span(f, ambient, Mat::from_rows(ambient, generators));
}

Subspace Subspace::full(Field f, std::size_t ambient) { return span(f, ambient, Mat::identity(ambient)); }

std::vector<std::size_t> Subspace::pivots() const {
  std::vector<std::size_t> out;
  out.reserve(dim());
  for (std::size_t r = 0; r < dim(); ++r) {
    const auto row = basis_.row(r);
    out.push_back(static_cast<std::size_t>(std::find_if(row.begin(), row.end(), [](Elem e) { return e != 0; }) -
                                           row.begin()));
  }
  return out;
}

bool Subspace::contains(std::span<const Elem> v) const {
  if (v.size() != ambient_) throw std::invalid_argument("vector length does not match ambient dimension");
  Vec rest(v.begin(), v.end());
  for (auto& e : rest) e %= field_.p();
  const auto piv = pivots();
  for (std::size_t r = 0; r < dim(); ++r) {
    const Elem c = rest[piv[r]];
    if (c == 0) continue;
    const auto row = basis_.row(r);
    for (std::size_t k = 0; k < ambient_; ++k) rest[k] = field_.sub(rest[k], field_.mul(c, row[k]));
  }
  return std::all_of(rest.begin(), rest.end(), [](Elem e) { return e == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  check_compatible(*this, other);
  for (std::size_t r = 0; r < other.dim(); ++r) {
    if (!contains(other.basis().row(r))) return false;
  }
  return true;
}

Vec Subspace::coordinates(std::span<const Elem> v) const {
  if (!contains(v)) throw std::invalid_argument("vector not in subspace");
  const auto piv = pivots();
  Vec out(dim());
  for (std::size_t r = 0; r < dim(); ++r) out[r] = v[piv[r]] % field_.p();
  return out;
}

std::size_t Subspace::cardinality() const noexcept {
  std::size_t n = 1;
  for (std::size_t i = 0; i < dim(); ++i) {
    if (n > std::numeric_limits<std::size_t>::max() / field_.p()) return std::numeric_limits<std::size_t>::max();
    n *= field_.p();
  }
  return n;
}

std::vector<Vec> Subspace::elements(std::size_t cap) const {
  const auto count = cardinality();
  if (count > cap) {
    throw UndecidedError("subspace has " + std::to_string(dim()) + " dimensions; enumeration cap exceeded");
  }
  std::vector<Vec> out;
  out.reserve(count);
  Vec coeff(dim(), 0);
  for (std::size_t n = 0; n < count; ++n) {
    Vec v(ambient_, 0);
    for (std::size_t r = 0; r < dim(); ++r) {
      if (coeff[r] == 0) continue;
      const auto row = basis_.row(r);
      for (std::size_t k = 0; k < ambient_; ++k) v[k] = field_.add(v[k], field_.mul(coeff[r], row[k]));
    }
    out.push_back(std::move(v));
    for (std::size_t r = dim(); r-- > 0;) {
      if (++coeff[r] < field_.p()) break;
      coeff[r] = 0;
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Subspace kernel(const Field& f, const Mat& m) {
  const std::size_t n = m.cols();
  const Mat r = rref(f, m);
  std::vector<std::size_t> piv;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::size_t c = 0;
    while (r.at(i, c) == 0) ++c;
    piv.push_back(c);
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : piv) is_pivot[c] = true;
  Mat gens(0, n);
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < piv.size(); ++i) v[piv[i]] = f.neg(r.at(i, free));
    gens.append_row(v);
  }
  return Subspace::span(f, n, gens);
}

Subspace orthogonal(const Subspace& s) {
  if (s.dim() == 0) return Subspace::full(s.field(), s.ambient());
  return kernel(s.field(), s.basis());
}

Subspace sum(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  return Subspace::span(a.field(), a.ambient(), a.basis().stacked(b.basis()));
}

Subspace intersection(const Subspace& a, const Subspace& b) {
  check_compatible(a, b);
  return orthogonal(sum(orthogonal(a), orthogonal(b)));
}

Lattice lattice(const Subspace& a, const Subspace& b) { return {sum(a, b), intersection(a, b)}; }

Subspace complement(const Subspace& s, const Subspace& within) {
  if (!within.contains(s)) throw PreconditionError("complement: subspace is not contained in the enclosing space");
  const Field& f = s.field();
  const std::size_t n = s.ambient();
  Mat current = s.basis();
  Mat added(0, n);
  std::size_t target = within.dim();
  std::size_t have = s.dim();
  auto try_add = [&](std::span<const Elem> v) {
    if (have == target || !within.contains(v)) return;
    Mat trial = current;
    if (trial.rows() == 0) trial = Mat(0, n);
    trial.append_row(v);
    if (rank(f, trial) > have) {
      current = std::move(trial);
      added.append_row(v);
      ++have;
    }
  };
  for (std::size_t k = 0; k < n && have < target; ++k) {
    Vec e(n, 0);
    e[k] = 1;
    try_add(e);
  }
  for (std::size_t r = 0; r < within.dim() && have < target; ++r) try_add(within.basis().row(r));
  return Subspace::span(f, n, added);
}

Subspace project(const Subspace& s, std::span<const std::size_t> coords) {
  Mat m(s.dim(), coords.size());
  for (std::size_t r = 0; r < s.dim(); ++r) {
    for (std::size_t c = 0; c < coords.size(); ++c) m.at(r, c) = s.basis().at(r, coords[c]);
  }
  return Subspace::span(s.field(), coords.size(), m);
}

Subspace cross_section(const Subspace& s, std::span<const std::size_t> coords) {
  const Field& f = s.field();
  std::vector<bool> keep(s.ambient(), false);
  for (auto c : coords) keep[c] = true;
  std::vector<std::size_t> others;
  for (std::size_t k = 0; k < s.ambient(); ++k) {
    if (!keep[k]) others.push_back(k);
  }
  // combinations c of basis rows with (c * B) vanishing on `others`
  Mat off(others.size(), s.dim());
  for (std::size_t i = 0; i < others.size(); ++i) {
    for (std::size_t r = 0; r < s.dim(); ++r) off.at(i, r) = s.basis().at(r, others[i]);
  }
  const Subspace combos = others.empty() ? Subspace::full(f, s.dim()) : kernel(f, off);
  const Mat elems = multiply(f, combos.basis(), s.basis());
  Mat out(elems.rows(), coords.size());
  for (std::size_t r = 0; r < elems.rows(); ++r) {
    for (std::size_t c = 0; c < coords.size(); ++c) out.at(r, c) = elems.at(r, coords[c]);
  }
  return Subspace::span(f, coords.size(), out);
}

Subspace image(const Subspace& s, const Mat& m) {
  if (m.rows() != s.ambient()) throw std::invalid_argument("image: map has wrong number of rows");
  if (s.dim() == 0) return Subspace(s.field(), m.cols());
  return Subspace::span(s.field(), m.cols(), multiply(s.field(), s.basis(), m));
}

Subspace preimage(const Subspace& target, const Mat& m, std::size_t ambient) {
  if (m.cols() != target.ambient() || m.rows() != ambient) throw std::invalid_argument("preimage: shape mismatch");
  const Field& f = target.field();
  const Subspace checks = orthogonal(target);
  if (checks.dim() == 0) return Subspace::full(f, ambient);
  // v * m * h^T = 0 for every check row h
  Mat cond(checks.dim(), ambient);
  for (std::size_t r = 0; r < checks.dim(); ++r) {
    for (std::size_t i = 0; i < ambient; ++i) {
      Elem acc = 0;
      for (std::size_t j = 0; j < m.cols(); ++j) acc = f.add(acc, f.mul(m.at(i, j), checks.basis().at(r, j)));
      cond.at(r, i) = acc;
    }
  }
  return kernel(f, cond);
}

Subspace embed(const Subspace& s, std::size_t ambient, std::span<const std::size_t> positions) {
  if (positions.size() != s.ambient()) throw std::invalid_argument("embed: position count mismatch");
  Mat m(s.dim(), ambient);
  for (std::size_t r = 0; r < s.dim(); ++r) {
    for (std::size_t c = 0; c < positions.size(); ++c) m.at(r, positions[c]) = s.basis().at(r, c);
  }
  return Subspace::span(s.field(), ambient, m);
}

std::string to_digits(const Field& f, std::span<const Elem> v) {
  std::string out;
  const bool wide = f.p() > 7;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (wide && k > 0) out += ',';
    out += std::to_string(v[k]);
  }
  return out;
}

}  // namespace trellis_lab
