#pragma once
// Exact linear algebra over Q and Q(i).

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace cohw {

using Rational = mpq_class;

class MathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Gaussian {
 public:
  Rational re, im;

  Gaussian() = default;
  Gaussian(const Rational& r) : re(r) {}  // NOLINT(implicit)
  Gaussian(long r) : re(r) {}              // NOLINT(implicit)
  Gaussian(const Rational& r, const Rational& i) : re(r), im(i) {}

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }
  Gaussian conj() const { return {re, -im}; }
  Rational norm() const { return re * re + im * im; }

  Gaussian operator-() const { return {-re, -im}; }
  Gaussian& operator+=(const Gaussian& o) { re += o.re; im += o.im; return *this; }
  Gaussian& operator-=(const Gaussian& o) { re -= o.re; im -= o.im; return *this; }
  Gaussian& operator*=(const Gaussian& o);
  Gaussian& operator/=(const Gaussian& o);

  friend Gaussian operator+(Gaussian a, const Gaussian& b) { return a += b; }
  friend Gaussian operator-(Gaussian a, const Gaussian& b) { return a -= b; }
  friend Gaussian operator*(Gaussian a, const Gaussian& b) { return a *= b; }
  friend Gaussian operator/(Gaussian a, const Gaussian& b) { return a /= b; }
  friend bool operator==(const Gaussian& a, const Gaussian& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Gaussian& a, const Gaussian& b) { return !(a == b); }
};

inline Rational frac(long num, long den) {
  Rational q{mpz_class(num), mpz_class(den)};
  q.canonicalize();
  return q;
}

enum class Field { Rational, Gaussian };

const char* field_name(Field f);

// Canonical text forms: "a/b" for rationals, "a/b+c/d*i" for Gaussians.
std::string to_string(const Rational& q);
std::string to_string(const Gaussian& z);
Rational parse_rational(const std::string& s);
Gaussian parse_gaussian(const std::string& s);

template <class T> struct ScalarOps;

template <> struct ScalarOps<Rational> {
  static bool is_zero(const Rational& x) { return sgn(x) == 0; }
  static Rational conj(const Rational& x) { return x; }
  static constexpr Field field = Field::Rational;
};

template <> struct ScalarOps<Gaussian> {
  static bool is_zero(const Gaussian& x) { return x.is_zero(); }
  static Gaussian conj(const Gaussian& x) { return x.conj(); }
  static constexpr Field field = Field::Gaussian;
};

template <class T>
using VecT = std::vector<T>;
using Vec = VecT<Rational>;
using CVec = VecT<Gaussian>;

template <class T>
bool is_zero_vec(const VecT<T>& v) {
  for (const auto& x : v)
    if (!ScalarOps<T>::is_zero(x)) return false;
  return true;
}

template <class T>
VecT<T> add(const VecT<T>& a, const VecT<T>& b) {
  if (a.size() != b.size()) throw MathError("vector dimension mismatch");
  VecT<T> r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

template <class T>
VecT<T> sub(const VecT<T>& a, const VecT<T>& b) {
  if (a.size() != b.size()) throw MathError("vector dimension mismatch");
  VecT<T> r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

template <class T>
VecT<T> scale(const T& c, const VecT<T>& a) {
  VecT<T> r(a);
  for (auto& x : r) x *= c;
  return r;
}

template <class T>
void axpy(const T& c, const VecT<T>& x, VecT<T>& y) {
  if (ScalarOps<T>::is_zero(c)) return;
  for (size_t i = 0; i < y.size(); ++i)
    if (!ScalarOps<T>::is_zero(x[i])) y[i] += c * x[i];
}

template <class T>
VecT<T> neg(const VecT<T>& a) {
  VecT<T> r(a);
  for (auto& x : r) x = -x;
  return r;
}

template <class T>
VecT<T> unit_vec(size_t n, size_t i) {
  VecT<T> v(n);
  v.at(i) = T(1);
  return v;
}

/// Dense row-major matrix.
template <class T>
class Mat {
 public:
  Mat() = default;
  Mat(size_t r, size_t c) : rows_(r), cols_(c), data_(r * c) {}

  static Mat identity(size_t n) {
    Mat m(n, n);
    for (size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }
  static Mat from_rows(const std::vector<VecT<T>>& rows, size_t cols);
  static Mat from_cols(const std::vector<VecT<T>>& cols, size_t rows);

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }
  T& operator()(size_t i, size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(size_t i, size_t j) const { return data_[i * cols_ + j]; }

  VecT<T> row(size_t i) const { return VecT<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }
  VecT<T> col(size_t j) const {
    VecT<T> v(rows_);
    for (size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
  }
  void set_col(size_t j, const VecT<T>& v) {
    for (size_t i = 0; i < rows_; ++i) (*this)(i, j) = v.at(i);
  }

  Mat transpose() const {
    Mat t(cols_, rows_);
    for (size_t i = 0; i < rows_; ++i)
      for (size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  Mat conj() const {
    Mat t(*this);
    for (auto& x : t.data_) x = ScalarOps<T>::conj(x);
    return t;
  }

  VecT<T> apply(const VecT<T>& v) const {
    if (v.size() != cols_) throw MathError("matrix/vector dimension mismatch");
    VecT<T> r(rows_);
    for (size_t j = 0; j < cols_; ++j) {
      if (ScalarOps<T>::is_zero(v[j])) continue;
      for (size_t i = 0; i < rows_; ++i)
        if (!ScalarOps<T>::is_zero((*this)(i, j))) r[i] += (*this)(i, j) * v[j];
    }
    return r;
  }

  friend Mat operator*(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw MathError("matrix product dimension mismatch");
    Mat r(a.rows_, b.cols_);
    for (size_t i = 0; i < a.rows_; ++i)
      for (size_t k = 0; k < a.cols_; ++k) {
        const T& x = a(i, k);
        if (ScalarOps<T>::is_zero(x)) continue;
        for (size_t j = 0; j < b.cols_; ++j)
          if (!ScalarOps<T>::is_zero(b(k, j))) r(i, j) += x * b(k, j);
      }
    return r;
  }
  friend Mat operator+(const Mat& a, const Mat& b) {
    a.check_same(b);
    Mat r(a);
    for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] += b.data_[i];
    return r;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    a.check_same(b);
    Mat r(a);
    for (size_t i = 0; i < r.data_.size(); ++i) r.data_[i] -= b.data_[i];
    return r;
  }
  friend Mat operator*(const T& c, const Mat& a) {
    Mat r(a);
    for (auto& x : r.data_) x *= c;
    return r;
  }
  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const Mat& a, const Mat& b) { return !(a == b); }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!ScalarOps<T>::is_zero(x)) return false;
    return true;
  }

  // Copies `b` into this matrix with its top-left corner at (r0, c0).
  void put(size_t r0, size_t c0, const Mat& b) {
    for (size_t i = 0; i < b.rows_; ++i)
      for (size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }
  Mat block(size_t r0, size_t c0, size_t nr, size_t nc) const {
    Mat r(nr, nc);
    for (size_t i = 0; i < nr; ++i)
      for (size_t j = 0; j < nc; ++j) r(i, j) = (*this)(r0 + i, c0 + j);
    return r;
  }

 private:
  void check_same(const Mat& b) const {
    if (rows_ != b.rows_ || cols_ != b.cols_) throw MathError("matrix shape mismatch");
  }
  size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using QMat = Mat<Rational>;
using CMat = Mat<Gaussian>;

template <class T>
Mat<T> Mat<T>::from_rows(const std::vector<VecT<T>>& rows, size_t cols) {
  Mat m(rows.size(), cols);
  for (size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != cols) throw MathError("row length mismatch");
    for (size_t j = 0; j < cols; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

template <class T>
Mat<T> Mat<T>::from_cols(const std::vector<VecT<T>>& cols, size_t rows) {
  Mat m(rows, cols.size());
  for (size_t j = 0; j < cols.size(); ++j) {
    if (cols[j].size() != rows) throw MathError("column length mismatch");
    for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
  }
  return m;
}

template <class T>
Mat<T> hstack(const Mat<T>& a, const Mat<T>& b) {
  if (a.rows() != b.rows()) throw MathError("hstack row mismatch");
  Mat<T> r(a.rows(), a.cols() + b.cols());
  r.put(0, 0, a);
  r.put(0, a.cols(), b);
  return r;
}

template <class T>
Mat<T> vstack(const Mat<T>& a, const Mat<T>& b) {
  if (a.cols() != b.cols()) throw MathError("vstack column mismatch");
  Mat<T> r(a.rows() + b.rows(), a.cols());
  r.put(0, 0, a);
  r.put(a.rows(), 0, b);
  return r;
}

template <class T>
Mat<T> block_diag(const Mat<T>& a, const Mat<T>& b) {
  Mat<T> r(a.rows() + b.rows(), a.cols() + b.cols());
  r.put(0, 0, a);
  r.put(a.rows(), a.cols(), b);
  return r;
}

template <class T>
Mat<T> kron(const Mat<T>& a, const Mat<T>& b) {
  Mat<T> r(a.rows() * b.rows(), a.cols() * b.cols());
  for (size_t i = 0; i < a.rows(); ++i)
    for (size_t j = 0; j < a.cols(); ++j) {
      if (ScalarOps<T>::is_zero(a(i, j))) continue;
      for (size_t k = 0; k < b.rows(); ++k)
        for (size_t l = 0; l < b.cols(); ++l) r(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    }
  return r;
}

/// Reduced row echelon form; `pivots[r]` is the pivot column of row r.
template <class T>
struct Echelon {
  Mat<T> reduced;
  std::vector<size_t> pivots;
  size_t rank() const { return pivots.size(); }
};

template <class T>
Echelon<T> rref(Mat<T> m) {
  Echelon<T> e;
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    size_t p = r;
    while (p < m.rows() && ScalarOps<T>::is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    T inv = T(1) / m(r, c);
    for (size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (size_t i = 0; i < m.rows(); ++i) {
      if (i == r || ScalarOps<T>::is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (size_t j = c; j < m.cols(); ++j)
        if (!ScalarOps<T>::is_zero(m(r, j))) m(i, j) -= f * m(r, j);
    }
    e.pivots.push_back(c);
    ++r;
  }
  e.reduced = std::move(m);
  return e;
}

template <class T>
size_t rank(const Mat<T>& m) {
  return rref(m).rank();
}

/// Basis of the right kernel {x : m x = 0}, one vector per free column.
template <class T>
std::vector<VecT<T>> kernel(const Mat<T>& m) {
  Echelon<T> e = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t p : e.pivots) is_pivot[p] = true;
  std::vector<VecT<T>> basis;
  for (size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    VecT<T> v(m.cols());
    v[f] = T(1);
    for (size_t r = 0; r < e.pivots.size(); ++r) v[e.pivots[r]] = -e.reduced(r, f);
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class T>
struct AffineSolution {
  std::optional<VecT<T>> particular;  // empty when the system is inconsistent
  std::vector<VecT<T>> kernel;
};

template <class T>
AffineSolution<T> solve_affine(const Mat<T>& a, const VecT<T>& b) {
  if (b.size() != a.rows()) throw MathError("solve_affine: right-hand side has wrong length");
  Mat<T> aug(a.rows(), a.cols() + 1);
  aug.put(0, 0, a);
  for (size_t i = 0; i < a.rows(); ++i) aug(i, a.cols()) = b[i];
  Echelon<T> e = rref(aug);
  AffineSolution<T> s;
  s.kernel = kernel(a);
  if (!e.pivots.empty() && e.pivots.back() == a.cols()) return s;
  VecT<T> x(a.cols());
  for (size_t r = 0; r < e.pivots.size(); ++r) x[e.pivots[r]] = e.reduced(r, a.cols());
  s.particular = std::move(x);
  return s;
}

template <class T>
std::optional<Mat<T>> inverse(const Mat<T>& a) {
  if (a.rows() != a.cols()) throw MathError("inverse of non-square matrix");
  size_t n = a.rows();
  if (n == 0) return a;
  Echelon<T> e = rref(hstack(a, Mat<T>::identity(n)));
  if (e.rank() < n || e.pivots[n - 1] != n - 1) return std::nullopt;
  return e.reduced.block(0, n, n, n);
}

/// A subspace of T^n stored by its reduced echelon basis, which is canonical.
template <class T>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(size_t ambient) : ambient_(ambient) {}
  Subspace(size_t ambient, const std::vector<VecT<T>>& span);

  static Subspace full(size_t n) {
    std::vector<VecT<T>> b;
    for (size_t i = 0; i < n; ++i) b.push_back(unit_vec<T>(n, i));
    return Subspace(n, b);
  }

  size_t ambient() const { return ambient_; }
  size_t dim() const { return basis_.size(); }
  const std::vector<VecT<T>>& basis() const { return basis_; }
  const std::vector<size_t>& pivots() const { return pivots_; }

  // Canonical representative of v modulo this subspace (pivot coordinates cleared).
  VecT<T> reduce(const VecT<T>& v) const;
  bool contains(const VecT<T>& v) const { return is_zero_vec(reduce(v)); }
  bool contains(const Subspace& o) const;
  // Coordinates of v in the canonical complement: the non-pivot coordinates of reduce(v).
  VecT<T> quotient_coords(const VecT<T>& v) const;
  std::vector<size_t> complement_coords() const;
  // Coordinates of v in the echelon basis (requires contains(v)).
  VecT<T> coords(const VecT<T>& v) const;

  Subspace sum(const Subspace& o) const;
  Subspace intersect(const Subspace& o) const;
  Subspace image(const Mat<T>& m) const;

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
  }
  friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

 private:
  size_t ambient_ = 0;
  std::vector<VecT<T>> basis_;
  std::vector<size_t> pivots_;
};

template <class T>
Subspace<T>::Subspace(size_t ambient, const std::vector<VecT<T>>& span) : ambient_(ambient) {
  if (span.empty()) return;
  Echelon<T> e = rref(Mat<T>::from_rows(span, ambient));
  pivots_ = e.pivots;
  for (size_t r = 0; r < e.rank(); ++r) basis_.push_back(e.reduced.row(r));
}

template <class T>
VecT<T> Subspace<T>::reduce(const VecT<T>& v) const {
  if (v.size() != ambient_) throw MathError("subspace: vector has wrong ambient dimension");
  VecT<T> r(v);
  for (size_t i = 0; i < basis_.size(); ++i) {
    if (ScalarOps<T>::is_zero(r[pivots_[i]])) continue;
    T c = r[pivots_[i]];
    axpy(T(-c), basis_[i], r);
  }
  return r;
}

template <class T>
bool Subspace<T>::contains(const Subspace& o) const {
  for (const auto& v : o.basis_)
    if (!contains(v)) return false;
  return true;
}

template <class T>
std::vector<size_t> Subspace<T>::complement_coords() const {
  std::vector<size_t> out;
  size_t k = 0;
  for (size_t i = 0; i < ambient_; ++i) {
    if (k < pivots_.size() && pivots_[k] == i) { ++k; continue; }
    out.push_back(i);
  }
  return out;
}

template <class T>
VecT<T> Subspace<T>::quotient_coords(const VecT<T>& v) const {
  VecT<T> r = reduce(v);
  VecT<T> out;
  for (size_t i : complement_coords()) out.push_back(r[i]);
  return out;
}

template <class T>
VecT<T> Subspace<T>::coords(const VecT<T>& v) const {
  VecT<T> c(basis_.size());
  for (size_t i = 0; i < basis_.size(); ++i) c[i] = v.at(pivots_[i]);
  if (!contains(v)) throw MathError("subspace: vector not in subspace");
  return c;
}

template <class T>
Subspace<T> Subspace<T>::sum(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw MathError("subspace sum: ambient mismatch");
  std::vector<VecT<T>> span = basis_;
  span.insert(span.end(), o.basis_.begin(), o.basis_.end());
  return Subspace(ambient_, span);
}

template <class T>
Subspace<T> Subspace<T>::intersect(const Subspace& o) const {
  if (o.ambient_ != ambient_) throw MathError("subspace intersection: ambient mismatch");
  if (basis_.empty() || o.basis_.empty()) return Subspace(ambient_);
  size_t p = basis_.size(), q = o.basis_.size();
  Mat<T> m(ambient_, p + q);
  for (size_t j = 0; j < p; ++j) m.set_col(j, basis_[j]);
  for (size_t j = 0; j < q; ++j) m.set_col(p + j, neg(o.basis_[j]));
  std::vector<VecT<T>> span;
  for (const auto& k : kernel(m)) {
    VecT<T> v(ambient_);
    for (size_t j = 0; j < p; ++j) axpy(k[j], basis_[j], v);
    span.push_back(std::move(v));
  }
  return Subspace(ambient_, span);
}

template <class T>
Subspace<T> Subspace<T>::image(const Mat<T>& m) const {
  if (m.cols() != ambient_) throw MathError("subspace image: dimension mismatch");
  std::vector<VecT<T>> span;
  for (const auto& v : basis_) span.push_back(m.apply(v));
  return Subspace(m.rows(), span);
}

template <class T>
Subspace<T> column_space(const Mat<T>& m) {
  std::vector<VecT<T>> cols;
  for (size_t j = 0; j < m.cols(); ++j) cols.push_back(m.col(j));
  return Subspace<T>(m.rows(), cols);
}

template <class T>
Subspace<T> kernel_space(const Mat<T>& m) {
  return Subspace<T>(m.cols(), kernel(m));
}

using QSubspace = Subspace<Rational>;
using CSubspace = Subspace<Gaussian>;

enum class FiltrationDirection { Ascending, Descending };

/// Nested subspaces indexed by integer levels.
template <class T>
class FilteredSpace {
 public:
  FilteredSpace(size_t ambient, FiltrationDirection dir, std::vector<std::pair<int, Subspace<T>>> levels);

  size_t ambient() const { return ambient_; }
  FiltrationDirection direction() const { return dir_; }
  // Subspace at an arbitrary level, extended by 0 / full outside the given range.
  Subspace<T> at(int level) const;
  const std::vector<std::pair<int, Subspace<T>>>& levels() const { return levels_; }
  int min_level() const { return levels_.front().first; }
  int max_level() const { return levels_.back().first; }

 private:
  size_t ambient_;
  FiltrationDirection dir_;
  std::vector<std::pair<int, Subspace<T>>> levels_;
};

template <class T>
FilteredSpace<T>::FilteredSpace(size_t ambient, FiltrationDirection dir,
                                std::vector<std::pair<int, Subspace<T>>> levels)
    : ambient_(ambient), dir_(dir), levels_(std::move(levels)) {
  if (levels_.empty()) throw MathError("filtration has no levels");
  for (size_t i = 0; i < levels_.size(); ++i) {
    if (levels_[i].second.ambient() != ambient_) throw MathError("filtration level has wrong ambient dimension");
    if (i > 0 && levels_[i].first != levels_[i - 1].first + 1)
      throw MathError("filtration levels must be consecutive integers");
    if (i == 0) continue;
    const auto& lo = levels_[i - 1].second;
    const auto& hi = levels_[i].second;
    bool ok = dir_ == FiltrationDirection::Ascending ? hi.contains(lo) : lo.contains(hi);
    if (!ok) throw MathError("filtration is not nested at level " + std::to_string(levels_[i].first));
  }
}

template <class T>
Subspace<T> FilteredSpace<T>::at(int level) const {
  if (level < min_level())
    return dir_ == FiltrationDirection::Ascending ? Subspace<T>(ambient_) : Subspace<T>::full(ambient_);
  if (level > max_level())
    return dir_ == FiltrationDirection::Ascending ? Subspace<T>::full(ambient_) : Subspace<T>(ambient_);
  return levels_[level - min_level()].second;
}

// The rational points W(Q) of a Gaussian subspace W, i.e. its Galois-fixed part.
QSubspace conjugate_fixed(const CSubspace& w);

CVec to_gaussian(const Vec& v);
CMat to_gaussian(const QMat& m);
CSubspace to_gaussian(const QSubspace& s);
CSubspace conj(const CSubspace& s);

/// Runtime-tagged scalar used at input boundaries where the field is declared in data.
class Scalar {
 public:
  Scalar() : v_(Rational(0)) {}
  Scalar(Rational q) : v_(std::move(q)) {}  // NOLINT(implicit)
  Scalar(Gaussian z) : v_(std::move(z)) {}  // NOLINT(implicit)
  Field field() const { return std::holds_alternative<Rational>(v_) ? Field::Rational : Field::Gaussian; }
  const Rational& rational() const;
  Gaussian gaussian() const;
  std::string str() const;

 private:
  std::variant<Rational, Gaussian> v_;
};

/// Runtime-tagged matrix; operations on operands of different fields are rejected.
class ExactMatrix {
 public:
  explicit ExactMatrix(QMat m) : field_(Field::Rational), q_(std::move(m)) {}
  explicit ExactMatrix(CMat m) : field_(Field::Gaussian), c_(std::move(m)) {}
  Field field() const { return field_; }
  const QMat& rational() const;
  const CMat& gaussian() const;
  size_t rows() const;
  size_t cols() const;

 private:
  Field field_;
  QMat q_;
  CMat c_;
};

struct ScalarSolution {
  std::optional<std::vector<Scalar>> particular;
  std::vector<std::vector<Scalar>> kernel;
};

ScalarSolution solve_affine(const ExactMatrix& a, const std::vector<Scalar>& b);
ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b);

std::string to_string(const Vec& v);
std::string to_string(const CVec& v);

}  // namespace cohw
