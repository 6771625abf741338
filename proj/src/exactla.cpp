#include "cohw/exactla.hpp"

#include <cctype>

namespace cohw {

Gaussian& Gaussian::operator*=(const Gaussian& o) {
  Rational r = re * o.re - im * o.im;
  Rational i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

Gaussian& Gaussian::operator/=(const Gaussian& o) {
  Rational n = o.norm();
  if (sgn(n) == 0) throw MathError("division by zero");
  Rational r = (re * o.re + im * o.im) / n;
  Rational i = (im * o.re - re * o.im) / n;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

const char* field_name(Field f) { return f == Field::Rational ? "rational" : "gaussian"; }

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const Gaussian& z) {
  std::string s = z.re.get_str();
  if (sgn(z.im) < 0) {
    s += "-" + Rational(-z.im).get_str() + "*i";
  } else {
    s += "+" + z.im.get_str() + "*i";
  }
  return s;
}

static std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

Rational parse_rational(const std::string& raw) {
  std::string s = strip(raw);
  if (s.empty()) throw MathError("empty rational literal");
  if (s[0] == '+') s = s.substr(1);
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '/' || c == '-'))
      throw MathError("malformed rational literal '" + raw + "'");
  Rational q;
  if (q.set_str(s, 10) != 0) throw MathError("malformed rational literal '" + raw + "'");
  if (sgn(q.get_den()) == 0) throw MathError("zero denominator in '" + raw + "'");
  q.canonicalize();
  return q;
}

// Accepts "a", "bi", "b*i", "a+bi", "a-b*i", "i", "-i" with rational a, b.
Gaussian parse_gaussian(const std::string& raw) {
  std::string s = strip(raw);
  if (s.empty()) throw MathError("empty scalar literal");
  if (s.back() != 'i') return Gaussian(parse_rational(s));
  s.pop_back();
  if (!s.empty() && s.back() == '*') s.pop_back();
  // Split at the last sign that is not the leading one and not inside a fraction denominator.
  size_t split = std::string::npos;
  for (size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      split = k;
      break;
    }
  }
  std::string re_part = split == std::string::npos ? "" : s.substr(0, split);
  std::string im_part = split == std::string::npos ? s : s.substr(split);
  Rational im;
  if (im_part.empty() || im_part == "+") im = 1;
  else if (im_part == "-") im = -1;
  else im = parse_rational(im_part);
  Rational re = re_part.empty() ? Rational(0) : parse_rational(re_part);
  return Gaussian(re, im);
}

QSubspace conjugate_fixed(const CSubspace& w) {
  size_t n = w.ambient();
  size_t m = w.dim();
  if (m == 0) return QSubspace(n);
  // Unknown coefficients c_j = a_j + i b_j; impose Im(sum c_j w_j) = 0.
  QMat cond(n, 2 * m);
  for (size_t j = 0; j < m; ++j)
    for (size_t k = 0; k < n; ++k) {
      cond(k, j) = w.basis()[j][k].im;
      cond(k, m + j) = w.basis()[j][k].re;
    }
  std::vector<Vec> span;
  for (const auto& sol : kernel(cond)) {
    Vec v(n);
    for (size_t j = 0; j < m; ++j)
      for (size_t k = 0; k < n; ++k) v[k] += sol[j] * w.basis()[j][k].re - sol[m + j] * w.basis()[j][k].im;
    span.push_back(std::move(v));
  }
  return QSubspace(n, span);
}

CVec to_gaussian(const Vec& v) {
  CVec out;
  out.reserve(v.size());
  for (const auto& x : v) out.emplace_back(x);
  return out;
}

CMat to_gaussian(const QMat& m) {
  CMat out(m.rows(), m.cols());
  for (size_t i = 0; i < m.rows(); ++i)
    for (size_t j = 0; j < m.cols(); ++j) out(i, j) = Gaussian(m(i, j));
  return out;
}

CSubspace to_gaussian(const QSubspace& s) {
  std::vector<CVec> span;
  for (const auto& v : s.basis()) span.push_back(to_gaussian(v));
  return CSubspace(s.ambient(), span);
}

CSubspace conj(const CSubspace& s) {
  std::vector<CVec> span;
  for (const auto& v : s.basis()) {
    CVec c(v);
    for (auto& x : c) x = x.conj();
    span.push_back(std::move(c));
  }
  return CSubspace(s.ambient(), span);
}

const Rational& Scalar::rational() const {
  if (field() != Field::Rational) throw MathError("field mismatch: expected a rational scalar");
  return std::get<Rational>(v_);
}

Gaussian Scalar::gaussian() const {
  if (field() == Field::Rational) return Gaussian(std::get<Rational>(v_));
  return std::get<Gaussian>(v_);
}

std::string Scalar::str() const {
  return field() == Field::Rational ? to_string(std::get<Rational>(v_)) : to_string(std::get<Gaussian>(v_));
}

const QMat& ExactMatrix::rational() const {
  if (field_ != Field::Rational) throw MathError("field mismatch: expected a rational matrix");
  return q_;
}

const CMat& ExactMatrix::gaussian() const {
  if (field_ != Field::Gaussian) throw MathError("field mismatch: expected a gaussian matrix");
  return c_;
}

size_t ExactMatrix::rows() const { return field_ == Field::Rational ? q_.rows() : c_.rows(); }
size_t ExactMatrix::cols() const { return field_ == Field::Rational ? q_.cols() : c_.cols(); }

ScalarSolution solve_affine(const ExactMatrix& a, const std::vector<Scalar>& b) {
  for (const auto& x : b)
    if (x.field() != a.field()) throw MathError("field mismatch between matrix and right-hand side");
  ScalarSolution out;
  if (a.field() == Field::Rational) {
    Vec rhs;
    for (const auto& x : b) rhs.push_back(x.rational());
    auto s = solve_affine(a.rational(), rhs);
    if (s.particular) out.particular = std::vector<Scalar>(s.particular->begin(), s.particular->end());
    for (const auto& k : s.kernel) out.kernel.emplace_back(k.begin(), k.end());
  } else {
    CVec rhs;
    for (const auto& x : b) rhs.push_back(x.gaussian());
    auto s = solve_affine(a.gaussian(), rhs);
    if (s.particular) out.particular = std::vector<Scalar>(s.particular->begin(), s.particular->end());
    for (const auto& k : s.kernel) out.kernel.emplace_back(k.begin(), k.end());
  }
  return out;
}

ExactMatrix multiply(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.field() != b.field()) throw MathError("field mismatch in matrix product");
  if (a.field() == Field::Rational) return ExactMatrix(a.rational() * b.rational());
  return ExactMatrix(a.gaussian() * b.gaussian());
}

std::string to_string(const Vec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

std::string to_string(const CVec& v) {
  std::string s;
  for (size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

}  // namespace cohw
