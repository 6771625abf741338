#include "cohw/bch.hpp"

#include <mutex>

#include "cohw/nilpotent.hpp"

namespace cohw {

namespace {

FreePoly multiply(const FreePoly& a, const FreePoly& b, int degree) {
  FreePoly out;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) {
      if (static_cast<int>(wa.size() + wb.size()) > degree) continue;
      Word w(wa);
      w.insert(w.end(), wb.begin(), wb.end());
      out[w] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

FreePoly exp_letter(uint8_t letter, int degree) {
  FreePoly p;
  Rational fact = 1;
  Word w;
  for (int m = 0; m <= degree; ++m) {
    if (m > 0) fact *= m;
    p[w] = Rational(1) / fact;
    w.push_back(letter);
  }
  return p;
}

}  // namespace

FreePoly log_exp_product(int degree, int arity) {
  FreePoly prod{{Word{}, Rational(1)}};
  for (int j = 0; j < arity; ++j) prod = multiply(prod, exp_letter(static_cast<uint8_t>(j), degree), degree);
  FreePoly z = prod;
  z.erase(Word{});
  FreePoly out;
  FreePoly power = z;
  for (int m = 1; m <= degree; ++m) {
    Rational c = frac(m % 2 == 1 ? 1 : -1, m);
    for (const auto& [w, x] : power) out[w] += c * x;
    power = multiply(power, z, degree);
  }
  for (auto it = out.begin(); it != out.end();) it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
  return out;
}

BchTable::BchTable(int degree, int arity) : degree_(degree), arity_(arity) {
  FreePoly series = log_exp_product(degree, arity);
  std::map<Word, int> index;
  // Register every suffix, shortest first, so parents precede children.
  std::vector<std::vector<Word>> by_len(degree + 1);
  for (const auto& [w, c] : series)
    for (size_t s = 0; s < w.size(); ++s) {
      Word suf(w.begin() + s, w.end());
      if (index.emplace(suf, -1).second) by_len[suf.size()].push_back(suf);
    }
  for (int len = 1; len <= degree; ++len)
    for (const auto& w : by_len[len]) {
      Word tail(w.begin() + 1, w.end());
      int parent = tail.empty() ? -1 : index.at(tail);
      index[w] = static_cast<int>(nodes_.size());
      nodes_.push_back({w[0], parent});
    }
  for (const auto& [w, c] : series) coeffs_.emplace_back(index.at(w), c / Rational(static_cast<long>(w.size())));
}

std::shared_ptr<const BchTable> BchTable::get(int degree, int arity) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::shared_ptr<const BchTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(degree, arity);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto table = std::shared_ptr<const BchTable>(new BchTable(degree, arity));
  cache.emplace(key, table);
  return table;
}

Vec BchTable::evaluate(const NilpotentLieAlgebra& lie, const std::vector<const Vec*>& inputs) const {
  if (static_cast<int>(inputs.size()) != arity_) throw MathError("BCH arity mismatch");
  size_t n = lie.dim();
  std::vector<Vec> vals(nodes_.size());
  std::vector<bool> zero(nodes_.size(), false);
  for (size_t i = 0; i < nodes_.size(); ++i) {
    const Node& nd = nodes_[i];
    const Vec& x = *inputs[nd.letter];
    if (nd.parent < 0) {
      vals[i] = x;
      zero[i] = is_zero_vec(x);
    } else if (zero[nd.parent] || is_zero_vec(x)) {
      zero[i] = true;
    } else {
      vals[i] = lie.bracket(x, vals[nd.parent]);
      zero[i] = is_zero_vec(vals[i]);
    }
  }
  Vec out(n);
  for (const auto& [node, c] : coeffs_)
    if (!zero[node]) axpy(c, vals[node], out);
  return out;
}

}  // namespace cohw
