#pragma once
// Baker-Campbell-Hausdorff series in Lie form.

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "cohw/exactla.hpp"

namespace cohw {

class NilpotentLieAlgebra;

using Word = std::vector<uint8_t>;
using FreePoly = std::map<Word, Rational>;

// log(exp x_0 * ... * exp x_{arity-1}) in the free associative algebra, truncated above `degree`.
FreePoly log_exp_product(int degree, int arity);

/// Lie-form coefficients of the series: each word w contributes coeff(w)/|w| times
/// the right-normed bracket [w_1, [w_2, [..., w_n]]].
class BchTable {
 public:
  static std::shared_ptr<const BchTable> get(int degree, int arity);

  int degree() const { return degree_; }
  int arity() const { return arity_; }
  size_t terms() const { return coeffs_.size(); }
  Vec evaluate(const NilpotentLieAlgebra& lie, const std::vector<const Vec*>& inputs) const;

 private:
  BchTable(int degree, int arity);
  struct Node {
    uint8_t letter;
    int parent;  // node of the word without its first letter, -1 for single letters
  };
  int degree_, arity_;
  std::vector<Node> nodes_;  // sorted by word length
  std::vector<std::pair<int, Rational>> coeffs_;
};

}  // namespace cohw
