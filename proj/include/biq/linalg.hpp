#ifndef BIQ_LINALG_HPP
#define BIQ_LINALG_HPP

#include <vector>

#include "biq/scalar.hpp"

namespace biq {

using Vec = std::vector<Scalar>;
using Mat = std::vector<Vec>;  // row major

// Reduced row echelon form in place (exact arithmetic; pivot is the first
// row with a nonzero entry in scan order, so the result is deterministic).
// Returns the pivot column of each nonzero row.
std::vector<int> rref(Mat& m);

int rank(Mat m);

// Echelonized basis of {x : m x = 0}, one vector per free column, in
// increasing free-column order.
std::vector<Vec> kernel_basis(Mat m);

struct AffineSolution {
  bool consistent = false;
  Vec particular;            // one solution (free variables set to zero)
  std::vector<Vec> kernel;   // basis of the homogeneous solutions
};

// Solves m x = rhs over the scalar field.
AffineSolution solve_affine(Mat m, Vec rhs);

// Incremental echelonized span, used for subalgebra closures and
// membership tests.
class SpanBuilder {
 public:
  explicit SpanBuilder(int ncols) : ncols_(ncols) {}

  // Returns true when v was independent of the current span (and is added).
  bool add(Vec v);
  bool contains(Vec v) const;
  // Residual of v after reduction against the span (zero iff contained).
  Vec reduce(Vec v) const;
  int dim() const { return int(rows_.size()); }
  const std::vector<Vec>& rows() const { return rows_; }

 private:
  int ncols_;
  std::vector<Vec> rows_;   // sorted by pivot column
  std::vector<int> pivots_;
};

}  // namespace biq

#endif
