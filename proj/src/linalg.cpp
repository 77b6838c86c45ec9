#include "biq/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace biq {

namespace {
// row_i += c * row_j, skipping known-zero prefixes. Characteristic 2, so
// addition doubles as subtraction.
void axpy(Vec& dst, const Scalar& c, const Vec& src, int from) {
  if (c.is_zero()) return;
  for (size_t k = from; k < src.size(); ++k) {
    if (!src[k].is_zero()) dst[k] += c * src[k];
  }
}
}  // namespace

std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = int(m.size()), cols = int(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int p = -1;
    for (int i = r; i < rows; ++i) {
      if (!m[i][c].is_zero()) {
        p = i;
        break;
      }
    }
    if (p < 0) continue;
    std::swap(m[r], m[p]);
    Scalar inv = m[r][c].inverse();
    for (int k = c; k < cols; ++k) m[r][k] = inv * m[r][k];
    for (int i = 0; i < rows; ++i) {
      if (i != r && !m[i][c].is_zero()) {
        Scalar f = m[i][c];
        axpy(m[i], f, m[r], c);
      }
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(Mat m) { return int(rref(m).size()); }

std::vector<Vec> kernel_basis(Mat m) {
  if (m.empty()) return {};
  const int cols = int(m[0].size());
  std::vector<int> pivots = rref(m);
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<Vec> basis;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols, Scalar::zero());
    v[f] = Scalar::one();
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = m[r][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

AffineSolution solve_affine(Mat m, Vec rhs) {
  AffineSolution out;
  if (m.empty()) {
    out.consistent = true;
    return out;
  }
  const int rows = int(m.size()), cols = int(m[0].size());
  assert(int(rhs.size()) == rows);
  Mat aug = std::move(m);
  for (int i = 0; i < rows; ++i) aug[i].push_back(rhs[i]);
  std::vector<int> pivots = rref(aug);
  // inconsistent iff a pivot landed in the rhs column
  if (!pivots.empty() && pivots.back() == cols) return out;
  out.consistent = true;
  out.particular.assign(cols, Scalar::zero());
  for (size_t r = 0; r < pivots.size(); ++r)
    out.particular[pivots[r]] = aug[r][cols];
  std::vector<bool> is_pivot(cols, false);
  for (int c : pivots) is_pivot[c] = true;
  for (int f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    Vec v(cols, Scalar::zero());
    v[f] = Scalar::one();
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = aug[r][f];
    out.kernel.push_back(std::move(v));
  }
  return out;
}

bool SpanBuilder::add(Vec v) {
  v = reduce(std::move(v));
  int p = -1;
  for (int c = 0; c < ncols_; ++c) {
    if (!v[c].is_zero()) {
      p = c;
      break;
    }
  }
  if (p < 0) return false;
  Scalar inv = v[p].inverse();
  for (int c = p; c < ncols_; ++c) v[c] = inv * v[c];
  // back-eliminate the new pivot from existing rows
  for (size_t i = 0; i < rows_.size(); ++i) {
    Scalar f = rows_[i][p];
    axpy(rows_[i], f, v, p);
  }
  auto it = std::lower_bound(pivots_.begin(), pivots_.end(), p);
  size_t idx = size_t(it - pivots_.begin());
  pivots_.insert(it, p);
  rows_.insert(rows_.begin() + idx, std::move(v));
  return true;
}

Vec SpanBuilder::reduce(Vec v) const {
  for (size_t i = 0; i < rows_.size(); ++i) {
    Scalar f = v[pivots_[i]];
    axpy(v, f, rows_[i], pivots_[i]);
  }
  return v;
}

bool SpanBuilder::contains(Vec v) const {
  v = reduce(std::move(v));
  for (const auto& s : v)
    if (!s.is_zero()) return false;
  return true;
}

}  // namespace biq
