#include "biq/involution.hpp"

#include "biq/errors.hpp"

namespace biq {

Element Involution::apply(const Element& e) const {
  Vec in = e.coords();
  Vec out(kDim, Scalar::zero());
  for (int i = 0; i < kDim; ++i) {
    for (int j = 0; j < kDim; ++j) {
      if (!m[i][j].is_zero() && !in[j].is_zero()) out[i] += m[i][j] * in[j];
    }
  }
  return Element::from_coords(ctx, out);
}

Involution reference_involution(const AlgebraPtr& ctx) {
  // anti-automorphism: the image of x^i y^j z^k u^l is
  // u^l (z+1)^k y^j (x+1)^i
  Element x1 = ctx->gen(0) + ctx->one();
  Element z1 = ctx->gen(2) + ctx->one();
  Involution inv{ctx, Mat(kDim, Vec(kDim, Scalar::zero()))};
  for (int b = 0; b < kDim; ++b) {
    Element img = ctx->one();
    if (b & kBitU) img = img * ctx->gen(3);
    if (b & kBitZ) img = img * z1;
    if (b & kBitY) img = img * ctx->gen(1);
    if (b & kBitX) img = img * x1;
    Vec v = img.coords();
    for (int i = 0; i < kDim; ++i) inv.m[i][b] = v[i];
  }
  return inv;
}

namespace {

// true iff b is a scalar multiple of a (a nonzero)
bool proportional(const Element& a, const Element& b) {
  if (b.is_zero()) return true;
  int p = -1;
  for (int i = 0; i < kDim; ++i) {
    if (!a.coeff(i).is_zero()) {
      p = i;
      break;
    }
  }
  if (p < 0) return false;
  Scalar r = b.coeff(p) / a.coeff(p);
  for (int i = 0; i < kDim; ++i) {
    if (!(b.coeff(i) == r * a.coeff(i))) return false;
  }
  return true;
}

}  // namespace

Involution extend_involution(
    const AlgebraPtr& ctx,
    const std::vector<std::pair<Element, Element>>& assignments) {
  Involution tau = reference_involution(ctx);

  // g * tau(v) = image * g for every assignment, linear in g
  Mat stacked;
  for (const auto& [v, image] : assignments) {
    require_same_ctx(v, image);
    Mat r = right_mul_matrix(tau.apply(v));
    Mat l = left_mul_matrix(image);
    for (int i = 0; i < kDim; ++i) {
      Vec row(kDim, Scalar::zero());
      for (int j = 0; j < kDim; ++j) row[j] = r[i][j] + l[i][j];
      stacked.push_back(std::move(row));
    }
  }
  std::vector<Vec> kernel = kernel_basis(std::move(stacked));
  if (kernel.size() > 12)
    throw NoExtension("extend_involution: solution space too large to scan");

  for (uint32_t mask = 1; mask < (1u << kernel.size()); ++mask) {
    Vec gv(kDim, Scalar::zero());
    for (size_t k = 0; k < kernel.size(); ++k) {
      if (mask >> k & 1)
        for (int i = 0; i < kDim; ++i) gv[i] += kernel[k][i];
    }
    Element g = Element::from_coords(ctx, gv);
    if (g.is_zero()) continue;
    if (!proportional(g, tau.apply(g))) continue;
    Element gi;
    try {
      gi = inverse(g);
    } catch (const ZeroElement&) {
      continue;
    } catch (const ZeroDivisor&) {
      continue;
    }
    Involution out{ctx, Mat(kDim, Vec(kDim, Scalar::zero()))};
    for (int b = 0; b < kDim; ++b) {
      Vec img = (g * tau.apply(ctx->basis_element(b)) * gi).coords();
      for (int i = 0; i < kDim; ++i) out.m[i][b] = img[i];
    }
    return out;
  }
  throw NoExtension("extend_involution: no invertible symmetric solution");
}

}  // namespace biq
