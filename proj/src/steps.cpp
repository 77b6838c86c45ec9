#include "biq/steps.hpp"

#include "biq/errors.hpp"

namespace biq {

namespace {

std::array<Scalar, 4> quad_symbols(const Quadruple& q) {
  // raw squares in slot order, without pair normalization
  return {(q.x() * q.x() + q.x()).scalar_part(),
          (q.y() * q.y()).scalar_part(),
          (q.z() * q.z() + q.z()).scalar_part(),
          (q.u() * q.u()).scalar_part()};
}

}  // namespace

Quadruple apply_omega_s(const Quadruple& q, const Scalar& a, const Scalar& b) {
  require_valid(q);
  if (a.is_zero() && b.is_zero())
    throw DegenerateParams("omega_s: both parameters are zero");
  auto p = quad_symbols(q);
  Scalar norm = a * a + a * b + b * b * (p[0] + p[2]);
  if (norm.is_zero())
    throw DegenerateParams("omega_s: multiplier a+b(x+z) is not invertible");
  const AlgebraPtr& ctx = q.ctx();
  Element m = ctx->scalar_element(a) +
              ctx->scalar_element(b) * (q.x() + q.z());
  return Quadruple(q.x(), m * q.y(), q.z(), m * q.u());
}

Quadruple apply_omega_i(const Quadruple& q, const Scalar& a) {
  require_valid(q);
  Element d = q.ctx()->scalar_element(a) * (q.y() * q.u());
  return Quadruple(q.x() + d, q.y(), q.z() + d, q.u());
}

Quadruple apply_omega_c(const Quadruple& q, const Scalar& b) {
  require_valid(q);
  auto p = quad_symbols(q);
  Scalar norm = Scalar::one() + b * b * p[1];  // (1+by)^2
  if (norm.is_zero())
    throw DegenerateParams("omega_c: 1+by is not invertible");
  const AlgebraPtr& ctx = q.ctx();
  Element by = ctx->scalar_element(b) * q.y();
  Element one_by = ctx->one() + by;
  return Quadruple(q.x() + by * inverse(one_by) * q.z(), q.y(), q.z(),
                   one_by * q.u());
}

Quadruple apply_lambda1(const Quadruple& q, int pair, Lambda1Slot slot,
                        const Scalar& a, const Scalar& b) {
  require_valid(q);
  if (pair != 1 && pair != 2) throw UsageError("lambda1: pair must be 1 or 2");
  auto p = quad_symbols(q);
  const AlgebraPtr& ctx = q.ctx();
  const Element& sep = pair == 1 ? q.x() : q.z();
  const Element& insep = pair == 1 ? q.y() : q.u();
  Element ns, ni;
  if (slot == Lambda1Slot::Insep) {
    Scalar alpha = pair == 1 ? p[0] : p[2];
    Scalar norm = a * a + a * b + b * b * alpha;
    if (norm.is_zero())
      throw DegenerateParams("lambda1: multiplier is not invertible");
    ns = sep;
    ni = (ctx->scalar_element(a) + ctx->scalar_element(b) * sep) * insep;
  } else {
    ns = sep + ctx->scalar_element(a) + ctx->scalar_element(b) * insep;
    ni = insep;
  }
  if (pair == 1) return Quadruple(ns, ni, q.z(), q.u());
  return Quadruple(q.x(), q.y(), ns, ni);
}

SymbolTuple transform_symbols(const SymbolMove& move, const SymbolTuple& s) {
  const Scalar &alpha = s.s[0], &beta = s.s[1], &gamma = s.s[2],
               &delta = s.s[3];
  const Scalar &a = move.a, &b = move.b;
  SymbolTuple r = s;
  switch (move.kind) {
    case SymbolMove::Kind::OmegaS: {
      if (a.is_zero() && b.is_zero())
        throw DegenerateParams("omega_s: both parameters are zero");
      Scalar m = a * a + a * b + b * b * (alpha + gamma);
      if (m.is_zero()) throw DegenerateParams("omega_s: zero norm");
      r.s[1] = m * beta;
      r.s[3] = m * delta;
      break;
    }
    case SymbolMove::Kind::OmegaI: {
      Scalar t = a * a * beta * delta;
      r.s[0] = alpha + t;
      r.s[2] = gamma + t;
      break;
    }
    case SymbolMove::Kind::OmegaC: {
      Scalar m = Scalar::one() + b * b * beta;
      if (m.is_zero()) throw DegenerateParams("omega_c: 1+by not invertible");
      r.s[0] = alpha + b * b * beta * gamma / m;
      r.s[3] = delta * m;
      break;
    }
    case SymbolMove::Kind::L1InsepFirst: {
      Scalar m = a * a + a * b + b * b * alpha;
      if (m.is_zero()) throw DegenerateParams("lambda1: zero norm");
      r.s[1] = m * beta;
      break;
    }
    case SymbolMove::Kind::L1SepFirst:
      r.s[0] = alpha + a * a + a + b * b * beta;
      break;
    case SymbolMove::Kind::L1InsepSecond: {
      Scalar m = a * a + a * b + b * b * gamma;
      if (m.is_zero()) throw DegenerateParams("lambda1: zero norm");
      r.s[3] = m * delta;
      break;
    }
    case SymbolMove::Kind::L1SepSecond:
      r.s[2] = gamma + a * a + a + b * b * delta;
      break;
  }
  return r;
}

}  // namespace biq
