// Shared helpers for the test suites.
#ifndef BIQ_TESTS_COMMON_HPP
#define BIQ_TESTS_COMMON_HPP

#include <array>
#include <map>
#include <random>
#include <string>

#include "biq/algebra.hpp"
#include "biq/scalar.hpp"

namespace testutil {

// The generic biquaternion algebra over GF(2)(alpha,beta,gamma,delta) with
// parameters (alpha,beta,gamma,delta).
inline biq::AlgebraPtr std_algebra() {
  static biq::AlgebraPtr ctx = [] {
    biq::FieldCtx f({"alpha", "beta", "gamma", "delta"});
    std::array<biq::Scalar, 4> p{biq::Scalar::var(0), biq::Scalar::var(1),
                                 biq::Scalar::var(2), biq::Scalar::var(3)};
    return biq::AlgebraCtx::make(f, p);
  }();
  return ctx;
}

// Sparse random element: roughly half the basis coefficients are small
// polynomials and one is a simple fraction, so products stay tractable
// while both scalar code paths get exercised.
inline biq::Element random_element(const biq::AlgebraPtr& ctx, uint64_t seed,
                                   int density_pct = 50) {
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 1);
  const int nv = ctx->field().nvars();
  std::array<biq::Scalar, biq::kDim> c{};
  for (int b = 0; b < biq::kDim; ++b) {
    if (int(rng() % 100) >= density_pct) continue;
    biq::Scalar s = biq::random_scalar(1, 2, rng(), nv);
    c[b] = biq::Scalar::from_poly(s.num());
  }
  if (nv > 0) {
    int b = int(rng() % biq::kDim);
    biq::Poly2 den = biq::Poly2::var(int(rng() % nv)) + biq::Poly2::one();
    c[b] += biq::Scalar(biq::Poly2::one(), den);
  }
  return biq::Element(ctx, std::move(c));
}

// ---- independent word-rewrite oracle -------------------------------------
//
// Multiplies elements of the free algebra on the letters x,y,z,u and
// reduces words with the defining rewrite rules until every word is an
// increasing square-free string. This never consults the structure table.

using WordPoly = std::map<std::string, biq::Scalar>;

inline void word_add(WordPoly& p, const std::string& w, const biq::Scalar& c) {
  auto it = p.find(w);
  if (it == p.end()) {
    if (!c.is_zero()) p[w] = c;
  } else {
    it->second += c;
    if (it->second.is_zero()) p.erase(it);
  }
}

inline WordPoly word_reduce(WordPoly in, const std::array<biq::Scalar, 4>& prm) {
  auto letter = [](char c) { return int(std::string("xyzu").find(c)); };
  for (;;) {
    bool changed = false;
    WordPoly out;
    for (const auto& [w, c] : in) {
      size_t i = 0;
      bool reduced = false;
      for (; i + 1 < w.size(); ++i) {
        char a = w[i], b = w[i + 1];
        if (letter(a) < letter(b)) continue;
        std::string pre = w.substr(0, i), post = w.substr(i + 2);
        if (a == b) {
          // squares: xx = x+alpha, yy = beta, zz = z+gamma, uu = delta
          if (a == 'x') {
            word_add(out, pre + "x" + post, c);
            word_add(out, pre + post, c * prm[0]);
          } else if (a == 'y') {
            word_add(out, pre + post, c * prm[1]);
          } else if (a == 'z') {
            word_add(out, pre + "z" + post, c);
            word_add(out, pre + post, c * prm[2]);
          } else {
            word_add(out, pre + post, c * prm[3]);
          }
        } else if (a == 'y' && b == 'x') {
          word_add(out, pre + "xy" + post, c);
          word_add(out, pre + "y" + post, c);
        } else if (a == 'u' && b == 'z') {
          word_add(out, pre + "zu" + post, c);
          word_add(out, pre + "u" + post, c);
        } else {
          // cross-pair letters commute
          word_add(out, pre + std::string(1, b) + std::string(1, a) + post, c);
        }
        reduced = true;
        changed = true;
        break;
      }
      if (!reduced) word_add(out, w, c);
    }
    in = std::move(out);
    if (!changed) return in;
  }
}

inline WordPoly word_mul(const WordPoly& a, const WordPoly& b,
                         const std::array<biq::Scalar, 4>& prm) {
  WordPoly prod;
  for (const auto& [wa, ca] : a)
    for (const auto& [wb, cb] : b) word_add(prod, wa + wb, ca * cb);
  return word_reduce(std::move(prod), prm);
}

inline std::string basis_word(int b) {
  std::string w;
  const char* letters = "xyzu";
  for (int k = 0; k < 4; ++k)
    if (b & (1 << k)) w += letters[k];
  return w;
}

inline WordPoly to_word_poly(const biq::Element& e) {
  WordPoly p;
  for (int b = 0; b < biq::kDim; ++b)
    word_add(p, basis_word(b), e.coeff(b));
  return p;
}

inline biq::Element from_word_poly(const biq::AlgebraPtr& ctx,
                                   const WordPoly& p) {
  std::array<biq::Scalar, biq::kDim> c{};
  for (const auto& [w, coef] : p) {
    int b = 0;
    for (char ch : w) b |= 1 << int(std::string("xyzu").find(ch));
    c[b] += coef;
  }
  return biq::Element(ctx, std::move(c));
}

// Oracle product of two elements via word rewriting.
inline biq::Element oracle_mul(const biq::Element& a, const biq::Element& b) {
  auto ctx = a.ctx();
  return from_word_poly(
      ctx, word_mul(to_word_poly(a), to_word_poly(b), ctx->params()));
}

}  // namespace testutil

#endif
