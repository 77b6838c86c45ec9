#ifndef BIQ_SCALAR_HPP
#define BIQ_SCALAR_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "biq/poly2.hpp"

namespace biq {

// Named indeterminates of the base field F = GF(2)(v1,...,vk).
class FieldCtx {
 public:
  explicit FieldCtx(std::vector<std::string> vars);

  int nvars() const { return int(vars_.size()); }
  const std::vector<std::string>& vars() const { return vars_; }
  const std::string& name(int i) const { return vars_[i]; }
  // -1 when unknown.
  int index_of(const std::string& name) const;

 private:
  std::vector<std::string> vars_;
};

// An element of F in canonical form: num/den with gcd(num, den) = 1 and
// den != 0. GF(2) coefficients make leading-coefficient normalization
// automatic, so canonical forms are unique.
class Scalar {
 public:
  Scalar() : num_(), den_(Poly2::one()) {}  // zero
  Scalar(Poly2 num, Poly2 den);             // reduces; throws on den == 0

  static Scalar zero() { return Scalar(); }
  static Scalar one() { return Scalar(Poly2::one(), Poly2::one()); }
  static Scalar from_poly(Poly2 p) { return Scalar(std::move(p), Poly2::one()); }
  static Scalar var(int idx) { return from_poly(Poly2::var(idx)); }

  const Poly2& num() const { return num_; }
  const Poly2& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const { return num_.is_one() && den_.is_one(); }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);  // throws on b == 0
  Scalar inverse() const;                                     // throws on zero
  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  friend bool operator==(const Scalar&, const Scalar&) = default;

 private:
  struct canonical_t {};
  Scalar(canonical_t, Poly2 num, Poly2 den)
      : num_(std::move(num)), den_(std::move(den)) {}

  Poly2 num_, den_;
};

std::string to_string(const Poly2& p, const FieldCtx& ctx);
std::string to_string(const Scalar& s, const FieldCtx& ctx);

// Deterministic random scalar: num and den of total degree <= degree_bound
// with at most term_bound terms, den nonzero, result canonical.
Scalar random_scalar(int degree_bound, int term_bound, uint64_t seed,
                     int nvars);

}  // namespace biq

#endif
