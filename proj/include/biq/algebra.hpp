#ifndef BIQ_ALGEBRA_HPP
#define BIQ_ALGEBRA_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "biq/linalg.hpp"
#include "biq/scalar.hpp"

namespace biq {

class AlgebraCtx;
using AlgebraPtr = std::shared_ptr<const AlgebraCtx>;

// Basis monomials x^i y^j z^k u^l are indexed by the bit pattern
// i | j<<1 | k<<2 | l<<3.
inline constexpr int kDim = 16;
inline constexpr int kBitX = 1, kBitY = 2, kBitZ = 4, kBitU = 8;

class Element {
 public:
  Element() = default;  // detached; only assignable
  Element(AlgebraPtr ctx, std::array<Scalar, kDim> coeffs)
      : ctx_(std::move(ctx)), c_(std::move(coeffs)) {}

  const AlgebraPtr& ctx() const { return ctx_; }
  const Scalar& coeff(int b) const { return c_[b]; }

  bool is_zero() const;
  bool is_scalar() const;           // in F*1 (including 0)
  const Scalar& scalar_part() const { return c_[0]; }

  Vec coords() const { return Vec(c_.begin(), c_.end()); }
  static Element from_coords(AlgebraPtr ctx, const Vec& v);

  friend Element operator+(const Element& a, const Element& b);
  friend Element operator*(const Element& a, const Element& b);
  friend Element operator*(const Scalar& s, const Element& e);
  Element& operator+=(const Element& o) { return *this = *this + o; }
  friend bool operator==(const Element& a, const Element& b);

 private:
  AlgebraPtr ctx_;
  std::array<Scalar, kDim> c_{};
};

// The biquaternion algebra [alpha,beta) (x) [gamma,delta) with a
// precomputed structure-constant table over the 16 basis monomials.
class AlgebraCtx : public std::enable_shared_from_this<AlgebraCtx> {
 public:
  static AlgebraPtr make(FieldCtx field, std::array<Scalar, 4> params);

  const FieldCtx& field() const { return field_; }
  const Scalar& param(int i) const { return params_[i]; }
  const std::array<Scalar, 4>& params() const { return params_; }

  // Product of basis monomials a and b, as sparse (basis, coefficient) rows.
  const std::vector<std::pair<int, Scalar>>& basis_product(int a, int b) const {
    return table_[a][b];
  }

  Element zero() const;
  Element one() const { return basis_element(0); }
  Element basis_element(int b) const;
  Element scalar_element(const Scalar& s) const;
  // 0..3 = x, y, z, u
  Element gen(int which) const { return basis_element(1 << which); }

 private:
  AlgebraCtx(FieldCtx field, std::array<Scalar, 4> params);

  FieldCtx field_;
  std::array<Scalar, 4> params_;
  std::array<std::array<std::vector<std::pair<int, Scalar>>, kDim>, kDim>
      table_;
};

// Structural context compatibility (same indeterminates, same parameters).
bool same_ctx(const AlgebraPtr& a, const AlgebraPtr& b);
void require_same_ctx(const Element& a, const Element& b);

Element inverse(const Element& e);  // throws ZeroElement / ZeroDivisor

struct ElementClass {
  enum class Kind { Scalar, ArtinSchreier, SquareCentral, Neither };
  Kind kind = Kind::Neither;
  Scalar witness;  // e^2+e, e^2, or e itself, when applicable
  bool artin_schreier = false;
  bool square_central = false;
};

ElementClass classify_element(const Element& e);

Element bracket(const Element& a, const Element& b);  // ab + ba
bool commutes(const Element& a, const Element& b);

// Echelonized basis of {c : cg = gc for all g}.
std::vector<Element> centralizer(const std::vector<Element>& gens);

// Echelonized basis of the unital subalgebra generated by gens.
std::vector<Element> subalgebra_closure(const std::vector<Element>& gens);

// True iff the 16 products e1^i e2^j e3^k e4^l are linearly independent.
bool generates(const Element& e1, const Element& e2, const Element& e3,
               const Element& e4);

// Coefficients expressing e in the span of cols, if such exist
// (free coefficients set to zero).
std::optional<Vec> express_in_span(const std::vector<Element>& cols,
                                   const Element& e);

// Matrices of v -> e*v and v -> v*e in basis coordinates.
Mat left_mul_matrix(const Element& e);
Mat right_mul_matrix(const Element& e);

std::string basis_name(int b);
std::string to_string(const Element& e);
Element parse_element(const std::string& text, const AlgebraPtr& ctx);

}  // namespace biq

#endif
