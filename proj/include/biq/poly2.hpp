#ifndef BIQ_POLY2_HPP
#define BIQ_POLY2_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace biq {

// Hard cap on the number of field indeterminates. Exponent vectors are
// fixed-size so monomials stay allocation-free.
inline constexpr int kMaxVars = 8;

// A monomial over GF(2): just an exponent vector. Unused slots are zero.
struct Mono {
  std::array<uint16_t, kMaxVars> e{};

  int total_degree() const {
    int d = 0;
    for (auto x : e) d += x;
    return d;
  }
  friend bool operator==(const Mono&, const Mono&) = default;
};

// Graded lexicographic: total degree first, ties broken by the declared
// variable order (earlier variable with larger exponent wins).
bool grlex_less(const Mono& a, const Mono& b);

// Sparse multivariate polynomial over GF(2). A term is present or absent;
// addition is symmetric difference. Terms are kept sorted in descending
// grlex order, leading term first.
class Poly2 {
 public:
  Poly2() = default;  // zero

  static Poly2 one();
  static Poly2 var(int idx, int exp = 1);
  static Poly2 mono(const Mono& m);
  // Sorts and cancels duplicate pairs (characteristic 2).
  static Poly2 from_monos(std::vector<Mono> ms);

  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  bool is_constant() const;
  int total_degree() const;  // -1 for the zero polynomial
  const std::vector<Mono>& terms() const { return terms_; }
  const Mono& leading() const { return terms_.front(); }

  friend Poly2 operator+(const Poly2& a, const Poly2& b);
  friend Poly2 operator*(const Poly2& a, const Poly2& b);
  Poly2& operator+=(const Poly2& o) { return *this = *this + o; }
  Poly2& operator*=(const Poly2& o) { return *this = *this * o; }
  friend bool operator==(const Poly2&, const Poly2&) = default;

  // Quotient when b divides a exactly, nullopt otherwise.
  static std::optional<Poly2> exact_div(const Poly2& a, const Poly2& b);

  int deg_in(int v) const;
  // Coefficient of x_v^k, with the x_v exponent removed.
  Poly2 coeff_wrt(int v, int k) const;
  Poly2 lc_wrt(int v) const { return coeff_wrt(v, deg_in(v)); }
  Poly2 mul_var_pow(int v, int k) const;
  // Indices of variables that actually occur.
  std::vector<int> support() const;

 private:
  std::vector<Mono> terms_;
};

Poly2 gcd(const Poly2& a, const Poly2& b);

}  // namespace biq

#endif
