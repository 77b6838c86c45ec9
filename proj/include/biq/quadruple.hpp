#ifndef BIQ_QUADRUPLE_HPP
#define BIQ_QUADRUPLE_HPP

#include <array>
#include <string>
#include <vector>

#include "biq/algebra.hpp"

namespace biq {

// An ordered quadruple of standard generators (x, y, z, u) presenting the
// algebra as [x^2+x, y^2) (x) [z^2+z, u^2).
struct Quadruple {
  Quadruple() = default;
  Quadruple(Element x, Element y, Element z, Element u);

  const Element& x() const { return g[0]; }
  const Element& y() const { return g[1]; }
  const Element& z() const { return g[2]; }
  const Element& u() const { return g[3]; }
  const AlgebraPtr& ctx() const { return g[0].ctx(); }

  std::array<Element, 4> g;
};

// Pair-order-insensitive equality.
bool operator==(const Quadruple& a, const Quadruple& b);

struct Violation {
  std::string relation;  // "R1" .. "R11"
  std::string detail;
  Element residual;  // nonzero witness where one exists
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

// Checks the generator relations R1-R11; never throws.
ValidationReport validate(const Quadruple& q);
void require_valid(const Quadruple& q);  // throws InvalidQuadruple

struct SymbolTuple {
  std::array<Scalar, 4> s;  // (alpha', beta', gamma', delta')
  friend bool operator==(const SymbolTuple&, const SymbolTuple&) = default;
};

// The four scalars read off the squares, after pair-order normalization.
SymbolTuple symbols(const Quadruple& q);

// Returns q or its pair swap (z,u,x,y), whichever first generator prints
// lexicographically smaller.
Quadruple canonicalize(const Quadruple& q);

struct StepKind {
  enum class Tag { L1, L2, L3, Pi, OmegaS, OmegaI, OmegaC };
  Tag tag;
  Scalar a, b;   // OmegaS uses both, OmegaI uses a, OmegaC uses b, L1 both
  int pair = 0;  // L1 only: 1 or 2 (0 = unparametrized)
  int slot = 0;  // L1 only: 1 = separable slot, 2 = inseparable slot

  static StepKind simple(Tag t) { return {t, Scalar::zero(), Scalar::zero()}; }
  static StepKind omega_s(Scalar a, Scalar b) {
    return {Tag::OmegaS, std::move(a), std::move(b)};
  }
  static StepKind omega_i(Scalar a) {
    return {Tag::OmegaI, std::move(a), Scalar::zero()};
  }
  static StepKind omega_c(Scalar b) {
    return {Tag::OmegaC, Scalar::zero(), std::move(b)};
  }
  static StepKind lambda1(int pair, int slot, Scalar a, Scalar b) {
    return {Tag::L1, std::move(a), std::move(b), pair, slot};
  }
  friend bool operator==(const StepKind&, const StepKind&) = default;
};

// All step kinds the transition q -> q2 qualifies as, under the pair
// alignment with the fewest changed generator slots.
std::vector<StepKind> classify_step(const Quadruple& q, const Quadruple& q2);

bool contains_kind(const std::vector<StepKind>& kinds, StepKind::Tag tag);

}  // namespace biq

#endif
