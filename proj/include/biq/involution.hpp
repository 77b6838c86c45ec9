#ifndef BIQ_INVOLUTION_HPP
#define BIQ_INVOLUTION_HPP

#include <utility>
#include <vector>

#include "biq/algebra.hpp"

namespace biq {

// An F-linear involution of the algebra, stored by its action on the 16
// basis monomials (column b holds the image of basis element b).
struct Involution {
  AlgebraPtr ctx;
  Mat m;

  Element apply(const Element& e) const;
};

// The tensor product of the canonical symplectic involutions of the two
// quaternion factors: x -> x+1, y -> y, z -> z+1, u -> u.
Involution reference_involution(const AlgebraPtr& ctx);

// An involution satisfying image(v) for every listed element v, realized by
// conjugating the reference involution with an invertible g that solves
// g*tau(v) = image(v)*g and has tau(g) proportional to g. Throws NoExtension
// when no such g exists among the GF(2) combinations of the solution basis.
Involution extend_involution(
    const AlgebraPtr& ctx,
    const std::vector<std::pair<Element, Element>>& assignments);

}  // namespace biq

#endif
