#ifndef BIQ_STEPS_HPP
#define BIQ_STEPS_HPP

#include "biq/quadruple.hpp"

namespace biq {

// y and u are multiplied on the left by a + b(x+z); needs the scalar norm
// a^2+ab+b^2(alpha+gamma) to be nonzero.
Quadruple apply_omega_s(const Quadruple& q, const Scalar& a, const Scalar& b);

// a*y*u is added to both x and z.
Quadruple apply_omega_i(const Quadruple& q, const Scalar& a);

// x becomes x + by(1+by)^{-1}z and u becomes (1+by)u; needs 1+b^2*beta != 0.
Quadruple apply_omega_c(const Quadruple& q, const Scalar& b);

enum class Lambda1Slot { Sep, Insep };

// Single-slot change within one quaternion pair. The inseparable slot gets
// y' = (a+bx)y (norm a^2+ab+b^2*alpha must be nonzero); the separable slot
// gets x' = x + a + b*y. pair is 1 or 2.
Quadruple apply_lambda1(const Quadruple& q, int pair, Lambda1Slot slot,
                        const Scalar& a, const Scalar& b);

struct SymbolMove {
  enum class Kind {
    OmegaS,
    OmegaI,
    OmegaC,
    L1InsepFirst,
    L1SepFirst,
    L1InsepSecond,
    L1SepSecond
  };
  Kind kind;
  Scalar a, b;
};

// Pure symbol-level counterpart of the apply_* operations.
SymbolTuple transform_symbols(const SymbolMove& move, const SymbolTuple& s);

}  // namespace biq

#endif
