#ifndef BIQ_CHAIN_HPP
#define BIQ_CHAIN_HPP

#include <string>
#include <vector>

#include "biq/quadruple.hpp"

namespace biq {

// One step of a chain: the claimed step kind (with parameters where the
// kind carries them) and the full target quadruple.
struct ChainLink {
  StepKind claimed;
  Quadruple target;
};

struct Chain {
  Quadruple start;
  std::vector<ChainLink> links;

  const Quadruple& end() const {
    return links.empty() ? start : links.back().target;
  }
  int count(StepKind::Tag tag) const;
};

struct LinkReport {
  int index = 0;  // 0-based link position
  bool pass = true;
  std::vector<std::string> issues;
};

struct ChainReport {
  bool start_valid = true;
  std::vector<LinkReport> links;
  bool ok() const;
};

// Given a commuting pair of independent Artin-Schreier elements, builds a
// full generator quadruple (xh, y0, zh, u0) containing them in the two
// separable slots. Throws PreconditionViolation / ConstructionFailure.
Quadruple complete_from_AS_pair(const Element& xh, const Element& zh);

// Given a commuting independent pair (Artin-Schreier xh, square-central
// uh), builds a quadruple (xh, y0, z0, uh). When the intermediate linear
// system degenerates (c(c+1) = d^2 * uh^2) the fallback branch z0 = q is
// taken and *degenerate is set when provided.
Quadruple complete_from_mixed_pair(const Element& xh, const Element& uh,
                                   bool* degenerate = nullptr);

// A nonscalar element commuting with both arguments, normalized to be
// Artin-Schreier or square-central. Preconditions: e, e2 are both
// Artin-Schreier or both square-central and do not commute.
Element common_commuter(const Element& e, const Element& e2);

// A chain of at most three three-slot links from q to q2.
Chain connect(const Quadruple& q, const Quadruple& q2);

// Decomposes a three-slot transition into at most three single-pair links
// and at most two two-slot links.
Chain decompose_lambda3(const Quadruple& q, const Quadruple& q2);

// Replaces a two-slot transition by at most three links, each a
// parametrized single-generator step or one multiplicative move. One
// degenerate mixed-slot orbit needs four links with two coupled
// multiplicative moves instead.
Chain replace_lambda2(const Quadruple& q, const Quadruple& q2);

// Best-effort decomposition of a single-pair transition into at most three
// parametrized single-generator steps. Throws NotDecomposed when no
// suitable middle element exists.
Chain decompose_pi(const Quadruple& q, const Quadruple& q2);

// Independently re-checks every link of a chain: target validity, step
// classification containment, and parameter agreement where the claimed
// kind carries parameters.
ChainReport verify_chain(const Chain& c);

// connect + full refinement: three-slot links are decomposed, two-slot
// links replaced, and single-pair links split into parametrized steps
// where possible. At most 45 links.
Chain full_pipeline(const Quadruple& q, const Quadruple& q2);

std::string tag_name(StepKind::Tag tag);

}  // namespace biq

#endif
