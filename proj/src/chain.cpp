#include "biq/chain.hpp"

#include <algorithm>

#include "biq/errors.hpp"
#include "biq/involution.hpp"
#include "biq/steps.hpp"

namespace biq {

Chain replace_lambda2_impl(const Quadruple& q, const Quadruple& q2,
                           bool allow_degenerate);

namespace {

using Tag = StepKind::Tag;

Quadruple pair_swapped(const Quadruple& q) {
  return Quadruple(q.z(), q.u(), q.x(), q.y());
}

// Linear constraint system for an unknown element s of the algebra.
struct Sys {
  Mat m;
  Vec rhs;

  void append(const Mat& rows, const Vec& r) {
    for (int i = 0; i < kDim; ++i) {
      m.push_back(rows[i]);
      rhs.push_back(r[i]);
    }
  }
  // [e, s] = 0
  void comm(const Element& e) {
    Mat l = left_mul_matrix(e), r = right_mul_matrix(e);
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) l[i][j] += r[i][j];
    append(l, Vec(kDim, Scalar::zero()));
  }
  // e s + s e = s
  void odd(const Element& e) {
    Mat l = left_mul_matrix(e), r = right_mul_matrix(e);
    for (int i = 0; i < kDim; ++i) {
      for (int j = 0; j < kDim; ++j) l[i][j] += r[i][j];
      l[i][i] += Scalar::one();
    }
    append(l, Vec(kDim, Scalar::zero()));
  }
  // s e + e s = e  (s acts as the separable partner of e)
  void pairs(const Element& e) {
    Mat l = left_mul_matrix(e), r = right_mul_matrix(e);
    for (int i = 0; i < kDim; ++i)
      for (int j = 0; j < kDim; ++j) l[i][j] += r[i][j];
    append(l, e.coords());
  }
};

// Nonzero solutions of the system, deterministically ordered: the
// particular solution first, then GF(2) combinations of the homogeneous
// basis added to it.
std::vector<Element> solve_candidates(const AlgebraPtr& ctx, const Sys& sys,
                                      uint32_t cap = 256) {
  std::vector<Element> out;
  AffineSolution sol = solve_affine(sys.m, sys.rhs);
  if (!sol.consistent) return out;
  uint32_t combos = 1;
  for (size_t k = 0; k < sol.kernel.size() && combos < cap; ++k) combos <<= 1;
  combos = std::min(combos, cap);
  for (uint32_t mask = 0; mask < combos; ++mask) {
    Vec v = sol.particular;
    for (size_t k = 0; k < sol.kernel.size(); ++k) {
      if (mask >> k & 1)
        for (int i = 0; i < kDim; ++i) v[i] += sol.kernel[k][i];
    }
    Element e = Element::from_coords(ctx, v);
    if (!e.is_zero()) out.push_back(std::move(e));
  }
  return out;
}

// All valid quadruples (s1, s2, t, u0) completing a given square-central
// fourth slot.
std::vector<Quadruple> completions_z(const Element& s1, const Element& s2,
                                     const Element& u0) {
  Sys sys;
  sys.comm(s1);
  sys.comm(s2);
  sys.pairs(u0);
  std::vector<Quadruple> out;
  for (const Element& t : solve_candidates(s1.ctx(), sys)) {
    Quadruple q(s1, s2, t, u0);
    if (validate(q).ok()) out.push_back(std::move(q));
  }
  return out;
}

// All valid quadruples (s1, s2, z0, w) completing a given separable third
// slot.
std::vector<Quadruple> completions_u(const Element& s1, const Element& s2,
                                     const Element& z0) {
  Sys sys;
  sys.comm(s1);
  sys.comm(s2);
  sys.odd(z0);
  std::vector<Quadruple> out;
  for (const Element& w : solve_candidates(s1.ctx(), sys)) {
    Quadruple q(s1, s2, z0, w);
    if (validate(q).ok()) out.push_back(std::move(q));
  }
  return out;
}

// Completions of a first pair (s1, s2) against a second-pair element e that
// is placed by its type: separable third slot or square-central fourth.
std::vector<Quadruple> completions_pair2(const Element& s1, const Element& s2,
                                         const Element& e) {
  ElementClass cls = classify_element(e);
  if (cls.kind == ElementClass::Kind::ArtinSchreier)
    return completions_u(s1, s2, e);
  if (cls.kind == ElementClass::Kind::SquareCentral)
    return completions_z(s1, s2, e);
  throw ConstructionFailure(
      "shared element is neither separable nor square-central: " +
      to_string(e));
}

Quadruple first_or_throw(std::vector<Quadruple> cands, const char* what) {
  if (cands.empty()) throw ConstructionFailure(what);
  return std::move(cands[0]);
}

// Among the candidate targets, prefer one whose transition from prev
// refines by replace_lambda2 within the normal bounds (three links, one
// multiplicative move). Probes skip the expensive degenerate construction
// and are capped to keep middle selection cheap; if no candidate refines
// normally, fall back to the first one (the caller's replacement may then
// take the degenerate route once).
Quadruple choose_refinable(const Quadruple& prev, std::vector<Quadruple> cands,
                           const char* what) {
  if (cands.empty()) throw ConstructionFailure(what);
  int probes = 0;
  for (const Quadruple& cand : cands) {
    if (++probes > 16) break;
    try {
      replace_lambda2_impl(prev, cand, /*allow_degenerate=*/false);
      return cand;
    } catch (const std::runtime_error&) {
    }
  }
  return cands[0];
}

// v known to commute with a standard pair; scale it into the separable or
// square-central normal form of the quadratic extension it generates.
// Returns (element, is_separable).
std::pair<Element, bool> normalize_quadratic(const Element& v) {
  if (v.is_scalar())
    throw ConstructionFailure("quadratic normalization of a scalar element");
  auto sr = express_in_span({v.ctx()->one(), v}, v * v);
  if (!sr)
    throw ConstructionFailure(
        "element does not generate a quadratic extension: " + to_string(v));
  const Scalar& r = (*sr)[1];
  if (r.is_zero()) return {v, false};
  return {v.ctx()->scalar_element(Scalar::one() / r) * v, true};
}

struct Alignment {
  Quadruple p;                  // q2, possibly pair swapped
  std::array<bool, 4> changed;  // slotwise difference against q
  int n = 0;
};

Alignment align(const Quadruple& q, const Quadruple& q2) {
  auto diff = [&](const Quadruple& p) {
    std::array<bool, 4> c{};
    for (int i = 0; i < 4; ++i) c[i] = !(q.g[i] == p.g[i]);
    return c;
  };
  Alignment a{q2, diff(q2), 0};
  Quadruple sw = pair_swapped(q2);
  std::array<bool, 4> cs = diff(sw);
  int n1 = a.changed[0] + a.changed[1] + a.changed[2] + a.changed[3];
  int n2 = cs[0] + cs[1] + cs[2] + cs[3];
  if (n2 < n1) {
    a.p = sw;
    a.changed = cs;
    a.n = n2;
  } else {
    a.n = n1;
  }
  return a;
}

// A single-slot transition cur -> target as a fully parametrized link.
ChainLink lambda1_link(const Quadruple& cur, const Quadruple& target) {
  int slot = -1;
  for (int i = 0; i < 4; ++i) {
    if (!(cur.g[i] == target.g[i])) {
      if (slot >= 0)
        throw ConstructionFailure("more than one slot changed in a Lambda1");
      slot = i;
    }
  }
  if (slot < 0)
    throw ConstructionFailure("identity transition recorded as Lambda1");
  const AlgebraPtr& ctx = cur.ctx();
  std::optional<Vec> ab;
  int pair = slot < 2 ? 1 : 2, which = 0;
  switch (slot) {
    case 0:
      ab = express_in_span({ctx->one(), cur.y()}, cur.x() + target.x());
      which = 1;
      break;
    case 1:
      ab = express_in_span({cur.y(), cur.x() * cur.y()}, target.y());
      which = 2;
      break;
    case 2:
      ab = express_in_span({ctx->one(), cur.u()}, cur.z() + target.z());
      which = 1;
      break;
    case 3:
      ab = express_in_span({cur.u(), cur.z() * cur.u()}, target.u());
      which = 2;
      break;
  }
  if (!ab)
    throw ConstructionFailure(
        "single-slot change is not an elementary parametrized move");
  return {StepKind::lambda1(pair, which, (*ab)[0], (*ab)[1]), target};
}

void push_step(std::vector<ChainLink>& links, Quadruple& cur, StepKind kind,
               const Quadruple& target) {
  if (target == cur) return;
  require_valid(target);
  links.push_back({std::move(kind), target});
  cur = target;
}

void push_lambda1(std::vector<ChainLink>& links, Quadruple& cur,
                  const Quadruple& target) {
  if (target == cur) return;
  require_valid(target);
  links.push_back(lambda1_link(cur, target));
  cur = target;
}

// ---- three-slot decomposition cases ------------------------------------

// Preserved separable generator in the first slot:
// (x, y, z, u) -> (x, y2, z2, u2).
std::vector<ChainLink> decompose_keep_sep(const Quadruple& q,
                                          const Quadruple& p) {
  const Element &x = q.x(), &y = q.y(), &z = q.z(), &u = q.u();
  const Element& y2 = p.y();
  std::vector<ChainLink> links;
  Quadruple cur = q;
  auto Pi = StepKind::simple(Tag::Pi);
  auto L2 = StepKind::simple(Tag::L2);

  if (express_in_span(subalgebra_closure({x, y}), y2)) {
    push_step(links, cur, Pi, Quadruple(x, y2, z, u));
    push_step(links, cur, Pi, p);
    return links;
  }
  if (commutes(y, y2)) {
    Element w0 = y * y2;
    Quadruple t1 = first_or_throw(completions_z(x, y, w0),
                                  "no completion against the product of the "
                                  "commuting square-central generators");
    push_step(links, cur, Pi, t1);
    push_step(links, cur, L2,
              choose_refinable(t1, completions_z(x, y2, w0),
                               "no completion for the target pair against "
                               "the shared square-central element"));
    push_step(links, cur, Pi, p);
    return links;
  }

  Element t = common_commuter(y, y2);
  Element mu = x * t + t * x + t;
  if (mu.is_scalar()) {
    // shift t so that x t + t x = t; such a t is forced square-central
    t = t + q.ctx()->scalar_element(mu.scalar_part());
    if (classify_element(t).kind != ElementClass::Kind::SquareCentral)
      throw ConstructionFailure(
          "shifted common commuter is not square-central: " + to_string(t));
    Element ty = t * y, ty2 = t * y2;
    Quadruple a1 = first_or_throw(completions_z(x, y, ty),
                                  "no completion against t*y");
    push_step(links, cur, Pi, a1);
    push_step(links, cur, L2,
              choose_refinable(a1, completions_z(x, t, ty),
                               "no completion of (x, t) against t*y"));
    Quadruple a3 = first_or_throw(completions_z(x, t, ty2),
                                  "no completion of (x, t) against t*y2");
    push_step(links, cur, Pi, a3);
    push_step(links, cur, L2,
              choose_refinable(a3, completions_z(x, y2, ty2),
                               "no completion of (x, y2) against t*y2"));
    push_step(links, cur, Pi, p);
    return links;
  }

  auto [nu, separable] = normalize_quadratic(mu);
  auto comp = [&](const Element& s2) {
    return separable ? completions_u(x, s2, nu) : completions_z(x, s2, nu);
  };
  Quadruple t1 = first_or_throw(comp(y), "no completion against the common "
                                         "commuter of the square-central "
                                         "generators");
  push_step(links, cur, Pi, t1);
  push_step(links, cur, L2,
            choose_refinable(t1, comp(y2),
                             "no completion of the target pair against the "
                             "common commuter"));
  push_step(links, cur, Pi, p);
  return links;
}

// Preserved square-central generator in the second slot:
// (x, y, z, u) -> (x2, y, z2, u2).
std::vector<ChainLink> decompose_keep_sc(const Quadruple& q,
                                         const Quadruple& p) {
  const Element &x = q.x(), &y = q.y(), &z = q.z(), &u = q.u();
  const Element& x2 = p.x();
  std::vector<ChainLink> links;
  Quadruple cur = q;
  auto Pi = StepKind::simple(Tag::Pi);
  auto L2 = StepKind::simple(Tag::L2);

  if (express_in_span(subalgebra_closure({x, y}), x2)) {
    push_step(links, cur, Pi, Quadruple(x2, y, z, u));
    push_step(links, cur, Pi, p);
    return links;
  }
  if (commutes(x, x2)) {
    Element v = x + x2;  // nonscalar, separable, commutes with x, x2 and y
    Quadruple t1 = first_or_throw(completions_u(x, y, v),
                                  "no completion against the sum of the "
                                  "commuting separable generators");
    push_step(links, cur, Pi, t1);
    push_step(links, cur, L2,
              choose_refinable(t1, completions_u(x2, y, v),
                               "no completion of the target pair against "
                               "the shared separable element"));
    push_step(links, cur, Pi, p);
    return links;
  }

  Element t = common_commuter(x, x2);
  Element mu = t + y * t * inverse(y);
  if (mu.is_zero()) {
    ElementClass cls = classify_element(t);
    auto comp = [&](const Element& s1) {
      return cls.kind == ElementClass::Kind::ArtinSchreier
                 ? completions_u(s1, y, t)
                 : completions_z(s1, y, t);
    };
    if (cls.kind != ElementClass::Kind::ArtinSchreier &&
        cls.kind != ElementClass::Kind::SquareCentral)
      throw ConstructionFailure("common commuter is not normalized: " +
                                to_string(t));
    Quadruple t1 = first_or_throw(comp(x), "no completion against the "
                                           "common commuter");
    push_step(links, cur, Pi, t1);
    push_step(links, cur, L2,
              choose_refinable(t1, comp(x2),
                               "no completion of the target pair against "
                               "the common commuter"));
    push_step(links, cur, Pi, p);
    return links;
  }
  if (mu.is_scalar()) {
    if (!(mu == q.ctx()->one()))
      throw ConstructionFailure(
          "conjugation defect of the common commuter is a nonunit scalar");
    // y t y^{-1} = t + 1, so t is a separable partner for y
    Element e1 = normalize_quadratic(t + x).first;
    Element e2 = normalize_quadratic(t + x2).first;
    Quadruple t1 = first_or_throw(completions_pair2(x, y, e1),
                                  "no completion of (x, y) against t+x");
    push_step(links, cur, Pi, t1);
    push_step(links, cur, L2,
              choose_refinable(t1, completions_pair2(t, y, e1),
                               "no completion of (t, y) against t+x"));
    Quadruple t3 = first_or_throw(completions_pair2(t, y, e2),
                                  "no completion of (t, y) against t+x2");
    push_step(links, cur, Pi, t3);
    push_step(links, cur, L2,
              choose_refinable(t3, completions_pair2(x2, y, e2),
                               "no completion of (x2, y) against t+x2"));
    push_step(links, cur, Pi, p);
    return links;
  }

  auto [nu, separable] = normalize_quadratic(mu);
  auto comp = [&](const Element& s1) {
    return separable ? completions_u(s1, y, nu) : completions_z(s1, y, nu);
  };
  Quadruple t1 = first_or_throw(comp(x), "no completion against the "
                                         "symmetrized common commuter");
  push_step(links, cur, Pi, t1);
  push_step(links, cur, L2,
            choose_refinable(t1, comp(x2),
                             "no completion of the target pair against the "
                             "symmetrized common commuter"));
  push_step(links, cur, Pi, p);
  return links;
}

// ---- two-slot replacement cases ----------------------------------------

// Changes in both separable slots: (x, y, z, u) -> (x2, y, z2, u).
std::vector<ChainLink> replace_sep_sep(const Quadruple& q, const Quadruple& p) {
  const Element &x = q.x(), &y = q.y(), &u = q.u();
  const Element& z2 = p.z();
  std::vector<ChainLink> links;
  Quadruple cur = q;
  Element r = x * z2 + z2 * x;
  Element m = r + z2;
  push_lambda1(links, cur, Quadruple(x, y, m, u));
  if (!r.is_zero()) {
    auto a = express_in_span({y * u}, r);
    if (!a)
      throw ConstructionFailure(
          "separable correction is not an inseparable product");
    push_step(links, cur, StepKind::omega_i((*a)[0]),
              apply_omega_i(cur, (*a)[0]));
  }
  push_lambda1(links, cur, p);
  return links;
}

// Changes in both inseparable slots: (x, y, z, u) -> (x, y2, z, u2).
std::vector<ChainLink> replace_insep_insep(const Quadruple& q,
                                           const Quadruple& p) {
  const Element &x = q.x(), &y = q.y(), &z = q.z();
  const Element &y2 = p.y(), &u2 = p.u();
  std::vector<ChainLink> links;
  Quadruple cur = q;
  Element w = y * u2 + u2 * y;
  if (w.is_zero()) {
    push_lambda1(links, cur, Quadruple(x, y, z, u2));
    push_lambda1(links, cur, p);
    return links;
  }
  push_lambda1(links, cur, Quadruple(x, y, z, w * y));
  Element mult = inverse(w) * u2 * inverse(y);
  auto ab = express_in_span({q.ctx()->one(), x + z}, mult);
  if (!ab)
    throw ConstructionFailure(
        "inseparable quotient is not a separable-pair combination");
  Quadruple next = apply_omega_s(cur, (*ab)[0], (*ab)[1]);
  if (!(next.u() == u2))
    throw ConstructionFailure(
        "multiplicative move does not reach the target inseparable slot");
  push_step(links, cur, StepKind::omega_s((*ab)[0], (*ab)[1]), next);
  push_lambda1(links, cur, p);
  return links;
}

// One separable and one inseparable change across the pairs:
// (x, y, z, u) -> (x2, y, z, u2).
std::vector<ChainLink> replace_sep_insep(const Quadruple& q,
                                         const Quadruple& p,
                                         bool allow_degenerate) {
  const Element &x = q.x(), &y = q.y(), &z = q.z();
  const Element &x2 = p.x(), &u2 = p.u();
  std::vector<ChainLink> links;
  Quadruple cur = q;
  Element m = x * u2 + u2 * x + u2;
  if (m.is_zero()) {
    if (!allow_degenerate)
      throw ConstructionFailure(
          "degenerate mixed two-slot transition skipped");
    // Degenerate case: the correction scalar vanishes identically, which
    // happens exactly when the target fourth slot lies in the orbit of a
    // *double* multiplicative coupling move. Two couplings with b1*b2 =
    // 1/beta add exactly z to the first generator and turn the u
    // multiplier into (b1+b2)y; the leftover differences are single-slot.
    Scalar beta = (y * y).scalar_part();
    for (int cand = 0; cand < 4; ++cand) {
      Scalar b1 = cand == 0 ? Scalar::one() : q.ctx()->param(cand - 1);
      if (b1.is_zero()) continue;
      Scalar b2 = (b1 * beta).inverse();
      if (b1 == b2) continue;  // u multiplier would vanish
      try {
        std::vector<ChainLink> out;
        Quadruple c2 = q;
        push_step(out, c2, StepKind::omega_c(b1), apply_omega_c(c2, b1));
        push_step(out, c2, StepKind::omega_c(b2), apply_omega_c(c2, b2));
        push_lambda1(out, c2, Quadruple(x2, c2.y(), c2.z(), c2.u()));
        push_lambda1(out, c2, p);
        return out;
      } catch (const ConstructionFailure&) {
      } catch (const DegenerateParams&) {
      } catch (const InvalidQuadruple&) {
      }
    }
    // fallback: a fourth slot compatible with both separable generators
    Sys sys;
    sys.comm(x);
    sys.comm(x2);
    sys.comm(y);
    sys.odd(z);
    for (const Element& w : solve_candidates(q.ctx(), sys)) {
      Quadruple t1(x, y, z, w), t2(x2, y, z, w);
      if (!validate(t1).ok() || !validate(t2).ok()) continue;
      try {
        std::vector<ChainLink> out;
        Quadruple c2 = q;
        push_lambda1(out, c2, t1);
        push_lambda1(out, c2, t2);
        push_lambda1(out, c2, p);
        return out;
      } catch (const ConstructionFailure&) {
      }
    }
    throw ConstructionFailure(
        "degenerate mixed two-slot transition: no replacement found");
  }
  push_lambda1(links, cur, Quadruple(x, y, z, m));
  auto b = express_in_span({m * y}, x * u2 + u2 * x);
  if (!b)
    throw ConstructionFailure(
        "mixed correction is not proportional to the middle element");
  if (!(*b)[0].is_zero()) {
    Quadruple next = apply_omega_c(cur, (*b)[0]);
    if (!(next.u() == u2))
      throw ConstructionFailure(
          "multiplicative move does not reach the target fourth slot");
    push_step(links, cur, StepKind::omega_c((*b)[0]), next);
  }
  push_lambda1(links, cur, p);
  return links;
}

}  // namespace

int Chain::count(StepKind::Tag tag) const {
  int n = 0;
  for (const ChainLink& l : links) n += l.claimed.tag == tag;
  return n;
}

bool ChainReport::ok() const {
  if (!start_valid) return false;
  return std::all_of(links.begin(), links.end(),
                     [](const LinkReport& l) { return l.pass; });
}

std::string tag_name(StepKind::Tag tag) {
  switch (tag) {
    case Tag::L1: return "LAMBDA1";
    case Tag::L2: return "LAMBDA2";
    case Tag::L3: return "LAMBDA3";
    case Tag::Pi: return "PI";
    case Tag::OmegaS: return "OMEGA_S";
    case Tag::OmegaI: return "OMEGA_I";
    case Tag::OmegaC: return "OMEGA_C";
  }
  return "?";
}

Quadruple complete_from_AS_pair(const Element& xh, const Element& zh) {
  require_same_ctx(xh, zh);
  if (classify_element(xh).kind != ElementClass::Kind::ArtinSchreier ||
      classify_element(zh).kind != ElementClass::Kind::ArtinSchreier)
    throw PreconditionViolation("both elements must be separable generators");
  if (!commutes(xh, zh))
    throw PreconditionViolation("the separable pair must commute");
  if (subalgebra_closure({xh, zh}).size() != 4)
    throw PreconditionViolation(
        "the separable pair must generate a four-dimensional subalgebra");
  const AlgebraPtr& ctx = xh.ctx();
  Involution s = [&] {
    try {
      return extend_involution(ctx, {{xh, xh + ctx->one()}, {zh, zh}});
    } catch (const NoExtension& e) {
      throw ConstructionFailure(std::string("no symmetrizing involution: ") +
                                e.what());
    }
  }();

  Sys qs;
  qs.comm(xh);
  qs.odd(zh);
  for (const Element& q : solve_candidates(ctx, qs)) {
    Element qstar = s.apply(q);
    Element u0 = (qstar == q) ? q : q + qstar;
    if (u0.is_zero() || u0.is_scalar()) continue;
    if (classify_element(u0).kind != ElementClass::Kind::SquareCentral)
      continue;
    Sys ys;
    ys.comm(zh);
    ys.comm(u0);
    ys.odd(xh);
    for (const Element& y0 : solve_candidates(ctx, ys)) {
      Quadruple out(xh, y0, zh, u0);
      if (validate(out).ok()) return out;
    }
  }
  throw ConstructionFailure(
      "no completion of the commuting separable pair was found");
}

Quadruple complete_from_mixed_pair(const Element& xh, const Element& uh,
                                   bool* degenerate) {
  require_same_ctx(xh, uh);
  if (classify_element(xh).kind != ElementClass::Kind::ArtinSchreier)
    throw PreconditionViolation("first element must be a separable generator");
  if (classify_element(uh).kind != ElementClass::Kind::SquareCentral)
    throw PreconditionViolation("second element must be square-central");
  if (!commutes(xh, uh)) throw PreconditionViolation("the pair must commute");
  if (subalgebra_closure({xh, uh}).size() != 4)
    throw PreconditionViolation(
        "the pair must generate a four-dimensional subalgebra");
  const AlgebraPtr& ctx = xh.ctx();
  Scalar beta = (uh * uh).scalar_part();
  Involution s = [&] {
    try {
      return extend_involution(ctx, {{xh, xh + ctx->one()}, {uh, uh}});
    } catch (const NoExtension& e) {
      throw ConstructionFailure(std::string("no symmetrizing involution: ") +
                                e.what());
    }
  }();

  Sys qs;
  qs.comm(xh);
  qs.pairs(uh);
  for (const Element& q : solve_candidates(ctx, qs)) {
    Element qstar = s.apply(q);
    auto cd = express_in_span({ctx->one(), uh}, q + qstar);
    if (!cd) continue;
    const Scalar &c = (*cd)[0], &d = (*cd)[1];
    Scalar det = c * (c + Scalar::one()) + d * d * beta;
    Element z0;
    bool deg;
    if (det.is_zero()) {
      z0 = q;
      deg = true;
    } else {
      Scalar a = c / det, b = d / det;
      Element mid = ctx->scalar_element(a) + ctx->scalar_element(b) * uh;
      z0 = q * mid * qstar;
      deg = false;
    }
    if (z0.is_scalar()) continue;
    if (classify_element(z0).kind != ElementClass::Kind::ArtinSchreier)
      continue;
    Sys ys;
    ys.comm(z0);
    ys.comm(uh);
    ys.odd(xh);
    for (const Element& y0 : solve_candidates(ctx, ys)) {
      Quadruple out(xh, y0, z0, uh);
      if (validate(out).ok()) {
        if (degenerate) *degenerate = deg;
        return out;
      }
    }
  }
  throw ConstructionFailure("no completion of the mixed pair was found");
}

Element common_commuter(const Element& e, const Element& e2) {
  require_same_ctx(e, e2);
  ElementClass c1 = classify_element(e), c2 = classify_element(e2);
  bool both_as = c1.kind == ElementClass::Kind::ArtinSchreier &&
                 c2.kind == ElementClass::Kind::ArtinSchreier;
  bool both_sc = c1.kind == ElementClass::Kind::SquareCentral &&
                 c2.kind == ElementClass::Kind::SquareCentral;
  if (!both_as && !both_sc)
    throw PreconditionViolation(
        "elements must be both separable or both square-central");
  if (commutes(e, e2))
    throw PreconditionViolation("elements must not commute");
  for (const Element& v : centralizer({e, e2})) {
    if (v.is_scalar()) continue;
    auto sr = express_in_span({e.ctx()->one(), v}, v * v);
    if (!sr) continue;
    const Scalar& r = (*sr)[1];
    if (r.is_zero()) return v;
    return e.ctx()->scalar_element(Scalar::one() / r) * v;
  }
  throw ConstructionFailure(
      "the joint centralizer has no quadratic nonscalar element");
}

Chain connect(const Quadruple& q, const Quadruple& q2) {
  require_same_ctx(q.x(), q2.x());
  require_valid(q);
  require_valid(q2);
  Chain c{q, {}};
  if (q == q2) return c;
  if (contains_kind(classify_step(q, q2), Tag::L3)) {
    c.links.push_back({StepKind::simple(Tag::L3), q2});
    return c;
  }

  const Element &x = q.x(), &x2 = q2.x();
  std::vector<Quadruple> mids;
  if (commutes(x, x2)) {
    if (subalgebra_closure({x, x2}).size() == 2) {
      // x2 = x + scalar: the original second pair still completes it
      mids.push_back(Quadruple(x2, q.y(), q.z(), q.u()));
    } else {
      mids.push_back(complete_from_AS_pair(x, x2));
    }
  } else {
    Element w = common_commuter(x, x2);
    if (classify_element(w).kind == ElementClass::Kind::ArtinSchreier) {
      mids.push_back(complete_from_AS_pair(x, w));
      mids.push_back(complete_from_AS_pair(x2, w));
    } else {
      mids.push_back(complete_from_mixed_pair(x, w));
      mids.push_back(complete_from_mixed_pair(x2, w));
    }
  }
  Quadruple cur = q;
  for (const Quadruple& mid : mids)
    push_step(c.links, cur, StepKind::simple(Tag::L3), mid);
  push_step(c.links, cur, StepKind::simple(Tag::L3), q2);
  return c;
}

Chain decompose_lambda3(const Quadruple& q, const Quadruple& q2) {
  require_same_ctx(q.x(), q2.x());
  require_valid(q);
  require_valid(q2);
  Alignment al = align(q, q2);
  if (al.n > 3)
    throw PreconditionViolation("transition changes all four slots");
  Chain c{q, {}};
  if (al.n == 0) return c;
  int p1 = int(al.changed[0]) + al.changed[1];
  int p2 = int(al.changed[2]) + al.changed[3];
  if (p1 == 0 || p2 == 0) {
    c.links.push_back({StepKind::simple(Tag::Pi), al.p});
    return c;
  }
  if (p1 <= 1 && p2 <= 1) {
    c.links.push_back({StepKind::simple(Tag::L2), al.p});
    return c;
  }
  // exactly three slots changed: one preserved slot remains
  int keep = 0;
  while (al.changed[keep]) ++keep;
  Quadruple src = q, dst = al.p;
  if (keep >= 2) {
    src = pair_swapped(src);
    dst = pair_swapped(dst);
    keep -= 2;
  }
  c.links = keep == 0 ? decompose_keep_sep(src, dst)
                      : decompose_keep_sc(src, dst);
  return c;
}

Chain replace_lambda2_impl(const Quadruple& q, const Quadruple& q2,
                           bool allow_degenerate) {
  require_same_ctx(q.x(), q2.x());
  require_valid(q);
  require_valid(q2);
  Alignment al = align(q, q2);
  int p1 = int(al.changed[0]) + al.changed[1];
  int p2 = int(al.changed[2]) + al.changed[3];
  if (p1 > 1 || p2 > 1)
    throw PreconditionViolation(
        "transition changes more than one slot in a pair");
  Chain c{q, {}};
  if (al.n == 0) return c;
  if (al.n == 1) {
    c.links.push_back(lambda1_link(q, al.p));
    return c;
  }
  Quadruple src = q, dst = al.p;
  bool cx = al.changed[0], cy = al.changed[1], cz = al.changed[2];
  if (cy && cz) {  // normalize to the separable+inseparable pattern
    src = pair_swapped(src);
    dst = pair_swapped(dst);
    cx = true;
    cy = false;
    cz = false;
  }
  if (cx && cz)
    c.links = replace_sep_sep(src, dst);
  else if (cy)
    c.links = replace_insep_insep(src, dst);
  else
    c.links = replace_sep_insep(src, dst, allow_degenerate);
  return c;
}

Chain replace_lambda2(const Quadruple& q, const Quadruple& q2) {
  return replace_lambda2_impl(q, q2, /*allow_degenerate=*/true);
}

Chain decompose_pi(const Quadruple& q, const Quadruple& q2) {
  require_same_ctx(q.x(), q2.x());
  require_valid(q);
  require_valid(q2);
  Alignment al = align(q, q2);
  int p1 = int(al.changed[0]) + al.changed[1];
  int p2 = int(al.changed[2]) + al.changed[3];
  if (p1 > 0 && p2 > 0)
    throw PreconditionViolation("transition changes both pairs");
  Chain c{q, {}};
  if (al.n == 0) return c;
  if (al.n == 1) {
    c.links.push_back(lambda1_link(q, al.p));
    return c;
  }
  Quadruple src = q, dst = al.p;
  if (p1 > 0) {  // normalize the changed pair into the second position
    src = pair_swapped(src);
    dst = pair_swapped(dst);
  }
  const Element &x = src.x(), &y = src.y(), &z = src.z(), &u = src.u();
  const Element &z2 = dst.z(), &u2 = dst.u();

  {  // square-central middle for the fourth slot
    Sys sys;
    sys.comm(x);
    sys.comm(y);
    sys.odd(z);
    sys.odd(z2);
    for (const Element& w : solve_candidates(src.ctx(), sys)) {
      Quadruple t1(x, y, z, w), t2(x, y, z2, w);
      if (!validate(t1).ok() || !validate(t2).ok()) continue;
      try {
        std::vector<ChainLink> links;
        Quadruple cur = src;
        push_lambda1(links, cur, t1);
        push_lambda1(links, cur, t2);
        push_lambda1(links, cur, dst);
        c.links = std::move(links);
        return c;
      } catch (const ConstructionFailure&) {
      }
    }
  }
  {  // separable middle for the third slot
    Sys sys;
    sys.comm(x);
    sys.comm(y);
    sys.pairs(u);
    sys.pairs(u2);
    for (const Element& t : solve_candidates(src.ctx(), sys)) {
      Quadruple t1(x, y, t, u), t2(x, y, t, u2);
      if (!validate(t1).ok() || !validate(t2).ok()) continue;
      try {
        std::vector<ChainLink> links;
        Quadruple cur = src;
        push_lambda1(links, cur, t1);
        push_lambda1(links, cur, t2);
        push_lambda1(links, cur, dst);
        c.links = std::move(links);
        return c;
      } catch (const ConstructionFailure&) {
      }
    }
  }
  throw NotDecomposed(
      "the changed pair has no common neighbor quadruple");
}

ChainReport verify_chain(const Chain& c) {
  ChainReport rep;
  rep.start_valid = validate(c.start).ok();
  Quadruple cur = c.start;
  bool broken = !rep.start_valid;
  for (size_t i = 0; i < c.links.size(); ++i) {
    const ChainLink& ln = c.links[i];
    LinkReport lr;
    lr.index = int(i);
    ValidationReport v = validate(ln.target);
    for (const Violation& viol : v.violations) {
      lr.pass = false;
      lr.issues.push_back("target violates " + viol.relation + ": " +
                          viol.detail);
    }
    if (!broken && v.ok()) {
      try {
        std::vector<StepKind> kinds = classify_step(cur, ln.target);
        bool found = false;
        for (const StepKind& k : kinds) {
          if (k.tag != ln.claimed.tag) continue;
          if (k.tag == Tag::OmegaS || k.tag == Tag::OmegaI ||
              k.tag == Tag::OmegaC) {
            if (k.a == ln.claimed.a && k.b == ln.claimed.b) {
              found = true;
              break;
            }
          } else {
            found = true;
            break;
          }
        }
        if (!found) {
          lr.pass = false;
          lr.issues.push_back("transition does not qualify as " +
                              tag_name(ln.claimed.tag) +
                              " with the claimed parameters");
        } else if (ln.claimed.tag == Tag::L1 && ln.claimed.pair != 0) {
          auto reproduce = [&](const Quadruple& base) {
            try {
              Lambda1Slot slot = ln.claimed.slot == 1 ? Lambda1Slot::Sep
                                                      : Lambda1Slot::Insep;
              return apply_lambda1(base, ln.claimed.pair, slot, ln.claimed.a,
                                   ln.claimed.b) == ln.target;
            } catch (const std::runtime_error&) {
              return false;
            }
          };
          if (!reproduce(cur) && !reproduce(pair_swapped(cur))) {
            lr.pass = false;
            lr.issues.push_back(
                "recorded single-generator parameters do not reproduce the "
                "target");
          }
        }
      } catch (const std::runtime_error& e) {
        lr.pass = false;
        lr.issues.push_back(std::string("classification failed: ") + e.what());
      }
    }
    if (v.ok()) {
      cur = ln.target;
    } else {
      broken = true;
    }
    rep.links.push_back(std::move(lr));
  }
  return rep;
}

Chain full_pipeline(const Quadruple& q, const Quadruple& q2) {
  Chain base = connect(q, q2);

  Chain stage2{q, {}};
  {
    Quadruple cur = q;
    for (const ChainLink& ln : base.links) {
      if (ln.claimed.tag == Tag::L3) {
        Chain d = decompose_lambda3(cur, ln.target);
        for (ChainLink& sub : d.links) stage2.links.push_back(std::move(sub));
      } else {
        stage2.links.push_back(ln);
      }
      cur = ln.target;
    }
  }

  Chain stage3{q, {}};
  {
    Quadruple cur = q;
    for (const ChainLink& ln : stage2.links) {
      if (ln.claimed.tag == Tag::L2) {
        Chain d = replace_lambda2(cur, ln.target);
        for (ChainLink& sub : d.links) stage3.links.push_back(std::move(sub));
      } else {
        stage3.links.push_back(ln);
      }
      cur = ln.target;
    }
  }

  Chain out{q, {}};
  {
    Quadruple cur = q;
    for (const ChainLink& ln : stage3.links) {
      if (ln.claimed.tag == Tag::Pi) {
        try {
          Chain d = decompose_pi(cur, ln.target);
          for (ChainLink& sub : d.links) out.links.push_back(std::move(sub));
        } catch (const NotDecomposed&) {
          out.links.push_back(ln);
        }
      } else {
        out.links.push_back(ln);
      }
      cur = ln.target;
    }
  }
  return out;
}

}  // namespace biq
