#include "biq/errors.hpp"
#include "biq/parser.hpp"
#include "biq/quadruple.hpp"
#include "biq/steps.hpp"
#include "common.hpp"
#include "doctest.h"

using namespace biq;
using testutil::std_algebra;

namespace {
Quadruple std_quad() {
  auto ctx = std_algebra();
  return Quadruple(ctx->gen(0), ctx->gen(1), ctx->gen(2), ctx->gen(3));
}
Scalar S(const std::string& txt) {
  return parse_scalar(txt, std_algebra()->field());
}
}

TEST_CASE("validate accepts the standard quadruple") {
  CHECK(validate(std_quad()).ok());
}

TEST_CASE("validate pinpoints broken relations") {
  auto ctx = std_algebra();
  Quadruple q = std_quad();

  Quadruple swapped(q.x(), q.u(), q.z(), q.y());
  auto rep = validate(swapped);
  REQUIRE_FALSE(rep.ok());
  bool saw_r5 = false;
  for (const auto& v : rep.violations) {
    if (v.relation == "R5") {
      saw_r5 = true;
      CHECK(v.residual == q.u());  // xu+ux+u = u
    }
  }
  CHECK(saw_r5);

  Quadruple zeroed(q.x(), ctx->zero(), q.z(), q.u());
  rep = validate(zeroed);
  REQUIRE_FALSE(rep.ok());
  bool saw_r2 = false;
  for (const auto& v : rep.violations) saw_r2 |= v.relation == "R2";
  CHECK(saw_r2);

  Quadruple degenerate(q.x(), q.y(), q.x(), q.y());
  rep = validate(degenerate);
  bool saw_r11 = false;
  for (const auto& v : rep.violations) saw_r11 |= v.relation == "R11";
  CHECK(saw_r11);
}

TEST_CASE("symbols of the standard quadruple") {
  SymbolTuple t = symbols(std_quad());
  CHECK(t.s[0] == S("alpha"));
  CHECK(t.s[1] == S("beta"));
  CHECK(t.s[2] == S("gamma"));
  CHECK(t.s[3] == S("delta"));
}

TEST_CASE("symbols rejects invalid quadruples") {
  Quadruple q = std_quad();
  CHECK_THROWS_AS(symbols(Quadruple(q.x(), q.u(), q.z(), q.y())),
                  InvalidQuadruple);
}

TEST_CASE("canonicalize identifies pair-swapped quadruples") {
  Quadruple q = std_quad();
  Quadruple sw(q.z(), q.u(), q.x(), q.y());
  Quadruple cq = canonicalize(q), csw = canonicalize(sw);
  for (int i = 0; i < 4; ++i) CHECK(cq.g[i] == csw.g[i]);
  // idempotent
  Quadruple c2 = canonicalize(cq);
  for (int i = 0; i < 4; ++i) CHECK(cq.g[i] == c2.g[i]);
  CHECK(validate(cq).ok());
  CHECK(q == sw);  // pair-order-insensitive equality
}

TEST_CASE("symbols is stable under pair swap up to pair exchange") {
  Quadruple q = apply_omega_c(std_quad(), S("1"));
  Quadruple sw(q.z(), q.u(), q.x(), q.y());
  SymbolTuple a = symbols(q), b = symbols(sw);
  bool same = a == b;
  bool exchanged = a.s[0] == b.s[2] && a.s[1] == b.s[3] &&
                   a.s[2] == b.s[0] && a.s[3] == b.s[1];
  CHECK((same || exchanged));
}

TEST_CASE("classify_step on the identity transition") {
  Quadruple q = std_quad();
  auto kinds = classify_step(q, q);
  CHECK(contains_kind(kinds, StepKind::Tag::L1));
  CHECK(contains_kind(kinds, StepKind::Tag::L2));
  CHECK(contains_kind(kinds, StepKind::Tag::L3));
  CHECK(contains_kind(kinds, StepKind::Tag::Pi));
  for (const auto& k : kinds) {
    if (k.tag == StepKind::Tag::OmegaS) {
      CHECK(k.a == S("1"));
      CHECK(k.b == S("0"));
    }
    if (k.tag == StepKind::Tag::OmegaI) CHECK(k.a == S("0"));
    if (k.tag == StepKind::Tag::OmegaC) CHECK(k.b == S("0"));
  }
  CHECK(contains_kind(kinds, StepKind::Tag::OmegaS));
  CHECK(contains_kind(kinds, StepKind::Tag::OmegaI));
  CHECK(contains_kind(kinds, StepKind::Tag::OmegaC));
}

TEST_CASE("classify_step recovers omega parameters") {
  Quadruple q = std_quad();

  Quadruple qi = apply_omega_i(q, S("1"));
  auto kinds = classify_step(q, qi);
  CHECK(contains_kind(kinds, StepKind::Tag::L2));
  CHECK(contains_kind(kinds, StepKind::Tag::L3));
  bool found = false;
  for (const auto& k : kinds)
    if (k.tag == StepKind::Tag::OmegaI && k.a == S("1")) found = true;
  CHECK(found);

  Quadruple qs = apply_omega_s(q, S("alpha"), S("1"));
  kinds = classify_step(q, qs);
  found = false;
  for (const auto& k : kinds)
    if (k.tag == StepKind::Tag::OmegaS && k.a == S("alpha") && k.b == S("1"))
      found = true;
  CHECK(found);

  Quadruple qc = apply_omega_c(q, S("beta"));
  kinds = classify_step(q, qc);
  found = false;
  for (const auto& k : kinds)
    if (k.tag == StepKind::Tag::OmegaC && k.b == S("beta")) found = true;
  CHECK(found);
}

TEST_CASE("classify_step recovery round-trips through re-application") {
  Quadruple q = std_quad();
  for (uint64_t seed = 1; seed <= 20; ++seed) {
    Scalar a = random_scalar(1, 2, seed, 4);
    Scalar b = random_scalar(1, 2, seed + 100, 4);
    SymbolTuple s = symbols(q);
    Scalar norm = a * a + a * b + b * b * (s.s[0] + s.s[2]);
    if ((a.is_zero() && b.is_zero()) || norm.is_zero()) continue;
    Quadruple qs = apply_omega_s(q, a, b);
    for (const auto& k : classify_step(q, qs)) {
      if (k.tag == StepKind::Tag::OmegaS) {
        Quadruple redo = apply_omega_s(q, k.a, k.b);
        for (int i = 0; i < 4; ++i) CHECK(redo.g[i] == qs.g[i]);
      }
    }
  }
}

TEST_CASE("classify_step sees a three-slot change as L3 only") {
  Quadruple q = std_quad();
  // change x, y, z but not u: compose a separable first-pair move, an
  // inseparable first-pair move, and a separable second-pair move
  Quadruple p = apply_lambda1(q, 1, Lambda1Slot::Sep, S("1"), S("0"));
  p = apply_lambda1(p, 1, Lambda1Slot::Insep, S("0"), S("1"));
  p = apply_lambda1(p, 2, Lambda1Slot::Sep, S("1"), S("0"));
  auto kinds = classify_step(q, p);
  CHECK(contains_kind(kinds, StepKind::Tag::L3));
  CHECK_FALSE(contains_kind(kinds, StepKind::Tag::L2));
  CHECK_FALSE(contains_kind(kinds, StepKind::Tag::L1));
  CHECK_FALSE(contains_kind(kinds, StepKind::Tag::Pi));
  CHECK_FALSE(contains_kind(kinds, StepKind::Tag::OmegaS));
  CHECK_FALSE(contains_kind(kinds, StepKind::Tag::OmegaI));
  CHECK_FALSE(contains_kind(kinds, StepKind::Tag::OmegaC));
}

TEST_CASE("classify_step uses the better pair alignment") {
  Quadruple q = std_quad();
  Quadruple p = apply_lambda1(q, 1, Lambda1Slot::Sep, S("1"), S("0"));
  Quadruple psw(p.z(), p.u(), p.x(), p.y());
  auto kinds = classify_step(q, psw);
  CHECK(contains_kind(kinds, StepKind::Tag::L1));
}

TEST_CASE("classify_step rejects mismatched contexts") {
  Quadruple q = std_quad();
  FieldCtx f({"alpha", "beta", "gamma", "delta"});
  auto other = AlgebraCtx::make(
      f, {Scalar::var(1), Scalar::var(0), Scalar::var(2), Scalar::var(3)});
  Quadruple o(other->gen(0), other->gen(1), other->gen(2), other->gen(3));
  CHECK_THROWS_AS(classify_step(q, o), CtxMismatch);
}
