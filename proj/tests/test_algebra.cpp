#include "biq/algebra.hpp"
#include "biq/errors.hpp"
#include "biq/parser.hpp"
#include "common.hpp"
#include "doctest.h"

using namespace biq;
using testutil::oracle_mul;
using testutil::std_algebra;

namespace {
Element E(const std::string& txt) { return parse_element(txt, std_algebra()); }
}

TEST_CASE("structure table: defining relations") {
  auto ctx = std_algebra();
  Element x = ctx->gen(0), y = ctx->gen(1), z = ctx->gen(2), u = ctx->gen(3);
  CHECK(y * x == E("x*y + y"));
  CHECK(x * x == E("x + (alpha)*1"));
  CHECK(u * z == E("z*u + u"));
  CHECK(x * y == E("x*y"));
  CHECK(y * y == E("(beta)*1"));
  CHECK(z * z == E("z + (gamma)*1"));
  CHECK(u * u == E("(delta)*1"));
  CHECK(x * z == z * x);
  CHECK(x * u == u * x);
  CHECK(y * z == z * y);
  CHECK(y * u == u * y);
}

TEST_CASE("structure table agrees with the word-rewrite oracle on all pairs") {
  auto ctx = std_algebra();
  for (int a = 0; a < kDim; ++a) {
    for (int b = 0; b < kDim; ++b) {
      Element ea = ctx->basis_element(a), eb = ctx->basis_element(b);
      CHECK(ea * eb == oracle_mul(ea, eb));
    }
  }
}

TEST_CASE("mul: xy squared and random agreement with the oracle") {
  auto ctx = std_algebra();
  Element xy = E("x*y");
  CHECK(xy * xy == E("(alpha*beta)*1"));
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Element a = testutil::random_element(ctx, seed * 2 + 1);
    Element b = testutil::random_element(ctx, seed * 2 + 2);
    CHECK(a * b == oracle_mul(a, b));
  }
}

TEST_CASE("associativity on seeded random triples") {
  auto ctx = std_algebra();
  for (uint64_t seed = 0; seed < 40; ++seed) {
    Element a = testutil::random_element(ctx, seed * 3 + 11);
    Element b = testutil::random_element(ctx, seed * 3 + 12);
    Element c = testutil::random_element(ctx, seed * 3 + 13);
    CHECK((a * b) * c == a * (b * c));
  }
}

TEST_CASE("inverse") {
  auto ctx = std_algebra();
  const FieldCtx& f = ctx->field();
  Element x = ctx->gen(0), y = ctx->gen(1);
  CHECK(inverse(y) == parse_scalar("1/beta", f) * y);
  CHECK(inverse(x) == parse_scalar("1/alpha", f) * E("x + 1"));
  CHECK_THROWS_AS(inverse(ctx->zero()), ZeroElement);
  for (uint64_t seed = 0; seed < 8; ++seed) {
    Element e = testutil::random_element(ctx, 1000 + seed, 25);
    if (e.is_zero()) continue;
    Element inv = inverse(e);
    CHECK(e * inv == ctx->one());
    CHECK(inv * e == ctx->one());
  }
}

TEST_CASE("classify_element") {
  auto ctx = std_algebra();
  const FieldCtx& f = ctx->field();
  auto cls = classify_element(ctx->gen(0));
  CHECK(cls.kind == ElementClass::Kind::ArtinSchreier);
  CHECK(cls.witness == parse_scalar("alpha", f));

  cls = classify_element(E("y*u"));
  CHECK(cls.kind == ElementClass::Kind::SquareCentral);
  CHECK(cls.witness == parse_scalar("beta*delta", f));

  cls = classify_element(E("x + z"));
  CHECK(cls.kind == ElementClass::Kind::ArtinSchreier);
  CHECK(cls.witness == parse_scalar("alpha+gamma", f));

  cls = classify_element(E("x + u"));
  CHECK(cls.kind == ElementClass::Kind::Neither);
  CHECK_FALSE(cls.artin_schreier);
  CHECK_FALSE(cls.square_central);

  cls = classify_element(E("(alpha)*1"));
  CHECK(cls.kind == ElementClass::Kind::Scalar);
}

TEST_CASE("commutes and bracket") {
  auto ctx = std_algebra();
  Element x = ctx->gen(0), y = ctx->gen(1), z = ctx->gen(2);
  CHECK(commutes(x, z));
  CHECK_FALSE(commutes(x, y));
  CHECK(bracket(x, y) == y);
  for (uint64_t seed = 0; seed < 6; ++seed) {
    Element e = testutil::random_element(ctx, 2000 + seed);
    CHECK(commutes(e, e));
    Element a = testutil::random_element(ctx, 3000 + seed);
    CHECK(bracket(e, a) == bracket(a, e));
  }
}

TEST_CASE("centralizer dimensions and membership") {
  auto ctx = std_algebra();
  Element x = ctx->gen(0), y = ctx->gen(1);
  auto cx = centralizer({x});
  CHECK(cx.size() == 8);
  SpanBuilder span(kDim);
  for (const auto& e : cx) span.add(e.coords());
  for (const char* m : {"1", "x", "z", "u", "z*u", "x*z", "x*u", "x*z*u"})
    CHECK(span.contains(E(m).coords()));
  for (const auto& e : cx) CHECK(commutes(e, x));

  auto cxy = centralizer({x, y});
  CHECK(cxy.size() == 4);
  SpanBuilder span2(kDim);
  for (const auto& e : cxy) span2.add(e.coords());
  for (const char* m : {"1", "z", "u", "z*u"})
    CHECK(span2.contains(E(m).coords()));

  CHECK(centralizer({ctx->one()}).size() == 16);
}

TEST_CASE("solve_affine cross-checks the centralizer computation") {
  auto ctx = std_algebra();
  Element x = ctx->gen(0);
  // e*x = x*e as a homogeneous system
  Mat l = left_mul_matrix(x), r = right_mul_matrix(x);
  Mat m(kDim, Vec(kDim, Scalar::zero()));
  for (int i = 0; i < kDim; ++i)
    for (int j = 0; j < kDim; ++j) m[i][j] = l[i][j] + r[i][j];
  AffineSolution sol = solve_affine(m, Vec(kDim, Scalar::zero()));
  REQUIRE(sol.consistent);
  CHECK(sol.kernel.size() == 8);
  SpanBuilder span(kDim);
  for (const auto& v : sol.kernel) span.add(v);
  for (const auto& e : centralizer({x})) CHECK(span.contains(e.coords()));

  // e*1 = 1 has the unique solution 1
  AffineSolution one = solve_affine(left_mul_matrix(ctx->one()),
                                    ctx->one().coords());
  REQUIRE(one.consistent);
  CHECK(Element::from_coords(ctx, one.particular) == ctx->one());
  CHECK(one.kernel.empty());

  // e = e + y is inconsistent
  Mat zerom(kDim, Vec(kDim, Scalar::zero()));
  AffineSolution bad = solve_affine(zerom, ctx->gen(1).coords());
  CHECK_FALSE(bad.consistent);
}

TEST_CASE("generates") {
  auto ctx = std_algebra();
  Element x = ctx->gen(0), y = ctx->gen(1), z = ctx->gen(2), u = ctx->gen(3);
  CHECK(generates(x, y, z, u));
  CHECK_FALSE(generates(x, y, x, y));
  CHECK_FALSE(generates(ctx->zero(), y, z, u));
}

TEST_CASE("subalgebra closure") {
  auto ctx = std_algebra();
  Element x = ctx->gen(0), z = ctx->gen(2);
  CHECK(subalgebra_closure({x}).size() == 2);
  CHECK(subalgebra_closure({x, z}).size() == 4);
  CHECK(subalgebra_closure({x, ctx->gen(1)}).size() == 4);
  // u commutes with x and y, so x,y,u only span a quaternion tensor a line
  CHECK(subalgebra_closure({x, ctx->gen(1), ctx->gen(3)}).size() == 8);
  CHECK(subalgebra_closure({x, ctx->gen(1), z, ctx->gen(3)}).size() == 16);
}

TEST_CASE("element literals round-trip") {
  auto ctx = std_algebra();
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Element e = testutil::random_element(ctx, 5000 + seed);
    CHECK(parse_element(to_string(e), ctx) == e);
  }
  CHECK(parse_element("0", ctx) == ctx->zero());
  CHECK(parse_element("alpha*x*y + 1", ctx) ==
        E("(alpha)*x*y") + ctx->one());
  CHECK_THROWS_AS(parse_element("x +", ctx), ParseError);
  CHECK_THROWS_AS(parse_element("w", ctx), ParseError);
}

TEST_CASE("context mismatch is detected") {
  auto a = std_algebra();
  FieldCtx f({"alpha", "beta", "gamma", "delta"});
  auto b = AlgebraCtx::make(
      f, {Scalar::var(1), Scalar::var(0), Scalar::var(2), Scalar::var(3)});
  CHECK_THROWS_AS(a->gen(0) * b->gen(1), CtxMismatch);
  // structurally identical contexts are compatible
  auto c = AlgebraCtx::make(
      f, {Scalar::var(0), Scalar::var(1), Scalar::var(2), Scalar::var(3)});
  CHECK(a->gen(0) * c->gen(1) == parse_element("x*y", a));
}
