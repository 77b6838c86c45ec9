#include "biq/errors.hpp"
#include "biq/involution.hpp"
#include "common.hpp"
#include "doctest.h"

using namespace biq;
using testutil::std_algebra;

namespace {

void check_involution_laws(const Involution& s) {
  auto ctx = s.ctx;
  // anti-multiplicative on all basis pairs, involutive on all basis elements
  for (int a = 0; a < kDim; ++a) {
    Element ea = ctx->basis_element(a);
    CHECK(s.apply(s.apply(ea)) == ea);
    for (int b = 0; b < kDim; ++b) {
      Element eb = ctx->basis_element(b);
      CHECK(s.apply(ea * eb) == s.apply(eb) * s.apply(ea));
    }
  }
  CHECK(s.apply(ctx->one()) == ctx->one());
}

}  // namespace

TEST_CASE("reference involution") {
  auto ctx = std_algebra();
  Involution tau = reference_involution(ctx);
  CHECK(tau.apply(ctx->gen(0)) == ctx->gen(0) + ctx->one());
  CHECK(tau.apply(ctx->gen(1)) == ctx->gen(1));
  CHECK(tau.apply(ctx->gen(2)) == ctx->gen(2) + ctx->one());
  CHECK(tau.apply(ctx->gen(3)) == ctx->gen(3));
  check_involution_laws(tau);
  // linearity over F
  Element e = testutil::random_element(ctx, 7);
  Element f = testutil::random_element(ctx, 8);
  CHECK(tau.apply(e + f) == tau.apply(e) + tau.apply(f));
  Scalar c = random_scalar(2, 3, 9, 4);
  CHECK(tau.apply(c * e) == c * tau.apply(e));
}

TEST_CASE("extension with the reference assignments") {
  auto ctx = std_algebra();
  Element x = ctx->gen(0), u = ctx->gen(3);
  Involution s = extend_involution(ctx, {{x, x + ctx->one()}, {u, u}});
  CHECK(s.apply(x) == x + ctx->one());
  CHECK(s.apply(u) == u);
  check_involution_laws(s);
}

TEST_CASE("extension fixing z instead of z+1") {
  auto ctx = std_algebra();
  Element x = ctx->gen(0), z = ctx->gen(2);
  Involution s = extend_involution(ctx, {{x, x + ctx->one()}, {z, z}});
  CHECK(s.apply(x) == x + ctx->one());
  CHECK(s.apply(z) == z);
  check_involution_laws(s);
}

TEST_CASE("extension for a non-standard commuting pair") {
  auto ctx = std_algebra();
  // the pair (x + a*y*u, z + a*y*u) arising from an inseparable omega move
  Element d = ctx->scalar_element(random_scalar(1, 2, 3, 4)) *
              (ctx->gen(1) * ctx->gen(3));
  Element xs = ctx->gen(0) + d, zs = ctx->gen(2) + d;
  Involution s = extend_involution(ctx, {{xs, xs + ctx->one()}, {zs, zs}});
  CHECK(s.apply(xs) == xs + ctx->one());
  CHECK(s.apply(zs) == zs);
  check_involution_laws(s);
}

TEST_CASE("inconsistent assignments have no extension") {
  auto ctx = std_algebra();
  Element x = ctx->gen(0);
  CHECK_THROWS_AS(
      extend_involution(ctx, {{x, x + ctx->one()}, {x * x, x * x}}),
      NoExtension);
}
