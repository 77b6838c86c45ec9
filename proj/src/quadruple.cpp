#include "biq/quadruple.hpp"

#include <algorithm>

#include "biq/errors.hpp"

namespace biq {

Quadruple::Quadruple(Element x, Element y, Element z, Element u)
    : g{std::move(x), std::move(y), std::move(z), std::move(u)} {
  require_same_ctx(g[0], g[1]);
  require_same_ctx(g[0], g[2]);
  require_same_ctx(g[0], g[3]);
}

namespace {

Quadruple pair_swapped(const Quadruple& q) {
  return Quadruple(q.z(), q.u(), q.x(), q.y());
}

bool slotwise_equal(const Quadruple& a, const Quadruple& b) {
  for (int i = 0; i < 4; ++i)
    if (!(a.g[i] == b.g[i])) return false;
  return true;
}

Element nonscalar_part(const Element& e) {
  return e + e.ctx()->scalar_element(e.scalar_part());
}

}  // namespace

bool operator==(const Quadruple& a, const Quadruple& b) {
  return slotwise_equal(a, b) || slotwise_equal(a, pair_swapped(b));
}

ValidationReport validate(const Quadruple& q) {
  ValidationReport rep;
  const auto& x = q.x();
  const auto& y = q.y();
  const auto& z = q.z();
  const auto& u = q.u();
  auto add = [&](const char* rel, const char* detail, Element res) {
    rep.violations.push_back({rel, detail, std::move(res)});
  };

  Element r1 = nonscalar_part(x * x + x);
  if (!r1.is_zero()) add("R1", "x^2+x is not scalar", r1);
  Element r2 = nonscalar_part(y * y);
  if (!r2.is_zero()) add("R2", "y^2 is not scalar", r2);
  if (y.is_scalar()) add("R2", "second generator is scalar", y);
  Element r3 = nonscalar_part(z * z + z);
  if (!r3.is_zero()) add("R3", "z^2+z is not scalar", r3);
  Element r4 = nonscalar_part(u * u);
  if (!r4.is_zero()) add("R4", "u^2 is not scalar", r4);
  if (u.is_scalar()) add("R4", "fourth generator is scalar", u);

  Element r5 = x * y + y * x + y;
  if (!r5.is_zero()) add("R5", "xy+yx != y", r5);
  Element r6 = z * u + u * z + u;
  if (!r6.is_zero()) add("R6", "zu+uz != u", r6);
  Element r7 = bracket(x, z);
  if (!r7.is_zero()) add("R7", "xz != zx", r7);
  Element r8 = bracket(x, u);
  if (!r8.is_zero()) add("R8", "xu != ux", r8);
  Element r9 = bracket(y, z);
  if (!r9.is_zero()) add("R9", "yz != zy", r9);
  Element r10 = bracket(y, u);
  if (!r10.is_zero()) add("R10", "yu != uy", r10);

  if (!generates(x, y, z, u))
    add("R11", "the sixteen slot products do not span", q.ctx()->zero());
  return rep;
}

void require_valid(const Quadruple& q) {
  ValidationReport rep = validate(q);
  if (rep.ok()) return;
  std::string msg = "invalid quadruple:";
  for (const auto& v : rep.violations)
    msg += " " + v.relation + " (" + v.detail + ")";
  throw InvalidQuadruple(msg);
}

Quadruple canonicalize(const Quadruple& q) {
  require_valid(q);
  Quadruple sw = pair_swapped(q);
  return to_string(q.x()) <= to_string(sw.x()) ? q : sw;
}

SymbolTuple symbols(const Quadruple& q) {
  Quadruple c = canonicalize(q);
  SymbolTuple t;
  t.s[0] = (c.x() * c.x() + c.x()).scalar_part();
  t.s[1] = (c.y() * c.y()).scalar_part();
  t.s[2] = (c.z() * c.z() + c.z()).scalar_part();
  t.s[3] = (c.u() * c.u()).scalar_part();
  return t;
}

namespace {

constexpr auto in_span = &express_in_span;

void try_omega_s(const Quadruple& q, const Quadruple& p,
                 std::vector<StepKind>& out) {
  if (!(q.x() == p.x()) || !(q.z() == p.z())) return;
  Element m = p.y() * inverse(q.y());
  auto ab = in_span({q.ctx()->one(), q.x() + q.z()}, m);
  if (!ab) return;
  if ((*ab)[0].is_zero() && (*ab)[1].is_zero()) return;
  if (!(p.u() == m * q.u())) return;
  out.push_back(StepKind::omega_s((*ab)[0], (*ab)[1]));
}

void try_omega_i(const Quadruple& q, const Quadruple& p,
                 std::vector<StepKind>& out) {
  if (!(q.y() == p.y()) || !(q.u() == p.u())) return;
  Element d = p.x() + q.x();
  if (!(p.z() + q.z() == d)) return;
  auto a = in_span({q.y() * q.u()}, d);
  if (!a) return;
  out.push_back(StepKind::omega_i((*a)[0]));
}

void try_omega_c(const Quadruple& q, const Quadruple& p,
                 std::vector<StepKind>& out) {
  if (!(q.y() == p.y()) || !(q.z() == p.z())) return;
  Element m = p.u() * inverse(q.u());  // should be 1 + b*y
  auto cb = in_span({q.ctx()->one(), q.y()}, m);
  if (!cb) return;
  if (!(*cb)[0].is_one()) return;
  const Scalar& b = (*cb)[1];
  Element by = q.ctx()->scalar_element(b) * q.y();
  Element xs = q.x() + by * inverse(q.ctx()->one() + by) * q.z();
  if (!(p.x() == xs)) return;
  out.push_back(StepKind::omega_c(b));
}

}  // namespace

std::vector<StepKind> classify_step(const Quadruple& q, const Quadruple& q2) {
  require_same_ctx(q.x(), q2.x());
  require_valid(q);
  require_valid(q2);

  auto changed = [&](const Quadruple& p) {
    std::array<bool, 4> c{};
    for (int i = 0; i < 4; ++i) c[i] = !(q.g[i] == p.g[i]);
    return c;
  };
  auto count = [](const std::array<bool, 4>& c) {
    return int(c[0]) + c[1] + c[2] + c[3];
  };

  Quadruple aligned = q2;
  std::array<bool, 4> c = changed(aligned);
  {
    Quadruple sw = pair_swapped(q2);
    std::array<bool, 4> cs = changed(sw);
    if (count(cs) < count(c)) {
      aligned = sw;
      c = cs;
    }
  }

  std::vector<StepKind> out;
  const int n = count(c);
  const bool first_pair = c[0] || c[1], second_pair = c[2] || c[3];
  if (n <= 1) out.push_back(StepKind::simple(StepKind::Tag::L1));
  if ((int(c[0]) + c[1] <= 1) && (int(c[2]) + c[3] <= 1))
    out.push_back(StepKind::simple(StepKind::Tag::L2));
  if (n <= 3) out.push_back(StepKind::simple(StepKind::Tag::L3));
  if (!(first_pair && second_pair))
    out.push_back(StepKind::simple(StepKind::Tag::Pi));

  // multiplicative recoveries are attempted under every pair order of both
  // endpoints: an exchange-symmetric recording may put the scaled pair
  // second, and a move may act on the exchanged pairing altogether
  for (const Quadruple& qq : {q, pair_swapped(q)}) {
    for (const Quadruple& p : {aligned, pair_swapped(aligned)}) {
      std::vector<StepKind> found;
      try_omega_s(qq, p, found);
      try_omega_i(qq, p, found);
      try_omega_c(qq, p, found);
      for (StepKind& k : found) {
        if (std::find(out.begin(), out.end(), k) == out.end())
          out.push_back(std::move(k));
      }
    }
  }
  return out;
}

bool contains_kind(const std::vector<StepKind>& kinds, StepKind::Tag tag) {
  return std::any_of(kinds.begin(), kinds.end(),
                     [&](const StepKind& k) { return k.tag == tag; });
}

}  // namespace biq
