#include "biq/scalar.hpp"

#include <random>
#include <sstream>
#include <stdexcept>

#include "biq/errors.hpp"

namespace biq {

FieldCtx::FieldCtx(std::vector<std::string> vars) : vars_(std::move(vars)) {
  if (int(vars_.size()) > kMaxVars)
    throw UsageError("at most " + std::to_string(kMaxVars) +
                     " field indeterminates are supported");
  for (size_t i = 0; i < vars_.size(); ++i) {
    const auto& v = vars_[i];
    if (v.empty() || v[0] < 'a' || v[0] > 'z')
      throw UsageError("bad indeterminate name: " + v);
    for (char c : v)
      if (!((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')))
        throw UsageError("bad indeterminate name: " + v);
    if (v == "x" || v == "y" || v == "z" || v == "u")
      throw UsageError("indeterminate name '" + v +
                       "' collides with a generator letter");
    for (size_t j = 0; j < i; ++j)
      if (vars_[j] == v) throw UsageError("duplicate indeterminate: " + v);
  }
}

int FieldCtx::index_of(const std::string& name) const {
  for (size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return int(i);
  return -1;
}

Scalar::Scalar(Poly2 num, Poly2 den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw ZeroDenominator("zero denominator");
  if (num_.is_zero()) {
    den_ = Poly2::one();
    return;
  }
  if (!den_.is_one()) {
    Poly2 g = gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *Poly2::exact_div(num_, g);
      den_ = *Poly2::exact_div(den_, g);
    }
  }
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.den_ == b.den_) return Scalar(a.num_ + b.num_, a.den_);
  // Keep gcd arguments small: with both inputs reduced, gcd work is
  // confined to the shared denominator part.
  Poly2 g = gcd(a.den_, b.den_);
  if (g.is_one()) {
    Poly2 num = a.num_ * b.den_ + b.num_ * a.den_;
    if (num.is_zero()) return Scalar::zero();
    return Scalar(Scalar::canonical_t{}, std::move(num), a.den_ * b.den_);
  }
  Poly2 bd = *Poly2::exact_div(b.den_, g);
  Poly2 ad = *Poly2::exact_div(a.den_, g);
  Poly2 t = a.num_ * bd + b.num_ * ad;
  if (t.is_zero()) return Scalar::zero();
  Poly2 h = gcd(t, g);
  if (!h.is_one()) {
    t = *Poly2::exact_div(t, h);
    g = *Poly2::exact_div(g, h);
  }
  return Scalar(Scalar::canonical_t{}, std::move(t), ad * g * bd);
}

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return Scalar::zero();
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  // Cross-cancel before multiplying so the result needs no further gcd.
  Poly2 an = a.num_, bd = b.den_;
  Poly2 g1 = gcd(an, bd);
  if (!g1.is_one()) {
    an = *Poly2::exact_div(an, g1);
    bd = *Poly2::exact_div(bd, g1);
  }
  Poly2 bn = b.num_, ad = a.den_;
  Poly2 g2 = gcd(bn, ad);
  if (!g2.is_one()) {
    bn = *Poly2::exact_div(bn, g2);
    ad = *Poly2::exact_div(ad, g2);
  }
  return Scalar(Scalar::canonical_t{}, an * bn, ad * bd);
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw ZeroDenominator("division by zero scalar");
  if (a.is_zero()) return Scalar::zero();
  return a * b.inverse();
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw ZeroDenominator("inverse of zero scalar");
  return Scalar(den_, num_);
}

std::string to_string(const Poly2& p, const FieldCtx& ctx) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first_term = true;
  for (const auto& m : p.terms()) {
    if (!first_term) os << "+";
    first_term = false;
    if (m.total_degree() == 0) {
      os << "1";
      continue;
    }
    bool first_factor = true;
    for (int v = 0; v < ctx.nvars(); ++v) {
      if (m.e[v] == 0) continue;
      if (!first_factor) os << "*";
      first_factor = false;
      os << ctx.name(v);
      if (m.e[v] > 1) os << "^" << m.e[v];
    }
  }
  return os.str();
}

std::string to_string(const Scalar& s, const FieldCtx& ctx) {
  std::string num = to_string(s.num(), ctx);
  if (s.den().is_one()) return num;
  if (s.num().terms().size() > 1) num = "(" + num + ")";
  return num + "/(" + to_string(s.den(), ctx) + ")";
}

namespace {
Poly2 random_poly(int degree_bound, int term_bound, std::mt19937_64& rng,
                  int nvars) {
  std::uniform_int_distribution<int> nterms(0, term_bound);
  std::vector<Mono> ms;
  int t = nterms(rng);
  for (int i = 0; i < t; ++i) {
    Mono m;
    if (nvars > 0 && degree_bound > 0) {
      std::uniform_int_distribution<int> dd(0, degree_bound);
      int d = dd(rng);
      std::uniform_int_distribution<int> vv(0, nvars - 1);
      for (int k = 0; k < d; ++k) m.e[vv(rng)]++;
    }
    ms.push_back(m);
  }
  return Poly2::from_monos(std::move(ms));
}
}  // namespace

Scalar random_scalar(int degree_bound, int term_bound, uint64_t seed,
                     int nvars) {
  if (degree_bound < 0 || term_bound < 1)
    throw UsageError("random_scalar: bad bounds");
  std::mt19937_64 rng(seed * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
  Poly2 num = random_poly(degree_bound, term_bound, rng, nvars);
  Poly2 den;
  do {
    den = random_poly(degree_bound, term_bound, rng, nvars);
  } while (den.is_zero());
  return Scalar(std::move(num), std::move(den));
}

}  // namespace biq
