#include "biq/poly2.hpp"

#include <algorithm>
#include <cassert>
#include <map>
#include <random>
#include <stdexcept>

namespace biq {

bool grlex_less(const Mono& a, const Mono& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  // Same degree: earlier variable with larger exponent is the bigger monomial.
  for (int i = 0; i < kMaxVars; ++i) {
    if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
  }
  return false;
}

namespace {
bool grlex_greater(const Mono& a, const Mono& b) { return grlex_less(b, a); }

Mono mono_mul(const Mono& a, const Mono& b) {
  Mono r;
  for (int i = 0; i < kMaxVars; ++i) {
    uint32_t s = uint32_t(a.e[i]) + b.e[i];
    if (s > 0xffff) throw std::overflow_error("monomial exponent overflow");
    r.e[i] = uint16_t(s);
  }
  return r;
}

bool mono_divides(const Mono& d, const Mono& m) {
  for (int i = 0; i < kMaxVars; ++i)
    if (d.e[i] > m.e[i]) return false;
  return true;
}

Mono mono_div(const Mono& m, const Mono& d) {
  Mono r;
  for (int i = 0; i < kMaxVars; ++i) r.e[i] = uint16_t(m.e[i] - d.e[i]);
  return r;
}
}  // namespace

Poly2 Poly2::one() { return mono(Mono{}); }

Poly2 Poly2::var(int idx, int exp) {
  assert(idx >= 0 && idx < kMaxVars);
  Mono m;
  m.e[idx] = uint16_t(exp);
  return mono(m);
}

Poly2 Poly2::mono(const Mono& m) {
  Poly2 p;
  p.terms_.push_back(m);
  return p;
}

Poly2 Poly2::from_monos(std::vector<Mono> ms) {
  std::sort(ms.begin(), ms.end(), grlex_greater);
  Poly2 p;
  size_t i = 0;
  while (i < ms.size()) {
    size_t j = i;
    while (j < ms.size() && ms[j] == ms[i]) ++j;
    if ((j - i) % 2 == 1) p.terms_.push_back(ms[i]);
    i = j;
  }
  return p;
}

bool Poly2::is_one() const {
  return terms_.size() == 1 && terms_[0].total_degree() == 0;
}

bool Poly2::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].total_degree() == 0);
}

int Poly2::total_degree() const {
  if (terms_.empty()) return -1;
  return terms_.front().total_degree();
}

Poly2 operator+(const Poly2& a, const Poly2& b) {
  Poly2 r;
  r.terms_.reserve(a.terms_.size() + b.terms_.size());
  size_t i = 0, j = 0;
  while (i < a.terms_.size() && j < b.terms_.size()) {
    if (a.terms_[i] == b.terms_[j]) {
      ++i;
      ++j;  // cancellation
    } else if (grlex_less(a.terms_[i], b.terms_[j])) {
      r.terms_.push_back(b.terms_[j++]);
    } else {
      r.terms_.push_back(a.terms_[i++]);
    }
  }
  while (i < a.terms_.size()) r.terms_.push_back(a.terms_[i++]);
  while (j < b.terms_.size()) r.terms_.push_back(b.terms_[j++]);
  return r;
}

Poly2 operator*(const Poly2& a, const Poly2& b) {
  if (a.is_zero() || b.is_zero()) return {};
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  std::vector<Mono> prods;
  prods.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ma : a.terms_)
    for (const auto& mb : b.terms_) prods.push_back(mono_mul(ma, mb));
  return Poly2::from_monos(std::move(prods));
}

std::optional<Poly2> Poly2::exact_div(const Poly2& a, const Poly2& b) {
  if (b.is_zero()) return std::nullopt;
  if (a.is_zero()) return Poly2{};
  if (b.is_one()) return a;
  Poly2 r = a;
  Poly2 q;
  while (!r.is_zero()) {
    const Mono& lr = r.leading();
    const Mono& lb = b.leading();
    if (!mono_divides(lb, lr)) return std::nullopt;
    Mono qm = mono_div(lr, lb);
    q.terms_.push_back(qm);  // lt(r) strictly decreases, so order is kept
    r = r + Poly2::mono(qm) * b;
  }
  return q;
}

int Poly2::deg_in(int v) const {
  int d = 0;
  for (const auto& m : terms_) d = std::max(d, int(m.e[v]));
  return d;
}

Poly2 Poly2::coeff_wrt(int v, int k) const {
  std::vector<Mono> ms;
  for (const auto& m : terms_) {
    if (m.e[v] == k) {
      Mono c = m;
      c.e[v] = 0;
      ms.push_back(c);
    }
  }
  return from_monos(std::move(ms));
}

Poly2 Poly2::mul_var_pow(int v, int k) const {
  Poly2 r = *this;
  for (auto& m : r.terms_) {
    uint32_t s = uint32_t(m.e[v]) + k;
    if (s > 0xffff) throw std::overflow_error("monomial exponent overflow");
    m.e[v] = uint16_t(s);
  }
  return r;
}

std::vector<int> Poly2::support() const {
  std::vector<int> vs;
  for (int v = 0; v < kMaxVars; ++v) {
    for (const auto& m : terms_) {
      if (m.e[v] > 0) {
        vs.push_back(v);
        break;
      }
    }
  }
  return vs;
}

namespace {

// ---- arithmetic in GF(2^16), used by the modular gcd below ----------------

using GF = uint16_t;

// Finds a degree-16 irreducible over GF(2), returned with bit 16 set.
uint32_t gf_reduction_search() {
  auto mulmod = [](uint32_t a, uint32_t b, uint32_t p) {
    uint32_t r = 0;
    for (int i = 0; i < 16; ++i)
      if (b >> i & 1) r ^= a << i;
    for (int i = 30; i >= 16; --i)
      if (r >> i & 1) r ^= p << (i - 16);
    return r & 0xffffu;
  };
  auto bits_deg = [](uint32_t x) { return x ? 31 - __builtin_clz(x) : -1; };
  auto bits_gcd = [&](uint32_t a, uint32_t b) {
    while (b) {
      int db = bits_deg(b);
      while (a && bits_deg(a) >= db) a ^= b << (bits_deg(a) - db);
      std::swap(a, b);
    }
    return a;
  };
  for (uint32_t c = 3;; c += 2) {
    uint32_t p = 0x10000u | c;
    // t^(2^16) = t mod p, and t^(2^8) + t coprime to p (16 = 2^4, so the
    // only prime to rule out is 2)
    uint32_t s = 2;
    for (int i = 0; i < 16; ++i) s = mulmod(s, s, p);
    if (s != 2) continue;
    uint32_t g = 2;
    for (int i = 0; i < 8; ++i) g = mulmod(g, g, p);
    g ^= 2;
    if (g == 0 || bits_gcd(p, g) != 1) continue;
    return p;
  }
}

inline GF gf_mul(GF a, GF b) {
  static const uint32_t red = gf_reduction_search();
  uint32_t r = 0;
  for (int i = 0; i < 16; ++i)
    if (b >> i & 1) r ^= uint32_t(a) << i;
  for (int i = 30; i >= 16; --i)
    if (r >> i & 1) r ^= red << (i - 16);
  return GF(r);
}

GF gf_pow(GF a, unsigned e) {
  GF r = 1;
  while (e) {
    if (e & 1) r = gf_mul(r, a);
    a = gf_mul(a, a);
    e >>= 1;
  }
  return r;
}

GF gf_inv(GF a) { return gf_pow(a, 65534); }

// dense univariate polynomials over GF(2^16)
using UV = std::vector<GF>;

int uv_deg(const UV& p) {
  int d = int(p.size()) - 1;
  while (d >= 0 && !p[d]) --d;
  return d;
}

void uv_trim(UV& p) { p.resize(size_t(uv_deg(p) + 1)); }

UV uv_gcd(UV a, UV b) {
  uv_trim(a);
  uv_trim(b);
  while (!b.empty()) {
    int db = int(b.size()) - 1;
    GF ilb = gf_inv(b[db]);
    while (int(a.size()) - 1 >= db) {
      int da = int(a.size()) - 1;
      GF f = gf_mul(a[da], ilb);
      for (int i = 0; i <= db; ++i) a[da - db + i] ^= gf_mul(f, b[i]);
      uv_trim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  if (!a.empty()) {
    GF il = gf_inv(a.back());
    for (auto& c : a) c = gf_mul(c, il);
  }
  return a;
}

// sparse multivariate polynomials over GF(2^16)
struct MonoCmp {
  bool operator()(const Mono& a, const Mono& b) const {
    return grlex_less(a, b);
  }
};
using MPoly = std::map<Mono, GF, MonoCmp>;

MPoly to_mpoly(const Poly2& p) {
  MPoly r;
  for (const auto& m : p.terms()) r[m] = 1;
  return r;
}

MPoly substitute(const MPoly& p, int var, GF val) {
  MPoly r;
  for (const auto& [m, c] : p) {
    Mono m2 = m;
    m2.e[var] = 0;
    GF c2 = gf_mul(c, gf_pow(val, m.e[var]));
    auto [it, fresh] = r.emplace(m2, c2);
    if (!fresh) {
      it->second ^= c2;
      if (!it->second) r.erase(it);
    }
  }
  return r;
}

UV to_uv(const MPoly& p, int v) {
  UV r;
  for (const auto& [m, c] : p) {
    if (size_t(m.e[v]) >= r.size()) r.resize(m.e[v] + 1, 0);
    r[m.e[v]] ^= c;
  }
  uv_trim(r);
  return r;
}

// Lagrange interpolation in the variable dvar from values at points xs.
MPoly interp(const std::vector<GF>& xs, const std::vector<MPoly>& vals,
             int dvar) {
  const int n = int(xs.size());
  MPoly res;
  for (int b = 0; b < n; ++b) {
    UV basis{1};
    GF denom = 1;
    for (int c = 0; c < n; ++c) {
      if (c == b) continue;
      UV nl(basis.size() + 1, 0);
      for (size_t i = 0; i < basis.size(); ++i) {
        nl[i + 1] ^= basis[i];
        nl[i] ^= gf_mul(basis[i], xs[c]);
      }
      basis = std::move(nl);
      denom = gf_mul(denom, GF(xs[b] ^ xs[c]));
    }
    GF id = gf_inv(denom);
    for (const auto& [m, c0] : vals[b]) {
      for (size_t k = 0; k < basis.size(); ++k) {
        if (!basis[k]) continue;
        GF cc = gf_mul(gf_mul(c0, basis[k]), id);
        Mono m2 = m;
        m2.e[dvar] = uint16_t(k);
        auto [it, fresh] = res.emplace(m2, cc);
        if (!fresh) {
          it->second ^= cc;
          if (!it->second) res.erase(it);
        }
      }
    }
  }
  return res;
}

struct Dim {
  int var;
  std::vector<GF> pts;
};

// Evaluates A, B, and the imposed leading coefficient g on the point grid,
// takes univariate gcds at the leaves, and interpolates back up. Returns
// nullopt when an evaluation point degrades a leading coefficient or the
// leaf gcd degrees disagree.
std::optional<MPoly> brown_rec(const MPoly& A, const MPoly& B, const MPoly& g,
                               const std::vector<Dim>& dims, size_t lvl, int v,
                               int dA, int dB, int& dG) {
  if (lvl == dims.size()) {
    UV ua = to_uv(A, v), ub = to_uv(B, v);
    if (uv_deg(ua) != dA || uv_deg(ub) != dB) return std::nullopt;
    GF gv = g.empty() ? GF(0) : g.begin()->second;
    if (!gv) return std::nullopt;
    UV gg = uv_gcd(std::move(ua), std::move(ub));
    int d = uv_deg(gg);
    if (dG < 0)
      dG = d;
    else if (d != dG)
      return std::nullopt;
    MPoly r;
    for (int k = 0; k <= d; ++k) {
      if (!gg[k]) continue;
      Mono m;
      m.e[v] = uint16_t(k);
      r[m] = gf_mul(gg[k], gv);
    }
    return r;
  }
  const Dim& dim = dims[lvl];
  std::vector<MPoly> vals;
  vals.reserve(dim.pts.size());
  for (GF x : dim.pts) {
    auto r = brown_rec(substitute(A, dim.var, x), substitute(B, dim.var, x),
                       substitute(g, dim.var, x), dims, lvl + 1, v, dA, dB, dG);
    if (!r) return std::nullopt;
    vals.push_back(std::move(*r));
  }
  return interp(dim.pts, vals, dim.var);
}

Poly2 content_wrt(const Poly2& p, int v);

// Modular gcd of primitive (w.r.t. v) polynomials: specialize all other
// variables at random points of GF(2^16), take univariate gcds, interpolate
// with leading coefficient gcd(lc A, lc B) imposed, and certify the result
// by trial division. Coprimality is certified by a single specialization
// that preserves both leading coefficients. Returns nullopt when repeated
// bad luck exhausts the attempt budget.
std::optional<Poly2> gcd_modular(const Poly2& A, const Poly2& B, int v) {
  const int dA = A.deg_in(v), dB = B.deg_in(v);
  Poly2 gamma = gcd(A.lc_wrt(v), B.lc_wrt(v));
  std::vector<int> ovars;
  for (int o = 0; o < kMaxVars; ++o) {
    if (o == v) continue;
    if (A.deg_in(o) > 0 || B.deg_in(o) > 0) ovars.push_back(o);
  }
  static std::mt19937_64 rng(0x9d2c5680u);
  const MPoly mA = to_mpoly(A), mB = to_mpoly(B), mg = to_mpoly(gamma);
  for (int attempt = 0; attempt < 6; ++attempt) {
    MPoly a0 = mA, b0 = mB;
    for (int o : ovars) {
      GF x = GF(rng());
      a0 = substitute(a0, o, x);
      b0 = substitute(b0, o, x);
    }
    UV ua = to_uv(a0, v), ub = to_uv(b0, v);
    if (uv_deg(ua) != dA || uv_deg(ub) != dB) continue;
    if (uv_deg(uv_gcd(std::move(ua), std::move(ub))) == 0) return Poly2::one();

    std::vector<Dim> dims;
    for (int o : ovars) {
      int n = gamma.deg_in(o) + std::min(A.deg_in(o), B.deg_in(o)) + 1;
      std::vector<GF> pts;
      while (int(pts.size()) < n) {
        GF x = GF(rng());
        if (std::find(pts.begin(), pts.end(), x) == pts.end())
          pts.push_back(x);
      }
      dims.push_back({o, std::move(pts)});
    }
    int dG = -1;
    auto H = brown_rec(mA, mB, mg, dims, 0, v, dA, dB, dG);
    if (!H) continue;
    std::vector<Mono> ms;
    bool in_gf2 = true;
    for (const auto& [m, c] : *H) {
      if (c != 1) {
        in_gf2 = false;
        break;
      }
      ms.push_back(m);
    }
    if (!in_gf2) continue;
    Poly2 cand = Poly2::from_monos(std::move(ms));
    Poly2 cont = content_wrt(cand, v);
    if (!cont.is_one()) {
      auto q = Poly2::exact_div(cand, cont);
      if (!q) continue;
      cand = std::move(*q);
    }
    if (!Poly2::exact_div(A, cand) || !Poly2::exact_div(B, cand)) continue;
    return cand;
  }
  return std::nullopt;
}

// Pseudo-remainder of a by b with respect to variable v.
Poly2 prem(Poly2 a, const Poly2& b, int v) {
  const int db = b.deg_in(v);
  const Poly2 lb = b.lc_wrt(v);
  while (!a.is_zero() && a.deg_in(v) >= db) {
    int da = a.deg_in(v);
    Poly2 la = a.lc_wrt(v);
    a = lb * a + la.mul_var_pow(v, da - db) * b;
  }
  return a;
}

Poly2 content_wrt(const Poly2& p, int v) {
  Poly2 g;
  for (int k = p.deg_in(v); k >= 0; --k) {
    g = gcd(g, p.coeff_wrt(v, k));
    if (g.is_one()) break;
  }
  return g;
}

Poly2 must_div(const Poly2& a, const Poly2& b) {
  auto q = Poly2::exact_div(a, b);
  assert(q.has_value());
  return *q;
}

// Euclid for polynomials in the single variable v (coefficients in GF(2),
// so everything is already monic).
Poly2 gcd_univariate(Poly2 a, Poly2 b, int v) {
  while (!b.is_zero()) {
    Poly2 r = prem(a, b, v);  // lc is 1 here: plain remainder
    a = b;
    b = r;
  }
  return a;
}

}  // namespace

Poly2 gcd(const Poly2& a, const Poly2& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (a.is_one() || b.is_one()) return Poly2::one();
  if (a == b) return a;

  // Split off the common monomial factor first; it is cheap and frequent.
  Mono ma, mb;
  for (int i = 0; i < kMaxVars; ++i) {
    ma.e[i] = 0xffff;
    mb.e[i] = 0xffff;
  }
  for (const auto& m : a.terms())
    for (int i = 0; i < kMaxVars; ++i) ma.e[i] = std::min(ma.e[i], m.e[i]);
  for (const auto& m : b.terms())
    for (int i = 0; i < kMaxVars; ++i) mb.e[i] = std::min(mb.e[i], m.e[i]);
  Mono mg;
  bool stripped = false;
  for (int i = 0; i < kMaxVars; ++i) {
    mg.e[i] = std::min(ma.e[i], mb.e[i]);
    if (ma.e[i] > 0 || mb.e[i] > 0) stripped = true;
  }
  if (stripped) {
    auto strip = [](const Poly2& p, const Mono& m) {
      std::vector<Mono> ms;
      ms.reserve(p.terms().size());
      for (auto t : p.terms()) {
        for (int i = 0; i < kMaxVars; ++i) t.e[i] = uint16_t(t.e[i] - m.e[i]);
        ms.push_back(t);
      }
      return Poly2::from_monos(std::move(ms));
    };
    return Poly2::mono(mg) * gcd(strip(a, ma), strip(b, mb));
  }

  // Main variable: a shared one of largest degree, so the interpolation
  // grid below stays small.
  auto sa = a.support(), sb = b.support();
  int v = -1, best = -1;
  for (int x : sa) {
    if (std::find(sb.begin(), sb.end(), x) == sb.end()) continue;
    int d = std::min(a.deg_in(x), b.deg_in(x));
    if (d > best) {
      best = d;
      v = x;
    }
  }
  if (v < 0) return Poly2::one();  // no shared variable, no common factor

  if (sa.size() == 1 && sb.size() == 1) return gcd_univariate(a, b, v);

  Poly2 ca = content_wrt(a, v), cb = content_wrt(b, v);
  Poly2 cg = gcd(ca, cb);
  Poly2 A = must_div(a, ca), B = must_div(b, cb);
  if (A.deg_in(v) < B.deg_in(v)) std::swap(A, B);

  if (auto g = gcd_modular(A, B, v)) return cg * *g;

  // Fallback: primitive pseudo-remainder sequence in v.
  while (!B.is_zero()) {
    Poly2 R = prem(A, B, v);
    A = B;
    if (R.is_zero()) {
      B = Poly2{};
    } else {
      B = must_div(R, content_wrt(R, v));
    }
  }
  if (A.deg_in(v) == 0) return cg;  // primitive part degenerated to a constant
  return cg * A;
}

}  // namespace biq
