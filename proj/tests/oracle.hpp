// Test-only oracle machinery, kept independent of the library's own
// polynomial code paths: univariate arithmetic over GF(2^16) built from
// scratch, used to spot-check multivariate gcd results by random
// specialization v_i -> a_i*t + b_i.
#ifndef BIQ_TESTS_ORACLE_HPP
#define BIQ_TESTS_ORACLE_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "biq/poly2.hpp"

namespace oracle {

// ---- GF(2) univariate polynomials as bit vectors (lowest degree first) ----

using Bits = std::vector<uint64_t>;

inline int bits_deg(const Bits& p) {
  for (int w = int(p.size()) - 1; w >= 0; --w) {
    if (p[w]) {
      for (int b = 63; b >= 0; --b)
        if (p[w] >> b & 1) return w * 64 + b;
    }
  }
  return -1;
}

inline bool bits_get(const Bits& p, int i) {
  int w = i / 64, b = i % 64;
  return w < int(p.size()) && (p[w] >> b & 1);
}

inline void bits_flip(Bits& p, int i) {
  int w = i / 64, b = i % 64;
  if (w >= int(p.size())) p.resize(w + 1, 0);
  p[w] ^= uint64_t(1) << b;
}

inline void bits_reduce(Bits& p, const Bits& mod) {
  int dm = bits_deg(mod);
  while (bits_deg(p) >= dm) {
    int d = bits_deg(p) - dm;
    for (int j = 0; j <= dm; ++j)
      if (bits_get(mod, j)) bits_flip(p, j + d);
  }
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Bits bits_mulmod(const Bits& a, const Bits& b, const Bits& mod) {
  Bits r;
  Bits sh = a;
  bits_reduce(sh, mod);
  for (int i = 0; i <= bits_deg(b); ++i) {
    if (bits_get(b, i)) {
      if (r.size() < sh.size()) r.resize(sh.size(), 0);
      for (int w = 0; w < int(sh.size()); ++w) r[w] ^= sh[w];
    }
    Bits nx(sh.size() + 1, 0);
    for (int w = 0; w < int(sh.size()); ++w) {
      nx[w] ^= sh[w] << 1;
      nx[w + 1] ^= sh[w] >> 63;
    }
    bits_reduce(nx, mod);
    sh = nx;
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

inline Bits bits_gcd(Bits a, Bits b) {
  while (bits_deg(b) >= 0) {
    // a mod b
    int db = bits_deg(b);
    while (bits_deg(a) >= db) {
      int d = bits_deg(a) - db;
      for (int j = 0; j <= db; ++j)
        if (bits_get(b, j)) bits_flip(a, j + d);
    }
    std::swap(a, b);
  }
  return a;
}

// Find an irreducible polynomial of degree 16 over GF(2) by Rabin's test:
// t^(2^16) == t (mod p) and gcd(t^(2^8) + t, p) == 1.
inline Bits find_irreducible16() {
  std::mt19937_64 rng(12345);
  for (;;) {
    Bits p(1, 0);
    bits_flip(p, 16);
    bits_flip(p, 0);
    uint64_t mid = rng();
    for (int i = 1; i < 16; ++i)
      if (mid >> i & 1) bits_flip(p, i);

    Bits t(1, 2);
    Bits f = t;
    for (int i = 0; i < 16; ++i) f = bits_mulmod(f, f, p);
    bits_flip(f, 1);  // f += t
    if (bits_deg(f) >= 0) continue;

    Bits g = t;
    for (int i = 0; i < 8; ++i) g = bits_mulmod(g, g, p);
    bits_flip(g, 1);  // g += t
    if (bits_deg(bits_gcd(g, p)) == 0) return p;
  }
}

// ---- GF(2^16) arithmetic ----

struct GF {
  // modulus bits of the degree-16 irreducible, as a 32-bit mask
  uint32_t mod;
  explicit GF(const Bits& m) : mod(0) {
    for (int i = 0; i <= 16; ++i)
      if (bits_get(m, i)) mod |= uint32_t(1) << i;
  }
  uint16_t mul(uint16_t a, uint16_t b) const {
    uint32_t r = 0, x = a;
    for (int i = 0; i < 16; ++i) {
      if (b >> i & 1) r ^= x << i;
    }
    for (int d = 31; d >= 16; --d)
      if (r >> d & 1) r ^= mod << (d - 16);
    return uint16_t(r);
  }
  uint16_t pow(uint16_t a, uint64_t e) const {
    uint16_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  uint16_t inv(uint16_t a) const { return pow(a, 0xfffe); }
};

// ---- univariate polynomials over GF(2^16), low degree first ----

using UPoly = std::vector<uint16_t>;

inline void utrim(UPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline int udeg(const UPoly& p) { return int(p.size()) - 1; }

inline UPoly uadd(UPoly a, const UPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), 0);
  for (size_t i = 0; i < b.size(); ++i) a[i] ^= b[i];
  utrim(a);
  return a;
}

inline UPoly umul(const GF& gf, const UPoly& a, const UPoly& b) {
  if (a.empty() || b.empty()) return {};
  UPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] ^= gf.mul(a[i], b[j]);
  utrim(r);
  return r;
}

inline UPoly urem(const GF& gf, UPoly a, const UPoly& b) {
  int db = udeg(b);
  uint16_t linv = gf.inv(b.back());
  while (udeg(a) >= db) {
    uint16_t c = gf.mul(a.back(), linv);
    int d = udeg(a) - db;
    for (int j = 0; j <= db; ++j) a[j + d] ^= gf.mul(c, b[j]);
    utrim(a);
  }
  return a;
}

inline UPoly ugcd(const GF& gf, UPoly a, UPoly b) {
  utrim(a);
  utrim(b);
  while (!b.empty()) {
    UPoly r = urem(gf, a, b);
    a = b;
    b = r;
  }
  if (!a.empty()) {
    uint16_t linv = gf.inv(a.back());
    for (auto& c : a) c = gf.mul(c, linv);  // monic
  }
  return a;
}

inline bool udivides(const GF& gf, const UPoly& d, const UPoly& a) {
  if (d.empty()) return a.empty();
  if (a.empty()) return true;
  return urem(gf, a, d).empty();
}

// Specialize a multivariate GF(2) polynomial at v_i -> a_i*t + b_i.
inline UPoly specialize(const GF& gf, const biq::Poly2& p,
                        const std::vector<std::pair<uint16_t, uint16_t>>& sub) {
  UPoly result;
  for (const auto& m : p.terms()) {
    UPoly term{1};
    for (int v = 0; v < biq::kMaxVars; ++v) {
      for (int k = 0; k < m.e[v]; ++k) {
        UPoly lin{sub[v].second, sub[v].first};
        term = umul(gf, term, lin);
      }
    }
    result = uadd(result, term);
  }
  return result;
}

inline std::vector<std::pair<uint16_t, uint16_t>> random_sub(
    std::mt19937_64& rng) {
  std::vector<std::pair<uint16_t, uint16_t>> sub(biq::kMaxVars);
  for (auto& s : sub) {
    s.first = uint16_t(rng() | 1);  // nonzero slope
    if (s.first == 0) s.first = 1;
    s.second = uint16_t(rng());
  }
  return sub;
}

}  // namespace oracle

#endif
