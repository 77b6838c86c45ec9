#include "biq/algebra.hpp"

#include <sstream>

#include "biq/errors.hpp"
#include "biq/parser.hpp"

namespace biq {

namespace {

// Normal-form product of a basis monomial with a single generator on the
// right, using the defining relations
//   x^2 = x + alpha, y^2 = beta, z^2 = z + gamma, u^2 = delta,
//   yx = xy + y, uz = zu + u, and commutation across the pairs.
std::vector<std::pair<int, Scalar>> mul_basis_gen(
    int b, int g, const std::array<Scalar, 4>& p) {
  const Scalar one = Scalar::one();
  switch (g) {
    case 0: {  // x
      bool i = b & kBitX, j = b & kBitY;
      if (!j) {
        if (!i) return {{b | kBitX, one}};
        return {{b, one}, {b & ~kBitX, p[0]}};
      }
      // push x through y: yx = xy + y
      if (!i) return {{b | kBitX, one}, {b, one}};
      return {{b & ~kBitX, p[0]}};  // the two xy-terms cancel
    }
    case 1: {  // y (commutes with z and u)
      if (b & kBitY) return {{b & ~kBitY, p[1]}};
      return {{b | kBitY, one}};
    }
    case 2: {  // z
      bool k = b & kBitZ, l = b & kBitU;
      if (!l) {
        if (!k) return {{b | kBitZ, one}};
        return {{b, one}, {b & ~kBitZ, p[2]}};
      }
      // push z through u: uz = zu + u
      if (!k) return {{b | kBitZ, one}, {b, one}};
      return {{b & ~kBitZ, p[2]}};
    }
    case 3: {  // u
      if (b & kBitU) return {{b & ~kBitU, p[3]}};
      return {{b | kBitU, one}};
    }
  }
  return {};
}

}  // namespace

AlgebraCtx::AlgebraCtx(FieldCtx field, std::array<Scalar, 4> params)
    : field_(std::move(field)), params_(std::move(params)) {
  for (int a = 0; a < kDim; ++a) {
    for (int b = 0; b < kDim; ++b) {
      std::array<Scalar, kDim> acc{};
      acc[a] = Scalar::one();
      for (int g = 0; g < 4; ++g) {
        if (!(b & (1 << g))) continue;
        std::array<Scalar, kDim> next{};
        for (int t = 0; t < kDim; ++t) {
          if (acc[t].is_zero()) continue;
          for (const auto& [nb, c] : mul_basis_gen(t, g, params_))
            next[nb] += acc[t] * c;
        }
        acc = next;
      }
      for (int t = 0; t < kDim; ++t)
        if (!acc[t].is_zero()) table_[a][b].push_back({t, acc[t]});
    }
  }
}

AlgebraPtr AlgebraCtx::make(FieldCtx field, std::array<Scalar, 4> params) {
  return AlgebraPtr(new AlgebraCtx(std::move(field), std::move(params)));
}

Element AlgebraCtx::zero() const {
  return Element(shared_from_this(), std::array<Scalar, kDim>{});
}

Element AlgebraCtx::basis_element(int b) const {
  std::array<Scalar, kDim> c{};
  c[b] = Scalar::one();
  return Element(shared_from_this(), std::move(c));
}

Element AlgebraCtx::scalar_element(const Scalar& s) const {
  std::array<Scalar, kDim> c{};
  c[0] = s;
  return Element(shared_from_this(), std::move(c));
}

bool same_ctx(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->field().vars() != b->field().vars()) return false;
  for (int i = 0; i < 4; ++i)
    if (!(a->param(i) == b->param(i))) return false;
  return true;
}

void require_same_ctx(const Element& a, const Element& b) {
  if (!same_ctx(a.ctx(), b.ctx()))
    throw CtxMismatch("elements belong to different algebras");
}

bool Element::is_zero() const {
  for (const auto& s : c_)
    if (!s.is_zero()) return false;
  return true;
}

bool Element::is_scalar() const {
  for (int b = 1; b < kDim; ++b)
    if (!c_[b].is_zero()) return false;
  return true;
}

Element Element::from_coords(AlgebraPtr ctx, const Vec& v) {
  std::array<Scalar, kDim> c{};
  for (int b = 0; b < kDim; ++b) c[b] = v[b];
  return Element(std::move(ctx), std::move(c));
}

Element operator+(const Element& a, const Element& b) {
  require_same_ctx(a, b);
  std::array<Scalar, kDim> c{};
  for (int i = 0; i < kDim; ++i) c[i] = a.c_[i] + b.c_[i];
  return Element(a.ctx_ ? a.ctx_ : b.ctx_, std::move(c));
}

Element operator*(const Element& a, const Element& b) {
  require_same_ctx(a, b);
  const AlgebraCtx& ctx = *a.ctx_;
  std::array<Scalar, kDim> c{};
  for (int i = 0; i < kDim; ++i) {
    if (a.c_[i].is_zero()) continue;
    for (int j = 0; j < kDim; ++j) {
      if (b.c_[j].is_zero()) continue;
      Scalar f = a.c_[i] * b.c_[j];
      for (const auto& [t, s] : ctx.basis_product(i, j)) c[t] += f * s;
    }
  }
  return Element(a.ctx_, std::move(c));
}

Element operator*(const Scalar& s, const Element& e) {
  std::array<Scalar, kDim> c{};
  for (int i = 0; i < kDim; ++i) c[i] = s * e.c_[i];
  return Element(e.ctx_, std::move(c));
}

bool operator==(const Element& a, const Element& b) {
  for (int i = 0; i < kDim; ++i)
    if (!(a.c_[i] == b.c_[i])) return false;
  return true;
}

Mat left_mul_matrix(const Element& e) {
  const AlgebraCtx& ctx = *e.ctx();
  Mat m(kDim, Vec(kDim, Scalar::zero()));
  for (int b = 0; b < kDim; ++b) {
    for (int i = 0; i < kDim; ++i) {
      if (e.coeff(i).is_zero()) continue;
      for (const auto& [t, s] : ctx.basis_product(i, b))
        m[t][b] += e.coeff(i) * s;
    }
  }
  return m;
}

Mat right_mul_matrix(const Element& e) {
  const AlgebraCtx& ctx = *e.ctx();
  Mat m(kDim, Vec(kDim, Scalar::zero()));
  for (int b = 0; b < kDim; ++b) {
    for (int j = 0; j < kDim; ++j) {
      if (e.coeff(j).is_zero()) continue;
      for (const auto& [t, s] : ctx.basis_product(b, j))
        m[t][b] += e.coeff(j) * s;
    }
  }
  return m;
}

Element inverse(const Element& e) {
  if (e.is_zero()) throw ZeroElement("inverse of zero element");
  Vec rhs(kDim, Scalar::zero());
  rhs[0] = Scalar::one();
  AffineSolution sol = solve_affine(left_mul_matrix(e), rhs);
  if (!sol.consistent)
    throw ZeroDivisor("element has no inverse: algebra is not division here");
  Element f = Element::from_coords(e.ctx(), sol.particular);
  if (!((f * e) == e.ctx()->one()))
    throw ZeroDivisor("one-sided inverse only: algebra is not division here");
  return f;
}

ElementClass classify_element(const Element& e) {
  ElementClass out;
  if (e.is_scalar()) {
    out.kind = ElementClass::Kind::Scalar;
    out.witness = e.scalar_part();
    return out;
  }
  Element sq = e * e;
  Element as = sq + e;
  out.artin_schreier = as.is_scalar();
  out.square_central = sq.is_scalar();
  if (out.artin_schreier) {
    out.kind = ElementClass::Kind::ArtinSchreier;
    out.witness = as.scalar_part();
  } else if (out.square_central) {
    out.kind = ElementClass::Kind::SquareCentral;
    out.witness = sq.scalar_part();
  } else {
    out.kind = ElementClass::Kind::Neither;
  }
  return out;
}

Element bracket(const Element& a, const Element& b) { return a * b + b * a; }

bool commutes(const Element& a, const Element& b) {
  return bracket(a, b).is_zero();
}

std::vector<Element> centralizer(const std::vector<Element>& gens) {
  if (gens.empty()) throw UsageError("centralizer of an empty list");
  AlgebraPtr ctx = gens.front().ctx();
  Mat stacked;
  for (const auto& g : gens) {
    require_same_ctx(gens.front(), g);
    Mat l = left_mul_matrix(g), r = right_mul_matrix(g);
    for (int i = 0; i < kDim; ++i) {
      Vec row(kDim, Scalar::zero());
      for (int j = 0; j < kDim; ++j) row[j] = l[i][j] + r[i][j];
      stacked.push_back(std::move(row));
    }
  }
  std::vector<Element> out;
  for (const auto& v : kernel_basis(std::move(stacked)))
    out.push_back(Element::from_coords(ctx, v));
  return out;
}

std::vector<Element> subalgebra_closure(const std::vector<Element>& gens) {
  if (gens.empty()) throw UsageError("closure of an empty list");
  AlgebraPtr ctx = gens.front().ctx();
  SpanBuilder span(kDim);
  std::vector<Element> basis;
  auto try_add = [&](const Element& e) {
    if (span.add(e.coords())) {
      basis.push_back(e);
      return true;
    }
    return false;
  };
  try_add(ctx->one());
  for (const auto& g : gens) try_add(g);
  bool grew = true;
  while (grew) {
    grew = false;
    size_t n = basis.size();
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        if (try_add(basis[i] * basis[j])) grew = true;
      }
    }
  }
  // return the echelonized rows, not the raw products
  std::vector<Element> out;
  for (const auto& row : span.rows()) out.push_back(Element::from_coords(ctx, row));
  return out;
}

bool generates(const Element& e1, const Element& e2, const Element& e3,
               const Element& e4) {
  require_same_ctx(e1, e2);
  require_same_ctx(e1, e3);
  require_same_ctx(e1, e4);
  const Element* g[4] = {&e1, &e2, &e3, &e4};
  Mat m;
  for (int b = 0; b < kDim; ++b) {
    Element p = e1.ctx()->one();
    for (int k = 0; k < 4; ++k)
      if (b & (1 << k)) p = p * *g[k];
    m.push_back(p.coords());
  }
  return rank(std::move(m)) == kDim;
}

std::string basis_name(int b) {
  if (b == 0) return "1";
  static const char* letters = "xyzu";
  std::string s;
  for (int k = 0; k < 4; ++k) {
    if (b & (1 << k)) {
      if (!s.empty()) s += "*";
      s += letters[k];
    }
  }
  return s;
}

std::string to_string(const Element& e) {
  if (e.is_zero()) return "0";
  const FieldCtx& f = e.ctx()->field();
  std::ostringstream os;
  bool first = true;
  for (int b = 0; b < kDim; ++b) {
    if (e.coeff(b).is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    os << "(" << to_string(e.coeff(b), f) << ")*" << basis_name(b);
  }
  return os.str();
}

namespace {

int gen_index(const std::string& name) {
  if (name == "x") return 0;
  if (name == "y") return 1;
  if (name == "z") return 2;
  if (name == "u") return 3;
  return -1;
}

Element parse_element_factor(detail::Lexer& lex, const AlgebraPtr& ctx,
                             bool& is_scalar_factor) {
  using detail::Tok;
  const FieldCtx& f = ctx->field();
  const auto& t = lex.peek();
  is_scalar_factor = true;
  if (t.kind == Tok::Name) {
    int g = gen_index(t.text);
    if (g >= 0) {
      size_t pos = t.pos;
      lex.next();
      is_scalar_factor = false;
      Element e = ctx->gen(g);
      if (lex.peek().kind == Tok::Caret) {
        lex.next();
        if (lex.peek().kind != Tok::Int)
          throw ParseError("expected integer exponent", lex.peek().pos);
        auto tok = lex.next();
        int n = std::stoi(tok.text);
        if (n < 1) throw ParseError("exponent must be positive", pos);
        Element r = ctx->one();
        for (int i = 0; i < n; ++i) r = r * e;
        return r;
      }
      return e;
    }
  }
  // otherwise: a scalar factor (name, constant, or parenthesized expression)
  Scalar s = [&] {
    detail::Lexer* l = &lex;
    // reuse the scalar factor grammar: atom with optional exponent
    if (l->peek().kind == Tok::LParen) {
      l->next();
      Scalar inner = detail::parse_scalar_expr(*l, f);
      l->expect(Tok::RParen, "')'");
      if (l->peek().kind == Tok::Caret) {
        l->next();
        if (l->peek().kind != Tok::Int)
          throw ParseError("expected integer exponent", l->peek().pos);
        int n = std::stoi(l->next().text);
        Scalar r = Scalar::one();
        for (int i = 0; i < n; ++i) r *= inner;
        return r;
      }
      return inner;
    }
    if (l->peek().kind == Tok::Name) {
      auto tok = l->next();
      int idx = f.index_of(tok.text);
      if (idx < 0)
        throw ParseError("unknown name '" + tok.text + "'", tok.pos);
      Scalar v = Scalar::var(idx);
      if (l->peek().kind == Tok::Caret) {
        l->next();
        if (l->peek().kind != Tok::Int)
          throw ParseError("expected integer exponent", l->peek().pos);
        int n = std::stoi(l->next().text);
        Scalar r = Scalar::one();
        for (int i = 0; i < n; ++i) r *= v;
        return r;
      }
      return v;
    }
    if (l->peek().kind == Tok::Int) {
      auto tok = l->next();
      if (tok.text == "0") return Scalar::zero();
      if (tok.text == "1") return Scalar::one();
      throw ParseError("only the constants 0 and 1 are allowed", tok.pos);
    }
    throw ParseError("expected element term", l->peek().pos);
  }();
  return ctx->scalar_element(s);
}

Element parse_element_term(detail::Lexer& lex, const AlgebraPtr& ctx) {
  using detail::Tok;
  bool scalar_factor = true;
  Element r = parse_element_factor(lex, ctx, scalar_factor);
  while (lex.peek().kind == Tok::Star || lex.peek().kind == Tok::Slash) {
    bool div = lex.next().kind == Tok::Slash;
    size_t pos = lex.peek().pos;
    bool rhs_scalar = true;
    Element f = parse_element_factor(lex, ctx, rhs_scalar);
    if (div) {
      if (!rhs_scalar || !f.is_scalar())
        throw ParseError("division by a non-scalar factor", pos);
      if (f.scalar_part().is_zero())
        throw ParseError("division by zero", pos);
      r = f.scalar_part().inverse() * r;
    } else {
      r = r * f;
    }
  }
  return r;
}

}  // namespace

std::optional<Vec> express_in_span(const std::vector<Element>& cols,
                                   const Element& e) {
  Mat m(kDim, Vec(cols.size(), Scalar::zero()));
  for (size_t j = 0; j < cols.size(); ++j) {
    Vec v = cols[j].coords();
    for (int i = 0; i < kDim; ++i) m[i][j] = v[i];
  }
  AffineSolution sol = solve_affine(std::move(m), e.coords());
  if (!sol.consistent) return std::nullopt;
  return sol.particular;
}

Element parse_element(const std::string& text, const AlgebraPtr& ctx) {
  detail::Lexer lex(text);
  Element r = parse_element_term(lex, ctx);
  while (lex.peek().kind == detail::Tok::Plus) {
    lex.next();
    r += parse_element_term(lex, ctx);
  }
  if (lex.peek().kind != detail::Tok::End)
    throw ParseError("trailing input", lex.peek().pos);
  return r;
}

}  // namespace biq
