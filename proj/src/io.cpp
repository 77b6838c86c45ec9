#include "biq/io.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "biq/errors.hpp"
#include "biq/parser.hpp"

namespace biq {

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string part;
  while (std::getline(is, part, sep)) out.push_back(trim(part));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

bool valid_name(const std::string& n) {
  if (n.empty() || !std::islower(static_cast<unsigned char>(n[0])))
    return false;
  for (char c : n)
    if (!std::islower(static_cast<unsigned char>(c)) &&
        !std::isdigit(static_cast<unsigned char>(c)))
      return false;
  return true;
}

// Meaningful (non-blank, non-comment) lines with their 1-based numbers.
class LineReader {
 public:
  explicit LineReader(const std::string& text) {
    std::istringstream is(text);
    std::string raw;
    int n = 0;
    while (std::getline(is, raw)) {
      ++n;
      std::string t = trim(raw);
      if (t.empty() || t[0] == '#') continue;
      lines_.push_back({n, std::move(t)});
    }
    last_line_ = n;
  }

  bool done() const { return i_ == lines_.size(); }

  std::pair<int, std::string> next(const char* what) {
    if (done()) fail(last_line_, std::string("unexpected end of file, expected ") + what);
    return lines_[i_++];
  }

 private:
  std::vector<std::pair<int, std::string>> lines_;
  size_t i_ = 0;
  int last_line_ = 0;
};

// "field v1, v2, ..." then "params e1, e2, e3, e4".
AlgebraPtr parse_header(LineReader& r) {
  auto [fline, ftext] = r.next("field header");
  if (ftext.rfind("field", 0) != 0 ||
      (ftext.size() > 5 && !std::isspace(static_cast<unsigned char>(ftext[5]))))
    fail(fline, "expected 'field <names>' header");
  std::vector<std::string> vars;
  std::string rest = trim(ftext.substr(5));
  if (!rest.empty()) {
    for (const std::string& v : split(rest, ',')) {
      if (!valid_name(v)) fail(fline, "invalid field variable name '" + v + "'");
      vars.push_back(v);
    }
  }
  FieldCtx field(vars);

  auto [pline, ptext] = r.next("params header");
  if (ptext.rfind("params", 0) != 0 ||
      (ptext.size() > 6 && !std::isspace(static_cast<unsigned char>(ptext[6]))))
    fail(pline, "expected 'params <e1>, <e2>, <e3>, <e4>' header");
  std::vector<std::string> exprs = split(trim(ptext.substr(6)), ',');
  if (exprs.size() != 4)
    fail(pline, "expected exactly four parameter expressions, got " +
                    std::to_string(exprs.size()));
  std::array<Scalar, 4> params;
  for (int i = 0; i < 4; ++i) {
    try {
      params[i] = parse_scalar(exprs[i], field);
    } catch (const ParseError& e) {
      fail(pline, std::string("parameter ") + std::to_string(i + 1) + ": " +
                      e.what());
    }
  }
  return AlgebraCtx::make(std::move(field), std::move(params));
}

// "x = <element literal>" with the expected generator letter.
Element parse_gen_line(LineReader& r, const AlgebraPtr& ctx, char letter) {
  auto [line, text] = r.next("generator line");
  size_t eq = text.find('=');
  std::string lhs = eq == std::string::npos ? text : trim(text.substr(0, eq));
  if (eq == std::string::npos || lhs != std::string(1, letter))
    fail(line, std::string("expected '") + letter + " = <element>'");
  try {
    return parse_element(text.substr(eq + 1), ctx);
  } catch (const ParseError& e) {
    fail(line, e.what());
  } catch (const UsageError& e) {
    fail(line, e.what());
  }
}

Quadruple parse_quadruple_body(LineReader& r, const AlgebraPtr& ctx) {
  Element x = parse_gen_line(r, ctx, 'x');
  Element y = parse_gen_line(r, ctx, 'y');
  Element z = parse_gen_line(r, ctx, 'z');
  Element u = parse_gen_line(r, ctx, 'u');
  return Quadruple(std::move(x), std::move(y), std::move(z), std::move(u));
}

std::string header_text(const AlgebraPtr& ctx) {
  const FieldCtx& f = ctx->field();
  std::string out = "field";
  for (int i = 0; i < f.nvars(); ++i)
    out += (i ? ", " : " ") + f.name(i);
  out += "\nparams";
  for (int i = 0; i < 4; ++i)
    out += (i ? ", " : " ") + to_string(ctx->param(i), f);
  return out + "\n";
}

std::string body_text(const Quadruple& q) {
  const char* letters = "xyzu";
  std::string out;
  for (int i = 0; i < 4; ++i)
    out += std::string(1, letters[i]) + " = " + to_string(q.g[i]) + "\n";
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write file: " + path);
  out << content;
  if (!out) throw UsageError("write failed: " + path);
}

}  // namespace

AlgebraPtr make_algebra(const std::vector<std::string>& field_vars,
                        const std::array<std::string, 4>& param_exprs) {
  for (const std::string& v : field_vars)
    if (!valid_name(v))
      throw ParseError("invalid field variable name '" + v + "'");
  FieldCtx field(field_vars);
  std::array<Scalar, 4> params;
  for (int i = 0; i < 4; ++i) params[i] = parse_scalar(param_exprs[i], field);
  return AlgebraCtx::make(std::move(field), std::move(params));
}

std::string format_step(const StepKind& k, const FieldCtx& field) {
  using Tag = StepKind::Tag;
  switch (k.tag) {
    case Tag::OmegaS:
      return "OMEGA_S a=" + to_string(k.a, field) + " b=" +
             to_string(k.b, field);
    case Tag::OmegaI:
      return "OMEGA_I a=" + to_string(k.a, field);
    case Tag::OmegaC:
      return "OMEGA_C b=" + to_string(k.b, field);
    case Tag::L1:
      if (k.pair == 0) return "LAMBDA1";
      return "LAMBDA1 pair=" + std::to_string(k.pair) +
             " slot=" + (k.slot == 1 ? "sep" : "insep") +
             " a=" + to_string(k.a, field) + " b=" + to_string(k.b, field);
    case Tag::L2:
      return "LAMBDA2";
    case Tag::L3:
      return "LAMBDA3";
    case Tag::Pi:
      return "PI";
  }
  throw UsageError("unknown step tag");
}

StepKind parse_step(const std::string& literal, const FieldCtx& field) {
  std::istringstream is(literal);
  std::string keyword;
  if (!(is >> keyword)) throw ParseError("empty step literal");

  // key=value pairs; a token without '=' continues the previous value,
  // so expressions containing spaces survive.
  std::map<std::string, std::string> kv;
  std::string tok, cur_key;
  while (is >> tok) {
    size_t eq = tok.find('=');
    if (eq != std::string::npos && valid_name(tok.substr(0, eq))) {
      cur_key = tok.substr(0, eq);
      if (kv.count(cur_key))
        throw ParseError("duplicate step parameter '" + cur_key + "'");
      kv[cur_key] = tok.substr(eq + 1);
    } else {
      if (cur_key.empty())
        throw ParseError("unexpected token '" + tok + "' in step literal");
      kv[cur_key] += tok;
    }
  }

  auto need = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw ParseError("step " + keyword + " requires parameter '" + key +
                       "'");
    return it->second;
  };
  auto scalar = [&](const char* key) { return parse_scalar(need(key), field); };
  auto expect_keys = [&](std::initializer_list<const char*> keys) {
    if (kv.size() != keys.size())
      throw ParseError("step " + keyword + " has unexpected parameters");
  };

  if (keyword == "OMEGA_S") {
    expect_keys({"a", "b"});
    return StepKind::omega_s(scalar("a"), scalar("b"));
  }
  if (keyword == "OMEGA_I") {
    expect_keys({"a"});
    return StepKind::omega_i(scalar("a"));
  }
  if (keyword == "OMEGA_C") {
    expect_keys({"b"});
    return StepKind::omega_c(scalar("b"));
  }
  if (keyword == "LAMBDA1") {
    if (kv.empty()) return StepKind::simple(StepKind::Tag::L1);
    expect_keys({"pair", "slot", "a", "b"});
    std::string p = need("pair"), s = need("slot");
    if (p != "1" && p != "2")
      throw ParseError("LAMBDA1 pair must be 1 or 2, got '" + p + "'");
    if (s != "sep" && s != "insep")
      throw ParseError("LAMBDA1 slot must be sep or insep, got '" + s + "'");
    return StepKind::lambda1(p == "1" ? 1 : 2, s == "sep" ? 1 : 2,
                             scalar("a"), scalar("b"));
  }
  if (keyword == "LAMBDA2" || keyword == "LAMBDA3" || keyword == "PI") {
    expect_keys({});
    return StepKind::simple(keyword == "LAMBDA2" ? StepKind::Tag::L2
                            : keyword == "LAMBDA3" ? StepKind::Tag::L3
                                                   : StepKind::Tag::Pi);
  }
  throw ParseError("unknown step keyword '" + keyword + "'");
}

std::string format_quadruple(const Quadruple& q) {
  return header_text(q.ctx()) + body_text(q);
}

std::string format_chain(const Chain& c) {
  const FieldCtx& f = c.start.ctx()->field();
  std::string out = header_text(c.start.ctx()) + body_text(c.start);
  for (const ChainLink& l : c.links)
    out += "step " + format_step(l.claimed, f) + "\n" + body_text(l.target);
  return out;
}

Quadruple parse_quadruple_text(const std::string& text) {
  LineReader r(text);
  AlgebraPtr ctx = parse_header(r);
  Quadruple q = parse_quadruple_body(r, ctx);
  if (!r.done()) {
    auto [line, extra] = r.next("end of file");
    fail(line, "unexpected content after quadruple: '" + extra + "'");
  }
  return q;
}

Chain parse_chain_text(const std::string& text) {
  LineReader r(text);
  AlgebraPtr ctx = parse_header(r);
  Chain c{parse_quadruple_body(r, ctx), {}};
  while (!r.done()) {
    auto [line, text2] = r.next("step line");
    if (text2.rfind("step", 0) != 0 || text2.size() < 5 ||
        !std::isspace(static_cast<unsigned char>(text2[4])))
      fail(line, "expected 'step <literal>'");
    StepKind k = StepKind::simple(StepKind::Tag::L1);
    try {
      k = parse_step(trim(text2.substr(5)), ctx->field());
    } catch (const ParseError& e) {
      fail(line, e.what());
    }
    c.links.push_back({std::move(k), parse_quadruple_body(r, ctx)});
  }
  return c;
}

Quadruple load_quadruple(const std::string& path) {
  return parse_quadruple_text(read_file(path));
}

Chain load_chain(const std::string& path) {
  return parse_chain_text(read_file(path));
}

void save_quadruple(const std::string& path, const Quadruple& q) {
  write_file(path, format_quadruple(q));
}

void save_chain(const std::string& path, const Chain& c) {
  write_file(path, format_chain(c));
}

void require_matching_headers(const AlgebraPtr& a, const AlgebraPtr& b) {
  if (!same_ctx(a, b))
    throw CtxMismatch(
        "field variables or algebra parameters differ between files");
}

}  // namespace biq
