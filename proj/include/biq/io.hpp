#ifndef BIQ_IO_HPP
#define BIQ_IO_HPP

#include <array>
#include <string>
#include <vector>

#include "biq/chain.hpp"
#include "biq/quadruple.hpp"

namespace biq {

// Text formats. Blank lines and lines starting with '#' are ignored; parse
// failures throw ParseError with a "line N:" prefix.
//
// Quadruple file:
//   field alpha, beta, gamma, delta
//   params alpha, beta, gamma, delta
//   x = (1)*x
//   y = (1)*y
//   z = (1)*z
//   u = (1)*u
//
// Chain certificate file: the same two header lines, the four generator
// lines of the start quadruple, then one block per link consisting of a
// `step <literal>` line and the four generator lines of the full target
// quadruple. Step literals:
//   OMEGA_S a=<expr> b=<expr>
//   OMEGA_I a=<expr>
//   OMEGA_C b=<expr>
//   LAMBDA1 pair=<1|2> slot=<sep|insep> a=<expr> b=<expr>
//   LAMBDA1 | LAMBDA2 | LAMBDA3 | PI

AlgebraPtr make_algebra(const std::vector<std::string>& field_vars,
                        const std::array<std::string, 4>& param_exprs);

std::string format_step(const StepKind& k, const FieldCtx& field);
StepKind parse_step(const std::string& literal, const FieldCtx& field);

std::string format_quadruple(const Quadruple& q);
std::string format_chain(const Chain& c);

Quadruple parse_quadruple_text(const std::string& text);
Chain parse_chain_text(const std::string& text);

Quadruple load_quadruple(const std::string& path);
Chain load_chain(const std::string& path);
void save_quadruple(const std::string& path, const Quadruple& q);
void save_chain(const std::string& path, const Chain& c);

// Throws CtxMismatch when the two objects' headers disagree.
void require_matching_headers(const AlgebraPtr& a, const AlgebraPtr& b);

}  // namespace biq

#endif
