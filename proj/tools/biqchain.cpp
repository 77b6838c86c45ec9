// Command-line front end: load quadruple and chain certificate files, run
// construction and verification operations, and emit certificates with
// deterministic output and exit codes (0 success / all-pass, 1 verification
// failure, 2 usage or parse error, 3 construction failure).

#include <array>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "biq/chain.hpp"
#include "biq/errors.hpp"
#include "biq/io.hpp"
#include "biq/steps.hpp"

using namespace biq;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitConstruction = 3;

struct Options {
  std::string field;   // comma-separated variable names
  std::string params;  // comma-separated scalar expressions
  std::string quad, quad2, chain, out, step;
  uint64_t seed = 0;
  std::string command;
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (true) {
    size_t c = s.find(',', pos);
    std::string part = s.substr(pos, c - pos);
    size_t b = part.find_first_not_of(" \t");
    size_t e = part.find_last_not_of(" \t");
    out.push_back(b == std::string::npos ? "" : part.substr(b, e - b + 1));
    if (c == std::string::npos) return out;
    pos = c + 1;
  }
}

// Algebra requested by --field/--params, or the generic biquaternion
// algebra over GF(2)(alpha,beta,gamma,delta) when neither flag is given.
AlgebraPtr flag_algebra(const Options& opt) {
  if (opt.field.empty() && opt.params.empty())
    return make_algebra({"alpha", "beta", "gamma", "delta"},
                        {"alpha", "beta", "gamma", "delta"});
  std::vector<std::string> vars = opt.field.empty()
                                      ? std::vector<std::string>{"alpha", "beta",
                                                                 "gamma", "delta"}
                                      : split_commas(opt.field);
  std::vector<std::string> exprs =
      opt.params.empty()
          ? std::vector<std::string>{"alpha", "beta", "gamma", "delta"}
          : split_commas(opt.params);
  if (exprs.size() != 4)
    throw UsageError("--params requires exactly four expressions");
  return make_algebra(vars, {exprs[0], exprs[1], exprs[2], exprs[3]});
}

// Loaded file headers must agree with explicit --field/--params flags.
void check_flags(const Options& opt, const AlgebraPtr& loaded) {
  if (opt.field.empty() && opt.params.empty()) return;
  require_matching_headers(flag_algebra(opt), loaded);
}

Quadruple load_quad_checked(const Options& opt, const std::string& path) {
  Quadruple q = load_quadruple(path);
  check_flags(opt, q.ctx());
  return q;
}

void print_report(const ChainReport& rep, const Chain& c) {
  if (!rep.start_valid) std::cout << "start: INVALID\n";
  for (const LinkReport& lr : rep.links) {
    std::cout << "link " << (lr.index + 1) << " "
              << format_step(c.links[lr.index].claimed,
                             c.start.ctx()->field())
              << ": " << (lr.pass ? "ok" : "FAIL") << "\n";
    for (const std::string& issue : lr.issues)
      std::cout << "  " << issue << "\n";
  }
}

// Shared tail for the chain-producing commands: verify, report, write the
// certificate only on all-pass, and map the verdict to an exit code.
int finish_chain(const Options& opt, const Chain& c) {
  ChainReport rep = verify_chain(c);
  std::cout << "links: " << c.links.size() << "\n";
  print_report(rep, c);
  if (!rep.ok()) {
    std::cout << "verification: FAILED\n";
    return kExitVerifyFail;
  }
  std::cout << "verification: all-pass\n";
  if (!opt.out.empty()) save_chain(opt.out, c);
  return kExitOk;
}

int cmd_validate(const Options& opt) {
  Quadruple q = load_quad_checked(opt, opt.quad);
  ValidationReport rep = validate(q);
  if (rep.ok()) {
    std::cout << "PASS: R1-R11 hold\n";
    return kExitOk;
  }
  for (const Violation& v : rep.violations)
    std::cout << "FAIL " << v.relation << ": " << v.detail << "\n";
  return kExitVerifyFail;
}

int cmd_symbols(const Options& opt) {
  Quadruple q = load_quad_checked(opt, opt.quad);
  SymbolTuple t = symbols(q);
  const FieldCtx& f = q.ctx()->field();
  std::cout << "(" << to_string(t.s[0], f) << ", " << to_string(t.s[1], f)
            << ", " << to_string(t.s[2], f) << ", " << to_string(t.s[3], f)
            << ")\n";
  return kExitOk;
}

int cmd_apply(const Options& opt) {
  Quadruple q = load_quad_checked(opt, opt.quad);
  StepKind k = parse_step(opt.step, q.ctx()->field());
  Quadruple r = q;
  switch (k.tag) {
    case StepKind::Tag::OmegaS:
      r = apply_omega_s(q, k.a, k.b);
      break;
    case StepKind::Tag::OmegaI:
      r = apply_omega_i(q, k.a);
      break;
    case StepKind::Tag::OmegaC:
      r = apply_omega_c(q, k.b);
      break;
    case StepKind::Tag::L1:
      if (k.pair == 0)
        throw UsageError(
            "apply needs a parametrized LAMBDA1 literal "
            "(pair=... slot=... a=... b=...)");
      r = apply_lambda1(q, k.pair,
                        k.slot == 1 ? Lambda1Slot::Sep : Lambda1Slot::Insep,
                        k.a, k.b);
      break;
    default:
      throw UsageError("step literal '" + opt.step +
                       "' carries no parameters and cannot be applied");
  }
  std::cout << format_quadruple(r);
  if (!opt.out.empty()) save_quadruple(opt.out, r);
  return kExitOk;
}

int cmd_classify(const Options& opt) {
  Quadruple q = load_quad_checked(opt, opt.quad);
  Quadruple q2 = load_quad_checked(opt, opt.quad2);
  require_matching_headers(q.ctx(), q2.ctx());
  std::vector<StepKind> kinds = classify_step(q, q2);
  for (const StepKind& k : kinds)
    std::cout << format_step(k, q.ctx()->field()) << "\n";
  if (kinds.empty()) std::cout << "(no step kind applies)\n";
  return kExitOk;
}

int run(const Options& opt) {
  if (opt.command == "validate") return cmd_validate(opt);
  if (opt.command == "symbols") return cmd_symbols(opt);
  if (opt.command == "apply") return cmd_apply(opt);
  if (opt.command == "classify") return cmd_classify(opt);

  if (opt.command == "verify-chain") {
    Chain c = load_chain(opt.chain);
    check_flags(opt, c.start.ctx());
    if (!opt.quad.empty()) {
      Quadruple q = load_quad_checked(opt, opt.quad);
      require_matching_headers(q.ctx(), c.start.ctx());
      if (!(q == c.start)) {
        std::cout << "start quadruple does not match --quad\n";
        return kExitVerifyFail;
      }
    }
    ChainReport rep = verify_chain(c);
    std::cout << "links: " << c.links.size() << "\n";
    print_report(rep, c);
    std::cout << (rep.ok() ? "verification: all-pass\n"
                           : "verification: FAILED\n");
    return rep.ok() ? kExitOk : kExitVerifyFail;
  }

  // the chain-producing transition commands
  Quadruple q = load_quad_checked(opt, opt.quad);
  Quadruple q2 = load_quad_checked(opt, opt.quad2);
  require_matching_headers(q.ctx(), q2.ctx());
  if (opt.command == "connect") return finish_chain(opt, connect(q, q2));
  if (opt.command == "decompose")
    return finish_chain(opt, decompose_lambda3(q, q2));
  if (opt.command == "replace")
    return finish_chain(opt, replace_lambda2(q, q2));
  if (opt.command == "pipeline")
    return finish_chain(opt, full_pipeline(q, q2));
  throw UsageError("unknown command: " + opt.command);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact chain-lemma toolkit for biquaternion algebras"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--field", opt.field,
                    "comma-separated field variable names");
    sub->add_option("--params", opt.params,
                    "comma-separated algebra parameters (four expressions)");
    sub->add_option("--seed", opt.seed, "deterministic seed (default 0)");
    sub->parse_complete_callback([&opt, sub] { opt.command = sub->get_name(); });
    return sub;
  };
  auto quad_opt = [&](CLI::App* sub, bool required = true) {
    auto* o = sub->add_option("--quad", opt.quad, "quadruple file");
    if (required) o->required();
  };
  auto quad2_opt = [&](CLI::App* sub) {
    sub->add_option("--quad2", opt.quad2, "target quadruple file")->required();
  };
  auto out_opt = [&](CLI::App* sub) {
    sub->add_option("--out", opt.out, "output file path");
  };

  quad_opt(add_common(app.add_subcommand("validate", "check R1-R11")));
  quad_opt(add_common(app.add_subcommand("symbols", "print the symbol tuple")));
  {
    auto* sub = add_common(app.add_subcommand("apply", "apply a step literal"));
    quad_opt(sub);
    sub->add_option("--step", opt.step, "step literal")->required();
    out_opt(sub);
  }
  {
    auto* sub = add_common(
        app.add_subcommand("classify", "step kinds of a transition"));
    quad_opt(sub);
    quad2_opt(sub);
  }
  for (const char* name : {"connect", "decompose", "replace", "pipeline"}) {
    auto* sub = add_common(app.add_subcommand(
        name, std::string(name) + " two quadruples into a verified chain"));
    quad_opt(sub);
    quad2_opt(sub);
    out_opt(sub);
  }
  {
    auto* sub = add_common(
        app.add_subcommand("verify-chain", "re-verify a chain certificate"));
    sub->add_option("--chain", opt.chain, "chain certificate file")->required();
    quad_opt(sub, /*required=*/false);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int r = app.exit(e);
    return r == 0 ? kExitOk : kExitUsage;
  }

  try {
    return run(opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CtxMismatch& e) {
    std::cerr << "header mismatch: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidQuadruple& e) {
    std::cerr << "invalid quadruple: " << e.what() << "\n";
    return kExitVerifyFail;
  } catch (const std::exception& e) {
    // construction-time failures: ZeroDivisor, ConstructionFailure,
    // PreconditionViolation, NotDecomposed, DegenerateParams, ...
    std::cerr << "construction failure: " << e.what() << "\n";
    return kExitConstruction;
  }
}
