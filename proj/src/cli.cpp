#include "mmpx/cli.hpp"

#include <chrono>
#include <optional>
#include <ostream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "mmpx/bench.hpp"
#include "mmpx/eigensolver.hpp"
#include "mmpx/errors.hpp"
#include "mmpx/io.hpp"
#include "mmpx/latin.hpp"
#include "mmpx/oracle.hpp"
#include "mmpx/report.hpp"

namespace mmpx::cli {
namespace {

struct GenArgs {
  int n = 0;
  std::optional<std::uint64_t> seed;
  std::string mask_a = "none";
  std::string mask_b = "none";
  std::string out;
};

struct SolveArgs {
  std::string system;
  std::string algorithm = "latin";
  std::string lambda;
  std::string x0 = "zeros";
  std::size_t max_iter = default_max_iter();
  std::string trace;
};

struct VerifyArgs {
  std::string system;
  std::string lambda;
  std::string vector;
  bool oracle = false;
};

struct BenchArgs {
  std::vector<int> orders;
  std::uint64_t seeds = 10;
  std::vector<std::string> variants{"case4"};
  std::size_t max_iter = default_max_iter();
  std::string start = "zeros";
  bool reference = false;
  unsigned jobs = 1;
  std::string out;
};

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& err) {
  const MaskSpec mask_a = MaskSpec::parse(args.mask_a);
  const MaskSpec mask_b = MaskSpec::parse(args.mask_b);
  const LatinSquare la = args.seed ? seeded_square_a(args.n, *args.seed) : cyclic_latin(args.n);
  const LatinSquare lb = args.seed ? seeded_square_b(args.n, *args.seed) : cyclic_latin(args.n);
  const auto sys = build_system(la, lb, mask_a, mask_b);
  const std::string text = io::format_system(sys);
  const std::string lambda_line = "lambda " + format_rational(latin_eigenvalue(sys)) + "\n";
  if (args.out.empty()) {
    out << text;
    err << lambda_line;
  } else {
    io::write_file(args.out, text);
    out << lambda_line;
  }
  return kOk;
}

StateVector load_start(const BipartiteSystem<Rational>& sys, const std::string& spec) {
  if (spec == "zeros") return sys.zeros();
  const std::string path = spec.rfind("file:", 0) == 0 ? spec.substr(5) : spec;
  return sys.state_from_stacked(io::parse_state(io::read_file(path)));
}

int cmd_solve(const SolveArgs& args, std::ostream& out) {
  const auto sys = io::parse_system(io::read_file(args.system));
  const Algorithm algorithm = parse_algorithm(args.algorithm);
  if (algorithm == Algorithm::Fixed && args.lambda.empty()) throw InvalidArgument("--algorithm fixed requires --lambda");
  if (algorithm != Algorithm::Fixed && !args.lambda.empty())
    throw InvalidArgument("--lambda is only meaningful with --algorithm fixed");
  const StateVector x0 = load_start(sys, args.x0);

  const auto t0 = std::chrono::steady_clock::now();
  SolveResult<Rational> result = [&] {
    switch (algorithm) {
      case Algorithm::Latin:
        return solve_latin(sys, x0, args.max_iter);
      case Algorithm::Power:
        return solve_power(sys, x0, args.max_iter);
      case Algorithm::Fixed:
        break;
    }
    return solve_fixedpoint(sys, io::parse_rational(args.lambda), x0, args.max_iter);
  }();
  const auto elapsed = std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - t0);

  if (!args.trace.empty()) io::write_file(args.trace, io::format_trace(result.trace));
  out << format_report(RunReport::from(algorithm, result, elapsed));
  return kOk;
}

int cmd_verify(const VerifyArgs& args, std::ostream& out, std::ostream& err) {
  const auto sys = io::parse_system(io::read_file(args.system));
  const Rational lambda = io::parse_rational(args.lambda);
  const StateVector v = sys.state_from_stacked(io::parse_state(io::read_file(args.vector)));
  const auto check = verify_eigenpair(sys, EigenPair<Rational>{lambda, v});

  out << (check.valid ? "valid" : "invalid") << '\n' << "residual";
  for (Eigen::Index i = 0; i < check.residual.size(); ++i) out << ' ' << to_string(check.residual(i));
  out << '\n';

  if (args.oracle) {
    const TropicalVector reference = oracle::naive_residual(sys.a(), sys.b(), lambda, v);
    const bool agrees = reference == check.residual;
    out << "oracle " << (agrees ? "agrees" : "disagrees") << '\n';
    if (!agrees) {
      err << "error: oracle residual differs from the library residual\n";
      return kUsage;
    }
  }
  return check.valid ? kOk : kInvalid;
}

int cmd_bench(const BenchArgs& args, std::ostream& out) {
  bench::Config config;
  config.orders = args.orders;
  config.seeds = args.seeds;
  config.variants.clear();
  for (const auto& v : args.variants) config.variants.push_back(parse_variant(v));
  config.max_iter = args.max_iter;
  if (args.start == "zeros") {
    config.start = bench::StartKind::Zeros;
  } else if (args.start == "random") {
    config.start = bench::StartKind::Random;
  } else {
    throw InvalidArgument("--x0 must be zeros or random");
  }
  config.include_reference = args.reference;
  config.jobs = args.jobs;
  for (int n : config.orders)
    if (n < 1) throw InvalidOrder("bench: order must be at least 1");

  const std::string csv = bench::to_csv(bench::run(config));
  if (args.out.empty()) {
    out << csv;
  } else {
    io::write_file(args.out, csv);
  }
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Eigenpairs of bipartite min-max-plus systems", "mmpx"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a Latin-square system file");
  gen_cmd->add_option("--n", gen.n, "Order of the Latin squares")->required()->check(CLI::PositiveNumber);
  gen_cmd->add_option("--seed", gen.seed, "Draw random squares from this seed (default: cyclic squares)");
  gen_cmd->add_option("--maskA", gen.mask_a, "none | eps[:k]")->capture_default_str();
  gen_cmd->add_option("--maskB", gen.mask_b, "none | tau[:k]")->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "Output path (default: standard output)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Compute an eigenpair");
  solve_cmd->add_option("system", solve.system, "System file")->required();
  solve_cmd->add_option("--algorithm", solve.algorithm, "latin | power | fixed")->capture_default_str();
  solve_cmd->add_option("--lambda", solve.lambda, "Eigenvalue for --algorithm fixed");
  solve_cmd->add_option("--x0", solve.x0, "zeros | <state file> | file:<state file>")->capture_default_str();
  solve_cmd->add_option("--max-iter", solve.max_iter, "Application cap per phase")->capture_default_str()->check(CLI::PositiveNumber);
  solve_cmd->add_option("--trace", solve.trace, "Write the iterate trace here");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check M(v) = lambda (x) v exactly");
  verify_cmd->add_option("system", verify.system, "System file")->required();
  verify_cmd->add_option("--lambda", verify.lambda, "Eigenvalue")->required();
  verify_cmd->add_option("--vector", verify.vector, "State file holding v")->required();
  verify_cmd->add_flag("--oracle", verify.oracle, "Cross-check with the reference implementation");

  BenchArgs bench_args;
  auto* bench_cmd = app.add_subcommand("bench", "Compare the latin and power solvers");
  bench_cmd->add_option("--n", bench_args.orders, "Comma-separated orders")->required()->delimiter(',');
  bench_cmd->add_option("--seeds", bench_args.seeds, "Number of seeds, 0..k-1")->capture_default_str();
  bench_cmd->add_option("--variants", bench_args.variants, "Comma-separated case1..case4")->delimiter(',')->capture_default_str();
  bench_cmd->add_option("--max-iter", bench_args.max_iter, "Application cap per phase")->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--x0", bench_args.start, "zeros | random")->capture_default_str();
  bench_cmd->add_flag("--reference", bench_args.reference, "Append the order-4 reference instance");
  bench_cmd->add_option("--jobs", bench_args.jobs, "Worker threads")->capture_default_str()->check(CLI::PositiveNumber);
  bench_cmd->add_option("--out", bench_args.out, "CSV path (default: standard output)");

  std::vector<const char*> argv{"mmpx"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (gen_cmd->parsed()) return cmd_gen(gen, out, err);
    if (solve_cmd->parsed()) return cmd_solve(solve, out);
    if (verify_cmd->parsed()) return cmd_verify(verify, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench_args, out);
  } catch (const NonConvergence& e) {
    err << "error: " << e.what() << '\n';
    return kNonConvergence;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace mmpx::cli
