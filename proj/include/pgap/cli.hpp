#pragma once

#include <cstdlib>
#include <iostream>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pgap/amplify.hpp"
#include "pgap/errors.hpp"
#include "pgap/game.hpp"
#include "pgap/io.hpp"
#include "pgap/models.hpp"
#include "pgap/sparsify.hpp"
#include "pgap/spectra.hpp"

namespace pgap::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kInputError = 2, kCapacityError = 3, kVerificationFailure = 4 };

enum class Format { json, csv };

/// Everything that determines a run's output. Embedded in every report.
struct RunConfig {
  std::string subcommand;
  std::string ham_path;
  std::string state = "top-eig";
  std::string out_path;
  Format format = Format::json;
  std::uint64_t seed = 0;

  // build
  std::string kind = "hadamard_power";
  std::size_t n = 1;
  std::size_t locality = 2;
  std::size_t terms = 1;

  // amplify / verify-lemma
  int k = 1;
  std::string p = "inf";
  double q = 1.0;
  bool assume_bounded = false;

  // game
  std::uint64_t shots = 1000;
  unsigned workers = 1;

  // sparsify
  std::uint64_t m = 1;
  double delta = 0.5;
  std::uint64_t trials = 1;

  // numerics
  double tol = 1e-8;
  std::size_t max_iters = 100000;
  bool iterative = false;
  std::size_t dense_limit = kDefaultDenseLimit;
  std::size_t term_cap = kDefaultTermCap;
  double prune_tolerance = kDefaultPruneTolerance;
};

inline io::json to_json(const RunConfig& c) {
  io::json j = {{"subcommand", c.subcommand}};
  const auto& s = c.subcommand;
  if (!c.ham_path.empty()) j["ham"] = c.ham_path;
  if (s == "build") {
    j["kind"] = c.kind;
    j["n"] = c.n;
    if (c.kind == "random_local") {
      j["locality"] = c.locality;
      j["terms"] = c.terms;
      j["seed"] = c.seed;
    }
  }
  if (s == "amplify" || s == "verify-lemma") {
    j["k"] = c.k;
    j["assume_bounded"] = c.assume_bounded;
  }
  if (s == "verify-lemma") {
    j["p"] = c.p;
    j["q"] = c.q;
  }
  if (s == "game") {
    j["state"] = c.state;
    j["shots"] = c.shots;
    j["seed"] = c.seed;
  }
  if (s == "sparsify") {
    j["m"] = c.m;
    j["delta"] = c.delta;
    j["trials"] = c.trials;
    j["seed"] = c.seed;
  }
  j["format"] = c.format == Format::json ? "json" : "csv";
  j["tol"] = c.tol;
  j["max_iters"] = c.max_iters;
  j["iterative"] = c.iterative;
  j["dense_limit"] = c.dense_limit;
  j["term_cap"] = c.term_cap;
  j["prune_tolerance"] = c.prune_tolerance;
  return j;
}

namespace detail {

inline double parse_extended_real(const std::string& text) {
  if (text == "inf" || text == "infinity" || text == "Inf") return std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw ParseError("cannot parse \"" + text + "\" as a real or inf");
  return v;
}

inline std::optional<std::size_t> env_size(const char* name) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return std::nullopt;
  try {
    return static_cast<std::size_t>(std::stoull(v));
  } catch (const std::exception&) {
    throw ParseError(std::string("environment variable ") + name + " is not an integer: " + v);
  }
}

inline SpectralOptions spectral_options(const RunConfig& c) {
  SpectralOptions so;
  so.tol = c.tol;
  so.max_iters = c.max_iters;
  so.dense_limit = c.dense_limit;
  so.force_iterative = c.iterative;
  return so;
}

inline AlgebraLimits limits(const RunConfig& c) { return {c.term_cap, c.prune_tolerance}; }

inline Hamiltonian load_ham(const RunConfig& c) {
  if (c.ham_path.empty()) throw ParseError("--ham is required");
  return io::load_hamiltonian(c.ham_path, c.prune_tolerance);
}

inline ModelKind model_kind(const std::string& kind) {
  if (kind == "hadamard_power") return ModelKind::hadamard_power;
  if (kind == "xxzz_chain") return ModelKind::xxzz_chain;
  if (kind == "random_local") return ModelKind::random_local;
  throw ParseError("unknown model kind \"" + kind + "\"");
}

struct Output {
  std::string text;
  int status = kOk;
};

inline std::string render(const io::json& doc, const RunConfig& c) {
  if (c.format == Format::csv) return io::flat_csv(doc);
  return doc.dump(2) + "\n";
}

inline Output run_build(const RunConfig& c) {
  ModelParams mp{c.n, c.locality, c.terms, c.seed};
  auto doc = io::to_json(build_model(model_kind(c.kind), mp, limits(c)));
  doc["config"] = to_json(c);
  return {doc.dump(2) + "\n"};
}

inline Output run_norms(const RunConfig& c) {
  const auto h = load_ham(c);
  io::json doc = {{"n", h.num_qubits()},
                  {"num_terms", h.num_terms()},
                  {"locality", h.locality()},
                  {"pauli_1_norm", pauli_1_norm(h)}};
  doc["operator_norm"] = h.is_zero() ? 0.0 : operator_norm(h, spectral_options(c));
  doc["config"] = to_json(c);
  return {render(doc, c)};
}

inline Output run_spectrum(const RunConfig& c) {
  const auto h = load_ham(c);
  const auto r = extremal_eigs(h, spectral_options(c));
  io::json doc = {{"lambda_max", r.lambda_max},
                  {"lambda_min", r.lambda_min},
                  {"operator_norm", r.operator_norm()},
                  {"method", r.method == SpectralMethod::dense ? "dense" : "iterative"},
                  {"iterations", r.iterations},
                  {"residual", r.residual},
                  {"converged", r.converged}};
  doc["config"] = to_json(c);
  return {render(doc, c), r.converged ? kOk : kVerificationFailure};
}

inline AmplifyOptions amplify_options(const RunConfig& c) {
  AmplifyOptions ao;
  ao.limits = limits(c);
  ao.dense_limit = c.dense_limit;
  ao.assume_norm_bounded = c.assume_bounded;
  return ao;
}

inline Output run_amplify(const RunConfig& c) {
  const auto h = load_ham(c);
  auto doc = io::to_json(amplify(h, c.k, amplify_options(c)));
  doc["config"] = to_json(c);
  return {doc.dump(2) + "\n"};
}

inline Output run_verify(const RunConfig& c) {
  const auto h = load_ham(c);
  AmplifyParams params{c.k, parse_extended_real(c.p), c.q};
  VerifyOptions vo;
  vo.amplify = amplify_options(c);
  vo.spectral = spectral_options(c);
  const auto r = verify_amplification(h, params, vo);
  auto doc = io::to_json(r);
  doc["config"] = to_json(c);
  return {render(doc, c), r.all_bounds_hold ? kOk : kVerificationFailure};
}

inline StateVector resolve_state(const RunConfig& c, const Hamiltonian& h) {
  if (c.state != "top-eig") return io::load_state(c.state);
  if (h.num_qubits() > c.dense_limit) {
    throw CapacityError("--state top-eig needs n <= dense limit (" + std::to_string(c.dense_limit) +
                        "); pass an explicit state file instead");
  }
  auto so = spectral_options(c);
  so.force_iterative = false;
  return *extremal_eigs(h, so).eigvec_max;
}

inline Output run_game(const RunConfig& c) {
  const auto h = load_ham(c);
  const auto psi = resolve_state(c, h);
  const auto t = simulate(h, psi, c.shots, c.seed, c.workers);
  if (c.format == Format::csv) return {io::transcript_csv(t)};
  auto doc = io::to_json(t);
  doc["config"] = to_json(c);
  return {doc.dump(2) + "\n"};
}

inline Output run_sparsify(const RunConfig& c) {
  const auto h = load_ham(c);
  const auto r = empirical_deviation(h, {c.m, c.delta, c.seed, c.trials}, c.dense_limit);
  if (c.format == Format::csv) return {io::deviations_csv(r)};
  auto doc = io::to_json(r);
  doc["config"] = to_json(c);
  return {doc.dump(2) + "\n"};
}

}  // namespace detail

/// Dispatches a parsed config. Errors are returned as exit codes with a
/// module-qualified message on `err`.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  try {
    detail::Output o;
    if (c.subcommand == "build") {
      o = detail::run_build(c);
    } else if (c.subcommand == "norms") {
      o = detail::run_norms(c);
    } else if (c.subcommand == "spectrum") {
      o = detail::run_spectrum(c);
    } else if (c.subcommand == "amplify") {
      o = detail::run_amplify(c);
    } else if (c.subcommand == "verify-lemma") {
      o = detail::run_verify(c);
    } else if (c.subcommand == "game") {
      o = detail::run_game(c);
    } else if (c.subcommand == "sparsify") {
      o = detail::run_sparsify(c);
    } else {
      err << "pgap: unknown subcommand \"" << c.subcommand << "\"\n";
      return kUsage;
    }
    if (c.out_path.empty()) {
      out << o.text;
    } else {
      io::write_text_file(c.out_path, o.text);
    }
    return o.status;
  } catch (const CapacityError& e) {
    err << "pgap " << c.subcommand << ": capacity error: " << e.what() << '\n';
    return kCapacityError;
  } catch (const AlgebraError& e) {
    err << "pgap " << c.subcommand << ": verification error: " << e.what() << '\n';
    return kVerificationFailure;
  } catch (const Error& e) {
    err << "pgap " << c.subcommand << ": input error: " << e.what() << '\n';
    return kInputError;
  }
}

/// Parses argv (without the program name) and runs. PGAP_DENSE_LIMIT and
/// PGAP_TERM_CAP override the defaults before flags are applied.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  try {
    if (auto v = detail::env_size("PGAP_DENSE_LIMIT")) c.dense_limit = *v;
    if (auto v = detail::env_size("PGAP_TERM_CAP")) c.term_cap = *v;
  } catch (const Error& e) {
    err << "pgap: " << e.what() << '\n';
    return kUsage;
  }

  CLI::App app{"Pauli-basis Hamiltonian toolkit: norms, spectra, gap amplification, energy game, sparsification", "pgap"};
  app.require_subcommand(1);
  std::string format = "json";

  auto common = [&](CLI::App* sub, bool needs_ham) {
    if (needs_ham) sub->add_option("--ham", c.ham_path, "Hamiltonian JSON file")->required()->check(CLI::ExistingFile);
    sub->add_option("--out", c.out_path, "Write the report here instead of stdout");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--tol", c.tol, "Iterative eigensolver residual tolerance");
    sub->add_option("--max-iters", c.max_iters, "Iterative eigensolver iteration limit");
    sub->add_flag("--iterative", c.iterative, "Use the matrix-free eigensolver even when dense is feasible");
    sub->add_option("--dense-limit", c.dense_limit, "Largest qubit count handled densely");
    sub->add_option("--term-cap", c.term_cap, "Largest term count an expansion may produce");
    sub->add_option("--prune-tol", c.prune_tolerance, "Coefficients at or below this magnitude are dropped");
  };

  auto* build = app.add_subcommand("build", "Write a model Hamiltonian");
  common(build, false);
  build->add_option("--kind", c.kind, "hadamard_power, xxzz_chain or random_local")
      ->check(CLI::IsMember({"hadamard_power", "xxzz_chain", "random_local"}));
  build->add_option("--n", c.n, "Qubit count")->required();
  build->add_option("--locality", c.locality, "Support size of each random term");
  build->add_option("--terms", c.terms, "Number of random terms");
  build->add_option("--seed", c.seed, "Seed for random_local");

  auto* norms = app.add_subcommand("norms", "Pauli 1-norm and operator norm");
  common(norms, true);

  auto* spectrum = app.add_subcommand("spectrum", "Extremal eigenvalues");
  common(spectrum, true);

  auto* amp = app.add_subcommand("amplify", "Write 2((I+H)/2)^{⊗k} - I");
  common(amp, true);
  amp->add_option("--k", c.k, "Tensor power")->required()->check(CLI::PositiveNumber);
  amp->add_flag("--assume-bounded", c.assume_bounded, "Accept ‖H‖ <= 1 without a certificate");

  auto* verify = app.add_subcommand("verify-lemma", "Check the amplification bounds on an instance");
  common(verify, true);
  verify->add_option("--k", c.k, "Tensor power")->required()->check(CLI::PositiveNumber);
  verify->add_option("--p", c.p, "YES parameter (real or inf)");
  verify->add_option("--q", c.q, "NO parameter")->required();
  verify->add_flag("--assume-bounded", c.assume_bounded, "Accept ‖H‖ <= 1 without a certificate");

  auto* game = app.add_subcommand("game", "Simulate the energy-measurement game");
  common(game, true);
  game->add_option("--state", c.state, "State JSON file or top-eig");
  game->add_option("--shots", c.shots, "Number of rounds")->check(CLI::PositiveNumber);
  game->add_option("--seed", c.seed, "Seed");
  game->add_option("--workers", c.workers, "Worker threads (output does not depend on it)");

  auto* sparsify = app.add_subcommand("sparsify", "Randomized term restriction vs the Chernoff bound");
  common(sparsify, true);
  sparsify->add_option("--m", c.m, "Samples per restriction")->required()->check(CLI::PositiveNumber);
  sparsify->add_option("--delta", c.delta, "Deviation threshold")->required();
  sparsify->add_option("--trials", c.trials, "Independent restrictions")->check(CLI::PositiveNumber);
  sparsify->add_option("--seed", c.seed, "Seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    // Missing or unreadable input files are input errors, everything else is usage.
    err << "pgap: " << e.what() << '\n';
    return e.get_name() == "ValidationError" && std::string(e.what()).find("File does not exist") != std::string::npos
               ? kInputError
               : kUsage;
  }
  c.subcommand = app.get_subcommands().front()->get_name();
  c.format = format == "csv" ? Format::csv : Format::json;
  return run(c, out, err);
}

}  // namespace pgap::cli
