#pragma once

// Command-line front end. `run` is kept in a header so tests can drive it
// with in-memory streams.

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "symm/symm.hpp"

namespace symm::cli {

enum ExitCode : int { kDecided = 0, kUsage = 1, kNumerical = 2, kUnsupported = 3 };

struct Config {
  std::string command;
  std::string input_path;
  double tol = 1e-9;            // symmetry tests
  double rank_tol = 1e-10;      // kernel / rank decisions
  double eig_tol = 1e-7;        // eigenvalue clustering
  std::optional<int> target_signature;
  bool complete = false;
  double alpha = 1.0;
  std::uint64_t seed = 1;
  std::string output_path;
  std::string format = "text";
  // random
  int n = 2;
  int m = 2;
  std::string kind = "gaussian";
  // tank
  std::vector<double> time_constants{10.0, 10.0, 5.0, 5.0};
  std::vector<double> gammas{0.7, 0.6};

  Tolerances tolerances() const {
    Tolerances t;
    t.kernel = rank_tol;
    t.eig_cluster = eig_tol;
    t.seed = seed;
    return t;
  }
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open input file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string format_set(const std::set<int>& s) {
  std::string out = "{";
  bool first = true;
  for (int v : s) {
    if (!first) out += ",";
    out += std::to_string(v);
    first = false;
  }
  return out + "}";
}

inline std::string format_sigma(const SignatureMatrix& s) {
  std::string out = "diag(";
  for (int i = 0; i < s.size(); ++i) {
    if (i > 0) out += ",";
    out += s[i] > 0 ? "+1" : "-1";
  }
  return out + ")";
}

inline std::string format_matrix(const MatrixXd& M) {
  std::ostringstream os;
  os << std::setprecision(6);
  for (Eigen::Index i = 0; i < M.rows(); ++i) {
    os << "  ";
    for (Eigen::Index k = 0; k < M.cols(); ++k) os << std::setw(13) << M(i, k);
    os << '\n';
  }
  return os.str();
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

struct Analysis {
  nlohmann::json json;
  std::string text;
};

inline Analysis analyze(const StateSpace& ss, const Config& cfg) {
  const Tolerances tol = cfg.tolerances();
  const SystemMatrix sm = system_matrix(ss);
  nlohmann::json j;
  std::ostringstream os;

  const SymmetryResult ext = check_external_symmetry(ss, cfg.tol);
  j["external_symmetric"] = bool(ext);
  j["sigma_e"] = ext ? nlohmann::json(ext.sigma->diag()) : nlohmann::json(nullptr);
  os << "external symmetry: " << (ext ? "yes, Sigma_e = " + format_sigma(*ext.sigma) : "no") << '\n';

  const SymmetryResult in = check_internal_symmetry(sm, cfg.tol);
  j["internal_symmetric"] = bool(in);
  j["sigma"] = in ? nlohmann::json(in.sigma->diag()) : nlohmann::json(nullptr);
  os << "internal symmetry: " << (in ? "yes, Sigma = " + format_sigma(*in.sigma) : "no") << '\n';

  const bool minimal = is_minimal(ss);
  j["minimal"] = minimal;
  os << "minimal realization: " << (minimal ? "yes" : "no") << '\n';

  const EigStructure es = eig_structure(sm, tol.eig_cluster);
  j["distinct_real"] = es.distinct_real();
  os << "eigenvalues of P: " << es.groups() << " groups"
     << (es.distinct_real() ? " (all real and distinct)" : "") << '\n';

  const RankTest rt = necessary_test(sm, tol);
  j["rank_test"] = {{"rank", rt.rank},
                    {"columns", rt.columns},
                    {"kernel_dim", rt.kernel_dim},
                    {"verdict", rt.verdict == Verdict::NotSymmetrizable ? "not_symmetrizable"
                                                                        : "may_be_symmetrizable"}};
  os << "rank test: rank(Z*W) = " << rt.rank << " of " << rt.columns << ", kernel dimension "
     << rt.kernel_dim << " -> "
     << (rt.verdict == Verdict::NotSymmetrizable ? "not symmetrizable" : "may be symmetrizable") << '\n';

  std::optional<bool> symmetrizable;
  std::string reason;
  if (rt.verdict == Verdict::NotSymmetrizable) {
    symmetrizable = false;
    reason = "Z*W has full column rank";
  } else if (es.distinct_real()) {
    const auto d = decide_distinct_real(sm, std::nullopt, tol);
    symmetrizable = bool(d);
    reason = d.reason;
  } else if (minimal) {
    SymmetrizeOptions opts;
    opts.tol = tol;
    const auto r = symmetrize(ss, opts);
    symmetrizable = bool(r);
    reason = r.reason;
  }
  j["symmetrizable"] = symmetrizable ? nlohmann::json(*symmetrizable) : nlohmann::json(nullptr);
  os << "symmetrizable: " << (symmetrizable ? (*symmetrizable ? "yes" : "no") : "undecided (not minimal)");
  if (!reason.empty()) os << " (" << reason << ")";
  os << '\n';

  std::optional<std::set<int>> sigs;
  if (symmetrizable && *symmetrizable && es.distinct_real() && sm.size() <= tol.pattern_cap) {
    sigs = achievable_signatures(sm, tol);
    j["signatures"] = std::vector<int>(sigs->begin(), sigs->end());
    os << "achievable signatures: " << format_set(*sigs) << '\n';
  } else {
    j["signatures"] = nullptr;
  }

  std::string summary = (ext || in) ? "symmetric" : "not symmetric";
  if (symmetrizable) summary += *symmetrizable ? "; symmetrizable" : "; not symmetrizable";
  if (sigs) summary += "; signatures " + format_set(*sigs);
  j["summary"] = summary;
  os << "summary: " << summary << '\n';
  return {j, os.str()};
}

}  // namespace detail

/// Executes a parsed configuration, writing the report to `out`.
inline int execute(const Config& cfg, std::ostream& out, std::ostream& err) {
  const bool json = cfg.format == "json";
  const Tolerances tol = cfg.tolerances();
  std::ostringstream report;

  const auto load = [&]() {
    if (cfg.input_path.empty()) throw ParseError("an input system file is required");
    return load_system(detail::read_file(cfg.input_path));
  };

  if (cfg.command == "analyze") {
    const auto a = detail::analyze(load(), cfg);
    report << (json ? detail::dump(a.json) : a.text);
  } else if (cfg.command == "symmetrize") {
    const StateSpace ss = load();
    SymmetrizeOptions opts;
    opts.target_signature = cfg.target_signature;
    opts.complete = cfg.complete;
    opts.tol = tol;
    const auto r = symmetrize(ss, opts);
    if (json) {
      nlohmann::json j;
      j["symmetrizable"] = bool(r);
      if (r) {
        j["certificate"] = certificate_to_json(r.value->certificate);
        j["system"] = system_to_json(r.value->system);
        j["internal_residual"] = r.value->internal_residual;
      } else {
        j["reason"] = r.reason;
      }
      report << detail::dump(j);
    } else if (!r) {
      report << "not symmetrizable (" << r.reason << ")\n";
    } else {
      const auto& c = r.value->certificate;
      report << "symmetrizable: i(Sigma) = " << c.signature << ", i(Sigma_e) = " << c.sigma_e.signature()
             << ", i(Sigma_i) = " << c.sigma_i.signature() << '\n'
             << "Sigma_i = " << detail::format_sigma(c.sigma_i) << '\n'
             << "Sigma_e = " << detail::format_sigma(c.sigma_e) << '\n'
             << "K =\n" << detail::format_matrix(c.K)
             << "T =\n" << detail::format_matrix(c.T)
             << "certificate residual (worst) = " << c.residuals.worst() << '\n'
             << "internal symmetry residual = " << r.value->internal_residual << '\n'
             << "certificate:\n" << detail::dump(certificate_to_json(c))
             << "transformed system:\n" << detail::dump(system_to_json(r.value->system));
    }
  } else if (cfg.command == "signatures") {
    const auto sigs = achievable_signatures(system_matrix(load()), tol);
    if (json) {
      report << detail::dump(nlohmann::json{{"signatures", std::vector<int>(sigs.begin(), sigs.end())}});
    } else {
      report << "achievable signatures: " << detail::format_set(sigs) << '\n';
    }
  } else if (cfg.command == "controller") {
    const ControllerResult r = optimal_controller(load(), cfg.alpha, tol);
    nlohmann::json j{{"gain", matrix_to_json(r.gain)}, {"alpha", r.alpha},       {"R", matrix_to_json(r.R)},
                     {"S", matrix_to_json(r.S)},       {"T", matrix_to_json(r.T)}, {"K", matrix_to_json(r.K)}};
    if (json) {
      report << detail::dump(j);
    } else {
      report << "alpha = " << r.alpha << '\n'
             << "gain =\n" << detail::format_matrix(r.gain)
             << "R = K^-2 =\n" << detail::format_matrix(r.R)
             << "S = T^-2 =\n" << detail::format_matrix(r.S);
    }
  } else if (cfg.command == "tank") {
    if (cfg.time_constants.size() != 4 || cfg.gammas.size() != 2) {
      throw ValueError("tank needs 4 time constants and 2 valve splits");
    }
    TankParams p;
    p.T1 = cfg.time_constants[0];
    p.T2 = cfg.time_constants[1];
    p.T3 = cfg.time_constants[2];
    p.T4 = cfg.time_constants[3];
    p.gamma1 = cfg.gammas[0];
    p.gamma2 = cfg.gammas[1];
    report << detail::dump(system_to_json(quadruple_tank(p)));
  } else if (cfg.command == "random") {
    if (cfg.kind == "gaussian") {
      report << detail::dump(system_to_json(random_gaussian_system(cfg.n, cfg.m, cfg.seed)));
    } else {
      std::mt19937_64 rng(cfg.seed);
      std::bernoulli_distribution coin(0.5);
      std::vector<int> d(static_cast<size_t>(cfg.n + cfg.m));
      for (int& v : d) v = coin(rng) ? 1 : -1;
      report << detail::dump(system_to_json(random_symmetric_system(cfg.n, cfg.m, SignatureMatrix(d), cfg.seed)));
    }
  } else {
    err << "unknown command '" << cfg.command << "'\n";
    return kUsage;
  }

  if (cfg.output_path.empty()) {
    out << report.str();
  } else {
    std::ofstream f(cfg.output_path);
    if (!f) throw ParseError("cannot write '" + cfg.output_path + "'");
    f << report.str();
  }
  return kDecided;
}

/// Maps library errors onto exit statuses.
inline int guarded_execute(const Config& cfg, std::ostream& out, std::ostream& err) {
  try {
    return execute(cfg, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DimensionError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const ValueError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const Defective& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const WrongStructure& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const PatternLimitExceeded& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const MinimalityError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const PreconditionFailed& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const SingularA& e) {
    err << "unsupported: " << e.what() << '\n';
    return kUnsupported;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}

/// Parses argv-style arguments (without the program name) and runs.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Symmetry and symmetrizability of linear systems"};
  app.require_subcommand(1);
  int signature = 0;

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tol, "tolerance for symmetry tests")->check(CLI::PositiveNumber);
    sub->add_option("--rank-tol", cfg.rank_tol, "relative singular-value cut for ranks and kernels")
        ->check(CLI::PositiveNumber);
    sub->add_option("--eig-tol", cfg.eig_tol, "relative eigenvalue clustering gap")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "random seed");
    sub->add_option("--out", cfg.output_path, "write the report to a file");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"json", "text"}));
  };
  const auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", cfg.input_path, "system JSON file")->required();
  };

  CLI::App* analyze = app.add_subcommand("analyze", "symmetry, rank test and symmetrizability report");
  add_input(analyze);
  add_common(analyze);
  CLI::App* symmetrize_cmd = app.add_subcommand("symmetrize", "certificate and symmetrized realization");
  add_input(symmetrize_cmd);
  add_common(symmetrize_cmd);
  CLI::Option* sig_opt = symmetrize_cmd->add_option("--signature", signature, "target system signature i(Sigma)");
  symmetrize_cmd->add_flag("--complete", cfg.complete, "require a positive definite certificate");
  CLI::App* signatures = app.add_subcommand("signatures", "achievable system signatures");
  add_input(signatures);
  add_common(signatures);
  CLI::App* controller = app.add_subcommand("controller", "closed-form optimal output feedback");
  add_input(controller);
  add_common(controller);
  controller->add_option("--alpha", cfg.alpha, "control effort weight")->check(CLI::PositiveNumber);
  CLI::App* tank = app.add_subcommand("tank", "quadruple-tank realization");
  add_common(tank);
  tank->add_option("--time-constants", cfg.time_constants, "T1 T2 T3 T4")->expected(4);
  tank->add_option("--gammas", cfg.gammas, "valve splits gamma1 gamma2")->expected(2);
  CLI::App* random = app.add_subcommand("random", "seeded random system");
  add_common(random);
  random->add_option("--n", cfg.n, "states")->check(CLI::PositiveNumber);
  random->add_option("--m", cfg.m, "inputs = outputs")->check(CLI::PositiveNumber);
  random->add_option("--kind", cfg.kind, "gaussian or symmetric")->check(CLI::IsMember({"gaussian", "symmetric"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kDecided;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kDecided;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kUsage;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  if (*sig_opt) cfg.target_signature = signature;
  return guarded_execute(cfg, out, err);
}

}  // namespace symm::cli
