#include "wmr_cli/commands.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "wmr/bounds.hpp"
#include "wmr/converse.hpp"
#include "wmr/errors.hpp"
#include "wmr/ia_engine.hpp"
#include "wmr/json_io.hpp"
#include "wmr/scheme.hpp"

namespace wmr::cli {

namespace {

void require_K(const RunConfig& c) {
  if (c.K < 3) throw ParameterError("--K must be at least 3 (got " + std::to_string(c.K) + ")");
}

Rational load_of(const RunConfig& c) {
  if (c.r.empty()) throw ParameterError("--r is required");
  return parse_rational(c.r);
}

SystemParams integer_params(const RunConfig& c) {
  require_K(c);
  const Rational r = load_of(c);
  if (!is_integer(r)) throw ParameterError("--r must be an integer here (got " + c.r + ")");
  return SystemParams::with_integer_load(c.K, static_cast<int>(to_int64(numerator(r), "r")));
}

std::string format_of(const RunConfig& c, const std::string& fallback) {
  const std::string f = c.format.value_or(fallback);
  if (f != "csv" && f != "json") throw ParameterError("--format must be csv or json (got " + f + ")");
  return f;
}

ArithmeticMode mode_of(const RunConfig& c, ArithmeticMode fallback) {
  return c.mode ? parse_mode(*c.mode) : fallback;
}

void check_trials(const RunConfig& c) {
  if (c.trials < 1) throw ParameterError("--trials must be positive");
}

InstanceOptions instance_options(const RunConfig& c) {
  InstanceOptions o;
  o.max_block_length = c.max_block_length;
  return o;
}

void emit_json(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

std::string optional_double(const std::optional<double>& v) {
  if (!v) return "";
  std::ostringstream s;
  s.precision(6);
  s << *v;
  return s.str();
}

}  // namespace

std::uint64_t max_block_length_from_env(std::uint64_t fallback) {
  const char* raw = std::getenv("WMR_MAX_BLOCK_LENGTH");
  if (raw == nullptr || *raw == '\0') return fallback;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(raw, &used);
    if (used != std::string(raw).size() || v == 0) throw std::invalid_argument(raw);
    return v;
  } catch (const std::exception&) {
    throw ParameterError(std::string("WMR_MAX_BLOCK_LENGTH is not a positive integer: ") + raw);
  }
}

int cmd_bounds(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_K(c);
  const Rational step = parse_rational(c.grid_step);
  if (step <= 0) throw ParameterError("--grid-step must be positive");
  const std::string format = format_of(c, "csv");
  const auto curves = bound_curves(c.K, step);
  const auto report = corollary_checks(c.K);

  if (format == "csv") {
    out << "r";
    for (const auto& curve : curves) out << ',' << to_string(curve.label);
    out << '\n';
    for (std::size_t i = 0; i < curves.front().samples.size(); ++i) {
      out << to_decimal(curves.front().samples[i].x, c.digits);
      for (const auto& curve : curves) out << ',' << to_decimal(curve.samples[i].y, c.digits);
      out << '\n';
    }
  } else {
    Json rows = Json::array();
    for (std::size_t i = 0; i < curves.front().samples.size(); ++i) {
      Json row = {{"r", to_json(curves.front().samples[i].x)}};
      for (const auto& curve : curves) row[to_string(curve.label)] = to_json(curve.samples[i].y);
      rows.push_back(std::move(row));
    }
    Json plateau = Json::array();
    for (const auto& d : lb_plateau_diagnostics(c.K)) plateau.push_back(to_json(d));
    emit_json(out, {{"K", c.K},
                    {"grid_step", to_json(step)},
                    {"rows", rows},
                    {"corollary_checks", to_json(report)},
                    {"lb_plateau_diagnostics", plateau}});
  }
  if (!report.all_pass()) {
    for (const auto& check : report.checks) {
      if (!check.pass) {
        err << "check failed: " << check.name << " at r=" << to_string(check.r) << ": " << to_string(check.lhs)
            << ' ' << check.relation << ' ' << to_string(check.rhs) << '\n';
      }
    }
    return kCheckFailed;
  }
  return kOk;
}

int cmd_scheme(const RunConfig& c, std::ostream& out, std::ostream&) {
  const auto params = integer_params(c);
  if (c.eta < 1) throw ParameterError("--eta must be at least 1");
  if (format_of(c, "json") == "json") {
    emit_json(out, scheme_json(params, c.eta));
    return kOk;
  }
  const auto assignment = assign_precoders(params);
  out << "codeword,sender,team,dest,precoder\n";
  for (const auto& m : generate_messages(params)) {
    out << '"' << m.label() << "\"," << m.sender << ",\"" << m.team.to_string() << "\"," << m.dest << ",\""
        << assignment.precoder_of(m).to_string() << "\"\n";
  }
  return kOk;
}

int cmd_verify_rank(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto params = integer_params(c);
  check_trials(c);
  const auto mode = mode_of(c, ArithmeticMode::modular);
  const std::string format = format_of(c, "json");

  std::size_t passed = 0;
  std::size_t total = 0;
  bool aligned = true;
  Json trials = Json::array();
  std::ostringstream csv;
  csv << "seed,matrix,rows,cols,rank,verdict,modulus,sigma_min,sigma_max\n";
  std::string distribution;
  for (int trial = 0; trial < c.trials; ++trial) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(trial);
    const auto inst = sample_instance(params, c.eta, seed, mode, instance_options(c));
    distribution = inst.distribution();
    Json certs = Json::array();
    for (NodeIndex j = 1; j <= params.K(); ++j) {
      const auto cert = certify_rank(build_lambda(inst, j), c.tol);
      ++total;
      if (cert.pass) ++passed;
      certs.push_back(to_json(cert));
      csv << seed << ',' << cert.label << ',' << cert.rows << ',' << cert.cols << ',' << cert.rank << ','
          << (cert.pass ? "pass" : "fail") << ',' << (cert.modulus ? std::to_string(*cert.modulus) : "") << ','
          << optional_double(cert.sigma_min) << ',' << optional_double(cert.sigma_max) << '\n';
    }
    Json containment = Json::array();
    for (const auto& R : precoder_sets(params)) {
      const auto rep = check_alignment(inst, R, c.tol);
      aligned = aligned && rep.contained;
      containment.push_back(to_json(rep));
    }
    trials.push_back({{"seed", seed}, {"certificates", certs}, {"alignment", containment}});
  }

  if (format == "json") {
    emit_json(out, {{"K", params.K()},
                    {"r", params.r()},
                    {"eta", c.eta},
                    {"mode", to_string(mode)},
                    {"distribution", distribution},
                    {"trials", trials},
                    {"passed", passed},
                    {"total", total},
                    {"alignment_holds", aligned}});
  } else {
    out << csv.str();
  }
  err << "full column rank: " << passed << '/' << total << (aligned ? "" : "; alignment containment FAILED") << '\n';
  return passed == total && aligned ? kOk : kCheckFailed;
}

int cmd_simulate(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto params = integer_params(c);
  check_trials(c);
  const auto mode = mode_of(c, ArithmeticMode::floating);
  const std::string format = format_of(c, "json");

  bool ok = true;
  Json runs = Json::array();
  std::ostringstream csv;
  csv << "seed,node,codewords,max_abs_error,relative_error,condition_number\n";
  for (int trial = 0; trial < c.trials; ++trial) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(trial);
    const auto inst = sample_instance(params, c.eta, seed, mode, instance_options(c));
    RoundTripOptions options;
    options.symbol_seed = seed ^ 0x9e3779b97f4a7c15ULL;
    options.noise_std = c.noise;
    options.tolerance = c.tol;
    const auto report = shuffle_roundtrip(inst, options);
    const bool trial_ok = report.decoded && report.max_relative_error() < c.max_error;
    ok = ok && trial_ok;
    Json j = to_json(report);
    j["seed"] = seed;
    j["pass"] = trial_ok;
    runs.push_back(std::move(j));
    for (const auto& n : report.nodes) {
      csv << seed << ',' << n.node << ',' << n.codewords << ',' << n.max_abs_error << ',' << n.relative_error << ','
          << optional_double(n.condition_number) << '\n';
    }
    if (!report.decoded) err << "seed " << seed << ": decoding refused, " << report.refused->label << " rank "
                             << report.refused->rank << '/' << report.refused->cols << '\n';
  }
  if (format == "json") {
    emit_json(out, {{"K", params.K()},
                    {"r", params.r()},
                    {"eta", c.eta},
                    {"mode", to_string(mode)},
                    {"max_error", c.max_error},
                    {"runs", runs},
                    {"pass", ok}});
  } else {
    out << csv.str();
  }
  return ok ? kOk : kCheckFailed;
}

int cmd_converse(const RunConfig& c, std::ostream& out, std::ostream& err) {
  require_K(c);
  const Rational r = load_of(c);
  const int t = c.t.value_or(c.K / 2);
  if (c.N < 0) throw ParameterError("--N must be nonnegative");
  const std::string format = format_of(c, "json");

  const auto structured = minimize_masses_structured(c.K, t, r, c.N);
  const Rational rhs = aggregated_rhs(c.K, t, r, structured.N, structured.masses);
  const Rational from_converse = delta_lb_from_converse(c.K, r);
  const Rational closed_form = delta_lb(c.K, r);
  const auto audit = convexity_audit(c.K);

  bool ok = from_converse == closed_form && audit.all_pass();
  std::optional<MassSolution> brute;
  if (c.oracle) {
    brute = minimize_masses_bruteforce(c.K, t, r, structured.N);
    ok = ok && brute->objective == structured.objective;
  }

  if (format == "json") {
    Json j = {{"K", c.K},
              {"t", t},
              {"r", to_json(r)},
              {"N", c.N},
              {"structured", to_json(structured)},
              {"aggregated_rhs", to_json(rhs)},
              {"delta_lb_from_converse", to_json(from_converse)},
              {"delta_lb", to_json(closed_form)},
              {"convexity_audit", to_json(audit)},
              {"pass", ok}};
    if (brute) j["bruteforce"] = to_json(*brute);
    emit_json(out, j);
  } else {
    out << "quantity,exact,decimal\n";
    auto row = [&](const std::string& name, const Rational& v) {
      out << name << ',' << to_string(v) << ',' << to_decimal(v, c.digits) << '\n';
    };
    row("structured_objective", structured.objective);
    if (brute) row("bruteforce_objective", brute->objective);
    row("aggregated_rhs", rhs);
    row("delta_lb_from_converse", from_converse);
    row("delta_lb", closed_form);
  }
  if (brute && brute->objective != structured.objective) {
    err << "oracle mismatch: structured " << to_string(structured.objective) << " vs brute force "
        << to_string(brute->objective) << '\n';
  }
  if (from_converse != closed_form) err << "converse assembly differs from the closed-form lower bound\n";
  if (!audit.all_pass()) err << "coefficient convexity audit failed\n";
  return ok ? kOk : kCheckFailed;
}

int cmd_lemma_tests(const RunConfig& c, std::ostream& out, std::ostream& err) {
  check_trials(c);
  const auto mode = mode_of(c, ArithmeticMode::modular);
  const std::string format = format_of(c, "json");
  const std::vector<std::vector<int>> exponents = {{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  const std::vector<std::size_t> blocks = {2, 2};

  std::size_t vander_pass = 0;
  std::size_t block_pass = 0;
  Json failures = Json::array();
  for (int trial = 0; trial < c.trials; ++trial) {
    const std::uint64_t seed = c.seed + static_cast<std::uint64_t>(trial);
    const auto v = lemma_vandermonde_test(4, exponents, seed, mode, c.tol);
    const auto b = lemma_blockdiag_test(blocks, 4, seed, mode, false, c.tol);
    if (v.pass) {
      ++vander_pass;
    } else {
      failures.push_back({{"seed", seed}, {"certificate", to_json(v)}});
    }
    if (b.pass) {
      ++block_pass;
    } else {
      failures.push_back({{"seed", seed}, {"certificate", to_json(b)}});
    }
  }
  const auto trials = static_cast<std::size_t>(c.trials);
  if (format == "json") {
    emit_json(out, {{"mode", to_string(mode)},
                    {"trials", trials},
                    {"vandermonde", {{"m", 4}, {"exponents", exponents}, {"passed", vander_pass}}},
                    {"blockdiag", {{"blocks", blocks}, {"mu", 4}, {"passed", block_pass}}},
                    {"failures", failures}});
  } else {
    out << "lemma,trials,passed\n";
    out << "vandermonde," << trials << ',' << vander_pass << '\n';
    out << "blockdiag," << trials << ',' << block_pass << '\n';
  }
  err << "vandermonde " << vander_pass << '/' << trials << ", blockdiag " << block_pass << '/' << trials << '\n';
  return vander_pass == trials && block_pass == trials ? kOk : kCheckFailed;
}

int dispatch(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::ofstream file;
    std::ostream* sink = &out;
    if (!config.out.empty()) {
      file.open(config.out);
      if (!file) {
        err << "cannot open output file " << config.out << '\n';
        return kIoError;
      }
      sink = &file;
    }
    int code = kParameterError;
    const auto& s = config.subcommand;
    if (s == "bounds") {
      code = cmd_bounds(config, *sink, err);
    } else if (s == "scheme") {
      code = cmd_scheme(config, *sink, err);
    } else if (s == "verify-rank") {
      code = cmd_verify_rank(config, *sink, err);
    } else if (s == "simulate") {
      code = cmd_simulate(config, *sink, err);
    } else if (s == "converse") {
      code = cmd_converse(config, *sink, err);
    } else if (s == "lemma-tests") {
      code = cmd_lemma_tests(config, *sink, err);
    } else {
      err << "unknown subcommand '" << s << "'\n";
      return kParameterError;
    }
    if (file.is_open()) {
      file.flush();
      if (!file) {
        err << "failed writing " << config.out << '\n';
        return kIoError;
      }
    }
    return code;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << '\n';
    return kParameterError;
  } catch (const ResourceError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kResourceGuard;
  }
}

}  // namespace wmr::cli
