// dmcalc: probability calculus over density matrices from the command line.
//
// Subcommands: odot, bayes-iterate, condition, em-recover, verify,
// figure-eight.  Matrices travel as JSON ({"dim": n, "rows": [[...], ...]}),
// iteration traces as CSV with 17-significant-digit values.
//
// Exit codes: 0 success, 1 validation failure, 2 numerical failure
// (ZeroEvidence, ConditioningOnNull, NotConverged, failed verify rule).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dmcalc/bayes.hpp"
#include "dmcalc/io.hpp"
#include "dmcalc/random.hpp"
#include "dmcalc/verify.hpp"

namespace {

using namespace dmcalc;

std::pair<int, int> parse_dims_flag(const std::string& dims) {
  const auto comma = dims.find(',');
  if (comma == std::string::npos)
    throw InvalidInput("--dims expects nA,nB");
  const int na = std::stoi(dims.substr(0, comma));
  const int nb = std::stoi(dims.substr(comma + 1));
  if (na <= 0 || nb <= 0) throw InvalidInput("--dims expects positive factors");
  return {na, nb};
}

JointDensity load_joint(const std::string& path, const std::string& dims_flag) {
  const std::string text = read_file(path);
  auto dims = parse_dims_json(text);
  if (!dims_flag.empty()) dims = parse_dims_flag(dims_flag);
  if (!dims) throw InvalidInput("joint needs --dims nA,nB (or a \"dims\" field)");
  return JointDensity(DensityMatrix(PsdMatrix(parse_matrix_json(text))),
                      dims->first, dims->second);
}

UnitVector load_unit(const std::string& path) {
  return UnitVector(load_vector(path));
}

int run_odot(const std::string& a_path, const std::string& b_path, long limit_n) {
  const PsdMatrix a(load_matrix(a_path));
  const PsdMatrix b(load_matrix(b_path));
  const PsdMatrix result = odot(a, b);
  std::cout << matrix_to_json(result.matrix()) << "\n";
  if (limit_n > 0) {
    const Matrix lim = odot_limit(a, b, limit_n);
    const Matrix sym = 0.5 * (lim + lim.transpose());
    const double residual =
        (sym - result.matrix()).norm() / std::max(1e-300, result.matrix().norm());
    nlohmann::json extra{{"limit_n", limit_n}, {"residual", residual}};
    std::cout << extra.dump() << "\n";
  }
  return 0;
}

int run_bayes_iterate(const std::string& prior_path, const std::string& lik_path,
                      int steps, bool conventional) {
  if (steps < 1) throw InvalidInput("--steps must be positive");
  const Matrix prior_m = load_matrix(prior_path);
  const Matrix lik_m = load_matrix(lik_path);

  auto print_row = [](int step, const Vector& proj, const std::string& evidence) {
    std::string line = std::to_string(step);
    for (Eigen::Index i = 0; i < proj.size(); ++i) line += "," + format_full(proj(i));
    line += "," + evidence;
    std::puts(line.c_str());
  };

  const int k = static_cast<int>(prior_m.rows());
  std::string header = "step";
  for (int i = 1; i <= k; ++i) header += ",proj_" + std::to_string(i);
  header += ",evidence";
  std::puts(header.c_str());

  if (conventional) {
    const double off_prior = max_abs(prior_m - Matrix(prior_m.diagonal().asDiagonal()));
    const double off_lik = max_abs(lik_m - Matrix(lik_m.diagonal().asDiagonal()));
    if (off_prior > 1e-12 || off_lik > 1e-12)
      throw InvalidInput("--conventional expects diagonal prior and likelihood");
    Vector current = prior_m.diagonal();
    const Vector lik = lik_m.diagonal();
    print_row(0, current, "");
    for (int t = 1; t <= steps; ++t) {
      const ConventionalPosterior cp = conventional_bayes(current, lik);
      current = cp.posterior;
      print_row(t, current, format_full(cp.evidence));
    }
    return 0;
  }

  const PsdMatrix lik(lik_m);
  DensityMatrix current{PsdMatrix(prior_m)};
  auto projections = [&](const DensityMatrix& w) {
    Vector proj(k);
    for (int i = 0; i < k; ++i) {
      const Vector u = lik.eigenvectors().col(i);
      proj(i) = u.dot(w.matrix() * u);
    }
    return proj;
  };
  print_row(0, projections(current), "");
  for (int t = 1; t <= steps; ++t) {
    const GeneralizedPosterior gp = generalized_bayes(BayesProblem{current, lik});
    current = gp.posterior;
    print_row(t, projections(current), format_full(gp.evidence));
  }
  return 0;
}

int run_condition(const std::string& joint_path, const std::string& dims_flag,
                  const std::string& rule, const std::string& a_path,
                  const std::string& b_path) {
  const JointDensity j = load_joint(joint_path, dims_flag);
  nlohmann::json out;
  out["kind"] = rule;
  if (rule == "CP1") {
    const ConditionalMatrix c = cond_full(j);
    out["dims"] = {c.na, c.nb};
    out["matrix"] = nlohmann::json::parse(matrix_to_json(c.psd.matrix()));
  } else if (rule == "CP2") {
    if (b_path.empty()) throw InvalidInput("CP2 needs --b");
    out["matrix"] =
        nlohmann::json::parse(matrix_to_json(cond_A_given_b(j, load_unit(b_path)).matrix()));
  } else if (rule == "CP3") {
    if (a_path.empty()) throw InvalidInput("CP3 needs --a");
    out["matrix"] =
        nlohmann::json::parse(matrix_to_json(cond_a_given_B(j, load_unit(a_path)).matrix()));
  } else if (rule == "CP4") {
    if (a_path.empty() || b_path.empty()) throw InvalidInput("CP4 needs --a and --b");
    out["value"] = cond_scalar(j, load_unit(a_path), load_unit(b_path));
  } else {
    throw InvalidInput("--rule must be CP1, CP2, CP3 or CP4");
  }
  std::cout << out.dump() << "\n";
  return 0;
}

int run_em_recover(const std::string& cond_path, const std::string& dims_flag,
                   double tolerance, int max_iter) {
  const std::string text = read_file(cond_path);
  Matrix cmat;
  auto dims = parse_dims_json(text);
  const nlohmann::json payload = nlohmann::json::parse(text, nullptr, false);
  if (!payload.is_discarded() && payload.contains("matrix"))
    cmat = parse_matrix_json(payload["matrix"].dump());
  else
    cmat = parse_matrix_json(text);
  if (!dims_flag.empty()) dims = parse_dims_flag(dims_flag);
  if (!dims) throw InvalidInput("em-recover needs --dims nA,nB (or a \"dims\" field)");

  const ConditionalMatrix c{PsdMatrix(cmat), dims->first, dims->second,
                            CondKind::FullGivenB};
  const EmResult r = em_recover(c, max_iter, tolerance);
  for (size_t i = 0; i < r.history.size(); ++i)
    if ((i + 1) % 100 == 0 || i + 1 == r.history.size())
      std::fprintf(stderr, "iter %zu residual %s\n", i + 1,
                   format_full(r.history[i]).c_str());
  if (!r.converged) {
    std::fprintf(stderr,
                 "NotConverged: no fixed point after %d iterations (residual %s); "
                 "convergence of this recovery is conjectural\n",
                 r.iterations, format_full(r.residual).c_str());
    return 2;
  }
  nlohmann::json out{{"marginal", nlohmann::json::parse(matrix_to_json(r.marginal.matrix()))},
                     {"iterations", r.iterations},
                     {"residual", r.residual},
                     {"reconstruction_error", r.reconstruction_error},
                     {"converged", true}};
  std::cout << out.dump() << "\n";
  return 0;
}

int run_verify(const std::string& suite, std::uint64_t seed, int trials, int dim_max) {
  VerifyOptions opt;
  opt.seed = seed;
  opt.trials = trials;
  opt.dim_max = dim_max;
  if (trials < 1 || dim_max < opt.dim_min)
    throw InvalidInput("verify: bad --trials or --dim-max");
  if (!suite.empty()) {
    const auto& names = suite_names();
    if (std::find(names.begin(), names.end(), suite) == names.end())
      throw InvalidInput("verify: unknown suite " + suite);
  }

  std::printf("# dmcalc verify seed=%llu trials=%d dims=[%d,%d] suite=%s\n",
              static_cast<unsigned long long>(opt.seed), opt.trials, opt.dim_min,
              opt.dim_max, suite.empty() ? "all" : suite.c_str());
  const std::vector<RuleResult> results =
      suite.empty() ? run_all_suites(opt) : run_suite(suite, opt);
  int failures = 0;
  for (const RuleResult& r : results) {
    std::printf("%-8s %s trials=%d max_err=%.3e tol=%.0e%s%s\n", r.id.c_str(),
                r.pass ? "PASS" : "FAIL", r.trials, r.max_err, r.tolerance,
                r.note.empty() ? "" : "  ", r.note.c_str());
    if (!r.pass) ++failures;
  }
  std::printf("# %zu rules, %d failed\n", results.size(), failures);
  return failures == 0 ? 0 : 2;
}

int run_figure_eight(const std::string& w_path, int samples) {
  const DensityMatrix w{PsdMatrix(load_matrix(w_path))};
  if (w.dim() != 2) throw InvalidInput("figure-eight: needs a 2x2 density matrix");
  if (samples < 1) throw InvalidInput("figure-eight: --samples must be positive");
  std::puts("theta,x,y");
  for (int k = 0; k < samples; ++k) {
    const double theta = 2.0 * M_PI * k / samples;
    Vector u(2);
    u << std::cos(theta), std::sin(theta);
    const double p = u.dot(w.matrix() * u);
    std::printf("%s,%s,%s\n", format_full(theta).c_str(), format_full(p * u(0)).c_str(),
                format_full(p * u(1)).c_str());
  }
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"probability calculus over density matrices"};
  app.require_subcommand(1);

  std::string a_path, b_path, prior_path, lik_path, joint_path, dims_flag, rule;
  std::string suite, vec_a, vec_b, w_path, cond_path;
  long limit_n = 0;
  int steps = 1, samples = 360, trials = 100, dim_max = 6, max_iter = 10000;
  double em_tol = 1e-9;
  std::uint64_t seed = 7;
  bool conventional = false;

  CLI::App* odot_cmd = app.add_subcommand("odot", "commutative matrix product of two PSD matrices");
  odot_cmd->add_option("A", a_path, "matrix JSON")->required();
  odot_cmd->add_option("B", b_path, "matrix JSON")->required();
  odot_cmd->add_option("--limit-n", limit_n, "compare against the product-formula stage (power of two)");

  CLI::App* bayes_cmd = app.add_subcommand("bayes-iterate", "iterate a Bayes rule with a fixed likelihood, CSV to stdout");
  bayes_cmd->add_option("--prior", prior_path, "prior matrix JSON")->required();
  bayes_cmd->add_option("--likelihood", lik_path, "likelihood matrix JSON")->required();
  bayes_cmd->add_option("--steps", steps, "number of updates")->required();
  bayes_cmd->add_flag("--conventional", conventional, "use the probability-vector rule on the diagonals");

  CLI::App* cond_cmd = app.add_subcommand("condition", "conditional density matrices from a joint");
  cond_cmd->add_option("joint", joint_path, "joint density JSON")->required();
  cond_cmd->add_option("--dims", dims_flag, "factor dimensions nA,nB");
  cond_cmd->add_option("--rule", rule, "CP1|CP2|CP3|CP4")->required();
  cond_cmd->add_option("--a", vec_a, "unit vector JSON over A");
  cond_cmd->add_option("--b", vec_b, "unit vector JSON over B");

  CLI::App* em_cmd = app.add_subcommand("em-recover", "recover the conditioned-on marginal from a full conditional");
  em_cmd->add_option("cond", cond_path, "conditional JSON (bare matrix or condition output)")->required();
  em_cmd->add_option("--dims", dims_flag, "factor dimensions nA,nB");
  em_cmd->add_option("--tol", em_tol, "fixed-point residual tolerance");
  em_cmd->add_option("--max-iter", max_iter, "iteration budget");

  CLI::App* verify_cmd = app.add_subcommand("verify", "run the property suites, one line per rule");
  verify_cmd->add_option("--suite", suite, "OP|KP|PT|MJ|CP|MC|TP|BR|bounds (default: all)");
  verify_cmd->add_option("--trials", trials, "random trials per rule");
  verify_cmd->add_option("--seed", seed, "PRNG seed");
  verify_cmd->add_option("--dim-max", dim_max, "largest single-space dimension");

  CLI::App* fig_cmd = app.add_subcommand("figure-eight", "tr(W uu^T) u around the unit circle, CSV to stdout");
  fig_cmd->add_option("W", w_path, "2x2 density matrix JSON")->required();
  fig_cmd->add_option("--samples", samples, "points on the circle");

  CLI11_PARSE(app, argc, argv);

  try {
    if (odot_cmd->parsed()) return run_odot(a_path, b_path, limit_n);
    if (bayes_cmd->parsed()) return run_bayes_iterate(prior_path, lik_path, steps, conventional);
    if (cond_cmd->parsed()) return run_condition(joint_path, dims_flag, rule, vec_a, vec_b);
    if (em_cmd->parsed()) return run_em_recover(cond_path, dims_flag, em_tol, max_iter);
    if (verify_cmd->parsed()) return run_verify(suite, seed, trials, dim_max);
    if (fig_cmd->parsed()) return run_figure_eight(w_path, samples);
  } catch (const ConditioningOnNull& e) {
    std::fprintf(stderr, "ConditioningOnNull: %s\n", e.what());
    return 2;
  } catch (const ZeroEvidence& e) {
    std::fprintf(stderr, "ZeroEvidence: %s\n", e.what());
    return 2;
  } catch (const NotConverged& e) {
    std::fprintf(stderr, "NotConverged: %s\n", e.what());
    return 2;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
