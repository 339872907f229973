// Command-line front end: path simulation, minorants, excursions, laws,
// excursion sampling, the Azema survival curve and the verification suites.
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lipmin/azema.hpp"
#include "lipmin/errors.hpp"
#include "lipmin/excursions.hpp"
#include "lipmin/harness/io.hpp"
#include "lipmin/harness/report.hpp"
#include "lipmin/harness/suites.hpp"
#include "lipmin/laws.hpp"
#include "lipmin/minorant.hpp"
#include "lipmin/samplers.hpp"

namespace {

using nlohmann::ordered_json;

constexpr std::uint64_t kDefaultSeed = 20240601;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Raised for bad combinations of otherwise well-formed flags.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("LIPMIN_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    throw UsageError("LIPMIN_SEED is not an unsigned integer");
  }
  return kDefaultSeed;
}

// Writes through `body` to a file, or to stdout when `path` is empty or "-".
void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  body(out);
}

lipmin::Path load_path(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  return lipmin::io::read_path_json(in);
}

void write_features_header(std::ostream& out) { out << "zeta,L,zeta_minus_L,w_zeta,h\n"; }

void write_features_row(std::ostream& out, const lipmin::ExcursionFeatures& f) {
  out << f.zeta << ',' << f.L << ',' << f.zeta_minus_L << ',' << f.w_zeta << ',' << f.h << '\n';
}

// ---- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::string process = "brownian";
  double beta = 0.0, sigma = 1.0;
  double drift = 0.0, rate = 1.0;
  std::string jumps = "constant";
  double jump_a = 0.0, jump_b = 0.0;
  double tmin = -10.0, tmax = 10.0, dt = 1e-3;
  std::optional<std::uint64_t> seed;
  std::string format = "json";
  std::string out;
};

lipmin::JumpLaw::Kind jump_kind(const std::string& name) {
  using K = lipmin::JumpLaw::Kind;
  static const std::map<std::string, K> kinds{{"constant", K::Constant}, {"normal", K::Normal},
                                              {"exponential", K::Exponential}, {"uniform", K::Uniform},
                                              {"cauchy", K::Cauchy}, {"pareto", K::Pareto}};
  const auto it = kinds.find(name);
  if (it == kinds.end()) throw UsageError("unknown jump law " + name);
  return it->second;
}

int run_simulate(const SimulateArgs& a) {
  lipmin::RngStream rng(resolve_seed(a.seed), 0);
  const lipmin::Window w{a.tmin, a.tmax};
  lipmin::Path path = [&]() -> lipmin::Path {
    if (a.process == "brownian") return lipmin::simulate_brownian_two_sided({a.beta, a.sigma}, w, a.dt, rng);
    lipmin::CompoundPoissonDrift spec{a.drift, a.rate, {jump_kind(a.jumps), a.jump_a, a.jump_b}};
    return lipmin::simulate_compound_poisson(spec, w, rng);
  }();
  emit(a.out, [&](std::ostream& o) {
    if (a.format == "csv") lipmin::io::write_path_csv(path, o);
    else lipmin::io::write_path_json(path, o);
  });
  return 0;
}

// ---- minorant ---------------------------------------------------------------

struct MinorantArgs {
  std::string in, out;
  double alpha = 1.0;
  std::optional<double> tol;
};

lipmin::ContactTimes contacts_of(const lipmin::Path& path, const lipmin::MinorantResult& m, double tol,
                                 double buffer = 0.0) {
  return std::visit([&](const auto& p) { return lipmin::extract_contact_set(p, m, tol, buffer); }, path);
}

int run_minorant(const MinorantArgs& a) {
  const auto path = load_path(a.in);
  auto m = lipmin::compute_minorant(path, a.alpha);
  const auto c = contacts_of(path, m, a.tol.value_or(0.0));
  m.contacts = c.indices;
  emit(a.out, [&](std::ostream& o) { lipmin::io::write_minorant_json(m, o); });
  return 0;
}

// ---- excursions -------------------------------------------------------------

struct ExcursionArgs {
  std::string in, out;
  double alpha = 1.0;
  std::optional<double> tol;
  double buffer = 0.0;
};

int run_excursions(const ExcursionArgs& a) {
  const auto path = load_path(a.in);
  const auto* grid = std::get_if<lipmin::GridPath>(&path);
  if (!grid) throw UsageError("excursions needs a grid path");
  const auto m = lipmin::compute_minorant(*grid, a.alpha);
  const auto c = lipmin::extract_contact_set(*grid, m, a.tol.value_or(0.0));
  const auto batch = lipmin::extract_generic_excursions(*grid, c, a.buffer);
  emit(a.out, [&](std::ostream& o) {
    o.precision(17);
    o << "start,zeta,L,w_zeta,h\n";
    for (const auto& e : batch.excursions) {
      const auto f = lipmin::excursion_features(e, a.alpha);
      o << e.start << ',' << f.zeta << ',' << f.L << ',' << f.w_zeta << ',' << f.h << '\n';
    }
  });
  if (batch.too_few_contacts) std::cerr << "warning: fewer than two usable contacts\n";
  return 0;
}

// ---- sample-excursion -------------------------------------------------------

struct SampleArgs {
  double alpha = 1.0, beta = 0.0, dt = 1e-3;
  std::size_t n = 1000;
  std::string mode = "features";
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_sample(const SampleArgs& a) {
  const lipmin::LawParams p{a.alpha, a.beta};
  p.validate();
  const lipmin::RngStream root(resolve_seed(a.seed), 0);
  emit(a.out, [&](std::ostream& o) {
    o.precision(17);
    if (a.mode == "features") {
      write_features_header(o);
      for (std::size_t i = 0; i < a.n; ++i) {
        auto rng = root.split(i);
        write_features_row(o, lipmin::sample_features_direct(p, rng));
      }
      return;
    }
    o << "excursion,t,x\n";
    for (std::size_t i = 0; i < a.n; ++i) {
      auto rng = root.split(i);
      const auto s = lipmin::sample_generic_excursion(p, a.dt, rng);
      for (std::size_t k = 0; k < s.path.times.size(); ++k)
        o << i << ',' << s.path.times[k] << ',' << s.path.values[k] << '\n';
    }
  });
  return 0;
}

// ---- laws eval --------------------------------------------------------------

struct LawQuery {
  std::string quantity;
  double alpha = 1.0, beta = 0.0;
  std::optional<double> at, at2;
  std::vector<double> rho;
};

double need(const std::optional<double>& v, const char* flag) {
  if (!v) throw UsageError(std::string("this quantity needs --") + flag);
  return *v;
}

double eval_law(const LawQuery& q) {
  using lipmin::FeatureKind;
  const lipmin::LawParams p{q.alpha, q.beta};
  p.validate();
  static const std::map<std::string, FeatureKind> densities{{"zeta-density", FeatureKind::Zeta},
                                                            {"L-density", FeatureKind::LPeak},
                                                            {"zeta-minus-L-density", FeatureKind::ZetaMinusL}};
  static const std::map<std::string, FeatureKind> laplaces{{"zeta-laplace", FeatureKind::Zeta},
                                                           {"L-laplace", FeatureKind::LPeak},
                                                           {"zeta-minus-L-laplace", FeatureKind::ZetaMinusL},
                                                           {"w-zeta-laplace", FeatureKind::WZeta}};
  if (const auto it = densities.find(q.quantity); it != densities.end())
    return lipmin::feature_density(it->second, p, need(q.at, "at"));
  if (const auto it = laplaces.find(q.quantity); it != laplaces.end())
    return lipmin::feature_laplace(it->second, p, need(q.at, "at"));
  if (q.quantity == "psi") {
    if (q.rho.size() != 4) throw UsageError("psi needs four --rho values");
    return lipmin::psi_joint_laplace(p, q.rho[0], q.rho[1], q.rho[2], q.rho[3]);
  }
  if (q.quantity == "tau-gamma") return lipmin::joint_density_tau_gamma(p, need(q.at, "at"), need(q.at2, "at2"));
  if (q.quantity == "frak-T-density") return lipmin::density_frak_T(p, need(q.at, "at"));
  if (q.quantity == "gamma-given-tau") return lipmin::conditional_density_gamma(p, need(q.at, "at"), need(q.at2, "at2"));
  if (q.quantity == "last-exit-laplace") return lipmin::last_exit_laplace(p, need(q.at, "at"));
  if (q.quantity == "hitting-density") return lipmin::hitting_time_law(q.alpha + q.beta, need(q.at2, "at2")).density(need(q.at, "at"));
  if (q.quantity == "levy-density") return lipmin::levy_measure_density(q.alpha, need(q.at, "at"));
  const auto m = lipmin::mean_features(p);
  if (q.quantity == "mean-zeta") return m.zeta;
  if (q.quantity == "mean-L") return m.L;
  if (q.quantity == "mean-zeta-minus-L") return m.zeta_minus_L;
  if (q.quantity == "mean-w-zeta") return m.w_zeta;
  throw UsageError("unknown quantity " + q.quantity);
}

constexpr const char* kQuantities =
    "zeta-density, L-density, zeta-minus-L-density, zeta-laplace, L-laplace, zeta-minus-L-laplace, "
    "w-zeta-laplace, psi (--rho x4), tau-gamma (--at t --at2 x), frak-T-density, gamma-given-tau "
    "(--at x --at2 t), last-exit-laplace, hitting-density (--at t --at2 level, drift alpha+beta), levy-density, "
    "mean-zeta, mean-L, mean-zeta-minus-L, mean-w-zeta";

std::optional<double> opt_number(const ordered_json& j, const char* key) {
  if (!j.contains(key)) return std::nullopt;
  return j.at(key).get<double>();
}

// Batch input: array of objects with the same keys as the flags.
int run_laws_batch(const std::string& file, const std::string& out) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read " + file);
  ordered_json queries;
  try {
    queries = ordered_json::parse(in);
  } catch (const ordered_json::exception& e) {
    throw UsageError(std::string("batch file is not valid JSON: ") + e.what());
  }
  if (!queries.is_array()) throw UsageError("batch file must hold a JSON array");
  ordered_json results = ordered_json::array();
  for (const auto& j : queries) {
    LawQuery q;
    q.quantity = j.at("quantity").get<std::string>();
    q.alpha = j.value("alpha", 1.0);
    q.beta = j.value("beta", 0.0);
    q.at = opt_number(j, "at");
    q.at2 = opt_number(j, "at2");
    if (j.contains("rho")) q.rho = j.at("rho").get<std::vector<double>>();
    ordered_json r = j;
    try {
      r["value"] = eval_law(q);
    } catch (const UsageError&) {
      throw;
    } catch (const std::exception& e) {
      r["error"] = e.what();
    }
    results.push_back(std::move(r));
  }
  emit(out, [&](std::ostream& o) { o << results.dump(2) << '\n'; });
  return 0;
}

// ---- azema ------------------------------------------------------------------

struct AzemaArgs {
  double alpha = 1.0, beta = 0.0, dt = 1e-3;
  std::size_t n = 10000;
  std::vector<double> t{0.1, 0.5, 1.0, 2.0};
  std::optional<std::uint64_t> seed;
  std::string report;
};

int run_azema(const AzemaArgs& a) {
  const lipmin::LawParams p{a.alpha, a.beta};
  const std::uint64_t seed = resolve_seed(a.seed);
  lipmin::RngStream rng(seed, 0);
  lipmin::SurvivalOptions opt;
  opt.dt = a.dt;
  const auto curve = lipmin::survival_curve(p, a.t, a.n, rng, opt);
  std::printf("%8s %12s %12s %12s %12s\n", "t", "P(D>t)", "se", "mean Z", "se");
  ordered_json j;
  j["alpha"] = a.alpha;
  j["beta"] = a.beta;
  j["n"] = a.n;
  j["seed"] = seed;
  j["dt"] = a.dt;
  j["redrawn"] = curve.truncated;
  j["points"] = ordered_json::array();
  for (const auto& pt : curve.points) {
    std::printf("%8.4g %12.6f %12.6f %12.6f %12.6f\n", pt.t, pt.survival, pt.survival_se, pt.mean_Z, pt.mean_Z_se);
    j["points"].push_back({{"t", pt.t},
                           {"survival", pt.survival},
                           {"survival_se", pt.survival_se},
                           {"mean_Z", pt.mean_Z},
                           {"mean_Z_se", pt.mean_Z_se},
                           {"difference_se", pt.diff_se}});
  }
  if (!a.report.empty()) emit(a.report, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
  return 0;
}

// ---- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::string suite = "all";
  std::size_t n = 10000;
  std::optional<std::uint64_t> seed;
  std::string report;
  bool timing = false;
};

int run_verify(const VerifyArgs& a) {
  if (!lipmin::is_suite_name(a.suite)) throw UsageError("unknown suite " + a.suite);
  lipmin::SuiteOptions opt;
  opt.on_done = [](const lipmin::CriterionOutcome& c) {
    std::printf("C%-2d %-4s %s%s\n", c.id, c.pass ? "PASS" : "FAIL", c.title.c_str(), c.rerun ? " (rerun)" : "");
    std::fflush(stdout);
  };
  const auto r = lipmin::run_suite(a.suite, a.n, resolve_seed(a.seed), opt);
  if (!a.report.empty()) emit(a.report, [&](std::ostream& o) { o << lipmin::report_to_json(r, a.timing); });
  std::printf("overall: %s\n", r.pass ? "PASS" : "FAIL");
  return r.pass ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lipschitz minorants of Levy paths: simulation, laws and verification"};
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "simulate a two-sided path");
  simulate->add_option("--process", sim.process, "brownian or cpp")->check(CLI::IsMember({"brownian", "cpp"}));
  simulate->add_option("--beta", sim.beta, "Brownian drift");
  simulate->add_option("--sigma", sim.sigma, "Brownian volatility");
  simulate->add_option("--drift", sim.drift, "compound Poisson linear drift");
  simulate->add_option("--rate", sim.rate, "compound Poisson jump rate");
  simulate->add_option("--jumps", sim.jumps, "constant, normal, exponential, uniform, cauchy or pareto");
  simulate->add_option("--jump-a", sim.jump_a, "first jump law parameter");
  simulate->add_option("--jump-b", sim.jump_b, "second jump law parameter");
  simulate->add_option("--tmin", sim.tmin, "left window edge");
  simulate->add_option("--tmax", sim.tmax, "right window edge");
  simulate->add_option("--dt", sim.dt, "grid step (Brownian)");
  simulate->add_option("--seed", sim.seed, "seed (default LIPMIN_SEED)");
  simulate->add_option("--format", sim.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  simulate->add_option("--out", sim.out, "output file (default stdout)");

  MinorantArgs mino;
  auto* minorant = app.add_subcommand("minorant", "alpha-Lipschitz minorant and contacts of a path");
  minorant->add_option("--in", mino.in, "path JSON")->required();
  minorant->add_option("--alpha", mino.alpha, "Lipschitz constant")->required();
  minorant->add_option("--tol", mino.tol, "contact tolerance (default 0)");
  minorant->add_option("--out", mino.out, "output file (default stdout)");

  ExcursionArgs exc;
  auto* excursions = app.add_subcommand("excursions", "features of the excursions of a grid path, as CSV");
  excursions->add_option("--in", exc.in, "path JSON")->required();
  excursions->add_option("--alpha", exc.alpha, "Lipschitz constant")->required();
  excursions->add_option("--tol", exc.tol, "contact tolerance (default 0)");
  excursions->add_option("--buffer", exc.buffer, "drop excursions this close to the window edges");
  excursions->add_option("--out", exc.out, "output file (default stdout)");

  SampleArgs smp;
  auto* sample = app.add_subcommand("sample-excursion", "draw generic excursions");
  sample->add_option("--alpha", smp.alpha, "Lipschitz constant");
  sample->add_option("--beta", smp.beta, "Brownian drift");
  sample->add_option("--n", smp.n, "number of excursions");
  sample->add_option("--mode", smp.mode, "features or path")->check(CLI::IsMember({"features", "path"}));
  sample->add_option("--dt", smp.dt, "grid step in path mode");
  sample->add_option("--seed", smp.seed, "seed (default LIPMIN_SEED)");
  sample->add_option("--out", smp.out, "CSV output (default stdout)");

  LawQuery law;
  std::string batch, batch_out;
  auto* laws = app.add_subcommand("laws", "closed-form laws");
  laws->require_subcommand(1);
  auto* eval = laws->add_subcommand("eval", "evaluate one quantity, or a JSON batch");
  eval->add_option("--quantity", law.quantity, kQuantities);
  eval->add_option("--alpha", law.alpha, "Lipschitz constant");
  eval->add_option("--beta", law.beta, "Brownian drift");
  eval->add_option("--at", law.at, "argument");
  eval->add_option("--at2", law.at2, "second argument");
  eval->add_option("--rho", law.rho, "four Laplace arguments for psi")->expected(4);
  eval->add_option("--batch", batch, "JSON array of queries");
  eval->add_option("--out", batch_out, "batch output file (default stdout)");

  AzemaArgs az;
  auto* azema = app.add_subcommand("azema", "P(D > t) against the Azema supermartingale");
  azema->add_option("--alpha", az.alpha, "Lipschitz constant");
  azema->add_option("--beta", az.beta, "Brownian drift (only 0 is supported)");
  azema->add_option("--n", az.n, "number of paths (>= 1000)");
  azema->add_option("--t", az.t, "comma-separated times")->delimiter(',');
  azema->add_option("--dt", az.dt, "grid step");
  azema->add_option("--seed", az.seed, "seed (default LIPMIN_SEED)");
  azema->add_option("--report", az.report, "JSON report file");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("--suite", ver.suite, "minorant, laws, samplers, straddle, azema or all");
  verify->add_option("--n", ver.n, "replicate scale (10000 = full size)");
  verify->add_option("--seed", ver.seed, "seed (default LIPMIN_SEED)");
  verify->add_option("--report", ver.report, "JSON report file");
  verify->add_flag("--timing", ver.timing, "include wall times in the report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*simulate) return run_simulate(sim);
    if (*minorant) return run_minorant(mino);
    if (*excursions) return run_excursions(exc);
    if (*sample) return run_sample(smp);
    if (*eval) {
      if (!batch.empty()) return run_laws_batch(batch, batch_out);
      if (law.quantity.empty()) throw UsageError("--quantity or --batch is required");
      std::printf("%.17g\n", eval_law(law));
      return 0;
    }
    if (*azema) return run_azema(az);
    if (*verify) return run_verify(ver);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const lipmin::DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const lipmin::UnsupportedError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
