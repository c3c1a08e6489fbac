#include "commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <memory>
#include <sstream>

#include "CLI11.hpp"
#include "cfou/bridges.hpp"
#include "cfou/errors.hpp"
#include "cfou/estimator.hpp"
#include "cfou/expansions.hpp"
#include "cfou/fou.hpp"
#include "cfou/kernels.hpp"
#include "cfou/parallel.hpp"
#include "cfou/report_io.hpp"

namespace cfou::cli {

using nlohmann::json;

namespace {

// Primary output: the out_path file, or the given stream.
class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : os_(&fallback) {
    if (path.empty()) return;
    file_ = std::make_unique<std::ofstream>(path);
    if (!*file_) throw std::runtime_error("cannot open output '" + path + "'");
    os_ = file_.get();
  }
  std::ostream& stream() { return *os_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* os_;
};

DriftParam drift(const ExperimentConfig& c) { return DriftParam(c.real("gamma.lambda"), c.real("gamma.omega")); }

io::Metadata metadata(const ExperimentConfig& c) { return io::Metadata{c.to_json(), c.seed(), true}; }

json json_envelope(const ExperimentConfig& c, json report) {
  return {{"tool", std::string("cfou ") + io::kToolVersion},
          {"config", c.to_json()},
          {"seed", c.seed()},
          {"timestamp", io::utc_timestamp()},
          {"report", std::move(report)}};
}

// Writes either the CSV (with metadata) or the JSON envelope, per format.
template <class CsvWriter>
void emit(const ExperimentConfig& c, std::ostream& out, const json& report, CsvWriter&& csv) {
  Output o(c.text("out_path"), out);
  auto& os = o.stream();
  if (c.text("format") == "json") {
    os << json_envelope(c, report).dump(2) << '\n';
    return;
  }
  io::write_metadata(os, metadata(c));
  const auto old = os.precision(17);
  csv(os);
  os.precision(old);
}

json pair(cplx z) { return json::array({z.real(), z.imag()}); }

void run_simulate(const ExperimentConfig& c, std::ostream& out) {
  const UniformGrid grid(c.real("t_end"), c.count("n_steps"));
  const auto path = fou::simulate_fou(drift(c), HurstParam(c.real("hurst")), grid, Seed{c.seed(), 0});
  json vals = json::array();
  for (const auto& z : path.values) vals.push_back(pair(z));
  emit(c, out, {{"t_end", grid.t_end}, {"n", grid.n}, {"z", vals}}, [&](std::ostream& os) {
    os << "t,z_re,z_im\n";
    for (std::size_t k = 0; k < path.values.size(); ++k)
      os << grid.node(k) << ',' << path.values[k].real() << ',' << path.values[k].imag() << '\n';
  });
}

void run_estimate(const ExperimentConfig& c, std::ostream& out) {
  const UniformGrid grid(c.real("t_end"), c.count("n_steps"));
  const DriftParam g = drift(c);
  const HurstParam h(c.real("hurst"));
  const auto path = fou::simulate_fou(g, h, grid, Seed{c.seed(), 0});
  const std::string method = c.text("method");
  const cplx est = method == "forward" ? estimator::lse_gamma(path) : estimator::lse_gamma_divergence(path, g, h);
  emit(c, out, {{"t_end", grid.t_end}, {"n", grid.n}, {"method", method}, {"gamma_hat", pair(est)}},
       [&](std::ostream& os) {
         os << "T,n,method,re_gamma_hat,im_gamma_hat\n";
         os << grid.t_end << ',' << grid.n << ',' << method << ',' << est.real() << ',' << est.imag() << '\n';
       });
}

void run_mc(const ExperimentConfig& c, std::ostream& out) {
  estimator::McConfig mc;
  mc.gamma = drift(c);
  mc.h = HurstParam(c.real("hurst"));
  mc.t_list = c.real_list("t_list");
  mc.n_steps = c.count("n_steps");
  mc.n_reps = c.count("n_reps");
  mc.seed = c.seed();
  mc.numerator = c.text("method") == "forward" ? estimator::Numerator::Forward : estimator::Numerator::Divergence;
  const auto rep = estimator::run_mc_experiment(mc);
  json report = {{"mc", io::to_json(rep)}};
  if (rep.has_target) {
    report["constants"] = io::to_json(estimator::asymptotic_constants(mc.gamma, mc.h));
    if (rep.n_reps >= 200) report["diagnostics"] = io::to_json(estimator::normality_diagnostics(rep));
  }
  emit(c, out, report, [&](std::ostream& os) { io::write_mc_estimates_csv(os, rep, mc.gamma); });
  // with a CSV file, the structured report goes next to it
  const std::string path = c.text("out_path");
  if (c.text("format") == "csv" && !path.empty()) {
    std::filesystem::path jp(path);
    jp.replace_extension(".json");
    if (jp == std::filesystem::path(path)) jp += ".report.json";
    std::ofstream js(jp);
    if (!js) throw std::runtime_error("cannot open output '" + jp.string() + "'");
    js << json_envelope(c, report).dump(2) << '\n';
  }
}

json table_json(const kernels::ConvergenceTable& t) {
  json rows = json::array();
  for (const auto& r : t.rows)
    rows.push_back({{"T", r.t_end},
                    {"n", r.n},
                    {"estimate", pair(r.estimate)},
                    {"target", pair(r.target)},
                    {"residual", r.residual}});
  return rows;
}

void run_verify_kernels(const ExperimentConfig& c, std::ostream& out) {
  const DriftParam g = drift(c);
  const HurstParam h(c.real("hurst"));
  const std::string mode = c.text("mode");
  if (mode == "reduction") {
    const double T = c.real("t_end");
    const auto r = kernels::reduction_cross_check(g, h, T);
    emit(c, out,
         {{"T", T}, {"a1", r.a1}, {"a2", r.a2}, {"a3", r.a3}, {"reduced", r.reduced}, {"direct", r.direct},
          {"rel_gap", r.rel_gap}},
         [&](std::ostream& os) {
           os << "T,a1,a2,a3,reduced,direct,rel_gap\n";
           os << T << ',' << r.a1 << ',' << r.a2 << ',' << r.a3 << ',' << r.reduced << ',' << r.direct << ','
              << r.rel_gap << '\n';
         });
    return;
  }
  kernels::ConvergenceTable tab;
  json extra = json::object();
  if (mode == "drift" || mode == "inner") {
    const auto q = mode == "drift" ? kernels::DriftQuantity::NormPsi : kernels::DriftQuantity::InnerPsiHh;
    tab = kernels::linear_drift_table(q, g, h, c.real_list("t_list"));
    extra["slope"] = pair(tab.slope());
  } else if (mode == "divergence") {
    tab = kernels::divergence_probe(h, g, c.real("t_end"), c.count_list("n_list"), h.h > 0.25);
    extra["growth_ratio"] = tab.growth_ratio();
  } else {
    auto ts = c.real_list("t_list");
    std::sort(ts.begin(), ts.end());
    const std::size_t n = c.count("n_steps");
    for (double T : ts) tab.rows.push_back({T, n, kernels::contraction_norm(g, h, T, n), 0.0, 0.0});
  }
  extra["rows"] = table_json(tab);
  emit(c, out, extra, [&](std::ostream& os) { tab.write_csv(os); });
}

void run_verify_quad(const ExperimentConfig& c, std::ostream& out) {
  const DriftParam g = drift(c);
  const HurstParam h(c.real("hurst"));
  const double b = 2.0 * h.h - 1.0;
  struct Row {
    std::string name;
    double a1, a2, T;
    quad::ExpansionResult r;
  };
  std::vector<Row> rows;
  for (double T : c.real_list("t_list")) {
    rows.push_back({"key0", b, 0.0, T, quad::asym_key0(b, T)});
    rows.push_back({"key", b, b, T, quad::asym_key(b, b, T)});
    rows.push_back({"key", b, -1.0 - b, T, quad::asym_key(b, -1.0 - b, T)});
    rows.push_back({"coro_xz", b, 2.0 * h.h, T, quad::asym_coro(g, h, T, quad::CoroIntegral::XZ)});
    rows.push_back({"coro_zx", 2.0 * h.h, b, T, quad::asym_coro(g, h, T, quad::CoroIntegral::ZX)});
    rows.push_back({"coro_weighted", b, 2.0 * h.h, T, quad::asym_coro(g, h, T, quad::CoroIntegral::Weighted)});
  }
  json jr = json::array();
  for (const auto& r : rows)
    jr.push_back({{"integral", r.name},
                  {"alpha1", r.a1},
                  {"alpha2", r.a2},
                  {"T", r.T},
                  {"quadrature", pair(r.r.value_quadrature)},
                  {"expansion", pair(r.r.value_expansion)},
                  {"abs_gap", r.r.abs_gap}});
  emit(c, out, {{"rows", jr}}, [&](std::ostream& os) {
    os << "integral,alpha1,alpha2,T,quadrature_re,quadrature_im,expansion_re,expansion_im,abs_gap\n";
    for (const auto& r : rows)
      os << r.name << ',' << r.a1 << ',' << r.a2 << ',' << r.T << ',' << r.r.value_quadrature.real() << ','
         << r.r.value_quadrature.imag() << ',' << r.r.value_expansion.real() << ',' << r.r.value_expansion.imag()
         << ',' << r.r.abs_gap << '\n';
  });
}

void run_bridge(const ExperimentConfig& c, std::ostream& out) {
  const HurstParam h(c.real("hurst"));
  const bridges::BridgeParams p{h, c.real("alpha"), c.real("t_end")};
  bridges::MomentOptions opts;
  opts.mc_steps = c.count("n_steps");
  opts.mc_reps = c.count("n_reps");
  opts.seed = c.seed();
  const std::string m = c.text("method");
  auto tab = bridges::moment_table(p, m == "closed" || m == "all", m == "quadrature" || m == "all",
                                   m == "mc" || m == "all", opts);
  if (c.has("g_exp")) {
    const double ge = c.real("g_exp");
    const double nan = std::numeric_limits<double>::quiet_NaN();
    bridges::MomentRow row{"bridge_second_moment", nan, nan, nan, 0.0};
    if (m != "mc") {
      row.closed_form = bridges::bridge_second_moment(h, ge);
      row.quadrature = bridges::bridge_second_moment_limit(h, ge, p.t_end).limit;
      row.rel_gap = std::abs(row.closed_form - row.quadrature) / std::min(row.closed_form, row.quadrature);
    }
    tab.rows.push_back(row);
  }
  json jr = json::array();
  auto num = [](double v) { return std::isnan(v) ? json(nullptr) : json(v); };
  for (const auto& r : tab.rows)
    jr.push_back({{"quantity", r.quantity},
                  {"closed_form", num(r.closed_form)},
                  {"quadrature", num(r.quadrature)},
                  {"monte_carlo", num(r.monte_carlo)},
                  {"rel_gap", r.rel_gap}});
  emit(c, out, {{"rows", jr}}, [&](std::ostream& os) { tab.write_csv(os); });
}

std::string one_line(std::string s) {
  for (auto& ch : s)
    if (ch == '\n' || ch == '\r') ch = ' ';
  return s;
}

int fail(std::ostream& err, int code, const std::string& kind, const std::string& msg) {
  err << "cfou: error kind=" << kind << " code=" << code << ": " << one_line(msg) << '\n';
  return code;
}

std::string command_help(Command c) {
  switch (c) {
    case Command::Simulate:
      return "simulate one complex fOU path";
    case Command::Estimate:
      return "least-squares drift estimate from one simulated path";
    case Command::Mc:
      return "Monte Carlo study of the drift estimator";
    case Command::VerifyKernels:
      return "tensor-norm drift, divergence, contraction and reduction checks";
    case Command::VerifyQuad:
      return "quadrature against asymptotic expansions";
    case Command::Bridge:
      return "second moments of the Volterra-type bridge functionals";
  }
  return "";
}

void apply_threads(int flag) {
  int n = flag;
  if (n <= 0) {
    if (const char* env = std::getenv("CFOU_THREADS"); env && *env) {
      char* end = nullptr;
      const long v = std::strtol(env, &end, 10);
      if (*end != '\0' || v < 1 || v > 4096) throw DomainError("CFOU_THREADS must be a positive integer");
      n = static_cast<int>(v);
    }
  }
  if (n > 0) par::set_threads(n);
}

}  // namespace

void dispatch(const ExperimentConfig& cfg, std::ostream& out) {
  switch (cfg.command) {
    case Command::Simulate:
      return run_simulate(cfg, out);
    case Command::Estimate:
      return run_estimate(cfg, out);
    case Command::Mc:
      return run_mc(cfg, out);
    case Command::VerifyKernels:
      return run_verify_kernels(cfg, out);
    case Command::VerifyQuad:
      return run_verify_quad(cfg, out);
    case Command::Bridge:
      return run_bridge(cfg, out);
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Complex fractional Ornstein-Uhlenbeck toolkit", "cfou"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: CFOU_THREADS or all cores)")
      ->check(CLI::Range(1, 4096));
  app.set_version_flag("--version", std::string("cfou ") + io::kToolVersion);

  std::map<std::string, std::string> flags;
  std::string config_path;
  std::map<CLI::App*, Command> subs;
  for (Command c : all_commands()) {
    CLI::App* sub = app.add_subcommand(command_name(c), command_help(c));
    sub->add_option("--config", config_path, "JSON config, or an output file with an embedded config");
    for (const auto& k : command_keys(c)) {
      const std::string name = k.name;
      sub->add_option_function<std::string>(k.flag, [&flags, name](const std::string& v) { flags[name] = v; }, k.help);
    }
    subs[sub] = c;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    return fail(err, kValidation, "validation", e.what());
  }

  try {
    Command cmd = Command::Simulate;
    for (const auto& [sub, c] : subs)
      if (sub->parsed()) cmd = c;
    apply_threads(threads);
    json base;
    if (!config_path.empty()) base = load_config_file(config_path);
    const ExperimentConfig cfg = resolve(cmd, base, flags);
    dispatch(cfg, out);
    return kOk;
  } catch (const DomainError& e) {
    return fail(err, kValidation, "validation", e.what());
  } catch (const AccuracyError& e) {
    return fail(err, kNumerical, "accuracy", e.what());
  } catch (const DegenerateError& e) {
    return fail(err, kNumerical, "degenerate", e.what());
  } catch (const SynthesisError& e) {
    return fail(err, kNumerical, "synthesis", e.what());
  } catch (const std::exception& e) {
    return fail(err, kInternal, "internal", e.what());
  }
}

}  // namespace cfou::cli
