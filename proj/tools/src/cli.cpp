#include "cbl_cli/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "cbl/errors.hpp"
#include "cbl/exact.hpp"
#include "cbl/limit_law.hpp"
#include "cbl/mc.hpp"
#include "cbl/model.hpp"
#include "cbl/serialize.hpp"
#include "cbl/spectral.hpp"
#include "cbl/version.hpp"
#include "cbl_cli/output.hpp"

namespace cbl::cli {

namespace {

using nlohmann::json;

/// Bad input detected after argument parsing.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string params_file;
  std::string out_dir;
  std::string format = "json";
  std::string sizes;
  std::uint64_t seed = 0;
  double tol = kTolCritical;

  // find-critical
  double alpha = 0.5, j11 = 0, j22 = 0;
  int sign = 1;
  // exact-dist
  std::string what = "pmf";
  // simulate
  std::string method = "glauber";
  std::int64_t sweeps = 10000;
  std::int64_t burn_in = -1;
  std::int64_t thinning = 1;
  int chains = 1;
  std::size_t draws = 100000;
  // limit-law
  double xi1 = 0, xi2 = 0;
  // curves, limit-law
  int points = 0;
  int grid = 100000;
};

ModelParams load_params(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open parameter file '" + path + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError("malformed JSON in '" + path + "': " + e.what());
  }
  try {
    return j.get<ModelParams>();
  } catch (const DomainError& e) {
    throw UsageError(std::string("invalid parameters: ") + e.what());
  }
}

std::vector<SystemSize> parse_sizes(const std::string& text, double alpha) {
  std::vector<SystemSize> out;
  std::stringstream ss(text);
  std::string item;
  auto to_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw UsageError("bad size '" + s + "' in --sizes");
    return v;
  };
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    SystemSize sz;
    try {
      sz = colon == std::string::npos
               ? SystemSize::split(to_int(item), alpha)
               : SystemSize{to_int(item.substr(0, colon)), to_int(item.substr(colon + 1))};
      sz.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--sizes: ") + e.what());
    }
    out.push_back(sz);
  }
  if (out.empty()) throw UsageError("--sizes is empty");
  return out;
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  void set_command(std::string name, json config) {
    command_ = std::move(name);
    config_ = std::move(config);
  }

  /// JSON result: written to --out as <stem>.json, else printed in --format.
  void emit_json(const std::string& stem, const json& j) {
    if (!o_.out_dir.empty()) {
      std::ostringstream os;
      write_json(os, j);
      emit_file(o_.out_dir, stem + ".json", os.str(), command_, config_);
    } else if (o_.format == "csv") {
      write_flat_csv(out_, j);
    } else {
      write_json(out_, j);
    }
  }

  void emit_csv(const std::string& stem, const CsvTable& t) {
    std::ostringstream os;
    t.write(os);
    if (!o_.out_dir.empty()) {
      emit_file(o_.out_dir, stem + ".csv", os.str(), command_, config_);
    } else {
      out_ << os.str();
    }
  }

  /// Stdout carries either the tables (csv) or the JSON summary (json).
  bool tables_to_stdout() const { return o_.out_dir.empty() && o_.format == "csv"; }
  bool json_to_stdout() const { return o_.out_dir.empty() && o_.format == "json"; }
  bool to_files() const { return !o_.out_dir.empty(); }

  std::ostream& err() { return err_; }

 private:
  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  std::string command_;
  json config_;
};

json base_config(const Options& o, const ModelParams* p) {
  json c{{"format", o.format}};
  if (p) c["params"] = *p;
  return c;
}

int cmd_analyze(const Options& o, Runner& r) {
  const ModelParams p = load_params(o.params_file);
  json cfg = base_config(o, &p);
  cfg["tol"] = o.tol;
  cfg["grid"] = o.grid;
  r.set_command("analyze", cfg);

  const CriticalityReport rep = check_critical_conditions(p, o.tol);
  json j{{"params", p}, {"criticality", rep}};
  if (p.j12 != 0.0) {
    j["mean_field_solutions"] = count_mean_field_solutions(p, o.grid);
    const SpectralData s = spectral_data(p);
    j["spectral"] = s;
    if (rep.all()) {
      const TransformedModel tm = limit_coefficients(p, s, o.tol);
      j["transformed"] = tm;
      j["limit_moments"] = LimitLaw(tm).moments();
    }
  }
  r.emit_json("analyze", j);
  if (!rep.all()) {
    r.err() << "hypotheses violated:";
    for (const auto& v : rep.violations()) r.err() << " [" << v << "]";
    r.err() << '\n';
    return kHypothesis;
  }
  return kOk;
}

int cmd_find_critical(const Options& o, Runner& r) {
  if (o.sign != 1 && o.sign != -1) throw UsageError("--sign must be 1 or -1");
  json cfg = base_config(o, nullptr);
  cfg.update({{"alpha", o.alpha}, {"j11", o.j11}, {"j22", o.j22}, {"sign", o.sign}});
  r.set_command("find-critical", cfg);
  const ModelParams p = make_critical(o.alpha, o.j11, o.j22, o.sign);
  r.emit_json("params", json(p));
  return kOk;
}

std::optional<TransformedModel> critical_model(const ModelParams& p, const SpectralData& s,
                                               double tol) {
  if (!check_critical_conditions(p, tol).all()) return std::nullopt;
  return limit_coefficients(p, s, tol);
}

std::string size_stem(const std::string& prefix, SystemSize sz) {
  return prefix + "_" + std::to_string(sz.n1) + "_" + std::to_string(sz.n2);
}

int cmd_exact(const Options& o, Runner& r) {
  const ModelParams p = load_params(o.params_file);
  const auto sizes = parse_sizes(o.sizes, p.alpha);
  if (o.what != "pmf" && o.what != "rescaled") throw UsageError("--what must be pmf or rescaled");
  if (sizes.size() > 1 && r.tables_to_stdout())
    throw UsageError("several sizes need --out or --format json");
  json cfg = base_config(o, &p);
  cfg.update({{"sizes", sizes}, {"what", o.what}, {"tol", o.tol}});
  r.set_command("exact-dist", cfg);

  std::optional<SpectralData> s;
  std::optional<TransformedModel> tm;
  if (p.j12 != 0.0) {
    s = spectral_data(p);
    tm = critical_model(p, *s, o.tol);
  } else if (o.what == "rescaled") {
    throw DegenerateHessian("rescaled output needs J12 != 0");
  }

  json all = json::array();
  for (const SystemSize& sz : sizes) {
    const MagnetizationPmf pmf = exact_pmf(p, sz);
    json summary{{"sizes", sz}, {"log_partition", pmf.log_partition()}, {"pressure", pressure(pmf)}};
    WeightedPoints pts;
    if (s) {
      pts = rescaled_transformed_pmf(pmf, *s);
      summary["summary"] = tm ? summarize(pts, *tm) : summarize_moments(pts);
    }
    if (!r.json_to_stdout()) {
      CsvTable t = o.what == "pmf" ? CsvTable({"S1", "S2", "probability"})
                                   : CsvTable({"x1", "x2", "probability"});
      if (o.what == "pmf") {
        for (std::size_t i = 0; i < pmf.rows(); ++i)
          for (std::size_t k = 0; k < pmf.cols(); ++k)
            t.add_row({std::to_string(pmf.k1(i)), std::to_string(pmf.k2(k)),
                       format_double(pmf.probabilities()[pmf.index(i, k)])});
      } else {
        for (const auto& w : pts) t.add_row(std::vector<double>{w.x1, w.x2, w.p});
      }
      r.emit_csv(size_stem("exact", sz), t);
    }
    if (r.to_files()) r.emit_json(size_stem("exact", sz), summary);
    all.push_back(summary);
  }
  if (r.json_to_stdout()) r.emit_json("exact", all);
  return kOk;
}

int cmd_simulate(const Options& o, Runner& r) {
  const ModelParams p = load_params(o.params_file);
  const auto sizes = parse_sizes(o.sizes, p.alpha);
  if (sizes.size() != 1) throw UsageError("simulate takes exactly one size");
  const SystemSize sz = sizes.front();
  if (o.method != "glauber" && o.method != "direct")
    throw UsageError("--method must be glauber or direct");

  json cfg = base_config(o, &p);
  cfg.update({{"sizes", sz}, {"method", o.method}, {"seed", o.seed}});
  SampleBatch batch;
  if (o.method == "glauber") {
    ChainConfig cc{o.seed, o.sweeps, o.burn_in < 0 ? ChainConfig::default_burn_in(sz) : o.burn_in,
                   o.thinning, o.chains};
    try {
      cc.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    cfg["chain"] = cc;
    r.set_command("simulate", cfg);
    batch = run_chains(p, sz, cc);
  } else {
    cfg["draws"] = o.draws;
    r.set_command("simulate", cfg);
    batch = sample_direct(exact_pmf(p, sz), o.draws, o.seed);
  }

  json summary{{"sizes", sz}, {"draws", batch.draws.size()}};
  if (p.j12 != 0.0 && !batch.draws.empty()) {
    const SpectralData s = spectral_data(p);
    WeightedPoints pts;
    pts.reserve(batch.draws.size());
    const double w = 1.0 / static_cast<double>(batch.draws.size());
    const double c1 = std::pow(sz.n1, 0.5), c2 = std::pow(sz.n2, 0.75);
    for (const auto& d : batch.draws) {
      const Vec2 t = transform_magnetization(s, d.s1, d.s2);
      pts.push_back({t[0] / c1, t[1] / c2, w});
    }
    summary["summary"] = summarize_moments(pts);
  }
  const std::size_t lattice = (std::size_t(sz.n1) + 1) * (std::size_t(sz.n2) + 1);
  if (!batch.draws.empty() && lattice <= 4'000'000)
    summary["tv_to_exact"] = total_variation(exact_pmf(p, sz), histogram(batch));

  if (!r.json_to_stdout()) {
    CsvTable t({"chain", "sweep", "S1", "S2"});
    for (const auto& d : batch.draws)
      t.add_row({std::to_string(d.chain), std::to_string(d.sweep), std::to_string(d.s1),
                 std::to_string(d.s2)});
    r.emit_csv(size_stem("simulate", sz), t);
  }
  if (!r.tables_to_stdout()) r.emit_json(size_stem("simulate", sz), summary);
  return kOk;
}

struct ConvergeRow {
  SystemSize sz;
  EmpiricalSummary s;
  double pressure;
};

bool strictly_decreasing(const std::vector<double>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

int cmd_converge(const Options& o, Runner& r) {
  const ModelParams p = load_params(o.params_file);
  auto sizes = parse_sizes(o.sizes, p.alpha);
  std::stable_sort(sizes.begin(), sizes.end(),
                   [](const SystemSize& a, const SystemSize& b) { return a.n() < b.n(); });
  json cfg = base_config(o, &p);
  cfg.update({{"sizes", sizes}, {"tol", o.tol}});
  r.set_command("converge", cfg);

  const SpectralData s = spectral_data(p);
  const auto tm = critical_model(p, s, o.tol);
  const double target_kurt = quartic_kurtosis();
  const double target_var = tm ? tm->d : std::nan("");

  std::vector<ConvergeRow> rows;
  for (const SystemSize& sz : sizes) {
    const MagnetizationPmf pmf = exact_pmf(p, sz);
    const auto pts = rescaled_transformed_pmf(pmf, s);
    rows.push_back({sz, tm ? summarize(pts, *tm) : summarize_moments(pts), pressure(pmf)});
  }

  CsvTable t({"N", "N1", "N2", "var_x1", "kurtosis_x2", "ks_x1", "ks_x2", "pressure",
              "target_var_x1", "target_kurtosis_x2"});
  json jrows = json::array();
  for (const auto& row : rows) {
    t.add_row({std::to_string(row.sz.n()), std::to_string(row.sz.n1), std::to_string(row.sz.n2),
               format_double(row.s.var_x1), format_double(row.s.kurtosis_x2),
               format_double(row.s.ks_x1), format_double(row.s.ks_x2), format_double(row.pressure),
               format_double(target_var), format_double(target_kurt)});
    jrows.push_back({{"sizes", row.sz}, {"summary", row.s}, {"pressure", row.pressure}});
  }

  std::string verdict;
  std::string reason;
  if (rows.size() < 2) {
    verdict = "insufficient points";
    reason = "a trend needs at least two sizes";
  } else if (!tm) {
    verdict = "FAIL";
    reason = "parameters are not critical; the quartic limit law does not apply";
  } else {
    std::vector<double> ks1, ks2, ev, ek;
    for (const auto& row : rows) {
      ks1.push_back(row.s.ks_x1);
      ks2.push_back(row.s.ks_x2);
      ev.push_back(std::fabs(row.s.var_x1 - target_var));
      ek.push_back(std::fabs(row.s.kurtosis_x2 - target_kurt));
    }
    const bool ok = strictly_decreasing(ks1) && strictly_decreasing(ks2) &&
                    strictly_decreasing(ev) && strictly_decreasing(ek);
    verdict = ok ? "PASS" : "FAIL";
    reason = ok ? "KS distances and moment errors strictly decrease with N"
                : "some KS distance or moment error does not decrease with N";
  }

  const json j{{"rows", jrows},
               {"target_var_x1", target_var},
               {"target_kurtosis_x2", target_kurt},
               {"verdict", verdict},
               {"reason", reason}};
  if (!r.json_to_stdout()) r.emit_csv("converge", t);
  if (!r.tables_to_stdout()) r.emit_json("converge", j);
  r.err() << "verdict: " << verdict << " (" << reason << ")\n";
  return kOk;
}

int cmd_limit_law(const Options& o, Runner& r) {
  json cfg = base_config(o, nullptr);
  std::optional<LimitLaw> law;
  if (!o.params_file.empty()) {
    const ModelParams p = load_params(o.params_file);
    cfg["params"] = p;
    cfg["tol"] = o.tol;
    law.emplace(limit_coefficients(p, spectral_data(p), o.tol));
  } else {
    if (!(o.xi1 > 0 && o.xi2 > 0)) throw UsageError("give --params or positive --xi1 and --xi2");
    law.emplace(o.xi1, o.xi2);
  }
  const int points = o.points > 0 ? o.points : 401;
  cfg.update({{"xi1", law->xi1()}, {"xi2", law->xi2()}, {"points", points}});
  r.set_command("limit-law", cfg);

  const LimitMoments m = law->moments();
  const json j{{"xi1", law->xi1()},
               {"xi2", law->xi2()},
               {"log_norm", law->log_norm()},
               {"normalizing_integral", law->normalizing_integral()},
               {"moments", m}};
  if (!r.json_to_stdout()) {
    const double half = 4 * std::max(std::sqrt(m.var_x1), std::sqrt(m.var_x2));
    CsvTable t({"t", "pdf_x1", "cdf_x1", "pdf_x2", "cdf_x2"});
    for (int i = 0; i < points; ++i) {
      const double x = points == 1 ? 0.0 : -half + 2 * half * i / (points - 1);
      t.add_row(std::vector<double>{x, law->pdf_x1(x), law->marginal_cdf_x1(x), law->pdf_x2(x),
                                    law->marginal_cdf_x2(x)});
    }
    r.emit_csv("limit_law", t);
  }
  if (!r.tables_to_stdout()) r.emit_json("limit_law", j);
  return kOk;
}

int cmd_curves(const Options& o, Runner& r) {
  const ModelParams p = load_params(o.params_file);
  const int points = o.points > 0 ? o.points : 1001;
  if (points < 2) throw UsageError("--points must be at least 2");
  json cfg = base_config(o, &p);
  cfg.update({{"points", points}, {"grid", o.grid}});
  r.set_command("curves", cfg);

  if (!r.json_to_stdout()) {
    CsvTable t({"x", "f1", "f2"});
    const double edge = 0.999;
    for (int i = 0; i < points; ++i) {
      const double x = -edge + 2 * edge * i / (points - 1);
      const CurvePoint c = inverted_curves(p, x);
      t.add_row(std::vector<double>{x, c.f1, c.f2});
    }
    r.emit_csv("curves", t);
  }
  if (!r.tables_to_stdout()) {
    const json j{{"params", p}, {"mean_field_solutions", count_mean_field_solutions(p, o.grid)}};
    r.emit_json("curves", j);
  }
  return kOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Two-group mean-field spin model: critical analysis, exact enumeration and sampling",
               "cbl"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* sub, bool params_required) {
    auto* opt = sub->add_option("--params", o.params_file, "JSON file with alpha, j11, j22, j12");
    if (params_required) opt->required();
    sub->add_option("--out", o.out_dir, "write files and .meta.json sidecars into this directory");
    sub->add_option("--format", o.format, "stdout format when --out is absent")
        ->check(CLI::IsMember({"csv", "json"}));
  };

  auto* analyze = app.add_subcommand("analyze", "check the critical hypotheses and report limit coefficients");
  common(analyze, true);
  analyze->add_option("--tol", o.tol, "tolerance on the critical equality");
  analyze->add_option("--grid", o.grid, "grid size for counting mean-field solutions")
      ->check(CLI::Range(1000, 100'000'000));

  auto* find = app.add_subcommand("find-critical", "solve for the critical J12");
  common(find, false);
  find->add_option("--alpha", o.alpha)->required();
  find->add_option("--j11", o.j11)->required();
  find->add_option("--j22", o.j22)->required();
  find->add_option("--sign", o.sign, "sign of J12 (1 or -1)");

  auto* exact = app.add_subcommand("exact-dist", "exact distribution of (S1, S2) by enumeration");
  common(exact, true);
  exact->add_option("--sizes", o.sizes, "comma-separated N or N1:N2")->required();
  exact->add_option("--what", o.what, "pmf (lattice) or rescaled (transformed, rescaled points)");
  exact->add_option("--tol", o.tol, "tolerance on the critical equality");

  auto* sim = app.add_subcommand("simulate", "Glauber chains or direct sampling");
  common(sim, true);
  sim->add_option("--sizes", o.sizes, "one N or N1:N2")->required();
  sim->add_option("--seed", o.seed, "64-bit seed")->required();
  sim->add_option("--method", o.method, "glauber or direct");
  sim->add_option("--sweeps", o.sweeps, "sweeps per chain including burn-in");
  sim->add_option("--burn-in", o.burn_in, "burn-in sweeps (default 10 N)");
  sim->add_option("--thinning", o.thinning);
  sim->add_option("--chains", o.chains);
  sim->add_option("--draws", o.draws, "number of draws for --method direct");

  auto* conv = app.add_subcommand("converge", "convergence table of exact statistics across sizes");
  common(conv, true);
  conv->add_option("--sizes", o.sizes, "comma-separated N or N1:N2")->required();
  conv->add_option("--tol", o.tol, "tolerance on the critical equality");

  auto* law = app.add_subcommand("limit-law", "moments and density/CDF tables of the limit law");
  common(law, false);
  law->add_option("--xi1", o.xi1);
  law->add_option("--xi2", o.xi2);
  law->add_option("--points", o.points, "rows of the density table");
  law->add_option("--tol", o.tol, "tolerance on the critical equality");

  auto* curves = app.add_subcommand("curves", "tables of the two inverted mean-field curves");
  common(curves, true);
  curves->add_option("--points", o.points, "rows of the curve table");
  curves->add_option("--grid", o.grid, "grid size for counting mean-field solutions")
      ->check(CLI::Range(1000, 100'000'000));

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Runner r(o, out, err);
  try {
    if (analyze->parsed()) return cmd_analyze(o, r);
    if (find->parsed()) return cmd_find_critical(o, r);
    if (exact->parsed()) return cmd_exact(o, r);
    if (sim->parsed()) return cmd_simulate(o, r);
    if (conv->parsed()) return cmd_converge(o, r);
    if (law->parsed()) return cmd_limit_law(o, r);
    if (curves->parsed()) return cmd_curves(o, r);
    return kUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const GridTooCoarse& e) {
    err << "error: " << e.what() << " (increase --grid)\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kBudget;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const Error& e) {
    err << "hypothesis violated: " << e.what() << '\n';
    return kHypothesis;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  }
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  return run_cli(std::vector<std::string>(argv, argv + argc), out, err);
}

}  // namespace cbl::cli
