// Experiment runner: every subcommand parses its inputs, drives the library,
// and writes reports atomically. This is the only translation unit with side
// effects; reruns with the same config and seed produce byte-identical files.

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mrproj/acceptance.hpp"
#include "mrproj/config.hpp"
#include "mrproj/corpus.hpp"
#include "mrproj/czd.hpp"
#include "mrproj/lpverify.hpp"
#include "mrproj/report.hpp"
#include "mrproj/rng.hpp"
#include "mrproj/scaling.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mrproj;

namespace {

constexpr int kExitFailure = 1;   // a verified property does not hold
constexpr int kExitUsage = 2;     // bad flags, config, or input files
constexpr int kExitNoInputs = 3;  // corpus resolved to nothing

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --out-dir flag beats the MRPROJ_OUT environment override beats the config.
std::string resolve_out_dir(const std::string& flag, const std::string& from_config) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("MRPROJ_OUT"); env && *env) return env;
  return from_config.empty() ? "out" : from_config;
}

void write_report(const std::string& dir, const std::string& name,
                  const std::string& content) {
  fs::create_directories(dir);
  write_atomic((fs::path(dir) / name).string(), content);
}

std::string join(const std::vector<std::string>& parts, char sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out.push_back(sep);
    out += parts[i];
  }
  return out;
}

std::string cap_str(const MultiIndex& k) {
  std::string out;
  for (std::size_t i = 0; i < k.size(); ++i) {
    if (i) out.push_back(';');
    out += std::to_string(k[i]);
  }
  return out;
}

// A parsed config plus everything derived from it once per run.
struct Experiment {
  ExperimentConfig cfg;
  std::string hash;  // of the raw config bytes, stamped on every row
  TensorContext ctx;
  std::string out_dir;
};

Experiment load_experiment(const std::string& config_path, const std::string& out_flag) {
  Experiment ex;
  const std::string raw = read_file(config_path);
  ex.cfg = parse_config_text(raw);
  ex.hash = hex16(fnv1a64(raw));
  ex.out_dir = resolve_out_dir(out_flag, ex.cfg.out_dir);

  const std::int64_t lo = std::llround(std::ldexp(ex.cfg.box_lo, ex.cfg.J));
  const std::int64_t hi = std::llround(std::ldexp(ex.cfg.box_hi, ex.cfg.J));
  const DyadicGrid box{ex.cfg.J, lo, hi, ex.cfg.dim};

  std::vector<std::string> specs = ex.cfg.systems;
  if (specs.size() == 1)
    specs.assign(static_cast<std::size_t>(ex.cfg.dim), specs[0]);  // broadcast
  if (specs.size() != static_cast<std::size_t>(ex.cfg.dim))
    throw structural_error("config lists neither one system nor one per axis");
  std::vector<ScalingSystem> systems;
  for (const std::string& s : specs) systems.push_back(make_scaling_system(s, box.axis()));
  ex.ctx = make_tensor_context(systems, box);
  return ex;
}

// Labeled corpus, deterministic in the config seed. Scale-bound generators
// run two scales below the coarsest cap: reproduction at the cap is then
// lossless up to quadrature, so p = 2 ratios read 1 for orthonormal systems.
std::vector<std::pair<std::string, SampledFunction>> build_corpus(const Experiment& ex) {
  std::vector<std::pair<std::string, SampledFunction>> out;
  if (ex.cfg.corpus_count == 0) return out;
  XorShift64Star rng(ex.cfg.seed);
  const int scale = std::max(
      0, *std::min_element(ex.cfg.k_cap.begin(), ex.cfg.k_cap.end()) - 2);
  for (const std::string& gen : ex.cfg.corpus) {
    auto fs_list = make_corpus(ex.ctx, gen, ex.cfg.corpus_count, scale, rng);
    for (std::size_t i = 0; i < fs_list.size(); ++i)
      out.emplace_back(gen + "-" + std::to_string(i), std::move(fs_list[i]));
  }
  return out;
}

std::string function_text(const SampledFunction& f) {
  std::stringstream ss;
  write_function(ss, f);
  return ss.str();
}

// For haar and dbN without explicit edges: the tightest box holding the
// support. File-backed systems default to the box they were stored on.
DyadicGrid natural_box(const std::string& spec, int J) {
  std::int64_t width = 1;
  if (spec.rfind("db", 0) == 0 && spec.size() > 2)
    width = 2 * std::stoll(spec.substr(2)) - 1;
  return DyadicGrid{J, 0, width << J, 1};
}

int cmd_gen_scaling(const std::string& spec, int J, const std::string& lo_s,
                    const std::string& hi_s, const std::string& out_path) {
  DyadicGrid box = natural_box(spec, J);
  if (!lo_s.empty() || !hi_s.empty()) {
    double lo = 0.0, hi = 0.0;
    if (!parse_dyadic(lo_s, lo) || !parse_dyadic(hi_s, hi))
      throw std::runtime_error("box edges must be dyadic rationals");
    box.lo = std::llround(std::ldexp(lo, J));
    box.hi = std::llround(std::ldexp(hi, J));
  }
  const ScalingSystem sys = make_scaling_system(spec, box);
  std::stringstream ss;
  write_scaling_system(ss, sys);
  write_atomic(out_path, ss.str());
  std::cout << "wrote " << out_path << " (" << spec << ", J=" << J << ", ["
            << static_cast<double>(box.lo) * box.step() << ", "
            << static_cast<double>(box.hi) * box.step() << "))\n";
  return 0;
}

int cmd_validate(const std::string& config_path, const std::string& out_flag) {
  const Experiment ex = load_experiment(config_path, out_flag);
  bool all_ok = true;
  for (std::size_t a = 0; a < ex.ctx.axes.size(); ++a) {
    const ConditionReport rep = validate_conditions(ex.ctx.axes[a].sys);
    all_ok = all_ok && rep.valid();
    std::cout << "axis " << a << ": " << (rep.valid() ? "ok" : "FAILED")
              << "  majorant=" << rep.majorant_ok
              << " dual_majorant=" << rep.dual_majorant_ok
              << " derivative=" << rep.derivative_majorant_ok
              << " dual_tail=" << rep.dual_tail_ok
              << " log_moment=" << num_str(rep.mu_log_moment) << "\n";
  }
  std::cout << "config " << ex.hash << ": box=[" << num_str(ex.cfg.box_lo) << ", "
            << num_str(ex.cfg.box_hi) << ") J=" << ex.cfg.J << " dim=" << ex.cfg.dim
            << " k_cap=" << cap_str(ex.cfg.k_cap) << "\n";
  return all_ok ? 0 : kExitFailure;
}

int cmd_project(const std::string& in_path, const std::string& out_path,
                const std::string& scaling, int kappa) {
  const SampledFunction f = read_function_file(in_path);
  if (f.dim() != 1)
    throw std::runtime_error("project handles one dimension; use project-nd");
  const ScalingSystem sys = make_scaling_system(scaling, f.grid);
  const ProjectorContext ctx = make_projector_context(sys, f.grid);
  write_atomic(out_path, function_text(project(ctx, f, kappa)));
  return 0;
}

int cmd_project_nd(const std::string& in_path, const std::string& out_path,
                   std::vector<std::string> scalings, const std::string& kappa_s,
                   bool detail_op) {
  const SampledFunction f = read_function_file(in_path);
  MultiIndex kappa;
  std::stringstream ks(kappa_s);
  for (std::string item; std::getline(ks, item, ',');) kappa.push_back(std::stoi(item));
  if (static_cast<int>(kappa.size()) != f.dim())
    throw std::runtime_error("kappa needs one entry per axis of the input");
  if (scalings.empty()) scalings = {"haar"};
  if (scalings.size() == 1)
    scalings.assign(static_cast<std::size_t>(f.dim()), scalings[0]);
  std::vector<ScalingSystem> systems;
  for (const std::string& s : scalings)
    systems.push_back(make_scaling_system(s, f.grid.axis()));
  const TensorContext ctx = make_tensor_context(systems, f.grid);
  const SampledFunction g =
      detail_op ? detail_nd(ctx, f, kappa) : project_nd(ctx, f, kappa);
  write_atomic(out_path, function_text(g));
  return 0;
}

int cmd_czd(const std::string& in_path, const std::string& out_path, double alpha) {
  const SampledFunction f = read_function_file(in_path);
  const CZDecomposition dec = cz_decompose(f, alpha);
  const CzReport rep = verify_cz(dec, f);

  std::string base = out_path;
  if (base.size() > 5 && base.substr(base.size() - 5) == ".json")
    base = base.substr(0, base.size() - 5);

  json j;
  j["alpha"] = alpha;
  j["selected"] = json::array();
  for (const DyadicInterval& q : dec.selected)
    j["selected"].push_back({{"kappa", q.kappa}, {"nu", q.nu}});
  const std::string good_path = base + ".good.fn";
  write_atomic(good_path, function_text(dec.good));
  j["good"] = good_path;
  j["bad"] = json::array();
  for (std::size_t r = 0; r < dec.bad_parts.size(); ++r) {
    const std::string bad_path = base + ".bad" + std::to_string(r) + ".fn";
    write_atomic(bad_path, function_text(dec.bad_parts[r]));
    j["bad"].push_back(bad_path);
  }
  j["verify"] = {{"pass", rep.pass()},
                 {"small_off_union", rep.small_off_union.measured},
                 {"total_length", rep.total_length.measured},
                 {"averages_bracketed", rep.averages_bracketed.measured},
                 {"bad_parts_mean_zero", rep.bad_parts_mean_zero.measured},
                 {"good_bounded", rep.good_bounded.measured}};
  write_atomic(out_path, j.dump(2) + "\n");
  return rep.pass() ? 0 : kExitFailure;
}

int cmd_square_fn(const std::string& config_path, const std::string& out_flag) {
  const Experiment ex = load_experiment(config_path, out_flag);
  const auto corpus = build_corpus(ex);
  if (corpus.empty()) {
    std::cerr << "no inputs\n";
    return kExitNoInputs;
  }
  CsvTable t;
  t.columns = {"config", "system", "dim", "f_id", "p", "norm_f", "norm_sf"};
  for (const auto& [f_id, f] : corpus) {
    const SampledFunction sf = square_function(ex.ctx, f, ex.cfg.k_cap);
    for (double p : ex.cfg.p_list)
      t.add_row({ex.hash, join(ex.cfg.systems, ';'), std::to_string(ex.cfg.dim), f_id,
                 num_str(p), num_str(lp_norm(f, p)), num_str(lp_norm(sf, p))});
  }
  write_report(ex.out_dir, "square_fn.csv", t.str());
  json j;
  j["config"] = ex.hash;
  j["functions"] = corpus.size();
  j["rows"] = t.rows.size();
  j["k_cap"] = cap_str(ex.cfg.k_cap);
  write_report(ex.out_dir, "square_fn.json", j.dump(2) + "\n");
  return 0;
}

int cmd_lp_ratio(const std::string& config_path, const std::string& out_flag, bool svg) {
  const Experiment ex = load_experiment(config_path, out_flag);
  const auto corpus = build_corpus(ex);
  if (corpus.empty()) {
    std::cerr << "no inputs\n";
    return kExitNoInputs;
  }
  CsvTable t;
  t.columns = {"config", "system", "dim", "f_id", "p", "k_cap",
               "norm_f", "norm_sf", "ratio"};
  std::map<double, std::vector<SignTrialRecord>> per_p;  // reuse summarize
  std::vector<SvgSeries> series;
  for (const auto& [f_id, f] : corpus) {
    SvgSeries s{f_id, {}};
    for (double p : ex.cfg.p_list) {
      const RatioRecord rec = lp_ratio(ex.ctx, f, f_id, p, ex.cfg.k_cap);
      t.add_row({ex.hash, join(ex.cfg.systems, ';'), std::to_string(ex.cfg.dim), f_id,
                 num_str(p), cap_str(rec.kappa_cap), num_str(rec.norm_f),
                 num_str(rec.norm_sf), num_str(rec.ratio)});
      SignTrialRecord r;
      r.ratio = rec.ratio;
      per_p[p].push_back(r);
      s.points.emplace_back(p, rec.ratio);
    }
    series.push_back(std::move(s));
  }
  write_report(ex.out_dir, "lp_ratio.csv", t.str());
  json j;
  j["config"] = ex.hash;
  for (const auto& [p, records] : per_p) {
    const SweepSummary s = summarize(records);
    j["p"][num_str(p)] = {{"min", s.min}, {"max", s.max}, {"median", s.median}};
  }
  write_report(ex.out_dir, "lp_ratio.json", j.dump(2) + "\n");
  if (svg)
    write_report(ex.out_dir, "lp_ratio.svg",
                 svg_plot("square-function ratios", "p", "ratio", series));
  return 0;
}

int cmd_sign_sweep(const std::string& config_path, const std::string& out_flag,
                   bool free_signs_flag) {
  const Experiment ex = load_experiment(config_path, out_flag);
  const bool free_signs = free_signs_flag || ex.cfg.free_signs;
  const auto corpus = build_corpus(ex);
  if (corpus.empty()) {
    std::cerr << "no inputs\n";
    return kExitNoInputs;
  }
  CsvTable t;
  t.columns = {"config", "system", "dim", "f_id", "p", "trial", "trial_seed",
               "free_signs", "norm_tf", "ratio"};
  json j;
  j["config"] = ex.hash;
  j["free_signs"] = free_signs;
  for (const auto& [f_id, f] : corpus) {
    for (double p : ex.cfg.p_list) {
      const auto trials = sign_sweep(ex.ctx, f, p, ex.cfg.k_cap, ex.cfg.trials,
                                     ex.cfg.seed, free_signs);
      for (std::size_t i = 0; i < trials.size(); ++i)
        t.add_row({ex.hash, join(ex.cfg.systems, ';'), std::to_string(ex.cfg.dim),
                   f_id, num_str(p), std::to_string(i), hex16(trials[i].seed),
                   free_signs ? "1" : "0", num_str(trials[i].norm_tf),
                   num_str(trials[i].ratio)});
      const SweepSummary s = summarize(trials);
      j["sweeps"][f_id][num_str(p)] = {{"min", s.min}, {"max", s.max},
                                       {"median", s.median}};
    }
  }
  write_report(ex.out_dir, "sign_sweep.csv", t.str());
  write_report(ex.out_dir, "sign_sweep.json", j.dump(2) + "\n");
  return 0;
}

int cmd_khintchine(const std::string& config_path, const std::string& out_flag,
                   const std::string& a_flag) {
  const Experiment ex = load_experiment(config_path, out_flag);
  std::vector<std::vector<double>> vectors;
  if (!a_flag.empty()) {
    std::vector<double> a;
    std::stringstream as(a_flag);
    for (std::string item; std::getline(as, item, ',');) a.push_back(std::stod(item));
    vectors.push_back(std::move(a));
  } else {
    XorShift64Star rng(ex.cfg.seed);
    for (int n = 1; n <= 12; ++n) {
      std::vector<double> a(static_cast<std::size_t>(n));
      for (double& v : a) v = 2.0 * rng.uniform01() - 1.0;
      vectors.push_back(std::move(a));
    }
  }
  CsvTable t;
  t.columns = {"config", "n", "p", "moment", "vs_upper", "vs_lower"};
  bool inside = true;
  for (const auto& a : vectors) {
    for (double p : ex.cfg.p_list) {
      const double moment = khintchine_moment(a, p);
      const auto [vs_upper, vs_lower] = khintchine_check(a, p);
      inside = inside && vs_upper <= 1.0 + 1e-12 && vs_lower >= 1.0 - 1e-12;
      t.add_row({ex.hash, std::to_string(a.size()), num_str(p), num_str(moment),
                 num_str(vs_upper), num_str(vs_lower)});
    }
  }
  write_report(ex.out_dir, "khintchine.csv", t.str());
  json j;
  j["config"] = ex.hash;
  j["vectors"] = vectors.size();
  j["within_constants"] = inside;
  write_report(ex.out_dir, "khintchine.json", j.dump(2) + "\n");
  return inside ? 0 : kExitFailure;
}

int cmd_weak11(const std::string& config_path, const std::string& out_flag) {
  const Experiment ex = load_experiment(config_path, out_flag);
  if (ex.cfg.dim != 1)
    throw structural_error("weak-type check is stated for one dimension");
  XorShift64Star rng(ex.cfg.seed);
  const SignPattern signs = random_sign_pattern(ex.cfg.k_cap, rng);
  CsvTable t;
  t.columns = {"config", "m", "alpha", "value"};
  json sup_per_m = json::array();
  double lo = 1e300, hi = 0.0;
  const int m_max = std::min(8, ex.cfg.J);
  for (int m = 0; m <= m_max; ++m) {
    const SampledFunction f = unit_spike(ex.ctx.box, m);
    std::vector<double> alphas = ex.cfg.alphas;
    if (alphas.empty()) {
      // just below every distinct level of |Tf|: each level set is hit exactly
      const SampledFunction tf = sign_sum(ex.ctx, f, signs, ex.cfg.k_cap);
      std::set<double> levels;
      for (const Complex& z : tf.samples)
        if (std::abs(z) > 0.0) levels.insert(std::abs(z));
      for (double l : levels) alphas.push_back(std::nextafter(l, 0.0));
    }
    double sup = 0.0;
    for (const auto& [alpha, value] : weak11_check(ex.ctx, f, signs, ex.cfg.k_cap, alphas)) {
      sup = std::max(sup, value);
      t.add_row({ex.hash, std::to_string(m), num_str(alpha), num_str(value)});
    }
    sup_per_m.push_back(sup);
    lo = std::min(lo, sup);
    hi = std::max(hi, sup);
  }
  write_report(ex.out_dir, "weak11.csv", t.str());
  json j;
  j["config"] = ex.hash;
  j["sup_per_m"] = sup_per_m;
  j["spread"] = lo > 0.0 ? hi / lo : 0.0;
  write_report(ex.out_dir, "weak11.json", j.dump(2) + "\n");
  return 0;
}

int cmd_suite(const std::string& out_flag) {
  std::stringstream buffer;
  struct Tee : std::streambuf {
    std::streambuf *a, *b;
    Tee(std::streambuf* a_, std::streambuf* b_) : a(a_), b(b_) {}
    int overflow(int c) override {
      if (c != EOF) {
        a->sputc(static_cast<char>(c));
        b->sputc(static_cast<char>(c));
      }
      return c;
    }
  } tee(std::cout.rdbuf(), buffer.rdbuf());
  std::ostream out(&tee);
  const auto results = run_acceptance(out);
  int failures = 0;
  for (const auto& r : results)
    if (!r.pass) ++failures;
  out << (results.size() - static_cast<std::size_t>(failures)) << "/" << results.size()
      << " criteria passed\n";
  write_report(resolve_out_dir(out_flag, ""), "acceptance.txt", buffer.str());
  return failures == 0 ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"anisotropic multiresolution projector toolkit"};
  app.require_subcommand(1);

  std::string config_path, out_dir, in_path, out_path, scaling = "haar";
  std::string kappa_list, box_lo, box_hi, a_flag, spec = "haar";
  std::vector<std::string> scalings;
  int kappa = 0, J = 8;
  double alpha = 0.0;
  bool svg = false, free_signs = false, detail_op = false;

  CLI::App* gen = app.add_subcommand("gen-scaling", "write a scaling system file");
  gen->add_option("--spec", spec, "haar, dbN, or file:PATH")->required();
  gen->add_option("--J", J, "grid resolution exponent")->required();
  gen->add_option("--box-lo", box_lo, "dyadic lower edge (default: tight support)");
  gen->add_option("--box-hi", box_hi, "dyadic upper edge");
  gen->add_option("--out", out_path, "output file")->required();

  CLI::App* val = app.add_subcommand("validate", "check config and system conditions");
  val->add_option("--config", config_path)->required();
  val->add_option("--out-dir", out_dir);

  CLI::App* proj = app.add_subcommand("project", "1-D reproduction of a sampled function");
  proj->add_option("--in", in_path)->required();
  proj->add_option("--out", out_path)->required();
  proj->add_option("--scaling", scaling, "haar, dbN, or file:PATH");
  proj->add_option("--kappa", kappa)->required();

  CLI::App* projnd = app.add_subcommand("project-nd", "anisotropic reproduction or detail");
  projnd->add_option("--in", in_path)->required();
  projnd->add_option("--out", out_path)->required();
  projnd->add_option("--scaling", scalings, "one spec, or one per axis");
  projnd->add_option("--kappa", kappa_list, "comma-separated, one per axis")->required();
  projnd->add_flag("--detail", detail_op, "emit the detail block instead");

  CLI::App* czd_cmd = app.add_subcommand("czd", "level split with stopping intervals");
  czd_cmd->add_option("--in", in_path)->required();
  czd_cmd->add_option("--out", out_path, "JSON output; parts land beside it")->required();
  czd_cmd->add_option("--alpha", alpha)->required();

  auto add_config_sub = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--config", config_path)->required();
    sub->add_option("--out-dir", out_dir, "overrides MRPROJ_OUT and the config");
    return sub;
  };
  add_config_sub("square-fn", "square function norms over the corpus");
  CLI::App* lpr = add_config_sub("lp-ratio", "norm ratios ||Sf||_p / ||f||_p");
  lpr->add_flag("--svg", svg, "also plot ratio against p");
  CLI::App* sweep = add_config_sub("sign-sweep", "randomized detail sign sums");
  sweep->add_flag("--free-signs", free_signs,
                  "independent per-scale signs (outside the tensor statement)");
  CLI::App* khi = add_config_sub("khintchine", "sign moments against sharp constants");
  khi->add_option("--a", a_flag, "explicit comma-separated coefficients");
  add_config_sub("weak11", "weak-type functional on unit spikes");

  CLI::App* suite = app.add_subcommand("suite", "run the acceptance battery");
  suite->add_option("--out-dir", out_dir);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return cmd_gen_scaling(spec, J, box_lo, box_hi, out_path);
    if (val->parsed()) return cmd_validate(config_path, out_dir);
    if (proj->parsed()) return cmd_project(in_path, out_path, scaling, kappa);
    if (projnd->parsed())
      return cmd_project_nd(in_path, out_path, scalings, kappa_list, detail_op);
    if (czd_cmd->parsed()) return cmd_czd(in_path, out_path, alpha);
    if (app.got_subcommand("square-fn")) return cmd_square_fn(config_path, out_dir);
    if (lpr->parsed()) return cmd_lp_ratio(config_path, out_dir, svg);
    if (sweep->parsed()) return cmd_sign_sweep(config_path, out_dir, free_signs);
    if (khi->parsed()) return cmd_khintchine(config_path, out_dir, a_flag);
    if (app.got_subcommand("weak11")) return cmd_weak11(config_path, out_dir);
    if (suite->parsed()) return cmd_suite(out_dir);
  } catch (const config_parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
