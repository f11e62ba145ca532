// ak: experiment runner for the discrete singular-integral toolkit.

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <variant>

#include "ak/bounds.hpp"
#include "ak/io.hpp"
#include "ak/kernels.hpp"
#include "ak/manifold.hpp"
#include "ak/operator.hpp"
#include "ak/space.hpp"

namespace {

using ak::io::json;

enum class Kind { number, integer, text, flag, sizes };

struct Key {
  const char* name;
  Kind kind;
  const char* help;
};

const Key kKeys[] = {
    {"preset", Kind::text, "space preset: circle, sphere, cantor, two_point"},
    {"space", Kind::text, "space JSON file (overrides the preset)"},
    {"R", Kind::number, "radius for circle/sphere presets"},
    {"N", Kind::integer, "node count for circle/sphere presets"},
    {"level", Kind::integer, "cantor preset level"},
    {"distance", Kind::number, "two_point preset distance"},
    {"upsilon", Kind::number, "regularity exponent (default: preset's natural value)"},
    {"beta", Kind::number, "source Hölder exponent"},
    {"s2", Kind::number, "kernel exponent s2 (default: kernel's)"},
    {"s3", Kind::number, "kernel exponent s3 (default: kernel's)"},
    {"case", Kind::text, "auto, b, bb or bbb"},
    {"kernel", Kind::text, "zero, riesz, signed_riesz, double_layer, log_blowup"},
    {"kernel_s", Kind::number, "exponent for riesz-type kernels"},
    {"s", Kind::number, "exponent for verify-lemmas"},
    {"s_triple", Kind::number, "exponent for the complement constant (default 2·upsilon)"},
    {"r_min", Kind::number, "smallest grid radius"},
    {"r_max", Kind::number, "largest grid radius"},
    {"r_count", Kind::integer, "log-spaced grid size (dyadic when unset)"},
    {"seed", Kind::integer, "random seed"},
    {"safety_factor", Kind::number, "necessity verdict factor"},
    {"max_c_suff", Kind::number, "sufficiency ratio ceiling"},
    {"tolerance", Kind::number, "relative sphere-condition tolerance"},
    {"g", Kind::text, "apply-q test function: bump or random"},
    {"x0", Kind::integer, "apply-q bump centre"},
    {"grad_kernel", Kind::text, "single_layer_log, double_layer, power, bumped_log"},
    {"mu", Kind::text, "manifold-gradient density: y1 or const"},
    {"strict_t1", Kind::flag, "require t1 = n-1 in manifold-necessity"},
    {"refine", Kind::integer, "circle potential refinement factor"},
    {"of", Kind::text, "subcommand wrapped by refine"},
    {"resolutions", Kind::sizes, "node counts for refine"},
    {"output", Kind::text, "directory for report.json and CSV tables"},
};

using Slot = std::variant<double, long long, std::string, bool, std::vector<std::size_t>>;

class Config {
 public:
  bool has(const std::string& k) const { return values_.count(k) > 0; }
  void set(const std::string& k, json v) { values_[k] = std::move(v); }
  double num(const std::string& k, double def) const { return has(k) ? values_.at(k).get<double>() : def; }
  std::size_t size(const std::string& k, std::size_t def) const {
    if (!has(k)) return def;
    const auto v = values_.at(k).get<long long>();
    if (v < 0) throw std::invalid_argument("field \"" + k + "\" must be nonnegative");
    return static_cast<std::size_t>(v);
  }
  std::string text(const std::string& k, const std::string& def) const {
    return has(k) ? values_.at(k).get<std::string>() : def;
  }
  bool flag(const std::string& k, bool def) const { return has(k) ? values_.at(k).get<bool>() : def; }
  std::vector<std::size_t> sizes(const std::string& k) const {
    return has(k) ? values_.at(k).get<std::vector<std::size_t>>() : std::vector<std::size_t>{};
  }

 private:
  std::map<std::string, json> values_;
};

void merge_file(Config& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config " + path + ": " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
  for (const auto& [name, value] : j.items()) {
    const Key* key = nullptr;
    for (const auto& k : kKeys) {
      if (name == k.name) key = &k;
    }
    if (!key) throw std::invalid_argument("config: unknown key \"" + name + "\"");
    bool ok = false;
    switch (key->kind) {
      case Kind::number:
        ok = value.is_number();
        break;
      case Kind::integer:
        ok = value.is_number_integer();
        break;
      case Kind::text:
        ok = value.is_string();
        break;
      case Kind::flag:
        ok = value.is_boolean();
        break;
      case Kind::sizes:
        ok = value.is_array() &&
             std::all_of(value.begin(), value.end(), [](const json& e) { return e.is_number_unsigned(); });
        break;
    }
    if (!ok) throw std::invalid_argument("config: field \"" + name + "\" has the wrong type");
    if (!cfg.has(name)) cfg.set(name, value);
  }
}

struct Context {
  ak::io::Preset preset;
  double upsilon = 1.0;
  double radius = 1.0;
};

ak::io::Preset load_preset(const Config& cfg, double radius) {
  if (cfg.has("space")) return {"file", ak::io::load_space(cfg.text("space", "")), std::nullopt, 1.0};
  const std::size_t refine = cfg.size("refine", 8);
  const std::string name = cfg.text("preset", "circle");
  auto preset = ak::io::make_preset(name, radius, cfg.size("N", 512), cfg.size("level", 8),
                                    cfg.num("distance", 1.0));
  if (name == "circle" && refine != 8) {
    preset.manifold = ak::build_circle(radius, cfg.size("N", 512), refine);
  }
  return preset;
}

Context make_context(const Config& cfg) {
  const double radius = cfg.num("R", 1.0);
  Context ctx{load_preset(cfg, radius), 1.0, radius};
  ctx.upsilon = cfg.num("upsilon", ctx.preset.upsilon);
  return ctx;
}

std::vector<double> radius_grid(const Config& cfg, double lo, double hi) {
  lo = cfg.num("r_min", lo);
  hi = cfg.num("r_max", hi);
  if (cfg.has("r_count")) return ak::log_grid(lo, hi, cfg.size("r_count", 0));
  auto g = ak::dyadic_grid(lo, hi);
  if (g.empty()) throw std::invalid_argument("radius grid is empty; adjust r_min / r_max");
  return g;
}

double mesh_or_fail(const ak::DiscreteSpace& space) {
  if (!(space.mesh_size() > 0.0)) throw std::invalid_argument("space has no positive mesh size");
  return space.mesh_size();
}

ak::KernelSpec make_kernel(const Config& cfg, const Context& ctx) {
  const std::string name = cfg.text("kernel", "double_layer");
  const double s = cfg.num("kernel_s", 1.0);
  if (name == "zero") return ak::zero_kernel();
  if (name == "riesz") return ak::riesz(s);
  if (name == "signed_riesz") return ak::signed_riesz(s);
  if (name == "double_layer") return ak::double_layer_circle(ctx.radius);
  if (name == "log_blowup") {
    if (ctx.preset.name == "circle" && ctx.upsilon == 1.0) return ak::log_blowup_circle(ctx.radius);
    return ak::log_blowup(ctx.upsilon);
  }
  throw std::invalid_argument("field \"kernel\": unknown kernel \"" + name + "\"");
}

ak::CaseProfile make_case(const Config& cfg, const Context& ctx, double s2_default,
                          double s3_default) {
  const auto profile = ak::case_select(ctx.upsilon, cfg.num("beta", 0.5), cfg.num("s2", s2_default),
                                       cfg.num("s3", s3_default));
  const std::string wanted = cfg.text("case", "auto");
  if (wanted != "auto" && wanted != ak::to_string(profile.tag)) {
    throw std::invalid_argument("field \"case\": parameters select case " +
                                ak::to_string(profile.tag) + ", not " + wanted);
  }
  return profile;
}

const ak::ParametrizedManifold& need_manifold(const Context& ctx) {
  if (!ctx.preset.manifold) throw std::invalid_argument("field \"preset\": needs circle or sphere");
  return *ctx.preset.manifold;
}

ak::GradKernelSpec make_grad_kernel(const Config& cfg, const Context& ctx) {
  const std::string name = cfg.text("grad_kernel", "single_layer_log");
  if (name == "single_layer_log") return ak::single_layer_log();
  if (name == "double_layer") return ak::double_layer_circle_grad(ctx.radius);
  if (name == "power") return ak::power_grad(cfg.num("kernel_s", 0.1));
  if (name == "bumped_log") {
    ak::Vec shift = ak::Vec::Zero(static_cast<Eigen::Index>(need_manifold(ctx).ambient));
    shift[0] = 0.3 * ctx.radius;
    return ak::bumped_log_grad(0.5, shift, 0.5 * ctx.radius);
  }
  throw std::invalid_argument("field \"grad_kernel\": unknown kernel \"" + name + "\"");
}

struct Output {
  json report;
  std::map<std::string, std::string> tables;  // file name → CSV text
  int status = 0;
};

Output run(const std::string& cmd, const Config& cfg);

Output cmd_regularity(const Config& cfg) {
  const auto ctx = make_context(cfg);
  const auto& sp = ctx.preset.space;
  const auto grid = radius_grid(cfg, mesh_or_fail(sp), sp.diameter());
  const auto rep = ak::estimate_upper_ahlfors(sp, ctx.upsilon, grid);
  const auto metric = ak::check_metric(sp, 10000, cfg.size("seed", 1));
  Output out;
  out.report = ak::io::to_json(rep);
  out.report["metric_ok"] = metric.ok;
  std::ostringstream csv;
  ak::io::write_csv(csv, rep);
  out.tables["regularity.csv"] = csv.str();
  return out;
}

Output cmd_sphere(const Config& cfg) {
  const auto ctx = make_context(cfg);
  const auto& sp = ctx.preset.space;
  const double half = sp.diameter() / 2.0;
  if (!(half > 0.0)) throw std::invalid_argument("sphere condition needs two distinct points");
  const double lo = sp.mesh_size() > 0.0 ? std::min(sp.mesh_size(), half) : half;
  const auto grid = radius_grid(cfg, lo, half);
  const auto rep = ak::check_sphere_condition(sp, grid, cfg.num("tolerance", ak::default_sphere_tolerance(sp)));
  Output out;
  out.report = ak::io::to_json(rep);
  out.status = rep.all_passed ? 0 : 2;
  return out;
}

Output cmd_kernel_norms(const Config& cfg) {
  const auto ctx = make_context(cfg);
  const auto& sp = ctx.preset.space;
  const auto k = make_kernel(cfg, ctx);
  const auto grid = radius_grid(cfg, mesh_or_fail(sp), sp.diameter());
  Output out;
  out.report = {{"kernel", k.name}, {"s1", k.s1}, {"s2", k.s2}, {"s3", k.s3}};
  out.report["ksharp"] = ak::io::to_json(ak::ksharp_norm(sp, k, grid));
  return out;
}

Output cmd_maximal(const Config& cfg) {
  const auto ctx = make_context(cfg);
  const auto& sp = ctx.preset.space;
  const auto k = make_kernel(cfg, ctx);
  const auto grid = radius_grid(cfg, mesh_or_fail(sp), sp.diameter());
  const auto prof = ak::maximal_function(sp, k, grid);
  Output out;
  out.report = {{"kernel", k.name}};
  out.report["profile"] = ak::io::to_json(prof);
  if (k.analytic_maximal) {
    double worst = 0.0;
    for (std::size_t a = 0; a < prof.x.size(); ++a) {
      for (std::size_t j = 0; j < prof.radii.size(); ++j) {
        worst = std::max(worst, std::abs(prof.value(a, j) - k.analytic_maximal(prof.radii[j])));
      }
    }
    out.report["oracle_max_abs_error"] = worst;
  }
  std::ostringstream csv;
  ak::io::write_csv(csv, prof);
  out.tables["maximal_function.csv"] = csv.str();
  return out;
}

Output cmd_apply_q(const Config& cfg) {
  const auto ctx = make_context(cfg);
  const auto& sp = ctx.preset.space;
  const auto k = make_kernel(cfg, ctx);
  const double beta = cfg.num("beta", 0.5);
  const std::string gname = cfg.text("g", "bump");
  ak::SampledFunction g;
  if (gname == "bump") {
    const std::size_t x0 = cfg.size("x0", sp.x_indices().empty() ? 0 : sp.x_indices()[0]);
    if (!sp.in_x(x0)) throw std::invalid_argument("field \"x0\": not a point of X");
    g = ak::bump_family(sp, beta).members.at(
        static_cast<std::size_t>(std::find(sp.x_indices().begin(), sp.x_indices().end(), x0) -
                                 sp.x_indices().begin())).g;
  } else if (gname == "random") {
    g = ak::random_holder_family(sp, beta, 1, cfg.size("seed", 1)).members.at(0).g;
  } else {
    throw std::invalid_argument("field \"g\": expected bump or random");
  }
  const auto q = ak::apply_q(sp, k, g);
  json values = json::array();
  for (std::size_t a = 0; a < q.values().size(); ++a) {
    values.push_back({{"x", q.domain()[a]}, {"re", q.values()[a].real()}, {"im", q.values()[a].imag()}});
  }
  Output out;
  out.report = {{"kernel", k.name}, {"g", gname}, {"beta", beta}, {"sup_abs", q.sup_abs()}, {"values", values}};
  return out;
}

Output cmd_sufficiency(const Config& cfg) {
  const auto ctx = make_context(cfg);
  const auto& sp = ctx.preset.space;
  const auto k = make_kernel(cfg, ctx);
  const auto profile = make_case(cfg, ctx, k.s2, k.s3);
  ak::SufficiencyOptions opt;
  opt.max_c_suff = cfg.num("max_c_suff", 100.0);
  opt.seed = cfg.size("seed", 1);
  if (cfg.has("r_min") || cfg.has("r_max") || cfg.has("r_count")) {
    opt.r_grid = radius_grid(cfg, 2.0 * mesh_or_fail(sp), sp.diameter());
  }
  const auto rep = ak::sufficiency_experiment(sp, k, profile, opt);
  Output out;
  out.report = ak::io::to_json(rep);
  out.report["kernel"] = k.name;
  out.status = rep.hypotheses_met ? 0 : 2;
  return out;
}

Output cmd_necessity(const Config& cfg) {
  const auto ctx = make_context(cfg);
  const auto& sp = ctx.preset.space;
  const auto k = make_kernel(cfg, ctx);
  const auto profile = make_case(cfg, ctx, k.s2, k.s3);
  std::vector<double> grid;
  if (cfg.has("r_min") || cfg.has("r_max") || cfg.has("r_count")) {
    grid = radius_grid(cfg, 2.0 * mesh_or_fail(sp), std::exp(-1.0 / profile.s3) * 0.999);
  } else {
    grid = ak::default_necessity_grid(sp, profile.s3);
  }
  ak::NecessityOptions opt;
  opt.safety_factor = cfg.num("safety_factor", 10.0);
  opt.seed = cfg.size("seed", 1);
  if (cfg.has("tolerance")) opt.sphere_tolerance = cfg.num("tolerance", 0.0);
  const auto rep = ak::necessity_experiment(sp, k, profile, grid, opt);
  Output out;
  out.report = ak::io::to_json(rep);
  out.report["kernel"] = k.name;
  std::ostringstream csv;
  ak::io::write_csv(csv, rep);
  out.tables["necessity.csv"] = csv.str();
  return out;
}

Output cmd_lemmas(const Config& cfg) {
  const auto ctx = make_context(cfg);
  const auto& sp = ctx.preset.space;
  const double h = mesh_or_fail(sp);
  const double ups = ctx.upsilon;
  const double s = cfg.num("s", 0.5);
  const double s3 = cfg.num("s_triple", 2.0 * ups);
  const auto a_grid = ak::log_grid(2.0 * h, 0.95 * sp.diameter(), 20);
  const auto t_grid = ak::dyadic_grid(h, sp.diameter());
  std::vector<double> t_log;
  for (double t : ak::dyadic_grid(2.0 * h, std::exp(-1.0), false)) t_log.push_back(t);
  Output out;
  json reports = json::array();
  bool all = true;
  auto add = [&](const ak::BoundsReport& r) {
    reports.push_back(ak::io::to_json(r));
    all = all && r.pass;
  };
  add(ak::c_prime(sp, ups, s, a_grid));
  add(ak::c_double_prime(sp, ups, s, t_grid));
  add(ak::c_triple_prime(sp, ups, s3, t_grid));
  if (!t_log.empty()) add(ak::c_iv(sp, ups, t_log));
  out.report = {{"reports", reports}, {"all_pass", all}, {"max_atom", ak::max_atom(sp)}};
  return out;
}

std::function<double(const ak::Vec&)> make_density(const Config& cfg) {
  const std::string name = cfg.text("mu", "y1");
  if (name == "y1") return [](const ak::Vec& y) { return y[0]; };
  if (name == "const") return [](const ak::Vec&) { return 1.0; };
  throw std::invalid_argument("field \"mu\": expected y1 or const");
}

Output cmd_manifold_gradient(const Config& cfg) {
  const auto ctx = make_context(cfg);
  const auto& man = need_manifold(ctx);
  const auto k = make_grad_kernel(cfg, ctx);
  const auto rep = ak::verify_gradient_formula(man, k, make_density(cfg), cfg.num("beta", 1.0));
  Output out;
  out.report = ak::io::to_json(rep);
  out.report["kernel"] = k.name;
  out.report["nodes"] = man.size();
  return out;
}

Output cmd_manifold_necessity(const Config& cfg) {
  const auto ctx = make_context(cfg);
  const auto& man = need_manifold(ctx);
  const auto k = make_grad_kernel(cfg, ctx);
  std::vector<double> grid;
  if (cfg.has("r_min") || cfg.has("r_max") || cfg.has("r_count")) {
    grid = radius_grid(cfg, 2.0 * mesh_or_fail(ctx.preset.space),
                       std::exp(-1.0 / k.t3) * 0.999);
  } else {
    grid = ak::default_necessity_grid(ctx.preset.space, k.t3);
  }
  ak::ManifoldNecessityOptions opt;
  opt.strict_t1 = cfg.flag("strict_t1", true);
  opt.necessity.safety_factor = cfg.num("safety_factor", 10.0);
  opt.necessity.seed = cfg.size("seed", 1);
  if (cfg.has("tolerance")) opt.necessity.sphere_tolerance = cfg.num("tolerance", 0.0);
  const auto rep = ak::manifold_necessity(man, k, cfg.num("beta", 0.5), grid, opt);
  Output out;
  out.report = ak::io::to_json(rep);
  out.report["kernel"] = k.name;
  return out;
}

Output cmd_refine(const Config& cfg) {
  const std::string of = cfg.text("of", "");
  if (of.empty() || of == "refine") throw std::invalid_argument("field \"of\": name a subcommand to refine");
  auto res = cfg.sizes("resolutions");
  if (res.empty()) res = {256, 512};
  Output out;
  json runs = json::array();
  for (std::size_t n : res) {
    Config c = cfg;
    c.set("N", static_cast<long long>(n));
    auto r = run(of, c);
    runs.push_back({{"N", n}, {"status", r.status}, {"report", r.report}});
    out.status = std::max(out.status, r.status);
  }
  out.report = {{"of", of}, {"runs", runs}};
  return out;
}

Output run(const std::string& cmd, const Config& cfg) {
  if (cmd == "regularity") return cmd_regularity(cfg);
  if (cmd == "sphere-condition") return cmd_sphere(cfg);
  if (cmd == "kernel-norms") return cmd_kernel_norms(cfg);
  if (cmd == "maximal-function") return cmd_maximal(cfg);
  if (cmd == "apply-q") return cmd_apply_q(cfg);
  if (cmd == "sufficiency") return cmd_sufficiency(cfg);
  if (cmd == "necessity") return cmd_necessity(cfg);
  if (cmd == "verify-lemmas") return cmd_lemmas(cfg);
  if (cmd == "manifold-gradient") return cmd_manifold_gradient(cfg);
  if (cmd == "manifold-necessity") return cmd_manifold_necessity(cfg);
  if (cmd == "refine") return cmd_refine(cfg);
  throw std::invalid_argument("unknown subcommand " + cmd);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete singular-integral experiments"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path;
  app.add_option("--config", config_path, "JSON config; flags override its fields");

  std::map<std::string, Slot> slots;
  std::map<std::string, CLI::Option*> options;
  for (const auto& k : kKeys) {
    const std::string flag = std::string("--") + k.name;
    auto& slot = slots[k.name];
    switch (k.kind) {
      case Kind::number:
        slot = 0.0;
        options[k.name] = app.add_option(flag, std::get<double>(slot), k.help);
        break;
      case Kind::integer:
        slot = 0LL;
        options[k.name] = app.add_option(flag, std::get<long long>(slot), k.help);
        break;
      case Kind::text:
        slot = std::string();
        options[k.name] = app.add_option(flag, std::get<std::string>(slot), k.help);
        break;
      case Kind::flag:
        slot = false;
        options[k.name] = app.add_option(flag, std::get<bool>(slot), k.help);
        break;
      case Kind::sizes:
        slot = std::vector<std::size_t>();
        options[k.name] =
            app.add_option(flag, std::get<std::vector<std::size_t>>(slot), k.help)->delimiter(',');
        break;
    }
  }
  const char* commands[] = {"regularity",        "sphere-condition",  "kernel-norms",
                            "maximal-function",  "apply-q",           "sufficiency",
                            "necessity",         "verify-lemmas",     "manifold-gradient",
                            "manifold-necessity", "refine"};
  for (const char* c : commands) app.add_subcommand(c, std::string(c) + " experiment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    Config cfg;
    for (const auto& k : kKeys) {
      if (options[k.name]->count() == 0) continue;
      std::visit([&](const auto& v) { cfg.set(k.name, json(v)); }, slots[k.name]);
    }
    if (!config_path.empty()) merge_file(cfg, config_path);

    const std::string cmd = app.get_subcommands().front()->get_name();
    const Output out = run(cmd, cfg);
    const std::string text = out.report.dump(2) + "\n";
    std::cout << text;
    if (cfg.has("output")) {
      const std::filesystem::path dir = cfg.text("output", "");
      std::filesystem::create_directories(dir);
      std::ofstream(dir / "report.json") << text;
      for (const auto& [name, body] : out.tables) std::ofstream(dir / name) << body;
    }
    return out.status;
  } catch (const ak::HypothesisError& e) {
    std::cerr << "hypothesis failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
