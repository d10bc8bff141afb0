#include "scenario.hpp"

#include <openssl/evp.h>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "bnslab/errors.hpp"
#include "bnslab/expansion.hpp"
#include "bnslab/generators.hpp"
#include "bnslab/littlewood_paley.hpp"
#include "bnslab/paraproduct.hpp"
#include "bnslab/profiles.hpp"
#include "bnslab/report.hpp"
#include "bnslab/snapshot.hpp"
#include "bnslab/solver.hpp"
#include "bnslab/space_time.hpp"

#ifndef BNSLAB_VERSION
#define BNSLAB_VERSION "dev"
#endif

namespace bnslab::cli {
namespace {

namespace fs = std::filesystem;
using boost::property_tree::ptree;

enum class Kind { integer, real, text, flag };

struct Key {
  Kind kind;
  std::string fallback;
  std::vector<std::string> choices;  // for enumerated text keys
};

using Schema = std::map<std::string, std::map<std::string, Key>>;

const Schema& schema() {
  static const Schema s = {
      {"run", {{"seed", {Kind::integer, "1", {}}}}},
      {"grid", {{"n", {Kind::integer, "32", {}}}, {"period", {Kind::real, "2pi", {}}}}},
      {"field",
       {{"kind",
         {Kind::text, "random_bandlimited",
          {"random_bandlimited", "taylor_green_like", "shell_bump", "snapshot"}}},
        {"k_lo", {Kind::real, "1", {}}},
        {"k_hi", {Kind::real, "4", {}}},
        {"amplitude", {Kind::real, "0.1", {}}},
        {"k0", {Kind::integer, "1", {}}},
        {"j0", {Kind::integer, "1", {}}},
        {"path", {Kind::text, "", {}}}}},
      {"solver",
       {{"dt", {Kind::real, "0.015625", {}}},
        {"n_steps", {Kind::integer, "64", {}}},
        {"picard_tol", {Kind::real, "1e-8", {}}},
        {"max_picard_iters", {Kind::integer, "40", {}}},
        {"c0_estimate", {Kind::real, "0", {}}},
        {"dealias", {Kind::text, "two_thirds", {"two_thirds"}}},
        {"growth_threshold", {Kind::real, "10", {}}},
        {"require_convergence", {Kind::flag, "true", {}}},
        {"snapshots", {Kind::text, "final", {"none", "final", "all"}}}}},
      {"besov", {{"p", {Kind::real, "10", {}}}, {"q", {Kind::real, "10", {}}}}},
      {"norms",
       {{"rho1", {Kind::real, "1", {}}},
        {"rho2", {Kind::real, "inf", {}}},
        {"kato_q", {Kind::real, "6", {}}}}},
      {"expand", {{"k", {Kind::integer, "2", {}}}, {"N", {Kind::integer, "3", {}}}}},
      {"iterate", {{"steps", {Kind::integer, "3", {}}}}},
      {"profiles",
       {{"p", {Kind::real, "4", {}}},
        {"gap_start", {Kind::integer, "4", {}}},
        {"count", {Kind::integer, "7", {}}},
        {"second_amplitude", {Kind::real, "0.5", {}}},
        {"threshold", {Kind::real, "1e-3", {}}},
        {"extraction_q", {Kind::real, "6", {}}}}},
      {"verify",
       {{"corpus", {Kind::integer, "10", {}}},
        {"p1", {Kind::real, "10", {}}},
        {"p2", {Kind::real, "10", {}}},
        {"q", {Kind::real, "2", {}}},
        {"kato_p", {Kind::real, "6", {}}},
        {"kato_q", {Kind::real, "6", {}}},
        {"kato_r", {Kind::real, "6", {}}}}},
      {"output", {{"dir", {Kind::text, "bnslab_out", {}}}}},
  };
  return s;
}

double parse_real(const std::string& v) {
  if (v == "pi") return std::numbers::pi;
  if (v == "2pi") return 2.0 * std::numbers::pi;
  if (v == "inf") return inf;
  std::size_t used = 0;
  double d = 0.0;
  try {
    d = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw ConfigError("not a number: '" + v + "'");
  return d;
}

long long parse_integer(const std::string& v) {
  std::size_t used = 0;
  long long d = 0;
  try {
    d = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != v.size() || v.empty()) throw ConfigError("not an integer: '" + v + "'");
  return d;
}

bool parse_flag(const std::string& v) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ConfigError("not a boolean: '" + v + "'");
}

void check_value(const std::string& name, const Key& key, const std::string& v) {
  try {
    switch (key.kind) {
      case Kind::integer: parse_integer(v); break;
      case Kind::real: parse_real(v); break;
      case Kind::flag: parse_flag(v); break;
      case Kind::text:
        if (!key.choices.empty() &&
            std::find(key.choices.begin(), key.choices.end(), v) == key.choices.end())
          throw ConfigError("'" + v + "' is not one of the allowed values");
        break;
    }
  } catch (const ConfigError& e) {
    throw ConfigError(name + ": " + e.what());
  }
}

// Validated key-value view with schema defaults.
class Config {
 public:
  explicit Config(ptree tree) : tree_(std::move(tree)) {
    for (const auto& [section, body] : tree_) {
      const auto s = schema().find(section);
      if (s == schema().end()) throw ConfigError("unknown section [" + section + "]");
      if (!body.data().empty()) throw ConfigError("key outside a section: " + section);
      for (const auto& [key, value] : body) {
        const auto k = s->second.find(key);
        if (k == s->second.end()) throw ConfigError("unknown key " + section + "." + key);
        check_value(section + "." + key, k->second, value.data());
      }
    }
  }
  std::string text(const std::string& path) const { return raw(path); }
  double real(const std::string& path) const { return parse_real(raw(path)); }
  long long integer(const std::string& path) const { return parse_integer(raw(path)); }
  bool flag(const std::string& path) const { return parse_flag(raw(path)); }

 private:
  std::string raw(const std::string& path) const {
    if (auto v = tree_.get_optional<std::string>(path)) return *v;
    const auto dot = path.find('.');
    return schema().at(path.substr(0, dot)).at(path.substr(dot + 1)).fallback;
  }
  ptree tree_;
};

std::string sha256_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
  return hex.str();
}

struct Context {
  Config cfg;
  std::uint64_t seed;
  fs::path out;
  Manifest manifest;
};

GridSpec grid_of(const Config& c) {
  const long long n = c.integer("grid.n");
  if (n < 16 || n > 512 || (n & (n - 1)) != 0)
    throw ConfigError("grid.n must be a power of two in [16, 512]");
  return GridSpec::make(static_cast<int>(n), c.real("grid.period"));
}

SolverConfig solver_of(const Config& c) {
  SolverConfig s;
  s.dt = c.real("solver.dt");
  s.n_steps = static_cast<int>(c.integer("solver.n_steps"));
  s.picard_tol = c.real("solver.picard_tol");
  s.max_picard_iters = static_cast<int>(c.integer("solver.max_picard_iters"));
  s.c0_estimate = c.real("solver.c0_estimate");
  s.dealias = c.text("solver.dealias");
  s.growth_threshold = c.real("solver.growth_threshold");
  s.validate();
  return s;
}

SpectralField make_field(const Config& c, const GridSpec& g, std::uint64_t seed) {
  const std::string kind = c.text("field.kind");
  const double amp = c.real("field.amplitude");
  if (kind == "snapshot") {
    const std::string path = c.text("field.path");
    if (path.empty()) throw ConfigError("field.path is required for kind = snapshot");
    return read_snapshot(path);
  }
  try {
    if (kind == "random_bandlimited")
      return random_bandlimited(g, c.real("field.k_lo"), c.real("field.k_hi"), amp, seed);
    if (kind == "taylor_green_like")
      return taylor_green_like(g, static_cast<int>(c.integer("field.k0")), amp);
    return shell_bump(g, static_cast<int>(c.integer("field.j0")), amp, seed);
  } catch (const ArgumentError& e) {
    throw ConfigError(std::string("field parameters out of range: ") + e.what());
  }
}

void write_trajectory(const Trajectory& u, const fs::path& dir, const std::string& mode) {
  if (mode == "none") return;
  fs::create_directories(dir);
  const std::size_t first = mode == "all" ? 0 : u.size() - 1;
  for (std::size_t i = first; i < u.size(); ++i) {
    char name[32];
    std::snprintf(name, sizeof name, "step_%04zu.bnsf", i);
    write_snapshot(u.snapshots[i], dir / name);
  }
}

int cmd_generate(Context& ctx) {
  const SpectralField u = make_field(ctx.cfg, grid_of(ctx.cfg), ctx.seed);
  write_snapshot(u, ctx.out / "field.bnsf");
  ctx.manifest.set("field", "field.bnsf");
  return exit_ok;
}

int cmd_norms(Context& ctx) {
  const Config& c = ctx.cfg;
  const SpectralField u0 = make_field(c, grid_of(c), ctx.seed);
  const SolverConfig s = solver_of(c);
  const double p = c.real("besov.p"), q = c.real("besov.q");
  const double rho1 = c.real("norms.rho1"), rho2 = c.real("norms.rho2");
  const double kq = c.real("norms.kato_q");
  const double T = s.final_time();
  const double sp = critical_s(p);
  const Trajectory heat = heat_trajectory(u0, s.times());
  const BlockNormTable table = block_norm_table(heat, p);
  std::vector<NormRow> rows;
  rows.push_back({"besov", 0, 0, sp, p, q, 0, 0, besov_norm(u0, {sp, p, q})});
  for (double rho : {rho1, rho2}) {
    const double sr = sp + (std::isinf(rho) ? 0.0 : 2.0 / rho);
    rows.push_back({"chemin_lerner", rho, rho, sr, p, q, 0, T,
                    chemin_lerner_norm(table, rho, sr, q, 0.0, T)});
  }
  rows.push_back({"script", rho1, rho2, sp, p, q, 0, T, script_norm(table, rho1, rho2, q, 0.0, T)});
  rows.push_back({"kato", 0, 0, critical_s(kq), kq, kq, 0, T, kato_norm(heat, kq, T, 0)});
  rows.push_back({"kato1", 0, 0, 1.0, kq, inf, 0, T, kato_norm(heat, kq, T, 1)});
  write_norm_report(ctx.out / "norms.csv", rows);
  ctx.manifest.set("report", "norms.csv");
  return exit_ok;
}

int cmd_solve(Context& ctx) {
  const Config& c = ctx.cfg;
  const SpectralField u0 = make_field(c, grid_of(c), ctx.seed);
  const SolverConfig s = solver_of(c);
  const SolveResult res = picard_solve(u0, s, {0.0, c.real("besov.p"), c.real("besov.q")});
  CsvWriter w(ctx.out / "blowup.csv", {"t", "besov_norm", "running_script_norm", "classification"});
  const std::string label = to_string(res.report.classification);
  for (std::size_t i = 0; i < res.report.times.size(); ++i) {
    w.cell(res.report.times[i]).cell(res.report.besov_norms[i]).cell(res.report.running_norms[i]);
    w.cell(label).end_row();
  }
  CsvWriter pr(ctx.out / "picard.csv", {"iteration", "relative_increment"});
  for (std::size_t k = 0; k < res.report.picard_residuals.size(); ++k)
    pr.cell(static_cast<long long>(k + 1)).cell(res.report.picard_residuals[k]).end_row();
  write_trajectory(res.u, ctx.out / "trajectory", c.text("solver.snapshots"));
  ctx.manifest.set("report", "blowup.csv");
  ctx.manifest.set("classification", label);
  ctx.manifest.set("picard_iterations", std::to_string(res.report.iterations));
  if (!res.report.converged && c.flag("solver.require_convergence"))
    throw NumericalError("Picard iteration diverged");
  return exit_ok;
}

void write_expansion(Context& ctx, const ExpansionResult& r, const std::string& term_kind) {
  CsvWriter w(ctx.out / "expansion.csv", {"item", "norm", "value"});
  for (std::size_t n = 0; n < r.terms.size(); ++n) {
    w.cell(term_kind + std::to_string(n)).cell(std::string("term_norm")).cell(r.term_norms[n]);
    w.end_row();
  }
  w.cell(std::string("tail")).cell(std::string("tail_norm")).cell(r.tail_norm).end_row();
  w.cell(std::string("identity")).cell(std::string("relative_residual")).cell(r.residual).end_row();
  const std::string mode = ctx.cfg.text("solver.snapshots");
  for (std::size_t n = 0; n < r.terms.size(); ++n) {
    const std::string dir = "terms/" + term_kind + std::to_string(n);
    write_trajectory(r.terms[n], ctx.out / dir, mode);
    if (mode != "none") ctx.manifest.set("term." + std::to_string(n), dir);
  }
  write_trajectory(r.tail, ctx.out / "terms/tail", mode);
  if (mode != "none") ctx.manifest.set("tail", "terms/tail");
  ctx.manifest.set("report", "expansion.csv");
  ctx.manifest.set("residual", r.residual);
}

int cmd_expand(Context& ctx) {
  const Config& c = ctx.cfg;
  const SpectralField u0 = make_field(c, grid_of(c), ctx.seed);
  const SolverConfig s = solver_of(c);
  const SolutionExpansion e = expand_solution(u0, static_cast<int>(c.integer("expand.k")), s);
  write_expansion(ctx, e.expansion, "u_L_");
  ctx.manifest.set("p", e.expansion.p);
  return exit_ok;
}

int cmd_iterate(Context& ctx) {
  const Config& c = ctx.cfg;
  const SpectralField u0 = make_field(c, grid_of(c), ctx.seed);
  const SolverConfig s = solver_of(c);
  const SolutionExpansion e = expand_solution(u0, static_cast<int>(c.integer("expand.k")), s);
  Trajectory v0 = e.expansion.terms[0];
  for (std::size_t n = 1; n < e.expansion.terms.size(); ++n) v0 += e.expansion.terms[n];
  const auto steps = simple_iteration(u0, e.solution, v0, e.expansion.tail,
                                      static_cast<int>(c.integer("iterate.steps")), e.expansion.p);
  CsvWriter w(ctx.out / "iterate.csv", {"j", "defect", "v_sup_lp", "w_spacetime_l3"});
  for (std::size_t j = 0; j < steps.size(); ++j)
    w.cell(static_cast<long long>(j)).cell(steps[j].defect).cell(steps[j].v_sup_lp).cell(
        steps[j].w_spacetime_l3).end_row();
  ctx.manifest.set("report", "iterate.csv");
  return exit_ok;
}

int cmd_profiles(Context& ctx) {
  const Config& c = ctx.cfg;
  const GridSpec g = grid_of(c);
  const double p = c.real("profiles.p");
  const int gap0 = static_cast<int>(c.integer("profiles.gap_start"));
  const long long count = c.integer("profiles.count");
  if (count < 2 || count > 32) throw ConfigError("profiles.count must lie in [2, 32]");
  const SpectralField first = make_field(c, g, ctx.seed);
  const SpectralField second =
      with_rms(make_field(c, g, ctx.seed + 1), c.real("profiles.second_amplitude") * c.real("field.amplitude"));
  std::vector<MultiscaleField> seq;
  std::vector<ScaleCore> planted;
  for (long long n = 0; n < count; ++n) {
    ScaleCore sc;
    sc.m = -(gap0 + static_cast<int>(n));
    sc.core = {0.25 * g.period, 0.5 * g.period, 0.0};
    planted.push_back(sc);
    seq.push_back(normalized(single(first) + single(scale_op(sc, second))));
  }
  ExtractionOptions opt;
  opt.threshold = c.real("profiles.threshold");
  opt.q = c.real("profiles.extraction_q");
  const ProfileSet ps = extract_profiles(seq, opt);
  std::vector<std::size_t> ns;
  for (long long n = 0; n < count; ++n) ns.push_back(static_cast<std::size_t>(n));
  const auto rows = pythagorean_check(ps, seq, ns, ps.profiles.size(), p);
  CsvWriter w(ctx.out / "profiles.csv", {"n", "J", "epsilon", "cross_term_max", "r_norm"});
  const SolverConfig s = solver_of(c);
  for (const auto& r : rows) {
    double r_norm = std::nan("");
    try {
      const EvolvedReport ev = evolve_decomposition(ps, s, r.n, ps.profiles.size(), g, p);
      if (ev.converged) r_norm = ev.r_norm;
    } catch (const ArgumentError&) {
      // profiles at this index do not fit on one dense grid
    }
    w.cell(static_cast<long long>(r.n)).cell(static_cast<long long>(r.J)).cell(r.relative);
    w.cell(r.cross_term_max).cell(r_norm).end_row();
  }
  fs::create_directories(ctx.out / "profiles");
  for (std::size_t j = 0; j < ps.profiles.size(); ++j) {
    const std::string file = "profiles/phi_" + std::to_string(j) + ".bnsf";
    write_snapshot(ps.profiles[j], ctx.out / file);
    ctx.manifest.set("profile." + std::to_string(j), file);
    std::ostringstream sched;
    for (const auto& sc : ps.schedules[j]) {
      sched << "(" << sc.m;
      for (double x : sc.core) sched << "," << std::llround(x / g.spacing());
      sched << ")";
    }
    ctx.manifest.set("schedule." + std::to_string(j), sched.str());
  }
  ctx.manifest.set("profiles_found", std::to_string(ps.profiles.size()));
  ctx.manifest.set("incomplete", ps.incomplete ? "true" : "false");
  ctx.manifest.set("report", "profiles.csv");
  return exit_ok;
}

int cmd_verify(Context& ctx) {
  const Config& c = ctx.cfg;
  const GridSpec g = grid_of(c);
  const SolverConfig s = solver_of(c);
  ProductExponents e;
  e.p1 = c.real("verify.p1");
  e.p2 = c.real("verify.p2");
  e.q = c.real("verify.q");
  const double kp = c.real("verify.kato_p"), kq = c.real("verify.kato_q"), kr = c.real("verify.kato_r");
  const long long corpus = c.integer("verify.corpus");
  if (corpus < 1) throw ConfigError("verify.corpus must be positive");
  CsvWriter w(ctx.out / "estimates.csv", {"check_id", "exponents", "lhs", "rhs", "ratio"});
  std::ostringstream pe;
  pe << e.s1 << ";" << e.t1 << ";" << e.p1 << ";" << e.p2 << ";" << e.q;
  std::ostringstream ke;
  ke << kp << ";" << kq << ";" << kr;
  for (long long i = 0; i < corpus; ++i) {
    const std::uint64_t sd = ctx.seed + 2 * static_cast<std::uint64_t>(i);
    const SpectralField f = make_field(c, g, sd);
    const SpectralField h = make_field(c, g, sd + 1);
    const BonyTriple b = bony_decompose(f, h);
    const SpectralField prod = componentwise_product(f, h);
    const double recon = max_abs_difference(b.low_high + b.high_low + b.high_high, prod);
    const double scale = max_abs_coefficient(prod);
    w.cell(std::string("bony_reconstruction")).cell(std::string("-")).cell(recon).cell(scale);
    w.cell(scale > 0 ? recon / scale : 0.0).end_row();
    const ProductReport pr = product_estimate_check(f, h, e);
    w.cell(std::string("paraproduct")).cell(pe.str()).cell(pr.paraproduct_lhs);
    w.cell(pr.paraproduct_rhs).cell(pr.paraproduct_ratio).end_row();
    w.cell(std::string("remainder")).cell(pe.str()).cell(pr.remainder_lhs);
    w.cell(pr.remainder_rhs).cell(pr.remainder_ratio).end_row();
    const KatoBilinearReport kr_ = bilinear_kato_check(heat_trajectory(f, s.times()),
                                                       heat_trajectory(h, s.times()), kp, kq, kr,
                                                       s.final_time());
    w.cell(std::string("bilinear_kato")).cell(ke.str()).cell(kr_.lhs).cell(kr_.rhs).cell(kr_.c);
    w.end_row();
  }
  ctx.manifest.set("report", "estimates.csv");
  return exit_ok;
}

using Handler = int (*)(Context&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> h = {
      {"norms", cmd_norms},       {"solve", cmd_solve},
      {"expand", cmd_expand},     {"iterate", cmd_iterate},
      {"profiles", cmd_profiles}, {"verify-estimates", cmd_verify},
      {"generate", cmd_generate}};
  return h;
}

void write_error(const fs::path& out, int status, const std::string& kind, const std::string& msg) {
  std::cerr << "bnslab: " << kind << ": " << msg << '\n';
  std::error_code ec;
  fs::create_directories(out, ec);
  std::ofstream f(out / "error.txt");
  if (f) f << "status = " << status << "\nkind = " << kind << "\nmessage = " << msg << '\n';
}

ptree load(const Scenario& sc) {
  ptree tree;
  try {
    boost::property_tree::ini_parser::read_ini(sc.config.string(), tree);
  } catch (const boost::property_tree::ini_parser_error& e) {
    throw ConfigError(std::string("cannot parse config: ") + e.what());
  }
  for (const auto& o : sc.overrides) {
    const auto eq = o.find('=');
    const auto dot = o.find('.');
    if (eq == std::string::npos || dot == std::string::npos || dot > eq)
      throw ConfigError("override must look like section.key=value: " + o);
    tree.put(ptree::path_type(o.substr(0, eq), '.'), o.substr(eq + 1));
  }
  return tree;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> c = {"norms",    "solve",           "expand", "iterate",
                                             "profiles", "verify-estimates", "generate"};
  return c;
}

std::string schema_text() {
  std::ostringstream s;
  for (const auto& [section, keys] : schema()) {
    s << "[" << section << "]\n";
    for (const auto& [name, key] : keys) {
      static const char* kinds[] = {"integer", "real", "text", "boolean"};
      s << name << " = " << key.fallback << "  ; " << kinds[int(key.kind)];
      if (!key.choices.empty()) {
        s << " one of";
        for (const auto& ch : key.choices) s << " " << ch;
      }
      s << '\n';
    }
  }
  return s.str();
}

int run_scenario(const Scenario& sc) {
  fs::path out = sc.out.empty() ? fs::path("bnslab_out") : sc.out;
  try {
    const auto h = handlers().find(sc.command);
    if (h == handlers().end()) throw ConfigError("unknown command " + sc.command);
    if (!fs::is_regular_file(sc.config)) throw ConfigError("config file not found: " + sc.config.string());
    Config cfg(load(sc));
    if (sc.out.empty()) out = cfg.text("output.dir");
    const std::uint64_t seed =
        sc.seed ? *sc.seed : static_cast<std::uint64_t>(cfg.integer("run.seed"));
    fs::create_directories(out);
    Context ctx{std::move(cfg), seed, out, {}};
    ctx.manifest.set("command", sc.command);
    ctx.manifest.set("config", fs::absolute(sc.config).string());
    ctx.manifest.set("config_sha256", sha256_file(sc.config));
    std::string joined;
    for (const auto& o : sc.overrides) joined += (joined.empty() ? "" : " ") + o;
    ctx.manifest.set("overrides", joined);
    ctx.manifest.set("seed", std::to_string(seed));
    ctx.manifest.set("version", BNSLAB_VERSION);
    int status = exit_ok;
    try {
      status = h->second(ctx);
      ctx.manifest.set("status", std::to_string(status));
      ctx.manifest.write(out / "manifest.txt");
    } catch (const NumericalError&) {
      ctx.manifest.set("status", std::to_string(exit_numerical));
      ctx.manifest.write(out / "manifest.txt");
      throw;
    }
    return status;
  } catch (const ConfigError& e) {
    write_error(out, exit_config, "config", e.what());
    return exit_config;
  } catch (const ArgumentError& e) {
    write_error(out, exit_config, "argument", e.what());
    return exit_config;
  } catch (const NumericalError& e) {
    write_error(out, exit_numerical, "numerical", e.what());
    return exit_numerical;
  } catch (const std::exception& e) {
    write_error(out, 1, "internal", e.what());
    return 1;
  }
}

}  // namespace bnslab::cli
