#include "gw/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "gw/bethe.hpp"
#include "gw/diffop.hpp"
#include "gw/error.hpp"
#include "gw/gaudin.hpp"
#include "gw/rep.hpp"
#include "gw/solver.hpp"

namespace gw::cli {

namespace {

json complex_json(cplx c) { return json::array({c.real(), c.imag()}); }

cplx complex_from_json(const json& j, const std::string& what) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ConfigError(what + ": expected a number or an [re, im] pair");
}

json complex_list(std::span<const cplx> v) {
  json out = json::array();
  for (cplx c : v) out.push_back(complex_json(c));
  return out;
}

json tuple_json(const TuplePoint& t) {
  json out = json::array();
  for (const auto& g : t.groups) out.push_back(complex_list(g));
  return out;
}

template <typename T>
T get_as(const json& j, const std::string& key) {
  try {
    return j.get<T>();
  } catch (const json::exception&) {
    throw ConfigError("config key '" + key + "' has the wrong type");
  }
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

double parse_double(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError(what + ": '" + s + "' is not a number");
  }
  if (used != s.size()) throw ConfigError(what + ": '" + s + "' is not a number");
  return v;
}

std::vector<int> parse_int_list(const std::string& s, const std::string& what) {
  std::vector<int> out;
  for (const auto& item : split(s, ',')) {
    const double v = parse_double(item, what);
    if (v != std::floor(v) || std::abs(v) > 1e6) throw ConfigError(what + ": '" + item + "' is not an integer");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

// Comma-separated points; a complex point is written re:im.
std::vector<cplx> parse_points(const std::string& s) {
  std::vector<cplx> out;
  for (const auto& item : split(s, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() == 1)
      out.emplace_back(parse_double(parts[0], "--z"), 0.0);
    else if (parts.size() == 2)
      out.emplace_back(parse_double(parts[0], "--z"), parse_double(parts[1], "--z"));
    else
      throw ConfigError("--z: malformed point '" + item + "'");
  }
  return out;
}

double* tolerance_slot(Tolerances& t, const std::string& name) {
  if (name == "reality") return &t.reality;
  if (name == "wronskian") return &t.wronskian;
  if (name == "eigen") return &t.eigen;
  if (name == "commutation") return &t.commutation;
  if (name == "symmetry") return &t.symmetry;
  if (name == "singular") return &t.singular;
  return nullptr;
}

void set_tolerance(Tolerances& t, const std::string& name, double value) {
  double* slot = tolerance_slot(t, name);
  if (!slot) throw ConfigError("unknown tolerance '" + name + "'");
  if (!(value > 0.0) || !std::isfinite(value)) throw ConfigError("tolerance '" + name + "' must be a positive real");
  *slot = value;
}

json spec_json(const MasterSpec& s) {
  return {{"r", s.r}, {"gram", s.gram}, {"weights", s.weights}, {"z", complex_list(s.z)}, {"l", s.l}, {"d", s.d}};
}

bool is_real(std::span<const cplx> z) {
  return std::all_of(z.begin(), z.end(), [](cplx c) { return c.imag() == 0.0; });
}

bool bethe_available(const MasterSpec& spec) {
  if (!spec.is_type_a() || spec.total_l() > kMaxBetheVariables || spec.n() > kMaxBetheSlots) return false;
  return spec.all_last_fundamental() || spec.r == 1;
}

bool selected(const RunConfig& cfg, const std::string& check) {
  return cfg.checks.empty() || std::find(cfg.checks.begin(), cfg.checks.end(), check) != cfg.checks.end();
}

// Solves once and carries the pieces later stages share.
struct Pipeline {
  MasterSpec spec;
  SolveReport solved;
  json report;
};

Pipeline solve_stage(const RunConfig& cfg) {
  Pipeline p;
  p.spec = resolve_spec(cfg);
  SolveStrategy st;
  st.n_seeds = cfg.seeds;
  st.rng_seed = cfg.rng_seed;
  st.jobs = cfg.jobs;
  p.solved = solve_all(p.spec, st);
  json orbits = json::array();
  for (const auto& o : p.solved.orbits)
    orbits.push_back({{"t", tuple_json(o.rep)}, {"residual", o.residual_norm}, {"newton_iters", o.newton_iters}});
  p.report = {{"command", cfg.command},
              {"config", config_to_json(cfg)},
              {"spec", spec_json(p.spec)},
              {"target", p.solved.target_count >= 0 ? json(p.solved.target_count) : json(nullptr)},
              {"orbits", orbits},
              {"seeds_tried", p.solved.seeds_tried},
              {"failures", p.solved.failures}};
  return p;
}

struct BetheStage {
  RepSpace rep;
  std::vector<TuplePoint> points;
  std::vector<Eigen::VectorXcd> vectors;
  std::vector<double> singular_defects;
  BasisReport basis;
};

BetheStage bethe_stage(Pipeline& p, const RunConfig& cfg) {
  BetheStage b{rep_for_spec(p.spec), {}, {}, {}, {}};
  json vecs = json::array();
  for (const auto& o : p.solved.orbits) {
    const BetheVector v = weight_function(b.rep, p.spec, o.rep);
    const double defect = is_singular(v, b.rep);
    b.points.push_back(o.rep);
    b.vectors.push_back(v.coords);
    b.singular_defects.push_back(defect);
    vecs.push_back({{"coords", complex_list(std::span<const cplx>(v.coords.data(), static_cast<std::size_t>(v.coords.size())))},
                    {"weight", v.weight},
                    {"singular_defect", defect},
                    {"singular", defect <= cfg.tol.singular}});
  }
  b.basis = bethe_basis_check(b.rep, p.spec, p.solved.orbits);
  p.report["bethe"] = {{"dim", b.rep.dim()},
                       {"vectors", vecs},
                       {"basis",
                        {{"columns", b.basis.columns}, {"rank", b.basis.rank}, {"sing_dim", b.basis.sing_dim}, {"pass", b.basis.pass}}}};
  return b;
}

json gaudin_stage(Pipeline& p, const BetheStage& b, const RunConfig& cfg) {
  const OperatorDiffOp k = build_K(build_M(b.rep, p.spec.z));
  const Subspace sing = singular_subspace(b.rep, bethe_weight(b.rep, p.spec));
  const SpectralReport sr = spectral_report(p.spec, b.rep, k, sing, b.points, b.vectors, cfg.samples, cfg.rng_seed);
  json eig = json::array();
  for (const auto& per_vector : sr.eigenvalues) {
    json samples = json::array();
    for (const auto& lam : per_vector) samples.push_back(complex_list(lam));
    eig.push_back(samples);
  }
  double worst = 0.0;
  for (double r : sr.eigen_residuals) worst = std::max(worst, r);
  const bool pass = worst <= cfg.tol.eigen && sr.commutator_defect <= cfg.tol.commutation &&
                    sr.symmetry_defect <= cfg.tol.symmetry && (!sr.real_data || sr.real_spectrum) && sr.simple;
  json g = {{"x_samples", complex_list(sr.x_samples)},
            {"eigenvalues", eig},
            {"eigen_residuals", sr.eigen_residuals},
            {"eigen_residual_max", worst},
            {"symmetry_defect", sr.symmetry_defect},
            {"commutator_defect", sr.commutator_defect},
            {"real_data", sr.real_data},
            {"real_spectrum", sr.real_data ? json(sr.real_spectrum) : json(nullptr)},
            {"simple", sr.simple},
            {"sing_dim", sing.dim()},
            {"pass", pass}};
  p.report["gaudin"] = g;
  return g;
}

std::string fmt_num(double v) {
  std::ostringstream os;
  os << std::setprecision(6) << v;
  return os.str();
}

std::string fmt_complex(const json& c) {
  const double re = c[0].get<double>(), im = c[1].get<double>();
  std::ostringstream os;
  os << std::setprecision(8) << re;
  if (im != 0.0) os << (im < 0 ? " - " : " + ") << std::setprecision(8) << std::abs(im) << "i";
  return os.str();
}

std::string fmt_ints(const json& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i].get<int>());
  return s + ")";
}

std::string yes_no(const json& flags, std::size_t i) {
  if (!flags.is_array() || i >= flags.size()) return "-";
  return flags[i].get<bool>() ? "yes" : "no";
}

}  // namespace

const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"count", "reality", "conjugation", "wronskian", "bethe", "basis", "gaudin"};
  return names;
}

void apply_config_json(const json& j, RunConfig& cfg) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  static const std::vector<std::string> known{"d",     "z",     "r",       "gram",    "weights", "l",      "seeds",
                                              "rng_seed", "jobs", "samples", "tolerances", "checks", "output", "input"};
  for (const auto& [key, value] : j.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key '" + key + "'");

  if (j.contains("d")) cfg.d = get_as<std::vector<int>>(j["d"], "d");
  if (j.contains("z")) {
    if (!j["z"].is_array()) throw ConfigError("config key 'z' must be an array");
    std::vector<cplx> z;
    for (const auto& v : j["z"]) z.push_back(complex_from_json(v, "z"));
    cfg.z = z;
  }
  const bool any_explicit = j.contains("r") || j.contains("gram") || j.contains("weights") || j.contains("l");
  if (any_explicit) {
    if (!(j.contains("r") && j.contains("gram") && j.contains("weights") && j.contains("l")))
      throw ConfigError("an explicit spec needs all of r, gram, weights and l");
    if (j.contains("d")) throw ConfigError("give either d or an explicit spec, not both");
    MasterSpec s;
    s.r = get_as<int>(j["r"], "r");
    s.gram = get_as<std::vector<std::vector<int>>>(j["gram"], "gram");
    s.weights = get_as<std::vector<std::vector<int>>>(j["weights"], "weights");
    s.l = get_as<std::vector<int>>(j["l"], "l");
    cfg.explicit_spec = s;
  }
  if (j.contains("seeds")) cfg.seeds = get_as<int>(j["seeds"], "seeds");
  if (j.contains("rng_seed")) cfg.rng_seed = get_as<std::uint64_t>(j["rng_seed"], "rng_seed");
  if (j.contains("jobs")) cfg.jobs = get_as<int>(j["jobs"], "jobs");
  if (j.contains("samples")) cfg.samples = get_as<int>(j["samples"], "samples");
  if (j.contains("output")) cfg.output = get_as<std::string>(j["output"], "output");
  if (j.contains("input")) cfg.input = get_as<std::string>(j["input"], "input");
  if (j.contains("checks")) cfg.checks = get_as<std::vector<std::string>>(j["checks"], "checks");
  if (j.contains("tolerances")) {
    if (!j["tolerances"].is_object()) throw ConfigError("config key 'tolerances' must be an object");
    for (const auto& [name, value] : j["tolerances"].items()) {
      if (!value.is_number()) throw ConfigError("tolerance '" + name + "' must be a positive real");
      set_tolerance(cfg.tol, name, value.get<double>());
    }
  }
}

void apply_tolerance(const std::string& assignment, RunConfig& cfg) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("--tol expects name=value, got '" + assignment + "'");
  set_tolerance(cfg.tol, assignment.substr(0, eq), parse_double(assignment.substr(eq + 1), "--tol"));
}

json config_to_json(const RunConfig& cfg) {
  json j = {{"seeds", cfg.seeds},
            {"rng_seed", cfg.rng_seed},
            {"jobs", cfg.jobs},
            {"samples", cfg.samples},
            {"tolerances",
             {{"reality", cfg.tol.reality},
              {"wronskian", cfg.tol.wronskian},
              {"eigen", cfg.tol.eigen},
              {"commutation", cfg.tol.commutation},
              {"symmetry", cfg.tol.symmetry},
              {"singular", cfg.tol.singular}}},
            {"checks", cfg.checks}};
  if (!cfg.d.empty()) j["d"] = cfg.d;
  if (cfg.explicit_spec) {
    j["r"] = cfg.explicit_spec->r;
    j["gram"] = cfg.explicit_spec->gram;
    j["weights"] = cfg.explicit_spec->weights;
    j["l"] = cfg.explicit_spec->l;
  }
  if (cfg.z) j["z"] = complex_list(*cfg.z);
  return j;
}

MasterSpec resolve_spec(const RunConfig& cfg) {
  if (cfg.seeds < 1) throw ConfigError("seeds must be positive");
  if (cfg.samples < 2) throw ConfigError("samples must be at least 2");
  if (cfg.jobs < 0) throw ConfigError("jobs must be nonnegative");
  for (const auto& c : cfg.checks)
    if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
      throw ConfigError("unknown check '" + c + "'");
  try {
    MasterSpec spec;
    if (cfg.explicit_spec) {
      spec = *cfg.explicit_spec;
      const std::size_t n = spec.weights.size();
      if (cfg.z) {
        spec.z = *cfg.z;
      } else {
        for (std::size_t s = 0; s < n; ++s) spec.z.emplace_back(static_cast<double>(s));
      }
    } else {
      if (cfg.d.empty()) throw ConfigError("no spec given: pass --d or a config with d or r/gram/weights/l");
      ExponentSpec e{cfg.d};
      e.validate();
      std::vector<cplx> z;
      if (cfg.z) {
        z = *cfg.z;
      } else {
        for (int s = 0; s < e.n(); ++s) z.emplace_back(static_cast<double>(s));
      }
      if (static_cast<int>(z.size()) != e.n())
        throw ConfigError("d requires n = " + std::to_string(e.n()) + " points z, got " + std::to_string(z.size()));
      spec = spec_from_exponents(e, z);
    }
    spec.validate();
    return spec;
  } catch (const Error& e) {
    throw ConfigError(e.what());
  }
}

json cmd_count(const RunConfig& cfg) {
  if (cfg.d.empty()) throw ConfigError("count needs exponents d");
  ExponentSpec e{cfg.d};
  try {
    e.validate();
  } catch (const Error& err) {
    throw ConfigError(err.what());
  }
  return {{"command", "count"}, {"d", e.d}, {"n", e.n()}, {"l", e.l()}, {"N", multiplicity_N(e)}};
}

json cmd_solve(const RunConfig& cfg) { return solve_stage(cfg).report; }

json cmd_bethe(const RunConfig& cfg) {
  Pipeline p = solve_stage(cfg);
  if (!bethe_available(p.spec)) throw ConfigError("Bethe vectors need a type-A spec within the size caps");
  bethe_stage(p, cfg);
  return p.report;
}

json cmd_gaudin(const RunConfig& cfg) {
  Pipeline p = solve_stage(cfg);
  if (!bethe_available(p.spec)) throw ConfigError("the Gaudin checks need a type-A spec within the size caps");
  const BetheStage b = bethe_stage(p, cfg);
  gaudin_stage(p, b, cfg);
  return p.report;
}

json cmd_verify(const RunConfig& cfg) {
  {
    const MasterSpec spec = resolve_spec(cfg);
    if (!is_real(spec.z)) throw ConfigError("verify needs real points z");
  }
  Pipeline p = solve_stage(cfg);
  const MasterSpec& spec = p.spec;
  json checks = json::object();
  auto skip = [&](const std::string& name, const std::string& why) { checks[name] = {{"skipped", why}}; };

  if (selected(cfg, "count")) {
    if (p.solved.target_count >= 0)
      checks["count"] = {{"found", p.solved.orbits.size()},
                         {"expected", p.solved.target_count},
                         {"pass", static_cast<int>(p.solved.orbits.size()) == p.solved.target_count}};
    else
      skip("count", "no expected count for an explicit spec");
  }
  if (selected(cfg, "reality")) {
    if (spec.is_type_a()) {
      json flags = json::array();
      bool all = true;
      for (const auto& o : p.solved.orbits) {
        const bool ok = is_real_space(fundamental_op_typeA(spec, o.rep), cfg.tol.reality);
        flags.push_back(ok);
        all = all && ok;
      }
      checks["reality"] = {{"per_orbit", flags}, {"pass", all}};
    } else {
      skip("reality", "fundamental operators are type A only");
    }
  }
  if (selected(cfg, "conjugation")) {
    const std::vector<bool> flags = conjugation_check(p.solved, spec);
    checks["conjugation"] = {{"per_orbit", flags},
                             {"pass", std::all_of(flags.begin(), flags.end(), [](bool b) { return b; })}};
  }
  if (selected(cfg, "wronskian")) {
    if (spec.is_type_a() && spec.all_last_fundamental()) {
      json errs = json::array();
      bool all = true;
      for (const auto& o : p.solved.orbits) {
        const double e = wronskian_roundtrip_error(spec, o.rep);
        errs.push_back(std::isfinite(e) ? json(e) : json(nullptr));
        all = all && e <= cfg.tol.wronskian;
      }
      checks["wronskian"] = {{"per_orbit", errs}, {"pass", all}};
    } else {
      skip("wronskian", "needs a tensor power of the last fundamental weight");
    }
  }
  const bool want_bethe = selected(cfg, "bethe") || selected(cfg, "basis") || selected(cfg, "gaudin");
  if (want_bethe && bethe_available(spec)) {
    const BetheStage b = bethe_stage(p, cfg);
    if (selected(cfg, "bethe")) {
      const bool all = std::all_of(b.singular_defects.begin(), b.singular_defects.end(),
                                   [&](double v) { return v <= cfg.tol.singular; });
      checks["bethe"] = {{"singular_defects", b.singular_defects}, {"pass", all}};
    }
    if (selected(cfg, "basis"))
      checks["basis"] = {{"rank", b.basis.rank}, {"sing_dim", b.basis.sing_dim}, {"pass", b.basis.pass}};
    if (selected(cfg, "gaudin")) {
      const json g = gaudin_stage(p, b, cfg);
      checks["gaudin"] = {{"eigen_residual_max", g["eigen_residual_max"]},
                          {"commutator_defect", g["commutator_defect"]},
                          {"symmetry_defect", g["symmetry_defect"]},
                          {"real_spectrum", g["real_spectrum"]},
                          {"simple", g["simple"]},
                          {"pass", g["pass"]}};
    }
  } else if (want_bethe) {
    for (const char* name : {"bethe", "basis", "gaudin"})
      if (selected(cfg, name)) skip(name, "Bethe vectors need a type-A spec within the size caps");
  }

  json failed = json::array();
  for (const auto& [name, c] : checks.items())
    if (c.contains("pass") && !c["pass"].get<bool>()) failed.push_back(name);
  p.report["checks"] = checks;
  p.report["failed"] = failed;
  p.report["pass"] = failed.empty();
  return p.report;
}

std::string format_report(const json& report) {
  std::ostringstream os;
  if (report.contains("N") && !report.contains("spec")) {
    os << "d = " << fmt_ints(report["d"]) << "  n = " << report["n"].get<int>() << "  l = " << fmt_ints(report["l"])
       << "  N(d) = " << report["N"].get<int>() << "\n";
    return os.str();
  }
  if (!report.contains("spec")) return "empty report\n";
  const json& spec = report["spec"];
  os << "spec: r = " << spec["r"].get<int>() << ", n = " << spec["z"].size() << ", l = " << fmt_ints(spec["l"]);
  if (!spec["d"].empty()) os << ", d = " << fmt_ints(spec["d"]);
  os << "\nz:";
  for (const auto& c : spec["z"]) os << "  " << fmt_complex(c);
  os << "\n";

  const json& orbits = report["orbits"];
  os << "orbits: " << orbits.size();
  if (!report["target"].is_null()) os << " (expected " << report["target"].get<int>() << ")";
  os << "\n";
  const json empty = json::array();
  const json& checks = report.contains("checks") ? report["checks"] : json::object();
  const json& real = checks.contains("reality") && checks["reality"].contains("per_orbit") ? checks["reality"]["per_orbit"] : empty;
  const json& conj = checks.contains("conjugation") ? checks["conjugation"]["per_orbit"] : empty;
  if (orbits.empty()) {
    os << "  (none)\n";
  } else {
    os << "   #  residual      real  conj  Bethe roots\n";
    for (std::size_t i = 0; i < orbits.size(); ++i) {
      os << std::setw(4) << i << "  " << std::left << std::setw(12) << fmt_num(orbits[i]["residual"].get<double>())
         << "  " << std::setw(4) << yes_no(real, i) << "  " << std::setw(4) << yes_no(conj, i) << std::right << "  ";
      const json& groups = orbits[i]["t"];
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (g) os << " | ";
        for (std::size_t k = 0; k < groups[g].size(); ++k) os << (k ? ", " : "") << fmt_complex(groups[g][k]);
      }
      os << "\n";
    }
  }
  if (report.contains("bethe")) {
    const json& b = report["bethe"]["basis"];
    os << "Bethe vectors: rank " << b["rank"].get<int>() << " of singular space dimension " << b["sing_dim"].get<int>()
       << "\n";
  }
  if (report.contains("gaudin")) {
    const json& g = report["gaudin"];
    os << "Gaudin: eigen residual " << fmt_num(g["eigen_residual_max"].get<double>()) << ", commutator "
       << fmt_num(g["commutator_defect"].get<double>()) << ", symmetry " << fmt_num(g["symmetry_defect"].get<double>())
       << ", simple " << (g["simple"].get<bool>() ? "yes" : "no") << "\n";
    const json& xs = g["x_samples"];
    for (std::size_t b = 0; b < g["eigenvalues"].size(); ++b) {
      os << "  eigenvalues on Bethe vector " << b << ":\n";
      const json& per = g["eigenvalues"][b];
      for (std::size_t k = 0; k < per.size() && k < xs.size(); ++k) {
        os << "    x = " << fmt_complex(xs[k]) << ":";
        for (const auto& lam : per[k]) os << "  " << fmt_complex(lam);
        os << "\n";
      }
    }
  }
  if (report.contains("checks")) {
    os << "checks:\n";
    for (const auto& [name, c] : checks.items()) {
      os << "  " << std::left << std::setw(12) << name << std::right;
      if (c.contains("skipped"))
        os << "SKIP (" << c["skipped"].get<std::string>() << ")\n";
      else
        os << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
    }
    os << "overall: " << (report["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
  }
  return os.str();
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Bethe ansatz, Wronskians and Gaudin Hamiltonians", "gw"};
  app.require_subcommand(1);
  RunConfig cfg;
  std::string config_path, d_text, z_text, checks_text;
  std::vector<std::string> tols;
  int seeds = 0, jobs = -1, samples = 0;
  std::uint64_t rng_seed = 0;

  auto common = [&](CLI::App* sub, bool solving) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--d", d_text, "exponents at infinity, comma separated");
    sub->add_option("--out", cfg.output, "write the JSON report here instead of stdout");
    if (!solving) return;
    sub->add_option("--z", z_text, "points, comma separated; complex as re:im");
    sub->add_option("--seeds", seeds, "multi-start seed budget");
    sub->add_option("--seed", rng_seed, "random seed");
    sub->add_option("--jobs", jobs, "worker threads (0 = all cores); GW_JOBS overrides");
    sub->add_option("--samples", samples, "sample points for the Gaudin checks");
    sub->add_option("--tol", tols, "tolerance override name=value (repeatable)");
    sub->add_option("--checks", checks_text, "verify checks to run, comma separated");
  };
  common(app.add_subcommand("count", "multiplicity N(d)"), false);
  common(app.add_subcommand("solve", "critical orbits of the master function"), true);
  common(app.add_subcommand("verify", "full pipeline with pass/fail checks"), true);
  common(app.add_subcommand("gaudin", "spectral checks of the Gaudin operator"), true);
  common(app.add_subcommand("bethe", "Bethe vectors of the critical orbits"), true);
  CLI::App* report = app.add_subcommand("report", "plain-text summary of a report or a fresh verify run");
  common(report, true);
  report->add_option("--in", cfg.input, "JSON report to summarize");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }
  cfg.command = app.get_subcommands().front()->get_name();
  CLI::App* sub = app.get_subcommands().front();
  auto given = [&](const std::string& name) {
    const CLI::Option* o = sub->get_option_no_throw(name);
    return o != nullptr && o->count() > 0;
  };

  json result;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) throw ConfigError("cannot read config file '" + config_path + "'");
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw ConfigError(std::string("config file is not valid JSON: ") + e.what());
      }
      apply_config_json(j, cfg);
    }
    if (!d_text.empty()) cfg.d = parse_int_list(d_text, "--d");
    if (!z_text.empty()) cfg.z = parse_points(z_text);
    if (given("--seeds")) cfg.seeds = seeds;
    if (given("--seed")) cfg.rng_seed = rng_seed;
    if (given("--jobs")) cfg.jobs = jobs;
    if (given("--samples")) cfg.samples = samples;
    for (const auto& t : tols) apply_tolerance(t, cfg);
    if (!checks_text.empty()) cfg.checks = split(checks_text, ',');
    if (const char* env = std::getenv("GW_JOBS"); env && *env) {
      const double v = parse_double(env, "GW_JOBS");
      if (v != std::floor(v) || v < 0) throw ConfigError("GW_JOBS must be a nonnegative integer");
      cfg.jobs = static_cast<int>(v);
    }

    int code = 0;
    if (cfg.command == "count") {
      result = cmd_count(cfg);
    } else if (cfg.command == "solve") {
      result = cmd_solve(cfg);
    } else if (cfg.command == "bethe") {
      result = cmd_bethe(cfg);
    } else if (cfg.command == "gaudin") {
      result = cmd_gaudin(cfg);
    } else if (cfg.command == "verify") {
      result = cmd_verify(cfg);
      code = result["pass"].get<bool>() ? 0 : 1;
    } else {
      if (!cfg.input.empty()) {
        std::ifstream in(cfg.input);
        if (!in) throw ConfigError("cannot read report '" + cfg.input + "'");
        try {
          result = json::parse(in);
        } catch (const json::exception& e) {
          throw ConfigError(std::string("report is not valid JSON: ") + e.what());
        }
      } else {
        result = cmd_verify(cfg);
        code = result["pass"].get<bool>() ? 0 : 1;
      }
      const std::string text = format_report(result);
      if (cfg.output.empty()) {
        out << text;
      } else {
        std::ofstream f(cfg.output);
        f << text;
      }
      return code;
    }

    const std::string text = result.dump(2) + "\n";
    if (cfg.output.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.output);
      if (!f) throw ConfigError("cannot write '" + cfg.output + "'");
      f << text;
    }
    return code;
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::InvalidSpec:
      case ErrorKind::BadExponents:
      case ErrorKind::NotRealData:
      case ErrorKind::Unsupported:
      case ErrorKind::DimensionCap:
        return 2;
      default:
        return 1;
    }
  }
}

}  // namespace gw::cli
