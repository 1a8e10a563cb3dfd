// SPDX-License-Identifier: Apache-2.0
// hcspec command-line front end.
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hcspec/defect.hpp"
#include "hcspec/dispersion.hpp"
#include "hcspec/errors.hpp"
#include "hcspec/fem.hpp"
#include "hcspec/io.hpp"
#include "hcspec/transfer.hpp"
#include "hcspec/verify.hpp"

namespace fs = std::filesystem;
using hcs::json;

namespace {

constexpr int kOk = 0, kVerifyFailed = 1, kConfigError = 2, kSolverError = 3;

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Options of one subcommand: flag values override the --config file, which overrides defaults.
class Params {
 public:
  Params(CLI::App* app, json defaults) : app_(app), defaults_(std::move(defaults)) {
    app_->add_option("--config", config_path_, "JSON config file");
  }

  void add(const std::string& name, const std::string& help) {
    if (!defaults_.contains(name)) throw std::logic_error("no default for " + name);
    opts_[name] = app_->add_option("--" + name, raw_[name], help);
  }

  void add_flag(const std::string& name, const std::string& help) {
    if (!defaults_.contains(name)) throw std::logic_error("no default for " + name);
    opts_[name] = app_->add_flag("--" + name, flags_[name], help);
  }

  json resolve() const {
    json eff = defaults_;
    if (!config_path_.empty()) {
      json cfg;
      try {
        cfg = hcs::read_json_file(config_path_);
      } catch (const hcs::Error& e) {
        throw ConfigError(e.what());
      }
      if (!cfg.is_object()) throw ConfigError("config must be a JSON object");
      for (auto it = cfg.begin(); it != cfg.end(); ++it) {
        if (!eff.contains(it.key())) throw ConfigError("unknown config key '" + it.key() + "'");
        if (eff[it.key()].type() != it.value().type() && !(eff[it.key()].is_number() && it.value().is_number()))
          throw ConfigError("config key '" + it.key() + "' has the wrong type");
        eff[it.key()] = it.value();
      }
    }
    for (const auto& [name, opt] : opts_) {
      if (opt->count() == 0) continue;
      if (flags_.count(name)) {
        eff[name] = flags_.at(name);
        continue;
      }
      const std::string& text = raw_.at(name);
      const json& def = defaults_.at(name);
      try {
        std::size_t used = 0;
        if (def.is_number_integer()) {
          eff[name] = std::stoll(text, &used);
        } else if (def.is_number()) {
          eff[name] = std::stod(text, &used);
        } else {
          eff[name] = text;
          used = text.size();
        }
        if (used != text.size()) throw std::invalid_argument(text);
      } catch (const std::logic_error&) {
        throw ConfigError("--" + name + " expects a number, got '" + text + "'");
      }
    }
    return eff;
  }

 private:
  CLI::App* app_;
  json defaults_;
  std::string config_path_;
  std::map<std::string, std::string> raw_;
  std::map<std::string, bool> flags_;
  std::map<std::string, CLI::Option*> opts_;
};

fs::path out_dir(const json& eff) {
  std::string dir = eff.value("out-dir", std::string());
  if (dir.empty()) {
    const char* env = std::getenv("HCSPEC_OUT_DIR");
    dir = env && *env ? env : ".";
  }
  fs::create_directories(dir);
  return dir;
}

void progress(const std::string& msg) { std::cerr << "[hcspec] " << msg << std::endl; }

std::string num(double v) { return hcs::format_double(v); }

std::vector<std::string> echo(const std::string& command, const json& eff) {
  return {"hcspec " + std::string(HCSPEC_VERSION) + " " + command, "config " + eff.dump()};
}

json envelope(const std::string& command, const json& eff) {
  return {{"command", command}, {"version", HCSPEC_VERSION}, {"config", eff}};
}

unsigned threads_of(const json& eff) {
  const long long t = eff.at("threads").get<long long>();
  if (t < 0) throw ConfigError("--threads must be non-negative");
  return t == 0 ? hcs::default_threads() : static_cast<unsigned>(t);
}

hcs::CellSpec cell_of(const json& eff) {
  hcs::CellSpec c;
  c.alpha = eff.at("alpha").get<double>();
  c.beta = eff.at("beta").get<double>();
  c.validate();
  return c;
}

hcs::WaveParams wave_of(const json& eff) {
  hcs::WaveParams w;
  w.kappa = eff.at("kappa").get<double>();
  w.polarization = hcs::polarization_from_string(eff.at("polarization").get<std::string>());
  if (!(w.kappa >= 0.0)) throw ConfigError("--kappa must be non-negative");
  return w;
}

int positive_int(const json& eff, const char* key) {
  const long long v = eff.at(key).get<long long>();
  if (v < 1 || v > (1 << 24)) throw ConfigError(std::string("--") + key + " must be a positive integer");
  return static_cast<int>(v);
}

hcs::CoefficientProfile medium_of(const json& eff) {
  const auto kind = eff.at("medium").get<std::string>();
  if (kind == "defect") return hcs::build_paper_defect_medium(positive_int(eff, "n"), eff.at("pd").get<double>());
  if (kind == "reference") return hcs::build_paper_reference_medium(positive_int(eff, "n"));
  if (kind == "periodic") {
    const int n = positive_int(eff, "n");
    return hcs::build_periodic_medium(cell_of(eff), 1.0 / n, n);
  }
  if (kind == "homogeneous") {
    hcs::Segment s;
    s.length = 1.0;
    s.exact_length = hcs::Rational(1);
    return hcs::CoefficientProfile({s});
  }
  if (kind == "file") {
    const auto path = eff.at("profile").get<std::string>();
    if (path.empty()) throw ConfigError("--medium file needs --profile <path>");
    return hcs::profile_from_json(hcs::read_json_file(path));
  }
  throw ConfigError("unknown medium '" + kind + "' (defect, reference, periodic, homogeneous, file)");
}

json common_defaults() {
  return {{"out-dir", ""}, {"threads", 0}};
}

void add_common(Params& p) {
  p.add("out-dir", "output directory (default $HCSPEC_OUT_DIR or .)");
  p.add("threads", "worker threads, 0 = all cores");
}

// ---------------------------------------------------------------- bands

json bands_defaults() {
  json d = common_defaults();
  d.update({{"mode", "limit"}, {"alpha", 0.25}, {"beta", 0.75}, {"eps", 0.01}, {"kappa", 0.0},
            {"lmax", 1600.0}, {"points", 2001}});
  return d;
}

int cmd_bands(const json& eff) {
  const auto mode = eff.at("mode").get<std::string>();
  const double a = eff.at("alpha").get<double>(), b = eff.at("beta").get<double>();
  hcs::DispersionKind kind;
  if (mode == "limit") kind = hcs::DispersionKind::limit(a, b);
  else if (mode == "finite") kind = hcs::DispersionKind::finite_eps(eff.at("eps").get<double>(), a, b);
  else if (mode == "kappa") kind = hcs::DispersionKind::kappa_limit(eff.at("kappa").get<double>(), a, b);
  else throw ConfigError("unknown mode '" + mode + "' (limit, finite, kappa)");
  kind.validate();
  const double lmax = eff.at("lmax").get<double>();
  if (!(lmax > 0.0)) throw ConfigError("--lmax must be positive");
  const long long points = eff.at("points").get<long long>();
  if (points < 2) throw ConfigError("--points must be at least 2");

  progress("scanning dispersion relation up to lambda=" + num(lmax));
  const auto bs = hcs::band_structure(kind, lmax);
  const auto dir = out_dir(eff);

  hcs::CsvTable t;
  t.comments = echo("bands", eff);
  t.header = {"kind", "index", "lo", "hi", "degenerate"};
  for (std::size_t i = 0; i < bs.bands.size(); ++i)
    t.add_row({"band", std::to_string(i + 1), num(bs.bands[i].lo), num(bs.bands[i].hi), "0"});
  const int off = bs.zero_frequency_gap() ? 0 : 1;
  for (std::size_t i = 0; i < bs.gaps.size(); ++i)
    t.add_row({"gap", std::to_string(static_cast<int>(i) + off), num(bs.gaps[i].lo), num(bs.gaps[i].hi),
               bs.gaps[i].degenerate ? "1" : "0"});
  hcs::write_csv(dir / "bands.csv", t);

  hcs::CsvTable c;
  c.comments = echo("bands", eff);
  c.header = {"t", "lhs"};
  for (const auto& p : hcs::lhs_curve(kind, std::sqrt(lmax), static_cast<std::size_t>(points)))
    c.add_row({num(p.t), num(p.lhs)});
  hcs::write_csv(dir / "curve.csv", c);

  json out = envelope("bands", eff);
  json gaps = json::array();
  for (std::size_t i = 0; i < bs.gaps.size(); ++i)
    gaps.push_back({{"index", static_cast<int>(i) + off}, {"lo", bs.gaps[i].lo}, {"hi", bs.gaps[i].hi},
                    {"degenerate", bs.gaps[i].degenerate}});
  json bands = json::array();
  for (const auto& band : bs.bands) bands.push_back({{"lo", band.lo}, {"hi", band.hi}});
  out["gaps"] = gaps;
  out["bands"] = bands;
  out["edge_tolerance"] = bs.edge_tolerance;
  out["files"] = {"bands.csv", "curve.csv"};
  hcs::write_json(dir / "bands.json", out);
  std::cout << hcs::dump_json(out);
  return kOk;
}

// ---------------------------------------------------------------- spectrum

json medium_defaults() {
  return {{"medium", "defect"}, {"n", 128}, {"pd", 2.0}, {"profile", ""}, {"alpha", 0.25}, {"beta", 0.75}};
}

void add_medium(Params& p) {
  p.add("medium", "defect, reference, periodic, homogeneous or file");
  p.add("n", "cells on each side of the defect (periods for --medium periodic)");
  p.add("pd", "defect strength");
  p.add("profile", "profile JSON for --medium file");
  p.add("alpha", "soft phase start in the cell");
  p.add("beta", "soft phase end in the cell");
}

json spectrum_defaults() {
  json d = common_defaults();
  d.update(medium_defaults());
  d.update({{"bc", "dirichlet"}, {"lo", 0.0}, {"hi", 200.0}, {"solver", "transfer"}, {"kappa", 0.0},
            {"polarization", "te"}, {"refine", 0}, {"lumped", false}});
  return d;
}

int cmd_spectrum(const json& eff) {
  const auto profile = medium_of(eff);
  const auto bc = hcs::boundary_from_string(eff.at("bc").get<std::string>());
  const hcs::Window win{eff.at("lo").get<double>(), eff.at("hi").get<double>()};
  if (!(win.hi > win.lo)) throw ConfigError("--hi must exceed --lo");
  const auto solver = eff.at("solver").get<std::string>();
  if (solver != "transfer" && solver != "fem" && solver != "both")
    throw ConfigError("unknown solver '" + solver + "' (transfer, fem, both)");
  const long long refine = eff.at("refine").get<long long>();
  if (refine < 0 || refine > 8) throw ConfigError("--refine must lie in 0..8");

  hcs::BisectionOptions bo;
  bo.threads = threads_of(eff);
  std::vector<hcs::EigenValue> tv, fv;
  if (solver != "fem") {
    progress("transfer solver on " + std::to_string(profile.size()) + " segments");
    hcs::TransferOptions to;
    to.wave = wave_of(eff);
    to.bisection = bo;
    tv = hcs::eigenvalues_in(profile, bc, win, to);
  }
  if (solver != "transfer") {
    const auto mesh = hcs::build_spectral_mesh(profile, win.hi, wave_of(eff), static_cast<int>(refine));
    progress("fem solver on " + std::to_string(mesh.nodes.size()) + " nodes");
    hcs::AssemblyOptions ao;
    ao.wave = wave_of(eff);
    ao.bc = bc;
    ao.mass = eff.at("lumped").get<bool>() ? hcs::MassKind::Lumped : hcs::MassKind::Consistent;
    fv = hcs::eigenvalues_in_window(hcs::assemble(mesh, profile, ao), win, bo);
  }

  auto expand = [](const std::vector<hcs::EigenValue>& v) {
    std::vector<double> out;
    for (const auto& e : v)
      for (int k = 0; k < e.multiplicity; ++k) out.push_back(e.lambda);
    return out;
  };
  hcs::CsvTable t;
  t.comments = echo("spectrum", eff);
  json rows = json::array();
  double worst = 0.0;
  if (solver == "both") {
    const auto a = expand(tv), b = expand(fv);
    t.header = {"index", "transfer", "fem", "discrepancy"};
    const std::size_t m = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < m; ++i) {
      std::string sa = i < a.size() ? num(a[i]) : "", sb = i < b.size() ? num(b[i]) : "", sd;
      json row{{"index", i + 1}};
      if (i < a.size()) row["transfer"] = a[i];
      if (i < b.size()) row["fem"] = b[i];
      if (i < a.size() && i < b.size()) {
        const double d = std::fabs(b[i] - a[i]) / std::max(std::fabs(a[i]), 1e-300);
        worst = std::max(worst, d);
        sd = num(d);
        row["discrepancy"] = d;
      }
      t.add_row({std::to_string(i + 1), sa, sb, sd});
      rows.push_back(row);
    }
  } else {
    const auto& v = solver == "fem" ? fv : tv;
    t.header = {"index", "lambda", "multiplicity"};
    std::size_t idx = 0;
    for (const auto& e : v) {
      t.add_row({std::to_string(++idx), num(e.lambda), std::to_string(e.multiplicity)});
      rows.push_back({{"index", idx}, {"lambda", e.lambda}, {"multiplicity", e.multiplicity}});
    }
  }
  const auto dir = out_dir(eff);
  hcs::write_csv(dir / "spectrum.csv", t);
  json out = envelope("spectrum", eff);
  out["eigenvalues"] = rows;
  if (solver == "both") out["max_discrepancy"] = worst;
  out["files"] = {"spectrum.csv"};
  hcs::write_json(dir / "spectrum.json", out);
  std::cout << hcs::dump_json(out);
  return kOk;
}

// ---------------------------------------------------------------- defect

json defect_defaults() {
  json d = common_defaults();
  d.update({{"n", 128}, {"pd", 2.0}, {"bc", "dirichlet"}, {"collar", 0.02}, {"gap", -1}, {"modes", false},
            {"lmax", 1500.0}, {"reference", "finite"}, {"skip", 0.0}, {"samples", 16}});
  return d;
}

int cmd_defect(const json& eff) {
  const int n = positive_int(eff, "n");
  const double pd = eff.at("pd").get<double>();
  const auto bc = hcs::boundary_from_string(eff.at("bc").get<std::string>());
  const auto profile = hcs::build_paper_defect_medium(n, pd);
  const double lmax = eff.at("lmax").get<double>();
  if (!(lmax > 0.0)) throw ConfigError("--lmax must be positive");
  const auto ref = eff.at("reference").get<std::string>();
  hcs::DispersionKind kind;
  if (ref == "finite") kind = hcs::DispersionKind::finite_eps(1.0 / (4.0 * n), 0.25, 0.75);
  else if (ref == "limit") kind = hcs::DispersionKind::limit(0.25, 0.75);
  else throw ConfigError("unknown reference '" + ref + "' (finite, limit)");
  const long long samples = eff.at("samples").get<long long>();
  if (samples < 1 || samples > 4096) throw ConfigError("--samples must lie in 1..4096");

  progress("reference band structure (" + ref + ")");
  const auto bands = hcs::band_structure(kind, lmax);
  hcs::DefectSpec spec;
  spec.p_d = pd;
  hcs::TrappedModeOptions o;
  o.collar = eff.at("collar").get<double>();
  o.skip = eff.at("skip").get<double>();
  o.n = n;
  o.bisection.threads = threads_of(eff);
  progress("searching gaps of the n=" + std::to_string(n) + " defect medium");
  auto reports = hcs::find_trapped_modes(profile, bc, bands, spec, o);
  const long long gap = eff.at("gap").get<long long>();
  if (gap >= 0) std::erase_if(reports, [&](const hcs::DefectReport& r) { return r.gap_index != gap; });

  const auto dir = out_dir(eff);
  hcs::CsvTable t;
  t.comments = echo("defect", eff);
  t.header = {"gap", "bc", "n", "trapped", "asymptotic", "offset", "rate", "fit"};
  json arr = json::array();
  std::vector<std::string> files{"defect_report.json", "defect_summary.csv"};
  for (const auto& r : reports) {
    t.add_row({std::to_string(r.gap_index), hcs::to_string(r.bc), std::to_string(r.n), num(r.trapped_lambda),
               r.asymptotic_lambda ? num(*r.asymptotic_lambda) : "", std::isnan(r.relative_offset) ? "" : num(r.relative_offset),
               num(r.decay_rate), num(r.fit_quality)});
    arr.push_back(hcs::report_to_json(r));
    if (!r.warning.empty()) progress("gap " + std::to_string(r.gap_index) + ": " + r.warning);
  }
  if (eff.at("modes").get<bool>()) {
    hcs::EigenfunctionOptions eo;
    eo.samples_per_segment = static_cast<int>(samples);
    int j = 0;
    for (const auto& r : reports) {
      ++j;
      const auto sol = hcs::eigenfunction(profile, bc, r.trapped_lambda, eo);
      hcs::CsvTable m;
      m.comments = echo("defect", eff);
      m.comments.push_back("gap " + std::to_string(r.gap_index) + " lambda " + num(r.trapped_lambda));
      m.header = {"x", "u", "flux"};
      for (std::size_t i = 0; i < sol.grid.size(); ++i) m.add_row({num(sol.grid[i]), num(sol.values[i]), num(sol.flux[i])});
      const std::string name = "mode_" + std::to_string(j) + "_gap" + std::to_string(r.gap_index) + ".csv";
      hcs::write_csv(dir / name, m);
      files.push_back(name);
    }
  }
  hcs::write_csv(dir / "defect_summary.csv", t);
  json out = envelope("defect", eff);
  out["reports"] = arr;
  out["files"] = files;
  hcs::write_json(dir / "defect_report.json", out);
  std::cout << hcs::dump_json(out);
  return kOk;
}

// ---------------------------------------------------------------- verify

json verify_defaults() {
  json d = common_defaults();
  d.update({{"alpha", 0.25}, {"beta", 0.75}, {"n", 0}, {"count", 4}, {"trials", 10000}, {"seed", 20240607},
            {"mesh-h", 1.0 / 512.0}, {"kmax", 5}});
  return d;
}

int cmd_verify(const std::string& check, const json& eff) {
  static const std::vector<std::string> all{"dispersion", "poincare", "classical-poincare", "continuity", "nq"};
  std::vector<std::string> todo;
  if (check == "all") todo = all;
  else if (std::find(all.begin(), all.end(), check) != all.end()) todo = {check};
  else throw ConfigError("unknown check '" + check + "' (dispersion, poincare, classical-poincare, continuity, nq, all)");
  const double a = eff.at("alpha").get<double>(), b = eff.at("beta").get<double>();
  const double h = eff.at("mesh-h").get<double>();
  json out = envelope("verify", eff);
  out["check"] = check;
  bool ok = true;
  for (const auto& c : todo) {
    progress("verify " + c);
    json v;
    bool pass = false;
    if (c == "dispersion") {
      std::vector<double> grid;
      for (int i = 0; i < 100; ++i) grid.push_back(200.0 * i / 99.0);
      const double d = hcs::dispersion_vs_monodromy(a, b, {0.1, 0.01}, grid);
      pass = d <= 1e-9;
      v = {{"discrepancy", d}, {"tolerance", 1e-9}};
    } else if (c == "poincare") {
      const auto t = hcs::poincare_uniform_constant(a, b, hcs::poincare_theta_grid(), {1.0 / 256.0, 1.0 / 512.0});
      const auto r = hcs::poincare_uniform_constant(a, b, hcs::poincare_theta_grid_refined(), {1.0 / 256.0});
      const double drift = std::fabs(r.min_c[0] - t.min_c[0]) / t.min_c[0];
      double hdrift = 0.0;
      for (std::size_t i = 0; i < t.thetas.size(); ++i) hdrift = std::max(hdrift, std::fabs(t.c[1][i] - t.c[0][i]) / t.c[0][i]);
      pass = t.min_c[0] > 0.0 && t.min_c[1] > 0.0 && r.min_c[0] > 0.0 && drift <= 0.10;
      v = {{"thetas", t.thetas}, {"c_h256", t.c[0]}, {"c_h512", t.c[1]}, {"min_c", t.min_c},
           {"min_c_refined_theta", r.min_c[0]}, {"theta_refinement_drift", drift}, {"h_refinement_drift", hdrift},
           {"tilde_C_estimate", 1.0 / t.min_c[0]}, {"tolerance", 0.10}};
    } else if (c == "classical-poincare") {
      const auto r = hcs::classical_poincare_check(a, b, h, static_cast<int>(eff.at("trials").get<long long>()),
                                                   eff.at("seed").get<std::uint64_t>());
      pass = r.passed;
      v = {{"worst_ratio", r.worst_ratio}, {"c_p", r.c_p}, {"sharp_constant", r.sharp_constant},
           {"constant_ratio", r.constant_ratio}, {"trials", r.trials}, {"seed", r.seed}, {"mesh_h", h}};
    } else if (c == "continuity") {
      const auto r = hcs::lambda_continuity(a, b, static_cast<int>(eff.at("kmax").get<long long>()), {32, 64, 128});
      pass = r.passed;
      v = {{"grid_sizes", r.grid_sizes}, {"moduli", r.moduli}, {"ratios", r.ratios},
           {"k1_exponent", r.k1_exponent}, {"symmetry_error", r.symmetry_error}, {"tolerance", 0.6}};
    } else {
      const long long n = eff.at("n").get<long long>();
      std::vector<int> ns = n > 0 ? std::vector<int>{static_cast<int>(n)} : std::vector<int>{1, 2, 3, 4};
      const auto r = hcs::bloch_vs_nq(ns, a, b, static_cast<int>(eff.at("count").get<long long>()), h);
      pass = r.worst <= 1e-3;
      v = {{"n", r.n_list}, {"discrepancy", r.discrepancy}, {"worst", r.worst}, {"tolerance", 1e-3}, {"mesh_h", h}};
    }
    v["pass"] = pass;
    out["results"][c] = v;
    ok = ok && pass;
  }
  out["pass"] = ok;
  hcs::write_json(out_dir(eff) / ("verify_" + check + ".json"), out);
  std::cout << hcs::dump_json(out);
  return ok ? kOk : kVerifyFailed;
}

// ---------------------------------------------------------------- profile

json profile_defaults() {
  json d = medium_defaults();
  d.update({{"output", ""}});
  return d;
}

int cmd_profile(const std::string& action, const std::string& file, const json& eff) {
  if (action == "validate") {
    if (file.empty()) throw ConfigError("profile validate needs a file");
    const auto p = hcs::profile_from_json(hcs::read_json_file(file));
    json out{{"valid", true}, {"segments", p.size()}, {"origin", p.origin()}, {"end", p.end()}, {"exact", p.exact()}};
    std::cout << hcs::dump_json(out);
    return kOk;
  }
  if (action != "dump") throw ConfigError("unknown profile action '" + action + "' (dump, validate)");
  json j = hcs::profile_to_json(medium_of(eff));
  const auto path = eff.at("output").get<std::string>();
  if (path.empty()) std::cout << hcs::dump_json(j);
  else hcs::write_json(path, j);
  return kOk;
}

int exit_code_for(const hcs::Error& e) {
  if (dynamic_cast<const hcs::InvalidArgument*>(&e) || dynamic_cast<const hcs::InvalidCell*>(&e) ||
      dynamic_cast<const hcs::InvalidProfile*>(&e) || dynamic_cast<const hcs::InvalidDefect*>(&e) ||
      dynamic_cast<const hcs::OutOfDomain*>(&e))
    return kConfigError;
  return kSolverError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of one-dimensional high-contrast periodic media with defects"};
  app.set_version_flag("--version", std::string("hcspec ") + HCSPEC_VERSION);
  app.require_subcommand(1);

  auto* bands = app.add_subcommand("bands", "band/gap structure and dispersion curve");
  Params pb(bands, bands_defaults());
  add_common(pb);
  pb.add("mode", "limit, finite or kappa");
  pb.add("alpha", "soft phase start");
  pb.add("beta", "soft phase end");
  pb.add("eps", "period for --mode finite");
  pb.add("kappa", "wavenumber for --mode kappa");
  pb.add("lmax", "upper end of the lambda range");
  pb.add("points", "samples of the (t, LHS) curve");

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of a bounded-interval problem");
  Params ps(spectrum, spectrum_defaults());
  add_common(ps);
  add_medium(ps);
  ps.add("bc", "dirichlet, neumann, periodic or antiperiodic");
  ps.add("lo", "window start (inclusive)");
  ps.add("hi", "window end (exclusive)");
  ps.add("solver", "transfer, fem or both");
  ps.add("kappa", "transverse wavenumber");
  ps.add("polarization", "te or tm");
  ps.add("refine", "FEM mesh halvings beyond the default mesh");
  ps.add_flag("lumped", "lumped FEM mass");

  auto* defect = app.add_subcommand("defect", "trapped modes of the defect medium");
  Params pd(defect, defect_defaults());
  add_common(pd);
  pd.add("n", "cells on each side of the defect");
  pd.add("pd", "defect strength");
  pd.add("bc", "dirichlet, neumann, periodic or antiperiodic");
  pd.add("collar", "fraction of each gap excluded at both edges");
  pd.add("gap", "report only this gap index (-1 = all)");
  pd.add_flag("modes", "write eigenfunction CSVs");
  pd.add("lmax", "upper end of the gap search");
  pd.add("reference", "finite or limit reference band structure");
  pd.add("skip", "near-field collar for the decay fit");
  pd.add("samples", "eigenfunction samples per segment");

  auto* verify = app.add_subcommand("verify", "numerical checks of the supporting inequalities");
  std::string check = "all";
  verify->add_option("check", check, "dispersion, poincare, classical-poincare, continuity, nq or all");
  Params pv(verify, verify_defaults());
  add_common(pv);
  pv.add("alpha", "soft phase start");
  pv.add("beta", "soft phase end");
  pv.add("n", "single n for the nq check (0 = 1..4)");
  pv.add("count", "roots per theta for the nq check");
  pv.add("trials", "random trials for classical-poincare");
  pv.add("seed", "random seed");
  pv.add("mesh-h", "cell mesh size");
  pv.add("kmax", "branches for the continuity check");

  auto* profile = app.add_subcommand("profile", "dump or validate a coefficient profile JSON");
  std::string action = "dump", file;
  profile->add_option("action", action, "dump or validate");
  profile->add_option("file", file, "profile JSON to validate");
  Params pp(profile, profile_defaults());
  add_medium(pp);
  pp.add("output", "write the profile here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfigError;
  }

  try {
    if (*bands) return cmd_bands(pb.resolve());
    if (*spectrum) return cmd_spectrum(ps.resolve());
    if (*defect) return cmd_defect(pd.resolve());
    if (*verify) return cmd_verify(check, pv.resolve());
    if (*profile) return cmd_profile(action, file, pp.resolve());
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const hcs::Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kSolverError;
  }
  return kConfigError;
}
