#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "chenciner/classifier.hpp"
#include "chenciner/config.hpp"
#include "chenciner/csv.hpp"
#include "chenciner/curves.hpp"
#include "chenciner/diagram.hpp"
#include "chenciner/errors.hpp"
#include "chenciner/svg.hpp"
#include "chenciner/verify.hpp"

namespace chenciner {

// Process exit codes, kept stable for scripting:
//   0 success                  1 property/verification failure
//   2 configuration error      3 point outside the validity disk
//   4 infeasible sign profile  5 degeneracy condition required but absent
//   6 implicit function theorem hypothesis violated
//   7 invalid orbit start or probe precondition
//   8 resolution below minimum 9 other library error
enum ExitCode {
  kOk = 0,
  kPropertyFailure = 1,
  kConfigError = 2,
  kOutOfValidity = 3,
  kInfeasible = 4,
  kNotDegenerate = 5,
  kIft = 6,
  kInvalidStart = 7,
  kResolution = 8,
  kOtherError = 9,
};

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kConfigError;
  if (dynamic_cast<const ModelInvariantError*>(&e)) return kConfigError;
  if (dynamic_cast<const OutOfValidityRadius*>(&e)) return kOutOfValidity;
  if (dynamic_cast<const InfeasibleProfile*>(&e)) return kInfeasible;
  if (dynamic_cast<const NotDegenerate*>(&e)) return kNotDegenerate;
  if (dynamic_cast<const IftViolation*>(&e)) return kIft;
  if (dynamic_cast<const InvalidStart*>(&e)) return kInvalidStart;
  if (dynamic_cast<const PreconditionViolated*>(&e)) return kInvalidStart;
  if (dynamic_cast<const NotOnCurve*>(&e)) return kInvalidStart;
  if (dynamic_cast<const NoCircle*>(&e)) return kInvalidStart;
  if (dynamic_cast<const InvalidResolution*>(&e)) return kResolution;
  return kOtherError;
}

struct CliIo {
  std::ostream* out = &std::cout;
  std::ostream* err = &std::cerr;
};

namespace cli_detail {

inline ModelConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("config", "cannot open '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_model_config(ss.str());
}

// Collects artifacts, writes them atomically, then drops a run report with
// a content digest per file.
class ArtifactSink {
 public:
  ArtifactSink(std::string command, std::string digest, std::string out_dir)
      : command_(std::move(command)), digest_(std::move(digest)),
        dir_(std::move(out_dir)), start_(std::chrono::steady_clock::now()) {}

  bool enabled() const { return !dir_.empty(); }

  void add(const std::string& name, const std::string& content) {
    if (!enabled()) return;
    std::filesystem::create_directories(dir_);
    atomic_write_file(std::filesystem::path(dir_) / name, content);
    files_.push_back({name, content.size(), fnv1a64(content)});
  }

  void note(const std::string& w) { notes_.push_back(w); }

  void finish() {
    if (!enabled()) return;
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start_)
                  .count();
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["config_digest"] = digest_;
    j["elapsed_ms"] = ms;
    j["outputs"] = nlohmann::ordered_json::array();
    for (const auto& f : files_) {
      nlohmann::ordered_json o;
      o["file"] = f.name;
      o["bytes"] = f.bytes;
      char buf[24];
      std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(f.digest));
      o["fnv1a64"] = buf;
      j["outputs"].push_back(o);
    }
    j["notes"] = notes_;
    atomic_write_file(std::filesystem::path(dir_) / "run_report.json", j.dump(2) + "\n");
  }

 private:
  struct FileRec {
    std::string name;
    std::size_t bytes;
    std::uint64_t digest;
  };
  std::string command_, digest_, dir_;
  std::vector<FileRec> files_;
  std::vector<std::string> notes_;
  std::chrono::steady_clock::time_point start_;
};

inline const char* stability_name(Stability s) {
  switch (s) {
    case Stability::Stable: return "stable";
    case Stability::Unstable: return "unstable";
    case Stability::SemistableOuterStable: return "semistable (attracting outside)";
    default: return "semistable (attracting inside)";
  }
}

inline const char* origin_mode_name(OriginMode m) {
  switch (m) {
    case OriginMode::Linear: return "linear (beta1)";
    case OriginMode::NonlinearBeta2: return "nonlinear (beta2)";
    default: return "nonlinear (L0)";
  }
}

inline std::string profile_text(const SignProfile& s) {
  auto c = [](int v) { return v > 0 ? "+" : (v < 0 ? "-" : "0"); };
  return std::string("delta:") + c(s.delta) + " beta1:" + c(s.beta1) +
         " beta2:" + c(s.beta2) + " L0:" + c(s.L0);
}

}  // namespace cli_detail

struct AnalyzeOptions {
  std::string config_path;
  std::string out_dir;
  double alpha1 = 0.0, alpha2 = 0.0;
  bool portrait = false;
  SimulationConfig sim;
};

inline int run_analyze(const AnalyzeOptions& opt, const CliIo& io = {}) {
  ModelConfig cfg = cli_detail::load_config(opt.config_path);
  NormalFormModel m = to_model(cfg);
  ParameterPoint p{opt.alpha1, opt.alpha2};
  ModelEvaluation ev = m.evaluate(p);
  CircleInventory inv = classify(ev, m.L0(), m.tolerances());

  nlohmann::ordered_json j;
  j["point"] = {fmt17(p.alpha1), fmt17(p.alpha2)};
  j["beta1"] = fmt17(ev.beta1);
  j["beta2"] = fmt17(ev.beta2);
  j["l2"] = fmt17(ev.l2);
  j["delta"] = fmt17(ev.delta);
  j["profile"] = cli_detail::profile_text(inv.profile);
  j["region"] = inv.region;
  j["origin"] = cli_detail::stability_name(inv.origin);
  j["origin_mode"] = cli_detail::origin_mode_name(inv.origin_mode);
  j["circles"] = nlohmann::ordered_json::array();
  for (const CircleRecord& c : inv.circles) {
    nlohmann::ordered_json o;
    o["y"] = fmt17(c.y);
    o["radius"] = fmt17(c.radius);
    o["multiplier"] = fmt17(c.multiplier);
    o["stability"] = cli_detail::stability_name(c.stability);
    j["circles"].push_back(o);
  }
  j["config_digest"] = config_digest(cfg);
  *io.out << j.dump(2) << "\n";

  cli_detail::ArtifactSink sink("analyze", config_digest(cfg), opt.out_dir);
  sink.add("analyze.json", j.dump(2) + "\n");
  if (opt.portrait) {
    PhasePortraitSpec spec = phase_portrait(m, p, opt.sim);
    sink.add("portrait.svg", render_portrait_svg(spec));
    for (size_t k = 0; k < spec.orbits.size(); ++k)
      sink.add("portrait_orbit" + std::to_string(k + 1) + ".csv",
               write_orbit_csv(spec.orbits[k]));
  }
  sink.finish();
  return kOk;
}

struct CurvesOptions {
  std::string config_path;
  std::string out_dir;
  double range = 0.0;  // 0: use min(epsilon/2, 0.05)
  int points = 41;
};

inline int run_curves(const CurvesOptions& opt, const CliIo& io = {}) {
  ModelConfig cfg = cli_detail::load_config(opt.config_path);
  NormalFormModel m = to_model(cfg);
  if (opt.points < 2) throw ConfigError("points", "need at least 2 grid points");
  double range = opt.range > 0 ? opt.range : std::min(m.epsilon() / 2.0, 0.05);
  if (!(range < m.epsilon()))
    throw OutOfValidityRadius("curve range reaches the validity radius");

  CurveExpansion b1 = expand_b1(m);
  CurveExpansion b2 = expand_b2(m);
  CurveExpansion c = expand_c(m);
  DiagramCase dcase = enumerate_case(m);

  std::vector<double> grid;
  for (int i = 0; i < opt.points; ++i)
    grid.push_back(-range + 2.0 * range * i / (opt.points - 1));
  CurveTrace tb1 = trace_curve(m, CurveKind::B1, grid);
  CurveTrace tb2 = trace_curve(m, CurveKind::B2, grid);
  CurveTrace tc = trace_curve(m, CurveKind::C, grid);
  VerificationReport v1 = verify_expansion(m, CurveKind::B1, tb1);
  VerificationReport v2 = verify_expansion(m, CurveKind::B2, tb2);
  VerificationReport vc = verify_expansion(m, CurveKind::C, tc);

  std::ostream& out = *io.out;
  out << "curve expansions (alpha2 as a series in alpha1):\n";
  auto line = [&](const char* name, const CurveExpansion& e) {
    out << "  " << name << ": k1=" << fmt17(e.k_d(1)) << " k2=" << fmt17(e.k_d(2))
        << " k3=" << fmt17(e.k_d(3)) << " k4=" << fmt17(e.k_d(4)) << "\n";
  };
  line("B1", b1);
  line("B2", b2);
  line("C ", c);
  out << "  gamma = " << fmt17(to_double(c.gamma))
      << ", m4 - c4 = " << fmt17(to_double(c.k[3] - b1.k[3])) << "\n";
  out << "diagram case " << case_label(dcase) << "\n";
  for (const std::string& w : dcase.warnings) out << "  warning: " << w << "\n";
  auto vline = [&](const char* name, const CurveTrace& t, const VerificationReport& v) {
    out << "  trace " << name << ": " << t.points.size() << " points, "
        << t.failed_alpha1.size() << " failures, max residual vs expansion "
        << fmt17(v.max_residual) << " (bound " << fmt17(v.bound) << ") "
        << (v.pass ? "ok" : "EXCEEDED") << "\n";
  };
  vline("B1", tb1, v1);
  vline("B2", tb2, v2);
  vline("C ", tc, vc);

  cli_detail::ArtifactSink sink("curves", config_digest(cfg), opt.out_dir);
  sink.add("curves.csv", write_curves_csv(b1, b2, c));
  sink.add("trace_b1.csv", write_trace_csv(tb1));
  sink.add("trace_b2.csv", write_trace_csv(tb2));
  sink.add("trace_c.csv", write_trace_csv(tc));
  for (const std::string& w : dcase.warnings) sink.note(w);
  sink.finish();
  return (v1.pass && v2.pass && vc.pass) ? kOk : kPropertyFailure;
}

struct SimulateOptions {
  std::string config_path;
  std::string out_dir;
  double alpha1 = 0.0, alpha2 = 0.0;
  double rho0 = 0.05, phi0 = 0.0;
  SimulationConfig sim;
};

inline int run_simulate(const SimulateOptions& opt, const CliIo& io = {}) {
  ModelConfig cfg = cli_detail::load_config(opt.config_path);
  NormalFormModel m = to_model(cfg);
  ParameterPoint p{opt.alpha1, opt.alpha2};
  OrbitTrace tr = iterate_orbit(m, p, opt.rho0, opt.phi0, opt.sim);

  std::ostream& out = *io.out;
  out << "orbit: " << tr.steps << " steps, verdict " << verdict_name(tr.verdict);
  if (tr.verdict == OrbitVerdict::ConvergedToCircle)
    out << ", circle radius " << fmt17(tr.circle_radius);
  if (!tr.states.empty())
    out << ", final rho " << fmt17(tr.states.back().rho);
  out << "\n";

  cli_detail::ArtifactSink sink("simulate", config_digest(cfg), opt.out_dir);
  sink.add("orbit.csv", write_orbit_csv(tr));
  sink.finish();
  return kOk;
}

struct DiagramOptions {
  std::string config_path;
  std::string out_dir;
  DiagramWindow window;
  bool window_set = false;  // default: centered square at 40% of epsilon
  int resolution = 64;
};

inline int run_diagram(const DiagramOptions& opt, const CliIo& io = {}) {
  ModelConfig cfg = cli_detail::load_config(opt.config_path);
  NormalFormModel m = to_model(cfg);
  DiagramWindow w = opt.window;
  if (!opt.window_set) {
    double half = 0.4 * m.epsilon();
    w = {-half, half, -half, half};
  }
  DiagramSpec d = build_diagram(m, w, opt.resolution);

  std::ostream& out = *io.out;
  out << "diagram case " << case_label(d.dcase) << ", " << d.nx << "x" << d.ny
      << " cells\n";
  for (const std::string& s : d.dcase.warnings) out << "  warning: " << s << "\n";
  for (const std::string& s : d.diagnostics) out << "  diagnostic: " << s << "\n";

  cli_detail::ArtifactSink sink("diagram", config_digest(cfg), opt.out_dir);
  sink.add("diagram.svg", render_diagram_svg(d));
  sink.add("regions.csv", write_regions_csv(d));
  for (const std::string& s : d.diagnostics) sink.note(s);
  sink.finish();
  return kOk;
}

struct VerifyCmdOptions {
  std::string config_path;  // optional: also check this model's expansions
  std::string out_dir;
  VerifyOptions props;
};

inline int run_verify(const VerifyCmdOptions& opt, const CliIo& io = {}) {
  std::ostream& out = *io.out;
  bool ok = true;
  std::string digest = "-";

  if (!opt.config_path.empty()) {
    ModelConfig cfg = cli_detail::load_config(opt.config_path);
    digest = config_digest(cfg);
    NormalFormModel m = to_model(cfg);
    double range = std::min(m.epsilon() / 2.0, 0.05);
    std::vector<double> grid;
    for (int i = -10; i <= 10; ++i) grid.push_back(range * i / 10.0);
    for (CurveKind kind : {CurveKind::B1, CurveKind::B2, CurveKind::C}) {
      CurveTrace tr = trace_curve(m, kind, grid);
      VerificationReport rep = verify_expansion(m, kind, tr);
      out << "[" << (rep.pass ? "PASS" : "FAIL") << "] config curve " << curve_name(kind)
          << ": residual " << fmt17(rep.max_residual) << " vs bound " << fmt17(rep.bound)
          << "\n";
      ok = ok && rep.pass;
    }
  }

  std::vector<PropertyResult> rs = run_property_suite(opt.props);
  for (const PropertyResult& r : rs) {
    out << "[" << (r.pass ? "PASS" : "FAIL") << "] " << r.name << " (" << r.cases
        << " checks)";
    if (!r.pass) out << ": " << r.detail;
    out << "\n";
    ok = ok && r.pass;
  }
  out << (ok ? "all properties passed\n" : "property failures detected\n");

  cli_detail::ArtifactSink sink("verify", digest, opt.out_dir);
  if (sink.enabled()) {
    std::string csv = "property,pass,cases,detail\n";
    for (const PropertyResult& r : rs)
      csv += r.name + "," + (r.pass ? "1" : "0") + "," + std::to_string(r.cases) + "," +
             r.detail + "\n";
    sink.add("verify.csv", csv);
  }
  sink.finish();
  return ok ? kOk : kPropertyFailure;
}

}  // namespace chenciner
