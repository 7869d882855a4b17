#include "suncs/cli.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "suncs/json_io.hpp"
#include "suncs/resolution.hpp"
#include "suncs/sun_algebra.hpp"

namespace suncs::cli {

namespace {

struct RunConfig {
  std::string command;
  int n = 2;
  std::vector<int> reps;
  std::vector<int> caps;
  std::vector<int> q;
  std::vector<int> casimir;
  std::string kind = "charge";
  std::string form = "projector";
  std::string z;
  std::string w;
  std::string z_file;
  bool random_params = false;
  std::string f = "one";
  std::string g = "one";
  std::string deform_file;
  std::string mode = "charge-analytic";
  double tol = 0.0;  // 0 selects the command default
  std::uint64_t seed = 1;
  std::size_t samples = 100000;
  int n_max = 3;
  bool paper_formula = false;
  std::string out;
  std::string csv;
};

// Everything resolved from the flags; echoed into the report.
struct Resolved {
  ModeLayout layout;
  Truncation truncation;
  ParamVectors params;
  json f_source = "one";
  json g_source = "one";
  Deformation deformation;
  double tol = 1e-12;
};

double default_tol(const std::string& command) {
  if (command == "check-identities") return 1e-10;
  return 1e-12;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

ModeLayout resolve_layout(const RunConfig& cfg) {
  if (cfg.kind == "hw") return ModeLayout::heisenberg_weyl();
  if (cfg.n < 2) throw UsageError("--n must be >= 2");
  if (cfg.reps.empty()) return ModeLayout::standard(cfg.n);
  return ModeLayout(cfg.n, cfg.reps);
}

Truncation resolve_caps(const RunConfig& cfg, const ModeLayout& layout) {
  if (cfg.caps.empty()) throw UsageError("--caps is required");
  if (cfg.caps.size() == 1) return {std::vector<int>(layout.rep_count(), cfg.caps[0])};
  if (cfg.caps.size() != layout.rep_count()) {
    throw UsageError("--caps needs one value or one per rep (" + std::to_string(layout.rep_count()) + ")");
  }
  return {cfg.caps};
}

std::vector<Complex> sized(std::vector<Complex> v, std::size_t n, const char* flag) {
  if (v.size() != n) throw UsageError(std::string(flag) + " needs " + std::to_string(n) + " values");
  return v;
}

ParamVectors resolve_params(const RunConfig& cfg, const ModeLayout& layout) {
  ParamVectors p;
  if (cfg.random_params) {
    auto rng = substream(cfg.seed, 0xC0FFEE);
    if (cfg.kind == "casimir") {
      if (layout.rep_count() == 2) {
        auto frame = haar_frame_sample(layout.n_group(), rng);
        return {frame.z, frame.w};
      }
      return {sphere_sample(layout.mode_count(0), rng)};
    }
    std::uniform_real_distribution<double> modulus(0.1, 0.5);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
    for (std::size_t r = 0; r < layout.rep_count(); ++r) {
      std::vector<Complex> v(layout.mode_count(r));
      for (auto& x : v) x = std::polar(modulus(rng), phase(rng));
      p.push_back(std::move(v));
    }
    return p;
  }
  std::vector<Complex> z;
  std::vector<Complex> w;
  if (!cfg.z_file.empty()) {
    std::ifstream in(cfg.z_file);
    if (!in) throw UsageError("cannot read --z-file " + cfg.z_file);
    const json j = json::parse(in);
    z = complex_list_from_json(j.at("z"));
    if (j.contains("w")) w = complex_list_from_json(j.at("w"));
  } else {
    if (cfg.z.empty()) throw UsageError("coherent-state parameters required: --z, --z-file or --random-params");
    z = parse_complex_list(cfg.z);
    if (!cfg.w.empty()) w = parse_complex_list(cfg.w);
  }
  p.push_back(sized(z, layout.mode_count(0), "--z"));
  if (layout.rep_count() > 1) {
    if (w.empty()) w.assign(layout.mode_count(1), Complex{});
    p.push_back(sized(w, layout.mode_count(1), "--w"));
  } else if (!w.empty()) {
    throw UsageError("--w given but the layout has a single rep");
  }
  return p;
}

Resolved resolve(const RunConfig& cfg, bool need_params) {
  Resolved r;
  r.layout = resolve_layout(cfg);
  r.truncation = resolve_caps(cfg, r.layout);
  if (need_params) r.params = resolve_params(cfg, r.layout);
  if (!cfg.deform_file.empty()) {
    std::ifstream in(cfg.deform_file);
    if (!in) throw UsageError("cannot read --deform-file " + cfg.deform_file);
    const json j = json::parse(in);
    if (j.contains("f")) r.f_source = j.at("f");
    if (j.contains("g")) r.g_source = j.at("g");
  } else {
    r.f_source = cfg.f;
    r.g_source = cfg.g;
  }
  r.deformation = {deformation_from_json(r.f_source), deformation_from_json(r.g_source)};
  r.tol = cfg.tol > 0.0 ? cfg.tol : default_tol(cfg.command);
  return r;
}

json config_json(const RunConfig& cfg, const Resolved& r) {
  json params = json::array();
  for (const auto& p : r.params) params.push_back(complex_list_to_json(p));
  json c = {{"command", cfg.command},
            {"group", group_label(r.layout)},
            {"reps", r.layout.reps()},
            {"caps", r.truncation.caps},
            {"tol", r.tol},
            {"seed", cfg.seed}};
  if (!r.params.empty()) c["params"] = params;
  if (!cfg.q.empty()) c["q"] = cfg.q;
  if (!cfg.casimir.empty()) c["casimir"] = cfg.casimir;
  if (cfg.command == "build" || cfg.command == "check-eigen" || cfg.command == "check-identities") {
    c["kind"] = cfg.kind;
    c["form"] = cfg.form;
    c["f"] = r.f_source;
    c["g"] = r.g_source;
  }
  if (cfg.command == "check-roi") {
    c["mode"] = cfg.mode;
    c["samples"] = cfg.samples;
  }
  if (cfg.command == "check-identities") c["n_max"] = cfg.n_max;
  if (cfg.command == "scan-charges") c["paper_formula"] = cfg.paper_formula;
  return c;
}

CoherentSpec make_spec(const RunConfig& cfg, const Resolved& r) {
  CoherentSpec spec;
  spec.layout = r.layout;
  spec.truncation = r.truncation;
  spec.params = r.params;
  if (cfg.kind == "hw") {
    spec.kind = CoherentKind::heisenberg_weyl;
  } else if (cfg.kind == "casimir") {
    spec.kind = CoherentKind::fixed_casimir;
    spec.casimirs = cfg.casimir;
    if (spec.casimirs.size() != r.layout.rep_count()) throw UsageError("--casimir needs one value per rep");
  } else if (cfg.kind == "charge" || cfg.kind == "nonlinear") {
    spec.kind = CoherentKind::fixed_charge;
    spec.charges.q = cfg.q;
    if (spec.charges.q.size() != r.layout.charge_count()) {
      throw UsageError("--q needs " + std::to_string(r.layout.charge_count()) + " values");
    }
  } else {
    throw UsageError("--kind must be hw, casimir, charge or nonlinear");
  }
  spec.validate();
  return spec;
}

struct Built {
  StateVector state;
  json spec;
};

Built build_state(const RunConfig& cfg, const Resolved& r) {
  const CoherentSpec spec = make_spec(cfg, r);
  json spec_json = spec_to_json(spec);
  if (cfg.kind == "hw") {
    const bool deformed = r.deformation.f.name != "one";
    if (deformed) spec_json["f"] = r.f_source;
    auto v = deformed ? nl_hw_state(spec.params[0][0], r.deformation.f, spec.truncation.caps[0])
                      : hw_state(spec.params[0][0], spec.truncation.caps[0]);
    return {std::move(v), spec_json};
  }
  if (cfg.kind == "casimir") return {casimir_state(spec), spec_json};
  spec_json["form"] = cfg.form;
  if (cfg.kind == "nonlinear") {
    spec_json["f"] = r.f_source;
    spec_json["g"] = r.g_source;
    const NonlinearSpec nl{spec, r.deformation};
    if (cfg.form == "exponential") return {nl_charge_state(nl), spec_json};
    if (cfg.form == "recursion") return {nl_charge_state_recursion(nl), spec_json};
    throw UsageError("nonlinear states support --form exponential or recursion");
  }
  if (cfg.form == "projector") return {charge_state_projector(spec), spec_json};
  if (cfg.form == "series") return {charge_state_series(spec), spec_json};
  if (cfg.form == "exponential") return {charge_state_exponential(spec), spec_json};
  if (cfg.form == "recursion") return {nl_charge_state_recursion({spec, Deformation{}}), spec_json};
  throw UsageError("--form must be projector, series, exponential or recursion");
}

struct Outcome {
  json result;
  bool pass = true;
};

Outcome cmd_verify_algebra(const RunConfig&, const Resolved& r) {
  auto basis = build_basis(r.layout, r.truncation);
  RepGeneratorMap supplied;
  for (int rep : r.layout.reps()) {
    if (rep != 1 && rep != r.layout.n_group() - 1) supplied[rep] = exterior_power_generators(r.layout.n_group(), rep);
  }
  const auto gens = schwinger_generators(basis, supplied);
  const auto f = structure_constants(fundamental_generators(r.layout.n_group()));
  VerificationReport report = verify_algebra(gens, f, r.tol);
  report.bound("structure_constant_antisymmetry", f.antisymmetry_violation, 1e-12);
  report.bound("cartan_weyl_fit", f.cartan_weyl_fit_residual, 1e-12);
  report.bound("casimir_centrality", casimir_centrality_residual(gens), r.tol);
  if (r.layout.n_group() == 2) report.bound("spin_casimir", spin_casimir_residual(gens), r.tol);
  report.extra["ladder_coefficients"] = f.ladder_coefficients.size();
  report.extra["pass"] = report.pass();
  return {report.to_json(), report.pass()};
}

Outcome cmd_build(const RunConfig& cfg, const Resolved& r) {
  auto built = build_state(cfg, r);
  json out = state_to_json(built.state, built.spec);
  out["norm"] = built.state.norm();
  if (!cfg.csv.empty()) {
    std::ofstream csv(cfg.csv);
    if (!csv) throw UsageError("cannot write --csv " + cfg.csv);
    csv << state_to_csv(built.state);
  }
  return {out, true};
}

Outcome cmd_check_eigen(const RunConfig& cfg, const Resolved& r) {
  auto built = build_state(cfg, r);
  const CoherentSpec spec = make_spec(cfg, r);
  VerificationReport report;
  if (cfg.kind == "hw") {
    report = r.deformation.f.name == "one" ? check_hw_state(built.state, spec.params[0][0], r.tol)
                                           : check_nl_hw_state(built.state, spec.params[0][0], r.deformation.f, r.tol);
  } else if (cfg.kind == "casimir") {
    report = check_casimir_state(built.state, spec.casimirs, r.tol);
  } else if (cfg.kind == "nonlinear") {
    report = check_nl_state(built.state, {spec, r.deformation}, r.tol);
  } else {
    AmplitudeOracle oracle;
    if (cfg.form == "exponential" || cfg.form == "recursion") {
      oracle = [nl = NonlinearSpec{spec, Deformation{}}](const OccupationState& s) {
        return nl_recursion_amplitude(nl, s);
      };
    } else {
      oracle = [spec](const OccupationState& s) {
        return charge_of(s, spec.layout) == spec.charges ? hw_product_amplitude(spec.layout, spec.params, s)
                                                         : Complex{};
      };
    }
    report = check_charge_state(built.state, spec, oracle, r.tol);
  }
  json out = report.to_json();
  out["state_norm"] = built.state.norm();
  return {out, report.pass()};
}

Outcome cmd_check_roi(const RunConfig& cfg, const Resolved& r) {
  RoiReport roi;
  if (cfg.mode == "charge-analytic" || cfg.mode == "charge-numeric") {
    if (cfg.q.size() != r.layout.charge_count()) throw UsageError("--q needs N-1 values");
    roi = cfg.mode == "charge-analytic" ? charge_roi_analytic(r.layout, {cfg.q}, r.truncation, r.tol)
                                        : charge_roi_numeric(r.layout, {cfg.q}, r.truncation, cfg.samples, cfg.seed);
  } else if (cfg.mode == "casimir-mc") {
    if (cfg.casimir.size() != r.layout.rep_count()) throw UsageError("--casimir needs one value per rep");
    roi = casimir_roi_mc(r.layout, cfg.casimir, cfg.samples, cfg.seed);
  } else {
    throw UsageError("--mode must be charge-analytic, charge-numeric or casimir-mc");
  }
  return {roi.to_json(), roi.pass};
}

Outcome cmd_check_identities(const RunConfig& cfg, const Resolved& r) {
  if (cfg.kind != "charge" && cfg.kind != "nonlinear") throw UsageError("check-identities needs --kind charge or nonlinear");
  const CoherentSpec spec = make_spec(cfg, r);
  VerificationReport report("identities");
  const StateVector projector = charge_state_projector(spec);
  report.bound("projector_vs_series", max_abs_diff(projector, charge_state_series(spec)), r.tol);
  try {
    const StateVector expo = charge_state_exponential(spec);
    report.bound("projector_vs_exponential", max_abs_diff(projector, expo), r.tol);
    const NonlinearSpec unit{spec, Deformation{}};
    report.bound("unit_deformation_reduction", max_abs_diff(nl_charge_state(unit), expo), r.tol);
    const NonlinearSpec nl{spec, r.deformation};
    report.bound("recursion_vs_exponential", max_abs_diff(nl_charge_state_recursion(nl), nl_charge_state(nl)), r.tol);
  } catch (const InfeasibleError& e) {
    report.extra["exponential"] = std::string("rejected: ") + e.what();
  }
  auto basis = build_basis(r.layout, r.truncation);
  report.merge(check_pullthrough(basis, 0, r.deformation.f, cfg.n_max, r.tol), "pullthrough_f.");
  if (r.layout.rep_count() == 2) report.merge(check_pullthrough(basis, 1, r.deformation.g, cfg.n_max, r.tol), "pullthrough_g.");
  report.extra["projector_norm"] = projector.norm();
  return {report.to_json(), report.pass()};
}

Outcome cmd_scan_charges(const RunConfig& cfg, const Resolved& r) {
  auto basis = build_basis(r.layout, r.truncation);
  const auto sectors = charge_sectors(*basis);
  json table = json::array();
  for (const auto& [q, members] : sectors) table.push_back({{"q", q.q}, {"dim", members.size()}});
  json out = {{"sectors", table}, {"sector_count", sectors.size()}, {"basis_size", basis->size()}};
  bool pass = true;
  if (cfg.paper_formula) {
    const int n = r.layout.n_group();
    const auto nn = static_cast<std::size_t>(n);
    const bool with_b = r.layout.rep_count() == 2 && r.layout.reps()[1] == n - 1;
    if (!(r.layout.reps()[0] == 1 && (r.layout.rep_count() == 1 || with_b))) {
      throw UsageError("--paper-formula needs reps {1} or {1, N-1}");
    }
    std::size_t law_violations = 0, mismatches = 0, mismatches_m_zero = 0, with_m = 0;
    json counterexamples = json::array();
    for (std::size_t i = 0; i < basis->size(); ++i) {
      const auto& s = basis->state(i).quanta;
      const std::vector<int> nvec(s.begin(), s.begin() + n);
      const std::vector<int> m = with_b ? std::vector<int>(s.begin() + n, s.end()) : std::vector<int>{};
      const bool m_zero = std::all_of(m.begin(), m.end(), [](int x) { return x == 0; });
      if (!m_zero) ++with_m;
      const auto sol = solve_sector(n, basis->charge(i));
      for (std::size_t k = 0; k + 1 < nn; ++k) {
        const int dk = nvec[k] - (with_b ? m[k] : 0);
        const int dn = nvec[nn - 1] - (with_b ? m[nn - 1] : 0);
        if (!(Fraction(dk - dn) == sol.l[k])) {
          ++law_violations;
          break;
        }
      }
      const auto textbook = paper_formula_occupations(n, basis->charge(i), m, nvec[nn - 1]);
      bool agree = true;
      for (std::size_t k = 0; k < nn; ++k) agree = agree && textbook[k] == Fraction(nvec[k]);
      if (!agree) {
        ++mismatches;
        if (m_zero) ++mismatches_m_zero;
        if (counterexamples.size() < 8) {
          json pred = json::array();
          for (const auto& p : textbook) pred.push_back(p.str());
          counterexamples.push_back({{"occupations", s}, {"q", basis->charge(i).q}, {"formula_n", pred}});
        }
      }
    }
    pass = law_violations == 0;
    out["membership_law"] = {{"rule", "n_i - m_i = (n_N - m_N) + l_i"},
                             {"states_checked", basis->size()},
                             {"violations", law_violations},
                             {"holds", pass}};
    out["paper_formula"] = {{"rule", "n_i = n_N + l_i + sum_{a=i}^{N-1} a (m_a - m_{a+1})"},
                            {"states_checked", basis->size()},
                            {"states_with_b_quanta", with_m},
                            {"mismatches", mismatches},
                            {"mismatches_without_b_quanta", mismatches_m_zero},
                            {"fails", mismatches > 0},
                            {"counterexamples", counterexamples}};
  }
  out["pass"] = pass;
  return {out, pass};
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--n", cfg.n, "group SU(N)");
  sub->add_option("--reps", cfg.reps, "fundamental reps F, e.g. 1,2")->delimiter(',');
  sub->add_option("--caps", cfg.caps, "occupation caps per rep (one value broadcasts)")->delimiter(',');
  sub->add_option("--tol", cfg.tol, "tolerance (command default if omitted)");
  sub->add_option("--seed", cfg.seed, "RNG seed");
  sub->add_option("--out", cfg.out, "report path (stdout if omitted)");
}

void add_state_options(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--kind", cfg.kind, "hw | casimir | charge | nonlinear");
  sub->add_option("--form", cfg.form, "projector | series | exponential | recursion");
  sub->add_option("--q", cfg.q, "charges q_1..q_{N-1}")->delimiter(',');
  sub->add_option("--casimir", cfg.casimir, "Casimir values per rep")->delimiter(',');
  sub->add_option("--z", cfg.z, "z parameters re:im,re:im,...");
  sub->add_option("--w", cfg.w, "w parameters re:im,re:im,...");
  sub->add_option("--z-file", cfg.z_file, "JSON file {\"z\": [[re,im],...], \"w\": [...]}");
  sub->add_flag("--random-params", cfg.random_params, "draw parameters from --seed");
  sub->add_option("--f", cfg.f, "built-in deformation for the a chain");
  sub->add_option("--g", cfg.g, "built-in deformation for the b chain");
  sub->add_option("--deform-file", cfg.deform_file, "JSON file {\"f\": ..., \"g\": ...}");
}

int dispatch(CLI::App& app, RunConfig& cfg) {
  Outcome outcome;
  json config;
  try {
    const bool need_params = cfg.command == "build" || cfg.command == "check-eigen" || cfg.command == "check-identities";
    const Resolved r = resolve(cfg, need_params);
    config = config_json(cfg, r);
    if (cfg.command == "verify-algebra") outcome = cmd_verify_algebra(cfg, r);
    else if (cfg.command == "build") outcome = cmd_build(cfg, r);
    else if (cfg.command == "check-eigen") outcome = cmd_check_eigen(cfg, r);
    else if (cfg.command == "check-roi") outcome = cmd_check_roi(cfg, r);
    else if (cfg.command == "check-identities") outcome = cmd_check_identities(cfg, r);
    else if (cfg.command == "scan-charges") outcome = cmd_scan_charges(cfg, r);
  } catch (const Error& e) {
    std::cerr << app.get_name() << " " << cfg.command << ": " << e.what() << "\n";
    return 2;
  } catch (const json::exception& e) {
    std::cerr << app.get_name() << " " << cfg.command << ": malformed JSON input: " << e.what() << "\n";
    return 2;
  }

  json report = outcome.result;
  report["tool"] = kToolName;
  report["version"] = kVersion;
  report["command"] = cfg.command;
  report["config"] = config;
  report["timestamp"] = timestamp();
  report["pass"] = outcome.pass;
  const std::string text = report.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out);
    if (!out) {
      std::cerr << "cannot write " << cfg.out << "\n";
      return 2;
    }
    out << text;
  }
  return outcome.pass ? 0 : 1;
}

}  // namespace

std::vector<Complex> parse_complex_list(const std::string& text) {
  std::vector<Complex> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto colon = item.find(':');
    try {
      const double re = std::stod(item.substr(0, colon));
      double im = 0.0;
      if (colon != std::string::npos) im = std::stod(item.substr(colon + 1));
      out.emplace_back(re, im);
    } catch (const std::exception&) {
      throw UsageError("cannot parse complex value '" + item + "' (expected re or re:im)");
    }
  }
  return out;
}

int run(int argc, char** argv) {
  CLI::App app{"Charged coherent states on truncated Fock spaces", kToolName};
  app.require_subcommand(1);
  RunConfig cfg;
  const std::vector<std::pair<const char*, const char*>> commands{
      {"verify-algebra", "check the Schwinger-boson Lie algebra and Casimirs"},
      {"build", "construct a coherent state and write it as JSON"},
      {"check-eigen", "verify the eigen relations of a constructed state"},
      {"check-roi", "verify a resolution of identity"},
      {"check-identities", "constructor equivalence, deformation reduction and pull-through identities"},
      {"scan-charges", "list charge sectors; optionally compare occupation rules"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    add_common(sub, cfg);
    const std::string n = name;
    if (n == "build" || n == "check-eigen" || n == "check-identities") add_state_options(sub, cfg);
    if (n == "check-identities") sub->add_option("--n-max", cfg.n_max, "largest power in the pull-through check");
    if (n == "build") sub->add_option("--csv", cfg.csv, "also write amplitudes as CSV");
    if (n == "check-roi") {
      sub->add_option("--mode", cfg.mode, "charge-analytic | charge-numeric | casimir-mc");
      sub->add_option("--q", cfg.q, "charges")->delimiter(',');
      sub->add_option("--casimir", cfg.casimir, "Casimir values per rep")->delimiter(',');
      sub->add_option("--samples", cfg.samples, "Monte-Carlo sample count");
    }
    if (n == "scan-charges") sub->add_flag("--paper-formula", cfg.paper_formula, "compare the textbook occupation rule");
    sub->callback([&cfg, n] { cfg.command = n; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  return dispatch(app, cfg);
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> storage{kToolName};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace suncs::cli
