// gowers_cli: command-line access to the library. Results are JSON on stdout
// (or --out). Exit status: 0 ok, 1 failed verification, 2 invalid input.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "gowers/anti_uniform.hpp"
#include "gowers/decomposable.hpp"
#include "gowers/gowers_norm.hpp"
#include "gowers/numeric.hpp"
#include "gowers/regularity.hpp"
#include "gowers/serialization.hpp"
#include "gowers/signals.hpp"
#include "gowers/spectral.hpp"
#include "gowers/structured.hpp"
#include "gowers/verify_suite.hpp"

using namespace gowers;

namespace {

struct Config {
  std::string group;
  int d = 2;
  int k = 2;
  double delta = 0.1;
  double theta = 0.0;
  std::uint64_t seed = 1;
  std::uint64_t budget = 10'000;
  std::string input;
  std::string out;
  std::string csv;
  std::string level = "quick";
  int threads = 1;
  std::string inject_fault;
  std::string filter;
  std::string method = "inductive";
  double tol_dual = 1e-9;
  double tol_newton = 1e-12;
  std::size_t cell_cap = 0;
  // gen
  std::string kind = "random";
  std::string subset;
  std::string coefficients;
  std::string terms;
  double alpha = 0.0;
  std::size_t length = 0;
  double bound = 1.0;
  std::size_t low_pass = 0;
  int samples = 16;
};

// Failed verification; exit status 1.
struct AssertionFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

Json load_json(const Config& c) {
  if (c.input.empty()) throw InvalidParameter("--input is required");
  return read_json_file(c.input);
}

GroupFunction load_function(const Config& c) {
  if (c.input.empty()) throw InvalidParameter("--input is required");
  if (ends_with(c.input, ".csv")) {
    if (c.group.empty()) throw InvalidParameter("CSV input needs --group");
    std::ifstream in(c.input);
    if (!in) throw InvalidParameter("cannot open " + c.input);
    return read_csv(in, parse_group(c.group));
  }
  GroupFunction f = group_function_from_json(read_json_file(c.input));
  if (!c.group.empty() && !(parse_group(c.group) == f.group())) {
    throw DimensionMismatch("--group disagrees with the input file");
  }
  return f;
}

void emit(const Config& c, const Json& j) {
  const std::string text = j.dump(2) + "\n";
  if (c.out.empty()) {
    std::cout << text;
  } else {
    write_text_file(c.out, text);
  }
}

void emit_csv(const Config& c, const GroupFunction& f) {
  if (c.csv.empty()) return;
  std::ostringstream ss;
  write_csv(ss, f);
  write_text_file(c.csv, ss.str());
}

NormMethod parse_method(const std::string& m) {
  if (m == "inductive") return NormMethod::kInductive;
  if (m == "closed") return NormMethod::kClosedFormula;
  throw InvalidParameter("method must be 'inductive' or 'closed'");
}

DualNormOptions dual_options(const Config& c) {
  DualNormOptions o;
  o.seed = c.seed;
  o.tol = c.tol_dual;
  return o;
}

Json dual_json(const DualNormResult& r) {
  Json j{{"value", r.value},
         {"iterations", r.iterations},
         {"stationarity_residual", r.stationarity_residual},
         {"converged", r.converged},
         {"unbounded", r.unbounded},
         {"witness", to_json(r.witness)}};
  j["certificate_upper"] = r.certificate_upper ? Json(*r.certificate_upper) : Json(nullptr);
  return j;
}

Json thk_json(const ThkResult& r) {
  return Json{{"d", r.d},
              {"k", r.k},
              {"delta", r.delta},
              {"c", r.c},
              {"residual", r.residual},
              {"iterations", r.iterations},
              {"converged", r.converged},
              {"f_u_norm", r.f_u_norm},
              {"f_lp_norm", r.f_lp_norm},
              {"h_dual_lp", r.h_dual_lp},
              {"f_sup", r.f_sup},
              {"h_l1", r.h_l1},
              {"f", to_json(r.f)},
              {"h", to_json(r.h)}};
}

Json rounds_json(const std::vector<RegularityRound>& history) {
  Json out = Json::array();
  for (const RegularityRound& h : history) {
    out.push_back(Json{{"cells", h.cells},
                       {"energy", h.energy},
                       {"defect", h.defect},
                       {"exhaustive", h.exhaustive},
                       {"refined_cells", h.refined_cells},
                       {"refined_energy", h.refined_energy},
                       {"uniformized_cells", h.uniformized_cells},
                       {"uniformized_energy", h.uniformized_energy},
                       {"good_cells", h.good_cells}});
  }
  return out;
}

RegularizeOptions regularize_options(const Config& c) {
  RegularizeOptions o;
  o.budget = c.budget;
  o.seed = c.seed;
  o.cell_cap = c.cell_cap;
  return o;
}

void cmd_norm(const Config& c) {
  const GroupFunction f = load_function(c);
  emit(c, Json{{"d", c.d}, {"value", gowers_norm(f, c.d, parse_method(c.method))}});
}

void cmd_dual_fn(const Config& c) {
  const GroupFunction D = dual_function(load_function(c), c.d);
  emit_csv(c, D);
  emit(c, to_json(D));
}

void cmd_dual_norm(const Config& c) { emit(c, dual_json(dual_norm(load_function(c), c.d, dual_options(c)))); }

void cmd_thk(const Config& c) {
  ThkOptions o;
  o.tol = c.tol_newton;
  emit(c, thk_json(thk_decompose(load_function(c), c.d, c.k, c.delta, o)));
}

void cmd_borne(const Config& c) {
  ThkOptions o;
  o.tol = c.tol_newton;
  const ThborneResult b = thborne_decompose(load_function(c), c.d, c.delta, {}, o);
  Json j = thk_json(b.result);
  j["schedule_run"] = b.schedule_run;
  j["stabilized"] = b.stabilized;
  j["flagged"] = b.flagged;
  j["note"] = b.note;
  emit(c, j);
}

void cmd_a2(const Config& c) {
  const GroupFunction f = load_function(c);
  emit(c, Json{{"value", a2_norm(f)}, {"spectrum", to_json(dft(f))}});
}

void cmd_u2(const Config& c) { emit(c, Json{{"value", u2_norm_spectral(load_function(c))}}); }

void cmd_u2_dual(const Config& c) { emit(c, Json{{"value", u2_dual_norm_spectral(load_function(c))}}); }

void cmd_regularize(const Config& c) {
  const Json j = load_json(c);
  const CubeFunction F = j.contains("terms") ? materialize(decomposable_from_json(j)) : cube_function_from_json(j);
  try {
    const RegularizeResult r = regularize(F, c.delta, regularize_options(c));
    emit(c, Json{{"delta", c.delta},
                 {"rounds", r.rounds},
                 {"final_defect", r.final_defect},
                 {"energy", cube_energy(r.F_P)},
                 {"partition", to_json(r.P)},
                 {"history", rounds_json(r.history)}});
  } catch (const RegularityFailure& e) {
    emit(c, Json{{"delta", c.delta}, {"error", e.what()}, {"history", rounds_json(e.history())}});
    throw AssertionFailure(e.what());
  }
}

void cmd_main(const Config& c) {
  int cube_d = 0;
  const VertexMap fs = vertex_map_from_json(load_json(c), cube_d);
  StructuredOptions o;
  o.regularize = regularize_options(c);
  o.verify = false;
  const MainDecomposition M = structured_decompose(fs, cube_d - 1, c.delta, o);
  const MainVerification v = verify_main(M, fs, c.delta);
  Json rects = Json::array();
  for (const Rectangle& r : M.rectangles.rectangles) {
    rects.push_back(Json{{"cells", r.cells}, {"average", r.average}, {"mass", r.mass}});
  }
  emit(c, Json{{"d", M.d},
               {"delta", M.delta},
               {"theta", M.theta},
               {"m", M.m},
               {"C_bound", M.C_bound},
               {"partition", to_json(M.partition)},
               {"rectangles", rects},
               {"rho", to_json(M.rho)},
               {"f_error", M.f_error},
               {"history", rounds_json(M.history)},
               {"verification",
                Json{{"passed", v.passed},
                     {"rho_l2", v.rho_l2},
                     {"worst_piece_sup", v.worst_piece_sup},
                     {"worst_certificate", v.worst_certificate},
                     {"worst_symbolic_gap", v.worst_symbolic_gap},
                     {"item1_slack", v.item1_slack},
                     {"item2_sup_slack", v.item2_sup_slack},
                     {"item2_cert_slack", v.item2_cert_slack},
                     {"item3_slack", v.item3_slack},
                     {"envelope_slack", v.envelope_slack},
                     {"failures", v.failures}}}});
  if (!v.passed) throw AssertionFailure("decomposition failed verification");
}

void cmd_gen(const Config& c) {
  if (c.kind == "torus") {
    TorusFunctionSpec spec;
    for (const std::string& t : split(c.terms, ',')) {
      const auto parts = split(t, ':');
      if (parts.size() != 3) throw InvalidParameter("torus terms look like n:a:b");
      spec.terms.push_back(TorusTerm{std::stoll(parts[0]), std::stod(parts[1]), std::stod(parts[2])});
    }
    const TorusSequence s = gen_torus_sequence(spec, c.alpha, c.length);
    emit_csv(c, s.h);
    emit(c, Json{{"function", to_json(s.h)}, {"bound", s.bound}, {"embedding", s.embedding}, {"u2_dual", s.u2_dual}});
    return;
  }
  if (c.group.empty()) throw InvalidParameter("--group is required");
  const GroupSpec g = parse_group(c.group);
  GroupFunction f;
  if (c.kind == "random") {
    f = gen_random(g, c.seed, c.bound, c.low_pass > 0 ? std::optional<std::size_t>(c.low_pass) : std::nullopt);
  } else if (c.kind == "indicator") {
    std::vector<Element> subset;
    for (const std::string& s : split(c.subset, ',')) subset.push_back(std::stoull(s));
    f = gen_indicator(g, subset);
  } else if (c.kind == "phase") {
    std::vector<std::int64_t> coeffs;
    for (const std::string& s : split(c.coefficients, ',')) coeffs.push_back(std::stoll(s));
    f = gen_polynomial_phase(g, coeffs);
  } else {
    throw InvalidParameter("unknown generator '" + c.kind + "'");
  }
  emit_csv(c, f);
  emit(c, to_json(f));
}

void cmd_suite(const Config& c) {
  SuiteOptions o;
  o.level = parse_suite_level(c.level);
  o.seed = c.seed;
  o.inject_fault = c.inject_fault;
  o.filter = c.filter;
  const SuiteReport r = run_verify_suite(o);
  emit(c, to_json(r));
  if (!r.passed()) throw AssertionFailure("verification suite reported failures");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gowers norms on finite abelian groups"};
  app.require_subcommand(1);
  Config c;

  auto io = [&](CLI::App* s) {
    s->add_option("--input", c.input, "JSON (or .csv with --group) input file");
    s->add_option("--out", c.out, "write JSON here instead of stdout");
    s->add_option("--group", c.group, "group orders, e.g. 8 or 2,2,3");
  };
  auto add = [&](const char* name, const char* help, auto fn) {
    CLI::App* s = app.add_subcommand(name, help);
    io(s);
    s->callback(fn);
    return s;
  };

  CLI::App* norm = add("norm", "U(d) norm", [&] { cmd_norm(c); });
  norm->add_option("--d", c.d)->check(CLI::PositiveNumber);
  norm->add_option("--method", c.method, "inductive or closed");

  CLI::App* dfn = add("dual-fn", "dual function D_d f", [&] { cmd_dual_fn(c); });
  dfn->add_option("--d", c.d)->check(CLI::PositiveNumber);
  dfn->add_option("--csv", c.csv, "also export index,value rows");

  CLI::App* dn = add("dual-norm", "anti-uniform norm by ascent", [&] { cmd_dual_norm(c); });
  dn->add_option("--d", c.d)->check(CLI::PositiveNumber);
  dn->add_option("--seed", c.seed);
  dn->add_option("--tol-dual", c.tol_dual);

  CLI::App* thk = add("decompose-thk", "g = D_d f + h with L^{2^k} control", [&] { cmd_thk(c); });
  thk->add_option("--d", c.d)->check(CLI::PositiveNumber);
  thk->add_option("--k", c.k)->check(CLI::PositiveNumber);
  thk->add_option("--delta", c.delta);
  thk->add_option("--tol-newton", c.tol_newton);

  CLI::App* borne = add("decompose-borne", "g = D_d f + h with sup and L^1 control", [&] { cmd_borne(c); });
  borne->add_option("--d", c.d)->check(CLI::PositiveNumber);
  borne->add_option("--delta", c.delta);
  borne->add_option("--tol-newton", c.tol_newton);

  add("a2", "Fourier algebra norm", [&] { cmd_a2(c); });
  add("u2", "U(2) norm from the spectrum", [&] { cmd_u2(c); });
  add("u2-dual", "U(2) dual norm from the spectrum", [&] { cmd_u2_dual(c); });

  CLI::App* reg = add("regularize", "energy-increment regularization", [&] { cmd_regularize(c); });
  reg->add_option("--delta", c.delta);
  reg->add_option("--budget", c.budget);
  reg->add_option("--seed", c.seed);
  reg->add_option("--cell-cap", c.cell_cap);

  CLI::App* mainc = add("main-decompose", "structured decomposition of a cubic convolution", [&] { cmd_main(c); });
  mainc->add_option("--delta", c.delta);
  mainc->add_option("--budget", c.budget);
  mainc->add_option("--seed", c.seed);

  CLI::App* gen = add("gen", "signal generators", [&] { cmd_gen(c); });
  gen->add_option("--kind", c.kind, "random, indicator, phase or torus");
  gen->add_option("--seed", c.seed);
  gen->add_option("--bound", c.bound);
  gen->add_option("--low-pass", c.low_pass);
  gen->add_option("--subset", c.subset, "comma-separated elements");
  gen->add_option("--coefficients", c.coefficients, "polynomial coefficients, constant first");
  gen->add_option("--terms", c.terms, "torus terms n:a:b,...");
  gen->add_option("--alpha", c.alpha);
  gen->add_option("--length", c.length, "sequence length N for torus");
  gen->add_option("--csv", c.csv, "also export index,value rows");

  CLI::App* suite = app.add_subcommand("verify-suite", "run the property suite");
  suite->add_option("--level", c.level, "quick or full");
  suite->add_option("--seed", c.seed);
  suite->add_option("--inject-fault", c.inject_fault, "entry name to perturb");
  suite->add_option("--filter", c.filter, "entry name prefix");
  suite->add_option("--out", c.out);
  suite->callback([&] { cmd_suite(c); });

  app.add_option("--threads", c.threads, "worker threads")->check(CLI::PositiveNumber);
  app.parse_complete_callback([&] { set_thread_count(c.threads); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const AssertionFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalConsistency& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const InternalError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const RegularityFailure& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {  // stoll/stod and friends
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
