#include "slm/cli.hpp"
#include "slm/degeneration.hpp"
#include "slm/dpp.hpp"
#include "slm/error.hpp"
#include "slm/exact.hpp"
#include "slm/geometry.hpp"
#include "slm/io.hpp"
#include "slm/svg.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

namespace slm::cli {

namespace {

struct Options {
  std::string input = "-";
  std::string output;
  std::string svg;
  double tol = 1e-10;
  unsigned seed = 1;
  int anchor = 1;
  std::string eps_grid;
  int samples = -1;
  std::string data;
  bool chamber = false;
  bool predict_only = false;
};

// A finished job: JSON for the output stream, plus an SVG document for `plot`.
struct Result {
  Result(Json j, std::string s = {}, int c = kOk) : json(std::move(j)), svg(std::move(s)), code(c) {}

  Json json;
  std::string svg;
  int code;
};

Json load_input(const std::string& path) {
  std::ifstream file;
  if (path != "-") {
    file.open(path);
    if (!file) throw Error(Errc::InvalidInput, "cannot open input file " + path);
  }
  std::istream& in = path == "-" ? std::cin : file;
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw Error(Errc::InvalidInput, std::string("input is not valid JSON: ") + e.what());
  }
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw Error(Errc::InvalidInput, std::string("missing field \"") + name + "\"");
  return j[name];
}

int integer_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_number_integer()) throw Error(Errc::InvalidInput, std::string("field \"") + name + "\" must be an integer");
  return v.get<int>();
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw Error(Errc::InvalidInput, std::string("cannot parse ") + what + " entry \"" + item + "\"");
    }
  }
  return out;
}

Eigen::VectorXd data_vector(const Json& j, const Options& o, const SquaredLinearModel& model) {
  Eigen::VectorXd s;
  if (!o.data.empty()) {
    const auto v = parse_list(o.data, "--data");
    s = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Index>(v.size()));
  } else {
    s = parse_double_vector(field(j, "s"));
  }
  if (s.size() != model.n()) throw Error(Errc::InvalidInput, "data vector s must have one entry per state");
  return s;
}

QVector point_input(const Json& j, const SquaredLinearModel& model) {
  if (j.contains("y")) {
    QVector y = parse_rational_vector(j["y"]);
    if (y.size() != model.n()) throw Error(Errc::InvalidInput, "y must have one entry per state");
    return y;
  }
  if (j.contains("x")) {
    const QVector x = parse_rational_vector(j["x"]);
    if (x.size() != model.d()) throw Error(Errc::InvalidInput, "x must have one entry per parameter");
    return model_point(model, x);
  }
  throw Error(Errc::InvalidInput, "missing field \"y\" (or \"x\")");
}

std::vector<double> eps_grid(const Options& o) {
  return o.eps_grid.empty() ? default_eps_grid() : parse_list(o.eps_grid, "--eps-grid");
}

int anchor_index(const Options& o, const SquaredLinearModel& model) {
  if (o.anchor < 1 || o.anchor > model.n()) throw Error(Errc::InvalidInput, "--anchor must lie in 1..n");
  return o.anchor - 1;
}

Json header(const std::string& command) { return Json{{"schema", kSchema}, {"command", command}}; }

Json switch_json(const RegionSwitch& sw) {
  return Json{{"t", sw.t}, {"t_left", sw.t_left}, {"t_right", sw.t_right}, {"from", sw.from.str()}, {"to", sw.to.str()}};
}

Json signature_json(const TypeSignature& sig) {
  return Json{{"f_vector", sig.f_vector}, {"vertex_degrees", sig.vertex_degrees}};
}

Result cmd_regions(const Json& in, const Options&) {
  const Arrangement arr = parse_arrangement(in);
  const auto regions = enumerate_regions(arr);
  Json out = header("regions");
  out["n"] = arr.states();
  out["d"] = arr.params();
  out["count"] = regions.size();
  Json list = Json::array();
  for (const auto& r : regions) list.push_back(region_json(r));
  out["regions"] = list;
  return out;
}

Result cmd_charpoly(const Json& in, const Options&) {
  const Arrangement arr = parse_arrangement(in);
  const auto chi = characteristic_polynomial(arr);
  Json out = header("charpoly");
  out["char_poly"] = chi.coeffs;
  out["value_at_minus_one"] = chi(-1);
  return out;
}

Result cmd_mldegree(const Json& in, const Options&) {
  const Arrangement arr = parse_arrangement(in);
  Json out = header("mldegree");
  out["ml_degree"] = ml_degree(arr);
  out["char_poly"] = characteristic_polynomial(arr).coeffs;
  if (arr.states() > arr.params() && arr.params() > 1)
    out["generic_ml_degree"] = generic_ml_degree(arr.params(), arr.states());
  return out;
}

Result cmd_mle(const Json& in, const Options& o) {
  const SquaredLinearModel model(parse_arrangement(in));
  const Eigen::VectorXd s = data_vector(in, o, model);
  SolveOptions opts;
  opts.tol = o.tol;
  const auto res = solve_all(model, s, opts);
  Json out = header("mle");
  Json points = Json::array();
  for (const auto& cp : res.points) points.push_back(critical_point_json(cp));
  out["critical_points"] = points;
  if (res.mle >= 0) {
    out["mle"] = res.mle + 1;
    out["mle_region"] = res.points[static_cast<std::size_t>(res.mle)].region.str();
  } else {
    out["mle"] = nullptr;
  }
  Json failures = Json::array();
  for (const auto& f : res.failures)
    failures.push_back(Json{{"region", f.region.str()}, {"message", f.message}, {"trace", f.trace}});
  out["failures"] = failures;
  return {out, {}, res.failures.empty() ? kOk : kNumeric};
}

Result cmd_degenerate(const Json& in, const Options& o) {
  const SquaredLinearModel model(parse_arrangement(in));
  const int anchor = anchor_index(o, model);
  const auto sols = unit_data_solutions(model, anchor);
  Json out = header("degenerate");
  out["anchor"] = anchor + 1;
  bool generic = true;
  Json list = Json::array();
  for (const auto& sol : sols) {
    generic = generic && sol.generic_flag;
    Json item{{"support", indices_json(sol.J)}, {"singular_gram", sol.singular_gram}, {"generic", sol.generic_flag}};
    if (!sol.singular_gram) item["y"] = to_json(primitive_integer(sol.y, anchor));
    list.push_back(item);
  }
  out["generic"] = generic;
  out["solutions"] = list;
  return out;
}

Result cmd_tropical(const Json& in, const Options& o) {
  const SquaredLinearModel model(parse_arrangement(in));
  const QVector w = parse_rational_vector(field(in, "w"));
  const auto pred = tropical_predictions(model, w);
  Json out = header("tropical");
  out["anchor"] = pred.anchor + 1;
  out["generic"] = pred.generic;
  if (!pred.warning.empty()) out["warning"] = pred.warning;
  Json points = Json::array();
  for (const auto& p : pred.points) points.push_back(Json{{"support", indices_json(p.J)}, {"z", to_json(p.z)}});
  out["predictions"] = points;
  if (o.predict_only) return out;

  const auto report = estimate_valuations(model, w, eps_grid(o));
  out["eps_grid"] = report.eps_grid;
  Json estimates = Json::array();
  for (const auto& e : report.estimates) {
    Json item{{"region", e.region.str()}, {"z_hat", to_json(e.z_hat)}, {"z", to_json(e.z)},
              {"support", indices_json(e.J)}, {"residual", e.residual}};
    item["matched_solution"] = e.matched_solution >= 0 ? Json(e.matched_solution + 1) : Json(nullptr);
    item["limit_distance"] = e.limit_distance;
    estimates.push_back(item);
  }
  out["estimates"] = estimates;
  return out;
}

Result cmd_lognormal(const Json& in, const Options&) {
  const SquaredLinearModel model(parse_arrangement(in));
  const QVector y = point_input(in, model);
  const Polytope pi = lognormal_polytope(model, y);
  const Polytope dual = dual_polytope(model, y);
  Json out = header("lognormal");
  out["y"] = to_json(y);
  out["polytope"] = polytope_json(pi);
  out["signature"] = signature_json(type_signature(pi));
  out["simple"] = is_simple(pi);
  out["dual"] = polytope_json(dual);
  Json swaps = Json::array();
  for (const auto& c : swap_candidates(model, y)) {
    std::string sigma;
    for (auto v : c.sigma) sigma += v > 0 ? '+' : '-';
    swaps.push_back(Json{{"i", c.i + 1}, {"j", c.j + 1}, {"sigma", sigma}, {"image", to_json(c.image)}});
  }
  out["swap_candidates"] = swaps;
  return out;
}

Result cmd_chamber(const Json& in, const Options& o) {
  const SquaredLinearModel model(parse_arrangement(in));
  const auto ch = chamber_arrangement(model);
  Json out = header("chamber");
  Json forms = Json::array();
  for (const auto& h : ch.hyperplanes)
    forms.push_back(Json{{"subset", indices_json(h.subset)}, {"normal", to_json(primitive_integer(h.normal))}});
  out["hyperplanes"] = forms;
  out["distinct"] = ch.deduplicated.states();
  Json dups = Json::array();
  for (const auto& [a, b] : ch.duplicates) dups.push_back(Json::array({a + 1, b + 1}));
  out["duplicates"] = dups;
  if (o.samples > 0) {
    Json regions = Json::array();
    for (const auto& r : combinatorial_type_scan(model, o.samples, o.seed)) {
      Json sigs = Json::array();
      for (const auto& smp : r.samples) sigs.push_back(Json{{"x", to_json(smp.x)}, {"signature", signature_json(smp.signature)}});
      regions.push_back(Json{{"region", r.region.str()}, {"constant", r.constant}, {"samples", sigs}});
    }
    out["scan"] = regions;
  }
  return out;
}

Result cmd_voronoi(const Json& in, const Options& o) {
  const SquaredLinearModel model(parse_arrangement(in));
  const QVector y = point_input(in, model);
  const Json& seg = field(in, "segment");
  const Eigen::VectorXd s0 = parse_double_vector(field(seg, "s0"));
  const Eigen::VectorXd s1 = parse_double_vector(field(seg, "s1"));
  const auto scan = log_voronoi_scan(model, y, s0, s1, o.samples > 0 ? o.samples : 40);
  Json out = header("voronoi");
  out["t"] = scan.t;
  Json tags = Json::array();
  for (const auto& t : scan.tags) tags.push_back(t.str());
  out["regions"] = tags;
  Json switches = Json::array();
  for (const auto& sw : scan.switches) switches.push_back(switch_json(sw));
  out["switches"] = switches;
  return out;
}

Result cmd_dpp(const Json& in, const Options&) {
  const DPPModel dpp(parse_rational_matrix(field(in, "Theta_fixed")), integer_field(in, "k"), integer_field(in, "n"));
  const auto red = linear_projection_arrangement(dpp);
  Json out = header("dpp");
  out["column_order"] = indices_json(red.column_order);
  out["A_prime"] = to_json(red.A_prime);
  out["P"] = to_json(red.P);
  Json hyperplanes = Json::array();
  for (std::size_t h = 0; h < red.states.size(); ++h)
    hyperplanes.push_back(Json{{"sigma", indices_json(red.states[h])},
                               {"form", to_json(QVector(red.arrangement.matrix().row(static_cast<Index>(h)).transpose()))}});
  out["hyperplanes"] = hyperplanes;
  out["ml_degree"] = ml_degree(red.arrangement);
  if (dpp.k == dpp.n - 2 && dpp.n >= 4) out["ml_degree_formula"] = dpp_ml_degree_l2(dpp.n);
  if (in.contains("Theta")) {
    const auto dist = dpp_probabilities(cast_rational<double>(parse_rational_matrix(in["Theta"])));
    Json probs = Json::array();
    for (std::size_t i = 0; i < dist.states.size(); ++i)
      probs.push_back(Json{{"sigma", indices_json(dist.states[i])}, {"prob", dist.probs[i]}});
    out["distribution"] = probs;
    out["normalization_residual"] = dist.normalization_residual;
  }
  return out;
}

Result cmd_ideal(const Json& in, const Options&) {
  const SquaredLinearModel model(parse_arrangement(in));
  const auto gen = veronese_generators(model);
  Json out = header("ideal");
  out["L"] = to_json(gen.L);
  out["linear_forms"] = to_json(gen.linear_forms);
  Json r = Json::array();
  for (int a = 0; a < model.d(); ++a)
    for (int b = a; b < model.d(); ++b)
      r.push_back(Json{{"monomial", Json::array({a + 1, b + 1})},
                       {"coefficients", to_json(gen.R[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])}});
  out["R"] = r;
  out["minor_space_dimension"] = minor_space_dimension(model.d());
  if (in.contains("p")) out["residual"] = generator_residual(gen, parse_double_vector(in["p"]));
  return out;
}

Result cmd_singular(const Json& in, const Options&) {
  const SquaredLinearModel model(parse_arrangement(in));
  Json out = header("singular");
  Json list = Json::array();
  for (const auto& sub : singular_subspaces(model)) {
    const auto wit = non_injectivity_witness(model, sub);
    list.push_back(Json{{"I", indices_json(sub.I)},
                        {"J", indices_json(sub.J)},
                        {"projective_dim", sub.projective_dim()},
                        {"basis", to_json(QMatrix(sub.basis.transpose()))},
                        {"witness", Json{{"x", to_json(wit.x)}, {"x_prime", to_json(wit.x_prime)}}}});
  }
  out["subspaces"] = list;
  return out;
}

Result cmd_plot(const Json& in, const Options& o) {
  const SquaredLinearModel model(parse_arrangement(in));
  PlotOverlays overlays;
  overlays.region_labels = true;
  Json out = header("plot");
  if (in.contains("s") || !o.data.empty()) {
    const auto res = solve_all(model, data_vector(in, o, model));
    for (const auto& cp : res.points) overlays.critical_points.push_back(cp.x);
    out["critical_points"] = res.points.size();
  }
  if (in.contains("w")) {
    const auto report = estimate_valuations(model, parse_rational_vector(in["w"]), eps_grid(o));
    const auto limits = unit_data_solutions(model, report.anchor);
    const Eigen::MatrixXd& a = model.A_double();
    const auto to_x = [&](const Eigen::VectorXd& y) { return Eigen::VectorXd(a.colPivHouseholderQr().solve(y)); };
    for (const auto& e : report.estimates) {
      std::vector<Eigen::VectorXd> path;
      for (const auto& y : e.path) path.push_back(to_x(y));
      overlays.paths.push_back(std::move(path));
      if (e.matched_solution >= 0)
        overlays.limits.push_back(to_x(cast_rational<double>(limits[static_cast<std::size_t>(e.matched_solution)].y)));
    }
    out["paths"] = overlays.paths.size();
  }
  if (o.chamber) {
    const auto ch = chamber_arrangement(model);
    for (const auto& h : ch.hyperplanes)
      if (h.subset.size() > 1) overlays.extra_forms.push_back(h.normal);
  }
  return {out, plot_arrangement(model, overlays)};
}

void write_error(std::ostream& err, std::string_view code, const std::string& message) {
  err << Json{{"schema", kSchema}, {"error", Json{{"code", code}, {"message", message}}}}.dump() << '\n';
}

void emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file) throw Error(Errc::InvalidInput, "cannot open output file " + path);
  file << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using Handler = std::function<Result(const Json&, const Options&)>;
  const std::vector<std::pair<std::string, std::pair<std::string, Handler>>> commands = {
      {"regions", {"Enumerate the regions of the arrangement with witness points", cmd_regions}},
      {"charpoly", {"Characteristic polynomial of the arrangement", cmd_charpoly}},
      {"mldegree", {"ML degree (number of regions) and characteristic polynomial", cmd_mldegree}},
      {"mle", {"Solve for the critical point in every region and pick the MLE", cmd_mle}},
      {"degenerate", {"Critical points for unit data e_anchor", cmd_degenerate}},
      {"tropical", {"Tropical valuation predictions and path-tracked estimates", cmd_tropical}},
      {"lognormal", {"Log-normal polytope, its dual and swap candidates at a model point", cmd_lognormal}},
      {"chamber", {"Chamber arrangement and combinatorial type scan", cmd_chamber}},
      {"voronoi", {"Region of the global maximizer along a data segment", cmd_voronoi}},
      {"dpp", {"Discriminantal arrangement of a linear projection DPP", cmd_dpp}},
      {"ideal", {"Linear and quadratic generators of the model's ideal", cmd_ideal}},
      {"singular", {"Subspaces where the parametrization fails to be injective", cmd_singular}},
      {"plot", {"SVG of the arrangement in the chart l_1 = 1", cmd_plot}},
  };

  CLI::App app("Likelihood geometry of squared linear models", "slm");
  app.require_subcommand(1);
  Options o;
  std::map<const CLI::App*, const Handler*> handlers;
  for (const auto& [name, entry] : commands) {
    CLI::App* sub = app.add_subcommand(name, entry.first);
    sub->add_option("-i,--input", o.input, "Input JSON file ('-' for stdin)");
    sub->add_option("-o,--output", o.output, "Output file (default stdout)");
    sub->add_option("--tol", o.tol, "Gradient tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--seed", o.seed, "Random seed");
    if (name == "degenerate") sub->add_option("--anchor", o.anchor, "Anchor state (1-based)");
    if (name == "tropical" || name == "plot") sub->add_option("--eps-grid", o.eps_grid, "Decreasing eps values, comma separated");
    if (name == "tropical") sub->add_flag("--predict-only", o.predict_only, "Skip path tracking");
    if (name == "chamber" || name == "voronoi")
      sub->add_option("--samples", o.samples, "Samples per region (chamber) or segment steps (voronoi)")
          ->check(CLI::PositiveNumber);
    if (name == "mle" || name == "plot") sub->add_option("--data", o.data, "Data vector s, comma separated");
    if (name == "plot") {
      sub->add_option("--svg", o.svg, "SVG file (default: the output stream)");
      sub->add_flag("--chamber", o.chamber, "Overlay the determinantal chamber forms");
    }
    handlers[sub] = &entry.second;
  }

  std::vector<const char*> argv{"slm"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "InvalidInput", e.what());
    return kValidation;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  try {
    const Json input = load_input(o.input);
    Result result = (*handlers.at(chosen))(input, o);
    if (!result.svg.empty()) {
      if (o.svg.empty()) {
        emit(o.output, result.svg, out);
        return result.code;
      }
      emit(o.svg, result.svg, out);
      result.json["svg"] = o.svg;
    }
    emit(o.output, result.json.dump(2) + "\n", out);
    if (result.code == kNumeric) write_error(err, "NoConvergence", "some regions failed to converge");
    return result.code;
  } catch (const Error& e) {
    write_error(err, errc_name(e.code()), e.what());
    return is_numeric_failure(e.code()) ? kNumeric : kValidation;
  } catch (const Json::exception& e) {
    write_error(err, "InvalidInput", e.what());
    return kValidation;
  } catch (const std::exception& e) {
    write_error(err, "InvalidInput", e.what());
    return kValidation;
  }
}

}  // namespace slm::cli
