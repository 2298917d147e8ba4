#include "thermopauli/json_io.hpp"

#include <cmath>
#include <complex>
#include <initializer_list>
#include <string>
#include <vector>

#include <json.hpp>

#include "thermopauli/errors.hpp"
#include "thermopauli/fluctuations.hpp"
#include "thermopauli/scalar.hpp"
#include "thermopauli/subtropical.hpp"
#include "thermopauli/tropical.hpp"

namespace thermopauli::json_io {

namespace {

using nlohmann::json;

// --- strict schema helpers --------------------------------------------------

[[noreturn]] void fail(const std::string& pointer, const std::string& why) {
  throw schema_error(pointer + ": " + why);
}

void expect_object(const json& j, const std::string& ptr) {
  if (!j.is_object()) fail(ptr.empty() ? "/" : ptr, "expected an object");
}

// Fail-closed field check: all of `required` present, nothing outside
// required + optional allowed.
void expect_fields(const json& j, const std::string& ptr, std::initializer_list<const char*> required,
                   std::initializer_list<const char*> optional = {}) {
  expect_object(j, ptr);
  for (const char* name : required)
    if (!j.contains(name)) fail(ptr + "/" + name, "missing required field");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* name : required)
      if (item.key() == name) known = true;
    for (const char* name : optional)
      if (item.key() == name) known = true;
    if (!known) fail(ptr + "/" + item.key(), "unknown field");
  }
}

void expect_schema_1(const json& j, const std::string& ptr) {
  const json& s = j.at("schema");
  if (!s.is_number_integer() || s.get<long long>() != 1) fail(ptr + "/schema", "expected the integer 1");
}

double get_number(const json& j, const std::string& ptr) {
  if (!j.is_number()) fail(ptr, "expected a number");
  return j.get<double>();
}

double get_field_number(const json& j, const std::string& ptr, const char* name) {
  return get_number(j.at(name), ptr + "/" + name);
}

double get_optional_number(const json& j, const std::string& ptr, const char* name, double fallback) {
  if (!j.contains(name)) return fallback;
  return get_field_number(j, ptr, name);
}

long long get_integer(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) fail(ptr, "expected an integer");
  return j.get<long long>();
}

int get_field_int(const json& j, const std::string& ptr, const char* name, long long lo, long long hi) {
  const long long v = get_integer(j.at(name), ptr + "/" + name);
  if (v < lo || v > hi)
    fail(ptr + "/" + name, "expected an integer in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
  return static_cast<int>(v);
}

std::string get_field_string(const json& j, const std::string& ptr, const char* name) {
  const json& v = j.at(name);
  if (!v.is_string()) fail(ptr + "/" + name, "expected a string");
  return v.get<std::string>();
}

std::vector<double> get_number_list(const json& j, const std::string& ptr, int expected_len = -1) {
  if (!j.is_array()) fail(ptr, "expected an array of numbers");
  if (expected_len >= 0 && static_cast<int>(j.size()) != expected_len)
    fail(ptr, "expected exactly " + std::to_string(expected_len) + " entries");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(get_number(j[i], ptr + "/" + std::to_string(i)));
  return out;
}

Eigen::VectorXd get_vector(const json& j, const std::string& ptr, int expected_len = -1) {
  const auto vals = get_number_list(j, ptr, expected_len);
  Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v(static_cast<Eigen::Index>(i)) = vals[i];
  return v;
}

Eigen::MatrixXd get_matrix(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.empty()) fail(ptr, "expected a non-empty array of rows");
  const int rows = static_cast<int>(j.size());
  std::vector<std::vector<double>> data;
  data.reserve(j.size());
  int cols = -1;
  for (int r = 0; r < rows; ++r) {
    data.push_back(get_number_list(j[static_cast<std::size_t>(r)], ptr + "/" + std::to_string(r)));
    if (cols < 0) cols = static_cast<int>(data.back().size());
    if (static_cast<int>(data.back().size()) != cols)
      fail(ptr + "/" + std::to_string(r), "rows must all have the same length");
  }
  if (cols < 1) fail(ptr, "rows must be non-empty");
  Eigen::MatrixXd m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = data[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
  return m;
}

// --- scalar and series (de)serialization -------------------------------------

template <class R>
R scalar_from_double(double v) {
  if constexpr (field<R>::exact)
    return R(v);  // dyadic, hence exact
  else
    return v;
}

json number_json(double v) { return json(v + 0.0); }  // +0.0 folds -0 into 0

template <class R>
std::vector<R> real_list(const json& j, const std::string& ptr, int expected_len) {
  const auto vals = get_number_list(j, ptr, expected_len);
  std::vector<R> out;
  out.reserve(vals.size());
  for (double v : vals) out.push_back(scalar_from_double<R>(v));
  return out;
}

template <class R>
json series1_complex_json(const TruncatedSeries1<R>& s) {
  json coeffs = json::array();
  for (std::size_t m = 0; m <= static_cast<std::size_t>(s.degree()); ++m)
    coeffs.push_back(json::array({number_json(field<R>::re_d(s[m])), number_json(0.0)}));
  return json{{"degree", s.degree()}, {"coeffs", coeffs}};
}

template <class R>
json series2_json(const TruncatedSeries2<R>& s) {
  json rows = json::array();
  for (int m = 0; m <= s.h_degree(); ++m) {
    json row = json::array();
    for (int n = 0; n <= s.x_degree(); ++n) row.push_back(number_json(field<R>::re_d(s(m, n))));
    rows.push_back(std::move(row));
  }
  return json{{"m0", s.h_degree()}, {"n0", s.x_degree()}, {"coeffs", rows}};
}

template <class R>
TruncatedSeries2<R> series2_from_json(const json& j, const std::string& ptr, int m0, int n0) {
  expect_fields(j, ptr, {"m0", "n0", "coeffs"});
  if (get_field_int(j, ptr, "m0", 0, 1000) != m0) fail(ptr + "/m0", "must match the problem's m0");
  if (get_field_int(j, ptr, "n0", 0, 1000) != n0) fail(ptr + "/n0", "must match the problem's n0");
  const json& rows = j.at("coeffs");
  if (!rows.is_array() || static_cast<int>(rows.size()) != m0 + 1)
    fail(ptr + "/coeffs", "expected " + std::to_string(m0 + 1) + " rows");
  TruncatedSeries2<R> out(m0, n0);
  for (int m = 0; m <= m0; ++m) {
    const auto row =
        real_list<R>(rows[static_cast<std::size_t>(m)], ptr + "/coeffs/" + std::to_string(m), n0 + 1);
    for (int n = 0; n <= n0; ++n) out.at(m, n) = row[static_cast<std::size_t>(n)];
  }
  return out;
}

// --- model registry -----------------------------------------------------------

std::shared_ptr<const EntropyModel> parse_model(const json& j, const std::string& ptr) {
  expect_object(j, ptr);
  if (!j.contains("type")) fail(ptr + "/type", "missing required field");
  const std::string type = get_field_string(j, ptr, "type");

  if (type == "sackur_tetrode") {
    expect_fields(j, ptr, {"type"}, {"kB", "mass", "c0"});
    return std::make_shared<SackurTetrodeModel>(get_optional_number(j, ptr, "kB", 1.0),
                                                get_optional_number(j, ptr, "mass", 1.0),
                                                get_optional_number(j, ptr, "c0", 1.0));
  }
  if (type == "quadratic") {
    expect_fields(j, ptr, {"type", "const", "linear", "hessian"}, {"center"});
    const Eigen::VectorXd linear = get_vector(j.at("linear"), ptr + "/linear");
    const Eigen::MatrixXd hessian = get_matrix(j.at("hessian"), ptr + "/hessian");
    Eigen::VectorXd center;
    if (j.contains("center")) center = get_vector(j.at("center"), ptr + "/center");
    return std::make_shared<QuadraticModel>(get_field_number(j, ptr, "const"), linear, hessian, center);
  }
  if (type == "product") {
    expect_fields(j, ptr, {"type", "factors"});
    const json& factors = j.at("factors");
    if (!factors.is_array() || factors.empty()) fail(ptr + "/factors", "expected a non-empty array");
    std::vector<std::shared_ptr<const EntropyModel>> parts;
    for (std::size_t i = 0; i < factors.size(); ++i)
      parts.push_back(parse_model(factors[i], ptr + "/factors/" + std::to_string(i)));
    return std::make_shared<ProductModel>(std::move(parts));
  }
  if (type == "linear_change") {
    expect_fields(j, ptr, {"type", "base", "C"});
    auto base = parse_model(j.at("base"), ptr + "/base");
    return std::make_shared<LinearChangeModel>(std::move(base), get_matrix(j.at("C"), ptr + "/C"));
  }
  if (type == "shifted") {
    expect_fields(j, ptr, {"type", "base", "q"});
    auto base = parse_model(j.at("base"), ptr + "/base");
    return std::make_shared<ShiftedModel>(std::move(base), get_field_number(j, ptr, "q"));
  }
  fail(ptr + "/type", "unknown model type '" + type + "'");
}

// --- tropical -----------------------------------------------------------------

TropicalTolerances tropical_tolerances(const CliOptions& opt) {
  TropicalTolerances tol;
  if (opt.tol_w2 >= 0.0) tol.w2 = opt.tol_w2;
  if (opt.tol_degenerate >= 0.0) tol.degenerate = opt.tol_degenerate;
  if (opt.clamp_d >= 0.0) tol.clamp_D = opt.clamp_d;
  return tol;
}

template <class R>
TropicalProblem<R> tropical_problem_from_json(const json& j, const std::string& ptr) {
  expect_fields(j, ptr, {"schema", "n0", "u", "w"});
  expect_schema_1(j, ptr);
  TropicalProblem<R> p;
  p.n0 = get_field_int(j, ptr, "n0", 1, 64);
  p.u = real_list<R>(j.at("u"), ptr + "/u", p.n0);
  p.w = real_list<R>(j.at("w"), ptr + "/w", p.n0);
  return p;
}

template <class R>
json run_tropical(const json& in, const CliOptions& opt) {
  const TropicalProblem<R> prob = tropical_problem_from_json<R>(in, "");
  const TropicalTolerances tol = tropical_tolerances(opt);
  const TropicalDiagnostics<R> diag = check_admissibility(prob, tol);
  const auto sols = solve_tropical(prob, tol);

  json jsols = json::array();
  for (const auto& s : sols) {
    json lam = json::array(), rho = json::array();
    for (const R& v : s.lambda) lam.push_back(number_json(field<R>::re_d(v)));
    for (const R& v : s.rho) rho.push_back(number_json(field<R>::re_d(v)));
    jsols.push_back(json{{"branch", s.branch},
                         {"lambda", std::move(lam)},
                         {"rho", std::move(rho)},
                         {"residual", number_json(s.residual_norm)}});
  }
  return json{{"schema", 1},
              {"diagnostics",
               json{{"q", number_json(field<R>::re_d(diag.q))},
                    {"D", number_json(field<R>::re_d(diag.D))},
                    {"cond_w2", diag.cond_w2},
                    {"cond_q", diag.cond_q},
                    {"degenerate", diag.degenerate}}},
              {"solutions", std::move(jsols)}};
}

// --- subtropical ----------------------------------------------------------------

template <class R>
SubtropicalProblem<R> subtropical_problem_from_json(const json& j, const std::string& ptr) {
  expect_fields(j, ptr, {"schema", "m0", "n0", "A", "B"});
  expect_schema_1(j, ptr);
  const int m0 = get_field_int(j, ptr, "m0", 1, 60);
  const int n0 = get_field_int(j, ptr, "n0", 2, 200);
  SubtropicalProblem<R> p;
  p.m0 = m0;
  p.n0 = n0;
  auto parse_table = [&](const char* name) {
    const json& rows = j.at(name);
    const std::string tptr = ptr + "/" + name;
    if (!rows.is_array() || static_cast<int>(rows.size()) != m0 + 1)
      fail(tptr, "expected " + std::to_string(m0 + 1) + " rows");
    TruncatedSeries2<R> out(m0, n0);
    for (int m = 0; m <= m0; ++m) {
      const auto row = real_list<R>(rows[static_cast<std::size_t>(m)], tptr + "/" + std::to_string(m), n0 + 1);
      for (int n = 0; n <= n0; ++n) out.at(m, n) = row[static_cast<std::size_t>(n)];
    }
    return out;
  };
  p.A = parse_table("A");
  p.B = parse_table("B");
  return p;
}

SubtropicalTolerances subtropical_tolerances(const CliOptions& opt) {
  SubtropicalTolerances tol;
  if (opt.tol_degenerate >= 0.0) tol.degenerate = opt.tol_degenerate;
  return tol;
}

template <class R>
json run_subtropical(const json& in, const CliOptions& opt) {
  const SubtropicalProblem<R> prob = subtropical_problem_from_json<R>(in, "");
  const SubtropicalTolerances tol = subtropical_tolerances(opt);
  const CSeriesReport<R> rep = compute_c(prob, tol);
  const auto sols = solve_subtropical(prob, tol);

  json jsols = json::array();
  for (const auto& s : sols) {
    json pcoef = json::array();
    for (const R& v : s.P) pcoef.push_back(number_json(field<R>::re_d(v)));
    jsols.push_back(json{{"branch", s.branch},
                         {"f", series2_json(s.f)},
                         {"g", series2_json(s.g)},
                         {"P", std::move(pcoef)},
                         {"residual", number_json(s.residual_norm)}});
  }
  return json{{"schema", 1},
              {"c_report",
               json{{"c", series1_complex_json(rep.c)},
                    {"c_at_0", number_json(field<R>::re_d(rep.c_at_0))},
                    {"c2", number_json(field<R>::re_d(rep.c2))},
                    {"nonneg_on_grid", rep.nonneg_on_grid}}},
              {"solutions", std::move(jsols)}};
}

// --- fluctuations -----------------------------------------------------------------

struct CsvRequest {
  std::string kind;
  double min = 0.0, max = 0.0;
  int count = 0;
};

CsvRequest csv_request_from_json(const json& j, const std::string& ptr) {
  expect_fields(j, ptr, {"kind", "min", "max", "count"});
  CsvRequest r;
  r.kind = get_field_string(j, ptr, "kind");
  if (r.kind != "x" && r.kind != "y") fail(ptr + "/kind", "expected 'x' or 'y'");
  r.min = get_field_number(j, ptr, "min");
  r.max = get_field_number(j, ptr, "max");
  if (!(r.min < r.max)) fail(ptr + "/min", "expected min < max");
  r.count = get_field_int(j, ptr, "count", 2, 1000000);
  return r;
}

json run_fluctuations(const json& in, const CliOptions& opt, std::string* csv_out) {
  expect_fields(in, "", {"schema", "kernel", "request", "csv"});
  expect_schema_1(in, "");
  const json& jk = in.at("kernel");
  expect_fields(jk, "/kernel", {"A"}, {"kB"});
  const FluctKernel kernel =
      make_fluct_kernel(get_matrix(jk.at("A"), "/kernel/A"), get_optional_number(jk, "/kernel", "kB", opt.kB));

  const std::string request = get_field_string(in, "", "request");
  const CsvRequest grid = csv_request_from_json(in.at("csv"), "/csv");
  const std::string expected_kind = (request == "density_intensive") ? "y" : "x";
  if (request != "density_extensive" && request != "density_intensive" && request != "wavefunction")
    fail("/request", "expected one of 'density_extensive', 'density_intensive', 'wavefunction'");
  if (grid.kind != expected_kind)
    fail("/csv/kind", "expected '" + expected_kind + "' for request '" + request + "'");

  const GaussianWavefunction wf = build_wavefunction(kernel);
  std::string csv = grid.kind + ",value\r\n";
  for (int i = 0; i < grid.count; ++i) {
    const double t = grid.min + (grid.max - grid.min) * static_cast<double>(i) / (grid.count - 1);
    Eigen::VectorXd point = Eigen::VectorXd::Zero(kernel.dim());
    point(0) = t;
    double value = 0.0;
    if (request == "density_extensive")
      value = density_extensive(kernel, point);
    else if (request == "density_intensive")
      value = density_intensive(kernel, point);
    else
      value = std::norm(wf.evaluate(point));
    csv += json(t).dump() + "," + json(value).dump() + "\r\n";
  }
  *csv_out = std::move(csv);

  return json{{"schema", 1},
              {"kind", request},
              {"dim", kernel.dim()},
              {"kB", number_json(kernel.kB)},
              {"h", number_json(kernel.h)},
              {"rows", grid.count}};
}

// --- thermo commands -----------------------------------------------------------------

json run_reduce(const json& in) {
  expect_fields(in, "", {"schema", "model", "C", "released", "start"});
  expect_schema_1(in, "");
  const auto model = parse_model(in.at("model"), "/model");
  ReductionSpec spec;
  spec.C = get_matrix(in.at("C"), "/C");
  const json& rel = in.at("released");
  if (!rel.is_array()) fail("/released", "expected an array of indices");
  for (std::size_t i = 0; i < rel.size(); ++i)
    spec.released.push_back(
        static_cast<int>(get_integer(rel[i], "/released/" + std::to_string(i))));
  const Eigen::VectorXd start = get_vector(in.at("start"), "/start", model->dim());

  const double cond = reduction_condition_number(spec);
  const ThermoPoint out = reduce(*model, spec, make_point(*model, start));
  json je = json::array(), jb = json::array();
  for (int i = 0; i < model->dim(); ++i) {
    je.push_back(number_json(out.E(i)));
    jb.push_back(number_json(out.beta(i)));
  }
  return json{{"schema", 1},
              {"E", std::move(je)},
              {"beta", std::move(jb)},
              {"entropy", number_json(model->eval(out.E))},
              {"condition_number", number_json(cond)}};
}

json run_chemical(const json& in) {
  expect_fields(in, "", {"schema", "units", "N0", "N1", "N2", "K"}, {"U", "V"});
  expect_schema_1(in, "");
  if (get_field_string(in, "", "units") != "model") fail("/units", "expected 'model'");
  ChemicalScenario s;
  s.N0 = get_field_number(in, "", "N0");
  s.N1 = get_field_number(in, "", "N1");
  s.N2 = get_field_number(in, "", "N2");
  s.K = get_field_number(in, "", "K");
  s.U = get_optional_number(in, "", "U", 1.0);
  s.V = get_optional_number(in, "", "V", 1.0);
  return json{{"schema", 1}, {"x", number_json(chemical_shift(s))}};
}

json run_gibbs(const json& in, const CliOptions& opt) {
  expect_fields(in, "", {"schema", "units", "u", "v", "n", "M0", "M1", "eps0"}, {"K", "kB", "c0"});
  expect_schema_1(in, "");
  if (get_field_string(in, "", "units") != "model") fail("/units", "expected 'model'");
  GibbsScenario g;
  g.u = get_field_number(in, "", "u");
  g.v = get_field_number(in, "", "v");
  g.n = get_field_number(in, "", "n");
  g.M0 = get_field_number(in, "", "M0");
  g.M1 = get_field_number(in, "", "M1");
  g.eps0 = get_field_number(in, "", "eps0");
  g.kb = get_optional_number(in, "", "kB", opt.kB);
  g.c0 = get_optional_number(in, "", "c0", 1.0);
  if (in.contains("K")) {
    const double k_const = get_field_number(in, "", "K");
    g.K_of_eps = [k_const](double) { return k_const; };
  }
  const GibbsReport rep = gibbs_report(g);
  return json{{"schema", 1},
              {"eps", number_json(rep.eps)},
              {"regime", rep.regime},
              {"K", number_json(rep.K)},
              {"mixing_entropy", number_json(rep.mixing_entropy)}};
}

// --- verify -----------------------------------------------------------------

template <class R>
json run_verify(const json& in, const CliOptions&) {
  expect_fields(in, "", {"schema", "kind", "problem", "solution"});
  expect_schema_1(in, "");
  const std::string kind = get_field_string(in, "", "kind");
  const json& jp = in.at("problem");
  const json& js = in.at("solution");

  double residual = 0.0;
  if (kind == "tropical") {
    const TropicalProblem<R> prob = tropical_problem_from_json<R>(jp, "/problem");
    expect_fields(js, "/solution", {"lambda", "rho"}, {"branch", "residual"});
    TropicalSolution<R> sol;
    sol.lambda = real_list<R>(js.at("lambda"), "/solution/lambda", prob.n0);
    sol.rho = real_list<R>(js.at("rho"), "/solution/rho", prob.n0);
    residual = verify_tropical(prob, sol);
  } else if (kind == "subtropical") {
    const SubtropicalProblem<R> prob = subtropical_problem_from_json<R>(jp, "/problem");
    expect_fields(js, "/solution", {"f", "g", "P"}, {"branch", "residual"});
    SubtropicalSolution<R> sol;
    sol.f = series2_from_json<R>(js.at("f"), "/solution/f", prob.m0, prob.n0);
    sol.g = series2_from_json<R>(js.at("g"), "/solution/g", prob.m0, prob.n0);
    sol.P = real_list<R>(js.at("P"), "/solution/P", prob.m0 + 1);
    residual = verify_subtropical(prob, sol);
  } else {
    fail("/kind", "expected 'tropical' or 'subtropical'");
  }
  return json{{"schema", 1}, {"kind", kind}, {"residual", number_json(residual)}};
}

// --- error mapping -----------------------------------------------------------------

struct ErrorInfo {
  int exit_code;
  const char* category;
};

ErrorInfo classify(const std::exception& e) {
  if (dynamic_cast<const schema_error*>(&e)) return {3, "schema"};
  if (dynamic_cast<const inconsistent_input_error*>(&e)) return {2, "inconsistent_input"};
  if (dynamic_cast<const no_real_solution_error*>(&e)) return {2, "no_real_solution"};
  if (dynamic_cast<const degenerate_error*>(&e)) return {2, "degenerate"};
  if (dynamic_cast<const infeasible_error*>(&e)) return {2, "infeasible"};
  if (dynamic_cast<const exactness_error*>(&e)) return {2, "exactness"};
  if (dynamic_cast<const truncation_error*>(&e)) return {2, "truncation"};
  if (dynamic_cast<const singular_error*>(&e)) return {1, "singular"};
  if (dynamic_cast<const convergence_error*>(&e)) return {1, "convergence"};
  return {1, "internal"};
}

std::string dump_document(const json& j) { return j.dump(2) + "\n"; }

}  // namespace

CommandResult run_command(const std::string& command, const std::string& input_json,
                          const CliOptions& options) {
  CommandResult result;
  try {
    if (options.backend != "float" && options.backend != "exact")
      throw schema_error("backend: expected 'float' or 'exact', got '" + options.backend + "'");
    if (!(options.kB > 0.0)) throw schema_error("kB: must be positive");
    const bool exact = options.backend == "exact";

    json in;
    try {
      in = json::parse(input_json);
    } catch (const json::parse_error& e) {
      throw schema_error(std::string("input is not valid JSON: ") + e.what());
    }
    if (!in.is_object()) throw schema_error("/: expected a JSON object");
    if (!in.contains("schema")) throw schema_error("/schema: missing required field");

    json out;
    if (command == "tropical") {
      out = exact ? run_tropical<Rational>(in, options) : run_tropical<double>(in, options);
    } else if (command == "subtropical") {
      out = exact ? run_subtropical<Rational>(in, options) : run_subtropical<double>(in, options);
    } else if (command == "fluctuations") {
      out = run_fluctuations(in, options, &result.csv);
    } else if (command == "reduce") {
      out = run_reduce(in);
    } else if (command == "chemical") {
      out = run_chemical(in);
    } else if (command == "gibbs") {
      out = run_gibbs(in, options);
    } else if (command == "verify") {
      out = exact ? run_verify<Rational>(in, options) : run_verify<double>(in, options);
    } else {
      throw schema_error("unknown command '" + command + "'");
    }
    result.exit_code = 0;
    result.output_json = dump_document(out);
  } catch (const std::exception& e) {
    const ErrorInfo info = classify(e);
    result.exit_code = info.exit_code;
    result.csv.clear();
    result.output_json =
        dump_document(json{{"schema", 1}, {"error", json{{"category", info.category}, {"message", e.what()}}}});
  }
  return result;
}

std::shared_ptr<const EntropyModel> parse_model_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw schema_error(std::string("model is not valid JSON: ") + e.what());
  }
  return parse_model(j, "");
}

}  // namespace thermopauli::json_io
