// Command-line harness: build named examples, check properties of tensor
// files, decompose 2-step nilpotent tensors, extract dimension-bound
// witnesses, and evaluate curvature of polynomial metrics at rational
// points. Exit codes: 0 success, 1 verdict mismatch or violated
// precondition, 2 input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "curvops/constructions.hpp"
#include "curvops/io.hpp"
#include "curvops/metric.hpp"
#include "curvops/properties.hpp"
#include "curvops/structure.hpp"

namespace {

using namespace curvops;

struct GlobalOptions {
  std::uint64_t seed = 0;
  std::string format = "text";
  bool recheck = false;
};

class Report {
 public:
  Report(std::string command, const GlobalOptions& opts)
      : command_(std::move(command)), opts_(opts), start_(clock::now()) {
    body_["command"] = command_;
    body_["seed"] = opts.seed;
    body_["results"] = Json::object();
  }

  void set_input_digest(const std::string& canonical_input) {
    body_["input_digest"] = fnv1a64_hex(canonical_input);
  }

  void put(const std::string& key, Json value) {
    body_["results"][key] = std::move(value);
  }

  void text(const std::string& line) { text_lines_.push_back(line); }

  void emit(std::ostream& os) const {
    const double elapsed =
        std::chrono::duration<double>(clock::now() - start_).count();
    if (opts_.format == "machine") {
      Json out = body_;
      out["elapsed_seconds"] = elapsed;  // excluded from reproducibility
      os << out.dump(2) << "\n";
      return;
    }
    os << "command: " << command_ << "\n";
    if (body_.contains("input_digest"))
      os << "input digest: " << body_["input_digest"].get<std::string>()
         << "\n";
    for (const std::string& line : text_lines_) os << line << "\n";
    os << "elapsed: " << elapsed << " s\n";
  }

 private:
  using clock = std::chrono::steady_clock;
  std::string command_;
  GlobalOptions opts_;
  Json body_;
  std::vector<std::string> text_lines_;
  clock::time_point start_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

int recheck_failures(const CurvatureTensor& a, const AuditResult& audit,
                     Report& report) {
  for (const PropertyVerdict* v : audit.ordered()) {
    if (v->holds) continue;
    if (!recheck_witness(a, *v)) {
      report.text("RECHECK FAILED for " + v->property);
      return 1;
    }
    report.text("recheck ok: " + v->property + " witness re-evaluates");
  }
  return 0;
}

void report_audit(const AuditResult& audit, Report& report) {
  for (const PropertyVerdict* v : audit.ordered())
    report.text(render_verdict(*v));
  report.text(std::string("constant-sectional-curvature: ") +
              (audit.constant_curvature
                   ? ("c = " + to_string(*audit.constant_curvature))
                   : std::string("none")));
  report.put("audit", to_json(audit));
}

/// Expected verdict profile of a named example, checked by `verify`.
struct Expectation {
  std::optional<bool> jacobi_tsankov, two_step_jacobi, square_zero,
      orth_jacobi_tsankov, skew_tsankov, two_step_skew;
  std::optional<Signature> signature;
  std::optional<Rational> curvature_constant;
  bool expect_curvature_constant = false;
};

bool all_equal(const std::vector<Rational>& v) {
  for (const Rational& x : v)
    if (x != v.front()) return false;
  return true;
}

Expectation expectation_for(const std::string& id) {
  Expectation e;
  if (id == "lemma-3.2") {
    e.jacobi_tsankov = true;
    e.two_step_jacobi = false;
    e.square_zero = true;
    e.orth_jacobi_tsankov = true;
    e.two_step_skew = false;
    e.signature = Signature{8, 6, 0};
    return e;
  }
  if (id == "lemma-2.2") {
    e.jacobi_tsankov = false;
    e.two_step_jacobi = false;
    e.square_zero = true;
    e.two_step_skew = false;
    e.signature = Signature{4, 4, 0};
    return e;
  }
  if (id.rfind("defn-1.8:", 0) == 0) {
    e.jacobi_tsankov = true;
    e.two_step_jacobi = true;
    e.square_zero = true;
    e.orth_jacobi_tsankov = true;
    e.skew_tsankov = true;
    e.two_step_skew = true;
    return e;
  }
  if (id.rfind("const-curv:", 0) == 0) {
    const std::string cpart = id.substr(std::string("const-curv:").size());
    const Rational c = parse_rational(cpart.substr(2, cpart.find(':') - 2));
    e.curvature_constant = c;
    e.expect_curvature_constant = true;
    e.orth_jacobi_tsankov = true;
    e.jacobi_tsankov = is_zero(c);
    return e;
  }
  if (id.rfind("gauss:spectrum=", 0) == 0) {
    std::vector<Rational> spectrum;
    std::stringstream ss(id.substr(std::string("gauss:spectrum=").size()));
    std::string item;
    while (std::getline(ss, item, ',')) spectrum.push_back(parse_rational(item));
    Index nonzero = 0;
    for (const Rational& l : spectrum)
      if (!is_zero(l)) ++nonzero;
    e.orth_jacobi_tsankov = all_equal(spectrum) || nonzero == 1;
    return e;
  }
  throw ParseError("no expected profile for id '" + id + "'");
}

int check_expectation(const CurvatureTensor& a, const AuditResult& audit,
                      const Expectation& e, Report& report) {
  int failures = 0;
  const auto expect = [&](const std::optional<bool>& want,
                          const PropertyVerdict& got) {
    if (!want) return;
    if (got.holds != *want) {
      report.text("MISMATCH: expected " + got.property + " to " +
                  (*want ? "hold" : "fail"));
      ++failures;
    }
  };
  expect(e.jacobi_tsankov, audit.jacobi_tsankov);
  expect(e.two_step_jacobi, audit.two_step_jacobi);
  expect(e.square_zero, audit.square_zero);
  expect(e.orth_jacobi_tsankov, audit.orthogonal_jacobi_tsankov);
  expect(e.skew_tsankov, audit.skew_tsankov);
  expect(e.two_step_skew, audit.two_step_skew);
  if (e.signature && !(a.space().signature() == *e.signature)) {
    report.text("MISMATCH: wrong signature");
    ++failures;
  }
  if (e.expect_curvature_constant &&
      (!audit.constant_curvature ||
       *audit.constant_curvature != *e.curvature_constant)) {
    report.text("MISMATCH: constant sectional curvature");
    ++failures;
  }
  return failures;
}

int cmd_verify(const std::string& id, const GlobalOptions& opts) {
  Report report("verify " + id, opts);
  const CurvatureTensor a = example_by_id(id);
  report.set_input_digest(serialize_tensor(a));

  const SymmetryReport symm = validate_symmetries(a);
  report.text("symmetries: " + symm.describe());
  report.put("symmetries_ok", symm.ok);
  int failures = symm.ok ? 0 : 1;

  const Signature sig = a.space().signature();
  report.text("signature: (" + std::to_string(sig.negative) + "," +
              std::to_string(sig.positive) + ")");
  report.put("signature", Json::array({sig.negative, sig.positive, sig.zero}));

  const AuditResult audit = implication_audit(a);
  report_audit(audit, report);
  failures += check_expectation(a, audit, expectation_for(id), report);

  if (id == "lemma-2.2") {
    // the deterministic scan from the noncommutativity proof
    const NoncommutingTriple triple = lemma22_noncommuting_triple();
    const MatrixXq j1 = jacobi(a, triple.x1);
    const MatrixXq j2 = jacobi(a, triple.x2);
    const VectorXq forward = j1 * (j2 * triple.y);
    const VectorXq backward = j2 * (j1 * triple.y);
    const bool ok = !is_zero_matrix(MatrixXq(forward)) &&
                    is_zero_matrix(MatrixXq(backward));
    report.text(std::string("noncommuting triple: J(x1)J(x2)y ") +
                (ok ? "!= 0 = J(x2)J(x1)y" : "check FAILED"));
    report.text("  x1 = " + render_vector(triple.x1) +
                ", x2 = " + render_vector(triple.x2) +
                ", y = " + render_vector(triple.y));
    report.put("noncommuting_triple_ok", ok);
    if (!ok) ++failures;
  }
  if (id.rfind("defn-1.8:", 0) == 0) {
    const DecompositionResult dec = decompose_2step(a);
    const bool ok = verify_decomposition(a, dec);
    report.text("decomposition: dim W = " + std::to_string(dec.w_basis.cols()) +
                ", dim T = " + std::to_string(dec.t_basis.cols()) +
                (ok ? ", round-trip verified" : ", ROUND-TRIP FAILED"));
    report.put("decomposition", to_json(dec));
    if (!ok) ++failures;
  }
  if (opts.recheck) failures += recheck_failures(a, audit, report);

  report.text(failures == 0 ? "verify: OK" : "verify: MISMATCH");
  report.emit(std::cout);
  return failures == 0 ? 0 : 1;
}

/// Runs the requested named properties (or the full audit when none are
/// named) and reports them. Returns the number of recheck failures.
int run_properties_on_tensor(const CurvatureTensor& a,
                             const std::vector<std::string>& properties,
                             const GlobalOptions& opts, Report& report) {
  int failures = 0;
  if (properties.empty()) {
    const AuditResult audit = implication_audit(a);
    report_audit(audit, report);
    if (opts.recheck) failures += recheck_failures(a, audit, report);
    return failures;
  }
  const PolarizedJacobiTable jtable(a);
  for (const std::string& p : properties) {
    PropertyVerdict v;
    if (p == "jacobi-tsankov")
      v = is_jacobi_tsankov(a, jtable);
    else if (p == "2-step-jacobi")
      v = is_2step_jacobi_nilpotent(a, jtable);
    else if (p == "jacobi-square-zero")
      v = jacobi_square_zero(a, jtable);
    else if (p == "orth-jacobi-tsankov")
      v = is_orthogonally_jacobi_tsankov(a, jtable);
    else if (p == "skew-tsankov")
      v = is_skew_tsankov(a);
    else if (p == "2-step-skew")
      v = is_2step_skew_nilpotent(a);
    else
      throw ParseError("unknown property '" + p + "'");
    report.text(render_verdict(v));
    report.put(p, to_json(v));
    if (opts.recheck && !v.holds && !recheck_witness(a, v)) {
      report.text("RECHECK FAILED for " + v.property);
      ++failures;
    }
  }
  return failures;
}

int cmd_check(const std::string& path, const std::vector<std::string>& properties,
              const GlobalOptions& opts) {
  Report report("check " + path, opts);
  const CurvatureTensor a = parse_tensor_file(read_file(path));
  report.set_input_digest(serialize_tensor(a));
  const int failures = run_properties_on_tensor(a, properties, opts, report);
  report.emit(std::cout);
  return failures == 0 ? 0 : 1;
}

int cmd_decompose(const std::string& path, const GlobalOptions& opts) {
  Report report("decompose " + path, opts);
  const CurvatureTensor a = parse_tensor_file(read_file(path));
  report.set_input_digest(serialize_tensor(a));
  DecompositionResult dec;
  try {
    dec = decompose_2step(a);
  } catch (const PreconditionError& e) {
    report.text(std::string("precondition failed: ") + e.what());
    report.emit(std::cout);
    return 1;
  }
  const bool ok = verify_decomposition(a, dec);
  report.text("dim W = " + std::to_string(dec.w_basis.cols()));
  report.text("dim T = " + std::to_string(dec.t_basis.cols()));
  for (Index i = 0; i < dec.w_basis.cols(); ++i)
    report.text("w_" + std::to_string(i + 1) + " = " +
                render_vector(dec.w_basis.col(i)));
  for (Index i = 0; i < dec.wbar_basis.cols(); ++i)
    report.text("wbar_" + std::to_string(i + 1) + " = " +
                render_vector(dec.wbar_basis.col(i)));
  for (Index i = 0; i < dec.t_basis.cols(); ++i)
    report.text("t_" + std::to_string(i + 1) + " = " +
                render_vector(dec.t_basis.col(i)));
  report.text(ok ? "invariants re-verified: ok"
                 : "invariants re-verified: FAILED");
  report.put("decomposition", to_json(dec));
  report.put("verified", ok);
  report.emit(std::cout);
  return ok ? 0 : 1;
}

int cmd_witness(const std::string& path, const GlobalOptions& opts) {
  Report report("witness " + path, opts);
  const CurvatureTensor a = parse_tensor_file(read_file(path));
  report.set_input_digest(serialize_tensor(a));
  WitnessResult result;
  try {
    result = lemma31_witness(a);
  } catch (const PreconditionError& e) {
    report.text(std::string("precondition failed: ") + e.what());
    report.emit(std::cout);
    return 1;
  }
  switch (result.outcome) {
    case WitnessOutcome::kNoneTwoStep:
      report.text("none (2-step nilpotent)");
      report.put("witness", Json(nullptr));
      break;
    case WitnessOutcome::kSearchExhausted:
      report.text("search exhausted");
      report.put("witness", Json("search-exhausted"));
      break;
    case WitnessOutcome::kFound: {
      const WitnessSet& ws = *result.witness;
      report.text("pairing <J(x)J(y)w, w> = " + to_string(ws.pairing));
      report.text("x = " + render_vector(ws.x));
      report.text("y = " + render_vector(ws.y));
      report.text("w = " + render_vector(ws.w));
      const char* names[4] = {"2", "3", "4", "5"};
      for (int i = 0; i < 4; ++i)
        report.text(std::string("e") + names[i] + " = " +
                    render_vector(ws.e[static_cast<size_t>(i)]));
      for (int i = 0; i < 4; ++i)
        report.text(std::string("f") + names[i] + " = " +
                    render_vector(ws.f[static_cast<size_t>(i)]));
      for (int i = 0; i < 4; ++i)
        report.text(std::string("g") + names[i] + " = " +
                    render_vector(ws.g[static_cast<size_t>(i)]));
      report.text("independent vectors: " +
                  std::to_string(ws.independence_rank));
      report.put("witness", to_json(ws));
      break;
    }
  }
  report.emit(std::cout);
  return 0;
}

int cmd_curvature(const std::string& path, const std::string& point_str,
                  std::vector<std::string> properties,
                  const GlobalOptions& opts) {
  Report report("curvature " + path + " at " + point_str, opts);
  const MetricFileData data = parse_metric_file(read_file(path));
  const PolynomialMetric& metric = data.require_metric();
  std::vector<Rational> coords;
  {
    std::stringstream ss(point_str);
    std::string item;
    while (std::getline(ss, item, ',')) coords.push_back(parse_rational(item));
  }
  if (static_cast<Index>(coords.size()) != metric.dim())
    throw ParseError("point dimension mismatch: metric has dim " +
                     std::to_string(metric.dim()));
  VectorXq point(metric.dim());
  for (Index i = 0; i < metric.dim(); ++i)
    point(i) = coords[static_cast<size_t>(i)];

  const CurvatureTensor a = curvature_at(metric, point);
  report.set_input_digest(serialize_tensor(a));
  const Signature sig = a.space().signature();
  report.text("signature at point: (" + std::to_string(sig.negative) + "," +
              std::to_string(sig.positive) + ")");
  const std::string orbits = render_nonzero_orbits(a);
  report.text(orbits.empty() ? "curvature: zero tensor"
                             : "nonzero curvature orbits:\n" + orbits);
  const int failures = run_properties_on_tensor(a, properties, opts, report);
  report.emit(std::cout);
  return failures == 0 ? 0 : 1;
}

int cmd_export(const std::string& id, const std::string& out_path,
               const GlobalOptions& opts) {
  Report report("export " + id, opts);
  const CurvatureTensor a = example_by_id(id);
  const std::string serialized = serialize_tensor(a);
  report.set_input_digest(serialized);
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ParseError("cannot write file '" + out_path + "'");
  out << serialized;
  out.close();
  if (!out) throw ParseError("write failure on '" + out_path + "'");
  report.text("wrote " + out_path + " (" +
              std::to_string(serialized.size()) + " bytes)");
  report.emit(std::cout);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "curvops: exact verification of curvature-operator commutativity "
      "and nilpotency conditions on pseudo-Euclidean spaces"};
  app.require_subcommand(1);
  GlobalOptions opts;
  app.add_option("--seed", opts.seed,
                 "seed for randomized auxiliary searches (all shipped "
                 "commands are deterministic; recorded in the report)");
  app.add_option("--format", opts.format, "report format")
      ->check(CLI::IsMember({"text", "machine"}));
  app.add_flag("--recheck", opts.recheck,
               "re-evaluate every printed witness from scratch");

  std::string id, path, out_path, point;
  std::vector<std::string> properties;

  CLI::App* verify = app.add_subcommand(
      "verify", "build a named example and check its expected profile");
  verify->add_option("id", id, "example id")->required();

  CLI::App* check =
      app.add_subcommand("check", "run property checkers on a tensor file");
  check->add_option("file", path, "tensor file")->required();
  check->add_option("--property", properties,
                    "property name (repeatable); default: full audit");

  CLI::App* decompose = app.add_subcommand(
      "decompose", "split a 2-step Jacobi nilpotent tensor file");
  decompose->add_option("file", path, "tensor file")->required();

  CLI::App* witness = app.add_subcommand(
      "witness", "extract the 14-vector witness set from a tensor file");
  witness->add_option("file", path, "tensor file")->required();

  CLI::App* curvature = app.add_subcommand(
      "curvature", "evaluate metric curvature at a rational point");
  curvature->add_option("file", path, "metric file")->required();
  curvature->add_option("--point", point, "comma-separated rational point")
      ->required();
  curvature->add_option("--property", properties,
                        "property name (repeatable); default: full audit");

  CLI::App* do_export =
      app.add_subcommand("export", "serialize a named example to a file");
  do_export->add_option("id", id, "example id")->required();
  do_export->add_option("out", out_path, "output file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (verify->parsed()) return cmd_verify(id, opts);
    if (check->parsed()) return cmd_check(path, properties, opts);
    if (decompose->parsed()) return cmd_decompose(path, opts);
    if (witness->parsed()) return cmd_witness(path, opts);
    if (curvature->parsed()) return cmd_curvature(path, point, properties, opts);
    if (do_export->parsed()) return cmd_export(id, out_path, opts);
  } catch (const ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const SymmetryError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const PreconditionError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
