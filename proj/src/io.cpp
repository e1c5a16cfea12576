#include "curvops/io.hpp"

#include <sstream>

namespace curvops {

namespace {

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Index get_index(const Json& j, const char* field, Index lo, Index hi) {
  if (!j.contains(field) || !j[field].is_number_integer())
    throw ParseError(std::string("missing or non-integer field '") + field +
                     "'");
  const long v = j[field].get<long>();
  if (v < lo || v > hi)
    throw ParseError(std::string("field '") + field + "' out of range");
  return static_cast<Index>(v);
}

Rational get_rational(const Json& j, const char* field) {
  if (!j.contains(field) || !j[field].is_string())
    throw ParseError(std::string("missing or non-string rational field '") +
                     field + "'");
  return parse_rational(j[field].get<std::string>());
}

}  // namespace

CurvatureTensor parse_tensor_file(const std::string& text) {
  const Json j = parse_json(text);
  const Index dim = get_index(j, "dim", 1, 16);
  if (!j.contains("gram") || !j["gram"].is_array() ||
      j["gram"].size() != static_cast<size_t>(dim * dim))
    throw ParseError("field 'gram' must hold dim*dim rational strings");
  MatrixXq gram(dim, dim);
  for (Index i = 0; i < dim; ++i)
    for (Index k = 0; k < dim; ++k) {
      const Json& cell = j["gram"][static_cast<size_t>(i * dim + k)];
      if (!cell.is_string())
        throw ParseError("gram entries must be rational strings");
      gram(i, k) = parse_rational(cell.get<std::string>());
    }
  AssemblyMode mode = AssemblyMode::kGenerate;
  if (j.contains("mode")) {
    const std::string m = j["mode"].get<std::string>();
    if (m == "verbatim")
      mode = AssemblyMode::kVerbatim;
    else if (m != "generate")
      throw ParseError("mode must be 'generate' or 'verbatim'");
  }
  std::vector<ComponentEntry> entries;
  if (j.contains("components")) {
    if (!j["components"].is_array())
      throw ParseError("field 'components' must be a list");
    for (const Json& rec : j["components"])
      entries.push_back({get_index(rec, "i", 0, dim - 1),
                         get_index(rec, "j", 0, dim - 1),
                         get_index(rec, "k", 0, dim - 1),
                         get_index(rec, "l", 0, dim - 1),
                         get_rational(rec, "value")});
  }
  return tensor_from_components(InnerProductSpace(std::move(gram)), entries,
                                mode);
}

std::string serialize_tensor(const CurvatureTensor& a) {
  const Index m = a.dim();
  Json j;
  j["dim"] = m;
  Json gram = Json::array();
  for (Index i = 0; i < m; ++i)
    for (Index k = 0; k < m; ++k) gram.push_back(to_string(a.space().gram()(i, k)));
  j["gram"] = std::move(gram);
  j["mode"] = "generate";
  Json comps = Json::array();
  for (Index i = 0; i < m; ++i)
    for (Index jj = 0; jj < m; ++jj)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l) {
          const Rational& v = a.at(i, jj, k, l);
          if (is_zero(v)) continue;
          const CanonicalIndex canon = canonical_orbit_index(i, jj, k, l);
          if (canon.indices != std::array<Index, 4>{i, jj, k, l}) continue;
          Json rec;
          rec["i"] = i;
          rec["j"] = jj;
          rec["k"] = k;
          rec["l"] = l;
          rec["value"] = to_string(v);
          comps.push_back(std::move(rec));
        }
  j["components"] = std::move(comps);
  return j.dump(2) + "\n";
}

const PolynomialMetric& MetricFileData::require_metric() const {
  if (!metric) throw ParseError("metric file: no metric present");
  return *metric;
}

namespace {

MultivariatePolynomial parse_poly(const Json& jpoly, Index nvars) {
  if (!jpoly.is_array()) throw ParseError("'poly' must be a list of terms");
  MultivariatePolynomial poly(nvars);
  for (const Json& term : jpoly) {
    if (!term.contains("exponents") || !term["exponents"].is_array() ||
        term["exponents"].size() != static_cast<size_t>(nvars))
      throw ParseError("term 'exponents' must list one exponent per variable");
    MultivariatePolynomial::Exponents exps;
    for (const Json& e : term["exponents"]) {
      if (!e.is_number_integer() || e.get<long>() < 0)
        throw ParseError("exponents must be non-negative integers");
      exps.push_back(static_cast<unsigned>(e.get<long>()));
    }
    poly.add_term(exps, get_rational(term, "coeff"));
  }
  return poly;
}

}  // namespace

MetricFileData parse_metric_file(const std::string& text) {
  const Json j = parse_json(text);
  MetricFileData data;
  if (j.contains("p")) {
    const Index p = get_index(j, "p", 2, 8);
    data.p = p;
    data.psi.assign(static_cast<size_t>(p * p), MultivariatePolynomial(p));
    std::vector<char> seen(static_cast<size_t>(p * p), 0);
    if (j.contains("psi")) {
      if (!j["psi"].is_array()) throw ParseError("'psi' must be a list");
      for (const Json& rec : j["psi"]) {
        const Index i = get_index(rec, "i", 0, p - 1);
        const Index jj = get_index(rec, "j", 0, p - 1);
        if (!rec.contains("poly")) throw ParseError("psi record needs 'poly'");
        MultivariatePolynomial poly = parse_poly(rec["poly"], p);
        for (Index a : {i * p + jj, jj * p + i}) {
          const size_t idx = static_cast<size_t>(a);
          if (seen[idx] && !(data.psi[idx] == poly))
            throw ParseError("psi entries conflict across (i,j) and (j,i)");
          data.psi[idx] = poly;
          seen[idx] = 1;
        }
      }
    }
    data.metric = psi_metric(p, data.psi);
    return data;
  }
  if (j.contains("dim")) {
    const Index dim = get_index(j, "dim", 1, 16);
    std::vector<MultivariatePolynomial> grid(
        static_cast<size_t>(dim * dim), MultivariatePolynomial(dim));
    if (!j.contains("gram_polys") || !j["gram_polys"].is_array())
      throw ParseError("general metric file needs 'gram_polys'");
    for (const Json& rec : j["gram_polys"]) {
      const Index i = get_index(rec, "i", 0, dim - 1);
      const Index jj = get_index(rec, "j", 0, dim - 1);
      if (!rec.contains("poly")) throw ParseError("gram record needs 'poly'");
      MultivariatePolynomial poly = parse_poly(rec["poly"], dim);
      grid[static_cast<size_t>(i * dim + jj)] = poly;
      grid[static_cast<size_t>(jj * dim + i)] = std::move(poly);
    }
    data.metric = PolynomialMetric(dim, std::move(grid));
    return data;
  }
  throw ParseError("metric file needs either 'p' (psi form) or 'dim'");
}

std::string fnv1a64_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex;
  os.width(16);
  os.fill('0');
  os << h;
  return os.str();
}

Json to_json(const VectorXq& v) {
  Json out = Json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(to_string(v(i)));
  return out;
}

Json to_json(const MatrixXq& m) {
  Json out = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(to_string(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Json to_json(const PropertyVerdict& verdict) {
  Json j;
  j["property"] = verdict.property;
  j["verdict"] = verdict.holds ? "holds" : "fails";
  j["identities_checked"] = verdict.identities_checked;
  if (verdict.witness) {
    Json w;
    w["kind"] = verdict.witness->kind;
    if (verdict.witness->indices[0] >= 0) {
      Json idx = Json::array();
      for (Index i : verdict.witness->indices) idx.push_back(i);
      w["indices"] = std::move(idx);
    }
    w["entry"] = Json::array({verdict.witness->row, verdict.witness->col});
    w["value"] = to_string(verdict.witness->value);
    if (!verdict.witness->vectors.empty()) {
      Json vecs = Json::array();
      for (const VectorXq& v : verdict.witness->vectors)
        vecs.push_back(to_json(v));
      w["vectors"] = std::move(vecs);
    }
    j["witness"] = std::move(w);
  }
  return j;
}

Json to_json(const AuditResult& audit) {
  Json j;
  Json verdicts = Json::array();
  for (const PropertyVerdict* v : audit.ordered())
    verdicts.push_back(to_json(*v));
  j["verdicts"] = std::move(verdicts);
  j["constant_sectional_curvature"] =
      audit.constant_curvature ? Json(to_string(*audit.constant_curvature))
                               : Json(nullptr);
  return j;
}

Json to_json(const DecompositionResult& result) {
  Json j;
  j["dim_w"] = result.w_basis.cols();
  j["dim_t"] = result.t_basis.cols();
  j["w_basis"] = to_json(result.w_basis);
  j["wbar_basis"] = to_json(result.wbar_basis);
  j["t_basis"] = to_json(result.t_basis);
  j["certificate"] = to_json(result.certificate);
  Json aw = Json::array();
  const Index k = result.a_w.dim();
  for (Index i = 0; i < k; ++i)
    for (Index jj = 0; jj < k; ++jj)
      for (Index kk = 0; kk < k; ++kk)
        for (Index l = 0; l < k; ++l) {
          const Rational& v = result.a_w.at(i, jj, kk, l);
          if (is_zero(v)) continue;
          Json rec;
          rec["i"] = i;
          rec["j"] = jj;
          rec["k"] = kk;
          rec["l"] = l;
          rec["value"] = to_string(v);
          aw.push_back(std::move(rec));
        }
  j["a_w_components"] = std::move(aw);
  return j;
}

Json to_json(const WitnessSet& ws) {
  Json j;
  j["x"] = to_json(ws.x);
  j["y"] = to_json(ws.y);
  j["w"] = to_json(ws.w);
  j["pairing"] = to_string(ws.pairing);
  const auto row = [](const std::array<VectorXq, 4>& r) {
    Json out = Json::array();
    for (const VectorXq& v : r) out.push_back(to_json(v));
    return out;
  };
  j["e_row"] = row(ws.e);
  j["f_row"] = row(ws.f);
  j["g_row"] = row(ws.g);
  j["independence_rank"] = ws.independence_rank;
  return j;
}

std::string render_vector(const VectorXq& v) {
  std::ostringstream os;
  os << "(";
  for (Index i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << to_string(v(i));
  }
  os << ")";
  return os.str();
}

std::string render_verdict(const PropertyVerdict& verdict) {
  std::ostringstream os;
  os << verdict.property << ": " << (verdict.holds ? "holds" : "fails");
  os << "  [" << verdict.identities_checked << " identities]";
  if (verdict.witness) {
    const FailureWitness& w = *verdict.witness;
    os << "\n  witness (" << w.kind << "): ";
    if (w.indices[0] >= 0)
      os << "basis tuple (" << w.indices[0] << "," << w.indices[1] << ","
         << w.indices[2] << "," << w.indices[3] << "), ";
    if (!w.vectors.empty()) {
      os << "vectors ";
      for (size_t i = 0; i < w.vectors.size(); ++i) {
        if (i) os << ", ";
        os << render_vector(w.vectors[i]);
      }
      os << ", ";
    }
    os << "entry (" << w.row << "," << w.col << ") = " << to_string(w.value);
  }
  return os.str();
}

std::string render_nonzero_orbits(const CurvatureTensor& a) {
  std::ostringstream os;
  const Index m = a.dim();
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < m; ++j)
      for (Index k = 0; k < m; ++k)
        for (Index l = 0; l < m; ++l) {
          const Rational& v = a.at(i, j, k, l);
          if (is_zero(v)) continue;
          if (canonical_orbit_index(i, j, k, l).indices !=
              std::array<Index, 4>{i, j, k, l})
            continue;
          os << "A(" << i << "," << j << "," << k << "," << l
             << ") = " << to_string(v) << "\n";
        }
  return os.str();
}

}  // namespace curvops
