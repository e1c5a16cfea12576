#ifndef CURVOPS_IO_HPP
#define CURVOPS_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "curvops/metric.hpp"
#include "curvops/properties.hpp"
#include "curvops/structure.hpp"

// Tensor and metric file formats (JSON), canonical serialization with
// bit-exact round-trips, and machine-readable report fragments.

namespace curvops {

using Json = nlohmann::json;

/// Tensor file: {"dim": m, "gram": [m*m rational strings, row-major],
/// "components": [{"i","j","k","l","value"}...], "mode": "generate"
/// (default) | "verbatim"}. Throws ParseError / SymmetryError.
CurvatureTensor parse_tensor_file(const std::string& text);

/// Canonical serialization: one record per nonzero symmetry orbit, keyed
/// by its lexicographically least representative, sorted; generate mode.
/// parse(serialize(A)) == A and serialize is a fixed point of
/// parse-then-serialize.
std::string serialize_tensor(const CurvatureTensor& a);

struct MetricFileData {
  std::optional<Index> p;  // set for psi-form files
  std::vector<MultivariatePolynomial> psi;  // p x p grid in p variables
  std::optional<PolynomialMetric> metric;

  const PolynomialMetric& require_metric() const;
};

/// Metric file: either {"p": p, "psi": [{"i","j","poly": [{"exponents":
/// [p ints], "coeff": "a/b"}...]}...]} or {"dim": n, "gram_polys":
/// [{"i","j","poly": [{"exponents": [n ints], "coeff"}...]}...]}.
MetricFileData parse_metric_file(const std::string& text);

/// FNV-1a 64-bit digest, hex encoded; used as the content hash of parsed
/// canonical input.
std::string fnv1a64_hex(const std::string& bytes);

Json to_json(const VectorXq& v);
Json to_json(const MatrixXq& m);
Json to_json(const PropertyVerdict& verdict);
Json to_json(const AuditResult& audit);
Json to_json(const DecompositionResult& result);
Json to_json(const WitnessSet& ws);

/// One-line human rendering of a verdict with its witness, if any.
std::string render_verdict(const PropertyVerdict& verdict);

std::string render_vector(const VectorXq& v);

/// Nonzero components of a tensor as canonical orbit representatives,
/// rendered "A(i,j,k,l) = value" one per line.
std::string render_nonzero_orbits(const CurvatureTensor& a);

}  // namespace curvops

#endif
