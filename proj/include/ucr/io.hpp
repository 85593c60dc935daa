#pragma once

// JSON schemas for every type that crosses the CLI boundary.
//   distributions   [0.5, 0.3, 0.2]
//   real matrices   [[row], [row], ...]
//   permutations    [1, 2, 0]   (0-based images)
//   complex numbers [re, im]    (a bare number is read as real)
//   bases           {"vectors": [[[re, im], ...], ...]}
//   POVMs           {"effects": [row-major complex matrix, ...]}

#include <string>

#include <json.hpp>

#include "ucr/doublystoch.hpp"
#include "ucr/joint.hpp"
#include "ucr/measures.hpp"
#include "ucr/quantum.hpp"
#include "ucr/universal.hpp"

namespace ucr::io {

using nlohmann::json;

/// Parses inline JSON when the text starts with '[' or '{', otherwise reads
/// the named file. Throws ParseError.
json load_json(const std::string& inline_or_path);

std::vector<double> real_vector_from_json(const json& j);
ProbVec prob_from_json(const json& j, bool normalize = false);
Eigen::MatrixXd real_matrix_from_json(const json& j);
Permutation permutation_from_json(const json& j);
std::vector<Permutation> generators_from_json(const json& j);
std::complex<double> complex_from_json(const json& j);
CVector cvector_from_json(const json& j);
CMatrix cmatrix_from_json(const json& j);
Basis basis_from_json(const json& j);
Povm povm_from_json(const json& j);
PureState pure_state_from_json(const json& j);
/// Accepts either a state vector (array of complex) or a density matrix (array of rows).
DensityMatrix density_from_json(const json& j);
MeasureDescriptor measure_from_json(const json& j);
SchurFunction schur_fn_from_json(const json& j);
JointMeasureDescriptor joint_from_json(const json& j);

json to_json(std::span<const double> v);
json to_json(const ProbVec& p);
json to_json(const Eigen::MatrixXd& m);
json to_json(std::complex<double> z);
json to_json(const CVector& v);
json to_json(const CMatrix& m);
json to_json(const Basis& b);
json to_json(const Povm& m);
json to_json(const MeasureDescriptor& m);
json to_json(const SchurFunction& f);
json to_json(const JointMeasureDescriptor& j);
json to_json(const MonotonicityReport& r);
json to_json(const URBoundResult& r);
json to_json(const UniversalVector& u);
json to_json(const UniversalCheck& c);
json to_json(const TrivialPair& t);
json to_json(const EmpiricalDist& e);

}  // namespace ucr::io
