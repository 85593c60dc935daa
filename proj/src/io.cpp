#include "ucr/io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "ucr/error.hpp"

namespace ucr::io {

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(Errc::parse_error, what); }

void expect_array(const json& j, const char* what) {
  if (!j.is_array()) parse_fail(std::string(what) + " must be a JSON array");
}

double number_from_json(const json& j, const char* what) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "Infinity" || s == "+inf") return std::numeric_limits<double>::infinity();
  }
  parse_fail(std::string(what) + " must be a number");
}

json number_to_json(double x) {
  if (std::isinf(x)) return x > 0 ? json("inf") : json("-inf");
  return x;
}

}  // namespace

json load_json(const std::string& inline_or_path) {
  const auto first = inline_or_path.find_first_not_of(" \t\r\n");
  try {
    if (first != std::string::npos && (inline_or_path[first] == '[' || inline_or_path[first] == '{'))
      return json::parse(inline_or_path);
    std::ifstream in(inline_or_path);
    if (!in) parse_fail("cannot open '" + inline_or_path + "'");
    return json::parse(in);
  } catch (const json::exception& e) {
    parse_fail(std::string("invalid JSON: ") + e.what());
  }
}

std::vector<double> real_vector_from_json(const json& j) {
  expect_array(j, "vector");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) v.push_back(number_from_json(x, "vector entry"));
  return v;
}

ProbVec prob_from_json(const json& j, bool normalize) { return ProbVec::validate(real_vector_from_json(j), normalize); }

Eigen::MatrixXd real_matrix_from_json(const json& j) {
  expect_array(j, "matrix");
  if (j.empty()) parse_fail("matrix must have at least one row");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(real_vector_from_json(j.front()).size());
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const std::vector<double> row = real_vector_from_json(j[static_cast<std::size_t>(r)]);
    if (static_cast<Eigen::Index>(row.size()) != cols) parse_fail("matrix rows differ in length");
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

Permutation permutation_from_json(const json& j) {
  expect_array(j, "permutation");
  Permutation g;
  for (const auto& x : j) {
    if (!x.is_number_integer()) parse_fail("permutation images must be integers");
    g.push_back(x.get<int>());
  }
  check_permutation(g, g.size());
  return g;
}

std::vector<Permutation> generators_from_json(const json& j) {
  const json& list = j.is_object() ? j.at("generators") : j;
  expect_array(list, "generator list");
  std::vector<Permutation> gens;
  for (const auto& g : list) gens.push_back(permutation_from_json(g));
  return gens;
}

std::complex<double> complex_from_json(const json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {number_from_json(j[0], "real part"), number_from_json(j[1], "imaginary part")};
  parse_fail("complex numbers are written [re, im]");
}

CVector cvector_from_json(const json& j) {
  expect_array(j, "complex vector");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = complex_from_json(j[i]);
  return v;
}

CMatrix cmatrix_from_json(const json& j) {
  expect_array(j, "complex matrix");
  if (j.empty()) parse_fail("complex matrix must have at least one row");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(cvector_from_json(j.front()).size());
  CMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const CVector row = cvector_from_json(j[static_cast<std::size_t>(r)]);
    if (row.size() != cols) parse_fail("complex matrix rows differ in length");
    m.row(r) = row.transpose();
  }
  return m;
}

Basis basis_from_json(const json& j) {
  if (!j.is_object() || !j.contains("vectors")) parse_fail("basis must be an object with a \"vectors\" array");
  std::vector<CVector> v;
  for (const auto& x : j.at("vectors")) v.push_back(cvector_from_json(x));
  return Basis::validate(std::move(v));
}

Povm povm_from_json(const json& j) {
  if (!j.is_object() || !j.contains("effects")) parse_fail("POVM must be an object with an \"effects\" array");
  std::vector<CMatrix> effects;
  for (const auto& e : j.at("effects")) effects.push_back(cmatrix_from_json(e));
  return Povm::validate(std::move(effects));
}

PureState pure_state_from_json(const json& j) { return PureState::validate(cvector_from_json(j)); }

DensityMatrix density_from_json(const json& j) {
  expect_array(j, "state");
  if (!j.empty() && j.front().is_array() && !j.front().empty() && j.front().front().is_array())
    return DensityMatrix::validate(cmatrix_from_json(j));
  return DensityMatrix::from_pure(pure_state_from_json(j));
}

MeasureDescriptor measure_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) parse_fail("measure must be an object with a \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  MeasureDescriptor m;
  if (kind == "shannon") m.kind = MeasureKind::shannon;
  else if (kind == "renyi") m.kind = MeasureKind::renyi;
  else if (kind == "tsallis") m.kind = MeasureKind::tsallis;
  else if (kind == "circular_variance") m.kind = MeasureKind::circular_variance;
  else if (kind == "value_variance") m.kind = MeasureKind::value_variance;
  else parse_fail("unknown measure kind '" + kind + "'");
  if (j.contains("param")) m.param = number_from_json(j.at("param"), "param");
  if (j.contains("values")) m.values = real_vector_from_json(j.at("values"));
  m.check();
  return m;
}

SchurFunction schur_fn_from_json(const json& j) {
  const std::string kind = j.is_string() ? j.get<std::string>() : j.at("kind").get<std::string>();
  SchurFunction f;
  if (kind == "shannon_ext") f.kind = SchurFnKind::shannon_ext;
  else if (kind == "neg_max") f.kind = SchurFnKind::neg_max;
  else if (kind == "sum_smallest") f.kind = SchurFnKind::sum_smallest;
  else if (kind == "neg_sum_largest") f.kind = SchurFnKind::neg_sum_largest;
  else parse_fail("unknown Schur function '" + kind + "'");
  if (j.is_object() && j.contains("count")) f.count = j.at("count").get<std::size_t>();
  return f;
}

JointMeasureDescriptor joint_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind")) parse_fail("joint measure must be an object with a \"kind\"");
  try {
    const std::string kind = j.at("kind").get<std::string>();
    JointMeasureDescriptor J;
    if (kind == "tensor" || kind == "directsum") {
      J.kind = kind == "tensor" ? JointKind::tensor : JointKind::directsum;
      J.measure = measure_from_json(j.at("U"));
      if (j.contains("w")) J.w = number_from_json(j.at("w"), "w");
    } else if (kind == "j2") {
      J.kind = JointKind::j2;
    } else if (kind == "schur_of_sorted_product" || kind == "schur_of_topk_sums") {
      J.kind = kind == "schur_of_sorted_product" ? JointKind::schur_of_sorted_product : JointKind::schur_of_topk_sums;
      J.f = schur_fn_from_json(j.at("f"));
      if (j.contains("k")) J.k = j.at("k").get<std::size_t>();
    } else if (kind == "renyi_sum") {
      J.kind = JointKind::renyi_sum;
      J.alpha = number_from_json(j.at("alpha"), "alpha");
      J.beta = number_from_json(j.at("beta"), "beta");
    } else {
      parse_fail("unknown joint measure kind '" + kind + "'");
    }
    J.check();
    return J;
  } catch (const json::exception& e) {
    parse_fail(std::string("joint measure: ") + e.what());
  }
}

json to_json(std::span<const double> v) {
  json out = json::array();
  for (double x : v) out.push_back(x);
  return out;
}

json to_json(const ProbVec& p) { return to_json(p.entries()); }

json to_json(const Eigen::MatrixXd& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    out.push_back(std::move(row));
  }
  return out;
}

json to_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json to_json(const CVector& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(to_json(v(i)));
  return out;
}

json to_json(const CMatrix& m) {
  json out = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(to_json(CVector(m.row(r).transpose())));
  return out;
}

json to_json(const Basis& b) {
  json vectors = json::array();
  for (const auto& v : b.vectors()) vectors.push_back(to_json(v));
  return {{"vectors", vectors}};
}

json to_json(const Povm& m) {
  json effects = json::array();
  for (const auto& e : m.effects()) effects.push_back(to_json(e));
  return {{"effects", effects}};
}

json to_json(const MeasureDescriptor& m) {
  json out = {{"kind", measure_kind_name(m.kind)}};
  if (m.param) out["param"] = number_to_json(*m.param);
  if (!m.values.empty()) out["values"] = to_json(std::span<const double>(m.values));
  return out;
}

json to_json(const SchurFunction& f) {
  json out = {{"kind", schur_fn_name(f.kind)}};
  if (f.kind == SchurFnKind::sum_smallest || f.kind == SchurFnKind::neg_sum_largest) out["count"] = f.count;
  return out;
}

json to_json(const JointMeasureDescriptor& J) {
  json out = {{"kind", joint_kind_name(J.kind)}};
  switch (J.kind) {
    case JointKind::tensor:
      out["U"] = to_json(J.measure);
      break;
    case JointKind::directsum:
      out["U"] = to_json(J.measure);
      out["w"] = J.w;
      break;
    case JointKind::schur_of_sorted_product:
      out["f"] = to_json(J.f);
      break;
    case JointKind::schur_of_topk_sums:
      out["f"] = to_json(J.f);
      out["k"] = J.k;
      break;
    case JointKind::renyi_sum:
      out["alpha"] = number_to_json(J.alpha);
      out["beta"] = number_to_json(J.beta);
      break;
    case JointKind::j2:
      break;
  }
  return out;
}

json to_json(const MonotonicityReport& r) {
  json out = {{"trials", r.trials}, {"violations", r.violations}, {"worst_violation", r.worst_violation}};
  if (r.witness) out["witness"] = {{"p", to_json(std::span<const double>(r.witness->p))}, {"D", to_json(r.witness->D)}};
  else out["witness"] = nullptr;
  return out;
}

json to_json(const URBoundResult& r) {
  return {{"value", r.value},
          {"argmin_state", to_json(r.argmin_state.amplitudes())},
          {"argmin_chart", to_json(std::span<const double>(r.argmin_chart))},
          {"method", r.method},
          {"evaluations", r.evaluations},
          {"grid_resolution", json::array({r.grid_alpha, r.grid_phi})},
          {"restarts", r.restarts},
          {"converged", r.converged}};
}

json to_json(const UniversalVector& u) {
  json kind = u.kind.kind == CombinationKind::tensor ? json{{"type", "tensor"}} : json{{"type", "directsum"}, {"w", u.kind.w}};
  return {{"omega", to_json(u.omega.entries())},
          {"kind", kind},
          {"samples_used", u.samples_used},
          {"max_partial_sums", to_json(std::span<const double>(u.max_partial_sums))},
          {"converged", u.converged}};
}

json to_json(const UniversalCheck& c) {
  return {{"samples", c.samples}, {"violations", c.violations}, {"worst_margin", c.worst_margin}};
}

json to_json(const TrivialPair& t) {
  return {{"u0", to_json(t.u0.entries())}, {"v0", to_json(t.v0.entries())}, {"converged", t.converged}};
}

json to_json(const EmpiricalDist& e) {
  const std::vector<double> f = e.freq();
  return {{"counts", e.counts}, {"n", e.n}, {"freq", to_json(std::span<const double>(f))}};
}

}  // namespace ucr::io
