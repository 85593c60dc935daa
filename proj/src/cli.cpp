#include "ucr/cli.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "ucr/error.hpp"
#include "ucr/io.hpp"
#include "ucr/universal.hpp"

namespace ucr::cli {

namespace {

using io::json;

enum class Format { json, csv };

// Fixed 12 significant digits, independent of the global locale.
std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  std::string s(buf);
  for (char& c : s)
    if (c == ',') c = '.';
  return s;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}
  CsvWriter& field(const std::string& s) { return raw(csv_field(s)); }
  CsvWriter& field(double x) { return raw(csv_number(x)); }
  CsvWriter& field(std::uint64_t x) { return raw(std::to_string(x)); }
  CsvWriter& field(bool b) { return raw(b ? "true" : "false"); }
  void end_row() {
    out_ << "\r\n";
    first_ = true;
  }

 private:
  CsvWriter& raw(const std::string& s) {
    if (!first_) out_ << ',';
    out_ << s;
    first_ = false;
    return *this;
  }
  std::ostream& out_;
  bool first_ = true;
};

struct Options {
  std::string format;
  std::uint64_t seed = 0;
  std::string p, q, measure, joint, basis_a, basis_b, povm_a, povm_b, channel, group, weights, state, grid;
  std::string sim_type = "channel";
  std::string kind = "tensor";
  std::string check;
  double w = 0.5;
  std::uint64_t n = 100000;
  std::uint64_t trials = 10000;
  std::uint64_t check_samples = 0;
  std::size_t dim = 0;
  std::size_t restarts = 32;
  long max_iters = 20000;
  bool normalize = false;
  double beta_min = 0.0;
  double beta_max = std::numbers::pi / 2;
  std::size_t beta_steps = 11;
};

[[noreturn]] void usage_fail(const std::string& what) { throw Error(Errc::bad_parameter, what); }

const std::string& required(const std::string& value, const char* flag) {
  if (value.empty()) usage_fail(std::string(flag) + " is required");
  return value;
}

MinimizeOptions search_options(const Options& o) {
  MinimizeOptions m;
  m.seed = o.seed;
  m.restarts = o.restarts;
  m.max_iters = o.max_iters;
  if (o.restarts == 0) usage_fail("--restarts must be positive");
  if (o.max_iters <= 0) usage_fail("--max-iters must be positive");
  if (!o.grid.empty()) {
    const auto x = o.grid.find_first_of("xX");
    try {
      if (x == std::string::npos) {
        m.grid_alpha = std::stoul(o.grid);
        m.grid_phi = 2 * (m.grid_alpha - 1);
      } else {
        m.grid_alpha = std::stoul(o.grid.substr(0, x));
        m.grid_phi = std::stoul(o.grid.substr(x + 1));
      }
    } catch (const std::exception&) {
      usage_fail("--grid expects N or AxP");
    }
    if (m.grid_alpha < 2 || m.grid_phi < 1) usage_fail("--grid needs at least 2 alpha and 1 phi samples");
  }
  return m;
}

// Measurement pair from --povm-a/--povm-b, or projective from --basis-a/--basis-b.
struct MeasurementPair {
  Povm a;
  Povm b;
  std::optional<Basis> basis_a;
  std::optional<Basis> basis_b;
};

MeasurementPair load_measurements(const Options& o) {
  const bool bases = !o.basis_a.empty() || !o.basis_b.empty();
  const bool povms = !o.povm_a.empty() || !o.povm_b.empty();
  if (bases == povms) usage_fail("give either --basis-a/--basis-b or --povm-a/--povm-b");
  if (bases) {
    Basis A = io::basis_from_json(io::load_json(required(o.basis_a, "--basis-a")));
    Basis B = io::basis_from_json(io::load_json(required(o.basis_b, "--basis-b")));
    if (A.dim() != B.dim()) throw Error(Errc::dimension_mismatch, "bases act on different dimensions");
    return {projective_povm(A), projective_povm(B), A, B};
  }
  Povm A = io::povm_from_json(io::load_json(required(o.povm_a, "--povm-a")));
  Povm B = io::povm_from_json(io::load_json(required(o.povm_b, "--povm-b")));
  if (A.dim() != B.dim()) throw Error(Errc::dimension_mismatch, "POVMs act on different dimensions");
  return {A, B, std::nullopt, std::nullopt};
}

void emit_json(std::ostream& out, const json& j) { out << j.dump() << '\n'; }

int cmd_majorize(const Options& o, Format fmt, std::ostream& out) {
  const ProbVec p = io::prob_from_json(io::load_json(required(o.p, "--p")), o.normalize);
  const ProbVec q = io::prob_from_json(io::load_json(required(o.q, "--q")), o.normalize);
  const bool m = majorizes(p, q);
  if (fmt == Format::csv) {
    CsvWriter csv(out);
    csv.field(std::string("majorizes")).end_row();
    csv.field(m).end_row();
  } else {
    emit_json(out, {{"majorizes", m}});
  }
  return kExitOk;
}

int cmd_measure(const Options& o, Format fmt, std::ostream& out) {
  const MeasureDescriptor m = io::measure_from_json(io::load_json(required(o.measure, "--measure")));
  if (!o.check.empty()) {
    if (o.dim < 2) usage_fail("--check needs --d of at least 2");
    MonotonicityReport r;
    if (o.check == "schur") {
      r = test_schur_concavity(m, o.dim, o.trials, o.seed);
    } else if (o.check == "rec") {
      r = test_monotone_under(m, source::Rec{}, o.dim, o.trials, o.seed);
    } else if (o.check == "sym") {
      const PermGroup G = o.group.empty() ? cyclic_group(o.dim)
                                          : generate_group(o.dim, io::generators_from_json(io::load_json(o.group)));
      r = test_monotone_under(m, source::Sym{G}, o.dim, o.trials, o.seed);
    } else {
      usage_fail("--check must be schur, sym or rec");
    }
    if (fmt == Format::csv) {
      CsvWriter csv(out);
      csv.field(std::string("trials")).field(std::string("violations")).field(std::string("worst_violation")).end_row();
      csv.field(r.trials).field(r.violations).field(r.worst_violation).end_row();
    } else {
      emit_json(out, {{"measure", io::to_json(m)}, {"report", io::to_json(r)}});
    }
    return kExitOk;
  }
  const ProbVec p = io::prob_from_json(io::load_json(required(o.p, "--p")), o.normalize);
  const double v = evaluate(m, p);
  if (fmt == Format::csv) {
    CsvWriter csv(out);
    csv.field(std::string("measure")).field(std::string("value")).end_row();
    csv.field(std::string(measure_kind_name(m.kind))).field(v).end_row();
  } else {
    emit_json(out, {{"measure", io::to_json(m)}, {"value", v}});
  }
  return kExitOk;
}

int cmd_joint(const Options& o, Format fmt, std::ostream& out) {
  const std::string& descriptor = o.joint.empty() ? o.measure : o.joint;
  const JointMeasureDescriptor J = io::joint_from_json(io::load_json(required(descriptor, "--joint")));
  std::optional<DistPair> pair;
  if (!o.state.empty()) {
    const MeasurementPair mp = load_measurements(o);
    const DensityMatrix rho = io::density_from_json(io::load_json(o.state));
    if (rho.dim() != mp.a.dim()) throw Error(Errc::dimension_mismatch, "state and measurements differ in dimension");
    pair = DistPair{outcome_dist(rho, mp.a), outcome_dist(rho, mp.b)};
  } else {
    pair = DistPair{io::prob_from_json(io::load_json(required(o.p, "--p")), o.normalize),
                    io::prob_from_json(io::load_json(required(o.q, "--q")), o.normalize)};
  }
  const double v = eval_joint(J, *pair);
  if (fmt == Format::csv) {
    CsvWriter csv(out);
    csv.field(std::string("joint")).field(std::string("value")).end_row();
    csv.field(std::string(joint_kind_name(J.kind))).field(v).end_row();
  } else {
    emit_json(out, {{"joint", io::to_json(J)}, {"p", io::to_json(pair->p)}, {"q", io::to_json(pair->q)}, {"value", v}});
  }
  return kExitOk;
}

int cmd_bound(const Options& o, Format fmt, std::ostream& out) {
  const std::string& descriptor = o.joint.empty() ? o.measure : o.joint;
  const JointMeasureDescriptor J = io::joint_from_json(io::load_json(required(descriptor, "--measure")));
  const MeasurementPair mp = load_measurements(o);
  const MinimizeOptions opts = search_options(o);
  const URBoundResult r =
      mp.basis_a ? minimize_joint(J, *mp.basis_a, *mp.basis_b, opts) : minimize_joint(J, mp.a, mp.b, opts);

  std::optional<double> eta, analytic;
  if (mp.basis_a) eta = overlap_eta(*mp.basis_a, *mp.basis_b);
  if (mp.basis_a && J.kind == JointKind::j2 && mp.basis_a->dim() == 2) analytic = qubit_j2_bound(*mp.basis_a, *mp.basis_b);

  if (fmt == Format::csv) {
    CsvWriter csv(out);
    csv.field(std::string("value")).field(std::string("method")).field(std::string("evaluations"));
    csv.field(std::string("grid_alpha")).field(std::string("grid_phi")).field(std::string("restarts"));
    csv.field(std::string("converged")).field(std::string("eta")).field(std::string("analytic_bound")).end_row();
    csv.field(r.value).field(r.method).field(static_cast<std::uint64_t>(r.evaluations));
    csv.field(static_cast<std::uint64_t>(r.grid_alpha)).field(static_cast<std::uint64_t>(r.grid_phi));
    csv.field(static_cast<std::uint64_t>(r.restarts)).field(r.converged);
    csv.field(eta ? csv_number(*eta) : std::string()).field(analytic ? csv_number(*analytic) : std::string());
    csv.end_row();
  } else {
    json j = io::to_json(r);
    if (eta) j["eta"] = *eta;
    if (analytic) j["analytic_bound"] = *analytic;
    emit_json(out, j);
  }
  return r.converged ? kExitOk : kExitNonConvergence;
}

int cmd_universal(const Options& o, Format fmt, std::ostream& out) {
  const MeasurementPair mp = load_measurements(o);
  UniversalOptions uo;
  uo.search = search_options(o);

  if (o.kind == "trivial") {
    const TrivialPair t = trivial_pair(mp.a, mp.b, uo);
    if (fmt == Format::csv) {
      CsvWriter csv(out);
      csv.field(std::string("index")).field(std::string("u0")).field(std::string("v0")).end_row();
      const std::size_t n = std::max(t.u0.dim(), t.v0.dim());
      for (std::size_t i = 0; i < n; ++i) {
        csv.field(static_cast<std::uint64_t>(i));
        csv.field(i < t.u0.dim() ? csv_number(t.u0[i]) : std::string());
        csv.field(i < t.v0.dim() ? csv_number(t.v0[i]) : std::string());
        csv.end_row();
      }
    } else {
      emit_json(out, io::to_json(t));
    }
    return t.converged ? kExitOk : kExitNonConvergence;
  }

  Combination comb;
  if (o.kind == "tensor") comb = Combination::tensor();
  else if (o.kind == "directsum") comb = Combination::directsum(o.w);
  else usage_fail("--kind must be tensor, directsum or trivial");
  if (comb.kind == CombinationKind::directsum && !(o.w > 0.0 && o.w < 1.0)) usage_fail("--w must lie in (0, 1)");

  const UniversalVector U = universal_omega(mp.a, mp.b, comb, uo);
  std::optional<UniversalCheck> chk;
  if (o.check_samples > 0) chk = check_universal(U, mp.a, mp.b, o.check_samples, o.seed);

  if (fmt == Format::csv) {
    CsvWriter csv(out);
    csv.field(std::string("k")).field(std::string("omega")).field(std::string("max_partial_sum")).end_row();
    for (std::size_t i = 0; i < U.omega.dim(); ++i)
      csv.field(static_cast<std::uint64_t>(i + 1)).field(U.omega[i]).field(U.max_partial_sums[i]).end_row();
  } else {
    json j = io::to_json(U);
    if (chk) j["check"] = io::to_json(*chk);
    emit_json(out, j);
  }
  return U.converged ? kExitOk : kExitNonConvergence;
}

int cmd_simulate(const Options& o, Format fmt, std::ostream& out) {
  const ProbVec p = io::prob_from_json(io::load_json(required(o.p, "--p")), o.normalize);
  if (o.n == 0) usage_fail("--n must be positive");
  EmpiricalDist e;
  ProbVec exact = p;
  if (o.sim_type == "channel") {
    const StochasticChannel T = StochasticChannel::validate(io::real_matrix_from_json(io::load_json(required(o.channel, "--channel"))));
    if (T.inputs() != p.dim()) throw Error(Errc::dimension_mismatch, "channel inputs differ from dim(p)");
    e = simulate_channel_recovery(p, T, o.n, o.seed);
    exact = rec_map(T).apply(p);
  } else if (o.sim_type == "relabel") {
    const PermGroup G = generate_group(p.dim(), io::generators_from_json(io::load_json(required(o.group, "--group"))));
    std::vector<double> t(G.order(), 1.0 / static_cast<double>(G.order()));
    if (!o.weights.empty()) t = io::real_vector_from_json(io::load_json(o.weights));
    const ProbVec tw = ProbVec::validate(t, o.normalize);
    if (tw.dim() != G.order()) throw Error(Errc::dimension_mismatch, "--weights length differs from the group order");
    e = simulate_random_relabel(p, G, tw, o.n, o.seed);
    exact = sym_map(G, tw).apply(p);
  } else {
    usage_fail("--type must be channel or relabel");
  }
  const std::vector<double> f = e.freq();
  const double tv = total_variation(f, exact.entries());

  if (fmt == Format::csv) {
    CsvWriter csv(out);
    csv.field(std::string("index")).field(std::string("count")).field(std::string("freq")).field(std::string("exact")).end_row();
    for (std::size_t i = 0; i < f.size(); ++i)
      csv.field(static_cast<std::uint64_t>(i)).field(e.counts[i]).field(f[i]).field(exact[i]).end_row();
  } else {
    json j = io::to_json(e);
    j["exact"] = io::to_json(exact);
    j["tv_distance"] = tv;
    emit_json(out, j);
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, Format fmt, std::ostream& out) {
  constexpr double kHalfPi = std::numbers::pi / 2;
  if (o.beta_steps == 0) usage_fail("--beta-steps must be positive");
  if (!(o.beta_min >= 0.0 && o.beta_max <= kHalfPi && o.beta_min <= o.beta_max))
    usage_fail("beta range must satisfy 0 <= beta-min <= beta-max <= pi/2");
  const MinimizeOptions opts = search_options(o);
  const Basis A = Basis::computational(2);
  const JointMeasureDescriptor J = JointMeasureDescriptor::j2();

  struct Row {
    double beta, eta, analytic, numeric;
    bool converged;
  };
  std::vector<Row> rows;
  bool all_converged = true;
  for (std::size_t i = 0; i < o.beta_steps; ++i) {
    const double beta =
        o.beta_steps == 1 ? o.beta_min
                          : o.beta_min + (o.beta_max - o.beta_min) * static_cast<double>(i) / static_cast<double>(o.beta_steps - 1);
    const Basis B = rotated_real_basis(beta);
    const URBoundResult r = minimize_joint(J, A, B, opts);
    rows.push_back({beta, overlap_eta(A, B), qubit_j2_bound(A, B), r.value, r.converged});
    all_converged = all_converged && r.converged;
  }

  if (fmt == Format::json) {
    json arr = json::array();
    for (const Row& r : rows)
      arr.push_back({{"beta", r.beta}, {"eta", r.eta}, {"analytic_bound", r.analytic}, {"numeric_bound", r.numeric},
                     {"gap", r.numeric - r.analytic}, {"converged", r.converged}});
    emit_json(out, arr);
  } else {
    CsvWriter csv(out);
    for (const char* h : {"beta", "eta", "analytic_bound", "numeric_bound", "gap"}) csv.field(std::string(h));
    csv.end_row();
    for (const Row& r : rows) csv.field(r.beta).field(r.eta).field(r.analytic).field(r.numeric).field(r.numeric - r.analytic).end_row();
  }
  return all_converged ? kExitOk : kExitNonConvergence;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Majorization-based uncertainty measures and preparational uncertainty bounds", "ucr"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", o.seed, "RNG seed")->capture_default_str();

  auto* maj = app.add_subcommand("majorize", "Check p majorizes q");
  auto* mea = app.add_subcommand("measure", "Evaluate a single-variable measure, or sample its monotonicity");
  auto* joi = app.add_subcommand("joint", "Evaluate a joint measure on (p, q) or on a state's outcome pair");
  auto* bnd = app.add_subcommand("bound", "Minimize a joint measure over pure states");
  auto* uni = app.add_subcommand("universal", "Numerical universal vector for a measurement pair");
  auto* sim = app.add_subcommand("simulate", "Monte Carlo of the channel-recovery or relabelling experiment");
  auto* swp = app.add_subcommand("sweep", "Qubit J2 bound against the basis rotation angle");

  for (auto* c : {maj, mea, joi, sim}) c->add_flag("--normalize", o.normalize, "Rescale inputs that do not sum to 1");
  for (auto* c : {maj, mea, joi, sim}) c->add_option("--p", o.p, "Distribution (inline JSON or file)");
  for (auto* c : {maj, joi}) c->add_option("--q", o.q, "Second distribution");
  for (auto* c : {mea, joi, bnd}) c->add_option("--measure", o.measure, "Measure descriptor");
  for (auto* c : {joi, bnd}) c->add_option("--joint", o.joint, "Joint measure descriptor");
  for (auto* c : {joi, bnd, uni}) {
    c->add_option("--basis-a", o.basis_a, "First basis");
    c->add_option("--basis-b", o.basis_b, "Second basis");
    c->add_option("--povm-a", o.povm_a, "First POVM");
    c->add_option("--povm-b", o.povm_b, "Second POVM");
  }
  for (auto* c : {bnd, uni, swp}) {
    c->add_option("--grid", o.grid, "Qubit grid: N (N x 2(N-1)) or AxP");
    c->add_option("--restarts", o.restarts, "Multistart count for d > 2")->capture_default_str();
    c->add_option("--max-iters", o.max_iters, "Simplex iteration budget per refinement")->capture_default_str();
  }
  joi->add_option("--state", o.state, "State vector or density matrix");
  mea->add_option("--check", o.check, "Sample monotonicity under schur | sym | rec maps");
  mea->add_option("--d", o.dim, "Dimension for --check");
  mea->add_option("--trials", o.trials, "Trials for --check")->capture_default_str();
  mea->add_option("--group", o.group, "Generators for --check sym (default cyclic)");
  uni->add_option("--kind", o.kind, "tensor | directsum | trivial")->capture_default_str();
  uni->add_option("--w", o.w, "Direct-sum weight")->capture_default_str();
  uni->add_option("--check-samples", o.check_samples, "Random states for a domination check");
  sim->add_option("--type", o.sim_type, "channel | relabel")->capture_default_str();
  sim->add_option("--channel", o.channel, "Column-stochastic matrix T(y|x), rows indexed by y");
  sim->add_option("--group", o.group, "Permutation generators");
  sim->add_option("--weights", o.weights, "Weights over group elements in discovery order (default uniform)");
  sim->add_option("--n", o.n, "Samples")->capture_default_str();
  swp->add_option("--beta-min", o.beta_min)->capture_default_str();
  swp->add_option("--beta-max", o.beta_max)->capture_default_str();
  swp->add_option("--beta-steps", o.beta_steps)->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "ucr: " << e.what() << '\n';
    return kExitValidation;
  }

  const Format fmt = o.format == "csv" ? Format::csv
                     : o.format == "json" ? Format::json
                     : swp->parsed() ? Format::csv
                                      : Format::json;
  try {
    if (maj->parsed()) return cmd_majorize(o, fmt, out);
    if (mea->parsed()) return cmd_measure(o, fmt, out);
    if (joi->parsed()) return cmd_joint(o, fmt, out);
    if (bnd->parsed()) return cmd_bound(o, fmt, out);
    if (uni->parsed()) return cmd_universal(o, fmt, out);
    if (sim->parsed()) return cmd_simulate(o, fmt, out);
    return cmd_sweep(o, fmt, out);
  } catch (const Error& e) {
    err << "ucr: " << e.what() << '\n';
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "ucr: " << e.what() << '\n';
    return kExitValidation;
  }
}

}  // namespace ucr::cli
