#include "projdim/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "projdim/affinity.hpp"
#include "projdim/anosov.hpp"
#include "projdim/dimension.hpp"
#include "projdim/io.hpp"
#include "projdim/parallel.hpp"
#include "projdim/partitions.hpp"
#include "projdim/randwalk.hpp"
#include "projdim/rauzy.hpp"

namespace projdim {

namespace {

constexpr const char* kVersion = "0.1.0";

struct Column {
  std::string name;
  std::string unit;
};

struct Output {
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<Column> columns;
  std::vector<std::vector<json>> rows;
  json summary = json::object();
  std::string line;  // one-line human summary
};

// Converts nats to the requested logarithm base.
struct Units {
  double base = 0.0;
  double operator()(double nats) const { return base > 0.0 ? nats / std::log(base) : nats; }
  std::string name() const {
    if (base <= 0.0) return "nats";
    std::ostringstream os;
    os << "log base " << base;
    return os.str();
  }
};

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

std::string csv_cell(const json& v) {
  if (v.is_null()) return "";
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number()) return fmt(v.get<double>());
  return v.dump();
}

std::string join_argv(const std::vector<std::string>& argv) {
  std::string s;
  for (std::size_t i = 0; i < argv.size(); ++i) {
    if (i) s += ' ';
    const bool quote = argv[i].find_first_of(" \t,") != std::string::npos || argv[i].empty();
    s += quote ? "'" + argv[i] + "'" : argv[i];
  }
  return s;
}

void emit(const RunConfig& cfg, const Output& o, std::ostream& os) {
  if (cfg.format == "json") {
    json doc;
    doc["tool"] = "projdim";
    doc["version"] = kVersion;
    doc["command"] = cfg.subcommand;
    doc["argv"] = join_argv(cfg.argv);
    doc["seed"] = cfg.seed;
    json params = json::object();
    for (const auto& [k, v] : o.params) params[k] = v;
    doc["params"] = params;
    json cols = json::array();
    for (const Column& c : o.columns) cols.push_back({{"name", c.name}, {"unit", c.unit}});
    doc["columns"] = cols;
    json rows = json::array();
    for (const auto& r : o.rows) {
      json obj = json::object();
      for (std::size_t i = 0; i < o.columns.size(); ++i) obj[o.columns[i].name] = r[i];
      rows.push_back(obj);
    }
    doc["rows"] = rows;
    doc["summary"] = o.summary;
    os << doc.dump(2) << "\n";
    return;
  }
  os << "# tool=projdim " << kVersion << "\n";
  os << "# command=" << cfg.subcommand << "\n";
  os << "# argv=" << join_argv(cfg.argv) << "\n";
  os << "# seed=" << cfg.seed << "\n";
  for (const auto& [k, v] : o.params) os << "# " << k << "=" << v << "\n";
  for (const Column& c : o.columns)
    if (!c.unit.empty()) os << "# unit." << c.name << "=" << c.unit << "\n";
  for (const auto& [k, v] : o.summary.items())
    os << "# summary." << k << "=" << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  for (std::size_t i = 0; i < o.columns.size(); ++i) os << (i ? "," : "") << o.columns[i].name;
  os << "\n";
  for (const auto& r : o.rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_cell(r[i]);
    os << "\n";
  }
}

std::pair<int, int> parse_levels(const std::string& s) {
  const auto dots = s.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(s);
      return {v, v};
    }
    return {std::stoi(s.substr(0, dots)), std::stoi(s.substr(dots + 2))};
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "levels '" + s + "': expected a..b");
  }
}

Vec3 parse_vec3(const std::string& s) {
  std::stringstream ss(s);
  std::string tok;
  std::vector<double> v;
  try {
    while (std::getline(ss, tok, ',')) v.push_back(std::stod(tok));
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "direction '" + s + "': expected x,y,z");
  }
  if (v.size() != 3) fail(ErrorCode::InvalidArgument, "direction '" + s + "': expected x,y,z");
  return {v[0], v[1], v[2]};
}

std::string word_string(const std::vector<int>& w) {
  std::string s;
  for (int a : w) s += std::to_string(a + 1);
  return s;
}

std::string letters_string(const WordSystem& sys, const std::vector<int>& w) {
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const auto [g, p] = sys.letter_info(w[i]);
    if (i) s += ' ';
    s += "g" + std::to_string(g + 1);
    if (p != 1) s += "^" + std::to_string(p);
  }
  return s;
}

std::string vec_string(const Vec3& v) { return fmt(v[0]) + " " + fmt(v[1]) + " " + fmt(v[2]); }

// Every subcommand's parameters, filled in by CLI11.
struct Params {
  std::string gens = "rauzy";
  long steps = 100000;
  int chains = 8;
  int qr_period = 20;
  int nmax = 8;
  bool separation = false;
  std::size_t count = 1000;
  int burn_in = kDefaultBurnIn;
  bool inverse = false;
  double tol = 1e-3;
  std::string words = "semigroup";
  int run_cap = 6;
  std::string s_grid = "0.25:2:0.25";
  int depth = 3;
  std::size_t points = 100000;
  std::string levels = "4..8";
  int q = 2;
  std::string direction;
  bool predict = false;
  std::string config;
  std::string eps;
  int jump_nmax = 0;
  double jump_tol = 0.0;
  std::string kind;
  int n = 8;
  int hyperplanes = 20;
  int trials = 16;
  double h = -1.0, chi1 = -1.0, chi2 = -1.0;
  bool exact_h = false;
};

Output cmd_lyapunov(const RunConfig& cfg, const Params& p, const Units& u) {
  const AtomicMeasure nu = resolve_measure(p.gens);
  const LyapunovEstimate e = lyapunov_spectrum(nu, p.steps, p.chains, cfg.seed, p.qr_period);
  Output o;
  o.params = {{"gens", p.gens}, {"steps", std::to_string(p.steps)}, {"chains", std::to_string(p.chains)},
              {"qr_period", std::to_string(p.qr_period)}};
  o.columns = {{"quantity", ""}, {"value", u.name() + " per step"}, {"stderr", u.name() + " per step"}};
  const char* names[3] = {"lambda1", "lambda2", "lambda3"};
  for (int i = 0; i < 3; ++i)
    o.rows.push_back({names[i], u(e.lambda[static_cast<std::size_t>(i)]), u(e.stderr_lambda[static_cast<std::size_t>(i)])});
  o.rows.push_back({"chi1", u(e.chi[0]), u(e.stderr_chi[0])});
  o.rows.push_back({"chi2", u(e.chi[1]), u(e.stderr_chi[1])});
  o.summary["lambda_sum"] = u(e.lambda[0] + e.lambda[1] + e.lambda[2]);
  o.summary["gap12_over_stderr"] = e.stderr_gap[0] > 0 ? (e.lambda[0] - e.lambda[1]) / e.stderr_gap[0] : 0.0;
  o.summary["gap23_over_stderr"] = e.stderr_gap[1] > 0 ? (e.lambda[1] - e.lambda[2]) / e.stderr_gap[1] : 0.0;
  o.line = "lambda = (" + fmt(u(e.lambda[0])) + ", " + fmt(u(e.lambda[1])) + ", " + fmt(u(e.lambda[2])) + ")";
  return o;
}

Output cmd_entropy(const RunConfig&, const Params& p, const Units& u) {
  const AtomicMeasure nu = resolve_measure(p.gens);
  const EntropyResult r = random_walk_entropy(nu, p.nmax);
  Output o;
  o.params = {{"gens", p.gens}, {"nmax", std::to_string(p.nmax)},
              {"dedup", r.exact ? "exact integer" : "float grid 1e-9"}};
  o.columns = {{"n", ""}, {"H", u.name()}, {"H_over_n", u.name() + " per step"}, {"distinct", "count"}};
  if (p.separation) {
    o.params.push_back({"metric", "Frobenius distance (proxy for the invariant metric)"});
    o.columns.push_back({"min_dist", "Frobenius"});
    o.columns.push_back({"log_min_dist_over_n", "nats per step"});
  }
  for (int n = 1; n <= p.nmax; ++n) {
    const auto i = static_cast<std::size_t>(n - 1);
    std::vector<json> row{n, u(r.entropy[i]), u(r.per_step[i]), r.distinct[i]};
    if (p.separation) {
      const SeparationResult s = exponential_separation_probe(nu, n);
      row.push_back(std::isfinite(s.min_dist) ? json(s.min_dist) : json(nullptr));
      row.push_back(std::isfinite(s.log_rate) ? json(s.log_rate) : json(nullptr));
    }
    o.rows.push_back(row);
  }
  o.summary["h_rw"] = u(r.h_rw);
  o.summary["log_atoms"] = u(std::log(static_cast<double>(nu.size())));
  o.summary["exact"] = r.exact;
  o.line = "h_RW estimate " + fmt(u(r.h_rw)) + " " + u.name() + " per step";
  return o;
}

Output cmd_stationary(const RunConfig& cfg, const Params& p, const Units&) {
  const AtomicMeasure nu = resolve_measure(p.gens);
  const StationarySample s = sample_stationary(nu, p.count, p.burn_in, cfg.seed, p.inverse);
  Output o;
  o.params = {{"gens", p.gens}, {"count", std::to_string(p.count)}, {"burn_in", std::to_string(p.burn_in)},
              {"measure", p.inverse ? "mu^- (walk driven by nu^-)" : "mu"}};
  o.columns = {{"x", "unit representative"}, {"y", ""}, {"z", ""}};
  for (const ProjPoint& x : s.points) o.rows.push_back({x[0], x[1], x[2]});
  o.summary["points"] = s.points.size();
  o.line = std::to_string(s.points.size()) + " stationary points";
  return o;
}

WordSystem make_words(const std::vector<Mat3>& gens, const std::string& words, int cap) {
  if (words == "semigroup") return WordSystem::free_semigroup(gens);
  if (words == "group") return WordSystem::free_group(gens);
  return WordSystem::run_length_induced(gens, cap);
}

Output cmd_affinity(const RunConfig&, const Params& p, const Units& u) {
  const AtomicMeasure nu = resolve_measure(p.gens);
  const WordSystem sys = make_words(nu.matrices(), p.words, p.run_cap);
  const GapTable table = GapTable::enumerate(sys, p.nmax);
  const CriticalExponent ce = critical_exponent(table, p.tol);
  Output o;
  o.params = {{"gens", p.gens}, {"nmax", std::to_string(p.nmax)}, {"tol", fmt(p.tol)},
              {"words", sys.describe()}, {"s_grid", p.s_grid}};
  o.columns = {{"s", ""}, {"n", "letters"}, {"logZ", u.name()}, {"count", "words"},
               {"slope_inv_n", u.name() + " per letter"}, {"slope_diff", u.name() + " per letter"}};
  for (double s : parse_range(p.s_grid)) {
    const PressureCurve c = pressure(table, s);
    for (std::size_t i = 0; i < c.per_n.size(); ++i)
      o.rows.push_back({s, c.per_n[i].n, u(c.per_n[i].log_z), c.per_n[i].count, u(c.inv_n[i]), u(c.diffs[i])});
  }
  json roots = json::array();
  for (const auto& r : ce.per_n_roots) roots.push_back(r ? json(*r) : json(nullptr));
  o.summary["sA"] = ce.s_a;
  o.summary["bracket"] = {ce.lo, ce.hi};
  o.summary["per_n_roots"] = roots;
  o.summary["P_hat_1"] = u(ce.p_hat_1);
  o.summary["P_hat_2"] = u(ce.p_hat_2);
  o.line = "sA = " + fmt(ce.s_a) + " (" + sys.describe() + ", n = " + std::to_string(p.nmax) + ")";
  return o;
}

Output cmd_rauzy_cover(const RunConfig&, const Params& p, const Units&) {
  const std::vector<Cylinder> cover = cylinder_cover(p.depth);
  Output o;
  o.params = {{"depth", std::to_string(p.depth)}, {"chart", "barycentric (x, y) / (x + y + z)"}};
  o.columns = {{"word", "letters 1..3"}, {"v1_b1", "chart"}, {"v1_b2", "chart"}, {"v2_b1", "chart"},
               {"v2_b2", "chart"}, {"v3_b1", "chart"}, {"v3_b2", "chart"}};
  for (const Cylinder& c : cover) {
    std::vector<json> row{word_string(c.word)};
    for (const ProjPoint& v : c.vertices()) {
      const Vec2 b = simplex_chart(v);
      row.push_back(b[0]);
      row.push_back(b[1]);
    }
    o.rows.push_back(row);
  }
  o.summary["cylinders"] = cover.size();
  o.line = std::to_string(cover.size()) + " cylinders at depth " + std::to_string(p.depth);
  return o;
}

Output cmd_rauzy_dim(const RunConfig& cfg, const Params& p, const Units&) {
  const auto [lo, hi] = parse_levels(p.levels);
  const GasketSample g = sample_gasket(p.points, p.burn_in, cfg.seed);
  const BoxCount bc = box_counting_dimension(g.chart, lo, hi);
  Output o;
  o.params = {{"points", std::to_string(p.points)}, {"levels", p.levels}, {"burn_in", std::to_string(p.burn_in)},
              {"chart", "barycentric, grid 2^k per side"}};
  o.columns = {{"k", "grid side 2^-k"}, {"occupied", "cells"}};
  for (const auto& [k, n] : bc.levels) o.rows.push_back({k, n});
  o.summary["slope"] = bc.slope;
  o.summary["caveat"] = "finite sampling biases the slope downward";
  o.line = "box-counting slope " + fmt(bc.slope);
  return o;
}

Output cmd_project_entropy(const RunConfig& cfg, const Params& p, const Units& u) {
  const AtomicMeasure nu = resolve_measure(p.gens);
  const auto [lo, hi] = parse_levels(p.levels);
  const ProjPoint V = p.direction.empty()
                          ? sample_stationary(nu, 1, p.burn_in, cfg.seed ^ 0x9e3779b97f4a7c15ULL, true).points[0]
                          : ProjPoint(parse_vec3(p.direction));
  const StationarySample s = sample_stationary(nu, p.count, p.burn_in, cfg.seed, false);
  const ProjectedSample ps = project_sample(s.points, V);
  const auto curve = entropy_dimension_curve(ps.coords, p.q, lo, hi);
  Output o;
  o.params = {{"gens", p.gens}, {"count", std::to_string(p.count)}, {"burn_in", std::to_string(p.burn_in)},
              {"q", std::to_string(p.q)}, {"levels", p.levels},
              {"direction", p.direction.empty() ? "sampled from mu^-" : p.direction}};
  o.columns = {{"n", "level"}, {"entropy", u.name()}, {"dim_estimate", "H / (n log q)"},
               {"occupied", "cells"}, {"undersampled", "occupied > N/10"}};
  for (const auto& r : curve) o.rows.push_back({r.n, u(r.entropy), r.value, r.occupied, r.undersampled});
  o.summary["V"] = vec_string(V.rep());
  o.summary["dropped"] = ps.dropped;
  if (p.predict) {
    const LyapunovEstimate e = lyapunov_spectrum(nu, 100000, 8, cfg.seed);
    const int n = std::min(8, WordSystem::free_semigroup(nu.matrices()).max_depth());
    const EntropyResult h = random_walk_entropy(nu, n);
    o.summary["chi1"] = u(e.chi[0]);
    o.summary["h_rw"] = u(h.h_rw);
    o.summary["prediction"] = std::min(1.0, h.h_rw / e.chi[0]);
  }
  o.line = "entropy dimension at n = " + std::to_string(hi) + ": " + fmt(curve.back().value);
  return o;
}

Output cmd_jump(const RunConfig& cfg, const Params& p, const Units&) {
  JumpConfig jc = jump_config_from_json(load_config(p.config), p.config);
  if (!p.eps.empty()) jc.eps = parse_range(p.eps);
  if (p.jump_nmax > 0) jc.n_max = p.jump_nmax;
  if (p.jump_tol > 0) jc.tol = p.jump_tol;
  if (jc.eps.empty()) jc.eps = {0.0};
  const SchottkySL2 base(jc.base);
  const auto rows = scan_dimension_jump(base, jc.direction, jc.eps, jc.n_max, jc.tol, cfg.seed);
  Output o;
  o.params = {{"config", p.config}, {"nmax", std::to_string(jc.n_max)}, {"tol", fmt(jc.tol)},
              {"words", "reduced free-group words"}, {"pingpong_radius", fmt(base.radius())}};
  o.columns = {{"eps", ""}, {"irreducible", "probe"}, {"inconclusive", "probe"}, {"sA", ""},
               {"sA_prediction_at_zero", "min(2 delta0, delta0 + 1/2)"}, {"delta0", ""}};
  for (const JumpRow& r : rows)
    o.rows.push_back({r.eps, r.irreducibility.irreducible, r.irreducibility.inconclusive, r.s_a,
                      r.prediction ? json(*r.prediction) : json(nullptr),
                      r.delta0 ? json(*r.delta0) : json(nullptr)});
  for (const JumpRow& r : rows)
    if (r.prediction) {
      o.summary["sA_at_zero"] = r.s_a;
      o.summary["prediction_at_zero"] = *r.prediction;
      o.summary["delta0"] = *r.delta0;
      o.line = "eps = 0: sA = " + fmt(r.s_a) + ", prediction " + fmt(*r.prediction);
    }
  return o;
}

Output cmd_probe(const RunConfig& cfg, const Params& p, const Units& u) {
  Output o;
  o.params = {{"kind", p.kind}, {"gens", p.gens}};
  if (p.kind == "separation") {
    const AtomicMeasure nu = resolve_measure(p.gens);
    const SeparationResult s = exponential_separation_probe(nu, p.n);
    o.params.push_back({"n", std::to_string(p.n)});
    o.params.push_back({"metric", "Frobenius distance (proxy for the invariant metric)"});
    o.columns = {{"n", ""}, {"words", ""}, {"min_dist", "Frobenius"}, {"log_rate", "nats per step"},
                 {"witness_a", "atoms 1.."}, {"witness_b", "atoms 1.."}};
    o.rows.push_back({p.n, s.words, std::isfinite(s.min_dist) ? json(s.min_dist) : json(nullptr),
                      std::isfinite(s.log_rate) ? json(s.log_rate) : json(nullptr), word_string(s.witness_a),
                      word_string(s.witness_b)});
    o.line = "min distance " + fmt(s.min_dist);
  } else if (p.kind == "guivarch") {
    const AtomicMeasure nu = resolve_measure(p.gens);
    const StationarySample s = sample_stationary(nu, p.count, p.burn_in, cfg.seed, false);
    std::vector<double> radii;
    for (int k = 1; k <= 16; ++k) radii.push_back(std::pow(2.0, -k));
    o.columns = {{"hyperplane", ""}, {"r", ""}, {"mass", ""}, {"count", ""}, {"beta_hat", ""}};
    CounterRng rng(cfg.seed, 1u << 20);
    double min_beta = INFINITY;
    for (int h = 0; h < p.hyperplanes; ++h) {
      const ProjHyperplane W(random_unit_vector(rng));
      const GuivarchResult g = guivarch_probe(s, W, radii);
      for (const GuivarchRow& r : g.rows) o.rows.push_back({h, r.r, r.mass, r.count, g.beta_hat});
      min_beta = std::min(min_beta, g.beta_hat);
    }
    o.summary["min_beta_hat"] = min_beta;
    o.line = "min beta_hat over hyperplanes " + fmt(min_beta);
  } else if (p.kind == "irreducibility") {
    const AtomicMeasure nu = resolve_measure(p.gens);
    const IrreducibilityResult r = irreducibility_probe(nu.matrices(), p.trials, cfg.seed);
    o.columns = {{"irreducible", ""}, {"inconclusive", ""}, {"algebra_dim", ""}, {"line", ""}, {"plane_normal", ""}};
    o.rows.push_back({r.irreducible, r.inconclusive, r.algebra_dim, r.line ? json(vec_string(*r.line)) : json(nullptr),
                      r.plane_normal ? json(vec_string(*r.plane_normal)) : json(nullptr)});
    o.line = r.irreducible ? "irreducible" : "reducible";
  } else if (p.kind == "anosov-gap") {
    const AtomicMeasure nu = resolve_measure(p.gens);
    const GapTable t = GapTable::enumerate(make_words(nu.matrices(), p.words, p.run_cap), p.nmax);
    o.params.push_back({"words", t.system().describe()});
    o.columns = {{"n", ""}, {"min_chi1_over_n", u.name()}, {"mean_chi1_over_n", u.name()}, {"witness", ""}};
    for (const GapScanRow& r : anosov_gap_scan(t))
      o.rows.push_back({r.n, u(r.min_rate), u(r.mean_rate), letters_string(t.system(), r.witness)});
    o.line = "min chi1/n at n = " + std::to_string(p.nmax) + ": " + fmt(u(anosov_gap_scan(t).back().min_rate));
  } else if (p.kind == "dimension") {
    double h = p.h, c1 = p.chi1, c2 = p.chi2;
    EntropyProvenance prov = p.exact_h ? EntropyProvenance::Exact : EntropyProvenance::Surrogate;
    if (h < 0 || c1 < 0 || c2 < 0) {
      const AtomicMeasure nu = resolve_measure(p.gens);
      const LyapunovEstimate e = lyapunov_spectrum(nu, p.steps, p.chains, cfg.seed);
      const int n = std::min(p.nmax, WordSystem::free_semigroup(nu.matrices()).max_depth());
      const EntropyResult er = random_walk_entropy(nu, n);
      if (h < 0) {
        h = er.h_rw;
        const bool free = er.distinct.back() == static_cast<std::size_t>(std::llround(std::pow(nu.size(), n)));
        prov = er.exact && free ? EntropyProvenance::Exact : EntropyProvenance::Surrogate;
      }
      if (c1 < 0) c1 = e.chi[0];
      if (c2 < 0) c2 = e.chi[1];
    }
    const DimReport r = make_dim_report(h, prov, c1, c2);
    o.columns = {{"h", "nats"}, {"h_provenance", ""}, {"chi1", "nats"}, {"chi2", "nats"}, {"dim_ly", ""},
                 {"clipped", ""}, {"proj_pred", ""}, {"gamma1", ""}, {"gamma2", ""}};
    o.rows.push_back({r.h, to_string(r.h_provenance), r.chi1, r.chi2, r.dim_ly, r.clipped, r.proj_pred,
                      r.gamma ? json(r.gamma->first) : json(nullptr), r.gamma ? json(r.gamma->second) : json(nullptr)});
    o.line = "dim_LY = " + fmt(r.dim_ly) + " (" + to_string(r.h_provenance) + ")";
  }
  return o;
}

void write_error(std::ostream& err, const std::string& code, const std::string& message, int exit_code,
                 const std::string& path = {}) {
  json e{{"error", code}, {"message", message}, {"exit", exit_code}};
  if (!path.empty()) e["path"] = path;
  err << e.dump() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  Params p;
  cfg.argv = args;

  CLI::App app{"Projective dynamics and dimension experiments for SL3(R) random walks", "projdim"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", cfg.seed, "RNG seed (Philox4x32-10)");
  app.add_option("--threads", cfg.threads, "Worker threads, 0 = hardware parallelism");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--log-base", cfg.log_base, "Report entropies and exponents in this base (default e)")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", cfg.out, "Output file (default stdout)");

  auto gens_opt = [&](CLI::App* s) {
    s->add_option("--gens,--measure", p.gens, "Builtin family (rauzy, diag-test, schottky2(l,t)) or config file");
  };

  auto* lyap = app.add_subcommand("lyapunov", "Lyapunov spectrum by QR iteration");
  gens_opt(lyap);
  lyap->add_option("--steps", p.steps)->check(CLI::Range(1000L, 1000000000L));
  lyap->add_option("--chains", p.chains)->check(CLI::Range(1, 4096));
  lyap->add_option("--qr-period", p.qr_period)->check(CLI::Range(1, 1000));

  auto* ent = app.add_subcommand("entropy", "Random-walk entropy H(nu^{*n})/n");
  gens_opt(ent);
  ent->add_option("--nmax", p.nmax)->check(CLI::Range(1, 64));
  ent->add_flag("--separation", p.separation, "Also run the exponential separation probe");

  auto* stat = app.add_subcommand("stationary", "Sample the stationary measure");
  gens_opt(stat);
  stat->add_option("--count", p.count)->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  stat->add_option("--burn-in", p.burn_in)->check(CLI::Range(50, 1000000));
  stat->add_flag("--inverse", p.inverse, "Sample mu^- using the inverse walk");

  auto* aff = app.add_subcommand("affinity", "Affinity exponent via pressure bisection");
  gens_opt(aff);
  aff->add_option("--nmax", p.nmax)->check(CLI::Range(1, 64));
  aff->add_option("--tol", p.tol)->check(CLI::PositiveNumber);
  aff->add_option("--words", p.words)->check(CLI::IsMember({"semigroup", "group", "induced"}));
  aff->add_option("--run-cap", p.run_cap)->check(CLI::Range(1, 64));
  aff->add_option("--s-grid", p.s_grid, "Values of s for the pressure table, a:b:c");

  auto* rz = app.add_subcommand("rauzy", "Rauzy gasket tools");
  rz->require_subcommand(1);
  auto* cover = rz->add_subcommand("cover", "Cylinder triangles A_w Delta");
  cover->add_option("--depth", p.depth)->check(CLI::Range(0, 12));
  auto* rdim = rz->add_subcommand("dim", "Box-counting dimension of a gasket sample");
  rdim->add_option("--points", p.points)->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  rdim->add_option("--levels", p.levels, "Grid levels a..b");
  rdim->add_option("--burn-in", p.burn_in)->check(CLI::Range(50, 1000000));

  auto* pe = app.add_subcommand("project-entropy", "Entropy dimension of a projected stationary sample");
  gens_opt(pe);
  pe->add_option("--count", p.count)->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  pe->add_option("--burn-in", p.burn_in)->check(CLI::Range(50, 1000000));
  pe->add_option("--q", p.q)->check(CLI::Range(2, 64));
  pe->add_option("--levels", p.levels, "Levels a..b");
  pe->add_option("--direction", p.direction, "Kernel direction x,y,z (default: a point of mu^-)");
  pe->add_flag("--predict", p.predict, "Also estimate min(1, h_RW / chi1)");

  auto* jump = app.add_subcommand("jump", "Dimension-jump scan over a perturbation family");
  jump->add_option("--config", p.config, "Family file (TOML or JSON)")->required();
  jump->add_option("--eps", p.eps, "Perturbation grid a:b:c");
  jump->add_option("--nmax", p.jump_nmax)->check(CLI::Range(1, 64));
  jump->add_option("--tol", p.jump_tol)->check(CLI::PositiveNumber);

  auto* probe = app.add_subcommand("probe", "Diagnostic probes");
  gens_opt(probe);
  probe->add_option("--kind", p.kind)
      ->required()
      ->check(CLI::IsMember({"separation", "guivarch", "irreducibility", "anosov-gap", "dimension"}));
  probe->add_option("--n", p.n)->check(CLI::Range(1, 64));
  probe->add_option("--nmax", p.nmax)->check(CLI::Range(1, 64));
  probe->add_option("--count", p.count)->check(CLI::Range(std::size_t{1}, std::size_t{100000000}));
  probe->add_option("--burn-in", p.burn_in)->check(CLI::Range(50, 1000000));
  probe->add_option("--hyperplanes", p.hyperplanes)->check(CLI::Range(1, 100000));
  probe->add_option("--trials", p.trials)->check(CLI::Range(1, 100000));
  probe->add_option("--words", p.words)->check(CLI::IsMember({"semigroup", "group", "induced"}));
  probe->add_option("--run-cap", p.run_cap)->check(CLI::Range(1, 64));
  probe->add_option("--steps", p.steps)->check(CLI::Range(1000L, 1000000000L));
  probe->add_option("--chains", p.chains)->check(CLI::Range(1, 4096));
  probe->add_option("--entropy", p.h, "Entropy h in nats");
  probe->add_option("--chi1", p.chi1);
  probe->add_option("--chi2", p.chi2);
  probe->add_flag("--exact-h", p.exact_h, "Mark a supplied h as exact");

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    write_error(err, "ParseError", e.what(), 2);
    return 2;
  }

  const Units units{cfg.log_base == std::exp(1.0) ? 0.0 : cfg.log_base};
  try {
    set_thread_count(cfg.threads);
    Output o;
    if (*lyap) { cfg.subcommand = "lyapunov"; o = cmd_lyapunov(cfg, p, units); }
    else if (*ent) { cfg.subcommand = "entropy"; o = cmd_entropy(cfg, p, units); }
    else if (*stat) { cfg.subcommand = "stationary"; o = cmd_stationary(cfg, p, units); }
    else if (*aff) { cfg.subcommand = "affinity"; o = cmd_affinity(cfg, p, units); }
    else if (*cover) { cfg.subcommand = "rauzy-cover"; o = cmd_rauzy_cover(cfg, p, units); }
    else if (*rdim) { cfg.subcommand = "rauzy-dim"; o = cmd_rauzy_dim(cfg, p, units); }
    else if (*pe) { cfg.subcommand = "project-entropy"; o = cmd_project_entropy(cfg, p, units); }
    else if (*jump) { cfg.subcommand = "jump"; o = cmd_jump(cfg, p, units); }
    else if (*probe) { cfg.subcommand = "probe"; o = cmd_probe(cfg, p, units); }

    if (cfg.out.empty()) {
      emit(cfg, o, out);
      err << "projdim " << cfg.subcommand << ": " << o.line << "\n";
    } else {
      std::ofstream f(cfg.out);
      if (!f) throw ConfigFileError(cfg.out, "cannot write output file");
      emit(cfg, o, f);
      out << "projdim " << cfg.subcommand << ": " << o.line << " -> " << cfg.out << "\n";
    }
    return 0;
  } catch (const ConfigFileError& e) {
    write_error(err, to_string(e.code()), e.what(), 2, e.path());
    return 2;
  } catch (const Error& e) {
    const int code = is_numerical(e.code()) ? 3 : 2;
    write_error(err, to_string(e.code()), e.what(), code);
    return code;
  } catch (const std::bad_alloc&) {
    write_error(err, "Overflow", "out of memory", 3);
    return 3;
  }
}

}  // namespace projdim
