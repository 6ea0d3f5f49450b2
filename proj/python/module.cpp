#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "projdim/affinity.hpp"
#include "projdim/anosov.hpp"
#include "projdim/cli.hpp"
#include "projdim/decomp.hpp"
#include "projdim/dimension.hpp"
#include "projdim/error.hpp"
#include "projdim/io.hpp"
#include "projdim/parallel.hpp"
#include "projdim/partitions.hpp"
#include "projdim/randwalk.hpp"
#include "projdim/rauzy.hpp"

namespace py = pybind11;
using namespace projdim;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

Mat3 to_mat3(const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != 3 || a.shape(1) != 3) throw py::value_error("expected a 3x3 matrix");
  const auto r = a.unchecked<2>();
  Mat3 m;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m(i, j) = r(i, j);
  return m;
}

Vec3 to_vec3(const Array& a) {
  if (a.ndim() != 1 || a.shape(0) != 3) throw py::value_error("expected a vector of length 3");
  return {a.at(0), a.at(1), a.at(2)};
}

Array from_mat3(const Mat3& m) {
  Array out({3, 3});
  auto w = out.mutable_unchecked<2>();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w(i, j) = m(i, j);
  return out;
}

Array from_vec3(const Vec3& v) {
  Array out(3);
  auto w = out.mutable_unchecked<1>();
  for (int i = 0; i < 3; ++i) w(i) = v[static_cast<std::size_t>(i)];
  return out;
}

// A builtin name, a measure file, or a sequence of 3x3 matrices.
AtomicMeasure measure_of(const py::object& gens) {
  if (py::isinstance<py::str>(gens)) return resolve_measure(gens.cast<std::string>());
  std::vector<Mat3> ms;
  for (const auto& item : gens) ms.push_back(to_mat3(item.cast<Array>()));
  return AtomicMeasure::uniform(ms);
}

WordSystem words_of(const std::vector<Mat3>& gens, const std::string& words, int cap) {
  if (words == "semigroup") return WordSystem::free_semigroup(gens);
  if (words == "group") return WordSystem::free_group(gens);
  if (words == "induced") return WordSystem::run_length_induced(gens, cap);
  throw py::value_error("words must be 'semigroup', 'group' or 'induced'");
}

py::object optional_list(const std::vector<std::optional<double>>& v) {
  py::list out;
  for (const auto& x : v) out.append(x ? py::object(py::float_(*x)) : py::object(py::none()));
  return out;
}

}  // namespace

PYBIND11_MODULE(_projdim, m) {
  m.doc() = "Projective random walks, affinity exponents and entropy dimension in P(R^3)";

  static py::exception<Error> error(m, "ProjdimError", PyExc_RuntimeError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error.ptr(), (std::string(to_string(e.code())) + ": " + e.what()).c_str());
    }
  });

  m.def("set_threads", &set_thread_count, py::arg("n"), "Worker threads for parallel loops; 0 means hardware.");

  m.def("generators", [](const std::string& name) {
    py::list out;
    for (const Mat3& g : builtin_generators(name)) out.append(from_mat3(g));
    return out;
  }, py::arg("name"));

  m.def("singular_values", [](const Array& g) { return from_vec3(singular_values(to_mat3(g))); }, py::arg("g"));

  m.def("cartan", [](const Array& a) {
    const CartanData c = cartan(to_mat3(a));
    py::dict d;
    d["sigma"] = from_vec3(c.sigma);
    d["k_left"] = from_mat3(c.k_left);
    d["k_right"] = from_mat3(c.k_right);
    d["v_plus"] = from_vec3(c.v_plus.rep());
    d["h_minus_normal"] = from_vec3(c.h_minus.normal().rep());
    d["chi"] = py::make_tuple(c.chi[0], c.chi[1]);
    return d;
  }, py::arg("g"));

  m.def("proj_dist", [](const Array& a, const Array& b) {
    return proj_dist(ProjPoint(to_vec3(a)), ProjPoint(to_vec3(b)));
  }, py::arg("a"), py::arg("b"));

  m.def("ul_decompose", [](const Array& g, const Array& v) {
    const ULFactors f = ul_decompose(to_mat3(g), ProjPoint(to_vec3(v)));
    py::dict d;
    d["lambda"] = f.lambda;
    d["u"] = from_mat3(f.u());
    d["l"] = from_mat3(f.l());
    d["frame"] = from_mat3(f.frame);
    d["h"] = py::make_tuple(py::make_tuple(f.h.a, f.h.b), py::make_tuple(f.h.c, f.h.d));
    d["reconstruction"] = from_mat3(f.reconstruct());
    return d;
  }, py::arg("g"), py::arg("v"));

  m.def("lyapunov", [](const py::object& gens, long steps, int chains, std::uint64_t seed) {
    const LyapunovEstimate e = lyapunov_spectrum(measure_of(gens), steps, chains, seed);
    py::dict d;
    d["lambda"] = from_vec3(e.lambda);
    d["stderr"] = from_vec3(e.stderr_lambda);
    d["chi"] = py::make_tuple(e.chi[0], e.chi[1]);
    return d;
  }, py::arg("gens") = "rauzy", py::arg("steps") = 100000, py::arg("chains") = 8, py::arg("seed") = 1);

  m.def("walk_entropy", [](const py::object& gens, int max_n) {
    const EntropyResult r = random_walk_entropy(measure_of(gens), max_n);
    py::dict d;
    d["entropy"] = r.entropy;
    d["per_step"] = r.per_step;
    d["distinct"] = r.distinct;
    d["h_rw"] = r.h_rw;
    d["exact"] = r.exact;
    return d;
  }, py::arg("gens") = "rauzy", py::arg("max_n") = 8);

  m.def("affinity_exponent", [](const py::object& gens, int n_max, double tol, const std::string& words, int run_cap) {
    const AtomicMeasure nu = measure_of(gens);
    const CriticalExponent c = critical_exponent(GapTable::enumerate(words_of(nu.matrices(), words, run_cap), n_max), tol);
    py::dict d;
    d["s_a"] = c.s_a;
    d["bracket"] = py::make_tuple(c.lo, c.hi);
    d["per_n_roots"] = optional_list(c.per_n_roots);
    d["pressure_at_1"] = c.p_hat_1;
    d["pressure_at_2"] = c.p_hat_2;
    d["words"] = c.words;
    return d;
  }, py::arg("gens") = "rauzy", py::arg("n_max") = 8, py::arg("tol") = 1e-6, py::arg("words") = "semigroup",
     py::arg("run_cap") = 6);

  m.def("sl2_exponent", [](double lambda, double theta, int n_max, double tol) {
    const Sl2Exponent e = sl2_critical_exponent(SchottkySL2::symmetric(lambda, theta), n_max, tol);
    py::dict d;
    d["delta0"] = e.delta0;
    d["prediction"] = fuchsian_jump_prediction(e.delta0);
    d["per_n_roots"] = optional_list(e.per_n_roots);
    return d;
  }, py::arg("lambda_"), py::arg("theta"), py::arg("n_max") = 9, py::arg("tol") = 1e-6);

  m.def("sample_stationary", [](const py::object& gens, std::size_t count, int burn_in, std::uint64_t seed, bool inverse) {
    const StationarySample s = sample_stationary(measure_of(gens), count, burn_in, seed, inverse);
    Array out({static_cast<py::ssize_t>(s.points.size()), py::ssize_t{3}});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < s.points.size(); ++i)
      for (int j = 0; j < 3; ++j) w(static_cast<py::ssize_t>(i), j) = s.points[i][j];
    return out;
  }, py::arg("gens") = "rauzy", py::arg("count") = 10000, py::arg("burn_in") = kDefaultBurnIn, py::arg("seed") = 1,
     py::arg("inverse") = false);

  m.def("gasket_chart", [](std::size_t count, int burn_in, std::uint64_t seed) {
    const GasketSample s = sample_gasket(count, burn_in, seed);
    Array out({static_cast<py::ssize_t>(s.chart.size()), py::ssize_t{2}});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < s.chart.size(); ++i) {
      w(static_cast<py::ssize_t>(i), 0) = s.chart[i][0];
      w(static_cast<py::ssize_t>(i), 1) = s.chart[i][1];
    }
    return out;
  }, py::arg("count") = 10000, py::arg("burn_in") = kDefaultBurnIn, py::arg("seed") = 1);

  m.def("box_dimension", [](const Array& pts, int k_lo, int k_hi) {
    if (pts.ndim() != 2 || pts.shape(1) != 2) throw py::value_error("expected an (N, 2) array");
    const auto r = pts.unchecked<2>();
    std::vector<Vec2> v(static_cast<std::size_t>(pts.shape(0)));
    for (py::ssize_t i = 0; i < pts.shape(0); ++i) v[static_cast<std::size_t>(i)] = {r(i, 0), r(i, 1)};
    const BoxCount b = box_counting_dimension(v, k_lo, k_hi);
    return py::make_tuple(b.slope, b.levels);
  }, py::arg("points"), py::arg("k_lo") = 4, py::arg("k_hi") = 8);

  m.def("entropy_dimension", [](const std::vector<double>& coords, int q, int n_lo, int n_hi) {
    py::list rows;
    for (const EntropyDimRow& r : entropy_dimension_curve(coords, q, n_lo, n_hi))
      rows.append(py::make_tuple(r.n, r.entropy, r.value, r.occupied, r.undersampled));
    return rows;
  }, py::arg("coords"), py::arg("q") = 2, py::arg("n_lo") = 1, py::arg("n_hi") = 10,
     "Rows (n, entropy, entropy / (n log q), occupied cells, undersampled).");

  m.def("lyapunov_dimension", &lyapunov_dimension, py::arg("h"), py::arg("chi1"), py::arg("chi2"));

  m.def("run_cli", [](const std::vector<std::string>& args) {
    std::vector<std::string> full{"projdim"};
    full.insert(full.end(), args.begin(), args.end());
    std::ostringstream out, err;
    const int code = run(full, out, err);
    return py::make_tuple(code, out.str(), err.str());
  }, py::arg("args"), "Run the command-line interface in process; returns (exit code, stdout, stderr).");
}
