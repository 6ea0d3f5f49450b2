#include "projdim/dimension.hpp"

#include <algorithm>
#include <cmath>

#include "projdim/error.hpp"

namespace projdim {

const char* to_string(EntropyProvenance p) {
  return p == EntropyProvenance::Exact ? "h_RW exact" : "h_RW surrogate";
}

namespace {

void check_spectrum(double h, double chi1, double chi2) {
  if (!std::isfinite(h) || !std::isfinite(chi1) || !std::isfinite(chi2))
    fail(ErrorCode::BadSpectrum, "non-finite entropy or exponent");
  if (!(chi1 > 0.0) || !(chi2 > chi1))
    fail(ErrorCode::BadSpectrum, "need 0 < chi1 < chi2");
  if (h < 0.0) fail(ErrorCode::BadSpectrum, "entropy must be nonnegative");
}

}  // namespace

double lyapunov_dimension(double h, double chi1, double chi2) {
  check_spectrum(h, chi1, chi2);
  return h <= chi1 ? h / chi1 : 1.0 + (h - chi1) / chi2;
}

std::pair<double, double> ly_split(double h, double chi1, double chi2) {
  check_spectrum(h, chi1, chi2);
  const double g1 = std::min(1.0, h / chi1);
  return {g1, (h - g1 * chi1) / chi2};
}

double fuchsian_jump_prediction(double delta0) {
  if (!(delta0 >= 0.0 && delta0 <= 1.0))
    fail(ErrorCode::InvalidArgument, "fuchsian_jump_prediction: delta0 outside [0, 1]");
  return std::min(2.0 * delta0, delta0 + 0.5);
}

DimReport make_dim_report(double h, EntropyProvenance prov, double chi1, double chi2) {
  DimReport r;
  r.h = h;
  r.h_provenance = prov;
  r.chi1 = chi1;
  r.chi2 = chi2;
  const double d = lyapunov_dimension(h, chi1, chi2);
  r.clipped = d > 2.0;
  r.dim_ly = std::min(d, 2.0);
  r.proj_pred = std::min(1.0, h / chi1);
  if (!r.clipped) r.gamma = ly_split(h, chi1, chi2);
  return r;
}

}  // namespace projdim
