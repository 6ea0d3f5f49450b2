#pragma once

#include <optional>
#include <string>
#include <utility>

namespace projdim {

enum class EntropyProvenance { Exact, Surrogate };

const char* to_string(EntropyProvenance p);

/// h / chi1 if h <= chi1, else 1 + (h - chi1) / chi2. Requires
/// 0 < chi1 < chi2 and h >= 0 (BadSpectrum otherwise). Not clipped.
double lyapunov_dimension(double h, double chi1, double chi2);

/// gamma1 = min(1, h / chi1), gamma2 = (h - gamma1 chi1) / chi2.
std::pair<double, double> ly_split(double h, double chi1, double chi2);

/// min(2 delta0, delta0 + 1/2) for delta0 in [0, 1].
double fuchsian_jump_prediction(double delta0);

struct DimReport {
  double h = 0.0;
  EntropyProvenance h_provenance = EntropyProvenance::Surrogate;
  double chi1 = 0.0, chi2 = 0.0;
  double dim_ly = 0.0;  // clipped to [0, 2]
  bool clipped = false;
  double proj_pred = 0.0;  // min(1, h / chi1)
  std::optional<std::pair<double, double>> gamma;
};

DimReport make_dim_report(double h, EntropyProvenance prov, double chi1, double chi2);

}  // namespace projdim
