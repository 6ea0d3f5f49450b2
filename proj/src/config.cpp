#include "projdim/config.hpp"

namespace projdim {

const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace projdim
