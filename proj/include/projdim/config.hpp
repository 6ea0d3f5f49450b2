#pragma once

namespace projdim {

/// Every numerical threshold used by the library, in one place.
struct Tolerances {
  double det_class = 1e-9;           // |det - (+-1)| for DetClass
  double singular_det = 1e-12;       // cartan: |det g| below this is singular
  double degenerate_gap = 1e-9;      // sigma1/sigma2 - 1 below this: flagged
  double jacobi = 1e-14;             // off-diagonal convergence of Jacobi sweeps
  double kernel_hit = 1e-14;         // act: ||g v|| below this
  double reducible_direction = 1e-9; // ul_decompose: d(g^-1 V, V^perp)
  double at_kernel = 1e-12;          // project_orth: d(x, V)
  double bad_circle = 1e-12;         // frame: |<V, E1>|
  double sample_kernel = 1e-9;       // project_sample: points this close to V dropped
  double weight_sum = 1e-12;
  double exact_match = 1e-12;        // exact forms vs float matrices
  double dedup_resolution = 1e-9;    // float product hashing grid
  double unimodular = 1e-9;
  double sl2_det = 1e-9;
  double rank = 1e-8;                // irreducibility probe rank tolerance
};

const Tolerances& default_tolerances();

}  // namespace projdim
