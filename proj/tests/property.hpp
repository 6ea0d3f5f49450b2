#pragma once

// Minimal property runner: draws cases from a seeded generator and reports the
// first counterexample with its case index.

#include <doctest.h>

#include <cstdint>
#include <sstream>
#include <string>

#include "projdim/rng.hpp"

namespace prop {

template <class Gen, class Check>
void for_all(const char* name, int cases, std::uint64_t seed, Gen&& gen, Check&& check) {
  projdim::CounterRng rng(seed, 0x70726f70);
  for (int i = 0; i < cases; ++i) {
    const auto input = gen(rng);
    std::string why;
    if (!check(input, why)) {
      std::ostringstream os;
      os << name << ": case " << i << " (seed " << seed << ") fails: " << why;
      FAIL(os.str());
      return;
    }
  }
  CHECK_MESSAGE(cases > 0, name);
}

inline bool fail_with(std::string& why, const std::string& msg) {
  why = msg;
  return false;
}

}  // namespace prop
