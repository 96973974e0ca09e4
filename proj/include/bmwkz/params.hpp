// Deformation parameters for the monodromy construction.
//
// A parameter set consists of the global deformation scale kappa and one
// (k, alpha) pair per reflection conjugacy class.  Derived per class:
//   q   = exp(i pi kappa k)
//   l   = exp(i pi kappa alpha) / q
//   tau = l (1/l - q)(1/l + 1/q) / (1/q - q)      [= 1 + (1/l - l)/(1/q - q)]
//   nu  = (l - 1/l) / (1 - tau)                   [= 1/q - q]
// Genericity demands 1/l away from {q, -q, 1/q, -1/q}, q away from {1, -1},
// and tau away from 0, each by a fixed margin.
#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace bmwkz {

using cplx = std::complex<double>;

struct ClassParams {
  cplx k{1.0, 0.0};
  cplx alpha{1.0, 0.0};
};

struct DerivedScalars {
  cplx q, l, tau, nu;
};

struct ParameterSet {
  cplx kappa{0.05, 0.0};
  std::vector<ClassParams> classes;  // size 1 (odd m) or 2 (even m)

  DerivedScalars derived(int cls) const;
  // Distance from the nearest genericity violation (0 means degenerate).
  double genericity_margin() const;
};

inline constexpr double kGenericityMargin = 1e-3;

// Draws k and alpha uniformly from fixed boxes (Re in [0.5, 1.5],
// Im in [-0.25, 0.25]) with rejection until the margin is met.
// All randomness derives from the seed; identical seeds give identical sets.
ParameterSet sample_generic_parameters(std::uint64_t seed, int num_classes,
                                       cplx kappa = cplx(0.05, 0.0));

// Deterministic xoshiro-free uniform draw helper exposed for tests: maps a
// 64-bit word from std::mt19937_64 to [0,1).  (std::uniform_real_distribution
// is implementation-defined, which would break byte-identical output.)
double u64_to_unit(std::uint64_t x);

// JSON round-trip ({"kappa": [re,im], "classes": [{"k": [re,im], ...}]}).
ParameterSet parameters_from_json(const std::string& text);
std::string parameters_to_json(const ParameterSet& p);

}  // namespace bmwkz
