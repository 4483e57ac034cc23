#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wdp/surface.hpp"

namespace wdp {

// One pass of the reduction loop: the divisor entering the pass, the curves
// subtracted with their multiplicities, and the rule that fired.
struct EffectivityStep {
  DivisorClass divisor;
  std::vector<std::pair<DivisorClass, int>> subtracted;
  std::string rule;
};

struct EffectivityTrace {
  std::vector<EffectivityStep> steps;
  bool verdict = false;
  // "K-positive", "root-span", "not-root-span", "nef", "nef-boundary".
  std::string rule;
  DivisorClass terminal;
  // On a root-span verdict, coordinates of the terminal divisor in the
  // simple-root basis.
  std::vector<long> root_coefficients;

  // Replays the steps and checks the certificate from scratch.
  bool replay(const SurfaceModel& s, const DivisorClass& input) const;
};

// Curve-subtraction test for effectiveness on a weak del Pezzo model:
// (1) D.K > 0 means not effective; (2) D.K = 0 means effective iff D is a
// nonnegative integer combination of the simple roots; (3) if D meets every
// negative curve nonnegatively it is nef hence effective, otherwise subtract
// the forced multiples of the violating curves and repeat.
std::pair<bool, EffectivityTrace> is_effective_traced(const SurfaceModel& s, const DivisorClass& d);
bool is_effective(const SurfaceModel& s, const DivisorClass& d);

// Short loop for anti-classes (D^2 - D.K = -2, D.K <= 0) that are
// conditionally effective; throws InputError when D.K > 0.
bool is_effective_anticlass_fast(const SurfaceModel& s, const DivisorClass& d);

// D lies in the rational cone spanned by the (-1)-classes of the lattice.
// Exact phase-one simplex over the rationals.
bool is_absolutely_effective(const PicardLattice& lat, const DivisorClass& d);

// Test oracle: search for D as a nonnegative integer combination of
// irreducible (-1)-curves, irreducible (-2)-curves and -K. Root
// multiplicities are capped by `bound`; line and -K counts are bounded by
// -K.D automatically.
bool brute_force_effective(const SurfaceModel& s, const DivisorClass& d, int bound);

// Not effective, yet kD is effective for some 2 <= k <= max_multiple.
bool is_hole(const SurfaceModel& s, const DivisorClass& d, int max_multiple = 6);

// Left-orthogonality criteria by r; D must be an r-class.
bool is_lo(const SurfaceModel& s, const DivisorClass& d);
bool is_slo(const SurfaceModel& s, const DivisorClass& d);

}  // namespace wdp
