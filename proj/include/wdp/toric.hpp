#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wdp/surface.hpp"

namespace wdp {

// Cyclically ordered A_1..A_n. Indices in the public API are 1-based and
// taken mod n, matching the A_k notation; window(k, l) is the cyclic segment
// A_k + A_{k+1} + ... + A_l with l != k - 1.
class ToricSystem {
public:
  ToricSystem(PicardLattice lattice, std::vector<DivisorClass> terms);

  const PicardLattice& lattice() const { return lat_; }
  int size() const { return static_cast<int>(terms_.size()); }
  const std::vector<DivisorClass>& terms() const { return terms_; }
  // 1-based, cyclic.
  const DivisorClass& at(int i) const { return terms_[index(i)]; }
  int index(int i) const { return ((i - 1) % size() + size()) % size(); }

  DivisorClass window(int k, int l) const;
  // Via the identity A_{k..l}^2 + 2 = sum (A_i^2 + 2); checked against the
  // direct square.
  long window_square(int k, int l) const;
  std::vector<int> squares() const;

  friend bool operator==(const ToricSystem& a, const ToricSystem& b) { return a.terms_ == b.terms_; }

private:
  PicardLattice lat_;
  std::vector<DivisorClass> terms_;
};

// Lists each violated axiom with its indices; empty when valid.
std::vector<std::string> axiom_violations(const PicardLattice& lat, const std::vector<DivisorClass>& terms);
// Throws InputError listing the violations.
ToricSystem validate(const PicardLattice& lat, std::vector<DivisorClass> terms);
ToricSystem parse_toric(const PicardLattice& lat, const std::vector<std::string>& terms);
std::vector<std::string> format_toric(const ToricSystem& a);

// perm_k needs A_k^2 = -2; k is 1-based and cyclic.
ToricSystem perm(const ToricSystem& a, int k);
ToricSystem shift(const ToricSystem& a);
ToricSystem symmetry(const ToricSystem& a);
// Elementary augmentation augm_m, 1 <= m <= n+1, on the blow-up lattice with
// one more point; E is the new last basis vector.
ToricSystem augment(const ToricSystem& a, int m);

// The unique toric system (L, L, L) on the plane.
ToricSystem plane_system();

// Exceptionality. Reference checkers test every relevant window against the
// lo/slo criteria; optimized ones test only the windows singled out by the
// (-2)-window theorem. Witness is the first violating window (1-based k, l).
enum class CheckMethod { kReference, kOptimized, kAuto };

struct CheckResult {
  bool ok = true;
  std::optional<std::pair<int, int>> witness;
  // True when an optimized request fell back to the reference path.
  bool fell_back = false;
};

CheckResult check_exceptional(const SurfaceModel& s, const ToricSystem& a,
                              CheckMethod m = CheckMethod::kAuto);
CheckResult check_strong(const SurfaceModel& s, const ToricSystem& a, CheckMethod m = CheckMethod::kAuto);
CheckResult check_cyclic_strong(const SurfaceModel& s, const ToricSystem& a,
                                CheckMethod m = CheckMethod::kAuto);
bool is_exceptional(const SurfaceModel& s, const ToricSystem& a);
bool is_strong_exceptional(const SurfaceModel& s, const ToricSystem& a);
bool is_cyclic_strong_exceptional(const SurfaceModel& s, const ToricSystem& a);

// Augmentation detection.
std::optional<int> elementary_augmentation_index(const SurfaceModel& s, const ToricSystem& a);
// Contracts A_i, which must be an irreducible (-1)-curve: returns the model
// of the blow-down and the toric system A' with A = augm_i(A').
std::pair<SurfaceModel, ToricSystem> blow_down(const SurfaceModel& s, const ToricSystem& a, int i);

// Searches the closure of A under permutations for a system with an
// irreducible (-1)-curve as a term. Returns the permutation word applied
// (in order) and the term index.
struct ClosureHit {
  std::vector<int> perms;
  int index = 0;
  ToricSystem system;
};
std::optional<ClosureHit> find_augmentation_in_closure(const SurfaceModel& s, const ToricSystem& a,
                                                       std::size_t limit = 200000);

struct AugmentationStep {
  std::vector<int> perms;  // permutations applied before contracting
  int index = 0;           // contracted term
  int degree_after = 0;
};
// Repeatedly find and contract an irreducible (-1)-curve until a system on a
// surface of degree >= 8 remains. nullopt when some stage has no candidate.
std::optional<std::vector<AugmentationStep>> decompose(const SurfaceModel& s, const ToricSystem& a);

}  // namespace wdp
