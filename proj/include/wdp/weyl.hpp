#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "wdp/picard.hpp"

namespace wdp {

class ToricSystem;
class SurfaceModel;

// D + (D.R) R for a (-2)-class R.
DivisorClass reflect(const PicardLattice& lat, const DivisorClass& r, const DivisorClass& d);

// Lattice isometry fixing K, stored as the images of the basis vectors.
class WeylElement {
public:
  static WeylElement identity(const PicardLattice& lat);
  static WeylElement reflection(const PicardLattice& lat, const DivisorClass& r);
  // Product s_{g_m} ... s_{g_1} of generators, g_1 applied first.
  static WeylElement from_word(const PicardLattice& lat, const std::vector<DivisorClass>& gens,
                               const std::vector<int>& word);
  // Images of the basis vectors; with `check`, verified to preserve the
  // form and K.
  static WeylElement from_images(const PicardLattice& lat, std::vector<DivisorClass> images,
                                 std::vector<int> word = {}, bool check = true);

  const PicardLattice& lattice() const { return lat_; }
  const std::vector<DivisorClass>& images() const { return images_; }
  const std::vector<int>& word() const { return word_; }

  DivisorClass apply(const DivisorClass& d) const;
  // (this * other)(D) = this(other(D)).
  WeylElement compose(const WeylElement& other) const;

  bool preserves_form() const;
  bool fixes_canonical() const;
  long determinant() const;

  friend bool operator==(const WeylElement& a, const WeylElement& b) { return a.images_ == b.images_; }

private:
  WeylElement(PicardLattice lat, std::vector<DivisorClass> images, std::vector<int> word)
      : lat_(std::move(lat)), images_(std::move(images)), word_(std::move(word)) {}
  PicardLattice lat_;
  std::vector<DivisorClass> images_;
  std::vector<int> word_;
};

// Simple roots generating W of a blow-up lattice: E_i - E_{i+1}, then
// L - E1 - E2 - E3 when there are at least three points.
std::vector<DivisorClass> weyl_generators(const PicardLattice& lat);

// Enumeration plan for reverse search over W. The marker v = L + sum i E_i
// pairs positively with every generator, so it lies in the open fundamental
// chamber and w -> w(v) is injective. Each element w(v) has as parent
// s_j(w(v)) for its least descent j (generator with w(v).a_j < 0); children
// are visited depth-first, so no visited set is needed.
struct WeylPlan {
  PicardLattice lattice;
  std::vector<DivisorClass> gens;
  std::vector<std::vector<int>> gram;  // a_i . a_j
  std::vector<long> marker_pairing;    // v . a_i

  explicit WeylPlan(const PicardLattice& lat);
  int size() const { return static_cast<int>(gens.size()); }
};

// Visitor contract for walk(): descend(depth, g) derives the state at depth
// from the state at depth - 1 by applying generator g on the left;
// visit(depth) processes the element whose state sits at depth.
template <class Visitor>
void walk_from(const WeylPlan& plan, Visitor& v, const std::vector<long>& start, int start_depth,
               std::uint64_t* count = nullptr) {
  const int k = plan.size();
  // Depth is bounded by the number of positive roots (120 for E8).
  constexpr int kMaxDepth = 128;
  std::vector<long> c(static_cast<std::size_t>(kMaxDepth + 1) * k);
  std::vector<int> next(kMaxDepth + 1, 0);
  std::copy(start.begin(), start.end(), c.begin());
  int top = 0;
  while (top >= 0) {
    if (next[top] >= k) {
      --top;
      continue;
    }
    const int i = next[top]++;
    const long* x = &c[static_cast<std::size_t>(top) * k];
    const long ci = x[i];
    if (ci <= 0)
      continue;  // i is a descent: s_i leads to the parent side
    // y = s_i(x): y.a_j = x.a_j + (x.a_i)(a_i.a_j); i must be y's least descent.
    bool child = true;
    for (int j = 0; j < i && child; ++j)
      child = x[j] + ci * plan.gram[i][j] > 0;
    if (!child)
      continue;
    long* y = &c[static_cast<std::size_t>(top + 1) * k];
    for (int j = 0; j < k; ++j)
      y[j] = x[j] + ci * plan.gram[i][j];
    ++top;
    next[top] = 0;
    const int depth = start_depth + top;
    v.descend(depth, i);
    v.visit(depth);
    if (count)
      ++*count;
  }
}

// Task split for sharded or resumable walks: all nodes at `depth` (in walk
// order) become independent subtrees; shallower nodes form task 0's head.
struct WeylTask {
  std::vector<int> word;  // generators from the identity, first applied first
  std::vector<long> pairing;
};
struct WeylSplit {
  std::vector<std::vector<int>> head;  // words of nodes above the split depth
  std::vector<WeylTask> tasks;
};
WeylSplit split_walk(const WeylPlan& plan, int depth);

// Full walk with a visitor; returns the number of elements visited.
template <class Visitor>
std::uint64_t walk(const WeylPlan& plan, Visitor& v) {
  std::uint64_t count = 1;
  v.visit(0);
  walk_from(plan, v, plan.marker_pairing, 0, &count);
  return count;
}

// Replays a task's prefix on a visitor (descend only), then walks its subtree
// including the task root.
template <class Visitor>
std::uint64_t walk_task(const WeylPlan& plan, Visitor& v, const WeylTask& t) {
  for (std::size_t d = 0; d < t.word.size(); ++d)
    v.descend(static_cast<int>(d + 1), t.word[d]);
  std::uint64_t count = 1;
  v.visit(static_cast<int>(t.word.size()));
  walk_from(plan, v, t.pairing, static_cast<int>(t.word.size()), &count);
  return count;
}

// Roots and lines of a lattice with the permutations induced by generators.
struct ActionTables {
  std::vector<DivisorClass> roots, lines;
  std::unordered_map<DivisorClass, int, DivisorClassHash> root_index, line_index;
  std::vector<std::vector<std::uint16_t>> root_perm, line_perm;  // [gen][index]
  std::vector<int> root_negation;                                // index of -R

  ActionTables(const PicardLattice& lat, const std::vector<DivisorClass>& gens);
  int root(const DivisorClass& r) const;  // -1 when absent
  int line(const DivisorClass& c) const;
};
const ActionTables& action_tables(int degree);

// Memory budget for orbit bookkeeping, from WDP_MEMORY_BUDGET_MB (default
// 1024). Throws ResourceError naming `what` when `bytes` exceeds it.
void require_memory(std::uint64_t bytes, const std::string& what);

// Streams every element once, in walk order.
std::uint64_t enumerate_group(int degree, const std::function<void(const WeylElement&)>& fn);
// Order by walking the whole group (cached per degree).
std::uint64_t group_order(int degree);

// Streams w(A0) for every w. With check_free, hashes all images and throws
// InvariantError on a repeat (freeness violated).
std::uint64_t orbit_of_toric_system(const ToricSystem& a0, const std::function<void(const ToricSystem&)>& fn,
                                    bool check_free = false);

// Elements w with w(roots) = roots as a set.
std::vector<WeylElement> stabilizer_of_root_set(int degree, const std::vector<DivisorClass>& roots);
std::uint64_t stabilizer_order_of_root_set(int degree, const std::vector<DivisorClass>& roots);

}  // namespace wdp
