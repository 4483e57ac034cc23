// Rational cone membership by an exact phase-one simplex.
#include <gmpxx.h>

#include <map>
#include <mutex>

#include "wdp/effectivity.hpp"

namespace wdp {

namespace {

// Is b a nonnegative rational combination of the columns of a?
// Dense tableau with one artificial variable per row, Bland's rule.
bool feasible(const std::vector<std::vector<long>>& a, const std::vector<long>& b) {
  const int rows = static_cast<int>(b.size());
  const int cols = a.empty() ? 0 : static_cast<int>(a[0].size());
  const int width = cols + rows + 1;  // structural, artificial, rhs
  std::vector<std::vector<mpq_class>> t(rows, std::vector<mpq_class>(width, 0));
  for (int i = 0; i < rows; ++i) {
    const int sign = b[i] < 0 ? -1 : 1;
    for (int j = 0; j < cols; ++j)
      t[i][j] = sign * a[i][j];
    t[i][cols + i] = 1;
    t[i][width - 1] = sign * b[i];
  }
  std::vector<int> basis(rows);
  for (int i = 0; i < rows; ++i)
    basis[i] = cols + i;
  // Objective: minimize the sum of artificials; reduced costs kept in obj.
  std::vector<mpq_class> obj(width, 0);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < width; ++j)
      if (j < cols || j == width - 1)
        obj[j] -= t[i][j];
  for (;;) {
    int enter = -1;
    for (int j = 0; j < cols + rows; ++j)
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    if (enter < 0)
      break;
    int leave = -1;
    mpq_class best;
    for (int i = 0; i < rows; ++i) {
      if (t[i][enter] <= 0)
        continue;
      mpq_class ratio = t[i][width - 1] / t[i][enter];
      if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave < 0)
      break;  // unbounded direction cannot occur in phase one
    const mpq_class piv = t[leave][enter];
    for (auto& v : t[leave])
      v /= piv;
    for (int i = 0; i < rows; ++i) {
      if (i == leave || t[i][enter] == 0)
        continue;
      const mpq_class f = t[i][enter];
      for (int j = 0; j < width; ++j)
        t[i][j] -= f * t[leave][j];
    }
    if (obj[enter] != 0) {
      const mpq_class f = obj[enter];
      for (int j = 0; j < width; ++j)
        obj[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }
  return obj[width - 1] == 0;
}

}  // namespace

bool is_absolutely_effective(const PicardLattice& lat, const DivisorClass& d) {
  lat.require(d);
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::vector<DivisorClass>> cache;
  std::vector<DivisorClass> gens;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<int>(lat.kind()), lat.rank());
    auto it = cache.find(key);
    if (it == cache.end())
      it = cache.emplace(key, enumerate_classes(lat, -1)).first;
    gens = it->second;
  }
  const int r = lat.rank();
  std::vector<std::vector<long>> a(r, std::vector<long>(gens.size()));
  for (int i = 0; i < r; ++i)
    for (std::size_t j = 0; j < gens.size(); ++j)
      a[i][j] = gens[j][i];
  std::vector<long> b(r);
  for (int i = 0; i < r; ++i)
    b[i] = d[i];
  return feasible(a, b);
}

}  // namespace wdp
