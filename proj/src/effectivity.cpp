#include "wdp/effectivity.hpp"

#include <gmpxx.h>

#include <cstdlib>
#include <functional>
#include <unordered_set>

#include "wdp/errors.hpp"

namespace wdp {

namespace {

// Integer coefficients of x over linearly independent vectors, or nullopt.
std::optional<std::vector<long>> solve_in_span(const std::vector<DivisorClass>& vecs,
                                               const DivisorClass& x, int rank) {
  const int k = static_cast<int>(vecs.size());
  // Augmented rank x (k+1) system, reduced to row echelon form over Q.
  std::vector<std::vector<mpq_class>> m(rank, std::vector<mpq_class>(k + 1));
  for (int i = 0; i < rank; ++i) {
    for (int j = 0; j < k; ++j)
      m[i][j] = vecs[j][i];
    m[i][k] = x[i];
  }
  int row = 0;
  std::vector<int> pivot_col;
  for (int c = 0; c < k && row < rank; ++c) {
    int p = row;
    while (p < rank && m[p][c] == 0)
      ++p;
    if (p == rank)
      continue;
    std::swap(m[p], m[row]);
    for (int i = 0; i < rank; ++i) {
      if (i == row || m[i][c] == 0)
        continue;
      mpq_class f = m[i][c] / m[row][c];
      for (int j = c; j <= k; ++j)
        m[i][j] -= f * m[row][j];
    }
    pivot_col.push_back(c);
    ++row;
  }
  for (int i = row; i < rank; ++i)
    if (m[i][k] != 0)
      return std::nullopt;
  std::vector<long> out(k, 0);
  for (int i = 0; i < row; ++i) {
    mpq_class v = m[i][k] / m[i][pivot_col[i]];
    if (v.get_den() != 1)
      return std::nullopt;
    out[pivot_col[i]] = v.get_num().get_si();
  }
  return out;
}

long ceil_div(long a, long b) { return (a + b - 1) / b; }

// Negative curves used by the reduction loop, irreducible lines first.
std::vector<DivisorClass> negative_curves(const SurfaceModel& s) {
  std::vector<DivisorClass> out(s.irreducible_lines());
  out.insert(out.end(), s.simple_roots().begin(), s.simple_roots().end());
  return out;
}

bool root_span_verdict(const SurfaceModel& s, const DivisorClass& d, std::vector<long>* coeffs) {
  if (d.is_zero())
    return true;
  auto c = s.root_coordinates(d);
  if (!c)
    return false;
  for (long v : *c)
    if (v < 0)
      return false;
  if (coeffs)
    *coeffs = *c;
  return true;
}

}  // namespace

std::pair<bool, EffectivityTrace> is_effective_traced(const SurfaceModel& s, const DivisorClass& input) {
  const PicardLattice& lat = s.lattice();
  lat.require(input);
  EffectivityTrace tr;
  DivisorClass d = input;
  const auto curves = negative_curves(s);
  const long cap = 10 * (lat.rank() + std::labs(lat.dot_k(input)));
  for (long iter = 0;; ++iter) {
    if (iter > cap)
      fail_invariant("effectiveness loop exceeded its iteration cap for " + format_class(lat, input));
    const long dk = lat.dot_k(d);
    if (dk > 0) {
      tr.rule = "K-positive";
      tr.verdict = false;
      break;
    }
    if (dk == 0) {
      tr.verdict = root_span_verdict(s, d, &tr.root_coefficients);
      tr.rule = tr.verdict ? "root-span" : "not-root-span";
      break;
    }
    // Models of degree 8 and 9 need explicit nef classes: a divisor meeting
    // one of them negatively is not effective.
    bool boundary = false;
    for (const auto& f : s.nef_boundary())
      if (lat.intersect(d, f) < 0)
        boundary = true;
    if (boundary) {
      tr.rule = "nef-boundary";
      tr.verdict = false;
      break;
    }
    EffectivityStep step{d, {}, "subtract"};
    for (const auto& c : curves) {
      long b = -lat.intersect(d, c);
      if (b > 0)
        step.subtracted.push_back({c, static_cast<int>(ceil_div(b, -lat.square(c)))});
    }
    if (step.subtracted.empty()) {
      tr.rule = "nef";
      tr.verdict = true;
      break;
    }
    for (const auto& [c, m] : step.subtracted)
      d -= m * c;
    tr.steps.push_back(std::move(step));
  }
  tr.terminal = d;
  return {tr.verdict, std::move(tr)};
}

bool is_effective(const SurfaceModel& s, const DivisorClass& d) { return is_effective_traced(s, d).first; }

bool EffectivityTrace::replay(const SurfaceModel& s, const DivisorClass& input) const {
  const PicardLattice& lat = s.lattice();
  DivisorClass d = input;
  for (const auto& st : steps) {
    if (st.divisor != d)
      return false;
    for (const auto& [c, m] : st.subtracted) {
      if (m <= 0 || lat.intersect(d, c) >= 0)
        return false;
      d -= m * c;
    }
  }
  if (d != terminal)
    return false;
  const long dk = lat.dot_k(d);
  if (rule == "K-positive")
    return !verdict && dk > 0;
  if (rule == "root-span") {
    if (!verdict || dk != 0)
      return false;
    DivisorClass sum = lat.zero();
    for (std::size_t i = 0; i < root_coefficients.size(); ++i) {
      if (root_coefficients[i] < 0)
        return false;
      sum += static_cast<int>(root_coefficients[i]) * s.simple_roots()[i];
    }
    return sum == d;
  }
  if (rule == "not-root-span")
    return !verdict && dk == 0 && !root_span_verdict(s, d, nullptr);
  if (rule == "nef-boundary") {
    for (const auto& f : s.nef_boundary())
      if (lat.intersect(d, f) < 0)
        return !verdict;
    return false;
  }
  if (rule == "nef") {
    for (const auto& c : negative_curves(s))
      if (lat.intersect(d, c) < 0)
        return false;
    return verdict && dk < 0;
  }
  return false;
}

bool is_effective_anticlass_fast(const SurfaceModel& s, const DivisorClass& input) {
  const PicardLattice& lat = s.lattice();
  lat.require(input);
  if (lat.dot_k(input) > 0)
    fail_input("fast anti-class test needs D.K <= 0");
  const auto& roots = s.simple_roots();
  const int k = static_cast<int>(roots.size());
  std::vector<long> dr(k);
  for (int i = 0; i < k; ++i)
    dr[i] = lat.intersect(input, roots[i]);
  // All further work happens on the vector of products D.R_i, updated with
  // the Cartan matrix: (D - R_j).R_i = D.R_i + C_ji.
  const auto& cartan = s.cartan();
  const long cap = 10 * (lat.rank() + std::labs(lat.dot_k(input))) + 64 * k;
  for (long iter = 0; iter <= cap; ++iter) {
    std::vector<int> minus_one;
    for (int i = 0; i < k; ++i) {
      if (dr[i] <= -2)
        return true;
      if (dr[i] == -1)
        minus_one.push_back(i);
    }
    if (minus_one.empty())
      return false;
    for (std::size_t a = 0; a < minus_one.size(); ++a)
      for (std::size_t b = a + 1; b < minus_one.size(); ++b)
        if (cartan[minus_one[a]][minus_one[b]] != 0)
          return true;
    for (int j : minus_one)
      for (int i = 0; i < k; ++i)
        dr[i] += cartan[j][i];
  }
  fail_invariant("fast anti-class loop exceeded its iteration cap");
}

bool brute_force_effective(const SurfaceModel& s, const DivisorClass& d, int bound) {
  const PicardLattice& lat = s.lattice();
  lat.require(d);
  const DivisorClass minus_k = -lat.canonical();
  std::vector<DivisorClass> positive(s.irreducible_lines());
  positive.push_back(minus_k);
  for (const auto& f : s.nef_boundary())
    positive.push_back(f);
  // Nef test classes: 0- and 1-classes meeting every negative curve
  // nonnegatively, -K, and the explicit boundary of small-rank models.
  std::vector<DivisorClass> nef{minus_k};
  for (const auto& f : s.nef_boundary())
    nef.push_back(f);
  if (lat.rank() >= 3) {
    for (int r : {0, 1})
      for (const auto& f : enumerate_classes(lat, r)) {
        bool ok = true;
        for (const auto& c : s.irreducible_lines())
          ok = ok && lat.intersect(f, c) >= 0;
        for (const auto& c : s.simple_roots())
          ok = ok && lat.intersect(f, c) >= 0;
        if (ok)
          nef.push_back(f);
      }
  }
  auto passes_nef = [&](const DivisorClass& x) {
    for (const auto& f : nef)
      if (lat.intersect(x, f) < 0)
        return false;
    return true;
  };
  const auto& roots = s.simple_roots();
  // Phase B: x has -K.x = 0 and must be a sum of (-2)-curves. The curves are
  // linearly independent, so the only candidate combination comes from
  // solving x = sum n_i R_i in coefficient space by exact elimination.
  auto roots_only = [&](const DivisorClass& x) -> bool {
    if (x.is_zero())
      return true;
    auto n = solve_in_span(roots, x, lat.rank());
    if (!n)
      return false;
    for (const auto& v : *n)
      if (v < 0 || v > bound)
        return false;
    return true;
  };
  // Phase A: peel off generators of positive anticanonical degree. Every
  // remainder is explored once; failures are memoized.
  std::unordered_set<DivisorClass, DivisorClassHash> failed;
  std::function<bool(const DivisorClass&)> search = [&](const DivisorClass& x) -> bool {
    const long h = -lat.dot_k(x);
    if (h < 0 || !passes_nef(x))
      return false;
    if (h == 0)
      return roots_only(x);
    if (failed.count(x))
      return false;
    // Roots may be needed before the next line can come off, but since the
    // sum is commutative it suffices to remove positive generators here and
    // leave every root to phase B.
    for (const auto& g : positive) {
      long gh = -lat.dot_k(g);
      if (gh > h)
        continue;
      if (search(x - g))
        return true;
    }
    failed.insert(x);
    return false;
  };
  return search(d);
}

bool is_hole(const SurfaceModel& s, const DivisorClass& d, int max_multiple) {
  if (is_effective(s, d))
    return false;
  for (int k = 2; k <= max_multiple; ++k)
    if (is_effective(s, k * d))
      return true;
  return false;
}

bool is_lo(const SurfaceModel& s, const DivisorClass& d) {
  const PicardLattice& lat = s.lattice();
  auto r = classify_r(lat, d);
  if (!r)
    fail_input(format_class(lat, d) + " is not an r-class");
  const int deg = lat.degree();
  if (*r <= -2)
    return !is_effective(s, -d);
  if (*r <= deg - 3)
    return true;
  return !is_effective(s, lat.canonical() + d);
}

bool is_slo(const SurfaceModel& s, const DivisorClass& d) {
  const PicardLattice& lat = s.lattice();
  auto r = classify_r(lat, d);
  if (!r)
    fail_input(format_class(lat, d) + " is not an r-class");
  const int deg = lat.degree();
  if (*r <= -3)
    return false;
  if (*r == -2)
    return !is_effective(s, d) && !is_effective(s, -d);
  if (*r <= deg - 3)
    return true;
  return !is_effective(s, lat.canonical() + d);
}

}  // namespace wdp
