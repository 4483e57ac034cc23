#include "wdp/toric.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "wdp/effectivity.hpp"
#include "wdp/errors.hpp"
#include "wdp/weyl.hpp"

namespace wdp {

namespace {

// Index of the lattice generated by the rows, by integer row reduction;
// 0 when they do not span a full-rank sublattice.
long span_index(std::vector<std::vector<long>> m, int rank) {
  long index = 1;
  std::size_t row = 0;
  for (int c = 0; c < rank; ++c) {
    // Euclid on column c among the remaining rows.
    for (;;) {
      std::size_t piv = m.size();
      for (std::size_t r = row; r < m.size(); ++r)
        if (m[r][c] != 0 && (piv == m.size() || std::labs(m[r][c]) < std::labs(m[piv][c])))
          piv = r;
      if (piv == m.size())
        return 0;
      std::swap(m[piv], m[row]);
      bool done = true;
      for (std::size_t r = row + 1; r < m.size(); ++r) {
        if (m[r][c] == 0)
          continue;
        const long q = m[r][c] / m[row][c];
        for (int j = c; j < rank; ++j)
          m[r][j] -= q * m[row][j];
        if (m[r][c] != 0)
          done = false;
      }
      if (done)
        break;
    }
    index *= std::labs(m[row][c]);
    ++row;
  }
  return index;
}

std::string window_text(int k, int l) { return "A_{" + std::to_string(k) + ".." + std::to_string(l) + "}"; }

// Windows in scan order: k = 1..n, then length 1..n-1.
template <class F>
std::optional<std::pair<int, int>> scan_windows(int n, bool cyclic, F&& bad) {
  for (int k = 1; k <= n; ++k)
    for (int len = 1; len < n; ++len) {
      const int l = (k + len - 2) % n + 1;
      if (!cyclic && (k + len - 1 > n - 1))
        break;
      if (bad(k, l))
        return std::make_pair(k, l);
    }
  return std::nullopt;
}

bool contains_last(int n, int k, int l) { return l < k || l == n; }

}  // namespace

ToricSystem::ToricSystem(PicardLattice lattice, std::vector<DivisorClass> terms)
    : lat_(std::move(lattice)), terms_(std::move(terms)) {
  if (terms_.size() < 3)
    fail_input("a toric system needs at least three terms");
  for (const auto& t : terms_)
    lat_.require(t);
}

DivisorClass ToricSystem::window(int k, int l) const {
  const int n = size();
  const int len = ((l - k) % n + n) % n + 1;
  if (len == n)
    fail_input("window " + window_text(k, l) + " covers the whole system");
  DivisorClass d = lat_.zero();
  for (int j = 0; j < len; ++j)
    d += at(k + j);
  return d;
}

long ToricSystem::window_square(int k, int l) const {
  const int n = size();
  const int len = ((l - k) % n + n) % n + 1;
  long s = -2;
  for (int j = 0; j < len; ++j)
    s += lat_.square(at(k + j)) + 2;
  const long direct = lat_.square(window(k, l));
  if (s != direct)
    fail_invariant("window identity fails for " + window_text(k, l));
  return s;
}

std::vector<int> ToricSystem::squares() const {
  std::vector<int> out;
  for (const auto& t : terms_)
    out.push_back(static_cast<int>(lat_.square(t)));
  return out;
}

std::vector<std::string> axiom_violations(const PicardLattice& lat, const std::vector<DivisorClass>& terms) {
  std::vector<std::string> out;
  const int n = static_cast<int>(terms.size());
  for (const auto& t : terms)
    if (t.rank() != lat.rank())
      return {"term rank differs from lattice rank " + std::to_string(lat.rank())};
  const int expected = 12 - lat.degree();
  if (n != expected) {
    out.push_back("length " + std::to_string(n) + " != 12 - d = " + std::to_string(expected));
    return out;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const bool adjacent = j == i + 1 || (i == 0 && j == n - 1);
      const long want = adjacent ? 1 : 0;
      const long got = lat.intersect(terms[i], terms[j]);
      if (got != want)
        out.push_back("A_" + std::to_string(i + 1) + ".A_" + std::to_string(j + 1) + " = " +
                      std::to_string(got) + ", expected " + std::to_string(want));
    }
  DivisorClass sum = lat.zero();
  for (const auto& t : terms)
    sum += t;
  if (sum != -lat.canonical())
    out.push_back("sum of terms is " + format_class(lat, sum) + ", expected -K");
  if (out.empty()) {
    std::vector<std::vector<long>> m;
    for (const auto& t : terms) {
      std::vector<long> row(lat.rank());
      for (int i = 0; i < lat.rank(); ++i)
        row[i] = t[i];
      m.push_back(row);
    }
    if (span_index(m, lat.rank()) != 1)
      fail_invariant("toric system axioms hold but the terms do not generate the lattice");
  }
  return out;
}

ToricSystem validate(const PicardLattice& lat, std::vector<DivisorClass> terms) {
  auto v = axiom_violations(lat, terms);
  if (!v.empty()) {
    std::string msg = "not a toric system:";
    for (const auto& s : v)
      msg += " " + s + ";";
    fail_input(msg);
  }
  return ToricSystem(lat, std::move(terms));
}

ToricSystem parse_toric(const PicardLattice& lat, const std::vector<std::string>& terms) {
  std::vector<DivisorClass> out;
  for (const auto& t : terms)
    out.push_back(parse_class(lat, t));
  return validate(lat, std::move(out));
}

std::vector<std::string> format_toric(const ToricSystem& a) {
  std::vector<std::string> out;
  for (const auto& t : a.terms())
    out.push_back(format_class(a.lattice(), t));
  return out;
}

ToricSystem perm(const ToricSystem& a, int k) {
  const auto& lat = a.lattice();
  const DivisorClass ak = a.at(k);
  if (lat.square(ak) != -2)
    fail_input("perm_" + std::to_string(k) + " needs A_k^2 = -2");
  std::vector<DivisorClass> t(a.terms());
  t[a.index(k - 1)] = a.at(k - 1) + ak;
  t[a.index(k)] = -ak;
  t[a.index(k + 1)] = ak + a.at(k + 1);
  return ToricSystem(lat, std::move(t));
}

ToricSystem shift(const ToricSystem& a) {
  std::vector<DivisorClass> t(a.terms());
  std::rotate(t.begin(), t.begin() + 1, t.end());
  return ToricSystem(a.lattice(), std::move(t));
}

ToricSystem symmetry(const ToricSystem& a) {
  std::vector<DivisorClass> t(a.terms().rbegin() + 1, a.terms().rend());
  t.push_back(a.terms().back());
  return ToricSystem(a.lattice(), std::move(t));
}

ToricSystem augment(const ToricSystem& a, int m) {
  const auto& lat = a.lattice();
  const int n = a.size();
  if (!lat.is_blowup())
    fail_input("augmentation is implemented on blow-up lattices only");
  if (m < 1 || m > n + 1)
    fail_input("augmentation index out of range");
  const auto big = PicardLattice::blowup(lat.points() + 1);
  std::vector<DivisorClass> lifted;
  for (const auto& t : a.terms()) {
    DivisorClass d = big.zero();
    for (int i = 0; i < lat.rank(); ++i)
      d[i] = t[i];
    lifted.push_back(d);
  }
  const DivisorClass e = big.E(big.points());
  // Insert E before position m and subtract it from both cyclic neighbours.
  const int pos = m - 1;
  lifted[(pos + n - 1) % n] -= e;
  lifted[pos % n] -= e;
  lifted.insert(lifted.begin() + pos, e);
  return validate(big, std::move(lifted));
}

ToricSystem plane_system() {
  auto lat = PicardLattice::blowup(0);
  return validate(lat, {lat.L(), lat.L(), lat.L()});
}

namespace {

CheckResult reference_check(const SurfaceModel& s, const ToricSystem& a, bool strong, bool cyclic) {
  CheckResult r;
  r.witness = scan_windows(a.size(), cyclic, [&](int k, int l) {
    const DivisorClass d = a.window(k, l);
    return strong ? !is_slo(s, d) : !is_lo(s, d);
  });
  r.ok = !r.witness;
  return r;
}

bool below_minus_two_before_last(const std::vector<int>& sq) {
  for (std::size_t i = 0; i + 1 < sq.size(); ++i)
    if (sq[i] < -2)
      return true;
  return false;
}

// The (-2)-window theorem with a_i >= -2 for i < n. Windows inside
// [1..n-1] of square -2 must not be anti-effective (and, in strong mode,
// not effective). Windows through A_n only matter at their minimal square:
// a_n when a_n <= -2 (any larger window splits off effective pieces of
// square >= -1), and -2 when a_n >= -1.
CheckResult optimized_check(const SurfaceModel& s, const ToricSystem& a, bool strong) {
  const int n = a.size();
  const auto sq = a.squares();
  const long target = std::min(sq[n - 1], -2);
  CheckResult r;
  r.witness = scan_windows(n, true, [&](int k, int l) {
    const long w = a.window_square(k, l);
    if (contains_last(n, k, l)) {
      if (w != target)
        return false;
      return is_effective(s, -a.window(k, l));
    }
    if (w != -2)
      return false;
    const DivisorClass d = a.window(k, l);
    return is_effective(s, -d) || (strong && is_effective(s, d));
  });
  r.ok = !r.witness;
  return r;
}

}  // namespace

CheckResult check_exceptional(const SurfaceModel& s, const ToricSystem& a, CheckMethod m) {
  if (m == CheckMethod::kReference)
    return reference_check(s, a, false, false);
  if (below_minus_two_before_last(a.squares())) {
    auto r = reference_check(s, a, false, false);
    r.fell_back = m == CheckMethod::kOptimized;
    return r;
  }
  return optimized_check(s, a, false);
}

CheckResult check_strong(const SurfaceModel& s, const ToricSystem& a, CheckMethod m) {
  if (m == CheckMethod::kReference)
    return reference_check(s, a, true, false);
  if (below_minus_two_before_last(a.squares())) {
    auto r = reference_check(s, a, true, false);
    r.fell_back = m == CheckMethod::kOptimized;
    return r;
  }
  return optimized_check(s, a, true);
}

CheckResult check_cyclic_strong(const SurfaceModel& s, const ToricSystem& a, CheckMethod m) {
  const auto sq = a.squares();
  const bool hypothesis = *std::min_element(sq.begin(), sq.end()) >= -2;
  if (m == CheckMethod::kReference || !hypothesis) {
    auto r = reference_check(s, a, true, true);
    r.fell_back = m == CheckMethod::kOptimized && !hypothesis;
    return r;
  }
  CheckResult r;
  r.witness = scan_windows(a.size(), true, [&](int k, int l) {
    if (a.window_square(k, l) != -2)
      return false;
    const DivisorClass d = a.window(k, l);
    return is_effective(s, d) || is_effective(s, -d);
  });
  r.ok = !r.witness;
  return r;
}

bool is_exceptional(const SurfaceModel& s, const ToricSystem& a) { return check_exceptional(s, a).ok; }
bool is_strong_exceptional(const SurfaceModel& s, const ToricSystem& a) { return check_strong(s, a).ok; }
bool is_cyclic_strong_exceptional(const SurfaceModel& s, const ToricSystem& a) {
  return check_cyclic_strong(s, a).ok;
}

std::optional<int> elementary_augmentation_index(const SurfaceModel& s, const ToricSystem& a) {
  for (int i = 1; i <= a.size(); ++i)
    if (s.is_irreducible_line(a.at(i)))
      return i;
  return std::nullopt;
}

namespace {

// Sequence of roots whose reflections carry `from` to `to`, by BFS over the
// (-1)-classes.
std::vector<DivisorClass> reflection_path(const PicardLattice& lat, const DivisorClass& from,
                                          const DivisorClass& to) {
  const auto roots = enumerate_classes(lat, -2);
  std::unordered_map<DivisorClass, std::pair<DivisorClass, int>, DivisorClassHash> parent;
  std::deque<DivisorClass> q{from};
  parent.emplace(from, std::make_pair(from, -1));
  while (!q.empty()) {
    const DivisorClass c = q.front();
    q.pop_front();
    if (c == to)
      break;
    for (int i = 0; i < static_cast<int>(roots.size()); ++i) {
      if (lat.intersect(c, roots[i]) == 0)
        continue;
      DivisorClass nxt = reflect(lat, roots[i], c);
      if (parent.emplace(nxt, std::make_pair(c, i)).second)
        q.push_back(nxt);
    }
  }
  if (!parent.count(to))
    fail_invariant("no reflection path between (-1)-classes " + format_class(lat, from) + " and " +
                   format_class(lat, to));
  std::vector<DivisorClass> path;
  for (DivisorClass c = to; c != from;) {
    const auto& [prev, idx] = parent.at(c);
    path.push_back(roots[idx]);
    c = prev;
  }
  std::reverse(path.begin(), path.end());
  return path;
}

DivisorClass truncate(const PicardLattice& small, const DivisorClass& d) {
  DivisorClass out = small.zero();
  for (int i = 0; i < small.rank(); ++i)
    out[i] = d[i];
  return out;
}

}  // namespace

std::pair<SurfaceModel, ToricSystem> blow_down(const SurfaceModel& s, const ToricSystem& a, int i) {
  const auto& lat = s.lattice();
  const DivisorClass c = a.at(i);
  if (!s.is_irreducible_line(c))
    fail_input("A_" + std::to_string(i) + " = " + format_class(lat, c) + " is not an irreducible (-1)-curve");
  // A' drops A_i and adds (A_j.C) C to every term; only the neighbours
  // change, gaining C.
  std::vector<DivisorClass> contracted;
  for (int j = 1; j <= a.size(); ++j)
    if (j != i)
      contracted.push_back(a.at(j) + static_cast<int>(lat.intersect(a.at(j), c)) * c);
  std::vector<DivisorClass> kept;
  for (const auto& r : s.simple_roots())
    if (lat.intersect(r, c) == 0)
      kept.push_back(r);

  if (lat.is_blowup() && lat.points() == 2 && c == lat.L() - lat.E(1) - lat.E(2)) {
    // The middle line of the chain E1 - L12 - E2: the quotient is the
    // hyperbolic lattice with H1 = L - E1, H2 = L - E2.
    const auto hyp = PicardLattice::hyperbolic();
    const DivisorClass h1 = lat.L() - lat.E(1), h2 = lat.L() - lat.E(2);
    auto to_hyp = [&](const DivisorClass& d) {
      DivisorClass out = hyp.zero();
      out[0] = static_cast<int>(lat.intersect(d, h2));
      out[1] = static_cast<int>(lat.intersect(d, h1));
      return out;
    };
    std::vector<DivisorClass> terms;
    for (const auto& t : contracted)
      terms.push_back(to_hyp(t));
    if (kept.empty())
      return {f0_model(), validate(hyp, std::move(terms))};
    DivisorClass root = to_hyp(kept.front());
    if (root[0] > 0)  // H1 - H2: swap the rulings so the root reads H2 - H1
      for (auto& t : terms)
        std::swap(t[0], t[1]);
    return {f2_model(), validate(hyp, std::move(terms))};
  }
  if (!lat.is_blowup())
    fail_input("blow-down needs a blow-up lattice");

  const DivisorClass e = lat.E(lat.points());
  const auto path = reflection_path(lat, c, e);
  auto move = [&](DivisorClass d) {
    for (const auto& r : path)
      d = reflect(lat, r, d);
    return d;
  };
  const auto small = PicardLattice::blowup(lat.points() - 1);
  std::vector<DivisorClass> terms;
  for (const auto& t : contracted) {
    const DivisorClass m = move(t);
    if (m[lat.rank() - 1] != 0)
      fail_invariant("contracted term is not orthogonal to the exceptional class");
    terms.push_back(truncate(small, m));
  }
  std::vector<DivisorClass> roots;
  for (const auto& r : kept)
    roots.push_back(truncate(small, move(r)));
  auto sys = validate(small, std::move(terms));
  if (small.points() == 0)
    return {plane_model(), sys};
  if (small.points() == 1)
    return {f1_model(), sys};
  return {SurfaceModel(small, std::move(roots), "contracted"), sys};
}

std::optional<ClosureHit> find_augmentation_in_closure(const SurfaceModel& s, const ToricSystem& a,
                                                       std::size_t limit) {
  struct Node {
    ToricSystem sys;
    std::vector<int> word;
  };
  auto key = [](const ToricSystem& t) {
    std::uint64_t h = 1469598103934665603ull;
    for (const auto& c : t.terms())
      h = (h ^ c.hash()) * 1099511628211ull;
    return h;
  };
  std::unordered_map<std::uint64_t, std::vector<ToricSystem>> seen;
  std::deque<Node> q;
  q.push_back({a, {}});
  seen[key(a)].push_back(a);
  while (!q.empty()) {
    Node cur = std::move(q.front());
    q.pop_front();
    if (auto i = elementary_augmentation_index(s, cur.sys))
      return ClosureHit{cur.word, *i, cur.sys};
    for (int k = 1; k <= cur.sys.size(); ++k) {
      if (s.lattice().square(cur.sys.at(k)) != -2)
        continue;
      ToricSystem nxt = perm(cur.sys, k);
      auto& bucket = seen[key(nxt)];
      if (std::find(bucket.begin(), bucket.end(), nxt) != bucket.end())
        continue;
      bucket.push_back(nxt);
      if (seen.size() > limit)
        throw ResourceError("permutation closure exceeds " + std::to_string(limit) + " systems");
      auto w = cur.word;
      w.push_back(k);
      q.push_back({std::move(nxt), std::move(w)});
    }
  }
  return std::nullopt;
}

std::optional<std::vector<AugmentationStep>> decompose(const SurfaceModel& s, const ToricSystem& a) {
  std::vector<AugmentationStep> chain;
  SurfaceModel cur_s = s;
  ToricSystem cur = a;
  while (cur_s.degree() < 8) {
    auto hit = find_augmentation_in_closure(cur_s, cur);
    if (!hit)
      return std::nullopt;
    auto [ns, nt] = blow_down(cur_s, hit->system, hit->index);
    chain.push_back({hit->perms, hit->index, ns.degree()});
    cur_s = std::move(ns);
    cur = std::move(nt);
  }
  return chain;
}

}  // namespace wdp
