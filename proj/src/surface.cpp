#include "wdp/surface.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "wdp/errors.hpp"

namespace wdp {

namespace {

// Determinant and adjugate of a small integer matrix by cofactor expansion
// over exact Bareiss elimination.
long bareiss_det(std::vector<std::vector<__int128>> m) {
  const int n = static_cast<int>(m.size());
  if (n == 0)
    return 1;
  int sign = 1;
  __int128 prev = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (m[k][k] == 0) {
      int p = k + 1;
      while (p < n && m[p][k] == 0)
        ++p;
      if (p == n)
        return 0;
      std::swap(m[k], m[p]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j)
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
    prev = m[k][k];
  }
  return static_cast<long>(sign * m[n - 1][n - 1]);
}

std::vector<std::vector<long>> adjugate(const std::vector<std::vector<long>>& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::vector<long>> adj(n, std::vector<long>(n, 0));
  if (n == 1) {
    adj[0][0] = 1;
    return adj;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      std::vector<std::vector<__int128>> minor;
      for (int r = 0; r < n; ++r) {
        if (r == i)
          continue;
        std::vector<__int128> row;
        for (int c = 0; c < n; ++c)
          if (c != j)
            row.push_back(a[r][c]);
        minor.push_back(row);
      }
      long cof = bareiss_det(minor) * (((i + j) % 2) ? -1 : 1);
      adj[j][i] = cof;  // transpose of the cofactor matrix
    }
  return adj;
}

std::string family_of(const std::string& comp) { return comp.substr(0, 1); }
int rank_of(const std::string& comp) { return std::stoi(comp.substr(1)); }

}  // namespace

std::optional<DynkinType> classify_dynkin(const std::vector<std::vector<long>>& g) {
  const int n = static_cast<int>(g.size());
  std::vector<std::vector<int>> adj(n);
  for (int i = 0; i < n; ++i) {
    if (g[i][i] != -2)
      return std::nullopt;
    for (int j = 0; j < n; ++j) {
      if (i == j)
        continue;
      if (g[i][j] != 0 && g[i][j] != 1)
        return std::nullopt;
      if (g[i][j] == 1)
        adj[i].push_back(j);
    }
  }
  DynkinType out;
  std::vector<int> comp(n, -1);
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0)
      continue;
    std::vector<int> nodes{s};
    comp[s] = s;
    for (std::size_t k = 0; k < nodes.size(); ++k)
      for (int v : adj[nodes[k]])
        if (comp[v] < 0) {
          comp[v] = s;
          nodes.push_back(v);
        }
    int m = static_cast<int>(nodes.size());
    int edges = 0;
    for (int v : nodes)
      edges += static_cast<int>(adj[v].size());
    if (edges / 2 != m - 1)
      return std::nullopt;  // contains a cycle
    std::vector<int> branch;
    for (int v : nodes) {
      if (adj[v].size() > 3)
        return std::nullopt;
      if (adj[v].size() == 3)
        branch.push_back(v);
    }
    if (branch.empty()) {
      out["A" + std::to_string(m)]++;
      continue;
    }
    if (branch.size() > 1)
      return std::nullopt;
    // Leg lengths from the branch node.
    std::vector<int> legs;
    for (int start : adj[branch[0]]) {
      int len = 1, prev = branch[0], cur = start;
      while (adj[cur].size() == 2) {
        int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
        prev = cur;
        cur = nxt;
        ++len;
      }
      legs.push_back(len);
    }
    std::sort(legs.begin(), legs.end());
    if (legs[0] == 1 && legs[1] == 1)
      out["D" + std::to_string(m)]++;
    else if (legs[0] == 1 && legs[1] == 2 && legs[2] <= 4)
      out["E" + std::to_string(m)]++;
    else
      return std::nullopt;
  }
  return out;
}

DynkinType parse_dynkin(const std::string& text) {
  DynkinType out;
  if (text.empty() || text == "none" || text == "0" || text == "empty")
    return out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, '+')) {
    std::size_t i = 0;
    int mult = 0;
    while (i < part.size() && std::isdigit(static_cast<unsigned char>(part[i])))
      mult = mult * 10 + (part[i++] - '0');
    if (mult == 0)
      mult = 1;
    std::string comp = part.substr(i);
    // Drop a ",m" line-count suffix if present.
    if (auto c = comp.find(','); c != std::string::npos)
      comp = comp.substr(0, c);
    if (comp.size() < 2 || std::string("ADE").find(comp[0]) == std::string::npos)
      fail_input("cannot parse Dynkin type '" + text + "'");
    out[comp] += mult;
  }
  return out;
}

std::string format_dynkin(const DynkinType& t) {
  if (t.empty())
    return "none";
  std::vector<std::pair<std::string, int>> comps(t.begin(), t.end());
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    if (family_of(a.first) != family_of(b.first))
      return family_of(a.first) < family_of(b.first);
    return rank_of(a.first) < rank_of(b.first);
  });
  std::string s;
  for (const auto& [c, m] : comps) {
    if (!s.empty())
      s += "+";
    if (m > 1)
      s += std::to_string(m);
    s += c;
  }
  return s;
}

SurfaceModel::SurfaceModel(PicardLattice lattice, std::vector<DivisorClass> simple_roots,
                           std::string name, std::optional<int> line_count)
    : d_(std::make_shared<Data>(Data{std::move(lattice), std::move(name), line_count, {},
                                     std::move(simple_roots), {}, {}, {}, {}, {}, {}, {}, {}, {}, 1})) {
  Data& d = *d_;
  const PicardLattice& lat = d.lattice;
  const int k = static_cast<int>(d.simple.size());
  for (const auto& r : d.simple) {
    lat.require(r);
    if (classify_r(lat, r) != -2)
      fail_input("simple root " + format_class(lat, r) + " is not a (-2)-class");
  }
  std::vector<std::vector<long>> gram(k, std::vector<long>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      gram[i][j] = lat.intersect(d.simple[i], d.simple[j]);
  auto type = classify_dynkin(gram);
  if (!type)
    fail_input("simple roots of " + d.name + " do not form an ADE configuration");
  d.dynkin = *type;
  d.cartan.assign(k, std::vector<long>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      d.cartan[i][j] = -gram[i][j];
  std::vector<std::vector<__int128>> c128(k, std::vector<__int128>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j)
      c128[i][j] = d.cartan[i][j];
  d.det = bareiss_det(c128);
  if (d.det <= 0)
    fail_invariant("Cartan matrix of an ADE configuration must be positive definite");
  d.adj = adjugate(d.cartan);

  if (lat.is_blowup() || lat.kind() == LatticeKind::kHyperbolic) {
    d.roots = enumerate_classes(lat, -2);
    d.lines = enumerate_classes(lat, -1);
  }
  // Positive roots by saturation: add simple roots while staying a root.
  std::set<DivisorClass> eff(d.simple.begin(), d.simple.end());
  std::vector<DivisorClass> frontier(d.simple.begin(), d.simple.end());
  while (!frontier.empty()) {
    std::vector<DivisorClass> next;
    for (const auto& e : frontier)
      for (const auto& s : d.simple) {
        DivisorClass t = e + s;
        if (lat.square(t) == -2 && !eff.count(t)) {
          eff.insert(t);
          next.push_back(t);
        }
      }
    frontier = std::move(next);
  }
  d.eff_roots.assign(eff.begin(), eff.end());
  for (const auto& r : d.roots)
    if (!eff.count(r) && !eff.count(-r))
      d.slo_roots.push_back(r);
  for (const auto& c : d.lines) {
    bool irr = std::all_of(d.simple.begin(), d.simple.end(),
                           [&](const DivisorClass& r) { return lat.intersect(c, r) >= 0; });
    (irr ? d.irr_lines : d.red_lines).push_back(c);
  }
  if (line_count && *line_count != static_cast<int>(d.irr_lines.size()))
    fail_invariant("surface " + d.name + " expects " + std::to_string(*line_count) +
                   " irreducible (-1)-curves, found " + std::to_string(d.irr_lines.size()));
}

std::string SurfaceModel::tag() const {
  return "X_{" + std::to_string(degree()) + "," + name() + "}";
}

bool SurfaceModel::is_effective_root(const DivisorClass& r) const {
  return std::binary_search(d_->eff_roots.begin(), d_->eff_roots.end(), r);
}

bool SurfaceModel::is_irreducible_line(const DivisorClass& c) const {
  return std::binary_search(d_->irr_lines.begin(), d_->irr_lines.end(), c);
}

std::optional<std::vector<long>> SurfaceModel::root_coordinates(const DivisorClass& dcl) const {
  const Data& d = *d_;
  const int k = static_cast<int>(d.simple.size());
  std::vector<long> b(k);
  for (int i = 0; i < k; ++i)
    b[i] = -d.lattice.intersect(dcl, d.simple[i]);
  std::vector<long> n(k);
  for (int i = 0; i < k; ++i) {
    long s = 0;
    for (int j = 0; j < k; ++j)
      s += d.adj[i][j] * b[j];
    if (s % d.det != 0)
      return std::nullopt;
    n[i] = s / d.det;
  }
  DivisorClass back = d.lattice.zero();
  for (int i = 0; i < k; ++i)
    back += static_cast<int>(n[i]) * d.simple[i];
  if (back != dcl)
    return std::nullopt;
  return n;
}

SurfaceModel with_nef_boundary(SurfaceModel s, std::vector<DivisorClass> nef) {
  auto copy = std::make_shared<SurfaceModel::Data>(*s.d_);
  copy->nef_boundary = std::move(nef);
  s.d_ = std::move(copy);
  return s;
}

SurfaceModel plane_model() {
  auto lat = PicardLattice::blowup(0);
  return with_nef_boundary(SurfaceModel(lat, {}, "P2"), {lat.L()});
}

SurfaceModel f0_model() {
  auto lat = PicardLattice::hyperbolic();
  return with_nef_boundary(SurfaceModel(lat, {}, "F0"), {lat.basis(0), lat.basis(1)});
}

SurfaceModel f1_model() {
  auto lat = PicardLattice::blowup(1);
  return with_nef_boundary(SurfaceModel(lat, {}, "F1"), {lat.L() - lat.E(1), lat.L()});
}

SurfaceModel f2_model() {
  // Basis H1 = F (fibre), H2 = S - F where S is the positive section; the
  // negative section S - 2F = H2 - H1 is the (-2)-curve.
  auto lat = PicardLattice::hyperbolic();
  return with_nef_boundary(SurfaceModel(lat, {lat.basis(1) - lat.basis(0)}, "F2"),
                           {lat.basis(0)});
}

SurfaceModel del_pezzo(int degree) {
  if (degree == 9)
    return plane_model();
  if (degree == 8)
    return f1_model();
  return SurfaceModel(PicardLattice::standard(degree), {}, "none");
}

}  // namespace wdp
