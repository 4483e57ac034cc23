#include "wdp/picard.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <functional>

#include "wdp/errors.hpp"

namespace wdp {

DivisorClass::DivisorClass(int rank) : rank_(rank) {
  if (rank < 0 || rank > kMaxRank)
    fail_input("divisor rank " + std::to_string(rank) + " out of range");
}

DivisorClass::DivisorClass(std::initializer_list<int> coeffs)
    : DivisorClass(static_cast<int>(coeffs.size())) {
  int i = 0;
  for (int c : coeffs)
    c_[i++] = c;
}

DivisorClass DivisorClass::from_vector(const std::vector<int>& coeffs) {
  DivisorClass d(static_cast<int>(coeffs.size()));
  for (int i = 0; i < d.rank_; ++i)
    d.c_[i] = coeffs[i];
  return d;
}

std::vector<int> DivisorClass::to_vector() const {
  return std::vector<int>(c_.begin(), c_.begin() + rank_);
}

bool DivisorClass::is_zero() const {
  for (int i = 0; i < rank_; ++i)
    if (c_[i] != 0)
      return false;
  return true;
}

DivisorClass& DivisorClass::operator+=(const DivisorClass& o) {
  for (int i = 0; i < rank_; ++i)
    c_[i] += o.c_[i];
  return *this;
}

DivisorClass& DivisorClass::operator-=(const DivisorClass& o) {
  for (int i = 0; i < rank_; ++i)
    c_[i] -= o.c_[i];
  return *this;
}

DivisorClass& DivisorClass::operator*=(int k) {
  for (int i = 0; i < rank_; ++i)
    c_[i] *= k;
  return *this;
}

DivisorClass DivisorClass::operator-() const {
  DivisorClass r = *this;
  for (int i = 0; i < rank_; ++i)
    r.c_[i] = -r.c_[i];
  return r;
}

std::uint64_t DivisorClass::hash() const {
  // FNV-1a over the coefficients; stable across runs and platforms.
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint32_t v) {
    for (int b = 0; b < 4; ++b) {
      h ^= (v >> (8 * b)) & 0xffu;
      h *= 1099511628211ull;
    }
  };
  mix(static_cast<std::uint32_t>(rank_));
  for (int i = 0; i < rank_; ++i)
    mix(static_cast<std::uint32_t>(c_[i]));
  return h;
}

PicardLattice PicardLattice::blowup(int points) {
  if (points < 0 || points > 8)
    fail_input("blow-up of the plane in " + std::to_string(points) +
               " points is not a supported weak del Pezzo lattice");
  auto d = std::make_shared<Data>();
  d->kind = LatticeKind::kBlowup;
  d->rank = points + 1;
  d->degree = 9 - points;
  d->labels.push_back("L");
  for (int i = 1; i <= points; ++i)
    d->labels.push_back("E" + std::to_string(i));
  d->gram[0][0] = 1;
  for (int i = 1; i <= points; ++i)
    d->gram[i][i] = -1;
  d->canonical = DivisorClass(d->rank);
  d->canonical[0] = -3;
  for (int i = 1; i <= points; ++i)
    d->canonical[i] = 1;
  return PicardLattice(std::move(d));
}

PicardLattice PicardLattice::standard(int degree) {
  if (degree < 1 || degree > 9)
    fail_input("degree " + std::to_string(degree) + " outside 1..9");
  return blowup(9 - degree);
}

PicardLattice PicardLattice::hyperbolic() {
  auto d = std::make_shared<Data>();
  d->kind = LatticeKind::kHyperbolic;
  d->rank = 2;
  d->degree = 8;
  d->labels = {"H1", "H2"};
  d->gram[0][1] = d->gram[1][0] = 1;
  d->canonical = DivisorClass{-2, -2};
  return PicardLattice(std::move(d));
}

DivisorClass PicardLattice::basis(int i) const {
  if (i < 0 || i >= rank())
    fail_input("basis index out of range");
  DivisorClass d(rank());
  d[i] = 1;
  return d;
}

DivisorClass PicardLattice::L() const {
  if (!is_blowup())
    fail_input("L is only defined on blow-up lattices");
  return basis(0);
}

DivisorClass PicardLattice::E(int i) const {
  if (!is_blowup() || i < 1 || i > points())
    fail_input("E" + std::to_string(i) + " does not exist on this lattice");
  return basis(i);
}

void PicardLattice::require(const DivisorClass& d) const {
  if (d.rank() != rank())
    fail_input("divisor of rank " + std::to_string(d.rank()) +
               " used with a lattice of rank " + std::to_string(rank()));
}

long PicardLattice::intersect(const DivisorClass& a, const DivisorClass& b) const {
  const int n = rank();
  if (is_blowup()) {
    long s = static_cast<long>(a[0]) * b[0];
    for (int i = 1; i < n; ++i)
      s -= static_cast<long>(a[i]) * b[i];
    return s;
  }
  long s = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      s += static_cast<long>(a[i]) * data_->gram[i][j] * b[j];
  return s;
}

bool operator==(const PicardLattice& a, const PicardLattice& b) {
  if (a.data_ == b.data_)
    return true;
  return a.kind() == b.kind() && a.rank() == b.rank() && a.data_->gram == b.data_->gram &&
         a.canonical() == b.canonical();
}

long intersect(const PicardLattice& lat, const DivisorClass& a, const DivisorClass& b) {
  lat.require(a);
  lat.require(b);
  return lat.intersect(a, b);
}

long chi(const PicardLattice& lat, const DivisorClass& d) {
  lat.require(d);
  long t = lat.square(d) - lat.dot_k(d);
  if (t % 2 != 0)
    fail_invariant("D.(D-K) is odd; lattice data is not even-characteristic");
  return 1 + t / 2;
}

std::optional<int> classify_r(const PicardLattice& lat, const DivisorClass& d) {
  lat.require(d);
  long sq = lat.square(d);
  if (sq + lat.dot_k(d) != -2)
    return std::nullopt;
  return static_cast<int>(sq);
}

namespace {

long isqrt(long q) {
  if (q <= 0)
    return 0;
  long r = 0;
  while ((r + 1) * (r + 1) <= q)
    ++r;
  return r;
}

// Integer vectors of length k with sum s and sum of squares q.
void fill_coords(int pos, int k, long s, long q, DivisorClass& cur,
                 std::vector<DivisorClass>& out) {
  if (k == 0) {
    if (s == 0 && q == 0)
      out.push_back(cur);
    return;
  }
  if (s * s > static_cast<long>(k) * q || ((s - q) % 2) != 0)
    return;
  long m = isqrt(q);
  for (long x = -m; x <= m; ++x) {
    long s2 = s - x, q2 = q - x * x;
    if (s2 * s2 > static_cast<long>(k - 1) * q2)
      continue;
    cur[pos] = static_cast<int>(x);
    fill_coords(pos + 1, k - 1, s2, q2, cur, out);
  }
  cur[pos] = 0;
}

}  // namespace

std::vector<DivisorClass> enumerate_classes(const PicardLattice& lat, int r) {
  if (r < -2 || r > 1)
    fail_input("enumerate_classes supports r in {-2,-1,0,1}, got " + std::to_string(r));
  std::vector<DivisorClass> out;
  if (!lat.is_blowup()) {
    // (x,y) with 2xy - 2x - 2y = -2, i.e. x = 1 or y = 1, and r = 2xy.
    if (r % 2 == 0) {
      int h = r / 2;
      out.push_back(DivisorClass{1, h});
      if (h != 1)
        out.push_back(DivisorClass{h, 1});
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  // Write D = a0 L - sum b_i E_i. The defining equations give
  //   sum b_i^2 = a0^2 - r  and  sum b_i = 3 a0 - 2 - r,
  // and Cauchy-Schwarz (sum b)^2 <= n sum b^2 is a convex quadratic
  // constraint in a0, so the admissible a0 form an interval around its
  // minimum 3(2+r)/(9-n). This bound is exact, no widening needed.
  const int n = lat.points();
  auto feasible = [&](long a0) {
    long s = 3 * a0 - 2 - r, q = a0 * a0 - r;
    return q >= 0 && s * s <= n * q;
  };
  auto quad = [&](long a0) {
    long s = 3 * a0 - 2 - r, q = a0 * a0 - r;
    return s * s - n * q;
  };
  long lo_start = (3 * (2 + r)) / (9 - n);
  if (3 * (2 + r) < 0 && (3 * (2 + r)) % (9 - n) != 0)
    --lo_start;
  std::vector<long> a0s;
  for (long a0 = lo_start; quad(a0) <= 0; --a0)
    a0s.push_back(a0);
  for (long a0 = lo_start + 1; quad(a0) <= 0; ++a0)
    a0s.push_back(a0);
  for (long a0 : a0s) {
    if (!feasible(a0))
      continue;
    DivisorClass cur(lat.rank());
    cur[0] = static_cast<int>(a0);
    std::vector<DivisorClass> part;
    // Coordinates here are the b_i; flip sign to get E-coefficients.
    fill_coords(1, n, 3 * a0 - 2 - r, a0 * a0 - r, cur, part);
    for (auto& d : part) {
      for (int i = 1; i <= n; ++i)
        d[i] = -d[i];
      out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end());
  for (const auto& d : out)
    if (classify_r(lat, d) != r)
      fail_invariant("enumerated vector is not an r-class");
  return out;
}

std::pair<int, int> signature(const PicardLattice& lat) {
  const int n = lat.rank();
  std::vector<std::vector<__int128>> m(n, std::vector<__int128>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      m[i][j] = lat.gram(i, j);
  int pos = 0, neg = 0;
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    int k = -1;
    for (int i = 0; i < n && k < 0; ++i)
      if (!done[i] && m[i][i] != 0)
        k = i;
    if (k < 0) {
      // No usable diagonal entry: row_i += row_j creates one (congruence).
      int bi = -1, bj = -1;
      for (int i = 0; i < n && bi < 0; ++i)
        for (int j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && m[i][j] != 0) {
            bi = i;
            bj = j;
            break;
          }
      if (bi < 0)
        break;  // remaining block is zero: degenerate directions
      for (int c = 0; c < n; ++c)
        m[bi][c] += m[bj][c];
      for (int r = 0; r < n; ++r)
        m[r][bi] += m[r][bj];
      k = bi;
    }
    __int128 p = m[k][k];
    (p > 0 ? pos : neg)++;
    done[k] = true;
    for (int i = 0; i < n; ++i) {
      if (done[i] || m[i][k] == 0)
        continue;
      __int128 f = m[i][k];
      for (int c = 0; c < n; ++c)
        m[i][c] = p * m[i][c] - f * m[k][c];
      for (int r = 0; r < n; ++r)
        m[r][i] = p * m[r][i] - f * m[r][k];
    }
  }
  return {pos, neg};
}

namespace {

std::string normalize(std::string_view text) {
  std::string s;
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    // U+2212 MINUS SIGN is E2 88 92 in UTF-8.
    if (c == 0xE2 && i + 2 < text.size() && static_cast<unsigned char>(text[i + 1]) == 0x88 &&
        static_cast<unsigned char>(text[i + 2]) == 0x92) {
      s.push_back('-');
      i += 2;
      continue;
    }
    if (std::isspace(c) || c == '_' || c == '{' || c == '}')
      continue;
    s.push_back(static_cast<char>(c));
  }
  return s;
}

}  // namespace

DivisorClass parse_class(const PicardLattice& lat, std::string_view text) {
  std::string s = normalize(text);
  if (s.empty())
    fail_input("empty class expression");
  DivisorClass out(lat.rank());
  std::size_t i = 0;
  auto bad = [&](const std::string& why) {
    fail_input("cannot parse class '" + std::string(text) + "': " + why);
  };
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      bad("expected + or -");
    }
    long coef = 1;
    if (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
      coef = 0;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
        coef = coef * 10 + (s[i++] - '0');
    }
    if (i >= s.size())
      bad("missing symbol");
    char sym = s[i++];
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i])))
      digits.push_back(s[i++]);
    DivisorClass term(lat.rank());
    if (sym == 'K' && digits.empty()) {
      term = lat.canonical();
    } else if (lat.is_blowup() && sym == 'L') {
      term = lat.L();
      for (char c : digits)
        term -= lat.E(c - '0');
    } else if (lat.is_blowup() && sym == 'E') {
      if (digits.empty())
        bad("E needs an index");
      for (char c : digits)
        term += lat.E(c - '0');
    } else if (!lat.is_blowup() && sym == 'H' && (digits == "1" || digits == "2")) {
      term = lat.basis(digits[0] - '1');
    } else {
      bad(std::string("unknown symbol ") + sym);
    }
    out += static_cast<int>(sign * coef) * term;
  }
  return out;
}

std::string format_class(const PicardLattice& lat, const DivisorClass& d) {
  lat.require(d);
  std::string s;
  for (int i = 0; i < d.rank(); ++i) {
    int c = d[i];
    if (c == 0)
      continue;
    if (c < 0)
      s += "-";
    else if (!s.empty())
      s += "+";
    if (std::abs(c) != 1)
      s += std::to_string(std::abs(c));
    s += lat.labels()[i];
  }
  return s.empty() ? "0" : s;
}

}  // namespace wdp
