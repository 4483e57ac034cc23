#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace wdp {

// Largest lattice handled: the plane blown up in nine points would be rank 10,
// degree 0; we stop at degree 1 (rank 9) but keep one slot of headroom.
inline constexpr int kMaxRank = 10;

// Integer coefficient vector in a fixed lattice basis.
class DivisorClass {
public:
  DivisorClass() = default;
  explicit DivisorClass(int rank);
  DivisorClass(std::initializer_list<int> coeffs);
  static DivisorClass from_vector(const std::vector<int>& coeffs);

  int rank() const { return rank_; }
  int operator[](int i) const { return c_[i]; }
  int& operator[](int i) { return c_[i]; }
  std::vector<int> to_vector() const;
  bool is_zero() const;

  DivisorClass& operator+=(const DivisorClass& o);
  DivisorClass& operator-=(const DivisorClass& o);
  DivisorClass& operator*=(int k);
  friend DivisorClass operator+(DivisorClass a, const DivisorClass& b) { return a += b; }
  friend DivisorClass operator-(DivisorClass a, const DivisorClass& b) { return a -= b; }
  friend DivisorClass operator*(int k, DivisorClass a) { return a *= k; }
  DivisorClass operator-() const;

  // Lexicographic on coefficients; classes of different rank never mix in
  // practice, rank only breaks ties.
  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  friend auto operator<=>(const DivisorClass&, const DivisorClass&) = default;

  std::uint64_t hash() const;

private:
  std::int32_t rank_ = 0;
  std::array<std::int32_t, kMaxRank> c_{};
};

struct DivisorClassHash {
  std::size_t operator()(const DivisorClass& d) const { return d.hash(); }
};

// Lattice kinds: the standard blow-up basis (L, E1..En) with diagonal Gram
// matrix, or the hyperbolic plane used for the quadric P1 x P1.
enum class LatticeKind { kBlowup, kHyperbolic };

class PicardLattice {
public:
  // P^2 blown up in `points` points: degree 9 - points, Gram diag(1,-1,...).
  static PicardLattice blowup(int points);
  // Same, indexed by degree 1..9.
  static PicardLattice standard(int degree);
  // Rank 2, Gram [[0,1],[1,0]], K = (-2,-2).
  static PicardLattice hyperbolic();

  LatticeKind kind() const { return data_->kind; }
  bool is_blowup() const { return data_->kind == LatticeKind::kBlowup; }
  int rank() const { return data_->rank; }
  int degree() const { return data_->degree; }
  int points() const { return data_->rank - 1; }
  const std::vector<std::string>& labels() const { return data_->labels; }
  const DivisorClass& canonical() const { return data_->canonical; }
  int gram(int i, int j) const { return data_->gram[i][j]; }

  DivisorClass zero() const { return DivisorClass(rank()); }
  DivisorClass basis(int i) const;
  // Blow-up basis helpers; E(i) is 1-based like the notation E_i.
  DivisorClass L() const;
  DivisorClass E(int i) const;

  long intersect(const DivisorClass& a, const DivisorClass& b) const;
  long square(const DivisorClass& a) const { return intersect(a, a); }
  long dot_k(const DivisorClass& a) const { return intersect(a, canonical()); }
  // Throws InputError unless d has this lattice's rank.
  void require(const DivisorClass& d) const;

  friend bool operator==(const PicardLattice& a, const PicardLattice& b);

private:
  struct Data {
    LatticeKind kind;
    int rank;
    int degree;
    std::vector<std::string> labels;
    std::array<std::array<int, kMaxRank>, kMaxRank> gram{};
    DivisorClass canonical;
  };
  explicit PicardLattice(std::shared_ptr<const Data> d) : data_(std::move(d)) {}
  std::shared_ptr<const Data> data_;
};

// D1^T G D2, with a rank check.
long intersect(const PicardLattice& lat, const DivisorClass& a, const DivisorClass& b);

// Riemann-Roch: 1 + D.(D-K)/2.
long chi(const PicardLattice& lat, const DivisorClass& d);

// r = D^2 when D^2 + D.K = -2.
std::optional<int> classify_r(const PicardLattice& lat, const DivisorClass& d);

// All r-classes for r in {-2,-1,0,1}, sorted lexicographically.
std::vector<DivisorClass> enumerate_classes(const PicardLattice& lat, int r);

// Signature (positive, negative) of the Gram matrix by exact elimination.
std::pair<int, int> signature(const PicardLattice& lat);

// Shorthand used in the tables: "2L-E124567", "E1-E2", "L123" (= L-E1-E2-E3),
// "-L567", "3L-E12345567" (repeated digits add up), "L-E1", "K".
// On the hyperbolic lattice the basis names are H1, H2.
DivisorClass parse_class(const PicardLattice& lat, std::string_view text);
std::string format_class(const PicardLattice& lat, const DivisorClass& d);

}  // namespace wdp
