#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace wdp {

using IntSequence = std::vector<int>;

// Elementary augmentation of a sequence, 1 <= m <= n+1.
IntSequence augment_sequence(const IntSequence& a, int m);

// Reachable from (0,k,0,-k) (or the plane's (1,1,1)) by elementary
// augmentations; decided by removing -1 entries in every possible order.
bool is_admissible(const IntSequence& a);

// Least sequence among all rotations and reversals.
IntSequence dihedral_canonical(const IntSequence& a);
IntSequence sequence_symmetry(const IntSequence& a);  // (a_{n-1},...,a_1,a_n)

enum class SequenceKind { kFirst, kSecond };

struct KindType {
  SequenceKind kind;
  std::string type;  // "5a", "IIb", "IV", ...; "P2" and "F<k>" for base cases
  // The form that matched the table, after rotation (first kind) or
  // symmetry (second kind).
  IntSequence normalized;
};

// Throws InputError for sequences that are not strong admissible.
KindType classify_sequence(const IntSequence& a);

struct NamedSequence {
  std::string name;
  IntSequence values;
};
// The fifteen cyclic strong admissible sequences as tabulated.
const std::vector<NamedSequence>& cyclic_strong_table();
// Computed independently: closure of the base cases under augmentations
// that keep every entry >= -2, up to rotation and reversal.
std::vector<IntSequence> enumerate_cyclic_strong_admissible();

// Windows (k, l), 1-based cyclic, whose entries are one -1 and otherwise -2.
std::vector<std::pair<int, int>> compute_ixa(const IntSequence& a);

}  // namespace wdp
