#include "wdp/sequence.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <mutex>
#include <queue>
#include <set>

#include "wdp/errors.hpp"

namespace wdp {

namespace {

std::string to_text(const IntSequence& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

bool is_hirzebruch(const IntSequence& a) {
  if (a.size() != 4)
    return false;
  for (int r = 0; r < 2; ++r)
    if (a[r] == 0 && a[r + 2] == 0 && a[r + 1] == -a[(r + 3) % 4])
      return true;
  return false;
}

// Removes the -1 at position i and adds 1 to both cyclic neighbours.
IntSequence contract(const IntSequence& a, std::size_t i) {
  const std::size_t n = a.size();
  IntSequence b(a);
  b[(i + n - 1) % n] += 1;
  b[(i + 1) % n] += 1;
  b.erase(b.begin() + static_cast<long>(i));
  return b;
}

bool admissible_memo(const IntSequence& a, std::map<IntSequence, bool>& memo) {
  if (a.size() < 3)
    return false;
  if (a.size() == 3)
    return a == IntSequence{1, 1, 1};
  if (a.size() == 4 && is_hirzebruch(a))
    return true;
  IntSequence key = dihedral_canonical(a);
  auto it = memo.find(key);
  if (it != memo.end())
    return it->second;
  bool ok = false;
  for (std::size_t i = 0; i < a.size() && !ok; ++i)
    if (a[i] == -1)
      ok = admissible_memo(contract(a, i), memo);
  memo.emplace(std::move(key), ok);
  return ok;
}

// Matchers for the second-kind templates on the body b_1..b_{n-1}.
using Body = std::vector<int>;

bool all_minus_two(Body::const_iterator first, Body::const_iterator last) {
  return std::all_of(first, last, [](int v) { return v == -2; });
}

// (0), (-1,-1) or (-1,-2,...,-2,-1).
bool is_end_block(Body::const_iterator first, Body::const_iterator last) {
  const long len = last - first;
  if (len == 1)
    return *first == 0;
  if (len < 2)
    return false;
  return *first == -1 && *(last - 1) == -1 && all_minus_two(first + 1, last - 1);
}

bool starts_with(const Body& b, const Body& prefix) {
  return b.size() >= prefix.size() && std::equal(prefix.begin(), prefix.end(), b.begin());
}

// prefix, -2 run (length >= min_run), then the suffix.
bool prefix_run_suffix(const Body& b, const Body& prefix, const Body& suffix, std::size_t min_run = 0) {
  if (b.size() < prefix.size() + suffix.size() + min_run || !starts_with(b, prefix))
    return false;
  if (!std::equal(suffix.begin(), suffix.end(), b.end() - static_cast<long>(suffix.size())))
    return false;
  return all_minus_two(b.begin() + static_cast<long>(prefix.size()), b.end() - static_cast<long>(suffix.size()));
}

std::optional<std::string> match_second_kind(const IntSequence& a) {
  const int n = static_cast<int>(a.size());
  const int e = a.back();
  const Body body(a.begin(), a.end() - 1);
  // Type II: B c D with end blocks B, D and c >= -2.
  for (std::size_t ci = 1; ci + 1 < body.size(); ++ci) {
    if (body[ci] >= -2 && body[ci] + e == 4 - n && is_end_block(body.begin(), body.begin() + ci) &&
        is_end_block(body.begin() + ci + 1, body.end()))
      return "IIa";
  }
  const Body head{-2, -1, -2};
  if (starts_with(body, head) && body.size() >= 5) {
    const int c = body[3];
    if (c >= -2 && c + e == 5 - n && is_end_block(body.begin() + 4, body.end()))
      return "IIb";
    if (body.size() == 7 && c >= -2 && c + e == 6 - n && body[4] == -2 && body[5] == -1 && body[6] == -2)
      return "IIc";
  }
  if (prefix_run_suffix(body, {1, 0}, {-1}) && e == 4 - n)
    return "IIIa";
  if (prefix_run_suffix(body, {-1, 0, 0}, {-1}) && e == 4 - n)
    return "IIIb";
  // (-1, -2^p, 0, 0, -2^q, -1) with p >= 1.
  if (body.size() >= 5 && body.front() == -1 && body.back() == -1 && e == 4 - n) {
    for (std::size_t z = 2; z + 2 < body.size(); ++z)
      if (body[z] == 0 && body[z + 1] == 0 && all_minus_two(body.begin() + 1, body.begin() + z) &&
          all_minus_two(body.begin() + z + 2, body.end() - 1))
        return "IIIc";
  }
  if (prefix_run_suffix(body, {-2, 0, 1}, {-1}) && e == 4 - n)
    return "IV";
  if (prefix_run_suffix(body, {-2, -1, -1, 0}, {-1}) && e == 5 - n)
    return "V";
  if (prefix_run_suffix(body, {-2, -2, -1, -2, 0}, {-1}) && e == 6 - n)
    return "VI";
  return std::nullopt;
}

}  // namespace

IntSequence augment_sequence(const IntSequence& a, int m) {
  const int n = static_cast<int>(a.size());
  if (n < 3 || m < 1 || m > n + 1)
    fail_input("augmentation index " + std::to_string(m) + " out of range for " + to_text(a));
  // Insert -1 before position m and lower both cyclic neighbours.
  IntSequence b(a);
  const int pos = m - 1;
  b[(pos + n - 1) % n] -= 1;
  b[pos % n] -= 1;
  b.insert(b.begin() + pos, -1);
  return b;
}

IntSequence sequence_symmetry(const IntSequence& a) {
  if (a.empty())
    return a;
  IntSequence b(a.rbegin() + 1, a.rend());
  b.push_back(a.back());
  return b;
}

IntSequence dihedral_canonical(const IntSequence& a) {
  IntSequence best = a;
  IntSequence r(a.rbegin(), a.rend());
  for (const IntSequence* base : {&a, static_cast<const IntSequence*>(&r)}) {
    IntSequence cur = *base;
    for (std::size_t i = 0; i < a.size(); ++i) {
      std::rotate(cur.begin(), cur.begin() + 1, cur.end());
      best = std::min(best, cur);
    }
  }
  return best;
}

bool is_admissible(const IntSequence& a) {
  static std::mutex mu;
  static std::map<IntSequence, bool> memo;
  std::lock_guard<std::mutex> lock(mu);
  return admissible_memo(a, memo);
}

const std::vector<NamedSequence>& cyclic_strong_table() {
  static const std::vector<NamedSequence> rows{
      {"P1xP1", {0, 0, 0, 0}},
      {"F1", {0, 1, 0, -1}},
      {"F2", {0, 2, 0, -2}},
      {"5a", {0, 0, -1, -1, -1}},
      {"5b", {0, -2, -1, -1, 1}},
      {"6a", {-1, -1, -1, -1, -1, -1}},
      {"6b", {-1, -1, -2, -1, -1, 0}},
      {"6c", {-2, -1, -2, -1, 0, 0}},
      {"6d", {-2, -1, -2, -2, 0, 1}},
      {"7a", {-1, -1, -2, -1, -2, -1, -1}},
      {"7b", {-2, -1, -2, -2, -1, -1, 0}},
      {"8a", {-2, -1, -2, -1, -2, -1, -2, -1}},
      {"8b", {-2, -1, -1, -2, -1, -2, -2, -1}},
      {"8c", {-2, -1, -2, -2, -2, -1, -2, 0}},
      {"9", {-2, -2, -1, -2, -2, -1, -2, -2, -1}},
  };
  return rows;
}

std::vector<IntSequence> enumerate_cyclic_strong_admissible() {
  std::set<IntSequence> seen;
  std::queue<IntSequence> todo;
  for (int k = -2; k <= 2; ++k) {
    IntSequence base{0, k, 0, -k};
    if (seen.insert(dihedral_canonical(base)).second)
      todo.push(base);
  }
  while (!todo.empty()) {
    IntSequence a = todo.front();
    todo.pop();
    const int n = static_cast<int>(a.size());
    for (int m = 1; m <= n + 1; ++m) {
      IntSequence b = augment_sequence(a, m);
      if (*std::min_element(b.begin(), b.end()) < -2)
        continue;
      if (seen.insert(dihedral_canonical(b)).second)
        todo.push(std::move(b));
    }
  }
  std::vector<IntSequence> out(seen.begin(), seen.end());
  std::stable_sort(out.begin(), out.end(),
                   [](const IntSequence& x, const IntSequence& y) { return x.size() < y.size(); });
  return out;
}

KindType classify_sequence(const IntSequence& a) {
  if (!is_admissible(a))
    fail_input(to_text(a) + " is not admissible");
  const int n = static_cast<int>(a.size());
  int low = 0, low_at = -1;
  for (int i = 0; i < n; ++i)
    if (a[i] <= -3) {
      ++low;
      low_at = i;
    }
  if (a == IntSequence{1, 1, 1})
    return {SequenceKind::kFirst, "P2", a};
  if (is_hirzebruch(a)) {
    // (0,k,0,-k) with |k| >= 3: the Hirzebruch surface F_|k|.
    const int k = std::max(std::abs(a[1]), std::abs(a[0]));
    if (k >= 3)
      return {SequenceKind::kSecond, "F" + std::to_string(k), a};
  }
  if (low == 0) {
    const IntSequence key = dihedral_canonical(a);
    for (const auto& row : cyclic_strong_table())
      if (dihedral_canonical(row.values) == key)
        return {SequenceKind::kFirst, row.name, row.values};
    fail_invariant(to_text(a) + " is cyclic strong admissible but missing from the table");
  }
  if (low > 1)
    fail_input(to_text(a) + " is not strong admissible: several entries below -2");
  IntSequence b(a);
  std::rotate(b.begin(), b.begin() + low_at + 1, b.end());
  for (const IntSequence& c : {b, sequence_symmetry(b)})
    if (auto t = match_second_kind(c))
      return {SequenceKind::kSecond, *t, c};
  fail_invariant(to_text(a) + " is strong admissible but matches no template");
}

std::vector<std::pair<int, int>> compute_ixa(const IntSequence& a) {
  const int n = static_cast<int>(a.size());
  std::vector<std::pair<int, int>> out;
  for (int k = 0; k < n; ++k) {
    int minus_one = 0;
    for (int len = 1; len < n; ++len) {
      const int v = a[(k + len - 1) % n];
      if (v == -1)
        ++minus_one;
      else if (v != -2)
        break;
      if (minus_one > 1)
        break;
      if (minus_one == 1)
        out.emplace_back(k + 1, (k + len - 1) % n + 1);
    }
  }
  return out;
}

}  // namespace wdp
