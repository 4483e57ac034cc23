#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wdp/sequence.hpp"
#include "wdp/toric.hpp"

namespace wdp {

// 64-bit FNV-1a of `text` as 16 hex digits; used for config hashes.
std::string fnv1a_hex(std::string_view text);

// ---- Surfaces -------------------------------------------------------------

// One representative per W-conjugacy class of root subsystems of the degree-d
// lattice, as SurfaceModels with the simple roots as irreducible curves.
// Named like the catalog ("A3,4" when a type splits into classes,
// told apart by |I^irr|). Sorted by rank, then name; "none" first.
std::vector<SurfaceModel> root_subsystem_classes(int degree);

// Index into `classes` of the class W-conjugate to `roots`; nullopt if none.
std::optional<std::size_t> conjugate_class(int degree, const std::vector<SurfaceModel>& classes,
                                           const std::vector<DivisorClass>& roots);

// Surfaces a census runs over: every subsystem class, with the worked
// degree-2 surface A1+2A3 substituted by its explicit curve configuration.
std::vector<SurfaceModel> census_surfaces(int degree);

// ---- Sequences and initial systems ----------------------------------------

struct SequencePreset {
  std::string name;  // "IIb-deg2", "deg2-1", ..., "deg1-8"
  int degree = 0;
  IntSequence sequence;
  std::vector<std::string> system;  // printed initial system; empty if built
};
const std::vector<SequencePreset>& sequence_presets();
const SequencePreset& find_preset(const std::string& name);

// Indices m_1, m_2, ... with a = augm_{m_k}(...augm_{m_1}(1,1,1)); nullopt if
// a is not reachable from the plane.
std::optional<std::vector<int>> augmentation_path_from_plane(const IntSequence& a);
// A toric system with A^2 = a built by augmenting (L, L, L), or, when a does
// not contract to the plane, an odd Hirzebruch system (0,k,0,-k) on the
// one-point blow-up.
ToricSystem standard_system(const IntSequence& a);
// The printed system of a preset if there is one, else standard_system.
ToricSystem initial_system(const SequencePreset& p);

// Strong admissible sequences of the second kind of length n, one per class
// under rotation and reversal, in lexicographic order of the canonical form.
std::vector<IntSequence> second_kind_sequences(int n);

// ---- Counterexample search ------------------------------------------------

enum class CensusMode { kStrong, kExceptional };
std::string to_string(CensusMode m);
CensusMode parse_mode(const std::string& s);

struct CensusOptions {
  int workers = 1;
  // Depth at which the group walk is split into independent tasks.
  int split_depth = 6;
  // Re-check each fast anti-class verdict with the general test.
  bool cross_check = false;
  // Keep the counterexample systems and canonicalize representatives.
  bool keep_systems = true;
  // Resumable runs: progress is saved here after every batch of tasks.
  std::string checkpoint;
  // Stop after this many tasks in this invocation (0 = no limit).
  std::size_t max_tasks = 0;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

struct CensusRecord {
  std::string surface;
  IntSequence sequence;
  CensusMode mode = CensusMode::kStrong;
  std::uint64_t total = 0;
  std::uint64_t stabilizer = 0;  // 0 when not computed (empty long runs)
  std::uint64_t essential = 0;
  // Least element of each stabilizer orbit, sorted.
  std::vector<ToricSystem> representatives;
};

struct CensusStats {
  std::uint64_t visited = 0;
  std::uint64_t anti_checks = 0;         // fast anti-class tests
  std::uint64_t anti_cross_checked = 0;  // of which re-checked
  std::uint64_t anti_disagreements = 0;
  // Hits re-verified with the reference checker; failures must stay zero.
  std::uint64_t reference_checks = 0, reference_failures = 0;
  // Strong hits checked for a hole among -A_n, -A_{n-1,n}.
  std::uint64_t hole_checks = 0, hole_failures = 0;
};

struct CensusRun {
  std::vector<CensusRecord> records;  // one per surface, input order
  CensusStats stats;
  std::size_t tasks_done = 0, tasks_total = 0;
  bool complete() const { return tasks_done == tasks_total; }
};

// Streams the W-orbit of A0 once and applies, for every surface, the four
// tests: (1) no (-2)-window through A_n is anti-effective; (2) no (-2)-window
// inside A_1..A_{n-1} is effective or anti-effective (strong) or
// anti-effective (exceptional); (3) every window in I(X,A) is a reducible
// (-1)-class; (4) no window through A_n of square <= -3 is anti-effective.
CensusRun run_census(const ToricSystem& a0, const std::vector<SurfaceModel>& surfaces, CensusMode mode,
                     const CensusOptions& opt = {});
CensusRecord search_counterexamples(const SurfaceModel& s, const IntSequence& a, const ToricSystem& a0,
                                    CensusMode mode, const CensusOptions& opt = {});

// On about `samples` evenly spaced members of the orbit of A0 (the first ones
// in degree 1), compares optimized and reference checkers in both modes, and
// the census verdicts with "reference-exceptional and no irreducible line in
// I(X,A)". A sample with any mismatch counts as one disagreement.
struct AgreementResult {
  std::uint64_t samples = 0, disagreements = 0;
};
AgreementResult checker_agreement(const SurfaceModel& s, const ToricSystem& a0, std::uint64_t samples);

// ---- Reports ----------------------------------------------------------------

struct ReportLine {
  std::string name;
  bool ok = false;
  std::string expected, got;
};
struct Report {
  std::string title;
  std::vector<ReportLine> lines;
  void add(std::string name, bool ok, std::string expected = {}, std::string got = {});
  bool ok() const;
};

// The explicit degree-2 counterexample: axioms, type, strong exceptionality,
// I(X,A) against the printed list, the (-3)-anti-class chains and holes.
Report verify_section13();

// ---- Good classes ------------------------------------------------------------

// r-classes D with C.D >= 1 for every irreducible (-1)-curve C.
std::vector<DivisorClass> good_classes(const SurfaceModel& s, int r);
std::vector<DivisorClass> good_zero_classes(const SurfaceModel& s);
std::vector<DivisorClass> good_one_classes(const SurfaceModel& s);
// Pairs (S1, S2) of 0-classes with S1.S2 = 1 such that every irreducible
// (-1)-curve meets S1 or S2 positively; each unordered pair once.
std::vector<std::pair<DivisorClass, DivisorClass>> good_zero_pairs(const SurfaceModel& s);

// The computational propositions behind types III-VI and the degree-3
// auxiliaries, checked exhaustively on every catalog surface of the degree.
Report verify_good_class_propositions(int degree);

// ---- Cyclic strong classification ---------------------------------------------

struct CyclicStrongRow {
  int degree;
  std::string surface;  // catalog name, or "P2", "F0", "F1", "F2"
  std::vector<std::string> system;
};
const std::vector<CyclicStrongRow>& cyclic_strong_systems();
// Surfaces without cyclic strong systems and the blow-down reduction named
// in the table (surface of degree d+1 and the point blown up).
struct NoCyclicStrongRow {
  int degree;
  std::string surface, reduces_to, point;
};
const std::vector<NoCyclicStrongRow>& no_cyclic_strong_surfaces();

// Tabulated cyclic strong systems validate and are cyclic strong exceptional
// on their surfaces; positive and negative lists partition each catalog
// degree; blow-down targets exist (reported as tabulated, not proven).
Report verify_cyclic_strong_table();
// Exhaustive search over the orbits of both length-7 cyclic strong
// admissible sequences on X_{5,A3} and X_{5,A4}, with a positive control.
Report verify_degree5_negative();
// Both of the above in one report.
Report verify_cyclic_strong_classification();

}  // namespace wdp
