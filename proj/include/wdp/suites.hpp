#pragma once

#include <string>
#include <vector>

#include "wdp/census.hpp"

namespace wdp {

// Reproduction suites: each compares computed values with the expected ones
// and returns one report line per row.

// |R| and |I| of the degree-d lattice for d = 1..7.
Report table1_report();
// Cyclic strong admissible sequences: enumeration against the table, with
// admissibility and the sum rule per row.
Report table3_report();
// |I(X,A)| for the twelve first-kind rows of length >= 5.
Report ixa_report();
// Group orders for degrees 2..7 (and 1 when `with_e8`), plus a free orbit of
// the degree-2 IIb system.
Report weyl_orders_report(bool with_e8 = false);

// The degree-2 IIb census over every subsystem class, against the expected
// per-surface counts for the mode. Surfaces not listed must report zero. The run is returned through `run`.
struct CensusTableRow {
  std::string surface;
  std::uint64_t total, stabilizer, essential;
};
const std::vector<CensusTableRow>& expected_census_rows(CensusMode mode);
Report census_table_report(CensusMode mode, const CensusOptions& opt, CensusRun* run = nullptr);

// Good-class propositions for degrees 3, 4 and 5 in one report.
Report good_classes_report();

std::vector<std::string> suite_names();
// Throws InputError for an unknown name.
Report run_suite(const std::string& name, const CensusOptions& opt);

}  // namespace wdp
