#include "wdp/suites.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "wdp/errors.hpp"
#include "wdp/weyl.hpp"

namespace wdp {

namespace {

std::string seq_text(const IntSequence& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i)
    s += (i ? "," : "") + std::to_string(a[i]);
  return s + ")";
}

std::string counts(std::uint64_t total, std::uint64_t stab, std::uint64_t ess) {
  return std::to_string(total) + " = " + std::to_string(ess) + " x " + std::to_string(stab);
}

}  // namespace

Report table1_report() {
  Report rep;
  rep.title = "root systems R(X) and (-1)-classes I(X)";
  static const int roots[] = {0, 240, 126, 72, 40, 20, 8, 2};
  static const int lines[] = {0, 240, 56, 27, 16, 10, 6, 3};
  for (int d = 1; d <= 7; ++d) {
    const auto lat = PicardLattice::standard(d);
    const auto r = enumerate_classes(lat, -2).size();
    const auto l = enumerate_classes(lat, -1).size();
    rep.add("degree " + std::to_string(d), r == static_cast<std::size_t>(roots[d]) &&
                                               l == static_cast<std::size_t>(lines[d]),
            std::to_string(roots[d]) + " roots, " + std::to_string(lines[d]) + " lines",
            std::to_string(r) + " roots, " + std::to_string(l) + " lines");
  }
  return rep;
}

Report table3_report() {
  Report rep;
  rep.title = "cyclic strong admissible sequences";
  std::set<IntSequence> tabulated;
  for (const auto& row : cyclic_strong_table()) {
    const int n = static_cast<int>(row.values.size());
    const int sum = std::accumulate(row.values.begin(), row.values.end(), 0);
    const bool adm = is_admissible(row.values);
    rep.add(row.name + " " + seq_text(row.values), adm && sum == 12 - 3 * n,
            "admissible, sum " + std::to_string(12 - 3 * n),
            std::string(adm ? "admissible" : "not admissible") + ", sum " + std::to_string(sum));
    tabulated.insert(dihedral_canonical(row.values));
  }
  const auto found = enumerate_cyclic_strong_admissible();
  const std::set<IntSequence> computed(found.begin(), found.end());
  rep.add("independent enumeration equals the table", computed == tabulated && computed.size() == 15,
          "15 sequences", std::to_string(computed.size()) + (computed == tabulated ? " sequences, equal" : " sequences, different"));
  return rep;
}

Report ixa_report() {
  Report rep;
  rep.title = "I(X,A) for toric systems of the first kind";
  static const std::map<std::string, std::size_t> want{
      {"5a", 3},  {"5b", 3},  {"6a", 6},  {"6b", 6},  {"6c", 6},  {"6d", 6},
      {"7a", 10}, {"7b", 10}, {"8a", 16}, {"8b", 16}, {"8c", 16}, {"9", 27}};
  std::size_t rows = 0;
  for (const auto& row : cyclic_strong_table()) {
    if (row.values.size() < 5)
      continue;
    ++rows;
    const auto got = compute_ixa(row.values).size();
    const auto it = want.find(row.name);
    const std::size_t expected = it == want.end() ? 0 : it->second;
    rep.add(row.name + " " + seq_text(row.values), got == expected, std::to_string(expected), std::to_string(got));
  }
  rep.add("first-kind rows of length >= 5", rows == want.size(), std::to_string(want.size()), std::to_string(rows));
  return rep;
}

Report weyl_orders_report(bool with_e8) {
  Report rep;
  rep.title = "Weyl group orders";
  static const std::uint64_t orders[] = {0, 696729600, 2903040, 51840, 1920, 120, 12, 2};
  for (int d = with_e8 ? 1 : 2; d <= 7; ++d) {
    const auto got = group_order(d);
    rep.add("degree " + std::to_string(d), got == orders[d], std::to_string(orders[d]), std::to_string(got));
  }
  const auto a = initial_system(find_preset("IIb-deg2"));
  const auto orbit = orbit_of_toric_system(a, [](const ToricSystem&) {}, true);
  rep.add("orbit of the degree-2 IIb system is free", orbit == 2903040, "2903040 distinct systems",
          std::to_string(orbit) + " distinct systems");
  return rep;
}

const std::vector<CensusTableRow>& expected_census_rows(CensusMode mode) {
  static const std::vector<CensusTableRow> strong{
      {"7A1", 8064, 168, 48},   {"6A1", 4320, 48, 90},   {"5A1", 1152, 32, 36},
      {"3A1+A3", 576, 4, 144}, {"A1+2A3", 288, 4, 72},
  };
  static const std::vector<CensusTableRow> exceptional{
      {"7A1", 15120, 168, 90}, {"6A1", 6048, 48, 126}, {"5A1", 1152, 32, 36},  {"3A1+A3", 576, 4, 144},
      {"A1+2A3", 288, 4, 72},  {"2A1+D4", 36, 4, 9},   {"3A1+D4", 1062, 6, 177},
  };
  return mode == CensusMode::kStrong ? strong : exceptional;
}

Report census_table_report(CensusMode mode, const CensusOptions& opt, CensusRun* out) {
  Report rep;
  rep.title = "degree-2 IIb census, " + to_string(mode) + " mode";
  const auto& preset = find_preset("IIb-deg2");
  const auto surfaces = census_surfaces(2);
  CensusRun run = run_census(initial_system(preset), surfaces, mode, opt);
  if (!run.complete())
    fail_input("census stopped after " + std::to_string(run.tasks_done) + " of " +
               std::to_string(run.tasks_total) + " tasks");
  const auto order = group_order(2);
  std::map<std::string, const CensusRecord*> by_name;
  for (const auto& r : run.records)
    by_name[r.surface] = &r;
  std::set<std::string> listed;
  for (const auto& row : expected_census_rows(mode)) {
    listed.insert(row.surface);
    auto it = by_name.find(row.surface);
    if (it == by_name.end()) {
      rep.add(row.surface, false, counts(row.total, row.stabilizer, row.essential), "surface missing");
      continue;
    }
    const auto& r = *it->second;
    const bool reps = r.representatives.size() == r.essential;
    rep.add(row.surface, r.total == row.total && r.stabilizer == row.stabilizer && r.essential == row.essential && reps,
            counts(row.total, row.stabilizer, row.essential),
            counts(r.total, r.stabilizer, r.essential) + (reps ? "" : ", representative count differs"));
    if (mode == CensusMode::kStrong)
      rep.add(row.surface + ": fraction of the orbit below 0.3%", r.total * 1000 < 3 * order, "< 0.3%",
              std::to_string(r.total) + " / " + std::to_string(order));
  }
  std::vector<std::string> extra;
  for (const auto& r : run.records)
    if (!listed.count(r.surface) && r.total)
      extra.push_back(r.surface + " " + std::to_string(r.total));
  rep.add("other " + std::to_string(run.records.size() - listed.size()) + " classes", extra.empty(), "0 each",
          extra.empty() ? "0 each" : extra.front() + (extra.size() > 1 ? " and more" : ""));
  const auto& st = run.stats;
  rep.add("orbit walked once", st.visited == order, std::to_string(order), std::to_string(st.visited));
  rep.add("hits re-verified by the reference checker", st.reference_failures == 0,
          "0 failures", std::to_string(st.reference_checks) + " checked, " + std::to_string(st.reference_failures) + " failures");
  if (mode == CensusMode::kStrong)
    rep.add("every strong hit has a hole among -A_n, -A_{n-1,n}", st.hole_failures == 0, "0 failures",
            std::to_string(st.hole_checks) + " checked, " + std::to_string(st.hole_failures) + " failures");
  if (opt.cross_check)
    rep.add("fast anti-class test agrees with the general test", st.anti_disagreements == 0, "0 disagreements",
            std::to_string(st.anti_cross_checked) + " checked, " + std::to_string(st.anti_disagreements) +
                " disagreements");
  if (out)
    *out = std::move(run);
  return rep;
}

Report good_classes_report() {
  Report rep;
  rep.title = "good-class propositions, degrees 3 to 5";
  for (int d = 3; d <= 5; ++d)
    for (auto& l : verify_good_class_propositions(d).lines) {
      l.name = "degree " + std::to_string(d) + ": " + l.name;
      rep.lines.push_back(std::move(l));
    }
  return rep;
}

std::vector<std::string> suite_names() {
  return {"table1", "table3",       "table5-IXA", "table7",           "table8",
          "section13", "good-classes", "table9", "degree5-negative", "weyl-orders"};
}

Report run_suite(const std::string& name, const CensusOptions& opt) {
  if (name == "table1")
    return table1_report();
  if (name == "table3")
    return table3_report();
  if (name == "table5-IXA")
    return ixa_report();
  if (name == "table7")
    return census_table_report(CensusMode::kStrong, opt);
  if (name == "table8")
    return census_table_report(CensusMode::kExceptional, opt);
  if (name == "section13")
    return verify_section13();
  if (name == "good-classes")
    return good_classes_report();
  if (name == "table9")
    return verify_cyclic_strong_table();
  if (name == "degree5-negative")
    return verify_degree5_negative();
  if (name == "weyl-orders")
    return weyl_orders_report();
  std::string known;
  for (const auto& s : suite_names())
    known += (known.empty() ? "" : ", ") + s;
  fail_input("unknown suite '" + name + "'; known suites: " + known);
}

}  // namespace wdp
