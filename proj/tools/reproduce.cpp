#include <cmath>
#include <iomanip>
#include <sstream>

#include "cli.hpp"
#include "posh/families.hpp"
#include "posh/psh.hpp"

namespace posh::cli {

namespace {

constexpr double kBisectionTol = 1e-4;
constexpr double kPshTol = 1e-2;

bool within(double lo, double hi, double expected, double tol) {
  return std::abs(lo - expected) <= tol && std::abs(hi - expected) <= tol;
}

ReproRow threshold_row(std::string id, std::optional<int> m, std::string quantity, double expected,
                       double lo, double hi, double tol) {
  ReproRow row{std::move(id), m, std::move(quantity), expected, lo, hi, tol, within(lo, hi, expected, tol), ""};
  return row;
}

ReproRow index_row(std::string id, std::optional<int> m, int expected, const StabilityTable& table) {
  ReproRow row{std::move(id), m, "stability index", double(expected), double(table.index),
               double(table.index), 0.0, table.index == expected, ""};
  return row;
}

void example1_rows(std::uint64_t seed, const SearchBudget& budget, std::vector<ReproRow>& rows) {
  const StabilityTable t = stability_index_estimate(example1_spec(), 3, kBisectionTol, budget, seed);
  const double expected[] = {0.0, 2.0, 2.0};
  const double tols[] = {1e-3, 1e-3, 1e-2};
  for (int k = 1; k <= 3; ++k) {
    const auto& r = t.thresholds.at(k);
    rows.push_back(threshold_row("ex1.P" + std::to_string(k), std::nullopt,
                                 "Example 1: P_" + std::to_string(k) + " threshold in c", expected[k - 1],
                                 example1_c_from_lambda(r.upper), example1_c_from_lambda(r.lower),
                                 tols[k - 1]));
  }
  rows.push_back(index_row("ex1.index", std::nullopt, 2, t));
}

void m1_rows(std::uint64_t seed, const SearchBudget& budget, std::vector<ReproRow>& rows) {
  const StabilityTable t = stability_index_estimate(dangelo_spec(1), 3, kBisectionTol, budget, seed);
  const double expected[] = {4.0, 2.0, 2.0};
  for (int k = 1; k <= 3; ++k) {
    const auto& r = t.thresholds.at(k);
    rows.push_back(threshold_row("m1.P" + std::to_string(k), 1, "P_" + std::to_string(k) + " threshold",
                                 expected[k - 1], r.lower, r.upper, 1e-3));
  }
  rows.push_back(index_row("m1.index", 1, 2, t));
}

void m2_rows(std::uint64_t seed, const SearchBudget& budget, std::vector<ReproRow>& rows) {
  const FamilySpec fam = dangelo_spec(2);
  const StabilityTable t = stability_index_estimate(fam, 4, kBisectionTol, budget, seed);
  const auto& p1 = t.thresholds.at(1);
  rows.push_back(threshold_row("m2.P1", 2, "P_1 threshold", 16.0, p1.lower, p1.upper, 1e-3));

  const PshThreshold psh = psh_threshold(fam, PshMode::Psh, {8.0, 16.0}, kPshTol, budget, seed);
  rows.push_back(threshold_row("m2.psh", 2, "psh threshold", 12.0, psh.lower, psh.upper, 0.1));
  const PshThreshold log_psh = psh_threshold(fam, PshMode::LogPsh, {8.0, 16.0}, kPshTol, budget, seed);
  rows.push_back(threshold_row("m2.log_psh", 2, "log-psh threshold", 12.0, log_psh.lower, log_psh.upper, 0.1));

  const auto& p2 = t.thresholds.at(2);
  rows.push_back(threshold_row("m2.P2", 2, "P_2 threshold", 8.0, p2.lower, p2.upper, 1e-3));

  const auto& p3 = t.thresholds.at(3);
  const auto& p4 = t.thresholds.at(4);
  ReproRow row = threshold_row("m2.P3+", 2, "P_k threshold for k >= 3 equals P_inf", 6.0, p3.lower, p3.upper, 1e-3);
  row.pass = row.pass && within(p4.lower, p4.upper, 6.0, 1e-3) && std::abs(t.pinf - 6.0) <= 1e-9 &&
             t.index == 3;
  std::ostringstream note;
  note << std::setprecision(10) << "P_4 [" << p4.lower << ", " << p4.upper << "], pinf " << t.pinf
       << ", index " << t.index;
  row.note = note.str();
  rows.push_back(std::move(row));
}

void m3_rows(std::uint64_t seed, const SearchBudget& budget, std::vector<ReproRow>& rows) {
  const FamilySpec fam = dangelo_spec(3);
  const StabilityTable t = stability_index_estimate(fam, 5, kBisectionTol, budget, seed);
  const auto& p1 = t.thresholds.at(1);
  const auto& p2 = t.thresholds.at(2);
  rows.push_back(threshold_row("m3.P1", 3, "P_1 threshold", 64.0, p1.lower, p1.upper, 1e-3));
  rows.push_back(threshold_row("m3.P2", 3, "P_2 threshold", 32.0, p2.lower, p2.upper, 1e-3));

  const auto& p3 = t.thresholds.at(3);
  const WitnessCheck prop5 = verify_witness(member(fam, 22.01), prop5_points(3));
  ReproRow row{"m3.P3", 3, "P_3 upper bracket (at most 22)", 22.0, p3.lower, p3.upper, 1e-3,
               p3.upper <= 22.0 + 1e-3 && prop5.certified, ""};
  std::ostringstream note;
  note << std::setprecision(6) << "three-point witness min eigenvalue at lambda = 22.01: " << prop5.min_eigenvalue;
  row.note = note.str();
  rows.push_back(std::move(row));

  for (int k : {4, 5}) {
    const auto& r = t.thresholds.at(k);
    rows.push_back(threshold_row("m3.P" + std::to_string(k), 3, "P_" + std::to_string(k) + " threshold", 20.0,
                                 r.lower, r.upper, 1e-3));
  }
  rows.push_back(index_row("m3.index", 3, 4, t));
}

void dehomogenized_rows(std::uint64_t seed, const SearchBudget& budget, std::vector<ReproRow>& rows) {
  const double expected = 3.0 / 32.0 * (69.0 + 11.0 * std::sqrt(33.0));
  const PshThreshold t = psh_threshold(dangelo_spec(2), PshMode::Psh, {8.0, 16.0}, kPshTol, budget, seed, 1);
  rows.push_back(threshold_row("m2.psh_chart", 2, "psh threshold of the m = 2 member with z_2 = 1",
                               expected, t.lower, t.upper, 0.05));
}

}  // namespace

std::vector<ReproRow> reproduce_rows(std::optional<int> only_m, std::uint64_t seed, const SearchBudget& budget) {
  std::vector<ReproRow> rows;
  if (!only_m) example1_rows(seed, budget, rows);
  if (!only_m || *only_m == 1) m1_rows(seed, budget, rows);
  if (!only_m || *only_m == 2) m2_rows(seed, budget, rows);
  if (!only_m || *only_m == 3) m3_rows(seed, budget, rows);
  if (!only_m || *only_m == 2) dehomogenized_rows(seed, budget, rows);
  return rows;
}

Json rows_json(const std::vector<ReproRow>& rows) {
  Json out = Json::array();
  for (const auto& r : rows) {
    Json j{{"id", r.id}};
    j["m"] = r.m ? Json(*r.m) : Json(nullptr);
    j["quantity"] = r.quantity;
    j["expected"] = r.expected;
    j["bracket"] = {r.lower, r.upper};
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    if (!r.note.empty()) j["note"] = r.note;
    out.push_back(std::move(j));
  }
  return out;
}

std::string rows_markdown(const std::vector<ReproRow>& rows) {
  std::ostringstream os;
  os << std::setprecision(8);
  os << "| id | quantity | expected | computed bracket | tolerance | result |\n";
  os << "|----|----------|----------|------------------|-----------|--------|\n";
  for (const auto& r : rows) {
    os << "| " << r.id << " | " << r.quantity << " | " << r.expected << " | [" << r.lower << ", " << r.upper
       << "] | " << r.tolerance << " | " << (r.pass ? "pass" : "FAIL") << " |\n";
  }
  return os.str();
}

}  // namespace posh::cli
