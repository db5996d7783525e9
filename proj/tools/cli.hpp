#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "posh/serialize.hpp"
#include "posh/witness.hpp"

namespace posh::cli {

enum ExitCode : int {
  kOk = 0,
  kViolation = 2,
  kParseError = 3,
  kUsageError = 4,
  kReproductionFailure = 5,
};

/// Reads a polynomial JSON file; ParseError covers unreadable files too.
HermitianPoly load_polynomial(const std::string& path);

/// Exactly constructed builtin family ("dangelo" needs m >= 1).
FamilySpec builtin_family(const std::string& name, int m);

int cmd_analyze(const HermitianPoly& r, std::ostream& out);
int cmd_test(const HermitianPoly& r, int k, std::uint64_t seed, const SearchBudget& budget,
             std::ostream& out);
int cmd_threshold(const std::string& family, int m, int k, double tol, std::uint64_t seed,
                  const SearchBudget& budget, std::ostream& out);
int cmd_witness(const std::string& family, int m, const std::string& kind,
                std::optional<double> lambda, std::ostream& out);
int cmd_psh(const HermitianPoly& r, bool log_mode, std::optional<std::size_t> dehomogenize_var,
            std::uint64_t seed, const SearchBudget& budget, std::ostream& out);

/// One compared quantity of the reproduction table.
struct ReproRow {
  std::string id;
  std::optional<int> m;  // empty for rows outside the dangelo families
  std::string quantity;
  double expected = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

std::vector<ReproRow> reproduce_rows(std::optional<int> only_m, std::uint64_t seed,
                                     const SearchBudget& budget = {});
Json rows_json(const std::vector<ReproRow>& rows);
std::string rows_markdown(const std::vector<ReproRow>& rows);
int cmd_reproduce(std::optional<int> only_m, bool json_only, std::uint64_t seed, std::ostream& out);

/// Full command-line entry point; returns the process exit code.
int run(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace posh::cli
