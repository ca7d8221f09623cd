#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lights/formulas.hpp"
#include "lights/game.hpp"
#include "lights/report.hpp"

namespace lights::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolation = 1;
inline constexpr int kExitUsage = 2;

struct Options {
  std::string verb;
  std::string g;
  std::string h;
  SwitchMode mode = SwitchMode::open;
  std::uint32_t p = 2;
  bool json = false;
  std::optional<std::string> csv_path;
  std::uint64_t seed = 1;
  std::size_t max_oracle = kDefaultOracleCap;
  std::vector<std::string> positional;
  std::vector<std::string> argv;
};

struct Outcome {
  int exit_code = kExitOk;
  std::optional<Report> report;
  std::string out;
  std::string err;
};

/// kExitOk for a clean report, kExitViolation when it lists violations.
int exit_code_for(const Report& report);

/// Runs one command; `args` excludes the program name. Never throws.
Outcome run(const std::vector<std::string>& args);

/// Formula, oracle and lower bound for one product G x H.
struct PairEvaluation {
  std::size_t formula = 0;                // sum of gcd degrees of invariant factors
  std::optional<std::size_t> theorem;     // irreducible-factor form; absent above the factor cap
  std::optional<std::size_t> oracle;      // absent above the oracle cap
  std::size_t lower_bound = 0;
};

/// Nullity of the switching matrix of G x H over GF(p) in the given mode.
PairEvaluation evaluate_pair(const Graph& g, const Graph& h, SwitchMode mode, FieldSpec field,
                             std::size_t oracle_cap);

/// Sweep ranges: `family:LO..HI[/STEP]` for path, cycle, star and complete, a
/// fixed graph spec, or `random:N:COUNT` (COUNT random pairs with at most N
/// vertices per factor; a `random:M` second range bounds H separately).
Report sweep(const Options& opts);

/// target: conjecture-open, conjecture-closed, lemma, example2.
Report verify(std::string_view target, const Options& opts);

/// The piecewise nullity expression for stars times paths, evaluated as
/// written: 0 when nu = 0, (size - 3) + nu for 1 <= nu <= 3, size otherwise.
/// Negative for size < 3, which the expression does not exclude.
std::int64_t star_path_piecewise(std::size_t nu, std::size_t size);

} // namespace lights::cli
