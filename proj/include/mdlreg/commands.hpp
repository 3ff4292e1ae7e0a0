#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "mdlreg/bounds.hpp"
#include "mdlreg/simlab.hpp"

// Command implementations behind the CLI, factored out so tests can drive
// them without spawning processes.  Each builder returns the full output
// document as a string; precondition violations throw std::invalid_argument
// (mapped to exit 2 by the front end).

namespace mdlreg {

inline constexpr const char* kToolVersion = "mdlreg 0.1.0";

struct CurveConfig {
  std::vector<double> lambdas;
  std::vector<double> grid;  // L* values, strictly increasing in [0, 1/2]
};
std::string curve_csv(const CurveConfig& cfg);
std::string curve_svg(const CurveConfig& cfg);

struct SweepConfig {
  double l_star = 0.1;
  std::vector<double> lambdas;  // all > 0
};
std::string lambda_sweep_csv(const SweepConfig& cfg);
std::string lambda_sweep_svg(const SweepConfig& cfg);

struct CompareGlConfig {
  std::vector<double> grid;
};
// Throws std::runtime_error if ell_1 <= H/2 anywhere on the open grid.
std::string compare_gl_csv(const CompareGlConfig& cfg);
std::string compare_gl_svg(const CompareGlConfig& cfg);

struct SimulateConfig {
  HardInstance inst;
  std::vector<std::uint64_t> m_grid;
  std::uint64_t trials = 1000;
  std::uint64_t seed = 0;
  int jobs = 1;
  bool dump_trials = false;
};
std::string simulate_csv(const SimulateConfig& cfg);
std::string simulate_json(const SimulateConfig& cfg);

struct BoundsRequest {
  std::string op;  // mdl-upper | consistency | srm | kl-epsilon |
                   // tail-bracket | min-binomial
  double lambda = 1.0;
  double l_star = 0.0;
  double desc_len = 0.0;
  std::uint64_t m = 1;
  std::uint64_t n = 1;
  double p = 0.5;
  double a = 0.0;
  double log2_r = 1.0;
  BoundConfig cfg;
};
std::string bounds_json(const BoundsRequest& req);

// Runs the invariant suites; returns the number of failing suites and
// prints one line per suite to `out`.
int run_verify(bool fast, std::ostream& out);

}  // namespace mdlreg
