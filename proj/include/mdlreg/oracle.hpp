#pragma once

#include <cstddef>
#include <vector>

#include "mdlreg/numkit.hpp"

// Brute-force grid oracle for Q_lambda(q) = min_p lambda*KL(p||q) + H(p),
// independent of the closed forms in tempering.  The default step is 2.5e-7
// with golden-section refinement around the grid minimum.  The evaluation
// uses the shared table of p*log2(p) + (1-p)*log2(1-p) values so a full
// sweep stays a few seconds; the parallel variant splits the grid with
// OpenMP, the serial variant is the reference.

namespace mdlreg {

class QOracle {
 public:
  explicit QOracle(double step = 2.5e-7);
  double minimize_serial(double lambda, double q) const;
  double minimize_parallel(double lambda, double q) const;

 private:
  double refine(double lambda, double q, std::size_t grid_argmin) const;

  double step_;
  std::size_t n_;               // grid points on [0, 1/2]
  std::vector<double> plogp_;   // p log2 p + (1-p) log2 (1-p) on the grid
};

}  // namespace mdlreg
