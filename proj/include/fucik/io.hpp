// Serialization of curve traces: lossless CSV, and a deterministic SVG
// rendering of the curve in the (alpha, beta) plane.
#ifndef FUCIK_IO_HPP
#define FUCIK_IO_HPP

#include <string>
#include <vector>

#include "minimax.hpp"

namespace fucik {

struct CurveRow {
  double p = 0;
  double alpha = 0;  // p + c
  double beta = 0;   // c
  double grad_norm = 0;
  double residual = 0;
  long long iterations = 0;
  bool refined = false;
};

std::vector<CurveRow> rows_from_trace(const CurveTrace<double>& tr);

// Header `p,alpha,beta,grad_norm,residual,iterations,refined`; reals carry 17
// significant digits so parsing reproduces every double bit-exactly.
std::string to_csv(const std::vector<CurveRow>& rows);

// Inverse of to_csv. Throws std::invalid_argument on a malformed header,
// field count, or number.
std::vector<CurveRow> parse_csv(const std::string& text);

// Fixed-size plot of beta against alpha with dashed cross lines at the ground
// level and a marker on the diagonal at the second level. Byte-identical
// output for identical input; an empty row set renders the frame without a
// polyline.
std::string render_svg(const std::vector<CurveRow>& rows, double lam1, double lam2);

}  // namespace fucik

#endif  // FUCIK_IO_HPP
