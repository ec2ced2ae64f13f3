#pragma once

// Tables of theta constants theta[d;e](tau, 0) over all level-n
// characteristics, and the counts derived from them.

#include <string>
#include <vector>

#include "thetalab/characteristic.hpp"
#include "thetalab/period_matrix.hpp"
#include "thetalab/theta.hpp"

namespace thetalab {

// Decision rule on magnitudes relative to the table maximum.
struct ThresholdPolicy {
  double vanishing = 1e-6;     // below: vanishing
  double nonvanishing = 1e-3;  // above: nonvanishing; in between: AmbiguityError
};

// True for vanishing.  Throws AmbiguityError naming `subject` inside the band.
bool classify_vanishing(double relative, const ThresholdPolicy& policy, const std::string& subject);

enum class TableMethod {
  automatic,  // product rule when tau is block diagonal (or g = 1), else numerical
  numerical,  // thresholds on the full table
  product,    // per-block decision, product of block values
};

struct ConstantRecord {
  Characteristic characteristic;
  Complex value;
  double magnitude = 0.0;
  double tail_bound = 0.0;
  double margin = 0.0;  // magnitude / max magnitude over the table
  bool vanishing = false;
};

struct ConstantTable {
  int level = 0;
  PeriodMatrix tau;
  std::vector<ConstantRecord> records;  // canonical characteristic order
  double max_magnitude = 0.0;
  TableMethod method = TableMethod::numerical;  // method actually used
  bool certified = false;  // every vanishing decision is exact (1x1 blocks only)

  int vanishing_count() const;
};

// theta[c](tau, z) for every c, in input order.  OpenMP over characteristics.
std::vector<ThetaValue> evaluate_values(const PeriodMatrix& tau, const ComplexVector& z,
                                        const std::vector<Characteristic>& chars,
                                        const ThetaOptions& opts = {});

// Single-threaded reference for evaluate_values.
std::vector<ThetaValue> evaluate_values_serial(const PeriodMatrix& tau, const ComplexVector& z,
                                               const std::vector<Characteristic>& chars,
                                               const ThetaOptions& opts = {});

ConstantTable constant_table(const PeriodMatrix& tau, int n, const ThetaOptions& opts = {},
                             TableMethod method = TableMethod::automatic,
                             const ThresholdPolicy& policy = {});

struct TorsionCount {
  int count = 0;
  double smallest_nonvanishing = 0.0;  // relative magnitude; 0 if none
  double largest_vanishing = 0.0;      // relative magnitude; 0 if none
  bool certified = false;
};

TorsionCount count_torsion(const ConstantTable& table);
TorsionCount count_torsion(const PeriodMatrix& tau, int n, const ThetaOptions& opts = {},
                           TableMethod method = TableMethod::automatic,
                           const ThresholdPolicy& policy = {});

struct MCount {
  int count = 0;  // half-integer characteristics with theta(tau, 2y) nonzero
  double smallest_nonvanishing = 0.0;
  double largest_vanishing = 0.0;
};

MCount m_count(const PeriodMatrix& tau, const ComplexVector& y, const ThetaOptions& opts = {},
               const ThresholdPolicy& policy = {});

const char* to_string(TableMethod m) noexcept;

}  // namespace thetalab
