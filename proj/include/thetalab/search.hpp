#pragma once

// Principal-submatrix rank search on B = N N^t:
//
//   h0 = min { k : some principal submatrix S of B of order k has rank S <= k - 2^g }.
//
// Exhaustive at g = 2; at g = 3 a certified witness, orbit-reduced exhaustive
// levels and a seeded randomized probe.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "thetalab/int_matrix.hpp"

namespace thetalab {

// A subset of K_g^+ (bit i = i-th even characteristic in canonical order).
class SubsetMask {
 public:
  SubsetMask(int g, std::uint64_t bits);

  int genus() const noexcept { return g_; }
  std::uint64_t bits() const noexcept { return bits_; }
  int order() const noexcept { return order_; }
  std::vector<int> indices() const;
  std::string hex() const;

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

 private:
  int g_;
  std::uint64_t bits_;
  int order_;
};

int principal_rank(const IntMatrix& B, const SubsetMask& mask);

struct OrderStats {
  int order = 0;
  long long subsets = 0;    // subsets (or orbits) examined at this order
  int min_rank = -1;        // -1: not examined
  bool exhaustive = false;  // min_rank is the minimum over every subset of this order
  bool feasible = false;    // min_rank <= order - 2^g
};

struct Witness {
  SubsetMask mask;
  int rank = 0;  // exact
};

struct SearchReport {
  int g = 0;
  std::string strategy;
  bool exhaustive = false;        // h0 determined by a complete scan
  std::optional<int> h0;          // exact value when known
  int h0_lower = 0;               // certified: no witness of smaller order exists
  int h0_upper = 0;               // certified: a witness of this order exists
  std::vector<Witness> witnesses;  // certified witnesses of order h0_upper
  std::vector<OrderStats> orders;     // indexed by order
  std::uint64_t seed = 0;
  long long budget = 0;
  long long evaluations = 0;
  bool orbit_reduction = false;
  int exhaustive_levels = 0;  // orders examined exhaustively (g = 3)
  // Randomized part: best k - rank seen per order (exact rank of the best
  // mask found; the search itself is heuristic), and any confirmed witness
  // below the certified upper bound.
  std::vector<int> best_deficiency;
  long long restarts = 0;
  std::vector<Witness> discoveries;

  nlohmann::json to_json() const;
};

struct ExhaustiveOptions {
  bool orbit_reduction = false;
};

// Every subset of K_2^+ (1024 masks).  OpenMP over masks.
SearchReport h0_exhaustive(int g = 2, const ExhaustiveOptions& opts = {});
// Single-threaded reference scan.
SearchReport h0_exhaustive_serial(int g = 2, const ExhaustiveOptions& opts = {});

struct ProbeOptions {
  long long budget = 1000000;       // rank evaluations (exhaustive levels count canonical forms too)
  std::uint64_t seed = 42;
  bool orbit_reduction = true;
  double exhaustive_share = 0.75;   // budget fraction for orbit-reduced exhaustive levels
  int max_level = 36;               // highest order scanned exhaustively
  long long restart_budget = 2000;  // evaluations per randomized restart
  int min_order = 0;                // randomized search examines orders in [min_order, max_order],
                                    // raised to the certified lower bound
  int max_order = 26;
};

SearchReport h0_probe(int g = 3, const ProbeOptions& opts = {});

// Orders scanned exhaustively by orbit representatives: the minimum rank at
// each level over all subsets, found from one representative per orbit of
// the even-point action.  Returned stats are indexed by order, from 0 up to
// `levels` or the first order holding a witness, whichever comes first.
std::vector<OrderStats> orbit_levels(int g, int levels, long long* canonical_forms = nullptr);

}  // namespace thetalab
