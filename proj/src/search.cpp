#include "thetalab/search.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <random>

#include "thetalab/errors.hpp"
#include "thetalab/pairing.hpp"
#include "thetalab/parallel.hpp"
#include "thetalab/symplectic.hpp"

namespace thetalab {

namespace {

constexpr std::uint64_t kPrime = 2147483647U;

int kplus(int g) { return (1 << (g - 1)) * ((1 << g) + 1); }

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t below(std::mt19937_64& rng, std::uint64_t n) { return rng() % n; }

// Rank of the principal submatrix: modular first, exact only when deficient.
int fast_principal_rank(const IntMatrix& B, const SubsetMask& mask) {
  const IntMatrix S = B.principal(mask.indices());
  const int r = modular_rank(S);
  return r == mask.order() ? r : exact_rank(S);
}

void fill_h0_bounds(SearchReport& rep) {
  const int target = 1 << rep.g;
  rep.h0_lower = 0;
  // An order is excluded when every subset of it is known to have rank > k - 2^g.
  int last_exhaustive = -1;
  for (const auto& s : rep.orders)
    if (s.exhaustive) last_exhaustive = s.order;
  for (int k = 0; k < static_cast<int>(rep.orders.size()); ++k) {
    int floor_rank = -1;
    if (k <= last_exhaustive && rep.orders[k].exhaustive) {
      floor_rank = rep.orders[k].min_rank;
    } else if (last_exhaustive >= 0) {
      // Minimum rank can only grow along inclusions.
      floor_rank = rep.orders[last_exhaustive].min_rank;
    }
    if (floor_rank < 0 || floor_rank <= k - target) break;
    rep.h0_lower = k + 1;
  }
}

SearchReport exhaustive_scan(int g, const ExhaustiveOptions& opts, bool parallel) {
  if (g != 2) throw InputError("exhaustive h0 scan is supported for g = 2 only");
  const IntMatrix B = build_B(g);
  const int size = kplus(g);
  const std::uint64_t total = 1ULL << size;
  const int target = 1 << g;

  std::vector<std::uint64_t> masks;
  if (opts.orbit_reduction) {
    const EvenPointGroup group(g);
    std::vector<std::uint64_t> canon(total);
    auto body = [&](std::size_t m) { canon[m] = group.canonical(m); };
    if (parallel) {
      parallel_for(total, body);
    } else {
      for (std::size_t m = 0; m < total; ++m) body(m);
    }
    std::sort(canon.begin(), canon.end());
    canon.erase(std::unique(canon.begin(), canon.end()), canon.end());
    masks = std::move(canon);
  } else {
    masks.resize(total);
    for (std::uint64_t m = 0; m < total; ++m) masks[m] = m;
  }

  std::vector<int> ranks(masks.size());
  auto rank_body = [&](std::size_t i) { ranks[i] = principal_rank(B, SubsetMask(g, masks[i])); };
  if (parallel) {
    parallel_for(masks.size(), rank_body);
  } else {
    for (std::size_t i = 0; i < masks.size(); ++i) rank_body(i);
  }

  SearchReport rep;
  rep.g = g;
  rep.strategy = opts.orbit_reduction ? "exhaustive-orbits" : "exhaustive";
  rep.exhaustive = true;
  rep.orbit_reduction = opts.orbit_reduction;
  rep.evaluations = static_cast<long long>(masks.size());
  rep.orders.resize(size + 1);
  for (int k = 0; k <= size; ++k) rep.orders[k].order = k;
  for (std::size_t i = 0; i < masks.size(); ++i) {
    auto& s = rep.orders[std::popcount(masks[i])];
    ++s.subsets;
    if (s.min_rank < 0 || ranks[i] < s.min_rank) s.min_rank = ranks[i];
  }
  for (auto& s : rep.orders) {
    s.exhaustive = true;
    s.feasible = s.min_rank >= 0 && s.min_rank <= s.order - target;
  }
  for (const auto& s : rep.orders)
    if (s.feasible) {
      rep.h0 = s.order;
      break;
    }
  if (!rep.h0) throw VerificationError("h0 scan", "no feasible order found");
  rep.h0_lower = rep.h0_upper = *rep.h0;
  for (std::size_t i = 0; i < masks.size(); ++i)
    if (std::popcount(masks[i]) == *rep.h0 && ranks[i] <= *rep.h0 - target)
      rep.witnesses.push_back({SubsetMask(g, masks[i]), ranks[i]});
  return rep;
}

struct LevelScan {
  std::vector<OrderStats> stats;  // orders 0..last completed level
  std::vector<Witness> feasible;  // representatives meeting rank <= k - 2^g
  long long cost = 0;             // canonical forms plus rank evaluations
};

// One representative per orbit of k-subsets, level by level: every
// (k+1)-subset is an image of some k-representative plus one point.  Stops
// before a level whose cost would exceed `cap` (cap < 0: no limit) and after
// the first level containing a feasible subset.
LevelScan scan_levels(int g, const IntMatrix& B, int max_level, long long cap) {
  const int size = kplus(g);
  const int target = 1 << g;
  const EvenPointGroup group(g);
  LevelScan out;
  std::vector<std::uint64_t> reps{0};
  auto fits = [&](long long extra) { return cap < 0 || out.cost + extra <= cap; };
  for (int k = 0; k <= max_level; ++k) {
    if (k > 0) {
      const long long cost = static_cast<long long>(reps.size()) * (size - k + 1);
      if (!fits(cost)) break;
      std::vector<std::uint64_t> jobs;
      for (auto r : reps)
        for (int p = 0; p < size; ++p)
          if (!((r >> p) & 1ULL)) jobs.push_back(r | (1ULL << p));
      std::vector<std::uint64_t> next(jobs.size());
      parallel_for(jobs.size(), [&](std::size_t i) { next[i] = group.canonical(jobs[i]); });
      out.cost += cost;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      reps = std::move(next);
      if (!fits(static_cast<long long>(reps.size()))) break;
    }
    std::vector<int> ranks(reps.size());
    parallel_for(reps.size(), [&](std::size_t i) { ranks[i] = fast_principal_rank(B, SubsetMask(g, reps[i])); });
    out.cost += static_cast<long long>(reps.size());
    OrderStats s;
    s.order = k;
    s.subsets = static_cast<long long>(reps.size());
    s.min_rank = *std::min_element(ranks.begin(), ranks.end());
    s.exhaustive = true;
    s.feasible = s.min_rank <= k - target;
    out.stats.push_back(s);
    if (s.feasible) {
      for (std::size_t i = 0; i < reps.size(); ++i)
        if (ranks[i] <= k - target) out.feasible.push_back({SubsetMask(g, reps[i]), exact_rank(B.principal(SubsetMask(g, reps[i]).indices()))});
      break;
    }
  }
  return out;
}

struct RowBasis {
  int cols = 0;
  std::vector<std::vector<std::uint64_t>> rows;
  std::vector<int> pivots;

  // Reduces v in place; true when it reduces to zero.
  bool reduce(std::vector<std::uint64_t>& v) const {
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const std::uint64_t f = v[pivots[i]];
      if (f == 0) continue;
      for (int j = 0; j < cols; ++j) v[j] = (v[j] + (kPrime - f) * rows[i][j]) % kPrime;
    }
    return std::all_of(v.begin(), v.end(), [](std::uint64_t x) { return x == 0; });
  }

  // Adds v; returns true when the rank grew.
  bool add(std::vector<std::uint64_t> v) {
    if (reduce(v)) return false;
    int p = 0;
    while (v[p] == 0) ++p;
    std::uint64_t inv = 1, base = v[p], e = kPrime - 2;
    while (e) {
      if (e & 1) inv = inv * base % kPrime;
      base = base * base % kPrime;
      e >>= 1;
    }
    for (auto& x : v) x = x * inv % kPrime;
    rows.push_back(std::move(v));
    pivots.push_back(p);
    return true;
  }
};

struct RestartResult {
  std::vector<int> best;                  // modular deficiency per order, -1 unseen
  std::vector<std::uint64_t> best_mask;
  std::vector<std::uint64_t> candidates;  // masks with modular deficiency >= 2^g
};

RestartResult run_restart(const std::vector<std::vector<std::uint64_t>>& rows, int g, std::uint64_t seed,
                          long long budget, int min_order, int max_order) {
  const int size = static_cast<int>(rows.size());
  const int target = 1 << g;
  const int cols = static_cast<int>(rows.front().size());
  RestartResult out{std::vector<int>(size + 1, -1), std::vector<std::uint64_t>(size + 1, 0), {}};
  std::mt19937_64 rng(seed);
  long long used = 0;

  auto record = [&](int k, int deficiency, std::uint64_t mask) {
    if (k < min_order || k > max_order) return;
    if (deficiency > out.best[k]) {
      out.best[k] = deficiency;
      out.best_mask[k] = mask;
    }
    if (deficiency >= target && out.candidates.size() < 16) out.candidates.push_back(mask);
  };

  while (used < budget) {
    // Uniform random start, then greedy growth preferring rows already in the span.
    std::vector<int> perm(size);
    for (int i = 0; i < size; ++i) perm[i] = i;
    const int start = static_cast<int>(below(rng, std::min(13, max_order + 1)));
    for (int i = 0; i < start; ++i) std::swap(perm[i], perm[i + static_cast<int>(below(rng, size - i))]);
    RowBasis basis{cols, {}, {}};
    std::uint64_t mask = 0;
    int rank = 0;
    for (int i = 0; i < start; ++i) {
      mask |= 1ULL << perm[i];
      rank += basis.add(rows[perm[i]]);
    }
    ++used;
    record(start, start - rank, mask);

    for (int k = start; k < max_order && used < budget; ++k) {
      std::vector<int> in_span, others;
      for (int c = 0; c < size && used < budget; ++c) {
        if ((mask >> c) & 1ULL) continue;
        auto v = rows[c];
        ++used;
        (basis.reduce(v) ? in_span : others).push_back(c);
      }
      const auto& pool = in_span.empty() ? others : in_span;
      if (pool.empty()) break;
      const int pick = pool[below(rng, pool.size())];
      mask |= 1ULL << pick;
      rank += basis.add(rows[pick]);
      record(k + 1, k + 1 - rank, mask);
    }
  }
  return out;
}

}  // namespace

SubsetMask::SubsetMask(int g, std::uint64_t bits) : g_(g), bits_(bits), order_(std::popcount(bits)) {
  if (g < 1 || g > 3) throw InputError("subset masks are supported for g <= 3");
  const int size = kplus(g);
  if (size < 64 && (bits >> size) != 0) throw InputError("subset mask has bits beyond k_g^+");
}

std::vector<int> SubsetMask::indices() const {
  std::vector<int> out;
  for (std::uint64_t b = bits_; b; b &= b - 1) out.push_back(std::countr_zero(b));
  return out;
}

std::string SubsetMask::hex() const {
  char buf[24];
  std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(bits_));
  return buf;
}

int principal_rank(const IntMatrix& B, const SubsetMask& mask) {
  if (B.rows() != kplus(mask.genus())) throw InputError("mask does not match the order of B");
  return exact_rank(B.principal(mask.indices()));
}

SearchReport h0_exhaustive(int g, const ExhaustiveOptions& opts) { return exhaustive_scan(g, opts, true); }

SearchReport h0_exhaustive_serial(int g, const ExhaustiveOptions& opts) { return exhaustive_scan(g, opts, false); }

std::vector<OrderStats> orbit_levels(int g, int levels, long long* canonical_forms) {
  if (levels < 0 || levels > kplus(g)) throw InputError("orbit_levels: level out of range");
  const LevelScan scan = scan_levels(g, build_B(g), levels, -1);
  if (canonical_forms) *canonical_forms = scan.cost;
  return scan.stats;
}

SearchReport h0_probe(int g, const ProbeOptions& opts) {
  if (g != 3) throw InputError("h0 probe is supported for g = 3 only");
  if (opts.budget < 0) throw InputError("budget must be nonnegative");
  const int size = kplus(g);
  const int target = 1 << g;
  const IntMatrix B = build_B(g);

  SearchReport rep;
  rep.g = g;
  rep.strategy = "witness+orbit-levels+randomized";
  rep.seed = opts.seed;
  rep.budget = opts.budget;
  rep.orbit_reduction = opts.orbit_reduction;
  rep.orders.resize(size + 1);
  for (int k = 0; k <= size; ++k) rep.orders[k].order = k;

  // Certified upper bound from the coordinate-product subset.
  std::uint64_t bk = 0;
  for (int i : bk_indices(g)) bk |= 1ULL << i;
  const SubsetMask bk_mask(g, bk);
  const int bk_rank = principal_rank(B, bk_mask);
  if (bk_rank > bk_mask.order() - target) throw VerificationError("B_k witness", "rank too large");
  rep.h0_upper = bk_mask.order();
  rep.witnesses.push_back({bk_mask, bk_rank});

  // Orbit-reduced exhaustive levels, as far as the budget share allows.
  long long used = 0;
  if (opts.orbit_reduction) {
    const long long share = static_cast<long long>(opts.exhaustive_share * static_cast<double>(opts.budget));
    const LevelScan scan = scan_levels(g, B, std::min(opts.max_level, size), share);
    used = scan.cost;
    for (const auto& st : scan.stats) rep.orders[st.order] = st;
    rep.exhaustive_levels = static_cast<int>(scan.stats.size());
    rep.discoveries = scan.feasible;
  }
  fill_h0_bounds(rep);

  // Randomized probe for witnesses below the certified upper bound.
  // Orders already certified infeasible are skipped.
  const int min_order = std::max(opts.min_order, rep.h0_lower);
  const int max_order = std::min(opts.max_order, rep.h0_upper - 1);
  const long long remaining = std::max(0LL, opts.budget - used);
  const long long per = std::max(1LL, opts.restart_budget);
  const long long restarts = remaining / per;
  rep.restarts = restarts;
  rep.best_deficiency.assign(size + 1, -1);
  if (restarts > 0 && max_order >= min_order) {
    const auto blocks = split_blocks(build_M(g));
    std::vector<std::vector<std::uint64_t>> rows(size, std::vector<std::uint64_t>(blocks.N.cols()));
    for (int i = 0; i < size; ++i)
      for (int j = 0; j < blocks.N.cols(); ++j) {
        const std::int64_t x = blocks.N(i, j);
        rows[i][j] = static_cast<std::uint64_t>(x < 0 ? x + static_cast<std::int64_t>(kPrime) : x);
      }
    std::vector<RestartResult> results(static_cast<std::size_t>(restarts));
    parallel_for(results.size(), [&](std::size_t i) {
      results[i] = run_restart(rows, g, splitmix64(opts.seed ^ splitmix64(i)), per, min_order, max_order);
    });
    used += restarts * per;

    std::vector<std::uint64_t> best_mask(size + 1, 0);
    std::vector<int> best(size + 1, -1);
    std::vector<std::uint64_t> candidates;
    for (const auto& r : results) {
      for (int k = 0; k <= size; ++k)
        if (r.best[k] > best[k]) {
          best[k] = r.best[k];
          best_mask[k] = r.best_mask[k];
        }
      candidates.insert(candidates.end(), r.candidates.begin(), r.candidates.end());
    }
    for (int k = 0; k <= size; ++k)
      if (best[k] >= 0) rep.best_deficiency[k] = k - principal_rank(B, SubsetMask(g, best_mask[k]));
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (auto m : candidates) {
      const SubsetMask mask(g, m);
      const int r = principal_rank(B, mask);
      if (r <= mask.order() - target) rep.discoveries.push_back({mask, r});
    }
  }
  rep.evaluations = used;

  std::sort(rep.discoveries.begin(), rep.discoveries.end(), [](const Witness& a, const Witness& b) {
    return a.mask.order() != b.mask.order() ? a.mask.order() < b.mask.order() : a.mask.bits() < b.mask.bits();
  });
  if (!rep.discoveries.empty() && rep.discoveries.front().mask.order() < rep.h0_upper) {
    rep.h0_upper = rep.discoveries.front().mask.order();
    rep.witnesses = {rep.discoveries.front()};
  }
  if (rep.h0_lower >= rep.h0_upper) rep.h0 = rep.h0_upper;
  return rep;
}

nlohmann::json SearchReport::to_json() const {
  auto witness_json = [](const Witness& w) {
    return nlohmann::json{{"mask", w.mask.hex()}, {"order", w.mask.order()}, {"rank", w.rank}, {"indices", w.mask.indices()}};
  };
  nlohmann::json j;
  j["g"] = g;
  j["strategy"] = strategy;
  j["exhaustive"] = exhaustive;
  j["h0"] = h0 ? nlohmann::json(*h0) : nlohmann::json(nullptr);
  j["h0_lower"] = h0_lower;
  j["h0_upper"] = h0_upper;
  // The nonvanishing constants index a witness, so there are at least h0 of them.
  j["theta2_upper"] = (1LL << (2 * g)) - h0_lower;
  j["witnesses"] = nlohmann::json::array();
  for (const auto& w : witnesses) j["witnesses"].push_back(witness_json(w));
  j["orders"] = nlohmann::json::array();
  for (const auto& s : orders) {
    if (s.min_rank < 0) continue;
    j["orders"].push_back({{"order", s.order},
                           {"subsets", s.subsets},
                           {"min_rank", s.min_rank},
                           {"exhaustive", s.exhaustive},
                           {"feasible", s.feasible}});
  }
  j["orbit_reduction"] = orbit_reduction;
  if (!exhaustive) {
    j["seed"] = seed;
    j["budget"] = budget;
    j["exhaustive_levels"] = exhaustive_levels;
    j["restarts"] = restarts;
    nlohmann::json best = nlohmann::json::object();
    for (std::size_t k = 0; k < best_deficiency.size(); ++k)
      if (best_deficiency[k] >= 0) best[std::to_string(k)] = best_deficiency[k];
    j["best_deficiency"] = best;
    j["discoveries"] = nlohmann::json::array();
    for (const auto& w : discoveries) j["discoveries"].push_back(witness_json(w));
    j["finding"] = discoveries.empty()
                       ? "no witness of order below " + std::to_string(h0_upper) + " found within budget"
                       : "witness below the coordinate-product order found";
  }
  j["evaluations"] = evaluations;
  return j;
}

}  // namespace thetalab
