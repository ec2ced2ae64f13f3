#include "thetalab/constants.hpp"

#include <algorithm>
#include <sstream>

#include "thetalab/errors.hpp"
#include "thetalab/parallel.hpp"

namespace thetalab {

namespace {

// One-dimensional theta constants vanish exactly at the odd 2-torsion point.
bool one_dim_vanishes(int n, int a, int b) { return n % 2 == 0 && a == n / 2 && b == n / 2; }

void finish_table(ConstantTable& table) {
  table.max_magnitude = 0.0;
  for (const auto& r : table.records) table.max_magnitude = std::max(table.max_magnitude, r.magnitude);
  if (!(table.max_magnitude > 0.0)) throw AmbiguityError("every theta constant vanished", "table", 0.0);
  for (auto& r : table.records) r.margin = r.magnitude / table.max_magnitude;
}

ConstantTable numerical_table(const PeriodMatrix& tau, int n, const ThetaOptions& opts,
                              const ThresholdPolicy& policy) {
  auto chars = enumerate(tau.genus(), n);
  const auto values = evaluate_values(tau, ComplexVector::Zero(tau.genus()), chars, opts);
  ConstantTable table{n, tau, {}, 0.0, TableMethod::numerical, false};
  table.records.reserve(chars.size());
  for (std::size_t i = 0; i < chars.size(); ++i)
    table.records.push_back({std::move(chars[i]), values[i].value, std::abs(values[i].value),
                             values[i].tail_bound, 0.0, false});
  finish_table(table);
  for (auto& r : table.records) r.vanishing = classify_vanishing(r.margin, policy, r.characteristic.label());
  return table;
}

struct BlockTable {
  std::vector<int> indices;
  std::vector<ThetaValue> values;  // over enumerate(|block|, n)
  std::vector<bool> vanishing;
};

ConstantTable product_table(const PeriodMatrix& tau, int n, const ThetaOptions& opts,
                            const ThresholdPolicy& policy) {
  const int g = tau.genus();
  std::vector<BlockTable> blocks;
  bool certified = true;
  for (auto& idx : tau.diagonal_blocks()) {
    const int s = static_cast<int>(idx.size());
    const PeriodMatrix sub = tau.sub_matrix(idx);
    const auto chars = enumerate(s, n);
    BlockTable bt{idx, evaluate_values(sub, ComplexVector::Zero(s), chars, opts), {}};
    bt.vanishing.resize(chars.size());
    if (s == 1) {
      for (std::size_t i = 0; i < chars.size(); ++i)
        bt.vanishing[i] = one_dim_vanishes(n, chars[i].a()[0], chars[i].b()[0]);
    } else {
      certified = false;
      double block_max = 0.0;
      for (const auto& v : bt.values) block_max = std::max(block_max, std::abs(v.value));
      if (!(block_max > 0.0)) throw AmbiguityError("every block theta constant vanished", "block", 0.0);
      for (std::size_t i = 0; i < chars.size(); ++i)
        bt.vanishing[i] = classify_vanishing(std::abs(bt.values[i].value) / block_max, policy,
                                             "block " + chars[i].label());
    }
    blocks.push_back(std::move(bt));
  }

  ConstantTable table{n, tau, {}, 0.0, TableMethod::product, certified};
  for (auto& c : enumerate(g, n)) {
    Complex value(1.0, 0.0);
    double err = 0.0;  // |prod v_i - prod w_i| <= sum_i t_i prod_{j != i} (|v_j| + t_j)
    bool vanishing = false;
    for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
      const auto& bt = blocks[bi];
      std::vector<int> a, b;
      for (int i : bt.indices) {
        a.push_back(c.a()[i]);
        b.push_back(c.b()[i]);
      }
      const std::size_t k = Characteristic(static_cast<int>(a.size()), n, a, b).canonical_index();
      const ThetaValue& f = bt.values[k];
      err = err * (std::abs(f.value) + f.tail_bound) + std::abs(value) * f.tail_bound;
      value *= f.value;
      vanishing = vanishing || bt.vanishing[k];
    }
    const double magnitude = std::abs(value);
    table.records.push_back({std::move(c), value, magnitude, err, 0.0, vanishing});
  }
  finish_table(table);
  return table;
}

}  // namespace

bool classify_vanishing(double relative, const ThresholdPolicy& policy, const std::string& subject) {
  if (relative < policy.vanishing) return true;
  if (relative > policy.nonvanishing) return false;
  std::ostringstream os;
  os << "theta constant " << subject << " has relative magnitude " << relative
     << " inside the undecidable band [" << policy.vanishing << ", " << policy.nonvanishing << "]";
  throw AmbiguityError(os.str(), subject, relative);
}

int ConstantTable::vanishing_count() const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.vanishing; }));
}

std::vector<ThetaValue> evaluate_values(const PeriodMatrix& tau, const ComplexVector& z,
                                        const std::vector<Characteristic>& chars, const ThetaOptions& opts) {
  std::vector<ThetaValue> out(chars.size());
  parallel_for(chars.size(), [&](std::size_t i) { out[i] = theta(tau, z, chars[i], opts); });
  return out;
}

std::vector<ThetaValue> evaluate_values_serial(const PeriodMatrix& tau, const ComplexVector& z,
                                               const std::vector<Characteristic>& chars,
                                               const ThetaOptions& opts) {
  std::vector<ThetaValue> out;
  out.reserve(chars.size());
  for (const auto& c : chars) out.push_back(theta(tau, z, c, opts));
  return out;
}

ConstantTable constant_table(const PeriodMatrix& tau, int n, const ThetaOptions& opts, TableMethod method,
                             const ThresholdPolicy& policy) {
  if (n < 2) throw InputError("level must be >= 2");
  if (method == TableMethod::automatic)
    method = (tau.genus() == 1 || tau.diagonal_blocks().size() > 1) ? TableMethod::product
                                                                     : TableMethod::numerical;
  return method == TableMethod::product ? product_table(tau, n, opts, policy)
                                        : numerical_table(tau, n, opts, policy);
}

TorsionCount count_torsion(const ConstantTable& table) {
  TorsionCount out;
  out.certified = table.certified;
  out.smallest_nonvanishing = 0.0;
  bool seen_nonvanishing = false;
  for (const auto& r : table.records) {
    if (r.vanishing) {
      ++out.count;
      out.largest_vanishing = std::max(out.largest_vanishing, r.margin);
    } else if (!seen_nonvanishing || r.margin < out.smallest_nonvanishing) {
      out.smallest_nonvanishing = r.margin;
      seen_nonvanishing = true;
    }
  }
  return out;
}

TorsionCount count_torsion(const PeriodMatrix& tau, int n, const ThetaOptions& opts, TableMethod method,
                           const ThresholdPolicy& policy) {
  return count_torsion(constant_table(tau, n, opts, method, policy));
}

MCount m_count(const PeriodMatrix& tau, const ComplexVector& y, const ThetaOptions& opts,
               const ThresholdPolicy& policy) {
  const int g = tau.genus();
  if (y.size() != g) throw InputError("m_count: dimension mismatch");
  const auto chars = enumerate(g, 2);
  const auto values = evaluate_values(tau, 2.0 * y, chars, opts);
  double max_mag = 0.0;
  for (const auto& v : values) max_mag = std::max(max_mag, std::abs(v.value));
  if (!(max_mag > 0.0)) throw AmbiguityError("every theta value vanished", "m_count", 0.0);
  MCount out;
  bool seen = false;
  for (std::size_t i = 0; i < chars.size(); ++i) {
    const double rel = std::abs(values[i].value) / max_mag;
    if (classify_vanishing(rel, policy, chars[i].label())) {
      out.largest_vanishing = std::max(out.largest_vanishing, rel);
    } else {
      ++out.count;
      if (!seen || rel < out.smallest_nonvanishing) out.smallest_nonvanishing = rel;
      seen = true;
    }
  }
  return out;
}

const char* to_string(TableMethod m) noexcept {
  switch (m) {
    case TableMethod::automatic: return "automatic";
    case TableMethod::numerical: return "numerical";
    case TableMethod::product: return "product";
  }
  return "?";
}

}  // namespace thetalab
