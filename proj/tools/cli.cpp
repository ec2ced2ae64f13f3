#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "thetalab/bounds.hpp"
#include "thetalab/constants.hpp"
#include "thetalab/errors.hpp"
#include "thetalab/pairing.hpp"
#include "thetalab/parallel.hpp"
#include "thetalab/relations.hpp"
#include "thetalab/search.hpp"
#include "thetalab/symplectic.hpp"

namespace thetalab::cli {

namespace {

using nlohmann::json;

// A JSON record and its tabular rendering.
struct Output {
  json doc;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string cell(const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

// Top-level scalars of doc as field/value rows.
void summary_rows(Output& o) {
  o.header = {"field", "value"};
  for (const auto& [key, value] : o.doc.items())
    if (!value.is_structured()) o.rows.push_back({key, cell(value)});
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void render(const Output& o, const std::string& format, std::ostream& out) {
  if (format == "json") {
    out << o.doc.dump(2) << '\n';
    return;
  }
  std::vector<std::vector<std::string>> lines{o.header};
  lines.insert(lines.end(), o.rows.begin(), o.rows.end());
  if (format == "csv") {
    for (const auto& line : lines) {
      for (std::size_t i = 0; i < line.size(); ++i) out << (i ? "," : "") << csv_field(line[i]);
      out << '\n';
    }
    return;
  }
  std::vector<std::size_t> width(o.header.size(), 0);
  for (const auto& line : lines)
    for (std::size_t i = 0; i < line.size() && i < width.size(); ++i) width[i] = std::max(width[i], line[i].size());
  for (const auto& line : lines) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i + 1 < line.size()) out << std::left << std::setw(static_cast<int>(width[i]) + 2) << line[i];
      else out << line[i];
    }
    out << '\n';
  }
}

TableMethod parse_method(const std::string& s) {
  if (s == "auto") return TableMethod::automatic;
  if (s == "numerical") return TableMethod::numerical;
  if (s == "product") return TableMethod::product;
  throw InputError("unknown method " + s);
}

std::vector<int> block_sizes(const PeriodMatrix& tau) {
  std::vector<int> sizes;
  for (const auto& b : tau.diagonal_blocks()) sizes.push_back(static_cast<int>(b.size()));
  return sizes;
}

// count -------------------------------------------------------------------

struct CountArgs {
  std::string tau;
  int n = 2;
  std::string method = "auto";
  double tol = 1e-12;
  double vanishing = 1e-6;
  double nonvanishing = 1e-3;
  double rank_zero = 1e-8;
  double rank_nonzero = 1e-4;
  bool table = false;
  bool qh = false;
  int m_samples = 0;
  std::optional<std::uint64_t> seed;
};

Output cmd_count(const CountArgs& a) {
  const PeriodMatrix tau = PeriodMatrix::load(a.tau);
  const ThetaOptions opts{a.tol};
  const ThresholdPolicy policy{a.vanishing, a.nonvanishing};
  const ConstantTable table = constant_table(tau, a.n, opts, parse_method(a.method), policy);
  const TorsionCount count = count_torsion(table);

  Output o;
  o.doc["g"] = tau.genus();
  o.doc["n"] = a.n;
  o.doc["theta_n"] = count.count;
  o.doc["method"] = to_string(table.method);
  o.doc["certified"] = count.certified;
  o.doc["margins"] = {{"smallest_nonvanishing", count.smallest_nonvanishing},
                      {"largest_vanishing", count.largest_vanishing},
                      {"vanishing_threshold", a.vanishing},
                      {"nonvanishing_threshold", a.nonvanishing}};
  if (a.qh) {
    const QhProfile qh = qh_rank_profile(tau, a.n, opts, {a.rank_zero, a.rank_nonzero}, policy);
    o.doc["qh"] = {{"rank_sum", qh.rank_sum},
                   {"ranks", qh.ranks},
                   {"defect", qh.defect},
                   {"smallest_kept", qh.smallest_kept},
                   {"largest_dropped", qh.largest_dropped}};
  }
  if (a.m_samples > 0) {
    if (!a.seed) throw InputError("--m-samples needs --seed");
    const int g = tau.genus();
    o.doc["m_zero"] = m_count(tau, ComplexVector::Zero(g), opts, policy).count;
    std::mt19937_64 rng(*a.seed);
    std::vector<ComplexVector> ys;
    for (int i = 0; i < a.m_samples; ++i) ys.push_back(random_point(tau, rng));
    std::vector<int> counts(ys.size());
    parallel_for(ys.size(), [&](std::size_t i) { counts[i] = m_count(tau, ys[i], opts, policy).count; });
    o.doc["seed"] = *a.seed;
    o.doc["m_samples"] = counts;
    o.doc["m_min"] = *std::min_element(counts.begin(), counts.end());
    o.doc["m_max"] = *std::max_element(counts.begin(), counts.end());
  }
  if (a.table) {
    json rows = json::array();
    o.header = {"characteristic", "re", "im", "margin", "tail_bound", "vanishing"};
    for (const auto& r : table.records) {
      rows.push_back({{"characteristic", r.characteristic.label()},
                      {"re", r.value.real()},
                      {"im", r.value.imag()},
                      {"margin", r.margin},
                      {"tail_bound", r.tail_bound},
                      {"vanishing", r.vanishing}});
      o.rows.push_back({r.characteristic.label(), cell(r.value.real()), cell(r.value.imag()), cell(r.margin),
                        cell(r.tail_bound), r.vanishing ? "yes" : "no"});
    }
    o.doc["table"] = rows;
  } else {
    summary_rows(o);
  }
  return o;
}

// verify ------------------------------------------------------------------

struct VerifyArgs {
  int g = 0;
  std::optional<std::uint64_t> seed;
  int samples = 20;
  int fay_samples = 5;
  double residual_tol = 1e-8;
  bool inject_fault = false;
};

struct ResidualSummary {
  int samples = 0;
  double max = 0.0;
};

ResidualSummary addition_suite(int g, std::mt19937_64& rng, int samples) {
  struct Case {
    PeriodMatrix tau;
    ComplexVector z;
    Characteristic c;
  };
  const auto chars = enumerate(g, 2);
  std::vector<Case> cases;
  for (int i = 0; i < samples; ++i) {
    PeriodMatrix tau = random_period_matrix(g, rng);
    ComplexVector z = random_point(tau, rng);
    const auto& c = chars[rng() % chars.size()];
    cases.push_back({std::move(tau), std::move(z), c});
  }
  std::vector<double> res(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) { res[i] = addition_residual(cases[i].tau, cases[i].z, cases[i].c); });
  return {samples, res.empty() ? 0.0 : *std::max_element(res.begin(), res.end())};
}

ResidualSummary fay_suite(int g, std::mt19937_64& rng, int samples) {
  const IntMatrix N = split_blocks(build_M(g)).N;
  std::vector<std::pair<PeriodMatrix, ComplexVector>> cases;
  for (int i = 0; i < samples; ++i) {
    PeriodMatrix tau = random_period_matrix(g, rng);
    ComplexVector z = random_point(tau, rng);
    cases.emplace_back(std::move(tau), std::move(z));
  }
  const std::size_t cols = static_cast<std::size_t>(N.cols());
  std::vector<double> res(cases.size() * cols);
  parallel_for(res.size(), [&](std::size_t i) {
    const auto& [tau, z] = cases[i / cols];
    res[i] = fay_relation_residual(tau, z, N, static_cast<int>(i % cols));
  });
  return {static_cast<int>(res.size()), res.empty() ? 0.0 : *std::max_element(res.begin(), res.end())};
}

Output cmd_verify(const VerifyArgs& a) {
  if (a.g < 1 || a.g > 3) throw InputError("verify supports 1 <= g <= 3");
  ClaimReport report = verify_pairing_suite(a.g, a.inject_fault);
  Output o;
  o.doc["g"] = a.g;
  o.doc["inject_fault"] = a.inject_fault;
  if (a.seed) {
    std::mt19937_64 rng(*a.seed);
    const auto add = addition_suite(a.g, rng, a.samples);
    const auto fay = fay_suite(a.g, rng, a.fay_samples);
    const std::string tag = "g=" + std::to_string(a.g) + ": ";
    report.add_below(tag + "addition formula residual", add.max, a.residual_tol);
    report.add_below(tag + "N-column theta relation residual", fay.max, a.residual_tol);
    o.doc["seed"] = *a.seed;
    o.doc["residuals"] = {{"addition", {{"samples", add.samples}, {"max", add.max}}},
                          {"relation", {{"evaluations", fay.samples}, {"max", fay.max}}},
                          {"tolerance", a.residual_tol}};
  }
  o.doc["claims"] = report.to_json();
  o.doc["passed"] = report.all_passed();
  o.doc["failures"] = report.failures();
  // One ledger line per claim: "<claim> = <actual> PASS".
  o.header = {"claim"};
  for (const auto& c : report.claims()) {
    std::string line = c.expected == "true" ? c.name : c.name + " = " + c.actual;
    line += c.passed ? " PASS" : " FAIL (expected " + c.expected + ")";
    o.rows.push_back({line});
  }
  return o;
}

// h0 ----------------------------------------------------------------------

struct H0Args {
  int g = 0;
  std::optional<long long> budget;
  std::optional<std::uint64_t> seed;
  std::optional<bool> orbit_flag;
  std::optional<int> min_order, max_order, max_level;
  std::optional<double> exhaustive_share;
  std::optional<long long> restart_budget;
};

Output cmd_h0(const H0Args& a) {
  SearchReport rep;
  if (a.g == 2) {
    rep = h0_exhaustive(2, {a.orbit_flag.value_or(false)});
  } else if (a.g == 3) {
    if (!a.budget || !a.seed) throw InputError("h0 at g = 3 needs --budget and --seed");
    ProbeOptions p;
    p.budget = *a.budget;
    p.seed = *a.seed;
    p.orbit_reduction = a.orbit_flag.value_or(true);
    if (a.min_order) p.min_order = *a.min_order;
    if (a.max_order) p.max_order = *a.max_order;
    if (a.max_level) p.max_level = *a.max_level;
    if (a.exhaustive_share) p.exhaustive_share = *a.exhaustive_share;
    if (a.restart_budget) p.restart_budget = *a.restart_budget;
    if (p.exhaustive_share < 0.0 || p.exhaustive_share > 1.0) throw InputError("--exhaustive-share must be in [0, 1]");
    rep = h0_probe(3, p);
  } else {
    throw InputError("h0 supports g = 2 or g = 3");
  }
  Output o{rep.to_json(), {}, {}};
  o.header = {"order", "examined", "min_rank", "exhaustive", "feasible"};
  for (const auto& s : rep.orders)
    if (s.min_rank >= 0)
      o.rows.push_back({std::to_string(s.order), std::to_string(s.subsets), std::to_string(s.min_rank),
                        s.exhaustive ? "yes" : "no", s.feasible ? "yes" : "no"});
  return o;
}

// bounds ------------------------------------------------------------------

struct BoundsArgs {
  std::optional<int> g;
  int n = 2;
  std::vector<int> blocks;
  bool simple = false;
  std::string tau;
};

struct BoundsResult {
  Output output;
  bool theorem_violated = false;
};

BoundsResult cmd_bounds(const BoundsArgs& a) {
  BoundContext ctx;
  ctx.simple = a.simple;
  if (!a.blocks.empty()) ctx.blocks = a.blocks;
  std::optional<PeriodMatrix> tau;
  int g = a.g.value_or(0);
  if (!a.tau.empty()) {
    tau = PeriodMatrix::load(a.tau);
    if (a.g && *a.g != tau->genus()) throw InputError("--g does not match the genus of --tau");
    g = tau->genus();
    const auto sizes = block_sizes(*tau);
    if (!ctx.blocks && sizes.size() > 1) ctx.blocks = sizes;
  }
  if (g < 1) throw InputError("bounds needs --g or --tau");

  const auto rows = evaluate_bounds(g, a.n, ctx);
  const auto dims = eigenspace_dims(g, a.n);
  BoundsResult res;
  Output& o = res.output;
  o.doc["g"] = g;
  o.doc["n"] = a.n;
  if (ctx.blocks) o.doc["blocks"] = *ctx.blocks;
  o.doc["simple_asserted"] = a.simple;
  o.doc["eigenspace_dims"] = {dims.first, dims.second};
  o.header = {"name", "status", "value", "applicable", "floored", "condition"};
  json table = json::array();
  if (tau) {
    const TorsionCount count = count_torsion(*tau, a.n);
    const auto cmp = compare(count.count, rows);
    o.doc["theta_n"] = count.count;
    o.header.push_back("verdict");
    for (const auto& c : cmp) {
      table.push_back(to_json(c));
      res.theorem_violated |= c.verdict == Verdict::violated && c.bound.status == BoundStatus::theorem;
    }
  } else {
    for (const auto& r : rows) table.push_back(to_json(r));
  }
  for (const auto& r : table) {
    std::vector<std::string> line{cell(r["name"]), cell(r["status"]), cell(r["value"]),
                                  cell(r["applicable"]), cell(r["floored"]), cell(r["condition"])};
    if (tau) line.push_back(cell(r["verdict"]));
    o.rows.push_back(std::move(line));
  }
  o.doc["rows"] = table;
  return res;
}

// orbits, export-matrix -------------------------------------------------------

Output cmd_orbits(int g, int tuples) {
  const OrbitReport rep = orbits(g, tuples);
  Output o;
  o.doc["g"] = g;
  o.doc["tuples"] = tuples;
  o.doc["even_class_size"] = rep.even_class_size;
  o.doc["odd_class_size"] = rep.odd_class_size;
  o.doc["even_single_orbit"] = rep.even_single_orbit();
  o.doc["odd_single_orbit"] = rep.odd_single_orbit();
  o.doc["orbits"] = json::array();
  o.header = {"orbit", "parity", "size"};
  for (std::size_t i = 0; i < rep.orbits.size(); ++i) {
    const auto& orb = rep.orbits[i];
    o.doc["orbits"].push_back({{"parity", orb.parity}, {"size", orb.members.size()}, {"members", orb.members}});
    o.rows.push_back({std::to_string(i), orb.parity, std::to_string(orb.members.size())});
  }
  return o;
}

IntMatrix named_matrix(const std::string& name, int g) {
  if (g < 1 || g > 3) throw InputError("export-matrix supports 1 <= g <= 3");
  if (name == "M") return build_M(g);
  if (name == "M+" || name == "M-" || name == "N") {
    const auto blocks = split_blocks(build_M(g));
    return name == "M+" ? blocks.plus : name == "M-" ? blocks.minus : blocks.N;
  }
  if (name == "B") return build_B(g);
  if (name == "L") return build_L(g);
  if (name == "Bk") return build_Bk(g);
  throw InputError("unknown matrix " + name + " (expected M, M+, M-, N, B, L or Bk)");
}

Output cmd_export(const std::string& name, int g) {
  const IntMatrix m = named_matrix(name, g);
  Output o;
  o.doc = m.to_json();
  o.doc["matrix"] = name;
  o.doc["g"] = g;
  o.header.push_back("");
  for (int j = 0; j < m.cols(); ++j)
    o.header.push_back(m.labeled() ? m.col_labels()[j].label() : std::to_string(j));
  for (int i = 0; i < m.rows(); ++i) {
    std::vector<std::string> line{m.labeled() ? m.row_labels()[i].label() : std::to_string(i)};
    for (int j = 0; j < m.cols(); ++j) line.push_back(std::to_string(m(i, j)));
    o.rows.push_back(std::move(line));
  }
  return o;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Torsion points on theta divisors: counts, exact matrix checks, bounds", "thetalab"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "json";
  app.add_option("--format", format, "json, csv or table")->check(CLI::IsMember({"json", "csv", "table"}));
  int threads = 0;
  app.add_option("--threads", threads, "worker cap (overrides THETALAB_THREADS)")->check(CLI::NonNegativeNumber);

  CountArgs count;
  auto* c = app.add_subcommand("count", "count vanishing theta constants of level n");
  c->add_option("--tau", count.tau, "period matrix JSON")->required();
  c->add_option("--n", count.n, "level")->check(CLI::Range(2, 64));
  c->add_option("--method", count.method, "auto, numerical or product")
      ->check(CLI::IsMember({"auto", "numerical", "product"}));
  c->add_option("--tol", count.tol, "theta series tail tolerance");
  c->add_option("--vanishing", count.vanishing, "relative magnitude below which a constant vanishes");
  c->add_option("--nonvanishing", count.nonvanishing, "relative magnitude above which it does not");
  c->add_option("--rank-zero", count.rank_zero, "relative singular value counted as zero");
  c->add_option("--rank-nonzero", count.rank_nonzero, "relative singular value counted as nonzero");
  c->add_flag("--table", count.table, "include every constant");
  c->add_flag("--qh", count.qh, "rank profile of the T_mu matrices");
  c->add_option("--m-samples", count.m_samples, "random points y for m(0, 2y)")->check(CLI::NonNegativeNumber);
  c->add_option("--seed", count.seed, "seed for --m-samples");

  VerifyArgs verify;
  auto* v = app.add_subcommand("verify", "exact pairing-matrix claims and seeded residual suites");
  v->add_option("--g", verify.g, "genus")->required();
  v->add_option("--seed", verify.seed, "seed for the residual suites (omitted: exact claims only)");
  v->add_option("--samples", verify.samples, "addition-formula samples")->check(CLI::NonNegativeNumber);
  v->add_option("--relation-samples", verify.fay_samples, "(tau, z) samples for the N-column relations")
      ->check(CLI::NonNegativeNumber);
  v->add_option("--residual-tol", verify.residual_tol, "residual tolerance");
  v->add_flag("--inject-fault", verify.inject_fault, "flip one entry of M before checking");

  H0Args h0;
  auto* h = app.add_subcommand("h0", "principal-submatrix rank search on B");
  h->add_option("--g", h0.g, "genus (2 or 3)")->required();
  h->add_option("--budget", h0.budget, "evaluation budget (g = 3)")->check(CLI::NonNegativeNumber);
  h->add_option("--seed", h0.seed, "seed (g = 3)");
  h->add_option("--orbit-reduction", h0.orbit_flag, "on or off");
  h->add_option("--min-order", h0.min_order, "lowest order for the randomized search");
  h->add_option("--max-order", h0.max_order, "highest order for the randomized search");
  h->add_option("--max-level", h0.max_level, "highest order scanned exhaustively by orbits");
  h->add_option("--exhaustive-share", h0.exhaustive_share, "budget fraction for exhaustive levels");
  h->add_option("--restart-budget", h0.restart_budget, "evaluations per randomized restart")
      ->check(CLI::PositiveNumber);

  BoundsArgs bounds;
  auto* b = app.add_subcommand("bounds", "closed-form bounds on the count, optionally checked against tau");
  b->add_option("--g", bounds.g, "genus")->check(CLI::Range(1, 30));
  b->add_option("--n", bounds.n, "level")->check(CLI::Range(2, 1000));
  b->add_option("--blocks", bounds.blocks, "dimensions of a product decomposition, e.g. 1,1,1")->delimiter(',');
  b->add_flag("--simple", bounds.simple, "assert the abelian variety is simple");
  b->add_option("--tau", bounds.tau, "period matrix JSON; adds verdicts");

  int orbit_g = 0, tuples = 1;
  auto* o = app.add_subcommand("orbits", "orbits of the symplectic action on characteristics");
  o->add_option("--g", orbit_g, "genus")->required()->check(CLI::Range(1, 3));
  o->add_option("--tuples", tuples, "1: points, 2: ordered same-parity pairs")->check(CLI::Range(1, 2));

  std::string matrix = "M";
  int export_g = 0;
  auto* e = app.add_subcommand("export-matrix", "dense integer matrix with characteristic labels");
  e->add_option("--matrix", matrix, "M, M+, M-, N, B, L or Bk");
  e->add_option("--g", export_g, "genus")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? kExitOk : kExitInput;
  }
  if (threads > 0) set_thread_count(threads);

  try {
    if (c->parsed()) {
      render(cmd_count(count), format, out);
    } else if (v->parsed()) {
      const Output res = cmd_verify(verify);
      render(res, format, out);
      if (!res.doc["passed"].get<bool>()) {
        for (const auto& cl : res.doc["claims"])
          if (cl["status"] == "FAIL") {
            err << "verification failed: " << cl["claim"].get<std::string>() << '\n';
            break;
          }
        return kExitVerification;
      }
    } else if (h->parsed()) {
      render(cmd_h0(h0), format, out);
    } else if (b->parsed()) {
      const BoundsResult res = cmd_bounds(bounds);
      render(res.output, format, out);
      if (res.theorem_violated) {
        err << "verification failed: a proved bound is violated\n";
        return kExitVerification;
      }
    } else if (o->parsed()) {
      render(cmd_orbits(orbit_g, tuples), format, out);
    } else if (e->parsed()) {
      render(cmd_export(matrix, export_g), format, out);
    }
  } catch (const InputError& ex) {
    err << "input error: " << ex.what() << '\n';
    return kExitInput;
  } catch (const AmbiguityError& ex) {
    err << "ambiguous: " << ex.what() << '\n';
    return kExitAmbiguity;
  } catch (const ConvergenceError& ex) {
    err << "no convergence: " << ex.what() << '\n';
    return kExitAmbiguity;
  } catch (const VerificationError& ex) {
    err << "verification failed: " << ex.what() << '\n';
    return kExitVerification;
  }
  return kExitOk;
}

}  // namespace thetalab::cli
