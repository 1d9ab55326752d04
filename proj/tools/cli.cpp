#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "quadcohom/ci_hodge.hpp"
#include "quadcohom/decomp.hpp"
#include "quadcohom/detscan.hpp"
#include "quadcohom/double_cover.hpp"
#include "quadcohom/errors.hpp"
#include "quadcohom/quadric_strata.hpp"

namespace quadcohom::cli {

using nlohmann::ordered_json;

namespace {

enum class Format { json, table };

// Integers become JSON numbers; anything beyond 64 bits falls back to its decimal string.
ordered_json num(const Integer& z) {
  if (z.fits_slong_p()) {
    return z.get_si();
  }
  return z.get_str();
}

ordered_json num_list(const std::vector<Integer>& values) {
  ordered_json out = ordered_json::array();
  for (const auto& v : values) {
    out.push_back(num(v));
  }
  return out;
}

std::string join(const std::vector<Integer>& values, const char* sep = " ") {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    out += (i ? sep : "") + to_string(values[i]);
  }
  return out;
}

struct Range {
  int lo = 0;
  int hi = 0;
};

Range parse_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int v = std::stoi(text);
      return {v, v};
    }
    std::size_t used = 0;
    Range r{std::stoi(text.substr(0, dots), &used), std::stoi(text.substr(dots + 2))};
    if (used != dots || r.lo > r.hi) {
      throw std::invalid_argument("bad range");
    }
    return r;
  } catch (const std::logic_error&) {
    throw std::invalid_argument("expected a range like 3..12, got \"" + text + "\"");
  }
}

// ---------------------------------------------------------------------------
// ci

struct CiArgs {
  int ambient = 0;
  std::vector<int> degrees;
};

void run_ci(const CiArgs& a, Format format, std::ostream& out) {
  const CISpace space(a.ambient, a.degrees);
  const HodgeDiamond diamond = hodge_diamond_ci(space);
  const HodgeRow var = variable_middle(space);
  const LevelReport level = level_of(space);
  const Integer euler = euler_char_ci(space);
  const std::vector<Integer> chi = chi_all_ci(space);

  if (format == Format::table) {
    out << "V(" << join(std::vector<Integer>(a.degrees.begin(), a.degrees.end()), ",") << ") in P^" << a.ambient
        << ", dim " << space.dim() << ", degree " << to_string(space.degree()) << "\n";
    out << "euler " << to_string(euler) << "\n";
    out << "chi_p " << join(chi) << "\n";
    for (int w = 0; w <= 2 * diamond.dim(); ++w) {
      std::vector<Integer> row;
      for (int p = std::max(0, w - diamond.dim()); p <= std::min(w, diamond.dim()); ++p) {
        row.push_back(diamond.at(p, w - p));
      }
      out << "weight " << std::setw(2) << w << ": " << join(row) << "\n";
    }
    out << "variable middle " << join(var.entries) << "\n";
    out << "level " << (level.level ? std::to_string(*level.level) : "none") << "\n";
    return;
  }

  ordered_json doc;
  doc["ambient"] = a.ambient;
  doc["degrees"] = a.degrees;
  doc["dim"] = space.dim();
  doc["degree"] = num(space.degree());
  doc["euler"] = num(euler);
  doc["chi"] = num_list(chi);
  ordered_json hodge = ordered_json::array();
  for (int p = 0; p <= diamond.dim(); ++p) {
    std::vector<Integer> row;
    for (int q = 0; q <= diamond.dim(); ++q) {
      row.push_back(diamond.at(p, q));
    }
    hodge.push_back(num_list(row));
  }
  doc["hodge"] = std::move(hodge);
  doc["middle_row"] = num_list(diamond.middle_row());
  doc["variable_middle"] = num_list(var.entries);
  doc["level"] = level.level ? ordered_json(*level.level) : ordered_json(nullptr);
  out << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// strata

struct StrataArgs {
  std::optional<int> n;
  std::optional<int> r;
  std::optional<std::string> coker;
  std::optional<int> m;
};

void run_strata(const StrataArgs& a, Format format, std::ostream& out) {
  ordered_json doc;
  std::ostringstream table;
  if (a.n || a.r) {
    if (!a.n || !a.r) {
      throw std::invalid_argument("strata needs both --n and --r");
    }
    const BundleShape shape(*a.n, *a.r);
    const StrataReport report = strata_table(shape);
    const DiscriminantInvariants disc = discriminant_invariants(shape);
    doc["n"] = shape.n();
    doc["r"] = shape.r();
    doc["matrix_size"] = shape.matrix_size();
    doc["total_dim"] = shape.total_dim();
    ordered_json strata = ordered_json::array();
    table << "corank  codim  expected_dim  nonempty  degree\n";
    for (const auto& s : report.strata) {
      const Integer degree = symmetric_corank_degree(shape.matrix_size(), s.corank);
      strata.push_back({{"corank", s.corank},
                        {"codim", s.codim},
                        {"expected_dim", s.expected_dim},
                        {"nonempty", s.nonempty},
                        {"degree", num(degree)}});
      table << std::setw(6) << s.corank << std::setw(7) << s.codim << std::setw(14) << s.expected_dim
            << std::setw(10) << (s.nonempty ? "yes" : "no") << "  " << to_string(degree) << "\n";
    }
    doc["strata"] = std::move(strata);
    doc["discriminant_degree"] = disc.degree;
    doc["node_count"] = disc.node_count ? num(*disc.node_count) : ordered_json(nullptr);
    table << "discriminant degree " << disc.degree;
    if (disc.node_count) {
      table << ", nodes " << to_string(*disc.node_count);
    }
    table << "\n";
    ordered_json fibers = ordered_json::array();
    for (int c = 0; c <= std::min(shape.matrix_size() - 1, static_cast<int>(report.strata.size())); ++c) {
      const QuadricFiberClass fiber{shape.n(), c};
      const BettiTable betti = fiber_betti(fiber);
      fibers.push_back({{"corank", c}, {"euler", num(fiber_euler(fiber))}, {"betti", num_list(betti.values)}});
      table << "fiber corank " << c << ": euler " << to_string(fiber_euler(fiber)) << ", betti "
            << join(betti.values) << "\n";
    }
    doc["fibers"] = std::move(fibers);
  }
  if (a.coker) {
    if (!a.m) {
      throw std::invalid_argument("--coker needs --m");
    }
    DiagonalFamily family;
    if (*a.coker == "net-odd") {
      family = DiagonalFamily::net_odd;
    } else if (*a.coker == "web-even") {
      family = DiagonalFamily::web_even;
    } else {
      throw std::invalid_argument("--coker must be net-odd or web-even");
    }
    const CokernelDim dim = diagonal_cokernel_dim(family, *a.m);
    doc["cokernel"] = {{"family", *a.coker}, {"m", *a.m}, {"dim", num(dim.dim)}, {"ambiguous", dim.ambiguous}};
    table << "cokernel " << *a.coker << " m=" << *a.m << ": " << to_string(dim.dim)
          << (dim.ambiguous ? " (index set ambiguous)" : "") << "\n";
  }
  if (!a.n && !a.r && !a.coker) {
    throw std::invalid_argument("strata needs --n/--r or --coker");
  }
  if (format == Format::table) {
    out << table.str();
  } else {
    out << doc.dump(2) << "\n";
  }
}

// ---------------------------------------------------------------------------
// double-solid

struct DoubleSolidArgs {
  int m = 0;
  long defect = 0;
};

void run_double_solid(const DoubleSolidArgs& a, Format format, std::ostream& out) {
  const DoubleSolidModel model(a.m, Integer(a.defect));
  const ResolvedHodge h = clemens_hodge(model);
  std::optional<BettiTable> resolved, ih;
  std::optional<WeightGradedDims> graded;
  if (a.defect == 0) {
    resolved = betti_resolved(model);
    ih = ih_table(model);
    graded = weight_graded_dims(model);
  }
  if (format == Format::table) {
    out << "double solid m=" << a.m << ": branch degree " << model.branch_degree() << ", nodes "
        << to_string(model.nodes()) << ", defect " << a.defect << "\n";
    out << "h12 " << to_string(h.h12) << ", h03 " << to_string(h.h03) << "\n";
    if (resolved) {
      out << "betti (blow-up) " << join(resolved->values) << ", euler " << to_string(resolved->euler()) << "\n";
      out << "IH " << join(ih->values) << ", euler " << to_string(ih->euler()) << "\n";
      out << "Gr3 " << to_string(graded->gr3) << ", IH3 " << to_string(graded->ih3) << ", b3 "
          << to_string(graded->h3_resolved) << (graded->consistent() ? "" : " (inconsistent)") << "\n";
    } else {
      out << "Betti and IH tables need defect 0\n";
    }
    return;
  }
  ordered_json doc;
  doc["m"] = a.m;
  doc["defect"] = a.defect;
  doc["branch_degree"] = model.branch_degree();
  doc["nodes"] = num(model.nodes());
  doc["h12"] = num(h.h12);
  doc["h03"] = num(h.h03);
  doc["betti_resolved"] = resolved ? num_list(resolved->values) : ordered_json(nullptr);
  doc["ih"] = ih ? num_list(ih->values) : ordered_json(nullptr);
  if (graded) {
    doc["weight_graded"] = {{"gr3", num(graded->gr3)},
                            {"ih3", num(graded->ih3)},
                            {"h3_resolved", num(graded->h3_resolved)},
                            {"consistent", graded->consistent()}};
  } else {
    doc["weight_graded"] = nullptr;
  }
  out << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// decomp

struct DecompArgs {
  int n = 0;
  int r = 0;
  std::optional<long> var;
};

void run_decomp(const DecompArgs& a, Format format, std::ostream& out) {
  const BundleShape shape(a.n, a.r);
  const SummandList list = summands_for(shape);
  Integer var;
  std::string source;
  if (a.var) {
    var = *a.var;
    source = "input";
  } else {
    var = variable_middle(CISpace(a.n + 1, std::vector<int>(static_cast<std::size_t>(a.r + 1), 2))).total();
    source = "ci";
  }
  const BettiTable betti = assemble_total_betti(shape, var);

  if (format == Format::table) {
    out << "Rf_*Q[" << list.total_shift << "] for n=" << a.n << ", r=" << a.r << ":\n";
    for (const auto& s : list.summands) {
      out << "  " << to_string(s.kind) << " on " << to_string(s.support) << ", " << to_string(s.local_system)
          << ", shift " << s.shift << "\n";
    }
    out << "betti " << join(betti.values) << " (var " << to_string(var) << " from " << source << ")\n";
    out << "euler " << to_string(betti.euler()) << "\n";
    return;
  }
  ordered_json doc;
  doc["n"] = a.n;
  doc["r"] = a.r;
  doc["total_shift"] = list.total_shift;
  ordered_json summands = ordered_json::array();
  for (const auto& s : list.summands) {
    summands.push_back({{"kind", to_string(s.kind)},
                        {"support", to_string(s.support)},
                        {"local_system", to_string(s.local_system)},
                        {"shift", s.shift}});
  }
  doc["summands"] = std::move(summands);
  doc["var"] = num(var);
  doc["var_source"] = source;
  doc["betti"] = num_list(betti.values);
  doc["euler"] = num(betti.euler());
  out << doc.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// verify

struct Check {
  std::string name;
  std::vector<ordered_json> reports;
  std::vector<std::string> lines;
  bool pass = true;
};

ordered_json quantities_json(const Quantities& q) {
  ordered_json out = ordered_json::object();
  for (const auto& [key, value] : q) {
    out[key] = num(value);
  }
  return out;
}

std::string quantities_line(const Quantities& q) {
  std::string out;
  for (const auto& [key, value] : q) {
    out += (out.empty() ? "" : " ") + key + "=" + to_string(value);
  }
  return out;
}

void add_report(Check& check, const VerificationReport& r, bool with_shape) {
  ordered_json entry;
  if (with_shape) {
    entry["n"] = r.n;
    entry["r"] = r.r;
  } else {
    entry["m"] = r.m;
  }
  entry["lhs"] = quantities_json(r.lhs);
  entry["rhs"] = quantities_json(r.rhs);
  entry["pass"] = r.pass;
  if (!r.note.empty()) {
    entry["note"] = r.note;
  }
  check.reports.push_back(std::move(entry));
  std::ostringstream line;
  line << check.name << " ";
  if (with_shape) {
    line << "n=" << r.n << " r=" << r.r;
  } else {
    line << "m=" << r.m;
  }
  line << " " << (r.pass ? "PASS" : "FAIL") << "  " << quantities_line(r.lhs) << " | " << quantities_line(r.rhs);
  if (!r.note.empty()) {
    line << "  (" << r.note << ")";
  }
  check.lines.push_back(line.str());
  check.pass = check.pass && r.pass;
}

Check check_web_odd(Range range) {
  if (range.lo < 3) {
    throw std::invalid_argument("web-odd needs m >= 3");
  }
  Check check{"web-odd", {}, {}, true};
  for (int m = range.lo; m <= range.hi; ++m) {
    add_report(check, verify_web_odd(m), false);
  }
  return check;
}

Check check_euler(Range range) {
  if (range.lo < 3) {
    throw std::invalid_argument("euler needs m >= 3");
  }
  Check check{"euler", {}, {}, true};
  for (int m = range.lo; m <= range.hi; ++m) {
    add_report(check, verify_euler_witness(m), false);
  }
  return check;
}

Check check_level_theorem(int n_max) {
  Check check{"level", {}, {}, true};
  for (int r = 0; r <= 3; ++r) {
    for (int n = std::max(1, r); n <= n_max; ++n) {
      add_report(check, verify_level_theorem(n, r), true);
    }
  }
  return check;
}

// Level of V(2,...,2) against the parity prediction; a prediction above dim X
// is capped at dim X, the largest level a weight-dim X structure can have.
Check check_level_parity(int n_max, int r_max) {
  Check check{"level-parity", {}, {}, true};
  for (int r = 0; r <= r_max; ++r) {
    for (int n = std::max(1, r); n <= n_max; ++n) {
      const CISpace space(n + 1, std::vector<int>(static_cast<std::size_t>(r + 1), 2));
      const LevelReport level = level_of(space);
      const int prediction = *level.parity_prediction;
      const int expected = std::min(prediction, space.dim());
      const int measured = level.level.value_or(-1);
      VerificationReport report;
      report.n = n;
      report.r = r;
      report.lhs = {{"level", measured}};
      report.rhs = {{"prediction", expected}};
      report.pass = measured == expected;
      if (expected != prediction) {
        report.note = "prediction " + std::to_string(prediction) + " capped at dim X";
      } else if (prediction < 0) {
        report.note = "no variable cohomology";
      }
      add_report(check, report, true);
    }
  }
  return check;
}

int emit_checks(const std::vector<Check>& checks, Format format, std::ostream& out) {
  bool pass = true;
  for (const auto& c : checks) {
    pass = pass && c.pass;
  }
  if (format == Format::table) {
    for (const auto& c : checks) {
      for (const auto& line : c.lines) {
        out << line << "\n";
      }
    }
    out << (pass ? "all checks passed" : "verification FAILED") << "\n";
  } else {
    ordered_json doc;
    if (checks.size() == 1) {
      doc["check"] = checks[0].name;
      doc["reports"] = checks[0].reports;
    } else {
      ordered_json list = ordered_json::array();
      for (const auto& c : checks) {
        list.push_back({{"check", c.name}, {"reports", c.reports}, {"pass", c.pass}});
      }
      doc["checks"] = std::move(list);
    }
    doc["pass"] = pass;
    out << doc.dump(2) << "\n";
  }
  return pass ? ExitCode::ok : ExitCode::verification_failed;
}

// ---------------------------------------------------------------------------
// scan

struct ScanArgs {
  std::string input;
  std::vector<std::uint64_t> primes;
  unsigned threads = 1;
  std::uint64_t max_points = 100'000'000;
};

void run_scan(const ScanArgs& a, Format format, std::ostream& out) {
  std::ifstream file(a.input);
  if (!file) {
    throw std::invalid_argument("cannot open " + a.input);
  }
  std::stringstream buffer;
  buffer << file.rdbuf();
  const auto system = detscan::QuadricSystem::from_json(buffer.str());

  detscan::CensusOptions options;
  options.threads = std::max(1U, a.threads);
  options.max_points = a.max_points;
  std::vector<std::uint64_t> primes = a.primes.empty() ? std::vector<std::uint64_t>{101} : a.primes;

  std::vector<detscan::PrimeReport> reports;
  std::optional<detscan::RegularityReport> regularity;
  if (primes.size() == 1) {
    reports.push_back(detscan::scan_prime(system, primes[0], options));
  } else {
    regularity = detscan::regularity_report(system, primes, options);
    reports = regularity->primes;
  }

  if (format == Format::json) {
    out << (regularity ? detscan::regularity_to_json(*regularity) : detscan::report_to_json(reports[0])) << "\n";
    return;
  }
  for (const auto& rep : reports) {
    out << "prime " << rep.prime << "\n  census";
    for (std::size_t c = 0; c < rep.census.counts.size(); ++c) {
      out << " " << c << ":" << rep.census.counts[c];
    }
    out << "\n  det_degree " << (rep.det_degree ? std::to_string(*rep.det_degree) : "degenerate") << "\n";
    std::size_t passing = 0;
    for (const auto& node : rep.nodes.nodes) {
      passing += node.pass ? 1 : 0;
    }
    out << "  corank>=2 points " << rep.nodes.nodes.size() << " (" << passing << " ordinary double points)\n";
    for (const auto& s : rep.scaling) {
      out << "  corank>=" << s.corank << ": " << s.count << " points, expected dim " << s.expected_dim << ", ratio "
          << to_string(s.ratio) << (s.consistent ? "" : " (inconsistent)") << "\n";
    }
    out << "  verdict " << detscan::to_string(rep.verdict) << "\n";
  }
  if (regularity) {
    out << "rank oracle " << (regularity->rank_oracle_agreement ? "agrees" : "DISAGREES") << " on "
        << regularity->rank_oracle_samples << " samples\n";
    out << "verdict " << detscan::to_string(regularity->verdict) << "\n";
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Cohomology of intersections of quadrics: Hodge numbers, strata, double solids, scans"};
  app.name("quadcohom");
  app.require_subcommand(1);

  std::string format_name = "json";
  app.add_option("--format", format_name, "Output format")
      ->check(CLI::IsMember({"json", "table"}))
      ->capture_default_str();
  app.fallthrough();

  std::function<int(Format)> action;

  CiArgs ci_args;
  auto* ci = app.add_subcommand("ci", "Hodge diamond of a complete intersection");
  ci->add_option("--ambient", ci_args.ambient, "Dimension N of P^N")->required();
  ci->add_option("--degrees", ci_args.degrees, "Degrees, comma separated")->required()->delimiter(',');
  ci->callback([&] { action = [&](Format f) { run_ci(ci_args, f, out); return int{ExitCode::ok}; }; });

  StrataArgs strata_args;
  auto* strata = app.add_subcommand("strata", "Corank strata of a quadric bundle");
  strata->add_option("--n", strata_args.n, "Fiber dimension n");
  strata->add_option("--r", strata_args.r, "Base dimension r");
  strata->add_option("--coker", strata_args.coker, "Diagonal family: net-odd or web-even");
  strata->add_option("--m", strata_args.m, "Parameter m of the diagonal family");
  strata->callback([&] { action = [&](Format f) { run_strata(strata_args, f, out); return int{ExitCode::ok}; }; });

  DoubleSolidArgs ds_args;
  auto* ds = app.add_subcommand("double-solid", "Invariants of the nodal double solid and its blow-up");
  ds->add_option("--m", ds_args.m, "Web of quadrics in P^{2m+1}")->required();
  ds->add_option("--defect", ds_args.defect, "Defect of the double solid")->capture_default_str();
  ds->callback([&] { action = [&](Format f) { run_double_solid(ds_args, f, out); return int{ExitCode::ok}; }; });

  DecompArgs decomp_args;
  auto* decomp = app.add_subcommand("decomp", "Decomposition-theorem summands and total-space Betti numbers");
  decomp->add_option("--n", decomp_args.n, "Fiber dimension n")->required();
  decomp->add_option("--r", decomp_args.r, "Base dimension r")->required();
  decomp->add_option("--var", decomp_args.var, "Variable middle dimension (default: from the Hodge engine)");
  decomp->callback([&] { action = [&](Format f) { run_decomp(decomp_args, f, out); return int{ExitCode::ok}; }; });

  auto* verify = app.add_subcommand("verify", "Exact verification sweeps");
  verify->require_subcommand(1);
  std::string web_range = "3..12";
  auto* web_odd = verify->add_subcommand("web-odd", "Hodge numbers of V(2,2,2,2) vs the resolved double solid");
  web_odd->add_option("--m-range", web_range, "Range of m, as lo..hi")->capture_default_str();
  web_odd->callback([&] {
    action = [&](Format f) { return emit_checks({check_web_odd(parse_range(web_range))}, f, out); };
  });
  std::string euler_range = "3..10";
  auto* euler = verify->add_subcommand("euler", "Euler characteristic witnesses");
  euler->add_option("--m-range", euler_range, "Range of m, as lo..hi")->capture_default_str();
  euler->callback([&] {
    action = [&](Format f) { return emit_checks({check_euler(parse_range(euler_range))}, f, out); };
  });
  int level_n_max = 12;
  auto* level = verify->add_subcommand("level", "Variable IH of the double covers vs variable H of X (r <= 3)");
  level->add_option("--n-max", level_n_max, "Largest n")->capture_default_str();
  level->callback([&] { action = [&](Format f) { return emit_checks({check_level_theorem(level_n_max)}, f, out); }; });
  int parity_n_max = 12;
  int parity_r_max = 4;
  auto* parity = verify->add_subcommand("level-parity", "Level of V(2,...,2) against r (n even) / r-1 (n odd)");
  parity->add_option("--n-max", parity_n_max, "Largest n")->capture_default_str();
  parity->add_option("--r-max", parity_r_max, "Largest r")->capture_default_str();
  parity->callback([&] {
    action = [&](Format f) { return emit_checks({check_level_parity(parity_n_max, parity_r_max)}, f, out); };
  });
  int all_m_max = 12;
  auto* all = verify->add_subcommand("all", "Every sweep");
  all->add_option("--m-max", all_m_max, "Largest m for the web sweeps")->capture_default_str();
  all->callback([&] {
    action = [&](Format f) {
      return emit_checks({check_web_odd({3, all_m_max}), check_euler({3, all_m_max}), check_level_theorem(12),
                          check_level_parity(12, 4)},
                         f, out);
    };
  });

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Finite-field scan of an explicit system of quadrics");
  scan->add_option("--input", scan_args.input, "JSON file {n, r, matrices}")->required();
  scan->add_option("--prime", scan_args.primes, "Odd prime (repeatable; default 101)");
  scan->add_option("--threads", scan_args.threads, "Worker threads")->capture_default_str();
  scan->add_option("--max-points", scan_args.max_points, "Largest enumeration accepted")->capture_default_str();
  scan->callback([&] { action = [&](Format f) { run_scan(scan_args, f, out); return int{ExitCode::ok}; }; });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return ExitCode::ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return ExitCode::invalid_input;
  }

  const Format format = format_name == "table" ? Format::table : Format::json;
  try {
    return action(format);
  } catch (const ConsistencyError& e) {
    err << "consistency failure: " << e.what() << "\n";
    return ExitCode::verification_failed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return ExitCode::invalid_input;
  }
}

}  // namespace quadcohom::cli
