#include "dworklab/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <set>
#include <sstream>

#include "dworklab/hasse_witt.hpp"
#include "dworklab/json_io.hpp"
#include "dworklab/kz.hpp"

namespace dworklab {

namespace {

struct Options {
  std::uint64_t p = 0;
  unsigned N = 0;
  int g = 1;
  unsigned s = 1;
  std::size_t l = 1;
  unsigned m = 0;
  unsigned ext = 0;
  int u = 1, v = 1;
  std::size_t points = 0;
  std::uint64_t seed = 0;
  bool symbolic = false;
  std::string theorem, check, tuple, at, poly, delta, intervals, out;
  bool periodic = false, exhaustive = false, rank = false;
  std::size_t sample = 0, depth = 8, list = 20;
  std::uint64_t point = 0;
  unsigned smax = 0;
};

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::ConfigError, path + ": " + e.what());
  }
}

// "1..3", "1,2,5" or a mix; one-dimensional points.
Delta parse_delta(const std::string& text) {
  Delta d;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto dots = item.find("..");
    try {
      if (dots == std::string::npos) {
        d.push_back({std::stoi(item)});
      } else {
        const int lo = std::stoi(item.substr(0, dots)), hi = std::stoi(item.substr(dots + 2));
        for (int k = lo; k <= hi; ++k) d.push_back({k});
      }
    } catch (const std::logic_error&) {
      fail(ErrorCode::ConfigError, "cannot parse delta '" + text + "'");
    }
  }
  if (d.empty()) fail(ErrorCode::ConfigError, "delta is empty");
  return d;
}

std::vector<Interval> parse_intervals(const std::string& text) {
  std::vector<Interval> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item == "empty") {
      out.push_back({0, 0, true});
      continue;
    }
    const auto colon = item.find(':');
    if (colon == std::string::npos) fail(ErrorCode::ConfigError, "interval '" + item + "' is not lo:hi");
    try {
      out.push_back({std::stol(item.substr(0, colon)), std::stol(item.substr(colon + 1)), false});
    } catch (const std::logic_error&) {
      fail(ErrorCode::ConfigError, "cannot parse interval '" + item + "'");
    }
  }
  return out;
}

// Every option given on the command line, for replay.
json echo_config(const CLI::App& sub) {
  json cfg = json::object();
  for (const CLI::Option* opt : sub.get_options()) {
    if (opt->count() == 0 || opt->get_name() == "--help") continue;
    std::string name = opt->get_single_name();
    if (opt->get_expected_min() == 0) {
      cfg[name] = true;
      continue;
    }
    const auto& res = opt->results();
    cfg[name] = res.size() == 1 ? json(res[0]) : json(res);
  }
  return cfg;
}

json document(const std::string& command, const json& config) {
  return {{"$schema", kReportSchema}, {"command", command}, {"config", config}};
}

std::vector<std::vector<ExtElem>> lifts_of(const std::vector<DomainPoint>& pts) {
  std::vector<std::vector<ExtElem>> out;
  for (const auto& p : pts) out.push_back(p.lift);
  return out;
}

CheckMode pick_mode(const Options& o, const PadicCtx& ctx) {
  if (o.symbolic && o.points > 0) fail(ErrorCode::ConfigError, "--symbolic and --points are exclusive");
  if (o.points == 0) return CheckMode::make_symbolic();
  return CheckMode::at(lifts_of(domain_points(ctx, o.g, o.points, o.seed)));
}

Delta delta_for(const Options& o, const json* tuple_doc) {
  if (tuple_doc && tuple_doc->is_object() && tuple_doc->contains("delta"))
    return (*tuple_doc)["delta"].get<Delta>();
  return o.delta.empty() ? delta_range(o.g) : parse_delta(o.delta);
}

int cmd_ghosts(const Options& o, json& doc) {
  const auto ctx = PadicCtx::create(o.p, o.N, o.ext == 0 ? 1 : o.ext);
  const json tj = load_json(o.tuple);
  const GhostTuple T = tuple_from_json(ctx, tj, delta_for(o, &tj));
  doc["ctx"] = to_json(ctx);
  doc["admissibility"] = to_json(check_admissible(T, o.l + 1));
  GhostSeq seq(T, o.l);
  json V = json::array(), vals = json::array();
  bool divisible = true;
  for (std::size_t s = 0; s <= o.l; ++s) {
    V.push_back(to_json(seq.V(s)));
    vals.push_back(seq.valuation(s));
    divisible = divisible && seq.valuation(s) >= static_cast<int>(s);
  }
  doc["V"] = V;
  doc["min_valuation"] = vals;
  doc["pass"] = divisible;
  return divisible ? kExitPass : kExitFail;
}

int cmd_hw(const Options& o, json& doc) {
  const auto ctx = PadicCtx::create(o.p, o.N, o.ext == 0 ? 1 : o.ext);
  const unsigned level = o.m == 0 ? 1 : o.m;
  const LaurentPoly F = o.poly.empty() ? LaurentPoly::from_factored(master_polynomial(ctx, o.g, 1))
                                       : poly_from_json(ctx, load_json(o.poly));
  const Delta delta = delta_for(o, nullptr);
  doc["ctx"] = to_json(ctx);
  doc["level"] = level;
  if (!o.at.empty()) {
    const auto a = point_from_json(ctx, load_json(o.at));
    const ScalarMatrix A = hw_matrix_at(level, F, delta, a);
    const ExtElem det = determinant(ScalarOps{ctx}, A);
    doc["matrix"] = to_json(A);
    doc["det"] = to_json(det);
    doc["det_valuation"] = ctx.valuation(det);
    return kExitPass;
  }
  const PolyMatrix A = hw_matrix(level, F, delta);
  const LaurentPoly det = determinant(PolyOps{ctx, F.n()}, A);
  doc["matrix"] = to_json(A);
  doc["det"] = to_json(det);
  doc["det_valuation"] = det.min_valuation();
  if (!det.is_zero()) {
    const auto lt = leading_term_lex(det);
    doc["det_leading_term"] = {{"exponents", lt.exponents}, {"coeff", to_json(lt.coeff)}};
    doc["det_degree"] = z_homogeneous_degree(det);
  }
  return kExitPass;
}

int cmd_congruence(const Options& o, json& doc) {
  static const std::set<std::string> ids{"1.6i", "1.6ii", "det", "der", "der2", "decomp"};
  if (!ids.count(o.theorem)) fail(ErrorCode::ConfigError, "unknown theorem id '" + o.theorem + "'");
  doc["theorem"] = o.theorem;
  const bool symbolic = o.points == 0;
  const auto ctx = PadicCtx::create(o.p, o.N, symbolic ? 1 : (o.ext == 0 ? 2 : o.ext));
  GhostTuple T;
  if (o.tuple.empty()) {
    validate_kz(ctx, o.g);
    T = kz_tuple(ctx, o.g);
  } else {
    const json tj = load_json(o.tuple);
    T = tuple_from_json(ctx, tj, delta_for(o, &tj));
  }
  const CheckMode mode = pick_mode(o, ctx);
  CongruenceReport r;
  if (o.theorem == "decomp") r = verify_decomposition(T, o.s, mode);
  if (o.theorem == "1.6i") r = verify_frobenius_factorization(T, o.s, mode);
  if (o.theorem == "1.6ii") r = verify_dwork_ratio(T, o.s, mode);
  if (o.theorem == "det") r = verify_det_congruence(T, o.s, mode);
  if (o.theorem == "der") r = verify_derivative_congruence(T, o.s, o.m, o.v - 1, mode);
  if (o.theorem == "der2") r = verify_second_derivative_congruence(T, o.s, o.u - 1, o.v - 1, mode);
  doc["ctx"] = to_json(ctx);
  doc["report"] = to_json(r);
  return r.pass ? kExitPass : kExitFail;
}

int cmd_kz_solve(const Options& o, json& doc) {
  const auto ctx = PadicCtx::create(o.p, o.N, o.ext == 0 ? 1 : o.ext);
  validate_kz(ctx, o.g);
  doc["ctx"] = to_json(ctx);
  doc["level"] = o.s;
  const int n = 2 * o.g + 1;
  if (!o.at.empty()) {
    const auto a = point_from_json(ctx, load_json(o.at));
    const ScalarMatrix I = ps_solutions_at(ctx, o.g, o.s, a);
    int sums = static_cast<int>(ctx.precision());
    for (std::size_t l = 0; l < I.cols(); ++l) {
      ExtElem c = ctx.zero();
      for (std::size_t i = 0; i < I.rows(); ++i) c = ctx.add(c, I(i, l));
      sums = std::min(sums, ctx.valuation(c));
    }
    doc["I"] = to_json(I);
    doc["column_sum_valuation"] = sums;
    return kExitPass;
  }
  const PolyMatrix I = ps_solutions(ctx, o.g, o.s);
  int sums = static_cast<int>(ctx.precision());
  for (std::size_t l = 0; l < I.cols(); ++l) {
    LaurentPoly c(ctx, 0, n);
    for (std::size_t i = 0; i < I.rows(); ++i) c = c + I(i, l);
    sums = std::min(sums, c.min_valuation());
  }
  doc["I"] = to_json(I);
  doc["column_sum_valuation"] = sums;
  return kExitPass;
}

int cmd_kz_verify(const Options& o, json& doc) {
  static const std::set<std::string> checks{"residual", "phi", "coS", "minor"};
  if (!checks.count(o.check)) fail(ErrorCode::ConfigError, "unknown check '" + o.check + "'");
  doc["theorem"] = o.check;
  const bool symbolic = o.points == 0;
  const auto ctx = PadicCtx::create(o.p, o.N, symbolic ? 1 : (o.ext == 0 ? 2 : o.ext));
  validate_kz(ctx, o.g);
  if (!symbolic && (o.check == "phi" || o.check == "minor"))
    fail(ErrorCode::ConfigError, "check '" + o.check + "' is symbolic only");
  const CheckMode mode = pick_mode(o, ctx);
  CongruenceReport r;
  if (o.check == "residual") r = kz_residual(ctx, o.g, o.s, mode);
  if (o.check == "phi") r = verify_phi_identities(ctx, o.g, o.s);
  if (o.check == "coS") r = verify_solution_congruence(ctx, o.g, o.s, mode);
  if (o.check == "minor") r = verify_minor(ctx, o.g);
  doc["ctx"] = to_json(ctx);
  doc["report"] = to_json(r);
  return r.pass ? kExitPass : kExitFail;
}

int cmd_domain_scan(const Options& o, json& doc) {
  if (o.exhaustive == (o.sample > 0)) fail(ErrorCode::ConfigError, "give exactly one of --exhaustive and --sample");
  const auto ctx = PadicCtx::create(o.p, o.N == 0 ? 1 : o.N, o.m == 0 ? 1 : o.m);
  validate_kz(ctx, o.g);
  const ScanSummary sum = scan_domain(ctx, o.g, ScanMode{o.exhaustive, o.sample, o.seed});
  doc["ctx"] = to_json(ctx);
  doc["total"] = sum.total;
  doc["examined"] = sum.examined;
  doc["in_D"] = sum.in_D;
  doc["in_D_o"] = sum.in_D_o;
  doc["d"] = sum.d;
  bool pass = sum.in_D > 0;
  if (sum.lower_bound) {
    doc["lower_bound"] = static_cast<double>(*sum.lower_bound);
    pass = static_cast<long double>(sum.in_D) >= *sum.lower_bound;
    doc["bound_holds"] = pass;
  } else {
    doc["lower_bound"] = nullptr;
  }
  json idx = json::array();
  for (const auto& p : sum.points)
    if (p.in_D_o && idx.size() < o.list) idx.push_back(p.index);
  doc["residue_distinct_indices"] = idx;
  if (o.rank) {
    std::size_t tested = 0, any = 0, designated = 0;
    for (const auto& p : sum.points) {
      if (!p.in_D_o) continue;
      const auto r = rank_check(ctx, o.g, p.lift);
      ++tested;
      any += r.pass ? 1 : 0;
      designated += r.checks.at(0).observed > 0 ? 1 : 0;
    }
    doc["rank"] = {{"points", tested},
                   {"any_unit_minor_fraction", tested ? static_cast<double>(any) / tested : 0.0},
                   {"designated_minor_fraction", tested ? static_cast<double>(designated) / tested : 0.0}};
  }
  doc["pass"] = pass;
  return pass ? kExitPass : kExitFail;
}

int cmd_limit(const Options& o, json& doc) {
  const unsigned N = o.N == 0 ? o.smax + 1 : o.N;
  if (N < o.smax + 1) fail(ErrorCode::ConfigError, "limit needs N >= s_max + 1");
  const auto ctx = PadicCtx::create(o.p, N, o.m == 0 ? 2 : o.m);
  validate_kz(ctx, o.g);
  const auto pt = point_from_index(ctx, o.g, o.point);
  const LimitReport r = run_limit(ctx, o.g, pt, o.smax);
  doc["ctx"] = to_json(ctx);
  doc["report"] = to_json(ctx, r);
  return r.pass() ? kExitPass : kExitFail;
}

int cmd_admissible(const Options& o, json& doc) {
  if (o.tuple.empty() == o.intervals.empty()) fail(ErrorCode::ConfigError, "give exactly one of --tuple and --intervals");
  AdmissibilityVerdict verdict;
  if (!o.tuple.empty()) {
    const auto ctx = PadicCtx::create(o.p, o.N == 0 ? 1 : o.N);
    const json tj = load_json(o.tuple);
    verdict = check_admissible(tuple_from_json(ctx, tj, delta_for(o, &tj)), o.depth);
  } else {
    std::vector<long> delta;
    for (const auto& d : delta_for(o, nullptr)) delta.push_back(d.at(0));
    const auto iv = parse_intervals(o.intervals);
    verdict = check_admissible(iv, o.periodic, delta, o.p, o.depth);
  }
  doc["verdict"] = to_json(verdict);
  doc["pass"] = verdict.admissible;
  return verdict.admissible ? kExitPass : kExitFail;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact p-adic verification of Dwork-type congruences and KZ solutions"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--out", o.out, "Write JSON lines to this file instead of stdout");

  auto common = [&](CLI::App* sub, bool needs_N) {
    sub->add_option("--p", o.p, "Prime")->required();
    auto* n = sub->add_option("--N", o.N, "Working precision p^N");
    if (needs_N) n->required();
  };
  auto* ghosts = app.add_subcommand("ghosts", "Ghost polynomials V_s of a tuple");
  common(ghosts, true);
  ghosts->add_option("--l", o.l, "Last ghost index")->required();
  ghosts->add_option("--tuple", o.tuple, "Tuple JSON file")->required();
  ghosts->add_option("--delta", o.delta, "Delta, e.g. 1..g");
  ghosts->add_option("--ext", o.ext, "Extension degree of the coefficient ring");

  auto* hw = app.add_subcommand("hw", "Hasse-Witt matrix A(m, F), F = Phi_1 by default");
  common(hw, true);
  hw->add_option("--m", o.m, "Level");
  hw->add_option("--g", o.g, "Genus; Delta = 1..g");
  hw->add_option("--delta", o.delta, "Delta override");
  hw->add_option("--poly", o.poly, "Polynomial JSON file for F");
  hw->add_option("--at", o.at, "Point JSON file");
  hw->add_option("--ext", o.ext, "Extension degree");

  auto* cong = app.add_subcommand("congruence", "Dwork-type congruence verifiers");
  common(cong, true);
  cong->add_option("--theorem", o.theorem, "1.6i, 1.6ii, det, der, der2 or decomp")->required();
  cong->add_option("--s", o.s, "Level s");
  cong->add_option("--g", o.g, "Genus of the KZ tuple");
  cong->add_option("--m", o.m, "Frobenius twist for der");
  cong->add_option("--u", o.u, "First z index for der2 (1-based)");
  cong->add_option("--v", o.v, "z index for der and der2 (1-based)");
  cong->add_option("--tuple", o.tuple, "Tuple JSON file instead of the KZ tuple");
  cong->add_option("--delta", o.delta, "Delta for --tuple");
  cong->add_option("--points", o.points, "Number of domain points (pointwise mode)");
  cong->add_flag("--symbolic", o.symbolic, "Symbolic mode (default)");
  cong->add_option("--seed", o.seed, "Seed for point sampling");
  cong->add_option("--ext", o.ext, "Extension degree of sampled points (default 2)");

  auto* solve = app.add_subcommand("kz-solve", "p^s-hypergeometric solutions I_s");
  common(solve, true);
  solve->add_option("--g", o.g, "Genus")->required();
  solve->add_option("--s", o.s, "Level s");
  solve->add_option("--at", o.at, "Point JSON file");
  solve->add_option("--ext", o.ext, "Extension degree");

  auto* verify = app.add_subcommand("kz-verify", "KZ residual, proof identities, solution congruence, minor");
  common(verify, true);
  verify->add_option("--check", o.check, "residual, phi, coS or minor")->required();
  verify->add_option("--g", o.g, "Genus")->required();
  verify->add_option("--s", o.s, "Level s");
  verify->add_option("--points", o.points, "Number of domain points (pointwise mode)");
  verify->add_flag("--symbolic", o.symbolic, "Symbolic mode (default)");
  verify->add_option("--seed", o.seed, "Seed for point sampling");
  verify->add_option("--ext", o.ext, "Extension degree of sampled points (default 2)");

  auto* scan = app.add_subcommand("domain-scan", "Count points of the convergence domain");
  common(scan, false);
  scan->add_option("--g", o.g, "Genus")->required();
  scan->add_option("--m", o.m, "Residue field degree")->required();
  scan->add_flag("--exhaustive", o.exhaustive, "Enumerate every residue tuple");
  scan->add_option("--sample", o.sample, "Number of uniform samples");
  scan->add_option("--seed", o.seed, "Sampling seed");
  scan->add_option("--list", o.list, "Residue-distinct point indices to list");
  scan->add_flag("--rank", o.rank, "Rank certificate at every kept residue-distinct point");

  auto* limit = app.add_subcommand("limit", "Limit matrices and certificates at one point");
  common(limit, false);
  limit->add_option("--g", o.g, "Genus")->required();
  limit->add_option("--m", o.m, "Residue field degree (default 2)");
  limit->add_option("--point", o.point, "Point index from domain-scan")->required();
  limit->add_option("--smax", o.smax, "Number of levels")->required()->check(CLI::PositiveNumber);

  auto* adm = app.add_subcommand("admissible", "Delta-admissibility of a tuple or of t-intervals");
  common(adm, false);
  adm->add_option("--tuple", o.tuple, "Tuple JSON file");
  adm->add_option("--intervals", o.intervals, "Comma-separated lo:hi intervals (or 'empty')");
  adm->add_flag("--periodic", o.periodic, "The intervals repeat forever");
  adm->add_option("--delta", o.delta, "Delta, e.g. 1..g");
  adm->add_option("--g", o.g, "Delta = 1..g when --delta is absent");
  adm->add_option("--depth", o.depth, "Window lengths to check");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitConfig;
  }

  CLI::App* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  std::ofstream file;
  if (!o.out.empty()) {
    file.open(o.out);
    if (!file) {
      err << "cannot write " << o.out << "\n";
      return kExitConfig;
    }
  }
  std::ostream& sink = o.out.empty() ? out : file;
  json doc = document(name, echo_config(*sub));
  int code = kExitConfig;
  try {
    if (name == "ghosts") code = cmd_ghosts(o, doc);
    if (name == "hw") code = cmd_hw(o, doc);
    if (name == "congruence") code = cmd_congruence(o, doc);
    if (name == "kz-solve") code = cmd_kz_solve(o, doc);
    if (name == "kz-verify") code = cmd_kz_verify(o, doc);
    if (name == "domain-scan") code = cmd_domain_scan(o, doc);
    if (name == "limit") code = cmd_limit(o, doc);
    if (name == "admissible") code = cmd_admissible(o, doc);
  } catch (const Error& e) {
    doc["error"] = {{"code", std::string(error_name(e.code()))}, {"message", e.what()}};
    err << name << ": " << e.what() << "\n";
    code = kExitConfig;
  }
  sink << doc.dump() << "\n";
  return code;
}

}  // namespace dworklab
