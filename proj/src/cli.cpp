#include "mrees/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>

#include "CLI11.hpp"
#include "mrees/grobner.hpp"
#include "mrees/oracle.hpp"
#include "mrees/spec_io.hpp"

namespace mrees {

namespace {

struct Options {
  std::string spec_path;
  std::string order = "lex";
  std::string family = "restricted";
  int max_minor_size = kMaxMinorSize;
  int t_degree_cap = 3;
  int s_degree_cap = -1;
  std::size_t monomial_cap = 20000;
  unsigned jobs = 1;
  std::uint64_t seed = 1;
  std::string format = "text";
  std::string output;
  bool reduced_indexing = false;
  // verify / oracle
  bool phi_only = false;
  std::string generators_path;
  bool compare_families = false;
  // groebner
  std::string generic;
  std::size_t perms = 5;
  int truncate = 0;
  bool standard_order = false;
  // taylor
  std::vector<std::string> monomials;
  std::string vars;
  int degree_bound = -1;
};

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "text|json|cas")->capture_default_str();
  sub->add_option("--seed", o.seed, "seed for order suites")->capture_default_str();
  sub->add_option("--jobs", o.jobs, "worker threads")->capture_default_str();
  sub->add_option("-o,--output", o.output, "write to a file instead of stdout");
}

void add_spec(CLI::App* sub, Options& o, bool required = true) {
  auto* opt = sub->add_option("spec", o.spec_path, "spec JSON file");
  if (required) opt->required();
  sub->add_option("--family", o.family, "full|restricted")->capture_default_str();
  sub->add_option("--order", o.order, "lex|grlex|grevlex")->capture_default_str();
  sub->add_option("--max-minor-size", o.max_minor_size, "largest binary subquasi-matrix")
      ->capture_default_str();
  sub->add_flag("--reduced-indexing", o.reduced_indexing, "index D blocks over K_l only");
}

void add_caps(CLI::App* sub, Options& o) {
  sub->add_option("--t-degree-cap", o.t_degree_cap, "total t-degree of oracle pieces")
      ->capture_default_str();
  sub->add_option("--s-degree-cap", o.s_degree_cap,
                  "s/x-degree above the minimum (default 3*max(a)+2)");
  sub->add_option("--monomial-cap", o.monomial_cap, "sources per piece")->capture_default_str();
}

OracleCaps caps_of(const Options& o) {
  OracleCaps c;
  c.monomial_cap = o.monomial_cap;
  c.t_degree_cap = o.t_degree_cap;
  c.aux_degree_cap = o.s_degree_cap;
  return c;
}

struct Loaded {
  ReesSpec spec;
  ReesPresentation pres;
};

Loaded load(const Options& o) {
  auto spec = read_spec_file(o.spec_path);
  auto pres = build_presentation(spec, {.reduced_indexing = o.reduced_indexing});
  return {std::move(spec), std::move(pres)};
}

std::vector<Poly> family_polys(const ReesPresentation& pres, const Options& o,
                               std::vector<std::string>* warnings = nullptr,
                               std::vector<GenKind>* kinds = nullptr) {
  auto gs = defining_generators(pres, parse_family(o.family), o.max_minor_size);
  std::vector<Poly> out;
  for (const auto& g : gs.generators) {
    out.push_back(g.poly);
    if (kinds) kinds->push_back(g.kind);
  }
  if (warnings) *warnings = gs.warnings;
  return out;
}

std::vector<Poly> chosen_generators(const ReesPresentation& pres, const Options& o) {
  if (o.generators_path.empty()) return family_polys(pres, o);
  std::ifstream in(o.generators_path);
  if (!in) throw AlgebraError("cannot open generator file " + o.generators_path);
  return parse_generator_list(in, pres.universe());
}

std::string header(const std::string& prefix, const ReesSpec& spec, const Options& o) {
  return prefix + " spec: " + summarize(spec) + "\n" + prefix + " seed: " + std::to_string(o.seed) +
         "\n";
}

// ---------------------------------------------------------------------------

int cmd_generators(const Options& o, std::ostream& out) {
  auto [spec, pres] = load(o);
  const auto fmt = parse_format(o.format);
  std::vector<std::string> warnings;
  std::vector<GenKind> kinds;
  auto gens = family_polys(pres, o, &warnings, &kinds);
  for (const auto& w : pres.warnings()) warnings.insert(warnings.begin(), w);
  const auto ord = MonomialOrder::standard(*pres.universe(), parse_order_kind(o.order));

  if (fmt == OutputFormat::JSON) {
    nlohmann::ordered_json j;
    j["spec"] = spec_to_json(spec);
    j["seed"] = o.seed;
    j["family"] = o.family;
    j["order"] = ord.describe(*pres.universe());
    j["reduced_indexing"] = o.reduced_indexing;
    j["E"] = quasi_matrix_to_json(pres.E(), pres.row_labels());
    j["warnings"] = warnings;
    auto arr = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < gens.size(); ++i)
      arr.push_back({{"kind", to_string(kinds[i])},
                     {"text", to_string(gens[i], ord)},
                     {"terms", poly_to_json(gens[i])}});
    j["generators"] = std::move(arr);
    out << j.dump(2) << "\n";
    return 0;
  }
  if (fmt == OutputFormat::CAS) {
    out << "-- spec: " << summarize(spec) << "\n-- seed: " << o.seed << "\n-- family: " << o.family
        << ", " << gens.size() << " generators\n";
    for (const auto& w : warnings) out << "-- warning: " << w << "\n";
    out << cas_ideal(gens, pres);
    return 0;
  }
  out << header("#", spec, o) << "# family: " << o.family << "\n# order: "
      << ord.describe(*pres.universe()) << "\n# E (" << pres.E().rows() << "x" << pres.E().cols()
      << "):\n";
  std::istringstream layout(pres.E().pretty(pres.row_labels()));
  for (std::string line; std::getline(layout, line);) out << "#   " << line << "\n";
  for (const auto& w : warnings) out << "# warning: " << w << "\n";
  out << "# generators: " << gens.size() << "\n";
  for (const auto& g : gens) out << to_string(g, ord) << "\n";
  return 0;
}

int cmd_verify(const Options& o, std::ostream& out) {
  auto [spec, pres] = load(o);
  const auto fmt = parse_format(o.format);
  auto gens = chosen_generators(pres, o);
  struct PhiFailure {
    std::size_t index;
    Poly image;
  };
  std::vector<PhiFailure> phi_failures;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    Poly img = phi_apply(gens[i], pres);
    if (!img.is_zero()) phi_failures.push_back({i, std::move(img)});
  }
  std::optional<GradedKernelReport> rep;
  if (!o.phi_only) {
    auto caps = caps_of(o);
    rep = span_compare(gens, pres, oracle_degrees(pres, caps), caps, o.jobs);
    rep->seed = o.seed;
  }
  const bool pass = phi_failures.empty() && (!rep || rep->pass());

  if (fmt == OutputFormat::JSON) {
    nlohmann::ordered_json j;
    j["spec"] = spec_to_json(spec);
    j["seed"] = o.seed;
    j["generators"] = gens.size();
    auto fails = nlohmann::ordered_json::array();
    for (const auto& f : phi_failures)
      fails.push_back({{"index", f.index + 1},
                       {"generator", to_string(gens[f.index])},
                       {"image", to_string(f.image)}});
    j["phi"] = {{"checked", gens.size()}, {"failures", std::move(fails)}};
    j["oracle"] = rep ? rep->to_json() : nlohmann::ordered_json();
    j["result"] = pass ? "PASS" : "FAIL";
    out << j.dump(2) << "\n";
  } else {
    out << header("#", spec, o) << "phi-vanishing: " << gens.size() - phi_failures.size() << "/"
        << gens.size() << " generators map to zero\n";
    for (const auto& f : phi_failures)
      out << "  witness: generator " << f.index + 1 << " " << to_string(gens[f.index])
          << " maps to " << to_string(f.image) << "\n";
    if (rep)
      out << "oracle:\n" << rep->to_text();
    else
      out << "oracle: skipped (--phi-only)\n";
    out << "verify: " << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? 0 : 1;
}

std::vector<MonomialOrder> orders_for(const std::vector<VarId>& vars, const Options& o,
                                      bool order_given) {
  if (o.standard_order) {
    std::vector<MonomialOrder> out;
    for (auto k : {OrderKind::LEX, OrderKind::GREVLEX})
      if (!order_given || k == parse_order_kind(o.order)) out.emplace_back(k, vars);
    if (order_given && out.empty()) out.emplace_back(parse_order_kind(o.order), vars);
    return out;
  }
  auto suite = order_suite(vars, o.seed, o.perms);
  if (!order_given) return suite;
  const auto kind = parse_order_kind(o.order);
  std::vector<MonomialOrder> out;
  for (const auto& ord : suite) {
    if (kind == OrderKind::GRLEX) {
      if (ord.kind() == OrderKind::GREVLEX) out.emplace_back(OrderKind::GRLEX, ord.ranking());
    } else if (ord.kind() == kind) {
      out.push_back(ord);
    }
  }
  return out;
}

void write_gb_reports(const std::vector<BuchbergerReport>& reports, std::size_t generators,
                      bool pass, const std::string& head, const Options& o, std::ostream& out) {
  if (parse_format(o.format) == OutputFormat::JSON) {
    nlohmann::ordered_json j;
    j["input"] = head;
    j["seed"] = o.seed;
    j["generators"] = generators;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) {
      auto inc = nlohmann::ordered_json::array();
      for (const auto& p : r.inconclusive) inc.push_back({p.i + 1, p.j + 1});
      arr.push_back({{"order", r.order}, {"pairs", r.pairs}, {"inconclusive", std::move(inc)}});
    }
    j["orders"] = std::move(arr);
    j["result"] = pass ? "PASS" : "FAIL";
    out << j.dump(2) << "\n";
    return;
  }
  out << "# input: " << head << "\n# seed: " << o.seed << "\n# generators: " << generators << "\n";
  for (const auto& r : reports) {
    out << r.order << ": " << r.pairs << " pairs, " << r.inconclusive.size() << " inconclusive\n";
    for (const auto& p : r.inconclusive)
      out << "  INCONCLUSIVE pair (" << p.i + 1 << "," << p.j + 1 << ")\n";
  }
  out << "groebner: " << (pass ? "PASS" : "FAIL") << "\n";
}

int cmd_groebner(const Options& o, bool order_given, std::ostream& out) {
  if (o.generic.empty() == o.spec_path.empty())
    throw AlgebraError("give either a spec file or --generic RxC");
  if (!o.generic.empty()) {
    std::smatch m;
    if (!std::regex_match(o.generic, m, std::regex(R"((\d+)x(\d+))")))
      throw AlgebraError("--generic expects RxC, e.g. 3x4");
    const int rows = std::stoi(m[1]), cols = std::stoi(m[2]);
    if (rows < 1 || cols < 1) throw AlgebraError("--generic needs positive sizes");
    std::vector<std::string> s, T;
    for (int r = 0; r < rows; ++r) s.push_back("s" + std::to_string(r + 1));
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c)
        T.push_back("A[" + std::to_string(r + 1) + "," + std::to_string(c + 1) + "]");
    auto u = std::make_shared<const VarUniverse>(CoeffDomain::QQ, s, std::vector<std::string>{},
                                                 T, std::vector<std::string>{});
    QuasiMatrix B(u, rows, cols + 1);
    std::vector<VarId> tv;
    for (int r = 0; r < rows; ++r) {
      B.set({r, 0}, u->s(static_cast<std::size_t>(r)));
      for (int c = 0; c < cols; ++c) {
        auto v = u->T(static_cast<std::size_t>(r * cols + c));
        B.set({r, c + 1}, v);
        tv.push_back(v);
      }
    }
    auto rep = universal_gb_check(B, orders_for(tv, o, order_given), o.max_minor_size, o.jobs);
    write_gb_reports(rep.per_order, rep.generators, rep.pass(), "generic (s | A), A " + o.generic,
                     o, out);
    return rep.pass() ? 0 : 1;
  }
  auto [spec, pres] = load(o);
  auto gens = family_polys(pres, o);
  if (o.truncate < 0 || static_cast<std::size_t>(o.truncate) > gens.size())
    throw AlgebraError("--truncate exceeds the generator count");
  gens.erase(gens.end() - o.truncate, gens.end());
  std::vector<BuchbergerReport> reports;
  bool pass = true;
  for (const auto& ord : orders_for(pres.S_variables(), o, order_given)) {
    reports.push_back(buchberger_check(gens, ord, ReductionStrategy::FIRST_MATCH, o.jobs));
    pass = pass && reports.back().pass();
  }
  write_gb_reports(reports, gens.size(), pass, summarize(spec), o, out);
  return pass ? 0 : 1;
}

int cmd_taylor(const Options& o, std::ostream& out) {
  std::vector<std::string> names;
  if (!o.vars.empty()) {
    std::stringstream ss(o.vars);
    for (std::string v; std::getline(ss, v, ',');)
      if (!v.empty()) names.push_back(v);
  } else {
    std::regex ident(R"([A-Za-z_][A-Za-z0-9_]*)");
    for (const auto& m : o.monomials)
      for (std::sregex_iterator it(m.begin(), m.end(), ident), end; it != end; ++it)
        if (std::find(names.begin(), names.end(), it->str()) == names.end())
          names.push_back(it->str());
  }
  if (o.monomials.empty()) throw AlgebraError("taylor needs at least one monomial");
  if (o.monomials.size() > kTaylorMaxGenerators)
    throw CapExceeded("taylor accepts at most " + std::to_string(kTaylorMaxGenerators) +
                      " monomials");
  auto u = std::make_shared<const VarUniverse>(CoeffDomain::QQ, names, std::vector<std::string>{},
                                               std::vector<std::string>{},
                                               std::vector<std::string>{});
  std::vector<SMonomial> gens;
  for (const auto& text : o.monomials) {
    Poly p = parse_poly(text, u);
    if (p.size() != 1 || p.terms()[0].coeff != 1)
      throw AlgebraError("'" + text + "' is not a monic monomial");
    SMonomial m(names.size());
    for (const auto& [v, e] : p.terms()[0].mono.entries()) m.exps[v] = e;
    gens.push_back(m);
  }
  auto tc = taylor_complex(gens);
  auto syz = syzygy_generators(gens);
  std::uint64_t bound = 0;
  for (const auto& g : gens) bound = std::max(bound, g.degree());
  for (const auto& s : syz) bound = std::max(bound, s.ci.degree() + gens[s.i].degree());
  bound = o.degree_bound >= 0 ? static_cast<std::uint64_t>(o.degree_bound) : bound + 2;
  auto pieces = monomial_syzygy_kernel(gens, bound, o.monomial_cap);
  const bool oracle_ok = std::all_of(pieces.begin(), pieces.end(),
                                     [](const SyzygyPiece& p) { return p.kernel_in_span; });
  const bool pass = tc.is_complex() && oracle_ok;

  auto basis_name = [&](const std::vector<std::size_t>& idx) {
    std::string s = "e";
    if (idx.empty()) return std::string("1");
    for (auto i : idx) s += (s.size() > 1 ? "," : "") + std::to_string(i + 1);
    return s;
  };
  auto smono_text = [&](const SMonomial& m) { return m.to_string(names); };

  if (parse_format(o.format) == OutputFormat::JSON) {
    nlohmann::ordered_json j;
    j["seed"] = o.seed;
    j["generators"] = o.monomials;
    auto diffs = nlohmann::ordered_json::array();
    for (std::size_t p = 1; p <= gens.size(); ++p) {
      auto cols = nlohmann::ordered_json::array();
      for (std::size_t c = 0; c < tc.rank(p); ++c) {
        auto ents = nlohmann::ordered_json::array();
        for (const auto& e : tc.differentials[p - 1][c])
          ents.push_back({{"target", basis_name(tc.basis[p - 1][e.target])},
                          {"sign", e.sign},
                          {"coeff", smono_text(e.coeff)}});
        cols.push_back({{"source", basis_name(tc.basis[p][c])}, {"image", std::move(ents)}});
      }
      diffs.push_back(std::move(cols));
    }
    j["differentials"] = std::move(diffs);
    j["d_squared_zero"] = tc.is_complex();
    auto sz = nlohmann::ordered_json::array();
    for (const auto& s : syz)
      sz.push_back({{"i", s.i + 1}, {"j", s.j + 1}, {"ci", smono_text(s.ci)}, {"cj", smono_text(s.cj)}});
    j["syzygies"] = std::move(sz);
    auto pj = nlohmann::ordered_json::array();
    for (const auto& p : pieces)
      pj.push_back({{"degree", p.degree},
                    {"kernel_dim", p.kernel_dim},
                    {"pair_span_dim", p.pair_span_dim},
                    {"kernel_in_span", p.kernel_in_span}});
    j["oracle"] = std::move(pj);
    j["result"] = pass ? "PASS" : "FAIL";
    out << j.dump(2) << "\n";
    return pass ? 0 : 1;
  }
  out << "# seed: " << o.seed << "\n# generators:";
  for (std::size_t i = 0; i < gens.size(); ++i) out << " a" << i + 1 << "=" << smono_text(gens[i]);
  out << "\n";
  for (std::size_t p = 1; p <= gens.size(); ++p) {
    out << "d_" << p << " (rank " << tc.rank(p) << " -> " << tc.rank(p - 1) << "):\n";
    for (std::size_t c = 0; c < tc.rank(p); ++c) {
      out << "  d(" << basis_name(tc.basis[p][c]) << ") =";
      bool first = true;
      for (const auto& e : tc.differentials[p - 1][c]) {
        out << (e.sign < 0 ? " - " : first ? " " : " + ");
        const auto& target = tc.basis[p - 1][e.target];
        if (target.empty())
          out << smono_text(e.coeff);
        else
          out << (e.coeff.is_one() ? "" : smono_text(e.coeff) + " ") << basis_name(target);
        first = false;
      }
      out << "\n";
    }
  }
  out << "d o d = 0: " << (tc.is_complex() ? "yes" : "NO") << "\n";
  out << "pair syzygies:\n";
  for (const auto& s : syz)
    out << "  " << smono_text(s.ci) << " e" << s.i + 1 << " - " << smono_text(s.cj) << " e"
        << s.j + 1 << "\n";
  out << "oracle (degree <= " << bound << "):\n";
  for (const auto& p : pieces)
    if (p.kernel_dim || p.pair_span_dim)
      out << "  degree " << p.degree << ": kernel " << p.kernel_dim << ", pair span "
          << p.pair_span_dim << (p.kernel_in_span ? "  ok" : "  MISMATCH") << "\n";
  out << "taylor: " << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 1;
}

int cmd_oracle(const Options& o, std::ostream& out) {
  auto [spec, pres] = load(o);
  auto caps = caps_of(o);
  auto degrees = oracle_degrees(pres, caps);
  if (!o.compare_families) {
    auto rep = span_compare(chosen_generators(pres, o), pres, degrees, caps, o.jobs);
    rep.seed = o.seed;
    if (parse_format(o.format) == OutputFormat::JSON)
      out << rep.to_json().dump(2) << "\n";
    else
      out << rep.to_text();
    return rep.pass() ? 0 : 1;
  }
  Options full = o, restricted = o;
  full.family = "full";
  restricted.family = "restricted";
  auto fr = compare_families(family_polys(pres, full), family_polys(pres, restricted), pres,
                             degrees, caps, o.jobs);
  const bool pass =
      std::all_of(fr.begin(), fr.end(), [](const FamilyPieceReport& r) { return r.equal(); });
  if (parse_format(o.format) == OutputFormat::JSON) {
    nlohmann::ordered_json j;
    j["spec"] = summarize(spec);
    j["seed"] = o.seed;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : fr)
      arr.push_back({{"t_deg", r.degree.t_deg},
                     {"weight", r.degree.weight},
                     {"kernel_dim", r.kernel_dim},
                     {"rank_full", r.rank_a},
                     {"rank_restricted", r.rank_b},
                     {"rank_union", r.rank_union}});
    j["pieces"] = std::move(arr);
    j["result"] = pass ? "PASS" : "FAIL";
    out << j.dump(2) << "\n";
  } else {
    out << header("#", spec, o);
    for (const auto& r : fr)
      if (r.rank_union || !r.equal())
        out << "  " << r.degree.to_string() << "  ker=" << r.kernel_dim << " full=" << r.rank_a
            << " restricted=" << r.rank_b << " union=" << r.rank_union
            << (r.equal() ? "  ok" : "  MISMATCH") << "\n";
    out << "families: " << (pass ? "PASS" : "FAIL") << "\n";
  }
  return pass ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Defining equations of multi-Rees algebras via binary quasi-minors", "mrees"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("generators", "print E and the generator list");
  add_spec(gen, o);
  add_common(gen, o);

  auto* ver = app.add_subcommand("verify", "phi-vanishing plus the graded kernel oracle");
  add_spec(ver, o);
  add_common(ver, o);
  add_caps(ver, o);
  ver->add_flag("--phi-only", o.phi_only, "skip the kernel oracle");
  ver->add_option("--generators", o.generators_path, "verify this generator list instead");

  auto* gb = app.add_subcommand("groebner", "S'-pair check over a seeded order suite");
  add_spec(gb, o, false);
  gb->get_option("--family")->default_str("full");
  add_common(gb, o);
  gb->add_option("--generic", o.generic, "generic (s | A) with A of size RxC");
  gb->add_option("--perms", o.perms, "shuffled rankings per order kind")->capture_default_str();
  gb->add_option("--truncate", o.truncate, "drop the last N generators");
  gb->add_flag("--standard-order", o.standard_order, "use the variables in universe order only");

  auto* tay = app.add_subcommand("taylor", "Taylor complex of monomials");
  tay->add_option("monomials", o.monomials, "monic monomials, e.g. x^2*y")->required();
  tay->add_option("--vars", o.vars, "comma-separated variable order");
  tay->add_option("--degree-bound", o.degree_bound, "oracle degree bound");
  tay->add_option("--monomial-cap", o.monomial_cap, "sources per piece")->capture_default_str();
  add_common(tay, o);

  auto* orc = app.add_subcommand("oracle", "graded kernel report");
  add_spec(orc, o);
  add_common(orc, o);
  add_caps(orc, o);
  orc->add_option("--generators", o.generators_path, "compare this generator list instead");
  orc->add_flag("--compare-families", o.compare_families, "compare full and restricted spans");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  std::ostringstream buffer;
  try {
    if (o.jobs == 0) throw AlgebraError("--jobs must be positive");
    parse_format(o.format);
    parse_family(o.family);
    parse_order_kind(o.order);
    int code = 0;
    if (gen->parsed())
      code = cmd_generators(o, buffer);
    else if (ver->parsed())
      code = cmd_verify(o, buffer);
    else if (gb->parsed()) {
      // Restricted lists generate the ideal but need not be Groebner bases.
      if (gb->count("--family") == 0) o.family = "full";
      code = cmd_groebner(o, gb->count("--order") > 0, buffer);
    }
    else if (tay->parsed())
      code = cmd_taylor(o, buffer);
    else
      code = cmd_oracle(o, buffer);
    if (o.output.empty()) {
      out << buffer.str();
    } else {
      std::ofstream f(o.output);
      if (!f) throw AlgebraError("cannot write " + o.output);
      f << buffer.str();
    }
    return code;
  } catch (const CapExceeded& e) {
    err << "cap exceeded: " << e.what() << "\n";
    return 3;
  } catch (const AlgebraError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace mrees
