#include "mrees/oracle.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_map>

#include "mrees/parallel.hpp"

namespace mrees {

std::string MultiDegree::to_string() const {
  std::string s = "t(";
  for (std::size_t i = 0; i < t_deg.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(t_deg[i]);
  }
  return s + ") w" + std::to_string(weight);
}

int effective_aux_cap(const ReesSpec& spec, const OracleCaps& caps) {
  if (caps.aux_degree_cap >= 0) return caps.aux_degree_cap;
  int a = *std::max_element(spec.a.begin(), spec.a.end());
  return 3 * a + 2;
}

std::vector<SMonomial> monomials_of_degree(std::size_t n, std::uint64_t d) {
  std::vector<SMonomial> out;
  if (n == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  SMonomial m(n);
  auto rec = [&](auto& self, std::size_t i, std::uint32_t left) -> void {
    if (i + 1 == n) {
      m.exps[i] = left;
      out.push_back(m);
      return;
    }
    for (std::uint32_t e = left + 1; e-- > 0;) {
      m.exps[i] = e;
      self(self, i + 1, left - e);
    }
    m.exps[i] = 0;
  };
  rec(rec, 0, static_cast<std::uint32_t>(d));
  return out;
}

namespace {

std::uint64_t count_monomials(std::size_t n, std::uint64_t d) {
  if (n == 0) return d == 0 ? 1 : 0;
  return binomial(d + n - 1, n - 1);
}

// Grading and phi data of the presentation, read-only once built.
struct Grading {
  const ReesPresentation* pres = nullptr;
  bool concrete = false;
  std::vector<VarId> aux;
  std::vector<std::vector<VarId>> block_vars;  // S variables per ideal
  std::unordered_map<VarId, std::uint64_t> weight;
  std::unordered_map<VarId, Mono> generic_image;  // without t
  std::unordered_map<VarId, Poly> concrete_image;  // without t

  std::size_t r() const { return block_vars.size(); }
};

Grading make_grading(const ReesPresentation& pres) {
  Grading g;
  g.pres = &pres;
  const auto& u = *pres.universe();
  g.concrete = pres.spec().seq.mode == SeqMode::CONCRETE;
  if (g.concrete)
    for (std::size_t i = 0; i < u.n_x(); ++i) g.aux.push_back(u.x(i));
  else
    for (std::size_t i = 0; i < u.n_s(); ++i) g.aux.push_back(u.s(i));
  g.block_vars.resize(pres.spec().r());
  for (VarId v : pres.S_variables()) {
    const auto& tv = pres.T_of(v);
    g.block_vars[static_cast<std::size_t>(tv.l - 1)].push_back(v);
    auto w = pres.image_weight(v);
    if (!w) throw AlgebraError("the oracle needs homogeneous concrete sequence values");
    g.weight[v] = *w;
    if (g.concrete) {
      Poly img = Poly::constant(pres.universe(), 1);
      for (std::size_t i = 0; i < tv.power.size(); ++i)
        for (std::uint32_t e = 0; e < tv.power.exps[i]; ++e) img = img * pres.s_values()[i];
      g.concrete_image.emplace(v, std::move(img));
    } else {
      g.generic_image.emplace(v, tv.power.to_mono(u));
    }
  }
  return g;
}

struct TMono {
  Mono mono;
  std::uint64_t weight;
};

void t_monomials(const std::vector<VarId>& vars, const Grading& g, int deg,
                 std::vector<TMono>& out) {
  std::vector<Mono::Entry> cur;
  auto rec = [&](auto& self, std::size_t start, int left, std::uint64_t w) -> void {
    if (left == 0) {
      out.push_back({Mono(cur), w});
      return;
    }
    for (std::size_t i = start; i < vars.size(); ++i) {
      for (int e = left; e >= 1; --e) {
        cur.push_back({vars[i], static_cast<std::uint32_t>(e)});
        self(self, i + 1, left - e, w + g.weight.at(vars[i]) * static_cast<std::uint64_t>(e));
        cur.pop_back();
      }
    }
  };
  rec(rec, 0, deg, 0);
}

std::vector<Mono> aux_monomials(const Grading& g, std::uint64_t e) {
  std::vector<Mono> out;
  for (const auto& sm : monomials_of_degree(g.aux.size(), e)) {
    std::vector<Mono::Entry> es;
    for (std::size_t i = 0; i < sm.size(); ++i)
      if (sm.exps[i]) es.push_back({g.aux[i], sm.exps[i]});
    out.emplace_back(std::move(es));
  }
  return out;
}

std::vector<Mono> piece_sources(const Grading& g, const MultiDegree& d, std::size_t cap) {
  if (d.t_deg.size() != g.r()) throw AlgebraError("multidegree length differs from r");
  std::vector<TMono> combos{{Mono(), 0}};
  for (std::size_t l = 0; l < g.r(); ++l) {
    if (d.t_deg[l] < 0) return {};
    std::vector<TMono> block;
    t_monomials(g.block_vars[l], g, d.t_deg[l], block);
    std::vector<TMono> next;
    for (const auto& a : combos)
      for (const auto& b : block)
        if (a.weight + b.weight <= d.weight) next.push_back({a.mono * b.mono, a.weight + b.weight});
    combos = std::move(next);
    if (combos.size() > cap)
      throw CapExceeded("piece " + d.to_string() + " exceeds the monomial cap");
  }
  std::uint64_t count = 0;
  for (const auto& c : combos) count += count_monomials(g.aux.size(), d.weight - c.weight);
  if (count > cap)
    throw CapExceeded("piece " + d.to_string() + " has " + std::to_string(count) +
                      " monomials, above the cap of " + std::to_string(cap));
  std::map<std::uint64_t, std::vector<Mono>> aux_cache;
  std::vector<Mono> out;
  out.reserve(count);
  for (const auto& c : combos) {
    auto e = d.weight - c.weight;
    auto it = aux_cache.find(e);
    if (it == aux_cache.end()) it = aux_cache.emplace(e, aux_monomials(g, e)).first;
    for (const auto& a : it->second) out.push_back(a * c.mono);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Image columns of the piece's sources over a shared coordinate index.
std::vector<ZVec> image_columns(const Grading& g, const std::vector<Mono>& sources) {
  const auto& u = g.pres->universe();
  std::unordered_map<Mono, std::size_t, MonoHash> coord;
  auto index = [&](const Mono& m) {
    return coord.emplace(m, coord.size()).first->second;
  };
  std::vector<ZVec> cols;
  cols.reserve(sources.size());
  for (const auto& src : sources) {
    if (!g.concrete) {
      Mono img;
      for (const auto& [v, e] : src.entries()) {
        auto it = g.generic_image.find(v);
        if (it == g.generic_image.end()) {
          img = img * Mono::var(v, e);
        } else {
          for (std::uint32_t k = 0; k < e; ++k) img = img * it->second;
        }
      }
      cols.push_back({{index(img), mpz_class(1)}});
      continue;
    }
    Poly img = Poly::constant(u, 1);
    std::vector<Mono::Entry> aux_part;
    for (const auto& [v, e] : src.entries()) {
      auto it = g.concrete_image.find(v);
      if (it == g.concrete_image.end()) {
        aux_part.push_back({v, e});
      } else {
        for (std::uint32_t k = 0; k < e; ++k) img = img * it->second;
      }
    }
    img = img.scaled(1, Mono(aux_part));
    std::vector<std::pair<std::size_t, mpz_class>> col;
    for (const auto& t : img.terms()) {
      if (t.coeff.get_den() != 1) throw AlgebraError("non-integral phi image");
      col.emplace_back(index(t.mono), t.coeff.get_num());
    }
    cols.push_back(make_zvec(std::move(col)));
  }
  return cols;
}

struct PreparedGen {
  std::size_t index;  // position in the caller's list
  std::vector<std::pair<Mono, mpz_class>> terms;
  MultiDegree degree;
};

std::vector<PreparedGen> prepare(const std::vector<Poly>& gens, const Grading& g) {
  const auto& pres = *g.pres;
  const auto& u = *pres.universe();
  std::vector<std::optional<Poly>> subst(u.size());
  if (g.concrete)
    for (std::size_t i = 0; i < u.n_s(); ++i) subst[u.s(i)] = pres.s_values()[i];
  std::vector<PreparedGen> out;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    if (gens[k].universe() != pres.universe())
      throw AlgebraError("generator is not over the presentation's ring");
    Poly p = g.concrete ? gens[k].substitute(subst) : gens[k];
    if (p.is_zero()) continue;
    PreparedGen pg;
    pg.index = k;
    mpz_class den = 1;
    for (const auto& t : p.terms()) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
    bool first = true;
    for (const auto& t : p.terms()) {
      MultiDegree md;
      md.t_deg.assign(g.r(), 0);
      for (const auto& [v, e] : t.mono.entries()) {
        auto w = g.weight.find(v);
        if (w != g.weight.end()) {
          md.t_deg[static_cast<std::size_t>(pres.T_of(v).l - 1)] += static_cast<int>(e);
          md.weight += w->second * e;
        } else if (std::find(g.aux.begin(), g.aux.end(), v) != g.aux.end()) {
          md.weight += e;
        } else {
          throw AlgebraError("generator uses " + u.name(v) + ", which is not a variable of S");
        }
      }
      if (first)
        pg.degree = md;
      else if (!(md == pg.degree))
        throw AlgebraError("generator " + std::to_string(k + 1) +
                           " is not homogeneous for the oracle grading");
      first = false;
      mpq_class c = t.coeff * den;
      pg.terms.emplace_back(t.mono, c.get_num());
    }
    out.push_back(std::move(pg));
  }
  return out;
}

struct BuiltPiece {
  std::vector<Mono> sources;
  LinearPiece linear;
  std::vector<std::pair<std::size_t, Mono>> origin;  // (generator, multiplier) per span vector
};

BuiltPiece build_piece(const Grading& g, const MultiDegree& d, const std::vector<PreparedGen>& gens,
                       std::size_t cap) {
  BuiltPiece bp;
  bp.sources = piece_sources(g, d, cap);
  bp.linear.n_sources = bp.sources.size();
  bp.linear.columns = image_columns(g, bp.sources);
  std::unordered_map<Mono, std::size_t, MonoHash> index;
  for (std::size_t i = 0; i < bp.sources.size(); ++i) index.emplace(bp.sources[i], i);
  std::map<MultiDegree, std::vector<Mono>> mult_cache;
  for (const auto& pg : gens) {
    MultiDegree rest;
    rest.t_deg.resize(g.r());
    bool fits = pg.degree.weight <= d.weight;
    for (std::size_t l = 0; l < g.r() && fits; ++l) {
      rest.t_deg[l] = d.t_deg[l] - pg.degree.t_deg[l];
      fits = rest.t_deg[l] >= 0;
    }
    if (!fits) continue;
    rest.weight = d.weight - pg.degree.weight;
    auto it = mult_cache.find(rest);
    if (it == mult_cache.end()) it = mult_cache.emplace(rest, piece_sources(g, rest, cap)).first;
    for (const auto& m : it->second) {
      std::vector<std::pair<std::size_t, mpz_class>> v;
      for (const auto& [mono, c] : pg.terms) {
        auto at = index.find(m * mono);
        if (at == index.end()) throw AlgebraError("multiple escapes its graded piece");
        v.emplace_back(at->second, c);
      }
      ZVec z = make_zvec(std::move(v));
      if (z.empty()) continue;
      bp.linear.span_vectors.push_back(std::move(z));
      bp.origin.emplace_back(pg.index, m);
    }
  }
  return bp;
}

Poly vector_poly(const ZVec& v, const std::vector<Mono>& sources, const UniversePtr& u) {
  std::vector<Term> ts;
  for (const auto& [i, c] : v) ts.push_back({sources[i], Rational(c)});
  return Poly(u, std::move(ts));
}

void enumerate_t_degrees(std::size_t r, int cap, std::vector<std::vector<int>>& out) {
  std::vector<int> cur(r, 0);
  for (int total = 0; total <= cap; ++total) {
    auto rec = [&](auto& self, std::size_t i, int left) -> void {
      if (i + 1 == r) {
        cur[i] = left;
        out.push_back(cur);
        return;
      }
      for (int e = left; e >= 0; --e) {
        cur[i] = e;
        self(self, i + 1, left - e);
      }
    };
    rec(rec, 0, total);
  }
}

}  // namespace

std::vector<MultiDegree> oracle_degrees(const ReesPresentation& pres, const OracleCaps& caps) {
  Grading g = make_grading(pres);
  const int aux = effective_aux_cap(pres.spec(), caps);
  std::vector<std::vector<int>> tdegs;
  enumerate_t_degrees(g.r(), caps.t_degree_cap, tdegs);
  std::vector<MultiDegree> out;
  for (const auto& d : tdegs) {
    std::uint64_t min_w = 0;
    bool possible = true;
    for (std::size_t l = 0; l < g.r(); ++l) {
      if (d[l] == 0) continue;
      if (g.block_vars[l].empty()) {
        possible = false;
        break;
      }
      std::uint64_t m = UINT64_MAX;
      for (VarId v : g.block_vars[l]) m = std::min(m, g.weight.at(v));
      min_w += m * static_cast<std::uint64_t>(d[l]);
    }
    if (!possible) continue;
    for (int e = 0; e <= aux; ++e) out.push_back({d, min_w + static_cast<std::uint64_t>(e)});
  }
  return out;
}

KernelPiece kernel_piece(const ReesPresentation& pres, const MultiDegree& d,
                         const OracleCaps& caps) {
  Grading g = make_grading(pres);
  KernelPiece kp;
  kp.degree = d;
  kp.sources = piece_sources(g, d, caps.monomial_cap);
  LinearPiece lp;
  lp.n_sources = kp.sources.size();
  lp.columns = image_columns(g, kp.sources);
  for (const auto& v : kernel_basis(lp)) kp.basis.push_back(vector_poly(v, kp.sources, pres.universe()));
  kp.dimension = kp.basis.size();
  return kp;
}

std::string summarize(const ReesSpec& spec) {
  std::ostringstream os;
  os << (spec.seq.mode == SeqMode::GENERIC ? "generic" : "concrete") << " n=" << spec.seq.n
     << " r=" << spec.r() << " ideals=";
  for (std::size_t l = 0; l < spec.r(); ++l) {
    os << (l ? "," : "") << "{";
    for (std::size_t i = 0; i < spec.ideals[l].size(); ++i)
      os << (i ? "," : "") << spec.ideals[l][i];
    os << "}";
  }
  os << " a=(";
  for (std::size_t l = 0; l < spec.a.size(); ++l) os << (l ? "," : "") << spec.a[l];
  os << ")";
  return os.str();
}

GradedKernelReport span_compare(const std::vector<Poly>& gens, const ReesPresentation& pres,
                                const std::vector<MultiDegree>& degrees,
                                const OracleCaps& caps, unsigned jobs) {
  Grading g = make_grading(pres);
  auto prepared = prepare(gens, g);
  GradedKernelReport rep;
  rep.spec_summary = summarize(pres.spec());
  rep.generators = gens.size();
  rep.caps = caps;
  rep.caps.aux_degree_cap = effective_aux_cap(pres.spec(), caps);
  if (g.concrete && pres.spec().coefficients == CoeffDomain::ZZ)
    rep.notes.push_back("ZZ coefficients embedded in QQ: kernels and spans are compared over QQ");
  rep.pieces.resize(degrees.size());
  const auto& u = pres.universe();
  parallel_for(degrees.size(), jobs, [&](std::size_t k) {
    auto bp = build_piece(g, degrees[k], prepared, caps.monomial_cap);
    auto an = analyze_piece(bp.linear, 1);
    PieceReport& pr = rep.pieces[k];
    pr.degree = degrees[k];
    pr.sources = bp.sources.size();
    pr.kernel_dim = an.kernel_dim;
    pr.span_dim = an.span_rank;
    pr.span_in_kernel = an.outside_kernel.empty();
    pr.kernel_in_span = an.kernel_in_span();
    if (!an.outside_kernel.empty()) {
      auto [gi, m] = bp.origin[an.outside_kernel.front()];
      pr.witnesses.push_back("generator " + std::to_string(gi + 1) + " times " +
                             to_string(m, *u) + " does not vanish under phi");
      pr.witness_polys.push_back(
          vector_poly(bp.linear.span_vectors[an.outside_kernel.front()], bp.sources, u));
    }
    for (const auto& v : an.missing) {
      pr.witness_polys.push_back(vector_poly(v, bp.sources, u));
      pr.witnesses.push_back("kernel element outside the span: " + to_string(pr.witness_polys.back()));
    }
  });
  return rep;
}

bool GradedKernelReport::pass() const {
  return std::all_of(pieces.begin(), pieces.end(), [](const PieceReport& p) { return p.equal(); });
}

nlohmann::ordered_json GradedKernelReport::to_json() const {
  nlohmann::ordered_json j;
  j["spec"] = spec_summary;
  j["seed"] = seed;
  j["generators"] = generators;
  j["caps"] = {{"monomial_cap", caps.monomial_cap},
               {"t_degree_cap", caps.t_degree_cap},
               {"aux_degree_cap", caps.aux_degree_cap}};
  j["result"] = pass() ? "PASS" : "FAIL";
  j["notes"] = notes;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& p : pieces) {
    nlohmann::ordered_json e;
    e["t_deg"] = p.degree.t_deg;
    e["weight"] = p.degree.weight;
    e["sources"] = p.sources;
    e["kernel_dim"] = p.kernel_dim;
    e["span_dim"] = p.span_dim;
    e["span_in_kernel"] = p.span_in_kernel;
    e["kernel_in_span"] = p.kernel_in_span;
    e["witnesses"] = p.witnesses;
    arr.push_back(std::move(e));
  }
  j["pieces"] = std::move(arr);
  return j;
}

std::string GradedKernelReport::to_text() const {
  std::ostringstream os;
  os << "spec: " << spec_summary << "\nseed: " << seed << "\ngenerators: " << generators
     << "\ncaps: monomials<=" << caps.monomial_cap << " t-degree<=" << caps.t_degree_cap
     << " aux-degree<=" << caps.aux_degree_cap << "\n";
  for (const auto& n : notes) os << "note: " << n << "\n";
  std::size_t nonzero = 0;
  for (const auto& p : pieces) {
    if (p.kernel_dim == 0 && p.span_dim == 0 && p.equal()) continue;
    ++nonzero;
    os << "  " << p.degree.to_string() << "  sources=" << p.sources << " ker=" << p.kernel_dim
       << " span=" << p.span_dim << (p.equal() ? "  ok" : "  MISMATCH") << "\n";
    for (const auto& w : p.witnesses) os << "    witness: " << w << "\n";
  }
  os << "pieces: " << pieces.size() << " (" << nonzero << " with nonzero kernel or span)\n";
  os << "result: " << (pass() ? "PASS" : "FAIL") << "\n";
  return os.str();
}

std::vector<FamilyPieceReport> compare_families(const std::vector<Poly>& a,
                                                const std::vector<Poly>& b,
                                                const ReesPresentation& pres,
                                                const std::vector<MultiDegree>& degrees,
                                                const OracleCaps& caps, unsigned jobs) {
  Grading g = make_grading(pres);
  auto pa = prepare(a, g), pb = prepare(b, g);
  std::vector<FamilyPieceReport> out(degrees.size());
  parallel_for(degrees.size(), jobs, [&](std::size_t k) {
    auto ba = build_piece(g, degrees[k], pa, caps.monomial_cap);
    auto bb = build_piece(g, degrees[k], pb, caps.monomial_cap);
    auto aa = analyze_piece(ba.linear, 0), ab = analyze_piece(bb.linear, 0);
    auto& r = out[k];
    r.degree = degrees[k];
    r.kernel_dim = aa.kernel_dim;
    r.rank_a = aa.span_rank;
    r.rank_b = ab.span_rank;
    const bool clean = aa.outside_kernel.empty() && ab.outside_kernel.empty();
    if (clean && r.rank_a == r.kernel_dim && r.rank_b == r.kernel_dim) {
      r.rank_union = r.kernel_dim;
      return;
    }
    LinearPiece both = ba.linear;
    for (auto& v : bb.linear.span_vectors) both.span_vectors.push_back(v);
    r.rank_union = analyze_piece(both, 0).span_rank;
  });
  return out;
}

std::vector<SyzygyPiece> monomial_syzygy_kernel(const std::vector<SMonomial>& gens,
                                                std::uint64_t degree_bound,
                                                std::size_t monomial_cap) {
  if (gens.empty()) throw AlgebraError("syzygies need at least one generator");
  const std::size_t n = gens.front().size();
  for (const auto& g : gens)
    if (g.size() != n) throw AlgebraError("s-monomial length mismatch");
  std::vector<SyzygyPiece> out;
  for (std::uint64_t D = 0; D <= degree_bound; ++D) {
    SyzygyPiece sp;
    sp.degree = D;
    std::vector<std::pair<std::size_t, SMonomial>> sources;
    std::uint64_t count = 0;
    for (const auto& g : gens)
      if (g.degree() <= D) count += count_monomials(n, D - g.degree());
    if (count > monomial_cap)
      throw CapExceeded("syzygy degree " + std::to_string(D) + " exceeds the monomial cap");
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (gens[i].degree() <= D)
        for (auto& m : monomials_of_degree(n, D - gens[i].degree())) sources.emplace_back(i, m);
    std::map<std::pair<std::size_t, SMonomial>, std::size_t> index;
    for (std::size_t k = 0; k < sources.size(); ++k) index.emplace(sources[k], k);

    LinearPiece lp;
    lp.n_sources = sources.size();
    std::map<SMonomial, std::size_t> coord;
    for (const auto& [i, m] : sources) {
      auto c = coord.emplace(m * gens[i], coord.size()).first->second;
      lp.columns.push_back({{c, mpz_class(1)}});
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j) {
        SMonomial l = s_lcm(gens[i], gens[j]);
        if (l.degree() > D) continue;
        SMonomial ci = gens[i].quotient_of(l), cj = gens[j].quotient_of(l);
        for (const auto& m : monomials_of_degree(n, D - l.degree()))
          lp.span_vectors.push_back(make_zvec({{index.at({i, m * ci}), mpz_class(1)},
                                               {index.at({j, m * cj}), mpz_class(-1)}}));
      }
    auto an = analyze_piece(lp, 1, true);
    sp.sources = sources.size();
    sp.kernel_dim = an.kernel_dim;
    sp.pair_span_dim = an.span_rank;
    sp.kernel_in_span = an.outside_kernel.empty() && an.kernel_in_span();
    for (const auto& v : kernel_basis(lp)) {
      SyzygyVector sv;
      for (const auto& [k, c] : v) sv.push_back({sources[k].first, sources[k].second, c});
      sp.basis.push_back(std::move(sv));
    }
    out.push_back(std::move(sp));
  }
  return out;
}

}  // namespace mrees
