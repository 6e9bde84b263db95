#include "mrees/rees.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mrees {

// ---------------------------------------------------------------------------
// Index tuples

int IndexTuple::at(std::size_t i, int j0) const {
  const std::size_t nn = n();
  if (i == 0) return j0;
  if (i == nn) return a;
  if (i > nn) throw AlgebraError("tuple index out of range");
  return j[nn - 1 - i];
}

static bool monotone(const IndexTuple& t, int j0) {
  for (std::size_t i = 1; i <= t.n(); ++i)
    if (t.at(i - 1, j0) > t.at(i, j0)) return false;
  return true;
}

bool IndexTuple::in_T() const { return a >= 1 && monotone(*this, 0); }
bool IndexTuple::in_T_prime() const { return a >= 1 && monotone(*this, 1); }

std::string IndexTuple::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(j[i]);
  }
  return s;
}

std::vector<IndexTuple> enumerate_T(int a, int n, bool primed) {
  if (a < 1) throw AlgebraError("exponent a must be at least 1");
  if (n < 1) throw AlgebraError("sequence length must be at least 1");
  std::vector<IndexTuple> out;
  std::vector<int> asc(static_cast<std::size_t>(n - 1));  // j_1..j_{n-1}
  auto rec = [&](auto& self, std::size_t i, int lo) -> void {
    if (i == asc.size()) {
      IndexTuple t;
      t.a = a;
      t.j.assign(asc.rbegin(), asc.rend());
      out.push_back(std::move(t));
      return;
    }
    for (int v = lo; v <= a; ++v) {
      asc[i] = v;
      self(self, i + 1, v);
    }
  };
  rec(rec, 0, primed ? 1 : 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

static SMonomial power_with(const IndexTuple& t, int j0) {
  SMonomial m(t.n());
  for (std::size_t i = 1; i <= t.n(); ++i)
    m.exps[i - 1] = static_cast<std::uint32_t>(t.at(i, j0) - t.at(i - 1, j0));
  return m;
}

SMonomial s_power(const IndexTuple& j) {
  if (!j.in_T()) throw AlgebraError("tuple (" + j.to_string() + ") is not in T_a");
  return power_with(j, 0);
}

SMonomial column_base(const IndexTuple& j) {
  if (!j.in_T_prime()) throw AlgebraError("tuple (" + j.to_string() + ") is not in T'_a");
  return power_with(j, 1);
}

IndexTuple shift(const IndexTuple& j, int k) {
  if (!j.in_T_prime()) throw AlgebraError("shift needs a tuple in T'_a");
  const int n = static_cast<int>(j.n());
  if (k < 1 || k > n) throw AlgebraError("shift index out of range");
  IndexTuple r = j;
  for (int i = 1; i < k; ++i) r.j[static_cast<std::size_t>(n - 1 - i)] -= 1;
  return r;
}

// ---------------------------------------------------------------------------
// Specs

void ReesSpec::validate() const {
  const std::size_t n = seq.n;
  if (n < 1) throw AlgebraError("sequence must have at least one element");
  if (seq.names.size() != n) throw AlgebraError("sequence name count mismatch");
  if (seq.mode == SeqMode::CONCRETE) {
    if (coefficients != CoeffDomain::ZZ)
      throw AlgebraError("concrete sequences are taken over ZZ");
    if (seq.concrete_text.size() != n) throw AlgebraError("concrete value count mismatch");
  }
  if (ideals.empty()) throw AlgebraError("at least one ideal is required");
  if (a.size() != ideals.size()) throw AlgebraError("one exponent per ideal is required");
  for (std::size_t l = 0; l < ideals.size(); ++l) {
    if (a[l] < 1)
      throw AlgebraError("exponent a_" + std::to_string(l + 1) + " must be positive");
    if (ideals[l].empty())
      throw AlgebraError("ideal " + std::to_string(l + 1) + " has no generators");
    std::set<int> seen;
    for (int k : ideals[l]) {
      if (k < 1 || k > static_cast<int>(n))
        throw AlgebraError("ideal " + std::to_string(l + 1) + " uses index " +
                           std::to_string(k) + " outside 1.." + std::to_string(n));
      if (!seen.insert(k).second)
        throw AlgebraError("ideal " + std::to_string(l + 1) + " repeats index " +
                           std::to_string(k));
    }
  }
}

static bool support_within(const SMonomial& m, const std::vector<int>& K) {
  for (auto i : m.support())
    if (std::find(K.begin(), K.end(), static_cast<int>(i) + 1) == K.end()) return false;
  return true;
}

bool membership_F(const IndexTuple& j, int l, const ReesSpec& spec) {
  if (l < 1 || l > static_cast<int>(spec.r())) throw AlgebraError("ideal index out of range");
  return support_within(s_power(j), spec.ideals[static_cast<std::size_t>(l - 1)]);
}

std::string T_name(int l, const IndexTuple& j) {
  return "T[" + std::to_string(l) + ";" + j.to_string() + "]";
}

// ---------------------------------------------------------------------------
// Presentation

namespace {

// Local tuple over the sorted index list `dims` lifted to the ambient n.
SMonomial lift(const SMonomial& local, const std::vector<int>& dims, std::size_t n) {
  SMonomial m(n);
  for (std::size_t i = 0; i < dims.size(); ++i)
    m.exps[static_cast<std::size_t>(dims[i] - 1)] = local.exps[i];
  return m;
}

std::vector<int> sorted_dims(const ReesSpec& spec, std::size_t l, bool reduced) {
  if (reduced) {
    auto K = spec.ideals[l];
    std::sort(K.begin(), K.end());
    return K;
  }
  std::vector<int> all;
  for (std::size_t i = 1; i <= spec.seq.n; ++i) all.push_back(static_cast<int>(i));
  return all;
}

}  // namespace

ReesPresentation build_presentation(const ReesSpec& spec, const ReesOptions& opts) {
  spec.validate();
  const std::size_t n = spec.seq.n, r = spec.r();
  const bool concrete = spec.seq.mode == SeqMode::CONCRETE;

  ReesPresentation P;
  P.spec_ = spec;
  P.reduced_ = opts.reduced_indexing;

  std::vector<std::string> t_names, T_names;
  std::vector<TLabel> labels;
  for (std::size_t l = 0; l < r; ++l) t_names.push_back("t" + std::to_string(l + 1));

  // T variables, block by block in tuple order.
  std::vector<std::map<IndexTuple, std::size_t>> index(r);
  for (std::size_t l = 0; l < r; ++l) {
    auto dims = sorted_dims(spec, l, P.reduced_);
    for (auto& j : enumerate_T(spec.a[l], static_cast<int>(dims.size()), false)) {
      TVariable tv;
      tv.l = static_cast<int>(l + 1);
      tv.j = j;
      tv.power = lift(s_power(j), dims, n);
      tv.in_F = support_within(tv.power, spec.ideals[l]);
      index[l][j] = P.T_.size();
      T_names.push_back(T_name(tv.l, j));
      labels.push_back({tv.l, j.j});
      P.T_.push_back(std::move(tv));
    }
  }

  std::vector<std::string> s_names = spec.seq.names;
  std::vector<std::string> x_names = concrete ? spec.seq.x_names : std::vector<std::string>{};
  P.u_ = std::make_shared<const VarUniverse>(concrete ? CoeffDomain::ZZ : spec.coefficients,
                                             s_names, t_names, T_names, x_names, labels);
  const auto& u = P.u_;
  for (std::size_t i = 0; i < P.T_.size(); ++i) P.T_[i].id = u->T(i);

  if (concrete) P.s_values_ = spec.seq.concrete_values(u);

  // phi table.
  P.phi_.assign(u->size(), std::nullopt);
  for (const auto& tv : P.T_) {
    Poly img = Poly::var(u, u->t(static_cast<std::size_t>(tv.l - 1)));
    if (concrete) {
      for (std::size_t i = 0; i < n; ++i)
        for (std::uint32_t e = 0; e < tv.power.exps[i]; ++e) img = img * P.s_values_[i];
    } else {
      img = img * Poly::monomial(u, 1, tv.power.to_mono(*u));
    }
    P.phi_[tv.id] = std::move(img);
  }

  // Blocks.
  int b_total = 0, d_total = 0;
  std::vector<std::vector<IndexTuple>> b_cols(r), d_cols(r);
  for (std::size_t l = 0; l < r; ++l) {
    auto dims = sorted_dims(spec, l, P.reduced_);
    const int m = static_cast<int>(dims.size());
    for (auto& j : enumerate_T(spec.a[l], m, true)) {
      b_cols[l].push_back(j);
      if (support_within(lift(column_base(j), dims, n), spec.ideals[l])) d_cols[l].push_back(j);
    }
    b_total += static_cast<int>(b_cols[l].size());
    d_total += static_cast<int>(d_cols[l].size());
  }

  const int rows = static_cast<int>(n);
  QuasiMatrix B(u, rows, b_total), C(u, rows, b_total + 1), D(u, rows, d_total),
      E(u, rows, d_total + 1);
  for (int k = 0; k < rows; ++k) {
    C.set({k, 0}, u->s(static_cast<std::size_t>(k)));
    E.set({k, 0}, u->s(static_cast<std::size_t>(k)));
  }
  P.E_cols_.push_back({0, {}});
  int bc = 0, dc = 0;
  for (std::size_t l = 0; l < r; ++l) {
    auto dims = sorted_dims(spec, l, P.reduced_);
    const int m = static_cast<int>(dims.size());
    const int L = static_cast<int>(l + 1);
    QuasiMatrix Bl(u, rows, static_cast<int>(b_cols[l].size()));
    QuasiMatrix Dl(u, rows, static_cast<int>(d_cols[l].size()));
    const auto& K = spec.ideals[l];
    for (std::size_t c = 0; c < b_cols[l].size(); ++c, ++bc) {
      const auto& j = b_cols[l][c];
      for (int k = 1; k <= m; ++k) {
        VarId v = P.T_[index[l].at(shift(j, k))].id;
        int row = dims[static_cast<std::size_t>(k - 1)] - 1;
        Bl.set({row, static_cast<int>(c)}, v);
        B.set({row, bc}, v);
        C.set({row, bc + 1}, v);
      }
      P.B_cols_.push_back({L, j});
    }
    for (std::size_t c = 0; c < d_cols[l].size(); ++c, ++dc) {
      const auto& j = d_cols[l][c];
      for (int k = 1; k <= m; ++k) {
        int row = dims[static_cast<std::size_t>(k - 1)] - 1;
        if (std::find(K.begin(), K.end(), row + 1) == K.end()) continue;
        VarId v = P.T_[index[l].at(shift(j, k))].id;
        Dl.set({row, static_cast<int>(c)}, v);
        D.set({row, dc}, v);
        E.set({row, dc + 1}, v);
      }
      P.E_cols_.push_back({L, j});
    }
    if (Dl.entry_count() == 1)
      P.warnings_.push_back("D block " + std::to_string(L) +
                            " has a single entry; it contributes no binary quasi-minor");
    P.B_blocks_.push_back(std::move(Bl));
    P.D_blocks_.push_back(std::move(Dl));
  }
  P.B_ = std::move(B);
  P.C_ = std::move(C);
  P.D_ = std::move(D);
  P.E_ = std::move(E);

  for (const auto& w : spec.seq.lint()) P.warnings_.push_back(w);
  return P;
}

std::vector<VarId> ReesPresentation::S_variables() const {
  std::vector<VarId> v;
  for (const auto& t : T_)
    if (t.in_F) v.push_back(t.id);
  return v;
}

const TVariable& ReesPresentation::T_of(VarId v) const {
  if (u_->block(v) != Block::BigT) throw AlgebraError("not a T variable: " + u_->name(v));
  return T_.at(v - u_->T(0));
}

std::vector<std::string> ReesPresentation::row_labels() const { return spec_.seq.names; }

const Poly& ReesPresentation::phi_image(VarId v) const {
  if (v >= phi_.size() || !phi_[v]) throw AlgebraError("phi is not defined on this variable");
  return *phi_[v];
}

std::optional<std::uint64_t> ReesPresentation::image_weight(VarId v) const {
  const auto& tv = T_of(v);
  if (spec_.seq.mode == SeqMode::GENERIC) return static_cast<std::uint64_t>(tv.power.degree());
  std::uint64_t w = 0;
  for (std::size_t i = 0; i < tv.power.size(); ++i) {
    if (!tv.power.exps[i]) continue;
    const auto& val = s_values_[i];
    const std::uint64_t d = val.terms().front().mono.degree();
    for (const auto& t : val.terms())
      if (t.mono.degree() != d) return std::nullopt;
    w += d * tv.power.exps[i];
  }
  return w;
}

// ---------------------------------------------------------------------------
// Generators

std::string to_string(Family f) { return f == Family::FULL_IBIN ? "full" : "restricted"; }

Family parse_family(std::string_view s) {
  if (s == "full" || s == "FULL_IBIN") return Family::FULL_IBIN;
  if (s == "restricted" || s == "RESTRICTED") return Family::RESTRICTED;
  throw AlgebraError("unknown generator family '" + std::string(s) + "'");
}

std::string to_string(GenKind k) {
  switch (k) {
    case GenKind::S_MINOR: return "s-minor";
    case GenKind::S_QUASI: return "s-quasi-minor";
    case GenKind::D_MINOR: return "D-minor";
    case GenKind::T_QUASI: return "T-quasi-minor";
  }
  return "?";
}

GeneratorSet defining_generators(const ReesPresentation& pres, Family family, int max_size) {
  const auto& E = pres.E();
  const auto& cols = pres.E_columns();
  const int r = static_cast<int>(pres.spec().r());
  int limit = max_size;
  if (family == Family::RESTRICTED) limit = std::min(max_size, std::max(2, r));

  GeneratorSet out;
  std::set<std::pair<std::vector<VarId>, std::vector<VarId>>> seen;
  binary_subquasi_enumerate(E, limit, [&](const BinaryQuasiMatrix& b) {
    bool uses_s = false;
    std::vector<int> per_block(static_cast<std::size_t>(r) + 1, 0);
    for (auto p : b.entries()) {
      if (p.col == 0)
        uses_s = true;
      else
        ++per_block[static_cast<std::size_t>(cols[static_cast<std::size_t>(p.col)].l)];
    }
    const int blocks_used =
        static_cast<int>(std::count_if(per_block.begin() + 1, per_block.end(),
                                       [](int c) { return c > 0; }));
    GenKind kind;
    if (uses_s)
      kind = b.size() == 2 ? GenKind::S_MINOR : GenKind::S_QUASI;
    else
      kind = (b.size() == 2 && blocks_used == 1) ? GenKind::D_MINOR : GenKind::T_QUASI;
    if (family == Family::RESTRICTED) {
      bool keep = kind == GenKind::S_MINOR || kind == GenKind::D_MINOR ||
                  (kind == GenKind::T_QUASI &&
                   std::all_of(per_block.begin(), per_block.end(), [](int c) { return c <= 2; }));
      if (!keep) return true;
    }
    for (auto& bin : quasi_determinants(E, b)) {
      if (!seen.insert({bin.plus, bin.minus}).second) continue;
      Poly p = bin.to_poly(pres.universe());
      out.generators.push_back({std::move(bin), std::move(p), kind});
    }
    return true;
  });
  if (out.generators.empty())
    out.warnings.push_back("E has no binary subquasi-matrix; the generator list is empty");
  return out;
}

Poly phi_apply(const Poly& p, const ReesPresentation& pres) {
  const auto& u = pres.universe();
  if (p.universe() != u) throw AlgebraError("polynomial is not over the presentation's ring");
  const bool concrete = pres.spec().seq.mode == SeqMode::CONCRETE;
  std::vector<std::optional<Poly>> img(u->size());
  for (const auto& t : p.terms())
    for (const auto& [v, e] : t.mono.entries()) {
      if (img[v]) continue;
      switch (u->block(v)) {
        case Block::BigT:
          if (!pres.T_of(v).in_F)
            throw AlgebraError("variable " + u->name(v) + " is not a variable of S");
          img[v] = pres.phi_image(v);
          break;
        case Block::S:
          if (concrete) img[v] = pres.s_values()[v - u->s(0)];
          break;
        default:
          break;
      }
    }
  return p.substitute(img);
}

// ---------------------------------------------------------------------------
// s-binary rewriting

Poly Combination::expand(const UniversePtr& u) const {
  Poly s(u);
  for (const auto& t : terms) s += t.multiplier * t.generator;
  return s;
}

namespace {

Position take(std::vector<Position>& ps, const std::function<bool(Position)>& pred) {
  auto it = std::find_if(ps.begin(), ps.end(), pred);
  if (it == ps.end()) throw AlgebraError("positions do not form an s-binary quasi-minor");
  Position p = *it;
  ps.erase(it);
  return p;
}

void s_binary_rec(const QuasiMatrix& E, std::vector<Position> first,
                  std::vector<Position> second, const Poly& mult, Combination& out) {
  const auto& u = E.universe();
  auto var = [&](Position p) { return Poly::var(u, *E.at(p)); };
  Position si = take(first, [](Position p) { return p.col == 0; });
  Position sj = take(second, [](Position p) { return p.col == 0; });
  Position W1 = take(second, [&](Position p) { return p.row == si.row; });
  Position V1 = take(first, [&](Position p) { return p.col == W1.col; });
  Poly rest = product_of(E, first);
  if (V1.row == sj.row) {
    out.terms.push_back({mult * rest, var(si) * var(V1) - var(sj) * var(W1), GenKind::S_MINOR});
    Poly q = rest - product_of(E, second);
    if (!q.is_zero()) out.terms.push_back({mult * var(sj) * var(W1), q, GenKind::T_QUASI});
    return;
  }
  Position sk{V1.row, 0};
  out.terms.push_back({mult * rest, var(si) * var(V1) - var(sk) * var(W1), GenKind::S_MINOR});
  first.push_back(sk);
  second.push_back(sj);
  s_binary_rec(E, std::move(first), std::move(second), mult * var(W1), out);
}

}  // namespace

Combination s_binary_reduction(const Binomial& delta, const ReesPresentation& pres) {
  const auto& E = pres.E();
  const auto& f = delta.origin.first;
  const auto& s = delta.origin.second;
  std::vector<Position> all = f;
  all.insert(all.end(), s.begin(), s.end());
  if (!BinaryQuasiMatrix::is_binary(all))
    throw AlgebraError("positions do not form a binary quasi-matrix");
  for (auto p : all)
    if (!E.has(p)) throw AlgebraError("position outside E");
  auto s_count = [](const std::vector<Position>& ps) {
    return std::count_if(ps.begin(), ps.end(), [](Position p) { return p.col == 0; });
  };
  if (s_count(f) != 1 || s_count(s) != 1)
    throw AlgebraError("quasi-minor does not involve the s-column");
  Combination out;
  s_binary_rec(E, f, s, Poly::constant(pres.universe(), 1), out);
  return out;
}

// ---------------------------------------------------------------------------
// Squarefreeness

std::string to_string(NormalCM v) { return v == NormalCM::TRUE ? "true" : "indeterminate"; }

namespace {

// Regular sequence of squarefree monomials: monic squarefree monomials
// with pairwise disjoint supports.
bool squarefree_monomial_sequence(const ReesPresentation& pres, std::string& why) {
  if (pres.spec().seq.mode == SeqMode::GENERIC) return true;
  const auto& vals = pres.s_values();
  std::set<VarId> used;
  for (std::size_t i = 0; i < vals.size(); ++i) {
    const auto& v = vals[i];
    if (v.size() != 1 || v.terms().front().coeff != 1 || v.terms().front().mono.is_one() ||
        !v.terms().front().mono.is_squarefree()) {
      why = "s" + std::to_string(i + 1) + " is not a squarefree monomial";
      return false;
    }
    for (const auto& [x, e] : v.terms().front().mono.entries())
      if (!used.insert(x).second) {
        why = "s" + std::to_string(i + 1) + " shares a variable with an earlier element";
        return false;
      }
  }
  return true;
}

std::vector<std::string> offenders(const ReesPresentation& pres, const MonomialOrder& ord,
                                   Family family, std::size_t& count) {
  auto gens = defining_generators(pres, family).generators;
  count = gens.size();
  std::vector<std::string> bad;
  for (const auto& g : gens) {
    Mono lm = leading_monomial(g.poly, ord);
    if (!lm.is_squarefree()) bad.push_back(to_string(lm, *pres.universe()));
  }
  return bad;
}

}  // namespace

SquarefreeReport squarefree_normality_report(const ReesPresentation& pres,
                                             const MonomialOrder& ord, Family family) {
  SquarefreeReport rep;
  rep.order = ord.describe(*pres.universe());
  std::string why;
  rep.hypothesis = squarefree_monomial_sequence(pres, why);
  if (!rep.hypothesis) rep.notes.push_back("hypothesis not met: " + why);

  rep.non_squarefree = offenders(pres, ord, family, rep.generators);
  rep.direct_non_squarefree = rep.non_squarefree.size();
  const auto& a = pres.spec().a;
  const bool higher = std::any_of(a.begin(), a.end(), [](int x) { return x >= 2; });
  if (!rep.non_squarefree.empty() && higher) {
    ReesSpec unit = pres.spec();
    std::fill(unit.a.begin(), unit.a.end(), 1);
    auto up = build_presentation(unit, ReesOptions{pres.reduced_indexing()});
    auto uord = MonomialOrder::standard(*up.universe(), ord.kind());
    std::size_t ucount = 0;
    rep.non_squarefree = offenders(up, uord, family, ucount);
    rep.via_unit_exponents = true;
    rep.notes.push_back(std::to_string(rep.direct_non_squarefree) +
                        " leading monomials are not squarefree under the requested order; "
                        "checked the a = (1,...,1) presentation under " +
                        uord.describe(*up.universe()) +
                        ", whose algebra has the requested one as a direct summand");
  }
  if (rep.hypothesis && rep.non_squarefree.empty()) rep.verdict = NormalCM::TRUE;
  return rep;
}

}  // namespace mrees
