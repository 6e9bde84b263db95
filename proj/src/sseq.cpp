#include "mrees/sseq.hpp"

#include <algorithm>
#include <map>

namespace mrees {

std::uint64_t SMonomial::degree() const {
  std::uint64_t d = 0;
  for (auto e : exps) d += e;
  return d;
}

bool SMonomial::is_one() const {
  return std::all_of(exps.begin(), exps.end(), [](auto e) { return e == 0; });
}

static void check_len(const SMonomial& a, const SMonomial& b) {
  if (a.size() != b.size())
    throw AlgebraError("s-monomial length mismatch");
}

bool SMonomial::divides(const SMonomial& o) const {
  check_len(*this, o);
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i] > o.exps[i]) return false;
  return true;
}

SMonomial SMonomial::operator*(const SMonomial& o) const {
  check_len(*this, o);
  SMonomial r(*this);
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] += o.exps[i];
  return r;
}

SMonomial SMonomial::quotient_of(const SMonomial& o) const {
  if (!divides(o)) throw AlgebraError("s-monomial quotient is not exact");
  SMonomial r(o);
  for (std::size_t i = 0; i < exps.size(); ++i) r.exps[i] -= exps[i];
  return r;
}

std::vector<std::size_t> SMonomial::support() const {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i]) s.push_back(i);
  return s;
}

Mono SMonomial::to_mono(const VarUniverse& u) const {
  if (exps.size() > u.n_s()) throw AlgebraError("universe lacks s-symbols");
  std::vector<Mono::Entry> es;
  for (std::size_t i = 0; i < exps.size(); ++i)
    if (exps[i]) es.push_back({u.s(i), exps[i]});
  return Mono(std::move(es));
}

std::string SMonomial::to_string(const std::vector<std::string>& names) const {
  std::string s;
  for (std::size_t i = 0; i < exps.size(); ++i) {
    if (!exps[i]) continue;
    if (!s.empty()) s += '*';
    s += i < names.size() ? names[i] : "s" + std::to_string(i + 1);
    if (exps[i] != 1) s += '^' + std::to_string(exps[i]);
  }
  return s.empty() ? "1" : s;
}

SMonomial s_lcm(const SMonomial& a, const SMonomial& b) {
  check_len(a, b);
  SMonomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r.exps[i] = std::max(a.exps[i], b.exps[i]);
  return r;
}

SMonomial s_gcd(const SMonomial& a, const SMonomial& b) {
  check_len(a, b);
  SMonomial r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    r.exps[i] = std::min(a.exps[i], b.exps[i]);
  return r;
}

// ---------------------------------------------------------------------------

SeqSpec SeqSpec::generic(std::size_t n, std::vector<std::string> names) {
  SeqSpec s;
  s.n = n;
  s.mode = SeqMode::GENERIC;
  if (names.empty())
    for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i + 1));
  if (names.size() != n) throw AlgebraError("sequence name count mismatch");
  s.names = std::move(names);
  return s;
}

SeqSpec SeqSpec::concrete(std::vector<std::string> values,
                          std::vector<std::string> x_names) {
  SeqSpec s;
  s.n = values.size();
  s.mode = SeqMode::CONCRETE;
  for (std::size_t i = 0; i < s.n; ++i) s.names.push_back("s" + std::to_string(i + 1));
  s.concrete_text = std::move(values);
  s.x_names = std::move(x_names);
  return s;
}

std::vector<Poly> SeqSpec::concrete_values(const UniversePtr& u) const {
  std::vector<Poly> out;
  for (const auto& txt : concrete_text) {
    Poly p = parse_poly(txt, u);
    if (!p.has_only_blocks({Block::X}))
      throw AlgebraError("concrete value '" + txt + "' uses non-ambient symbols");
    if (p.is_zero()) throw AlgebraError("concrete sequence element is zero");
    if (p == Poly::constant(u, 1) || p == Poly::constant(u, -1))
      throw AlgebraError("concrete sequence element '" + txt + "' is a unit");
    for (const auto& t : p.terms())
      if (mpz_cmp_ui(t.coeff.get_den_mpz_t(), 1) != 0)
        throw AlgebraError("concrete value '" + txt + "' is not integral");
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<std::string> SeqSpec::lint() const {
  std::vector<std::string> w;
  if (mode != SeqMode::CONCRETE) return w;
  auto u = std::make_shared<const VarUniverse>(
      CoeffDomain::ZZ, std::vector<std::string>{}, std::vector<std::string>{},
      std::vector<std::string>{}, x_names);
  auto vals = concrete_values(u);
  for (std::size_t i = 0; i < vals.size(); ++i)
    for (std::size_t j = i + 1; j < vals.size(); ++j)
      if (vals[i] == vals[j] || vals[i] == -vals[j])
        w.push_back("s" + std::to_string(i + 1) + " and s" + std::to_string(j + 1) +
                    " are associates; the sequence cannot be weak regular");
  return w;
}

// ---------------------------------------------------------------------------
// Taylor complex

namespace {

SMonomial lcm_of(const std::vector<SMonomial>& gens,
                 const std::vector<std::size_t>& idx, std::size_t n) {
  SMonomial u(n);
  for (auto i : idx) u = s_lcm(u, gens[i]);
  return u;
}

void subsets_of_size(std::size_t m, std::size_t p,
                     std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::size_t> cur;
  auto rec = [&](auto& self, std::size_t start) -> void {
    if (cur.size() == p) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
}

}  // namespace

TaylorComplex taylor_complex(const std::vector<SMonomial>& gens) {
  const std::size_t m = gens.size();
  if (m == 0) throw AlgebraError("Taylor complex needs at least one generator");
  if (m > kTaylorMaxGenerators)
    throw CapExceeded("Taylor complex limited to " +
                      std::to_string(kTaylorMaxGenerators) + " generators");
  const std::size_t n = gens.front().size();
  for (const auto& g : gens)
    if (g.size() != n) throw AlgebraError("s-monomial length mismatch");

  TaylorComplex tc;
  tc.generators = gens;
  tc.basis.resize(m + 1);
  for (std::size_t p = 0; p <= m; ++p) subsets_of_size(m, p, tc.basis[p]);

  for (std::size_t p = 1; p <= m; ++p) {
    std::map<std::vector<std::size_t>, std::size_t> lower;
    for (std::size_t k = 0; k < tc.basis[p - 1].size(); ++k)
      lower[tc.basis[p - 1][k]] = k;
    std::vector<std::vector<TaylorComplex::Entry>> dp;
    for (const auto& sigma : tc.basis[p]) {
      SMonomial u = lcm_of(gens, sigma, n);
      std::vector<TaylorComplex::Entry> col;
      for (std::size_t r = 0; r < p; ++r) {
        std::vector<std::size_t> face = sigma;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(r));
        SMonomial uf = lcm_of(gens, face, n);
        col.push_back({lower.at(face), (r % 2 == 0) ? 1 : -1, uf.quotient_of(u)});
      }
      dp.push_back(std::move(col));
    }
    tc.differentials.push_back(std::move(dp));
  }
  return tc;
}

bool TaylorComplex::composition_vanishes(std::size_t p) const {
  if (p < 2 || p > differentials.size()) return true;
  const auto& dp = differentials[p - 1];
  const auto& dq = differentials[p - 2];
  for (const auto& col : dp) {
    std::map<std::pair<std::size_t, SMonomial>, long long> acc;
    for (const auto& e : col)
      for (const auto& f : dq[e.target])
        acc[{f.target, e.coeff * f.coeff}] += e.sign * f.sign;
    for (const auto& [k, v] : acc)
      if (v != 0) return false;
  }
  return true;
}

bool TaylorComplex::is_complex() const {
  for (std::size_t p = 2; p <= differentials.size(); ++p)
    if (!composition_vanishes(p)) return false;
  return true;
}

std::vector<PairSyzygy> syzygy_generators(const std::vector<SMonomial>& gens) {
  if (gens.empty()) throw AlgebraError("syzygies need at least one generator");
  std::vector<PairSyzygy> out;
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) {
      SMonomial l = s_lcm(gens[i], gens[j]);
      out.push_back({i, j, gens[i].quotient_of(l), gens[j].quotient_of(l)});
    }
  return out;
}

namespace {

long long binom(long long n, long long k) {
  if (k < 0 || n < k) return 0;
  long long r = 1;
  for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

long long taylor_hilbert_sum(const TaylorComplex& tc, std::size_t n_vars,
                             std::uint64_t degree) {
  const long long k = static_cast<long long>(n_vars);
  auto hf = [&](long long d) { return d < 0 ? 0 : binom(d + k - 1, k - 1); };
  const std::size_t n = tc.generators.front().size();
  long long total = 0;
  for (std::size_t p = 0; p < tc.basis.size(); ++p) {
    long long sign = (p % 2 == 0) ? 1 : -1;
    for (const auto& sigma : tc.basis[p]) {
      auto u = lcm_of(tc.generators, sigma, n);
      total += sign * hf(static_cast<long long>(degree) -
                         static_cast<long long>(u.degree()));
    }
  }
  return total;
}

}  // namespace mrees
