#include "mrees/grobner.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "mrees/parallel.hpp"

namespace mrees {

namespace {

struct LeadInfo {
  Mono lm;
  Rational unit;
  Mono smono;
};

LeadInfo lead_info(const Poly& p, const MonomialOrder& ord) {
  if (p.is_zero()) throw AlgebraError("zero polynomial has no leading term");
  Leading l = leading(p, ord);
  auto st = as_s_term(l.lc);
  if (!st || !is_unit(p.universe()->domain(), st->unit))
    throw AlgebraError("polynomial is not of s-monomial type: " + to_string(p, ord));
  return {l.lm, st->unit, st->smono};
}

}  // namespace

std::string to_string(ReductionStatus s) {
  return s == ReductionStatus::REDUCED_TO_ZERO ? "REDUCED_TO_ZERO" : "INCONCLUSIVE";
}

SPrime s_prime_with_cofactors(const Poly& f, const Poly& g,
                              const MonomialOrder& ord) {
  auto lf = lead_info(f, ord);
  auto lg = lead_info(g, ord);
  const auto& u = f.universe();
  Mono L = lf.lm.lcm(lg.lm);
  Mono lam = lf.smono.lcm(lg.smono);
  Poly mf = Poly::monomial(u, Rational(1) / lf.unit,
                           lf.smono.quotient_of(lam) * lf.lm.quotient_of(L));
  Poly mg = Poly::monomial(u, Rational(1) / lg.unit,
                           lg.smono.quotient_of(lam) * lg.lm.quotient_of(L));
  Poly v = mf * f - mg * g;
  return {std::move(v), std::move(mf), std::move(mg)};
}

Poly s_prime_poly(const Poly& f, const Poly& g, const MonomialOrder& ord) {
  return s_prime_with_cofactors(f, g, ord).value;
}

SPolyFraction s_poly(const Poly& f, const Poly& g, const MonomialOrder& ord) {
  auto lf = lead_info(f, ord);
  auto lg = lead_info(g, ord);
  return {s_prime_poly(f, g, ord), lf.smono.lcm(lg.smono)};
}

ReductionCert reduce(const Poly& f, const std::vector<Poly>& G,
                     const MonomialOrder& ord, ReductionStrategy strategy,
                     std::size_t max_steps) {
  const auto& u = f.universe();
  std::vector<LeadInfo> info;
  info.reserve(G.size());
  for (const auto& g : G) info.push_back(lead_info(g, ord));

  ReductionCert cert{std::vector<Poly>(G.size(), Poly(u)), f,
                     ReductionStatus::REDUCED_TO_ZERO, 0};
  Poly& h = cert.residual;
  while (!h.is_zero()) {
    if (cert.steps >= max_steps)
      throw CapExceeded("reduction exceeded " + std::to_string(max_steps) + " steps");
    Leading l = leading(h, ord);
    const Term& t = l.lc.terms().front();
    std::optional<std::size_t> pick;
    for (std::size_t k = 0; k < G.size(); ++k) {
      if (!info[k].lm.divides(l.lm) || !info[k].smono.divides(t.mono)) continue;
      if (strategy == ReductionStrategy::FIRST_MATCH) {
        pick = k;
        break;
      }
      if (!pick || ord.less(info[k].lm, info[*pick].lm)) pick = k;
    }
    if (!pick) {
      cert.status = ReductionStatus::INCONCLUSIVE;
      return cert;
    }
    const auto& gi = info[*pick];
    Rational q = t.coeff / gi.unit;
    Mono m = gi.smono.quotient_of(t.mono) * gi.lm.quotient_of(l.lm);
    h -= G[*pick].scaled(q, m);
    cert.multipliers[*pick] += Poly::monomial(u, q, m);
    ++cert.steps;
  }
  return cert;
}

bool verify_certificate(const Poly& f, const std::vector<Poly>& G,
                        const ReductionCert& cert, const MonomialOrder& ord) {
  if (cert.multipliers.size() != G.size()) return false;
  Poly sum = cert.residual;
  for (std::size_t k = 0; k < G.size(); ++k) sum += cert.multipliers[k] * G[k];
  if (!(sum == f)) return false;
  if (cert.status != ReductionStatus::REDUCED_TO_ZERO) return true;
  if (!cert.residual.is_zero()) return false;
  if (f.is_zero()) {
    return std::all_of(cert.multipliers.begin(), cert.multipliers.end(),
                       [](const Poly& p) { return p.is_zero(); });
  }
  Mono lf = leading_monomial(f, ord);
  for (std::size_t k = 0; k < G.size(); ++k) {
    if (cert.multipliers[k].is_zero()) continue;
    Mono b = leading_monomial(cert.multipliers[k], ord) * leading_monomial(G[k], ord);
    if (ord.less(lf, b)) return false;
  }
  return true;
}

BuchbergerReport buchberger_check(const std::vector<Poly>& G,
                                  const MonomialOrder& ord,
                                  ReductionStrategy strategy, unsigned jobs) {
  for (const auto& g : G) lead_info(g, ord);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = i + 1; j < G.size(); ++j) pairs.emplace_back(i, j);

  std::vector<PairOutcome> out(pairs.size());
  parallel_for(pairs.size(), jobs, [&](std::size_t k) {
    auto [i, j] = pairs[k];
    Poly sp = s_prime_poly(G[i], G[j], ord);
    auto cert = reduce(sp, G, ord, strategy);
    out[k] = {i, j, cert.status, cert.steps};
  });

  BuchbergerReport rep;
  rep.order = ord.describe(*G.front().universe());
  rep.pairs = pairs.size();
  for (const auto& o : out)
    if (o.status == ReductionStatus::INCONCLUSIVE) rep.inconclusive.push_back(o);
  return rep;
}

std::vector<MonomialOrder> order_suite(const std::vector<VarId>& vars,
                                       std::uint64_t seed, std::size_t perms) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<VarId>> shuffles;
  for (std::size_t p = 0; p < perms; ++p) {
    auto v = vars;
    std::shuffle(v.begin(), v.end(), rng);
    shuffles.push_back(std::move(v));
  }
  std::vector<MonomialOrder> out;
  for (auto kind : {OrderKind::LEX, OrderKind::GREVLEX})
    for (const auto& v : shuffles) out.emplace_back(kind, v);
  return out;
}

bool UniversalReport::pass() const {
  return std::all_of(per_order.begin(), per_order.end(),
                     [](const BuchbergerReport& r) { return r.pass(); });
}

void check_s_bordered_generic(const QuasiMatrix& B) {
  const auto& u = *B.universe();
  if (B.cols() < 2) throw AlgebraError("(s|A) needs at least one column of A");
  std::set<VarId> seen;
  for (int r = 0; r < B.rows(); ++r) {
    auto s = B.at({r, 0});
    if (!s || u.block(*s) != Block::S)
      throw AlgebraError("column 0 must hold an s-symbol in every row");
    if (!seen.insert(*s).second) throw AlgebraError("s-column repeats a symbol");
    for (int c = 1; c < B.cols(); ++c) {
      auto v = B.at({r, c});
      if (!v) continue;
      if (u.block(*v) != Block::BigT)
        throw AlgebraError("A must have T-symbol entries");
      if (!seen.insert(*v).second) throw AlgebraError("A must be generic");
    }
  }
}

UniversalReport universal_gb_check(const QuasiMatrix& B,
                                   const std::vector<MonomialOrder>& orders,
                                   int max_size, unsigned jobs) {
  check_s_bordered_generic(B);
  auto gens = ibin_generators(B, max_size);
  std::vector<Poly> G;
  for (const auto& b : gens) G.push_back(b.to_poly(B.universe()));
  UniversalReport rep;
  rep.generators = G.size();
  if (G.empty()) return rep;
  for (const auto& ord : orders)
    rep.per_order.push_back(buchberger_check(G, ord, ReductionStrategy::FIRST_MATCH, jobs));
  return rep;
}

}  // namespace mrees
