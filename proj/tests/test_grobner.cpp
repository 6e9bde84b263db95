#include "doctest.h"

#include <algorithm>

#include "mrees/grobner.hpp"

using namespace mrees;

namespace {

UniversePtr make_universe(std::size_t ns, std::size_t nT, CoeffDomain d = CoeffDomain::QQ) {
  std::vector<std::string> s, T;
  for (std::size_t i = 0; i < ns; ++i) s.push_back("s" + std::to_string(i + 1));
  for (std::size_t i = 0; i < nT; ++i) T.push_back("T" + std::to_string(i + 1));
  return std::make_shared<const VarUniverse>(d, s, std::vector<std::string>{}, T,
                                             std::vector<std::string>{});
}

// (s | A) with A generic rows x cols.
QuasiMatrix bordered(const UniversePtr& u, int rows, int cols) {
  QuasiMatrix b(u, rows, cols + 1);
  for (int r = 0; r < rows; ++r) {
    b.set({r, 0}, u->s(r));
    for (int c = 0; c < cols; ++c) b.set({r, c + 1}, u->T(r * cols + c));
  }
  return b;
}

std::vector<Poly> polys(const UniversePtr& u, std::initializer_list<const char*> xs) {
  std::vector<Poly> out;
  for (auto x : xs) out.push_back(parse_poly(x, u));
  return out;
}

}  // namespace

TEST_CASE("S-polynomial of classical pair") {
  auto u = make_universe(0, 2);
  MonomialOrder lex(OrderKind::LEX, {u->T(0), u->T(1)});
  Poly f = parse_poly("T1^2 - T2", u), g = parse_poly("T1*T2 - 1", u);
  auto s = s_poly(f, g, lex);
  CHECK(s.denominator.is_one());
  CHECK(s.numerator == parse_poly("-T2^2 + T1", u));
  CHECK(s_poly(f, f, lex).numerator.is_zero());
}

TEST_CASE("S'-polynomials") {
  auto u = make_universe(3, 3);
  auto ord = MonomialOrder::standard(*u, OrderKind::LEX);
  Poly f = parse_poly("s1*T1 - s2*T2", u), g = parse_poly("s1*T1 - s3*T3", u);
  CHECK(s_prime_poly(f, g, ord) == parse_poly("s3*T3 - s2*T2", u));
  CHECK(s_prime_poly(f, f, ord).is_zero());

  // Formal s-symbols valued 2 and 3.
  Poly f2 = parse_poly("s1*T1 + T2", u), g2 = parse_poly("s2*T1 + T3", u);
  Poly sp = s_prime_poly(f2, g2, ord);
  std::vector<std::optional<Poly>> img(u->size());
  img[u->s(0)] = Poly::constant(u, 2);
  img[u->s(1)] = Poly::constant(u, 3);
  CHECK(sp.substitute(img) == parse_poly("3*T2 - 2*T3", u));

  auto sf = s_poly(f2, g2, ord);
  CHECK(sf.denominator == Mono({{u->s(0), 1}, {u->s(1), 1}}));

  auto c = s_prime_with_cofactors(f, g, ord);
  CHECK(c.value == c.mult_f * f - c.mult_g * g);

  Poly bad = parse_poly("(s1 + s2)*T1 + T2", u);
  CHECK_THROWS_AS(s_prime_poly(bad, f, ord), AlgebraError);
}

TEST_CASE("reduction certificates") {
  auto u = make_universe(3, 6);
  auto ord = MonomialOrder::standard(*u, OrderKind::GREVLEX);
  Poly m = parse_poly("s1*T2 - s2*T1", u);
  auto c = reduce(m, {m}, ord);
  CHECK(c.status == ReductionStatus::REDUCED_TO_ZERO);
  CHECK(c.steps == 1);
  CHECK(c.multipliers[0] == Poly::constant(u, 1));
  CHECK(verify_certificate(m, {m}, c, ord));

  // Generic 2x3 matrix rows (T1 T2 T3), (T4 T5 T6): overlapping minors.
  auto G = polys(u, {"T1*T5 - T2*T4", "T1*T6 - T3*T4", "T2*T6 - T3*T5"});
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i + 1; j < 3; ++j) {
      Poly sp = s_prime_poly(G[i], G[j], ord);
      for (auto strat : {ReductionStrategy::FIRST_MATCH, ReductionStrategy::SMALLEST_LM}) {
        auto cert = reduce(sp, G, ord, strat);
        CHECK(cert.status == ReductionStatus::REDUCED_TO_ZERO);
        CHECK(verify_certificate(sp, G, cert, ord));
      }
    }

  Poly lone = parse_poly("T1*T2 + T3", u);
  auto inc = reduce(lone, {parse_poly("s1*T1 - T4", u)}, ord);
  CHECK(inc.status == ReductionStatus::INCONCLUSIVE);
  CHECK(verify_certificate(lone, {parse_poly("s1*T1 - T4", u)}, inc, ord));
}

TEST_CASE("tampered certificates are rejected") {
  auto u = make_universe(2, 4);
  auto ord = MonomialOrder::standard(*u, OrderKind::GREVLEX);
  auto G = polys(u, {"s1*T2 - s2*T1"});
  Poly f = parse_poly("s1*T2*T3 - s2*T1*T3", u);
  auto c = reduce(f, G, ord);
  REQUIRE(verify_certificate(f, G, c, ord));
  auto bad = c;
  bad.multipliers[0] += Poly::constant(u, 1);
  CHECK_FALSE(verify_certificate(f, G, bad, ord));
  bad = c;
  bad.multipliers[0] = bad.multipliers[0] + parse_poly("T4^5", u);
  bad.residual = bad.residual - parse_poly("T4^5", u) * G[0];
  CHECK_FALSE(verify_certificate(f, G, bad, ord));
}

TEST_CASE("Buchberger check basics") {
  auto u = make_universe(2, 4);
  auto ord = MonomialOrder::standard(*u, OrderKind::LEX);
  auto one = buchberger_check(polys(u, {"s1*T1 - T2"}), ord);
  CHECK(one.pass());
  CHECK(one.pairs == 0);
  // Not a Groebner basis: S'(T1 - T2, T1 - T3) = T3 - T2 has no reducer.
  auto bad = buchberger_check(polys(u, {"T1 - T2", "T1 - T3"}), ord);
  CHECK_FALSE(bad.pass());
  REQUIRE(bad.inconclusive.size() == 1);
  CHECK(bad.inconclusive[0].i == 0);
  CHECK(bad.inconclusive[0].j == 1);
}

TEST_CASE("Buchberger report is independent of job count") {
  auto u = make_universe(3, 9);
  auto B = bordered(u, 3, 3);
  std::vector<Poly> G;
  for (const auto& b : ibin_generators(B, kMaxMinorSize)) G.push_back(b.to_poly(u));
  G.push_back(parse_poly("T1 - T9", u));
  auto ord = MonomialOrder::standard(*u, OrderKind::GREVLEX);
  auto a = buchberger_check(G, ord, ReductionStrategy::FIRST_MATCH, 1);
  auto b = buchberger_check(G, ord, ReductionStrategy::FIRST_MATCH, 4);
  REQUIRE(a.inconclusive.size() == b.inconclusive.size());
  for (std::size_t k = 0; k < a.inconclusive.size(); ++k) {
    CHECK(a.inconclusive[k].i == b.inconclusive[k].i);
    CHECK(a.inconclusive[k].j == b.inconclusive[k].j);
  }
}

TEST_CASE("universal Groebner basis: 2x2 under all lex permutations") {
  auto u = make_universe(2, 4);
  auto B = bordered(u, 2, 2);
  std::vector<VarId> vars = {u->T(0), u->T(1), u->T(2), u->T(3)};
  std::vector<MonomialOrder> orders;
  std::sort(vars.begin(), vars.end());
  do {
    orders.emplace_back(OrderKind::LEX, vars);
  } while (std::next_permutation(vars.begin(), vars.end()));
  CHECK(orders.size() == 24);
  auto rep = universal_gb_check(B, orders);
  CHECK(rep.pass());
  CHECK(rep.per_order.size() == 24);
}

TEST_CASE("universal Groebner basis: generic 3x2 and 3x3 under the seeded suite") {
  for (int cols : {2, 3}) {
    auto u = make_universe(3, 3 * cols);
    auto B = bordered(u, 3, cols);
    std::vector<VarId> vars;
    for (int i = 0; i < 3 * cols; ++i) vars.push_back(u->T(i));
    auto suite = order_suite(vars, 17, 3);
    CHECK(suite.size() == 6);
    auto rep = universal_gb_check(B, suite);
    CHECK(rep.pass());
  }
}

TEST_CASE("universal Groebner basis: single column and malformed input") {
  auto u = make_universe(3, 3);
  auto B = bordered(u, 3, 1);
  auto rep = universal_gb_check(B, order_suite({u->T(0), u->T(1), u->T(2)}, 1));
  CHECK(rep.pass());
  CHECK(rep.generators == 3);

  QuasiMatrix bad(u, 2, 2);
  bad.set({0, 0}, u->s(0));
  bad.set({1, 0}, u->T(0));
  bad.set({0, 1}, u->T(1));
  CHECK_THROWS_AS(check_s_bordered_generic(bad), AlgebraError);
  QuasiMatrix rep_t(u, 2, 2);
  rep_t.set({0, 0}, u->s(0));
  rep_t.set({1, 0}, u->s(1));
  rep_t.set({0, 1}, u->T(1));
  rep_t.set({1, 1}, u->T(1));
  CHECK_THROWS_AS(check_s_bordered_generic(rep_t), AlgebraError);
}

TEST_CASE("order suite is seeded") {
  std::vector<VarId> v = {3, 4, 5, 6, 7};
  auto a = order_suite(v, 5), b = order_suite(v, 5), c = order_suite(v, 6);
  REQUIRE(a.size() == 10);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].ranking() == b[i].ranking());
    differs = differs || a[i].ranking() != c[i].ranking();
  }
  CHECK(differs);
}
