#include "doctest.h"

#include <random>

#include "mrees/poly.hpp"

using namespace mrees;

namespace {

UniversePtr small_universe(CoeffDomain d = CoeffDomain::QQ) {
  return std::make_shared<const VarUniverse>(
      d, std::vector<std::string>{"s1", "s2", "s3"}, std::vector<std::string>{"t1"},
      std::vector<std::string>{"T1", "T2", "T3", "T4"},
      std::vector<std::string>{"x", "y"});
}

// Reference comparison on full exponent vectors in rank order.
int ref_compare(OrderKind k, const std::vector<int>& a, const std::vector<int>& b) {
  int da = 0, db = 0;
  for (int e : a) da += e;
  for (int e : b) db += e;
  if (k != OrderKind::LEX && da != db) return da < db ? -1 : 1;
  if (k == OrderKind::GREVLEX) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
      if (a[i] != b[i]) return a[i] > b[i] ? -1 : 1;
    return 0;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

}  // namespace

TEST_CASE("universe blocks are contiguous") {
  auto u = small_universe();
  CHECK(u->size() == 10);
  CHECK(u->block(u->s(2)) == Block::S);
  CHECK(u->block(u->t(0)) == Block::SmallT);
  CHECK(u->block(u->T(0)) == Block::BigT);
  CHECK(u->block(u->x(1)) == Block::X);
  CHECK(u->find("T3") == u->T(2));
  CHECK_FALSE(u->find("z").has_value());
}

TEST_CASE("monomial arithmetic") {
  Mono a({{0, 2}, {4, 1}});
  Mono b({{4, 3}});
  CHECK((a * b).exponent(4) == 4);
  CHECK(a.lcm(b) == Mono({{0, 2}, {4, 3}}));
  CHECK(a.gcd(b) == Mono({{4, 1}}));
  CHECK(Mono({{4, 1}}).divides(a));
  CHECK_FALSE(b.divides(a));
  CHECK(Mono({{4, 1}}).quotient_of(a) == Mono({{0, 2}}));
  CHECK_FALSE(a.is_squarefree());
  CHECK(Mono({{1, 1}, {3, 1}}).is_squarefree());
  CHECK(a.degree() == 3);
}

TEST_CASE("orders agree with reference comparison on random monomials") {
  auto u = small_universe();
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> ex(0, 3);
  std::vector<VarId> rank = {u->T(2), u->T(0), u->T(3), u->T(1)};
  for (auto kind : {OrderKind::LEX, OrderKind::GRLEX, OrderKind::GREVLEX}) {
    MonomialOrder ord(kind, rank);
    for (int it = 0; it < 500; ++it) {
      std::vector<int> ea(4), eb(4);
      std::vector<Mono::Entry> ma, mb;
      for (int i = 0; i < 4; ++i) {
        ea[i] = ex(rng);
        eb[i] = ex(rng);
        if (ea[i]) ma.push_back({rank[i], static_cast<std::uint32_t>(ea[i])});
        if (eb[i]) mb.push_back({rank[i], static_cast<std::uint32_t>(eb[i])});
      }
      // Coefficient symbols must not affect the comparison.
      ma.push_back({u->s(0), static_cast<std::uint32_t>(ex(rng) + 1)});
      int got = ord.compare(Mono(ma), Mono(mb)) < 0 ? -1
                : ord.compare(Mono(ma), Mono(mb)) > 0 ? 1 : 0;
      CHECK(got == ref_compare(kind, ea, eb));
    }
  }
}

TEST_CASE("orders are multiplicative") {
  auto u = small_universe();
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> ex(0, 2);
  auto rnd = [&] {
    std::vector<Mono::Entry> es;
    for (int i = 0; i < 4; ++i)
      if (int e = ex(rng)) es.push_back({u->T(i), static_cast<std::uint32_t>(e)});
    return Mono(es);
  };
  for (auto kind : {OrderKind::LEX, OrderKind::GRLEX, OrderKind::GREVLEX}) {
    auto ord = MonomialOrder::standard(*u, kind);
    for (int it = 0; it < 300; ++it) {
      Mono a = rnd(), b = rnd(), c = rnd();
      CHECK(ord.compare(a, b) == ord.compare(a * c, b * c));
      CHECK_FALSE(ord.less(a * c, a));
    }
  }
}

TEST_CASE("parse and print round trip") {
  auto u = small_universe();
  Poly p = parse_poly("s1*T1*T2 - 3/2*s2^2*T3 + x*y - 4", u);
  CHECK(p.size() == 4);
  Poly q = parse_poly(to_string(p), u);
  CHECK(p == q);
  CHECK(parse_poly("(T1 + T2)*(T1 - T2)", u) == parse_poly("T1^2 - T2^2", u));
  CHECK_THROWS_AS(parse_poly("T1 + z", u), AlgebraError);
  CHECK_THROWS_AS(parse_poly("T1 +", u), AlgebraError);
}

TEST_CASE("ring axioms on random polynomials") {
  auto u = small_universe();
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> ex(0, 2), co(-3, 3), var(0, 9);
  auto rnd = [&] {
    std::vector<Term> ts;
    for (int k = 0; k < 4; ++k) {
      std::vector<Mono::Entry> es;
      for (int j = 0; j < 2; ++j)
        if (int e = ex(rng)) es.push_back({static_cast<VarId>(var(rng)), static_cast<std::uint32_t>(e)});
      ts.push_back({Mono(es), Rational(co(rng))});
    }
    return Poly(u, ts);
  };
  for (int it = 0; it < 100; ++it) {
    Poly a = rnd(), b = rnd(), c = rnd();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK((a * b) * c == a * (b * c));
    CHECK(a - a == Poly(u));
    CHECK(a * b == b * a);
  }
}

TEST_CASE("leading terms and s-monomial type") {
  auto u = small_universe();
  auto ord = MonomialOrder::standard(*u, OrderKind::GREVLEX);
  Poly f = parse_poly("s1*s2*T1*T4 - s3*T2*T3", u);
  auto l = leading(f, ord);
  CHECK(l.lm == Mono({{u->T(1), 1}, {u->T(2), 1}}));
  CHECK(l.lc == parse_poly("-s3", u));
  CHECK(is_s_monomial_type(f, ord));
  CHECK_FALSE(is_s_monomial_type(parse_poly("(s1+s2)*T1 + T2", u), ord));
  CHECK_FALSE(is_s_monomial_type(parse_poly("2*T1 + T2", small_universe(CoeffDomain::ZZ)),
                                 MonomialOrder::standard(*u, OrderKind::GREVLEX)));
  CHECK(is_s_monomial_type(parse_poly("2*T1 + T2", u), ord));
  CHECK_THROWS_AS(leading(Poly(u), ord), AlgebraError);
}

TEST_CASE("substitution") {
  auto u = small_universe();
  std::vector<std::optional<Poly>> img(u->size());
  img[u->s(0)] = parse_poly("x^2", u);
  img[u->s(1)] = parse_poly("x*y", u);
  Poly f = parse_poly("s2*T1 - s1*T2", u);
  CHECK(f.substitute(img) == parse_poly("x*y*T1 - x^2*T2", u));
}
