#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "mrees/oracle.hpp"
#include "mrees/rees.hpp"

using namespace mrees;

namespace {

ReesSpec example_spec() {
  ReesSpec sp;
  sp.seq = SeqSpec::generic(4, {"p1", "p2", "x", "y"});
  sp.ideals = {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}};
  sp.a = {1, 1, 1, 1, 1};
  return sp;
}

ReesSpec intro_spec() {
  ReesSpec sp;
  sp.seq = SeqSpec::concrete({"2", "3", "5", "x", "y", "z"}, {"x", "y", "z"});
  sp.coefficients = CoeffDomain::ZZ;
  sp.ideals = {{1, 4, 5}, {2, 4, 6}, {3, 5, 6}};
  sp.a = {1, 1, 1};
  return sp;
}

ReesSpec random_spec(std::mt19937_64& rng, int max_n, int max_r, int max_a) {
  ReesSpec sp;
  const int n = 1 + static_cast<int>(rng() % max_n);
  sp.seq = SeqSpec::generic(static_cast<std::size_t>(n));
  const int r = 1 + static_cast<int>(rng() % max_r);
  for (int l = 0; l < r; ++l) {
    std::vector<int> k;
    while (k.empty())
      for (int i = 1; i <= n; ++i)
        if (rng() % 2) k.push_back(i);
    sp.ideals.push_back(k);
    sp.a.push_back(1 + static_cast<int>(rng() % max_a));
  }
  return sp;
}

Poly var(const ReesPresentation& p, const std::string& name) {
  auto v = p.universe()->find(name);
  REQUIRE_MESSAGE(v.has_value(), name);
  return Poly::var(p.universe(), *v);
}

bool same_up_to_sign(const Poly& a, const Poly& b) { return a == b || a == -b; }

std::uint64_t pascal(int n, int k) {
  std::vector<std::vector<std::uint64_t>> c(n + 1, std::vector<std::uint64_t>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    c[i][0] = 1;
    for (int j = 1; j <= i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
  }
  return c[n][k];
}

}  // namespace

TEST_CASE("tuple counts against brute force and binomials") {
  for (int n = 1; n <= 6; ++n)
    for (int a = 1; a <= 5; ++a) {
      // Brute force over [0,a]^{n-1}.
      std::size_t all = 0, primed = 0;
      std::vector<int> v(static_cast<std::size_t>(n - 1), 0);
      while (true) {
        // v[0] = j_{n-1}, ..., v[n-2] = j_1: nonincreasing along the vector.
        bool ok = true;
        for (std::size_t i = 0; i + 1 < v.size(); ++i) ok = ok && v[i] >= v[i + 1];
        if (ok) {
          ++all;
          if (v.empty() || v.back() >= 1) ++primed;
        }
        std::size_t i = 0;
        while (i < v.size() && v[i] == a) v[i++] = 0;
        if (i == v.size()) break;
        ++v[i];
      }
      auto T = enumerate_T(a, n, false), Tp = enumerate_T(a, n, true);
      CHECK(T.size() == all);
      CHECK(Tp.size() == primed);
      CHECK(T.size() == pascal(a + n - 1, n - 1));
      CHECK(Tp.size() == pascal(a + n - 2, n - 1));
      CHECK(std::is_sorted(T.begin(), T.end()));
      for (const auto& j : T) CHECK(s_power(j).degree() == static_cast<std::uint64_t>(a));
      for (const auto& j : Tp) CHECK(j.in_T_prime());
    }
}

TEST_CASE("shift examples and row invariance") {
  IndexTuple j{{1, 1, 1}, 1};
  CHECK(shift(j, 1) == j);
  auto j2 = shift(j, 2);
  CHECK(j2.j == std::vector<int>{1, 1, 0});
  CHECK(s_power(j2).exps == std::vector<std::uint32_t>{0, 1, 0, 0});

  IndexTuple k{{2, 1}, 2};
  auto k3 = shift(k, 3);
  CHECK(k3.j == std::vector<int>{1, 0});
  CHECK(s_power(k3).exps == std::vector<std::uint32_t>{0, 1, 1});

  CHECK_THROWS_AS(shift(j, 0), AlgebraError);
  CHECK_THROWS_AS(shift(j, 5), AlgebraError);
  CHECK_THROWS_AS(shift(IndexTuple{{1, 0}, 1}, 1), AlgebraError);

  for (int n = 1; n <= 5; ++n)
    for (int a = 1; a <= 4; ++a)
      for (const auto& t : enumerate_T(a, n, true)) {
        auto unit = [n](int k) {
          SMonomial e(static_cast<std::size_t>(n));
          e.exps[static_cast<std::size_t>(k - 1)] = 1;
          return e;
        };
        for (int u = 1; u <= n; ++u) {
          auto sh = shift(t, u);
          CHECK(sh.in_T());
          CHECK(s_power(sh) == unit(u) * column_base(t));
          // Moving from row u to row w trades a factor s_u for s_w.
          for (int w = 1; w <= n; ++w)
            CHECK(unit(w) * s_power(sh) == unit(u) * s_power(shift(t, w)));
        }
      }
}

TEST_CASE("F membership agrees with divisibility by generators of the power") {
  for (int n = 1; n <= 4; ++n)
    for (int a = 1; a <= 3; ++a)
      for (int mask = 1; mask < (1 << n); ++mask) {
        ReesSpec sp;
        sp.seq = SeqSpec::generic(static_cast<std::size_t>(n));
        std::vector<int> K;
        for (int i = 0; i < n; ++i)
          if (mask >> i & 1) K.push_back(i + 1);
        sp.ideals = {K};
        sp.a = {a};
        for (const auto& j : enumerate_T(a, n, false)) {
          SMonomial sj = s_power(j);
          bool divisible = false;
          for (const auto& m : monomials_of_degree(K.size(), static_cast<std::uint64_t>(a))) {
            SMonomial g(static_cast<std::size_t>(n));
            for (std::size_t i = 0; i < K.size(); ++i)
              g.exps[static_cast<std::size_t>(K[i] - 1)] = m.exps[i];
            divisible = divisible || g.divides(sj);
          }
          CHECK(membership_F(j, 1, sp) == divisible);
        }
      }
}

TEST_CASE("worked example: E layout and the eight generators") {
  auto P = build_presentation(example_spec());
  const auto& E = P.E();
  REQUIRE(E.rows() == 4);
  REQUIRE(E.cols() == 6);
  const std::vector<std::vector<std::string>> layout = {
      {"p1", "T[1;1,1,1]", "T[2;1,1,1]", "", "T[4;1,1,1]", ""},
      {"p2", "T[1;1,1,0]", "", "T[3;1,1,0]", "", "T[5;1,1,0]"},
      {"x", "", "T[2;1,0,0]", "T[3;1,0,0]", "", ""},
      {"y", "", "", "", "T[4;0,0,0]", "T[5;0,0,0]"}};
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 6; ++c) {
      auto v = E.at({r, c});
      const auto& want = layout[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
      if (want.empty()) {
        CHECK_FALSE(v.has_value());
      } else {
        REQUIRE(v.has_value());
        CHECK(P.universe()->name(*v) == want);
      }
    }
  CHECK(P.warnings().empty());

  auto V = [&](const char* n) { return var(P, n); };
  const std::vector<Poly> expected = {
      V("p1") * V("T[1;1,1,0]") - V("p2") * V("T[1;1,1,1]"),
      V("p1") * V("T[2;1,0,0]") - V("x") * V("T[2;1,1,1]"),
      V("p2") * V("T[3;1,0,0]") - V("x") * V("T[3;1,1,0]"),
      V("p1") * V("T[4;0,0,0]") - V("y") * V("T[4;1,1,1]"),
      V("p2") * V("T[5;0,0,0]") - V("y") * V("T[5;1,1,0]"),
      V("T[1;1,1,1]") * V("T[3;1,1,0]") * V("T[2;1,0,0]") -
          V("T[1;1,1,0]") * V("T[2;1,1,1]") * V("T[3;1,0,0]"),
      V("T[1;1,1,1]") * V("T[5;1,1,0]") * V("T[4;0,0,0]") -
          V("T[1;1,1,0]") * V("T[4;1,1,1]") * V("T[5;0,0,0]"),
      V("T[2;1,1,1]") * V("T[3;1,0,0]") * V("T[4;0,0,0]") * V("T[5;1,1,0]") -
          V("T[2;1,0,0]") * V("T[3;1,1,0]") * V("T[4;1,1,1]") * V("T[5;0,0,0]")};
  auto gens = defining_generators(P, Family::RESTRICTED).generators;
  REQUIRE(gens.size() == expected.size());
  for (const auto& e : expected) {
    auto hits = std::count_if(gens.begin(), gens.end(),
                              [&](const Generator& g) { return same_up_to_sign(g.poly, e); });
    CHECK(hits == 1);
  }
  CHECK(std::count_if(gens.begin(), gens.end(),
                      [](const Generator& g) { return g.kind == GenKind::S_MINOR; }) == 5);

  // Every restricted generator is also produced by the full family.
  auto full = defining_generators(P, Family::FULL_IBIN).generators;
  CHECK(full.size() > gens.size());
  for (const auto& g : gens)
    CHECK(std::any_of(full.begin(), full.end(),
                      [&](const Generator& f) { return same_up_to_sign(f.poly, g.poly); }));

  // phi on single variables.
  auto T1 = *P.universe()->find("T[1;1,1,1]");
  CHECK(phi_apply(Poly::var(P.universe(), T1), P) == V("p1") * V("t1"));
  CHECK(phi_apply(Poly::constant(P.universe(), 1), P) == Poly::constant(P.universe(), 1));
  CHECK(P.D_block(2).entry_count() == 2);
}

TEST_CASE("n = 2 gives a single s-minor") {
  ReesSpec sp;
  sp.seq = SeqSpec::generic(2);
  sp.ideals = {{1, 2}};
  sp.a = {1};
  auto P = build_presentation(sp);
  CHECK(P.S_variables().size() == 2);
  auto gens = defining_generators(P, Family::RESTRICTED).generators;
  REQUIRE(gens.size() == 1);
  CHECK(gens[0].kind == GenKind::S_MINOR);
  CHECK(same_up_to_sign(gens[0].poly, var(P, "s1") * var(P, "T[1;0]") - var(P, "s2") * var(P, "T[1;1]")));
  CHECK(defining_generators(P, Family::FULL_IBIN).generators.size() == 1);
}

TEST_CASE("phi vanishes on every generator") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 30; ++trial) {
    auto sp = random_spec(rng, 4, 3, 2);
    auto P = build_presentation(sp);
    for (Family f : {Family::RESTRICTED, Family::FULL_IBIN})
      for (const auto& g : defining_generators(P, f).generators) {
        CHECK(phi_apply(g.poly, P).is_zero());
        CHECK(g.poly == g.binomial.to_poly(P.universe()));
      }
  }
  auto P = build_presentation(intro_spec());
  auto gens = defining_generators(P, Family::RESTRICTED).generators;
  CHECK_FALSE(gens.empty());
  for (const auto& g : gens) CHECK(phi_apply(g.poly, P).is_zero());
  // Constant values: T[1;1,1,1,1,1] carries s1 = 2.
  auto T = *P.universe()->find("T[1;1,1,1,1,1]");
  CHECK(phi_apply(Poly::var(P.universe(), T), P) == var(P, "t1").scaled(2, Mono()));
  auto off = *P.universe()->find("T[1;0,0,0,0,0]");
  CHECK_THROWS_AS(phi_apply(Poly::var(P.universe(), off), P), AlgebraError);
}

TEST_CASE("s-binary reductions verify symbolically") {
  auto P = build_presentation(example_spec());
  auto V = [&](const char* n) { return var(P, n); };
  Poly delta = V("p1") * V("T[3;1,1,0]") * V("T[2;1,0,0]") - V("p2") * V("T[2;1,1,1]") * V("T[3;1,0,0]");
  auto full = defining_generators(P, Family::FULL_IBIN).generators;
  auto it = std::find_if(full.begin(), full.end(),
                         [&](const Generator& g) { return same_up_to_sign(g.poly, delta); });
  REQUIRE(it != full.end());
  CHECK(it->kind == GenKind::S_QUASI);
  auto cert = s_binary_reduction(it->binomial, P);
  CHECK(cert.expand(P.universe()) == it->poly);
  // Both s-rows meet the x row first, so only the second identity applies
  // and the remainder is again a 2x2 s-minor.
  REQUIRE(cert.terms.size() == 2);
  CHECK(cert.terms[0].kind == GenKind::S_MINOR);
  CHECK(cert.terms[1].kind == GenKind::S_MINOR);
  CHECK(same_up_to_sign(cert.terms[0].generator, V("p1") * V("T[2;1,0,0]") - V("x") * V("T[2;1,1,1]")));
  CHECK(cert.terms[0].multiplier == V("T[3;1,1,0]"));

  // A 2x2 s-minor reduces to itself.
  auto m = std::find_if(full.begin(), full.end(),
                        [](const Generator& g) { return g.kind == GenKind::S_MINOR; });
  REQUIRE(m != full.end());
  auto self = s_binary_reduction(m->binomial, P);
  REQUIRE(self.terms.size() == 1);
  CHECK(same_up_to_sign(self.terms[0].generator, m->poly));

  // Random s-binary quasi-minors from small specs.
  std::mt19937_64 rng(7);
  int checked = 0, t_quasi_terms = 0;
  for (int trial = 0; trial < 400 && checked < 50; ++trial) {
    auto sp = random_spec(rng, 5, 3, 2);
    if (sp.seq.n < 4) continue;
    auto Q = build_presentation(sp);
    for (const auto& g : defining_generators(Q, Family::FULL_IBIN, 4).generators) {
      if (g.kind != GenKind::S_QUASI || rng() % 4) continue;
      auto c = s_binary_reduction(g.binomial, Q);
      CHECK(c.expand(Q.universe()) == g.poly);
      for (const auto& t : c.terms) {
        CHECK((t.kind == GenKind::S_MINOR || t.kind == GenKind::T_QUASI));
        CHECK(phi_apply(t.generator, Q).is_zero());
        if (t.kind == GenKind::S_MINOR) CHECK(t.generator.size() == 2);
        if (t.kind == GenKind::T_QUASI) ++t_quasi_terms;
      }
      if (++checked == 50) break;
    }
  }
  CHECK(checked == 50);
  CHECK(t_quasi_terms > 0);
  auto tq = std::find_if(full.begin(), full.end(),
                         [](const Generator& g) { return g.kind == GenKind::T_QUASI; });
  REQUIRE(tq != full.end());
  CHECK_THROWS_AS(s_binary_reduction(tq->binomial, P), AlgebraError);
}

TEST_CASE("degenerate specs warn and emit nothing") {
  ReesSpec sp;
  sp.seq = SeqSpec::generic(2);
  sp.ideals = {{1}};
  sp.a = {1};
  auto P = build_presentation(sp);
  CHECK_FALSE(P.warnings().empty());
  auto gs = defining_generators(P, Family::RESTRICTED);
  CHECK(gs.generators.empty());
  CHECK_FALSE(gs.warnings.empty());
}

TEST_CASE("spec validation") {
  auto bad = example_spec();
  bad.a[0] = 0;
  CHECK_THROWS_AS(build_presentation(bad), AlgebraError);
  bad = example_spec();
  bad.ideals.clear();
  bad.a.clear();
  CHECK_THROWS_AS(build_presentation(bad), AlgebraError);
  bad = example_spec();
  bad.ideals[0] = {1, 5};
  CHECK_THROWS_AS(build_presentation(bad), AlgebraError);
  bad = example_spec();
  bad.ideals[0] = {1, 1};
  CHECK_THROWS_AS(build_presentation(bad), AlgebraError);
  bad = example_spec();
  bad.a.pop_back();
  CHECK_THROWS_AS(build_presentation(bad), AlgebraError);
  auto conc = intro_spec();
  conc.coefficients = CoeffDomain::QQ;
  CHECK_THROWS_AS(build_presentation(conc), AlgebraError);
}

TEST_CASE("reduced indexing gives an isomorphic presentation") {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 20; ++trial) {
    auto sp = random_spec(rng, 3, 2, 2);
    auto P = build_presentation(sp);
    auto R = build_presentation(sp, {.reduced_indexing = true});
    CHECK(R.reduced_indexing());
    CHECK(R.S_variables().size() == P.S_variables().size());
    std::multiset<SMonomial> a, b;
    for (auto v : P.S_variables()) a.insert(P.T_of(v).power);
    for (auto v : R.S_variables()) b.insert(R.T_of(v).power);
    CHECK(a == b);
    auto gp = defining_generators(P, Family::RESTRICTED).generators;
    auto gr = defining_generators(R, Family::RESTRICTED).generators;
    CHECK(gp.size() == gr.size());
    for (const auto& g : gr) CHECK(phi_apply(g.poly, R).is_zero());
  }
}

TEST_CASE("squarefree normality report") {
  auto P = build_presentation(example_spec());
  for (auto k : {OrderKind::LEX, OrderKind::GREVLEX}) {
    auto rep = squarefree_normality_report(P, MonomialOrder::standard(*P.universe(), k));
    CHECK(rep.hypothesis);
    CHECK(rep.non_squarefree.empty());
    CHECK(rep.verdict == NormalCM::TRUE);
    CHECK(rep.generators == 8);
  }
  auto C = build_presentation(intro_spec());
  auto rc = squarefree_normality_report(C, MonomialOrder::standard(*C.universe(), OrderKind::LEX));
  CHECK_FALSE(rc.hypothesis);
  CHECK(rc.verdict == NormalCM::INDETERMINATE);

  ReesSpec sq;
  sq.seq = SeqSpec::concrete({"x*y", "z", "w"}, {"x", "y", "z", "w"});
  sq.coefficients = CoeffDomain::ZZ;
  sq.ideals = {{1, 2}, {2, 3}};
  sq.a = {1, 1};
  auto S = build_presentation(sq);
  auto rs = squarefree_normality_report(S, MonomialOrder::standard(*S.universe(), OrderKind::LEX));
  CHECK(rs.hypothesis);
  CHECK(rs.verdict == NormalCM::TRUE);
}
