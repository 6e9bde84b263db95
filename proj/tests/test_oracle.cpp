#include "doctest.h"

#include <algorithm>
#include <map>
#include <random>

#include "mrees/oracle.hpp"

using namespace mrees;

namespace {

ReesSpec generic_spec(std::size_t n, std::vector<std::vector<int>> ideals, std::vector<int> a,
                      std::vector<std::string> names = {}) {
  ReesSpec sp;
  sp.seq = SeqSpec::generic(n, std::move(names));
  sp.ideals = std::move(ideals);
  sp.a = std::move(a);
  return sp;
}

ReesSpec example_spec() {
  return generic_spec(4, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}}, {1, 1, 1, 1, 1},
                      {"p1", "p2", "x", "y"});
}

std::vector<Poly> polys(const GeneratorSet& gs) {
  std::vector<Poly> out;
  for (const auto& g : gs.generators) out.push_back(g.poly);
  return out;
}

Poly var(const ReesPresentation& p, const std::string& name) {
  auto v = p.universe()->find(name);
  REQUIRE_MESSAGE(v.has_value(), name);
  return Poly::var(p.universe(), *v);
}

// Coordinates of p over the monomial list `basis` (p must be supported there).
ZVec coordinates(const Poly& p, const std::vector<Mono>& basis) {
  std::vector<std::pair<std::size_t, mpz_class>> e;
  for (const auto& t : p.terms()) {
    auto it = std::lower_bound(basis.begin(), basis.end(), t.mono);
    REQUIRE(it != basis.end());
    REQUIRE(*it == t.mono);
    REQUIRE(t.coeff.get_den() == 1);
    e.emplace_back(static_cast<std::size_t>(it - basis.begin()), t.coeff.get_num());
  }
  return make_zvec(e);
}

SMonomial smono(std::initializer_list<std::uint32_t> e) {
  SMonomial m(e.size());
  std::copy(e.begin(), e.end(), m.exps.begin());
  return m;
}

}  // namespace

TEST_CASE("monomials_of_degree counts") {
  for (std::size_t n = 0; n <= 4; ++n)
    for (std::uint64_t d = 0; d <= 5; ++d) {
      auto ms = monomials_of_degree(n, d);
      std::uint64_t want = n == 0 ? (d == 0) : binomial(d + n - 1, n - 1);
      CHECK(ms.size() == want);
      for (const auto& m : ms) CHECK(m.degree() == d);
    }
}

TEST_CASE("injective phi has zero kernel") {
  auto P = build_presentation(generic_spec(2, {{1}}, {1}));
  OracleCaps caps;
  for (const auto& d : oracle_degrees(P, caps)) CHECK(kernel_piece(P, d, caps).dimension == 0);
  auto rep = span_compare({}, P, oracle_degrees(P, caps), caps);
  CHECK(rep.pass());
}

TEST_CASE("n = 2: the kernel in t-degree one is spanned by the s-minor") {
  auto P = build_presentation(generic_spec(2, {{1, 2}}, {1}));
  auto k1 = kernel_piece(P, {{1}, 1});
  CHECK(k1.sources.size() == 2);
  CHECK(k1.dimension == 0);
  auto k2 = kernel_piece(P, {{1}, 2});
  CHECK(k2.sources.size() == 4);
  REQUIRE(k2.dimension == 1);
  Poly minor = var(P, "s1") * var(P, "T[1;0]") - var(P, "s2") * var(P, "T[1;1]");
  CHECK((k2.basis[0] == minor || k2.basis[0] == -minor));
}

TEST_CASE("worked example: the three-block quasi-minor lies in its kernel piece") {
  auto P = build_presentation(example_spec());
  MultiDegree d{{1, 1, 1, 0, 0}, 3};
  auto kp = kernel_piece(P, d);
  CHECK(kp.dimension > 0);
  for (const auto& b : kp.basis) CHECK(phi_apply(b, P).is_zero());
  Poly q = var(P, "T[1;1,1,1]") * var(P, "T[3;1,1,0]") * var(P, "T[2;1,0,0]") -
           var(P, "T[1;1,1,0]") * var(P, "T[2;1,1,1]") * var(P, "T[3;1,0,0]");
  IntegerEchelon span;
  for (const auto& b : kp.basis) span.insert(coordinates(b, kp.sources));
  CHECK(span.rank() == kp.dimension);
  CHECK(span.contains(coordinates(q, kp.sources)));

  // Every kernel element in a few more pieces re-substitutes to zero.
  OracleCaps caps;
  caps.t_degree_cap = 2;
  caps.aux_degree_cap = 1;
  for (const auto& e : oracle_degrees(P, caps))
    for (const auto& b : kernel_piece(P, e, caps).basis) CHECK(phi_apply(b, P).is_zero());
}

TEST_CASE("span_compare: equality, missing generators and mutated generators") {
  auto P = build_presentation(example_spec());
  OracleCaps caps;
  caps.t_degree_cap = 2;
  caps.aux_degree_cap = 2;
  auto degrees = oracle_degrees(P, caps);
  auto gens = polys(defining_generators(P, Family::RESTRICTED));

  auto ok = span_compare(gens, P, degrees, caps);
  CHECK(ok.pass());
  CHECK(ok.caps.aux_degree_cap == 2);

  // No generators: every nonzero kernel piece reports a witness in the kernel.
  auto none = span_compare({}, P, degrees, caps);
  CHECK_FALSE(none.pass());
  std::size_t witnessed = 0;
  for (const auto& pr : none.pieces) {
    if (pr.kernel_dim == 0) continue;
    CHECK_FALSE(pr.kernel_in_span);
    REQUIRE_FALSE(pr.witness_polys.empty());
    for (const auto& w : pr.witness_polys) CHECK(phi_apply(w, P).is_zero());
    ++witnessed;
  }
  CHECK(witnessed > 0);

  // Dropping one s-minor loses its degree-two piece.
  auto dropped = gens;
  dropped.erase(dropped.begin());
  auto rd = span_compare(dropped, P, degrees, caps);
  CHECK_FALSE(rd.pass());
  for (const auto& pr : rd.pieces)
    for (const auto& w : pr.witness_polys) {
      CHECK(phi_apply(w, P).is_zero());
      CHECK(pr.span_in_kernel);
    }

  // A sign flip on one term: the multiple leaves the kernel.
  auto mutated = gens;
  const auto& t = mutated[0].terms();
  mutated[0] = Poly(P.universe(), {t[0], Term{t[1].mono, -t[1].coeff}});
  auto rm = span_compare(mutated, P, degrees, caps);
  CHECK_FALSE(rm.pass());
  bool outside = false;
  for (const auto& pr : rm.pieces)
    if (!pr.span_in_kernel) {
      outside = true;
      REQUIRE_FALSE(pr.witness_polys.empty());
      CHECK_FALSE(phi_apply(pr.witness_polys.front(), P).is_zero());
    }
  CHECK(outside);
}

TEST_CASE("reports are deterministic across job counts") {
  auto P = build_presentation(generic_spec(3, {{1, 2, 3}, {2, 3}}, {2, 1}));
  OracleCaps caps;
  caps.t_degree_cap = 2;
  auto degrees = oracle_degrees(P, caps);
  auto gens = polys(defining_generators(P, Family::RESTRICTED));
  auto a = span_compare(gens, P, degrees, caps, 1);
  auto b = span_compare(gens, P, degrees, caps, 3);
  a.seed = b.seed = 5;
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(a.to_text() == b.to_text());
  CHECK(a.pass());
  CHECK(a.caps.aux_degree_cap == 8);
}

TEST_CASE("family comparison agrees on the worked example") {
  auto P = build_presentation(example_spec());
  OracleCaps caps;
  caps.t_degree_cap = 2;
  caps.aux_degree_cap = 2;
  auto degrees = oracle_degrees(P, caps);
  auto full = polys(defining_generators(P, Family::FULL_IBIN));
  auto restricted = polys(defining_generators(P, Family::RESTRICTED));
  for (const auto& fr : compare_families(full, restricted, P, degrees, caps)) {
    CHECK(fr.equal());
    CHECK(fr.rank_union == fr.kernel_dim);
  }
  std::vector<Poly> fewer(restricted.begin() + 1, restricted.end());
  auto diff = compare_families(restricted, fewer, P, degrees, caps);
  CHECK(std::any_of(diff.begin(), diff.end(), [](const FamilyPieceReport& r) { return !r.equal(); }));
}

TEST_CASE("concrete squarefree monomial values") {
  ReesSpec sp;
  sp.seq = SeqSpec::concrete({"x*y", "z", "w"}, {"x", "y", "z", "w"});
  sp.coefficients = CoeffDomain::ZZ;
  sp.ideals = {{1, 2}, {2, 3}};
  sp.a = {1, 2};
  auto P = build_presentation(sp);
  OracleCaps caps;
  caps.t_degree_cap = 2;
  caps.aux_degree_cap = 3;
  auto rep = span_compare(polys(defining_generators(P, Family::RESTRICTED)), P,
                          oracle_degrees(P, caps), caps);
  CHECK(rep.pass());
  CHECK_FALSE(rep.notes.empty());
}

TEST_CASE("guards") {
  auto P = build_presentation(example_spec());
  OracleCaps tiny;
  tiny.monomial_cap = 10;
  CHECK_THROWS_AS(kernel_piece(P, {{2, 1, 0, 0, 0}, 5}, tiny), CapExceeded);
  CHECK_THROWS_AS(kernel_piece(P, {{1, 0}, 1}), AlgebraError);
  Poly inhomogeneous = var(P, "T[1;1,1,1]") - var(P, "p1");
  CHECK_THROWS_AS(span_compare({inhomogeneous}, P, {{{1, 0, 0, 0, 0}, 1}}), AlgebraError);
  Poly uses_t = var(P, "t1") * var(P, "p1");
  CHECK_THROWS_AS(span_compare({uses_t}, P, {{{1, 0, 0, 0, 0}, 1}}), AlgebraError);
}

TEST_CASE("monomial syzygies") {
  // (x, y): every syzygy is a multiple of (y, -x).
  auto two = monomial_syzygy_kernel({smono({1, 0}), smono({0, 1})}, 2);
  REQUIRE(two.size() == 3);
  CHECK(two[0].kernel_dim == 0);
  CHECK(two[1].kernel_dim == 0);
  CHECK(two[2].kernel_dim == 1);
  for (const auto& p : two) CHECK(p.kernel_in_span);
  REQUIRE(two[2].basis.size() == 1);
  const auto& v = two[2].basis[0];
  REQUIRE(v.size() == 2);
  CHECK(v[0].mono * smono({1, 0}) == v[1].mono * smono({0, 1}));
  CHECK(v[0].coeff == -v[1].coeff);

  auto three = monomial_syzygy_kernel({smono({2, 0}), smono({1, 1}), smono({0, 2})}, 6);
  for (const auto& p : three) {
    CHECK(p.kernel_in_span);
    CHECK(p.pair_span_dim >= p.kernel_dim);
  }
  CHECK(three[3].kernel_dim == 2);

  for (const auto& p : monomial_syzygy_kernel({smono({1, 2, 0})}, 5)) CHECK(p.kernel_dim == 0);

  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 25; ++trial) {
    std::size_t m = 1 + rng() % 4, n = 1 + rng() % 3;
    std::vector<SMonomial> gens;
    for (std::size_t i = 0; i < m; ++i) {
      SMonomial g(n);
      for (auto& e : g.exps) e = static_cast<std::uint32_t>(rng() % 3);
      gens.push_back(g);
    }
    for (const auto& p : monomial_syzygy_kernel(gens, 8)) {
      CHECK(p.kernel_in_span);
      for (const auto& vec : p.basis) {
        std::map<SMonomial, mpz_class> sum;
        for (const auto& t : vec) sum[t.mono * gens[t.generator]] += t.coeff;
        for (const auto& [mono, c] : sum) CHECK(c == 0);
      }
    }
  }
  CHECK_THROWS_AS(monomial_syzygy_kernel({}, 2), AlgebraError);
  CHECK_THROWS_AS(monomial_syzygy_kernel({smono({1, 0}), smono({0, 1})}, 40, 10), CapExceeded);
}
