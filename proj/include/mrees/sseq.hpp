#ifndef MREES_SSEQ_HPP
#define MREES_SSEQ_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mrees/poly.hpp"

namespace mrees {

enum class SeqMode : std::uint8_t { GENERIC, CONCRETE };

/// Formal power product s_1^{e_1}...s_n^{e_n}. Never evaluated or factored;
/// the zero vector is the s-monomial 1.
struct SMonomial {
  std::vector<std::uint32_t> exps;

  SMonomial() = default;
  explicit SMonomial(std::size_t n) : exps(n, 0) {}
  explicit SMonomial(std::vector<std::uint32_t> e) : exps(std::move(e)) {}

  std::size_t size() const { return exps.size(); }
  std::uint64_t degree() const;
  bool is_one() const;
  bool divides(const SMonomial& o) const;
  SMonomial operator*(const SMonomial& o) const;
  // Requires divides(o).
  SMonomial quotient_of(const SMonomial& o) const;
  std::vector<std::size_t> support() const;

  Mono to_mono(const VarUniverse& u) const;  // uses u.s(i)
  std::string to_string(const std::vector<std::string>& names) const;

  auto operator<=>(const SMonomial&) const = default;
};

SMonomial s_lcm(const SMonomial& a, const SMonomial& b);
SMonomial s_gcd(const SMonomial& a, const SMonomial& b);

/// The fixed sequence s_1..s_n. In CONCRETE mode each s_i carries a value
/// in Z[x_vars]; weak regularity is attested, not verified.
struct SeqSpec {
  std::size_t n = 0;
  SeqMode mode = SeqMode::GENERIC;
  std::vector<std::string> names;
  std::vector<std::string> x_names;
  std::vector<std::string> concrete_text;  // as given in the spec file
  bool assume_weak_regular = true;

  static SeqSpec generic(std::size_t n, std::vector<std::string> names = {});
  static SeqSpec concrete(std::vector<std::string> values,
                          std::vector<std::string> x_names);

  // Values as polynomials in the x-block of `u` (which must contain the
  // x names). Throws if any value is zero or a unit.
  std::vector<Poly> concrete_values(const UniversePtr& u) const;

  // Best-effort lint: equal concrete values.
  std::vector<std::string> lint() const;
};

/// Taylor complex of s-monomials a_1..a_m. Basis of T_p is the p-subsets
/// of {0..m-1} in lexicographic order of their increasing index tuples.
struct TaylorComplex {
  struct Entry {
    std::size_t target;  // index into basis(p-1)
    int sign;
    SMonomial coeff;
  };

  std::vector<SMonomial> generators;
  // basis[p] lists the p-subsets as increasing index vectors; basis[0] = {{}}.
  std::vector<std::vector<std::vector<std::size_t>>> basis;
  // differentials[p-1][col] = entries of d_p(e_col), p = 1..m.
  std::vector<std::vector<std::vector<Entry>>> differentials;

  std::size_t rank(std::size_t p) const { return basis.at(p).size(); }
  // d_{p-1} o d_p == 0 identically, p = 2..m.
  bool composition_vanishes(std::size_t p) const;
  bool is_complex() const;
};

constexpr std::size_t kTaylorMaxGenerators = 12;

TaylorComplex taylor_complex(const std::vector<SMonomial>& gens);

/// lcm/a_i e_i - lcm/a_j e_j for i < j.
struct PairSyzygy {
  std::size_t i, j;
  SMonomial ci, cj;
};
std::vector<PairSyzygy> syzygy_generators(const std::vector<SMonomial>& gens);

// Alternating sum over Taylor summands of the Hilbert function of the
// polynomial ring in n_vars variables, evaluated at `degree`.
long long taylor_hilbert_sum(const TaylorComplex& tc, std::size_t n_vars,
                             std::uint64_t degree);

}  // namespace mrees

#endif  // MREES_SSEQ_HPP
