#ifndef MREES_REES_HPP
#define MREES_REES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mrees/poly.hpp"
#include "mrees/quasimat.hpp"
#include "mrees/sseq.hpp"

namespace mrees {

/// Tuple (j_{n-1},...,j_1) with implied j_n = a. `j[0]` is j_{n-1}.
struct IndexTuple {
  std::vector<int> j;
  int a = 0;

  std::size_t n() const { return j.size() + 1; }
  // j_i for 0 <= i <= n with the given j_0.
  int at(std::size_t i, int j0 = 0) const;
  bool in_T() const;        // 0 = j_0 <= j_1 <= ... <= j_n = a
  bool in_T_prime() const;  // additionally j_1 >= 1
  std::string to_string() const;  // "j_{n-1},...,j_1"

  auto operator<=>(const IndexTuple&) const = default;
};

/// All members of T_a (or T'_a) in lexicographic order of the stored vector.
std::vector<IndexTuple> enumerate_T(int a, int n, bool primed);

std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

// s^j with j_0 = 0; degree a.
SMonomial s_power(const IndexTuple& j);
// The common factor of a B column: exponents taken with j_0 = 1; degree a-1.
SMonomial column_base(const IndexTuple& j);
// j^{|k>}: components j_1..j_{k-1} drop by one. s^{shift(j,k)} = s_k * column_base(j).
IndexTuple shift(const IndexTuple& j, int k);

/// Generic or concrete sequence, generator index sets K_l (1-based) and
/// exponents a_l.
struct ReesSpec {
  SeqSpec seq;
  CoeffDomain coefficients = CoeffDomain::QQ;
  std::vector<std::vector<int>> ideals;
  std::vector<int> a;

  std::size_t r() const { return ideals.size(); }
  // Throws AlgebraError on an invalid spec.
  void validate() const;
};

// j in F^l_{a_l}: support(s^j) contained in K_l.
bool membership_F(const IndexTuple& j, int l, const ReesSpec& spec);

struct TVariable {
  int l = 0;  // 1-based
  IndexTuple j;
  VarId id = 0;
  SMonomial power;  // s^j over the ambient n-sequence
  bool in_F = false;
};

struct ColumnLabel {
  int l = 0;  // 0 for the s-column
  IndexTuple j;
};

struct ReesOptions {
  // Index D_{a_l} by tuples over the generators of I_l only.
  bool reduced_indexing = false;
};

class ReesPresentation {
 public:
  const ReesSpec& spec() const { return spec_; }
  const UniversePtr& universe() const { return u_; }
  bool reduced_indexing() const { return reduced_; }

  const std::vector<TVariable>& T_variables() const { return T_; }
  // The polynomial ring S: T_{l,j} with j in F.
  std::vector<VarId> S_variables() const;
  const TVariable& T_of(VarId v) const;

  const QuasiMatrix& B() const { return *B_; }
  const QuasiMatrix& C() const { return *C_; }
  const QuasiMatrix& D() const { return *D_; }
  const QuasiMatrix& E() const { return *E_; }
  const QuasiMatrix& B_block(int l) const { return B_blocks_.at(l - 1); }
  const QuasiMatrix& D_block(int l) const { return D_blocks_.at(l - 1); }
  const std::vector<ColumnLabel>& B_columns() const { return B_cols_; }
  const std::vector<ColumnLabel>& E_columns() const { return E_cols_; }  // [0] = s
  std::vector<std::string> row_labels() const;

  // phi(T_{l,j}) = s^j t_l, with s-values substituted in concrete mode.
  const Poly& phi_image(VarId v) const;
  // Concrete values of s_1..s_n over the x-block (empty in generic mode).
  const std::vector<Poly>& s_values() const { return s_values_; }
  // Weight of each S-variable's phi-image: a_l generically, the degree of
  // the concrete value otherwise (nullopt when not homogeneous).
  std::optional<std::uint64_t> image_weight(VarId v) const;

  const std::vector<std::string>& warnings() const { return warnings_; }

  friend ReesPresentation build_presentation(const ReesSpec&, const ReesOptions&);

 private:
  ReesPresentation() = default;
  ReesSpec spec_;
  bool reduced_ = false;
  UniversePtr u_;
  std::vector<TVariable> T_;
  std::optional<QuasiMatrix> B_, C_, D_, E_;
  std::vector<QuasiMatrix> B_blocks_, D_blocks_;
  std::vector<ColumnLabel> B_cols_, E_cols_;
  std::vector<std::optional<Poly>> phi_;
  std::vector<Poly> s_values_;
  std::vector<std::string> warnings_;
};

ReesPresentation build_presentation(const ReesSpec& spec, const ReesOptions& opts = {});

std::string T_name(int l, const IndexTuple& j);

enum class Family : std::uint8_t { FULL_IBIN, RESTRICTED };
std::string to_string(Family f);
Family parse_family(std::string_view s);

enum class GenKind : std::uint8_t { S_MINOR, S_QUASI, D_MINOR, T_QUASI };
std::string to_string(GenKind k);

struct Generator {
  Binomial binomial;  // positions refer to E
  Poly poly;
  GenKind kind;
};

struct GeneratorSet {
  std::vector<Generator> generators;
  std::vector<std::string> warnings;
};

/// FULL_IBIN: every binary quasi-minor of E. RESTRICTED: 2x2 minors
/// involving the s-column, 2x2 minors of each D block, and T-binary
/// quasi-minors with at most two entries from each D block.
GeneratorSet defining_generators(const ReesPresentation& pres, Family family,
                                 int max_size = kMaxMinorSize);

/// Image under phi of a polynomial over the presentation's universe.
Poly phi_apply(const Poly& p, const ReesPresentation& pres);

struct CombinationTerm {
  Poly multiplier;
  Poly generator;
  GenKind kind;
};

struct Combination {
  std::vector<CombinationTerm> terms;
  Poly expand(const UniversePtr& u) const;
};

/// Rewrites an s-binary quasi-minor of E as a combination of 2x2 s-minors
/// and T-binary quasi-minors.
Combination s_binary_reduction(const Binomial& delta, const ReesPresentation& pres);

enum class NormalCM : std::uint8_t { TRUE, INDETERMINATE };
std::string to_string(NormalCM v);

struct SquarefreeReport {
  std::string order;
  std::size_t generators = 0;
  std::vector<std::string> non_squarefree;  // offending leading monomials
  bool hypothesis = false;  // s is a regular sequence of squarefree monomials
  // Some a_l >= 2: the check ran on the a = (1,...,1) presentation, whose
  // algebra has the requested one as a direct summand.
  bool via_unit_exponents = false;
  std::size_t direct_non_squarefree = 0;  // offenders in the requested presentation
  NormalCM verdict = NormalCM::INDETERMINATE;
  std::vector<std::string> notes;
};

// Leading monomials are taken under `ord`; the unit-exponent fallback uses
// the standard ranking of the same kind.
SquarefreeReport squarefree_normality_report(const ReesPresentation& pres,
                                             const MonomialOrder& ord,
                                             Family family = Family::RESTRICTED);

}  // namespace mrees

#endif  // MREES_REES_HPP
