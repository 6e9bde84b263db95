#ifndef MREES_GROBNER_HPP
#define MREES_GROBNER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mrees/poly.hpp"
#include "mrees/quasimat.hpp"

namespace mrees {

// S(f,g) lives over the total ring of fractions; it is carried as
// numerator / denominator with an s-monomial denominator.
struct SPolyFraction {
  Poly numerator;
  Mono denominator;
};

// S'(f,g) = mult_f * f - mult_g * g.
struct SPrime {
  Poly value;
  Poly mult_f;
  Poly mult_g;
};

SPolyFraction s_poly(const Poly& f, const Poly& g, const MonomialOrder& ord);
Poly s_prime_poly(const Poly& f, const Poly& g, const MonomialOrder& ord);
SPrime s_prime_with_cofactors(const Poly& f, const Poly& g,
                              const MonomialOrder& ord);

enum class ReductionStatus : std::uint8_t { REDUCED_TO_ZERO, INCONCLUSIVE };
enum class ReductionStrategy : std::uint8_t { FIRST_MATCH, SMALLEST_LM };

std::string to_string(ReductionStatus s);

/// f = sum multipliers[i] * G[i] + residual.
struct ReductionCert {
  std::vector<Poly> multipliers;  // parallel to G
  Poly residual;
  ReductionStatus status;
  std::size_t steps = 0;
};

/// Top-reduction: the leading T-monomial is cleared one coefficient term at
/// a time by a g whose lm divides it and whose s-term lc divides the term.
ReductionCert reduce(const Poly& f, const std::vector<Poly>& G,
                     const MonomialOrder& ord,
                     ReductionStrategy strategy = ReductionStrategy::FIRST_MATCH,
                     std::size_t max_steps = 1'000'000);

// Identity always; for REDUCED_TO_ZERO also lm(p_i) lm(f_i) <= lm(f).
bool verify_certificate(const Poly& f, const std::vector<Poly>& G,
                        const ReductionCert& cert, const MonomialOrder& ord);

struct PairOutcome {
  std::size_t i, j;
  ReductionStatus status;
  std::size_t steps;
};

struct BuchbergerReport {
  std::string order;
  std::size_t pairs = 0;
  std::vector<PairOutcome> inconclusive;  // in pair order
  bool pass() const { return inconclusive.empty(); }
};

// Throws AlgebraError if some member is not s-monomial type.
BuchbergerReport buchberger_check(
    const std::vector<Poly>& G, const MonomialOrder& ord,
    ReductionStrategy strategy = ReductionStrategy::FIRST_MATCH, unsigned jobs = 1);

/// LEX and GREVLEX over `perms` seeded shuffles of `vars`.
std::vector<MonomialOrder> order_suite(const std::vector<VarId>& vars,
                                       std::uint64_t seed, std::size_t perms = 5);

struct UniversalReport {
  std::uint64_t seed = 0;
  std::size_t generators = 0;
  std::vector<BuchbergerReport> per_order;
  bool pass() const;
};

// B must be (s | A): column 0 holds s-symbols in every row and the other
// entries are pairwise distinct T-symbols.
void check_s_bordered_generic(const QuasiMatrix& B);

UniversalReport universal_gb_check(const QuasiMatrix& B,
                                   const std::vector<MonomialOrder>& orders,
                                   int max_size = kMaxMinorSize, unsigned jobs = 1);

}  // namespace mrees

#endif  // MREES_GROBNER_HPP
