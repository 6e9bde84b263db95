#ifndef MREES_ORACLE_HPP
#define MREES_ORACLE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "mrees/linalg.hpp"
#include "mrees/rees.hpp"
#include "mrees/sseq.hpp"

namespace mrees {

/// Graded piece of S: t-multidegree plus total weight, where an s- (or x-)
/// variable weighs 1 and T_{l,j} weighs the degree of its phi-image.
struct MultiDegree {
  std::vector<int> t_deg;
  std::uint64_t weight = 0;

  std::string to_string() const;
  auto operator<=>(const MultiDegree&) const = default;
};

struct OracleCaps {
  std::size_t monomial_cap = 20000;  // sources per piece
  int t_degree_cap = 3;
  int aux_degree_cap = -1;  // negative: 3 * max(a) + 2
};

int effective_aux_cap(const ReesSpec& spec, const OracleCaps& caps);

// Every t-multidegree of total degree <= t_degree_cap, each with the
// weights whose auxiliary degree stays within the cap.
std::vector<MultiDegree> oracle_degrees(const ReesPresentation& pres, const OracleCaps& caps);

struct KernelPiece {
  MultiDegree degree;
  std::vector<Mono> sources;
  std::size_t dimension = 0;
  std::vector<Poly> basis;
};

KernelPiece kernel_piece(const ReesPresentation& pres, const MultiDegree& d,
                         const OracleCaps& caps = {});

struct PieceReport {
  MultiDegree degree;
  std::size_t sources = 0;
  std::size_t kernel_dim = 0;
  std::size_t span_dim = 0;
  bool span_in_kernel = true;
  bool kernel_in_span = true;
  std::vector<std::string> witnesses;
  // A multiple of a generator with nonzero image, or a kernel element
  // outside the span.
  std::vector<Poly> witness_polys;
  bool equal() const { return span_in_kernel && kernel_in_span; }
};

struct GradedKernelReport {
  std::string spec_summary;
  std::size_t generators = 0;
  OracleCaps caps;
  std::uint64_t seed = 0;
  std::vector<PieceReport> pieces;
  std::vector<std::string> notes;

  bool pass() const;
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

std::string summarize(const ReesSpec& spec);

/// Per piece: kernel of phi against the span of the monomial multiples of
/// `gens`. Generators must be homogeneous for the grading.
GradedKernelReport span_compare(const std::vector<Poly>& gens, const ReesPresentation& pres,
                                const std::vector<MultiDegree>& degrees,
                                const OracleCaps& caps = {}, unsigned jobs = 1);

struct FamilyPieceReport {
  MultiDegree degree;
  std::size_t kernel_dim = 0;
  std::size_t rank_a = 0, rank_b = 0, rank_union = 0;
  bool equal() const { return rank_a == rank_union && rank_b == rank_union; }
};

std::vector<FamilyPieceReport> compare_families(const std::vector<Poly>& a,
                                                const std::vector<Poly>& b,
                                                const ReesPresentation& pres,
                                                const std::vector<MultiDegree>& degrees,
                                                const OracleCaps& caps = {}, unsigned jobs = 1);

/// Syzygies sum c_i e_i of monomials a_1..a_m, one piece per degree D of
/// c_i * a_i, compared with the span of the pairwise syzygies.
struct SyzygyTerm {
  std::size_t generator;
  SMonomial mono;
  mpz_class coeff;
};
using SyzygyVector = std::vector<SyzygyTerm>;

struct SyzygyPiece {
  std::uint64_t degree = 0;
  std::size_t sources = 0;
  std::size_t kernel_dim = 0;
  std::size_t pair_span_dim = 0;
  bool kernel_in_span = true;
  std::vector<SyzygyVector> basis;
};

std::vector<SyzygyPiece> monomial_syzygy_kernel(const std::vector<SMonomial>& gens,
                                                std::uint64_t degree_bound,
                                                std::size_t monomial_cap = 20000);

std::vector<SMonomial> monomials_of_degree(std::size_t n, std::uint64_t d);

}  // namespace mrees

#endif  // MREES_ORACLE_HPP
