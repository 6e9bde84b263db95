#ifndef MREES_LINALG_HPP
#define MREES_LINALG_HPP

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mrees {

/// Sparse integer vector: sorted indices, nonzero entries.
using ZVec = std::vector<std::pair<std::size_t, mpz_class>>;
using ZMatrix = std::vector<std::vector<mpz_class>>;  // row-major, dense

ZVec make_zvec(std::vector<std::pair<std::size_t, mpz_class>> entries);  // sorts, merges
// Divide by the content and make the leading entry positive.
void make_primitive(ZVec& v);

/// Fraction-free Gauss-Jordan. On return every pivot entry of `reduced`
/// equals `scale` and, when tracked, transform * input = reduced.
struct BareissResult {
  ZMatrix reduced;
  std::vector<std::size_t> pivot_cols;
  mpz_class scale = 1;
  ZMatrix transform;
};
BareissResult bareiss_rref(const ZMatrix& a, std::size_t cols, bool track_transform = false);

std::size_t rank(const ZMatrix& a, std::size_t cols);
// Primitive integer basis of {x : a x = 0}, one vector per free column.
std::vector<ZVec> nullspace(const ZMatrix& a, std::size_t cols);

/// Incremental row echelon form over Z with content normalization.
class IntegerEchelon {
 public:
  // Adds v; returns true iff the rank grew.
  bool insert(ZVec v);
  bool contains(ZVec v) const;
  std::size_t rank() const { return rows_.size(); }

 private:
  ZVec reduce(ZVec v) const;
  std::map<std::size_t, ZVec> rows_;  // pivot column -> row
};

/// Kernel of a linear map given by sparse columns (one per source) against
/// the span of a family of source vectors, analysed over the connected
/// blocks of sources (shared image coordinates or shared span vectors).
struct LinearPiece {
  std::size_t n_sources = 0;
  std::vector<ZVec> columns;       // image of each source
  std::vector<ZVec> span_vectors;  // over source indices
};

struct PieceAnalysis {
  std::size_t kernel_dim = 0;
  std::size_t span_rank = 0;
  std::vector<std::size_t> outside_kernel;  // span vectors with nonzero image
  std::vector<ZVec> missing;                // kernel vectors outside the span
  bool kernel_in_span() const { return missing.empty() && span_rank >= kernel_dim; }
};

// `full_rank` forces the exact span rank instead of stopping once it
// reaches the kernel dimension of a block.
PieceAnalysis analyze_piece(const LinearPiece& piece, std::size_t max_witnesses = 1,
                            bool full_rank = false);
std::vector<ZVec> kernel_basis(const LinearPiece& piece);
// Rank of the span vectors only.
std::size_t span_rank(const std::vector<ZVec>& vectors);

}  // namespace mrees

#endif  // MREES_LINALG_HPP
