#ifndef MREES_QUASIMAT_HPP
#define MREES_QUASIMAT_HPP

#include <compare>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mrees/poly.hpp"

namespace mrees {

struct Position {
  int row = 0;
  int col = 0;
  auto operator<=>(const Position&) const = default;
};

/// Rectangular array with optional entries. Entries are variables of a
/// universe (s-symbols in an s-column, T-symbols elsewhere).
class QuasiMatrix {
 public:
  QuasiMatrix(UniversePtr u, int rows, int cols);

  const UniversePtr& universe() const { return u_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }

  void set(Position p, VarId v);
  std::optional<VarId> at(Position p) const;
  bool has(Position p) const { return at(p).has_value(); }
  std::vector<Position> positions() const;  // row-major
  std::size_t entry_count() const;
  bool is_full() const { return entry_count() == std::size_t(rows_) * cols_; }

  // Drop empty rows and columns.
  QuasiMatrix canonical() const;
  // Keep only the given positions (others become empty).
  QuasiMatrix restricted_to(const std::vector<Position>& keep) const;

  // Monospace layout, blanks for empty positions.
  std::string pretty(const std::vector<std::string>& row_labels = {}) const;

  bool operator==(const QuasiMatrix& o) const;

 private:
  std::size_t idx(Position p) const;
  UniversePtr u_;
  int rows_, cols_;
  std::vector<std::optional<VarId>> cells_;
};

/// Set of positions of a quasi-matrix with exactly two entries in every
/// nonempty row and column. Its bipartite entry graph is a disjoint union of
/// even cycles.
class BinaryQuasiMatrix {
 public:
  // Validates the two-per-row/two-per-column property and presence in A.
  BinaryQuasiMatrix(const QuasiMatrix& a, std::vector<Position> entries);

  const std::vector<Position>& entries() const { return entries_; }
  // Cycles as position sequences e0,e1,...: e_{2i},e_{2i+1} share a row and
  // e_{2i+1},e_{2i+2} share a column.
  const std::vector<std::vector<Position>>& cycles() const { return cycles_; }
  std::size_t size() const { return entries_.size() / 2; }  // rows used
  std::vector<int> rows() const;
  std::vector<int> cols() const;

  static bool is_binary(const std::vector<Position>& entries);

 private:
  std::vector<Position> entries_;
  std::vector<std::vector<Position>> cycles_;
};

/// Positional binary quasi-minor: `first` and `second` are the two
/// complementary perfect matchings of a binary subquasi-matrix.
struct QuasiMinor {
  std::vector<Position> first;
  std::vector<Position> second;
};

/// Binomial `plus - minus` of entry products, each term a sorted multiset
/// of variable ids. Sign-normalized: `plus` is the smaller term in the
/// global symbol order (variable ids, s-block before T-block).
struct Binomial {
  std::vector<VarId> plus;
  std::vector<VarId> minus;
  QuasiMinor origin;  // positions matching plus / minus respectively

  Poly to_poly(const UniversePtr& u) const;
  bool same_up_to_sign(const Binomial& o) const {
    return plus == o.plus && minus == o.minus;
  }
};

// Normalize so the smaller term comes first; nullopt when both terms agree.
std::optional<Binomial> make_binomial(const QuasiMatrix& a, QuasiMinor qm);

constexpr int kMaxMinorSize = 12;

/// Visit every binary subquasi-matrix with at most `max_size` rows, once
/// each, in a deterministic order. The visitor returns false to stop.
void binary_subquasi_enumerate(
    const QuasiMatrix& a, int max_size,
    const std::function<bool(const BinaryQuasiMatrix&)>& visit);
std::vector<BinaryQuasiMatrix> binary_subquasi_list(const QuasiMatrix& a,
                                                    int max_size);

/// One binomial per assignment of matchings to terms (2^{c-1} up to sign
/// for c cycles), sign-normalized and deduplicated. Zero binomials, which
/// arise only when symbols repeat, are dropped.
std::vector<Binomial> quasi_determinants(const QuasiMatrix& a,
                                         const BinaryQuasiMatrix& b);

/// Deduplicated binary quasi-minors of `a` up to sign.
std::vector<Binomial> ibin_generators(const QuasiMatrix& a, int max_size);

/// Expression of a binary quasi-minor of a full matrix as a combination of
/// 2x2 minors, following the row-by-row reduction of the minor's size.
struct MinorTerm {
  Poly multiplier;
  int row1, row2, col1, col2;  // the 2x2 minor used
  Poly minor;
};
struct MinorCertificate {
  std::vector<MinorTerm> terms;
  Poly expand(const UniversePtr& u) const;
};
MinorCertificate rewrite_as_two_minors(const QuasiMinor& delta,
                                       const QuasiMatrix& a);

Poly product_of(const QuasiMatrix& a, const std::vector<Position>& ps);
Poly quasi_minor_poly(const QuasiMatrix& a, const QuasiMinor& qm);

}  // namespace mrees

#endif  // MREES_QUASIMAT_HPP
