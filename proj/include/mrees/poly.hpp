#ifndef MREES_POLY_HPP
#define MREES_POLY_HPP

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace mrees {

using VarId = std::uint32_t;
using Rational = mpq_class;

enum class Block : std::uint8_t { S, SmallT, BigT, X };
enum class CoeffDomain : std::uint8_t { ZZ, QQ };

class AlgebraError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when an enumeration or oracle guard is hit.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Index carried by a T-block variable: generator block l (1-based) and the
/// tuple j written as (j_{n-1},...,j_1).
struct TLabel {
  int l = 0;
  std::vector<int> j;
  auto operator<=>(const TLabel&) const = default;
};

/// Variable universe split into four blocks with contiguous ids:
/// s-symbols, t-symbols, T-symbols, then ambient x-variables.
class VarUniverse {
 public:
  VarUniverse(CoeffDomain domain, std::vector<std::string> s_names,
              std::vector<std::string> t_names,
              std::vector<std::string> T_names,
              std::vector<std::string> x_names,
              std::vector<TLabel> T_labels = {});

  CoeffDomain domain() const { return domain_; }
  std::size_t size() const { return names_.size(); }
  std::size_t n_s() const { return n_s_; }
  std::size_t n_t() const { return n_t_; }
  std::size_t n_T() const { return n_T_; }
  std::size_t n_x() const { return n_x_; }

  VarId s(std::size_t i) const { return static_cast<VarId>(i); }
  VarId t(std::size_t i) const { return static_cast<VarId>(n_s_ + i); }
  VarId T(std::size_t i) const { return static_cast<VarId>(n_s_ + n_t_ + i); }
  VarId x(std::size_t i) const {
    return static_cast<VarId>(n_s_ + n_t_ + n_T_ + i);
  }

  Block block(VarId v) const;
  const std::string& name(VarId v) const { return names_.at(v); }
  std::optional<VarId> find(std::string_view name) const;
  const TLabel* T_label(VarId v) const;

 private:
  CoeffDomain domain_;
  std::size_t n_s_, n_t_, n_T_, n_x_;
  std::vector<std::string> names_;
  std::vector<TLabel> T_labels_;
};

using UniversePtr = std::shared_ptr<const VarUniverse>;

/// Sparse power product; exponent pairs sorted by variable id, never zero.
class Mono {
 public:
  using Entry = std::pair<VarId, std::uint32_t>;

  Mono() = default;
  explicit Mono(std::vector<Entry> entries);  // canonicalizes
  static Mono var(VarId v, std::uint32_t e = 1);

  bool is_one() const { return e_.empty(); }
  std::span<const Entry> entries() const { return e_; }
  std::uint32_t exponent(VarId v) const;
  std::uint64_t degree() const;
  bool is_squarefree() const;

  Mono operator*(const Mono& o) const;
  bool divides(const Mono& o) const;
  // Requires divides(o).
  Mono quotient_of(const Mono& o) const;
  Mono lcm(const Mono& o) const;
  Mono gcd(const Mono& o) const;

  template <class Pred>
  Mono restrict_to(Pred keep) const {
    Mono r;
    for (const auto& p : e_)
      if (keep(p.first)) r.e_.push_back(p);
    return r;
  }

  auto operator<=>(const Mono&) const = default;
  bool operator==(const Mono&) const = default;

  std::size_t hash() const;

 private:
  std::vector<Entry> e_;
};

struct MonoHash {
  std::size_t operator()(const Mono& m) const { return m.hash(); }
};

enum class OrderKind : std::uint8_t { LEX, GRLEX, GREVLEX };

std::string to_string(OrderKind k);
OrderKind parse_order_kind(std::string_view s);

/// Monomial order on the ranked variables (largest first). Every other
/// variable is a coefficient symbol and is ignored by comparisons.
class MonomialOrder {
 public:
  MonomialOrder(OrderKind kind, std::vector<VarId> ranking);

  // T-block in universe order, first variable largest.
  static MonomialOrder standard(const VarUniverse& u, OrderKind kind);

  OrderKind kind() const { return kind_; }
  const std::vector<VarId>& ranking() const { return ranking_; }
  bool is_ranked(VarId v) const {
    return v < rank_.size() && rank_[v] >= 0;
  }
  // Strip coefficient symbols.
  Mono ranked_part(const Mono& m) const;
  Mono coefficient_part(const Mono& m) const;

  std::strong_ordering compare(const Mono& a, const Mono& b) const;
  bool less(const Mono& a, const Mono& b) const { return compare(a, b) < 0; }

  std::string describe(const VarUniverse& u) const;

 private:
  OrderKind kind_;
  std::vector<VarId> ranking_;
  std::vector<int> rank_;
};

struct Term {
  Mono mono;
  Rational coeff;
};

/// Exact polynomial over a VarUniverse. Terms are kept sorted by the
/// structural Mono order with no zero coefficients, so equality is
/// structural.
class Poly {
 public:
  explicit Poly(UniversePtr u) : u_(std::move(u)) {}
  Poly(UniversePtr u, std::vector<Term> terms);  // canonicalizes

  static Poly constant(UniversePtr u, const Rational& c);
  static Poly monomial(UniversePtr u, const Rational& c, Mono m);
  static Poly var(UniversePtr u, VarId v) {
    return monomial(std::move(u), 1, Mono::var(v));
  }

  const UniversePtr& universe() const { return u_; }
  const std::vector<Term>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly scaled(const Rational& c, const Mono& m) const;

  bool operator==(const Poly& o) const;

  // Total degree over the given block set.
  std::uint64_t max_degree() const;
  bool has_only_blocks(std::initializer_list<Block> blocks) const;

  // Replace variables by polynomials (identity for unmapped ids).
  Poly substitute(const std::vector<std::optional<Poly>>& images) const;

 private:
  void check_same(const Poly& o) const;
  UniversePtr u_;
  std::vector<Term> terms_;
};

std::string to_string(const Mono& m, const VarUniverse& u);
// Terms printed in descending `ord` order, ties broken structurally.
std::string to_string(const Poly& p, const MonomialOrder& ord);
std::string to_string(const Poly& p);

/// Parse "3*x^2*T[1;0,1] - s1" style text over the universe's names.
Poly parse_poly(std::string_view text, const UniversePtr& u);

/// Rename-map a polynomial into another universe by variable name.
Poly translate(const Poly& p, const UniversePtr& target);

struct Leading {
  Poly lc;  // coefficient-symbol polynomial
  Mono lm;  // ranked monomial
};

// Throws AlgebraError on the zero polynomial.
Leading leading(const Poly& p, const MonomialOrder& ord);
Mono leading_monomial(const Poly& p, const MonomialOrder& ord);

/// Leading coefficient recognized as unit * s-monomial.
struct STerm {
  Rational unit;
  Mono smono;
};
bool is_unit(CoeffDomain d, const Rational& c);
std::optional<STerm> as_s_term(const Poly& c);
bool is_s_monomial_type(const Poly& p, const MonomialOrder& ord);

}  // namespace mrees

#endif  // MREES_POLY_HPP
