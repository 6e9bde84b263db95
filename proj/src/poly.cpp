#include "mrees/poly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace mrees {

// ---------------------------------------------------------------------------
// VarUniverse

VarUniverse::VarUniverse(CoeffDomain domain, std::vector<std::string> s_names,
                         std::vector<std::string> t_names,
                         std::vector<std::string> T_names,
                         std::vector<std::string> x_names,
                         std::vector<TLabel> T_labels)
    : domain_(domain),
      n_s_(s_names.size()),
      n_t_(t_names.size()),
      n_T_(T_names.size()),
      n_x_(x_names.size()),
      T_labels_(std::move(T_labels)) {
  if (!T_labels_.empty() && T_labels_.size() != n_T_)
    throw AlgebraError("T label count does not match T-block size");
  for (auto* blk : {&s_names, &t_names, &T_names, &x_names})
    for (auto& nm : *blk) names_.push_back(std::move(nm));
  std::unordered_set<std::string> seen;
  for (const auto& nm : names_) {
    if (nm.empty()) throw AlgebraError("empty variable name");
    if (!seen.insert(nm).second)
      throw AlgebraError("duplicate variable name '" + nm + "'");
  }
  std::set<TLabel> labels(T_labels_.begin(), T_labels_.end());
  if (labels.size() != T_labels_.size())
    throw AlgebraError("duplicate T index label");
}

Block VarUniverse::block(VarId v) const {
  if (v < n_s_) return Block::S;
  if (v < n_s_ + n_t_) return Block::SmallT;
  if (v < n_s_ + n_t_ + n_T_) return Block::BigT;
  if (v < names_.size()) return Block::X;
  throw AlgebraError("variable id out of range");
}

std::optional<VarId> VarUniverse::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<VarId>(i);
  return std::nullopt;
}

const TLabel* VarUniverse::T_label(VarId v) const {
  if (block(v) != Block::BigT || T_labels_.empty()) return nullptr;
  return &T_labels_[v - n_s_ - n_t_];
}

// ---------------------------------------------------------------------------
// Mono

Mono::Mono(std::vector<Entry> entries) : e_(std::move(entries)) {
  std::sort(e_.begin(), e_.end());
  std::vector<Entry> merged;
  for (const auto& p : e_) {
    if (!merged.empty() && merged.back().first == p.first)
      merged.back().second += p.second;
    else
      merged.push_back(p);
  }
  std::erase_if(merged, [](const Entry& p) { return p.second == 0; });
  e_ = std::move(merged);
}

Mono Mono::var(VarId v, std::uint32_t e) {
  Mono m;
  if (e) m.e_.push_back({v, e});
  return m;
}

std::uint32_t Mono::exponent(VarId v) const {
  auto it = std::lower_bound(e_.begin(), e_.end(), Entry{v, 0});
  return (it != e_.end() && it->first == v) ? it->second : 0;
}

std::uint64_t Mono::degree() const {
  std::uint64_t d = 0;
  for (const auto& p : e_) d += p.second;
  return d;
}

bool Mono::is_squarefree() const {
  return std::all_of(e_.begin(), e_.end(),
                     [](const Entry& p) { return p.second == 1; });
}

Mono Mono::operator*(const Mono& o) const {
  Mono r;
  r.e_.reserve(e_.size() + o.e_.size());
  auto a = e_.begin(), b = o.e_.begin();
  while (a != e_.end() || b != o.e_.end()) {
    if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
      r.e_.push_back(*a++);
    } else if (a == e_.end() || b->first < a->first) {
      r.e_.push_back(*b++);
    } else {
      r.e_.push_back({a->first, a->second + b->second});
      ++a, ++b;
    }
  }
  return r;
}

bool Mono::divides(const Mono& o) const {
  auto b = o.e_.begin();
  for (const auto& p : e_) {
    while (b != o.e_.end() && b->first < p.first) ++b;
    if (b == o.e_.end() || b->first != p.first || b->second < p.second)
      return false;
  }
  return true;
}

Mono Mono::quotient_of(const Mono& o) const {
  Mono r;
  auto a = e_.begin();
  for (const auto& p : o.e_) {
    while (a != e_.end() && a->first < p.first) ++a;
    std::uint32_t sub = (a != e_.end() && a->first == p.first) ? a->second : 0;
    if (sub > p.second) throw AlgebraError("monomial quotient is not exact");
    if (p.second > sub) r.e_.push_back({p.first, p.second - sub});
  }
  if (!divides(o)) throw AlgebraError("monomial quotient is not exact");
  return r;
}

Mono Mono::lcm(const Mono& o) const {
  Mono r;
  auto a = e_.begin(), b = o.e_.begin();
  while (a != e_.end() || b != o.e_.end()) {
    if (b == o.e_.end() || (a != e_.end() && a->first < b->first)) {
      r.e_.push_back(*a++);
    } else if (a == e_.end() || b->first < a->first) {
      r.e_.push_back(*b++);
    } else {
      r.e_.push_back({a->first, std::max(a->second, b->second)});
      ++a, ++b;
    }
  }
  return r;
}

Mono Mono::gcd(const Mono& o) const {
  Mono r;
  auto b = o.e_.begin();
  for (const auto& p : e_) {
    while (b != o.e_.end() && b->first < p.first) ++b;
    if (b != o.e_.end() && b->first == p.first)
      r.e_.push_back({p.first, std::min(p.second, b->second)});
  }
  return r;
}

std::size_t Mono::hash() const {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (const auto& p : e_) {
    h ^= (static_cast<std::size_t>(p.first) << 20) ^ p.second;
    h *= 0x100000001b3ULL;
  }
  return h;
}

// ---------------------------------------------------------------------------
// MonomialOrder

std::string to_string(OrderKind k) {
  switch (k) {
    case OrderKind::LEX: return "lex";
    case OrderKind::GRLEX: return "grlex";
    case OrderKind::GREVLEX: return "grevlex";
  }
  return "?";
}

OrderKind parse_order_kind(std::string_view s) {
  if (s == "lex") return OrderKind::LEX;
  if (s == "grlex") return OrderKind::GRLEX;
  if (s == "grevlex") return OrderKind::GREVLEX;
  throw AlgebraError("unknown monomial order '" + std::string(s) + "'");
}

MonomialOrder::MonomialOrder(OrderKind kind, std::vector<VarId> ranking)
    : kind_(kind), ranking_(std::move(ranking)) {
  VarId mx = 0;
  for (VarId v : ranking_) mx = std::max(mx, v);
  rank_.assign(ranking_.empty() ? 0 : mx + 1, -1);
  for (std::size_t i = 0; i < ranking_.size(); ++i) {
    if (rank_[ranking_[i]] >= 0)
      throw AlgebraError("variable ranked twice in monomial order");
    rank_[ranking_[i]] = static_cast<int>(i);
  }
}

MonomialOrder MonomialOrder::standard(const VarUniverse& u, OrderKind kind) {
  std::vector<VarId> r;
  for (std::size_t i = 0; i < u.n_T(); ++i) r.push_back(u.T(i));
  return MonomialOrder(kind, std::move(r));
}

Mono MonomialOrder::ranked_part(const Mono& m) const {
  return m.restrict_to([this](VarId v) { return is_ranked(v); });
}

Mono MonomialOrder::coefficient_part(const Mono& m) const {
  return m.restrict_to([this](VarId v) { return !is_ranked(v); });
}

std::strong_ordering MonomialOrder::compare(const Mono& a, const Mono& b) const {
  // Dense exponent vectors in rank order; small universes make this cheap.
  const std::size_t k = ranking_.size();
  thread_local std::vector<std::int64_t> ea, eb;
  ea.assign(k, 0);
  eb.assign(k, 0);
  std::int64_t da = 0, db = 0;
  for (const auto& [v, e] : a.entries())
    if (is_ranked(v)) ea[rank_[v]] = e, da += e;
  for (const auto& [v, e] : b.entries())
    if (is_ranked(v)) eb[rank_[v]] = e, db += e;
  if (kind_ != OrderKind::LEX && da != db) return da <=> db;
  if (kind_ == OrderKind::GREVLEX) {
    for (std::size_t i = k; i-- > 0;)
      if (ea[i] != eb[i]) return eb[i] <=> ea[i];
    return std::strong_ordering::equal;
  }
  for (std::size_t i = 0; i < k; ++i)
    if (ea[i] != eb[i]) return ea[i] <=> eb[i];
  return std::strong_ordering::equal;
}

std::string MonomialOrder::describe(const VarUniverse& u) const {
  std::string s = to_string(kind_) + " [";
  for (std::size_t i = 0; i < ranking_.size(); ++i) {
    if (i) s += " > ";
    s += u.name(ranking_[i]);
  }
  return s + "]";
}

// ---------------------------------------------------------------------------
// Poly

namespace {

bool term_less(const Term& a, const Term& b) { return a.mono < b.mono; }

std::vector<Term> canonical(std::vector<Term> t) {
  std::sort(t.begin(), t.end(), term_less);
  std::vector<Term> out;
  out.reserve(t.size());
  for (auto& x : t) {
    if (!out.empty() && out.back().mono == x.mono)
      out.back().coeff += x.coeff;
    else
      out.push_back(std::move(x));
  }
  std::erase_if(out, [](const Term& x) { return sgn(x.coeff) == 0; });
  return out;
}

}  // namespace

Poly::Poly(UniversePtr u, std::vector<Term> terms)
    : u_(std::move(u)), terms_(canonical(std::move(terms))) {}

Poly Poly::constant(UniversePtr u, const Rational& c) {
  return monomial(std::move(u), c, Mono{});
}

Poly Poly::monomial(UniversePtr u, const Rational& c, Mono m) {
  Poly p(std::move(u));
  if (sgn(c) != 0) p.terms_.push_back({std::move(m), c});
  return p;
}

void Poly::check_same(const Poly& o) const {
  if (u_ != o.u_ && !(u_ && o.u_ && u_.get() == o.u_.get()))
    throw AlgebraError("polynomials live in different universes");
}

Poly Poly::operator+(const Poly& o) const {
  check_same(o);
  Poly r(u_);
  r.terms_.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin(), b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && a->mono < b->mono)) {
      r.terms_.push_back(*a++);
    } else if (a == terms_.end() || b->mono < a->mono) {
      r.terms_.push_back(*b++);
    } else {
      Rational c = a->coeff + b->coeff;
      if (sgn(c) != 0) r.terms_.push_back({a->mono, c});
      ++a, ++b;
    }
  }
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  check_same(o);
  std::unordered_map<Mono, Rational, MonoHash> acc;
  for (const auto& a : terms_)
    for (const auto& b : o.terms_) acc[a.mono * b.mono] += a.coeff * b.coeff;
  std::vector<Term> t;
  t.reserve(acc.size());
  for (auto& [m, c] : acc) t.push_back({m, c});
  return Poly(u_, std::move(t));
}

Poly Poly::scaled(const Rational& c, const Mono& m) const {
  Poly r(u_);
  if (sgn(c) == 0) return r;
  r.terms_.reserve(terms_.size());
  for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff * c});
  // Multiplying every monomial by m preserves the structural order only
  // when m is one; re-sort otherwise.
  if (!m.is_one()) std::sort(r.terms_.begin(), r.terms_.end(), term_less);
  return r;
}

bool Poly::operator==(const Poly& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  for (std::size_t i = 0; i < terms_.size(); ++i)
    if (terms_[i].mono != o.terms_[i].mono ||
        terms_[i].coeff != o.terms_[i].coeff)
      return false;
  return true;
}

std::uint64_t Poly::max_degree() const {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.mono.degree());
  return d;
}

bool Poly::has_only_blocks(std::initializer_list<Block> blocks) const {
  for (const auto& t : terms_)
    for (const auto& [v, e] : t.mono.entries())
      if (std::find(blocks.begin(), blocks.end(), u_->block(v)) == blocks.end())
        return false;
  return true;
}

Poly Poly::substitute(const std::vector<std::optional<Poly>>& images) const {
  std::map<std::pair<VarId, std::uint32_t>, Poly> powers;
  auto power = [&](VarId v, std::uint32_t e) -> const Poly& {
    auto key = std::make_pair(v, e);
    auto it = powers.find(key);
    if (it != powers.end()) return it->second;
    Poly p = constant(u_, 1);
    for (std::uint32_t i = 0; i < e; ++i) p = p * *images[v];
    return powers.emplace(key, std::move(p)).first->second;
  };
  Poly out(u_);
  std::vector<Term> acc;
  for (const auto& t : terms_) {
    Mono kept;
    Poly factor = constant(u_, t.coeff);
    for (const auto& [v, e] : t.mono.entries()) {
      if (v < images.size() && images[v])
        factor = factor * power(v, e);
      else
        kept = kept * Mono::var(v, e);
    }
    for (auto& ft : factor.terms_) acc.push_back({ft.mono * kept, ft.coeff});
  }
  return Poly(u_, std::move(acc));
}

// ---------------------------------------------------------------------------
// Printing and parsing

std::string to_string(const Mono& m, const VarUniverse& u) {
  if (m.is_one()) return "1";
  std::string s;
  for (const auto& [v, e] : m.entries()) {
    if (!s.empty()) s += '*';
    s += u.name(v);
    if (e != 1) s += '^' + std::to_string(e);
  }
  return s;
}

std::string to_string(const Poly& p, const MonomialOrder& ord) {
  if (p.is_zero()) return "0";
  std::vector<const Term*> ts;
  for (const auto& t : p.terms()) ts.push_back(&t);
  std::sort(ts.begin(), ts.end(), [&](const Term* a, const Term* b) {
    auto c = ord.compare(a->mono, b->mono);
    if (c != 0) return c > 0;
    return b->mono < a->mono;
  });
  std::string s;
  bool first = true;
  for (const Term* t : ts) {
    Rational c = t->coeff;
    bool neg = sgn(c) < 0;
    if (neg) c = -c;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    if (t->mono.is_one()) {
      s += c.get_str();
    } else {
      if (c != 1) s += c.get_str() + "*";
      s += to_string(t->mono, *p.universe());
    }
  }
  return s;
}

std::string to_string(const Poly& p) {
  return to_string(p, MonomialOrder::standard(*p.universe(), OrderKind::GRLEX));
}

namespace {

class PolyParser {
 public:
  PolyParser(std::string_view s, const UniversePtr& u) : s_(s), u_(u) {}

  Poly parse() {
    Poly p = expr();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw AlgebraError("parse error at offset " + std::to_string(i_) + " in '" +
                       std::string(s_) + "': " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) {
      ++i_;
      return true;
    }
    return false;
  }

  Poly expr() {
    Poly acc(u_);
    bool neg = false;
    if (eat('-'))
      neg = true;
    else
      eat('+');
    Poly t = term();
    acc = neg ? -t : t;
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        break;
    }
    return acc;
  }

  Poly term() {
    Poly p = factor();
    while (eat('*')) p = p * factor();
    return p;
  }

  Poly factor() {
    Poly base = primary();
    if (eat('^')) {
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_])))
        ++i_;
      if (st == i_) fail("expected exponent");
      unsigned long e = std::stoul(std::string(s_.substr(st, i_ - st)));
      Poly r = Poly::constant(u_, 1);
      for (unsigned long k = 0; k < e; ++k) r = r * base;
      return r;
    }
    return base;
  }

  Poly primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Poly p = expr();
      if (!eat(')')) fail("expected ')'");
      return p;
    }
    if (c == '-') {
      ++i_;
      return -primary();
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() &&
             (std::isdigit(static_cast<unsigned char>(s_[i_])) || s_[i_] == '/'))
        ++i_;
      return Poly::constant(u_, Rational(std::string(s_.substr(st, i_ - st))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) ||
                                s_[i_] == '_'))
        ++i_;
      if (i_ < s_.size() && s_[i_] == '[') {
        while (i_ < s_.size() && s_[i_] != ']') ++i_;
        if (i_ == s_.size()) fail("unterminated '['");
        ++i_;
      }
      std::string name(s_.substr(st, i_ - st));
      // Names may carry internal spaces after commas; normalize them away.
      std::erase(name, ' ');
      auto v = u_->find(name);
      if (!v) fail("unknown variable '" + name + "'");
      return Poly::var(u_, *v);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  const UniversePtr& u_;
  std::size_t i_ = 0;
};

}  // namespace

Poly parse_poly(std::string_view text, const UniversePtr& u) {
  return PolyParser(text, u).parse();
}

Poly translate(const Poly& p, const UniversePtr& target) {
  std::vector<Term> out;
  for (const auto& t : p.terms()) {
    std::vector<Mono::Entry> es;
    for (const auto& [v, e] : t.mono.entries()) {
      auto id = target->find(p.universe()->name(v));
      if (!id)
        throw AlgebraError("variable '" + p.universe()->name(v) +
                           "' missing from target universe");
      es.push_back({*id, e});
    }
    out.push_back({Mono(std::move(es)), t.coeff});
  }
  return Poly(target, std::move(out));
}

// ---------------------------------------------------------------------------
// Leading terms

Leading leading(const Poly& p, const MonomialOrder& ord) {
  if (p.is_zero()) throw AlgebraError("leading term of the zero polynomial");
  const Term* best = nullptr;
  Mono best_lm;
  for (const auto& t : p.terms()) {
    Mono r = ord.ranked_part(t.mono);
    if (!best || ord.compare(r, best_lm) > 0) {
      best = &t;
      best_lm = std::move(r);
    }
  }
  std::vector<Term> lc;
  for (const auto& t : p.terms())
    if (ord.ranked_part(t.mono) == best_lm)
      lc.push_back({ord.coefficient_part(t.mono), t.coeff});
  return {Poly(p.universe(), std::move(lc)), std::move(best_lm)};
}

Mono leading_monomial(const Poly& p, const MonomialOrder& ord) {
  if (p.is_zero()) throw AlgebraError("leading term of the zero polynomial");
  Mono best;
  bool have = false;
  for (const auto& t : p.terms()) {
    Mono r = ord.ranked_part(t.mono);
    if (!have || ord.compare(r, best) > 0) best = std::move(r), have = true;
  }
  return best;
}

bool is_unit(CoeffDomain d, const Rational& c) {
  if (d == CoeffDomain::QQ) return sgn(c) != 0;
  return c == 1 || c == -1;
}

std::optional<STerm> as_s_term(const Poly& c) {
  if (c.size() != 1) return std::nullopt;
  const Term& t = c.terms().front();
  const VarUniverse& u = *c.universe();
  for (const auto& [v, e] : t.mono.entries())
    if (u.block(v) != Block::S) return std::nullopt;
  if (!is_unit(u.domain(), t.coeff)) return std::nullopt;
  return STerm{t.coeff, t.mono};
}

bool is_s_monomial_type(const Poly& p, const MonomialOrder& ord) {
  return as_s_term(leading(p, ord).lc).has_value();
}

}  // namespace mrees
