#include "mrees/quasimat.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace mrees {

// ---------------------------------------------------------------------------
// QuasiMatrix

QuasiMatrix::QuasiMatrix(UniversePtr u, int rows, int cols)
    : u_(std::move(u)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw AlgebraError("negative quasi-matrix shape");
  cells_.resize(static_cast<std::size_t>(rows) * cols);
}

std::size_t QuasiMatrix::idx(Position p) const {
  if (p.row < 0 || p.row >= rows_ || p.col < 0 || p.col >= cols_)
    throw AlgebraError("quasi-matrix position out of range");
  return static_cast<std::size_t>(p.row) * cols_ + p.col;
}

void QuasiMatrix::set(Position p, VarId v) {
  if (v >= u_->size()) throw AlgebraError("quasi-matrix entry is not a variable");
  auto& c = cells_[idx(p)];
  if (c) throw AlgebraError("quasi-matrix position already occupied");
  c = v;
}

std::optional<VarId> QuasiMatrix::at(Position p) const { return cells_[idx(p)]; }

std::vector<Position> QuasiMatrix::positions() const {
  std::vector<Position> ps;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (cells_[idx({r, c})]) ps.push_back({r, c});
  return ps;
}

std::size_t QuasiMatrix::entry_count() const {
  return static_cast<std::size_t>(
      std::count_if(cells_.begin(), cells_.end(), [](auto& c) { return c.has_value(); }));
}

QuasiMatrix QuasiMatrix::canonical() const {
  std::vector<int> keep_r, keep_c;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (has({r, c})) {
        keep_r.push_back(r);
        break;
      }
  for (int c = 0; c < cols_; ++c)
    for (int r = 0; r < rows_; ++r)
      if (has({r, c})) {
        keep_c.push_back(c);
        break;
      }
  QuasiMatrix out(u_, static_cast<int>(keep_r.size()), static_cast<int>(keep_c.size()));
  for (std::size_t i = 0; i < keep_r.size(); ++i)
    for (std::size_t j = 0; j < keep_c.size(); ++j)
      if (auto v = at({keep_r[i], keep_c[j]}))
        out.set({static_cast<int>(i), static_cast<int>(j)}, *v);
  return out;
}

QuasiMatrix QuasiMatrix::restricted_to(const std::vector<Position>& keep) const {
  QuasiMatrix out(u_, rows_, cols_);
  for (auto p : keep) {
    auto v = at(p);
    if (!v) throw AlgebraError("restriction to an empty position");
    out.set(p, *v);
  }
  return out;
}

std::string QuasiMatrix::pretty(const std::vector<std::string>& row_labels) const {
  std::vector<std::size_t> width(cols_, 0);
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c)
      if (auto v = at({r, c})) width[c] = std::max(width[c], u_->name(*v).size());
  std::size_t lw = 0;
  for (const auto& l : row_labels) lw = std::max(lw, l.size());
  std::string out;
  for (int r = 0; r < rows_; ++r) {
    std::string line;
    if (!row_labels.empty()) {
      std::string l = r < static_cast<int>(row_labels.size()) ? row_labels[r] : "";
      line += l + std::string(lw - l.size(), ' ') + " |";
    }
    for (int c = 0; c < cols_; ++c) {
      std::string cell;
      if (auto v = at({r, c})) cell = u_->name(*v);
      line += ' ' + cell + std::string(width[c] - cell.size(), ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out += line + '\n';
  }
  return out;
}

bool QuasiMatrix::operator==(const QuasiMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) return false;
  for (int r = 0; r < rows_; ++r)
    for (int c = 0; c < cols_; ++c) {
      auto a = at({r, c}), b = o.at({r, c});
      if (a.has_value() != b.has_value()) return false;
      if (a && u_->name(*a) != o.u_->name(*b)) return false;
    }
  return true;
}

// ---------------------------------------------------------------------------
// BinaryQuasiMatrix

bool BinaryQuasiMatrix::is_binary(const std::vector<Position>& entries) {
  if (entries.empty()) return false;
  std::map<int, int> rc, cc;
  std::set<Position> seen;
  for (auto p : entries) {
    if (!seen.insert(p).second) return false;
    ++rc[p.row];
    ++cc[p.col];
  }
  for (auto& [k, v] : rc)
    if (v != 2) return false;
  for (auto& [k, v] : cc)
    if (v != 2) return false;
  return true;
}

BinaryQuasiMatrix::BinaryQuasiMatrix(const QuasiMatrix& a,
                                     std::vector<Position> entries)
    : entries_(std::move(entries)) {
  std::sort(entries_.begin(), entries_.end());
  if (!is_binary(entries_))
    throw AlgebraError("not a binary quasi-matrix: rows/columns need exactly two entries");
  for (auto p : entries_)
    if (!a.has(p)) throw AlgebraError("binary subquasi-matrix uses an empty position");

  std::map<int, std::vector<Position>> by_row, by_col;
  for (auto p : entries_) {
    by_row[p.row].push_back(p);
    by_col[p.col].push_back(p);
  }
  auto other = [](const std::vector<Position>& two, Position p) {
    return two[0] == p ? two[1] : two[0];
  };
  std::set<Position> visited;
  for (auto start : entries_) {
    if (visited.count(start)) continue;
    std::vector<Position> cyc;
    Position cur = start;
    bool along_row = true;
    do {
      cyc.push_back(cur);
      visited.insert(cur);
      cur = along_row ? other(by_row[cur.row], cur) : other(by_col[cur.col], cur);
      along_row = !along_row;
    } while (cur != start);
    cycles_.push_back(std::move(cyc));
  }
}

std::vector<int> BinaryQuasiMatrix::rows() const {
  std::set<int> s;
  for (auto p : entries_) s.insert(p.row);
  return {s.begin(), s.end()};
}

std::vector<int> BinaryQuasiMatrix::cols() const {
  std::set<int> s;
  for (auto p : entries_) s.insert(p.col);
  return {s.begin(), s.end()};
}

// ---------------------------------------------------------------------------
// Binomials

Poly product_of(const QuasiMatrix& a, const std::vector<Position>& ps) {
  std::vector<Mono::Entry> es;
  for (auto p : ps) {
    auto v = a.at(p);
    if (!v) throw AlgebraError("product over an empty position");
    es.push_back({*v, 1});
  }
  return Poly::monomial(a.universe(), 1, Mono(std::move(es)));
}

Poly quasi_minor_poly(const QuasiMatrix& a, const QuasiMinor& qm) {
  return product_of(a, qm.first) - product_of(a, qm.second);
}

Poly Binomial::to_poly(const UniversePtr& u) const {
  auto mono = [](const std::vector<VarId>& vs) {
    std::vector<Mono::Entry> es;
    for (VarId v : vs) es.push_back({v, 1});
    return Mono(std::move(es));
  };
  return Poly::monomial(u, 1, mono(plus)) - Poly::monomial(u, 1, mono(minus));
}

std::optional<Binomial> make_binomial(const QuasiMatrix& a, QuasiMinor qm) {
  auto ids = [&](const std::vector<Position>& ps) {
    std::vector<VarId> v;
    for (auto p : ps) v.push_back(*a.at(p));
    std::sort(v.begin(), v.end());
    return v;
  };
  std::sort(qm.first.begin(), qm.first.end());
  std::sort(qm.second.begin(), qm.second.end());
  auto f = ids(qm.first), s = ids(qm.second);
  if (f == s) return std::nullopt;
  Binomial b;
  if (f < s) {
    b.plus = std::move(f);
    b.minus = std::move(s);
    b.origin = std::move(qm);
  } else {
    b.plus = std::move(s);
    b.minus = std::move(f);
    b.origin = {std::move(qm.second), std::move(qm.first)};
  }
  return b;
}

// ---------------------------------------------------------------------------
// Enumeration

void binary_subquasi_enumerate(
    const QuasiMatrix& a, int max_size,
    const std::function<bool(const BinaryQuasiMatrix&)>& visit) {
  if (max_size > kMaxMinorSize)
    throw CapExceeded("binary quasi-minor size limited to " +
                      std::to_string(kMaxMinorSize));
  const int R = a.rows(), C = a.cols();
  std::vector<std::vector<int>> row_cols(R);
  std::vector<int> last_row(C, -1);
  for (auto p : a.positions()) {
    row_cols[p.row].push_back(p.col);
    last_row[p.col] = std::max(last_row[p.col], p.row);
  }
  std::vector<int> count(C, 0);
  std::vector<Position> chosen;
  int used_rows = 0;
  int open = 0;  // columns holding exactly one chosen entry
  bool stop = false;

  auto feasible = [&](int r) {
    if (open > 2 * (R - r)) return false;
    for (int c = 0; c < C; ++c)
      if (count[c] == 1 && last_row[c] < r) return false;
    return true;
  };

  auto rec = [&](auto& self, int r) -> void {
    if (stop || !feasible(r)) return;
    if (r == R) {
      if (used_rows > 0 && open == 0)
        stop = !visit(BinaryQuasiMatrix(a, chosen));
      return;
    }
    self(self, r + 1);
    if (used_rows >= max_size) return;
    const auto& cs = row_cols[r];
    for (std::size_t i = 0; i < cs.size() && !stop; ++i) {
      if (count[cs[i]] >= 2) continue;
      for (std::size_t j = i + 1; j < cs.size() && !stop; ++j) {
        if (count[cs[j]] >= 2) continue;
        for (int c : {cs[i], cs[j]}) {
          open += (count[c] == 0) ? 1 : -1;
          ++count[c];
        }
        chosen.push_back({r, cs[i]});
        chosen.push_back({r, cs[j]});
        ++used_rows;
        self(self, r + 1);
        --used_rows;
        chosen.pop_back();
        chosen.pop_back();
        for (int c : {cs[i], cs[j]}) {
          --count[c];
          open += (count[c] == 0) ? -1 : 1;
        }
      }
    }
  };
  rec(rec, 0);
}

std::vector<BinaryQuasiMatrix> binary_subquasi_list(const QuasiMatrix& a,
                                                    int max_size) {
  std::vector<BinaryQuasiMatrix> out;
  binary_subquasi_enumerate(a, max_size, [&](const BinaryQuasiMatrix& b) {
    out.push_back(b);
    return true;
  });
  return out;
}

std::vector<Binomial> quasi_determinants(const QuasiMatrix& a,
                                         const BinaryQuasiMatrix& b) {
  const auto& cyc = b.cycles();
  const std::size_t c = cyc.size();
  if (c == 0) throw AlgebraError("empty binary quasi-matrix");
  if (c > 20) throw CapExceeded("too many cycles in binary quasi-matrix");
  std::vector<Binomial> out;
  std::set<std::pair<std::vector<VarId>, std::vector<VarId>>> seen;
  for (std::uint64_t mask = 0; mask < (1ULL << (c - 1)); ++mask) {
    QuasiMinor qm;
    for (std::size_t k = 0; k < c; ++k) {
      std::size_t parity = k == 0 ? 0 : ((mask >> (k - 1)) & 1);
      for (std::size_t i = 0; i < cyc[k].size(); ++i)
        (i % 2 == parity ? qm.first : qm.second).push_back(cyc[k][i]);
    }
    auto bin = make_binomial(a, std::move(qm));
    if (bin && seen.insert({bin->plus, bin->minus}).second) out.push_back(std::move(*bin));
  }
  return out;
}

std::vector<Binomial> ibin_generators(const QuasiMatrix& a, int max_size) {
  std::vector<Binomial> out;
  std::set<std::pair<std::vector<VarId>, std::vector<VarId>>> seen;
  binary_subquasi_enumerate(a, max_size, [&](const BinaryQuasiMatrix& b) {
    for (auto& bin : quasi_determinants(a, b))
      if (seen.insert({bin.plus, bin.minus}).second) out.push_back(std::move(bin));
    return true;
  });
  return out;
}

// ---------------------------------------------------------------------------
// I_bin = I_2 rewriting

namespace {

void check_quasi_minor(const QuasiMinor& d) {
  std::vector<Position> all = d.first;
  all.insert(all.end(), d.second.begin(), d.second.end());
  if (!BinaryQuasiMatrix::is_binary(all))
    throw AlgebraError("positions do not form a binary quasi-matrix");
  std::map<int, int> rows, cols;
  for (auto p : d.first) ++rows[p.row], ++cols[p.col];
  for (auto& [k, v] : rows)
    if (v != 1) throw AlgebraError("first term is not a matching");
  for (auto& [k, v] : cols)
    if (v != 1) throw AlgebraError("first term is not a matching");
}

void rewrite_rec(const QuasiMatrix& a, std::vector<Position> V,
                 std::vector<Position> W, const Poly& outer,
                 std::vector<MinorTerm>& out) {
  if (V.empty()) return;
  auto find_if_pos = [](const std::vector<Position>& xs, auto pred) {
    return std::find_if(xs.begin(), xs.end(), pred);
  };
  // V1: the first-term entry in the bottom-most row.
  auto v1 = std::max_element(V.begin(), V.end(),
                             [](Position x, Position y) { return x.row < y.row; });
  Position V1 = *v1;
  Position W1 = *find_if_pos(W, [&](Position p) { return p.row == V1.row; });
  Position V2 = *find_if_pos(V, [&](Position p) { return p.col == W1.col; });
  Position U{V2.row, V1.col};

  std::vector<Position> rest;
  for (auto p : V)
    if (p != V1 && p != V2) rest.push_back(p);
  Poly minor = product_of(a, {V1, V2}) - product_of(a, {U, W1});
  out.push_back({outer * product_of(a, rest), std::min(V1.row, V2.row),
                 std::max(V1.row, V2.row), std::min(V1.col, W1.col),
                 std::max(V1.col, W1.col), std::move(minor)});

  std::vector<Position> W_rest;
  for (auto p : W)
    if (p != W1) W_rest.push_back(p);
  auto u_in_w = std::find(W_rest.begin(), W_rest.end(), U);
  if (u_in_w != W_rest.end()) {
    W_rest.erase(u_in_w);
    rewrite_rec(a, std::move(rest), std::move(W_rest),
                outer * product_of(a, {W1, U}), out);
  } else {
    rest.push_back(U);
    rewrite_rec(a, std::move(rest), std::move(W_rest), outer * product_of(a, {W1}),
                out);
  }
}

}  // namespace

Poly MinorCertificate::expand(const UniversePtr& u) const {
  Poly acc(u);
  for (const auto& t : terms) acc += t.multiplier * t.minor;
  return acc;
}

MinorCertificate rewrite_as_two_minors(const QuasiMinor& delta,
                                       const QuasiMatrix& a) {
  if (!a.is_full()) throw AlgebraError("rewriting needs a matrix without empty positions");
  check_quasi_minor(delta);
  for (auto p : delta.first)
    if (!a.has(p)) throw AlgebraError("quasi-minor position outside the matrix");
  for (auto p : delta.second)
    if (!a.has(p)) throw AlgebraError("quasi-minor position outside the matrix");
  MinorCertificate cert;
  rewrite_rec(a, delta.first, delta.second, Poly::constant(a.universe(), 1),
              cert.terms);
  return cert;
}

}  // namespace mrees
