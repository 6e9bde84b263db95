#include "mrees/linalg.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace mrees {

ZVec make_zvec(std::vector<std::pair<std::size_t, mpz_class>> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  ZVec out;
  for (auto& [i, c] : entries) {
    if (!out.empty() && out.back().first == i)
      out.back().second += c;
    else
      out.emplace_back(i, std::move(c));
    if (out.back().second == 0) out.pop_back();
  }
  return out;
}

void make_primitive(ZVec& v) {
  if (v.empty()) return;
  mpz_class g = 0;
  for (const auto& [i, c] : v) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  if (sgn(v.front().second) < 0) g = -g;
  if (g != 1)
    for (auto& [i, c] : v) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

namespace {

// a*x - b*y
ZVec combine(const mpz_class& a, const ZVec& x, const mpz_class& b, const ZVec& y) {
  ZVec out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      out.emplace_back(x[i].first, a * x[i].second);
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      out.emplace_back(y[j].first, -b * y[j].second);
      ++j;
    } else {
      mpz_class c = a * x[i].second - b * y[j].second;
      if (c != 0) out.emplace_back(x[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

BareissResult bareiss_rref(const ZMatrix& a, std::size_t cols, bool track_transform) {
  const std::size_t m = a.size();
  const std::size_t width = cols + (track_transform ? m : 0);
  ZMatrix M(m, std::vector<mpz_class>(width));
  for (std::size_t i = 0; i < m; ++i) {
    if (a[i].size() != cols) throw std::invalid_argument("ragged matrix");
    for (std::size_t j = 0; j < cols; ++j) M[i][j] = a[i][j];
    if (track_transform) M[i][cols + i] = 1;
  }
  BareissResult res;
  mpz_class prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m; ++c) {
    std::size_t p = r;
    while (p < m && M[p][c] == 0) ++p;
    if (p == m) continue;
    std::swap(M[p], M[r]);
    const mpz_class piv = M[r][c];
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r) continue;
      const mpz_class f = M[i][c];
      for (std::size_t j = 0; j < width; ++j) {
        mpz_class v = piv * M[i][j] - f * M[r][j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        M[i][j] = std::move(v);
      }
    }
    prev = piv;
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.scale = prev;
  res.reduced.assign(m, std::vector<mpz_class>(cols));
  if (track_transform) res.transform.assign(m, std::vector<mpz_class>(m));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < cols; ++j) res.reduced[i][j] = M[i][j];
    if (track_transform)
      for (std::size_t j = 0; j < m; ++j) res.transform[i][j] = M[i][cols + j];
  }
  return res;
}

std::size_t rank(const ZMatrix& a, std::size_t cols) {
  return bareiss_rref(a, cols).pivot_cols.size();
}

std::vector<ZVec> nullspace(const ZMatrix& a, std::size_t cols) {
  auto res = bareiss_rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : res.pivot_cols) is_pivot[c] = true;
  std::vector<ZVec> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<std::pair<std::size_t, mpz_class>> e;
    e.emplace_back(f, res.scale);
    for (std::size_t k = 0; k < res.pivot_cols.size(); ++k)
      if (res.reduced[k][f] != 0) e.emplace_back(res.pivot_cols[k], -res.reduced[k][f]);
    ZVec v = make_zvec(std::move(e));
    make_primitive(v);
    out.push_back(std::move(v));
  }
  return out;
}

// ---------------------------------------------------------------------------

ZVec IntegerEchelon::reduce(ZVec v) const {
  while (!v.empty()) {
    auto it = rows_.find(v.front().first);
    if (it == rows_.end()) break;
    const ZVec& row = it->second;
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), row.front().second.get_mpz_t(), v.front().second.get_mpz_t());
    mpz_class a = row.front().second / g, b = v.front().second / g;
    v = combine(a, v, b, row);
    make_primitive(v);
  }
  return v;
}

bool IntegerEchelon::insert(ZVec v) {
  make_primitive(v);
  ZVec r = reduce(std::move(v));
  if (r.empty()) return false;
  std::size_t lead = r.front().first;
  rows_.emplace(lead, std::move(r));
  return true;
}

bool IntegerEchelon::contains(ZVec v) const {
  make_primitive(v);
  return reduce(std::move(v)).empty();
}

std::size_t span_rank(const std::vector<ZVec>& vectors) {
  IntegerEchelon e;
  for (const auto& v : vectors) e.insert(v);
  return e.rank();
}

// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<std::size_t> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  std::size_t find(std::size_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
};

ZVec image_of(const LinearPiece& piece, const ZVec& v) {
  std::vector<std::pair<std::size_t, mpz_class>> acc;
  for (const auto& [i, c] : v)
    for (const auto& [k, d] : piece.columns[i]) acc.emplace_back(k, c * d);
  return make_zvec(std::move(acc));
}

struct Blocks {
  std::vector<std::vector<std::size_t>> members;  // global source ids, ascending
  std::vector<std::size_t> block_of;
  std::vector<std::size_t> local;  // index within the block
};

Blocks make_blocks(const LinearPiece& piece, bool with_span) {
  const std::size_t n = piece.n_sources;
  UnionFind uf(n);
  std::map<std::size_t, std::size_t> first_with_coord;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [k, c] : piece.columns[i]) {
      auto [it, fresh] = first_with_coord.emplace(k, i);
      if (!fresh) uf.unite(i, it->second);
    }
  if (with_span)
    for (const auto& v : piece.span_vectors)
      for (std::size_t t = 1; t < v.size(); ++t) uf.unite(v[0].first, v[t].first);
  Blocks b;
  b.block_of.assign(n, 0);
  b.local.assign(n, 0);
  std::map<std::size_t, std::size_t> root_to_block;
  for (std::size_t i = 0; i < n; ++i) {
    auto [it, fresh] = root_to_block.emplace(uf.find(i), b.members.size());
    if (fresh) b.members.emplace_back();
    b.block_of[i] = it->second;
    b.local[i] = b.members[it->second].size();
    b.members[it->second].push_back(i);
  }
  return b;
}

// Columns of the block as a dense image-coordinate x source matrix.
ZMatrix block_matrix(const LinearPiece& piece, const std::vector<std::size_t>& members) {
  std::map<std::size_t, std::size_t> row_of;
  for (auto i : members)
    for (const auto& [k, c] : piece.columns[i]) row_of.emplace(k, 0);
  std::size_t r = 0;
  for (auto& [k, idx] : row_of) idx = r++;
  ZMatrix M(row_of.size(), std::vector<mpz_class>(members.size()));
  for (std::size_t j = 0; j < members.size(); ++j)
    for (const auto& [k, c] : piece.columns[members[j]]) M[row_of[k]][j] = c;
  return M;
}

std::size_t block_image_rank(const LinearPiece& piece, const std::vector<std::size_t>& members) {
  bool monomial = true;
  std::vector<std::size_t> coords;
  for (auto i : members) {
    if (piece.columns[i].size() != 1) monomial = false;
    for (const auto& [k, c] : piece.columns[i]) coords.push_back(k);
  }
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  // Single-entry columns: rank is the number of distinct image coordinates.
  if (monomial) return coords.size();
  IntegerEchelon e;
  for (auto i : members) e.insert(piece.columns[i]);
  return e.rank();
}

ZVec to_local(const ZVec& v, const Blocks& b) {
  ZVec out;
  for (const auto& [i, c] : v) out.emplace_back(b.local[i], c);
  return out;
}

ZVec to_global(const ZVec& v, const std::vector<std::size_t>& members) {
  ZVec out;
  for (const auto& [i, c] : v) out.emplace_back(members[i], c);
  return out;
}

}  // namespace

PieceAnalysis analyze_piece(const LinearPiece& piece, std::size_t max_witnesses,
                            bool full_rank) {
  if (piece.columns.size() != piece.n_sources)
    throw std::invalid_argument("one column per source is required");
  PieceAnalysis out;
  for (std::size_t v = 0; v < piece.span_vectors.size(); ++v)
    if (!image_of(piece, piece.span_vectors[v]).empty()) out.outside_kernel.push_back(v);

  Blocks b = make_blocks(piece, true);
  std::vector<std::vector<std::size_t>> vecs_of(b.members.size());
  for (std::size_t v = 0; v < piece.span_vectors.size(); ++v)
    if (!piece.span_vectors[v].empty())
      vecs_of[b.block_of[piece.span_vectors[v].front().first]].push_back(v);
  std::vector<bool> outside(piece.span_vectors.size(), false);
  for (auto v : out.outside_kernel) outside[v] = true;

  for (std::size_t blk = 0; blk < b.members.size(); ++blk) {
    const auto& members = b.members[blk];
    const std::size_t kdim = members.size() - block_image_rank(piece, members);
    out.kernel_dim += kdim;
    bool clean = true;
    for (auto v : vecs_of[blk]) clean = clean && !outside[v];
    IntegerEchelon e;
    for (auto v : vecs_of[blk]) {
      if (!full_rank && clean && e.rank() >= kdim) break;
      e.insert(to_local(piece.span_vectors[v], b));
    }
    out.span_rank += e.rank();
    if ((clean && e.rank() >= kdim) || kdim == 0) continue;
    const std::size_t limit = std::max<std::size_t>(max_witnesses, 1);
    for (const auto& k : nullspace(block_matrix(piece, members), members.size())) {
      if (out.missing.size() >= limit) break;
      if (!e.contains(k)) out.missing.push_back(to_global(k, members));
    }
  }
  return out;
}

std::vector<ZVec> kernel_basis(const LinearPiece& piece) {
  Blocks b = make_blocks(piece, false);
  std::vector<ZVec> out;
  for (const auto& members : b.members)
    for (const auto& k : nullspace(block_matrix(piece, members), members.size()))
      out.push_back(to_global(k, members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mrees
