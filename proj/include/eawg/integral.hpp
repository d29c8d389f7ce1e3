#pragma once

// Integral collections. Over GF(2) the divisibility conditions for pairs with
// delta(r,s)=1 are vacuous and those with delta(r,s)=2 are parity checks, so
// the integral collections are exactly the nullspace of a binary matrix.

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

#include "error.hpp"
#include "semilattice.hpp"

namespace eawg {

/// eps_J for every J in Esupp(S).
using IntegralCollection = std::map<SubsetMask, int>;

inline IntegralCollection zero_collection(const SemilatticeContext& ctx) {
  IntegralCollection eps;
  for (auto J : ctx.esupp()) eps[J] = 0;
  return eps;
}

inline bool is_integral(const SemilatticeContext& ctx, const IntegralCollection& eps) {
  if (eps.size() != ctx.esupp().size()) throw Error(ErrorKind::KeyMismatch, "collection size differs from Esupp");
  for (auto J : ctx.esupp())
    if (!eps.count(J)) throw Error(ErrorKind::KeyMismatch, "missing key " + to_string(J));
  for (const auto& [J, v] : eps)
    if (v != 0 && v != 1) throw Error(ErrorKind::KeyMismatch, "value for " + to_string(J) + " is not 0/1");
  const int nu = ctx.rank();
  for (int r = 0; r < nu; ++r)
    for (int s = r + 1; s < nu; ++s) {
      int sum = 0;
      for (const auto& [J, v] : eps) sum += SemilatticeContext::delta_in(J, r, s) * v;
      if (sum % ctx.delta(r, s) != 0) return false;
    }
  return true;
}

/// Dense GF(2) row over an arbitrary number of columns.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t ncols) : words_((ncols + 63) / 64, 0) {}

  bool get(std::size_t c) const { return (words_[c / 64] >> (c % 64)) & 1u; }
  void set(std::size_t c, bool v = true) {
    if (v)
      words_[c / 64] |= (std::uint64_t{1} << (c % 64));
    else
      words_[c / 64] &= ~(std::uint64_t{1} << (c % 64));
  }
  BitRow& operator^=(const BitRow& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= o.words_[i];
    return *this;
  }
  bool any() const {
    for (auto w : words_)
      if (w) return true;
    return false;
  }
  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  std::vector<std::uint64_t> words_;
};

/// Rows: pairs {r,s} with delta(r,s)=2. Columns: Esupp(S) ascending.
/// Entry (row, col) is 1 iff the pair lies inside the column's set.
struct Gf2System {
  std::vector<std::pair<int, int>> rows;
  std::vector<SubsetMask> cols;
  std::vector<BitRow> entries;
};

inline Gf2System build_system(const SemilatticeContext& ctx) {
  Gf2System sys;
  sys.cols = ctx.esupp();
  const int nu = ctx.rank();
  for (int r = 0; r < nu; ++r)
    for (int s = r + 1; s < nu; ++s) {
      if (ctx.delta(r, s) != 2) continue;
      BitRow row(sys.cols.size());
      for (std::size_t c = 0; c < sys.cols.size(); ++c)
        if (SemilatticeContext::delta_in(sys.cols[c], r, s)) row.set(c);
      sys.rows.emplace_back(r, s);
      sys.entries.push_back(std::move(row));
    }
  return sys;
}

struct Nullspace {
  int n0 = 0;
  std::vector<IntegralCollection> basis;
};

namespace detail {

// In-place reduced row echelon form; returns pivot columns in order.
inline std::vector<std::size_t> rref(std::vector<BitRow>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c = 0; c < ncols && next < rows.size(); ++c) {
    std::size_t p = next;
    while (p < rows.size() && !rows[p].get(c)) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[next]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != next && rows[i].get(c)) rows[i] ^= rows[next];
    pivots.push_back(c);
    ++next;
  }
  rows.resize(next);
  return pivots;
}

}  // namespace detail

/// Nullspace of the system. The basis, read as rows over the ascending column
/// order, is in reduced row echelon form, so it is reproducible.
inline Nullspace nullspace(const Gf2System& sys) {
  const std::size_t ncols = sys.cols.size();
  auto rows = sys.entries;
  const auto pivots = detail::rref(rows, ncols);

  std::vector<bool> is_pivot(ncols, false);
  for (auto p : pivots) is_pivot[p] = true;

  std::vector<BitRow> kernel;
  for (std::size_t f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    BitRow v(ncols);
    v.set(f);
    for (std::size_t i = 0; i < pivots.size(); ++i)
      if (rows[i].get(f)) v.set(pivots[i]);
    kernel.push_back(std::move(v));
  }
  detail::rref(kernel, ncols);

  Nullspace ns;
  ns.n0 = static_cast<int>(kernel.size());
  for (const auto& v : kernel) {
    IntegralCollection eps;
    for (std::size_t c = 0; c < ncols; ++c) eps[sys.cols[c]] = v.get(c) ? 1 : 0;
    ns.basis.push_back(std::move(eps));
  }
  return ns;
}

inline int n0(const SemilatticeContext& ctx) { return nullspace(build_system(ctx)).n0; }

inline constexpr int kBruteForceCap = 24;

/// Counts integral collections by trying every 0/1 assignment against the
/// divisibility conditions directly.
inline std::uint64_t brute_force_count(const SemilatticeContext& ctx) {
  const auto& es = ctx.esupp();
  if (es.size() > kBruteForceCap) throw Error(ErrorKind::TooLarge, "Esupp has more than 24 members");
  const int nu = ctx.rank();
  struct Cond {
    int divisor;
    std::vector<int> members;  // positions J in Esupp with delta(J,r,s)=1
  };
  std::vector<Cond> conds;
  for (int r = 0; r < nu; ++r)
    for (int s = r + 1; s < nu; ++s) {
      Cond c{ctx.delta(r, s), {}};
      for (std::size_t j = 0; j < es.size(); ++j)
        if (SemilatticeContext::delta_in(es[j], r, s)) c.members.push_back(static_cast<int>(j));
      conds.push_back(std::move(c));
    }
  std::uint64_t count = 0;
  const std::uint64_t total = std::uint64_t{1} << es.size();
  for (std::uint64_t e = 0; e < total; ++e) {
    bool ok = true;
    for (const auto& c : conds) {
      int sum = 0;
      for (int j : c.members) sum += static_cast<int>((e >> j) & 1u);
      if (sum % c.divisor != 0) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
  }
  return count;
}

}  // namespace eawg
