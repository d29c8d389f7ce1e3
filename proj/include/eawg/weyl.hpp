#pragma once

// Normal-form arithmetic in the Weyl group W of type A_1.
//
// Every element is written uniquely as w^d * t_1^{n_1} ... t_nu^{n_nu} * prod c_{r,s}^{c_{r,s}}
// with w = w_{alpha_1}, t_r = w_{alpha_1+sigma_r} w_{alpha_1} and c_{r,s} central.
// The defining rules are
//   w t_r w = t_r^{-1},    t_s^a t_r^b = t_r^b t_s^a c_{r,s}^{-2ab}  (r < s),
// the second being [t_r,t_s] = c_{r,s}^2 with [x,y] = x^-1 y^-1 x y.
// The c-exponents range over all of C, so the representation also covers the
// ambient group <w, t_r, c_{r,s}>; elements of W are those reachable from
// reflections.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "error.hpp"
#include "rep.hpp"
#include "semilattice.hpp"

namespace eawg {

/// Exponents of c_{r,s}, r<s, in pair_index order.
using CentralVector = std::vector<std::int64_t>;

struct WeylElement {
  int d = 0;
  std::vector<std::int64_t> n;
  CentralVector c;

  static WeylElement identity(int rank) { return {0, std::vector<std::int64_t>(rank, 0), CentralVector(pair_count(rank), 0)}; }
  int rank() const { return static_cast<int>(n.size()); }
  bool is_identity() const {
    if (d != 0) return false;
    for (auto x : n)
      if (x) return false;
    for (auto x : c)
      if (x) return false;
    return true;
  }

  friend bool operator==(const WeylElement&, const WeylElement&) = default;
};

namespace weyl {

inline WeylElement w_alpha1(int rank) {
  auto e = WeylElement::identity(rank);
  e.d = 1;
  return e;
}

inline WeylElement t(int rank, int r, std::int64_t power = 1) {
  auto e = WeylElement::identity(rank);
  e.n[r] = power;
  return e;
}

/// T(v) = t_1^{v_1} ... t_nu^{v_nu}.
inline WeylElement translation(std::vector<std::int64_t> v) {
  auto e = WeylElement::identity(static_cast<int>(v.size()));
  e.n = std::move(v);
  return e;
}

/// c_{r,s}; for r > s this is c_{s,r}^{-1}.
inline WeylElement c(int rank, int r, int s, std::int64_t power = 1) {
  auto e = WeylElement::identity(rank);
  if (r == s) return e;
  if (r < s)
    e.c[pair_index(rank, r, s)] = power;
  else
    e.c[pair_index(rank, s, r)] = -power;
  return e;
}

inline WeylElement central(int rank, CentralVector cv) {
  auto e = WeylElement::identity(rank);
  e.c = std::move(cv);
  return e;
}

}  // namespace weyl

inline WeylElement mul(const WeylElement& a, const WeylElement& b) {
  if (a.rank() != b.rank() || a.c.size() != b.c.size()) throw Error(ErrorKind::RankMismatch, "operands differ in rank");
  using detail::checked_add;
  using detail::checked_mul;
  using detail::checked_sub;
  const int nu = a.rank();
  WeylElement out;
  out.d = a.d ^ b.d;
  // Moving b's w^{d} to the left inverts a's translations.
  std::vector<std::int64_t> left(a.n);
  if (b.d)
    for (auto& x : left) x = -x;
  out.n.resize(nu);
  for (int r = 0; r < nu; ++r) out.n[r] = checked_add(left[r], b.n[r]);
  out.c.resize(a.c.size());
  for (std::size_t p = 0; p < a.c.size(); ++p) out.c[p] = checked_add(a.c[p], b.c[p]);
  for (int r = 0; r < nu; ++r) {
    if (b.n[r] == 0) continue;
    for (int s = r + 1; s < nu; ++s) {
      if (left[s] == 0) continue;
      auto& cp = out.c[pair_index(nu, r, s)];
      cp = checked_sub(cp, checked_mul(2, checked_mul(left[s], b.n[r])));
    }
  }
  return out;
}

inline WeylElement inv(const WeylElement& a) {
  const int nu = a.rank();
  WeylElement out;
  out.d = a.d;
  std::vector<std::int64_t> flipped(a.n);
  if (a.d)
    for (auto& x : flipped) x = -x;
  out.n.resize(nu);
  for (int r = 0; r < nu; ++r) out.n[r] = -flipped[r];
  out.c.resize(a.c.size());
  for (int r = 0; r < nu; ++r)
    for (int s = r + 1; s < nu; ++s) {
      const auto p = pair_index(nu, r, s);
      out.c[p] = detail::checked_sub(-a.c[p], detail::checked_mul(2, detail::checked_mul(flipped[s], flipped[r])));
    }
  return out;
}

inline WeylElement pow(const WeylElement& a, std::int64_t k) {
  WeylElement base = k < 0 ? inv(a) : a;
  if (k < 0) k = -k;
  auto out = WeylElement::identity(a.rank());
  while (k > 0) {
    if (k & 1) out = mul(out, base);
    k >>= 1;
    if (k) base = mul(base, base);
  }
  return out;
}

/// x^-1 y^-1 x y.
inline WeylElement commutator(const WeylElement& x, const WeylElement& y) {
  return mul(mul(inv(x), inv(y)), mul(x, y));
}

/// Exponent vector of z_J over the c_{r,s}.
inline CentralVector z_vector(const SemilatticeContext& ctx, SubsetMask J) {
  const int nu = ctx.rank();
  CentralVector v(pair_count(nu), 0);
  const auto el = J.elements();
  if (ctx.contains(J)) {
    for (std::size_t i = 0; i < el.size(); ++i)
      for (std::size_t j = i + 1; j < el.size(); ++j) v[pair_index(nu, el[i], el[j])] = 1;
  } else if (J.size() == 2) {
    v[pair_index(nu, el[0], el[1])] = 2;
  }
  return v;
}

/// w_alpha in normal form. With alpha = e*alpha_1 + tau_J + 2*lambda:
///   w_{alpha_1+tau_J} = w z_J (t_J)^{-1},   t_J = prod_{r in J} t_r,
///   w_{alpha_1+tau_J+2 lambda} = T(lambda) w_{alpha_1+tau_J} T(lambda)^{-1},
///   w_{-alpha} = w_alpha.
inline WeylElement from_reflection(const SemilatticeContext& ctx, const Root& a) {
  const auto info = require_root(ctx, a);
  const int nu = ctx.rank();
  std::vector<std::int64_t> tau(nu, 0);
  for (int r : info.support.elements()) tau[r] = 1;
  const auto base = mul(mul(weyl::w_alpha1(nu), weyl::central(nu, z_vector(ctx, info.support))), inv(weyl::translation(tau)));
  const auto shift = weyl::translation(info.lambda);
  auto g = mul(mul(shift, base), inv(shift));
  if (a.sign < 0) {
    const auto w = weyl::w_alpha1(nu);
    g = mul(mul(w, g), w);
  }
  return g;
}

/// Image of a root: c's act trivially, T(n) adds 2e*n, w flips the sign.
inline Root act(const SemilatticeContext& ctx, const WeylElement& w, const Root& a) {
  require_root(ctx, a);
  if (w.rank() != ctx.rank()) throw Error(ErrorKind::RankMismatch, "element rank differs from context");
  Root out = a;
  for (int r = 0; r < ctx.rank(); ++r)
    out.coeffs[r] = detail::checked_add(a.coeffs[r], detail::checked_mul(2 * a.sign, w.n[r]));
  if (w.d) out.sign = -out.sign;
  return out;
}

inline RepMatrix to_matrix(const WeylElement& w) {
  const int nu = w.rank();
  auto m = RepMatrix::identity(tilde_dim(nu));
  if (w.d) m = w_alpha1_matrix(nu);
  for (int r = 0; r < nu; ++r)
    if (w.n[r]) m = m * signed_power(t_matrix(nu, r), t_inverse_matrix(nu, r), w.n[r]);
  for (int r = 0; r < nu; ++r)
    for (int s = r + 1; s < nu; ++s) {
      const auto k = w.c[pair_index(nu, r, s)];
      if (k) m = m * signed_power(c_matrix(nu, r, s), c_matrix(nu, s, r), k);
    }
  return m;
}

inline std::string to_string(const WeylElement& w) {
  std::string s = "w^" + std::to_string(w.d) + " * t[";
  for (std::size_t r = 0; r < w.n.size(); ++r) s += (r ? "," : "") + std::to_string(w.n[r]);
  s += "]";
  const int nu = w.rank();
  for (int r = 0; r < nu; ++r)
    for (int q = r + 1; q < nu; ++q) {
      const auto k = w.c[pair_index(nu, r, q)];
      if (k) s += " * c{" + std::to_string(r + 1) + "," + std::to_string(q + 1) + "}^" + std::to_string(k);
    }
  return s;
}

/// Folds a word of reflections, leftmost factor first.
inline WeylElement fold_word(const SemilatticeContext& ctx, const std::vector<Root>& word) {
  auto acc = WeylElement::identity(ctx.rank());
  for (const auto& a : word) acc = mul(acc, from_reflection(ctx, a));
  return acc;
}

// ---------------------------------------------------------------------------
// Center membership

struct CentralDecomposition {
  std::vector<SubsetMask> generators;  // the z_J used, nonzero coefficients only
  std::vector<std::int64_t> coeffs;
};

/// All J whose z_J is not trivially the identity: members with |J| >= 2 and
/// non-member pairs.
inline std::vector<SubsetMask> z_generators(const SemilatticeContext& ctx) {
  std::vector<SubsetMask> out;
  for (auto J : ctx.supp().members)
    if (J.size() >= 2) out.push_back(J);
  for (int r = 0; r < ctx.rank(); ++r)
    for (int s = r + 1; s < ctx.rank(); ++s)
      if (!ctx.contains(SubsetMask::pair(r, s))) out.push_back(SubsetMask::pair(r, s));
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// Integer solution of A x = b (A given by columns) via column-style Hermite
// reduction with a unimodular transform. Returns nullopt when b is not in the
// column lattice.
inline std::optional<std::vector<std::int64_t>> solve_integer(const std::vector<std::vector<std::int64_t>>& cols,
                                                             const std::vector<std::int64_t>& b) {
  const std::size_t k = cols.size();
  const std::size_t p = b.size();
  auto H = cols;
  std::vector<std::vector<std::int64_t>> U(k, std::vector<std::int64_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) U[i][i] = 1;

  // column op: col[dst] -= q * col[src]
  auto axpy = [&](std::size_t dst, std::size_t src, std::int64_t q) {
    for (std::size_t i = 0; i < p; ++i) H[dst][i] = checked_sub(H[dst][i], checked_mul(q, H[src][i]));
    for (std::size_t i = 0; i < k; ++i) U[dst][i] = checked_sub(U[dst][i], checked_mul(q, U[src][i]));
  };

  std::vector<std::pair<std::size_t, std::size_t>> pivots;  // (row, col)
  std::size_t next = 0;
  for (std::size_t row = 0; row < p && next < k; ++row) {
    while (true) {
      std::size_t best = k;
      for (std::size_t j = next; j < k; ++j)
        if (H[j][row] != 0 && (best == k || std::llabs(H[j][row]) < std::llabs(H[best][row]))) best = j;
      if (best == k) break;
      bool others = false;
      for (std::size_t j = next; j < k; ++j) {
        if (j == best || H[j][row] == 0) continue;
        axpy(j, best, H[j][row] / H[best][row]);
        if (H[j][row] != 0) others = true;
      }
      if (!others) {
        std::swap(H[best], H[next]);
        std::swap(U[best], U[next]);
        pivots.emplace_back(row, next);
        ++next;
        break;
      }
    }
  }

  std::vector<std::int64_t> y(k, 0);
  std::size_t pi = 0;
  for (std::size_t row = 0; row < p; ++row) {
    std::int64_t resid = b[row];
    for (std::size_t j = 0; j < next; ++j) resid = checked_sub(resid, checked_mul(H[j][row], y[j]));
    if (pi < pivots.size() && pivots[pi].first == row) {
      const auto col = pivots[pi].second;
      // y[col] is still zero here, so resid already excludes it.
      if (resid % H[col][row] != 0) return std::nullopt;
      y[col] = resid / H[col][row];
      ++pi;
    } else if (resid != 0) {
      return std::nullopt;
    }
  }

  std::vector<std::int64_t> x(k, 0);
  for (std::size_t j = 0; j < k; ++j)
    for (std::size_t i = 0; i < k; ++i) x[i] = checked_add(x[i], checked_mul(y[j], U[j][i]));
  return x;
}

}  // namespace detail

/// Writes c as an integer combination of z_J exponent vectors (any valid
/// solution; they are not unique). `exclude` removes generators from the pool.
/// Returns nullopt when c is not in the lattice they span.
inline std::optional<CentralDecomposition> central_decompose(const SemilatticeContext& ctx, const CentralVector& c,
                                                             const std::vector<SubsetMask>& exclude = {}) {
  if (static_cast<int>(c.size()) != ctx.pair_count()) throw Error(ErrorKind::RankMismatch, "central vector length");
  std::vector<SubsetMask> gens;
  for (auto J : z_generators(ctx))
    if (std::find(exclude.begin(), exclude.end(), J) == exclude.end()) gens.push_back(J);
  std::vector<std::vector<std::int64_t>> cols;
  for (auto J : gens) cols.push_back(z_vector(ctx, J));
  auto x = detail::solve_integer(cols, c);
  if (!x) return std::nullopt;
  CentralDecomposition out;
  for (std::size_t i = 0; i < gens.size(); ++i)
    if ((*x)[i] != 0) {
      out.generators.push_back(gens[i]);
      out.coeffs.push_back((*x)[i]);
    }
  return out;
}

// ---------------------------------------------------------------------------
// Generation by Pi = { alpha_1 + tau_J : J in supp }

struct RootExpression {
  std::vector<Root> word;  // reflections in Pi, leftmost applied last
  Root base;               // member of Pi
};

/// alpha = w_{beta_1} ... w_{beta_k}(base) with every beta_i and base in Pi.
inline RootExpression express_root(const SemilatticeContext& ctx, const Root& a) {
  const auto info = require_root(ctx, a);
  const int nu = ctx.rank();
  RootExpression ex;
  ex.base = base_root(nu, info.support);
  const auto alpha1 = base_root(nu, SubsetMask{});
  if (a.sign < 0) ex.word.push_back(alpha1);
  for (int r = 0; r < nu; ++r) {
    const auto ar = base_root(nu, SubsetMask::singleton(r));
    const auto k = info.lambda[r];
    for (std::int64_t i = 0; i < std::llabs(k); ++i) {
      if (k > 0) {  // t_r = w_{alpha_1+sigma_r} w_{alpha_1}
        ex.word.push_back(ar);
        ex.word.push_back(alpha1);
      } else {
        ex.word.push_back(alpha1);
        ex.word.push_back(ar);
      }
    }
  }
  return ex;
}

}  // namespace eawg
