#pragma once

// Faithful integer-matrix representation on the hyperbolic extension.
//
// Basis order is fixed: alpha_1, sigma_1..sigma_nu, lambda_1..lambda_nu.
// Matrices act on column vectors; column j holds the image of basis vector j.

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "error.hpp"
#include "semilattice.hpp"

namespace eawg {

inline int tilde_dim(int rank) { return 1 + 2 * rank; }
inline int alpha_index() { return 0; }
inline int sigma_index(int r) { return 1 + r; }
inline int lambda_index(int rank, int r) { return 1 + rank + r; }

struct TildeVector {
  std::vector<std::int64_t> coords;

  static TildeVector zero(int rank) { return {std::vector<std::int64_t>(tilde_dim(rank), 0)}; }
  static TildeVector basis(int rank, int i) {
    auto v = zero(rank);
    v.coords[i] = 1;
    return v;
  }
  /// e*alpha_1 + sum a_r sigma_r.
  static TildeVector of_root(const Root& a) {
    const int nu = static_cast<int>(a.coeffs.size());
    auto v = zero(nu);
    v.coords[alpha_index()] = a.sign;
    for (int r = 0; r < nu; ++r) v.coords[sigma_index(r)] = a.coeffs[r];
    return v;
  }
  int rank() const { return (static_cast<int>(coords.size()) - 1) / 2; }

  friend bool operator==(const TildeVector&, const TildeVector&) = default;
};

/// The extended form: (alpha_1,alpha_1)=2, (sigma_i,lambda_j)=delta_ij, rest 0.
inline std::int64_t form(const TildeVector& u, const TildeVector& v) {
  if (u.coords.size() != v.coords.size() || u.coords.size() % 2 == 0)
    throw Error(ErrorKind::DimensionMismatch, "form arguments differ in dimension");
  const int nu = u.rank();
  using detail::checked_add;
  using detail::checked_mul;
  std::int64_t acc = checked_mul(2, checked_mul(u.coords[0], v.coords[0]));
  for (int r = 0; r < nu; ++r) {
    acc = checked_add(acc, checked_mul(u.coords[sigma_index(r)], v.coords[lambda_index(nu, r)]));
    acc = checked_add(acc, checked_mul(u.coords[lambda_index(nu, r)], v.coords[sigma_index(r)]));
  }
  return acc;
}

/// Square integer matrix with overflow-checked arithmetic.
class RepMatrix {
 public:
  RepMatrix() = default;
  explicit RepMatrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0) {}

  static RepMatrix identity(int dim) {
    RepMatrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1;
    return m;
  }

  int dim() const { return dim_; }
  std::int64_t& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * dim_ + j]; }
  std::int64_t operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * dim_ + j]; }

  TildeVector column(int j) const {
    TildeVector v{std::vector<std::int64_t>(dim_)};
    for (int i = 0; i < dim_; ++i) v.coords[i] = (*this)(i, j);
    return v;
  }
  void set_column(int j, const TildeVector& v) {
    for (int i = 0; i < dim_; ++i) (*this)(i, j) = v.coords[i];
  }

  TildeVector apply(const TildeVector& v) const {
    if (static_cast<int>(v.coords.size()) != dim_) throw Error(ErrorKind::DimensionMismatch, "vector dimension");
    TildeVector out{std::vector<std::int64_t>(dim_, 0)};
    for (int i = 0; i < dim_; ++i) {
      std::int64_t acc = 0;
      for (int k = 0; k < dim_; ++k) acc = detail::checked_add(acc, detail::checked_mul((*this)(i, k), v.coords[k]));
      out.coords[i] = acc;
    }
    return out;
  }

  RepMatrix transpose() const {
    RepMatrix t(dim_);
    for (int i = 0; i < dim_; ++i)
      for (int j = 0; j < dim_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  bool is_identity() const { return *this == identity(dim_); }

  friend RepMatrix operator*(const RepMatrix& x, const RepMatrix& y) {
    if (x.dim_ != y.dim_) throw Error(ErrorKind::DimensionMismatch, "matrix dimensions differ");
    RepMatrix out(x.dim_);
    for (int i = 0; i < x.dim_; ++i)
      for (int k = 0; k < x.dim_; ++k) {
        const auto xik = x(i, k);
        if (xik == 0) continue;
        for (int j = 0; j < x.dim_; ++j)
          out(i, j) = detail::checked_add(out(i, j), detail::checked_mul(xik, y(k, j)));
      }
    return out;
  }

  friend bool operator==(const RepMatrix&, const RepMatrix&) = default;

 private:
  int dim_ = 0;
  std::vector<std::int64_t> a_;
};

inline RepMatrix compose(const RepMatrix& x, const RepMatrix& y) { return x * y; }
inline bool is_identity(const RepMatrix& m) { return m.is_identity(); }

/// Non-negative power by squaring.
inline RepMatrix power(RepMatrix base, std::int64_t k) {
  auto out = RepMatrix::identity(base.dim());
  while (k > 0) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return out;
}

/// x^k for signed k, given x and x^{-1}.
inline RepMatrix signed_power(const RepMatrix& x, const RepMatrix& x_inv, std::int64_t k) {
  return k >= 0 ? power(x, k) : power(x_inv, -k);
}

inline RepMatrix gram_matrix(int rank) {
  RepMatrix g(tilde_dim(rank));
  g(0, 0) = 2;
  for (int r = 0; r < rank; ++r) {
    g(sigma_index(r), lambda_index(rank, r)) = 1;
    g(lambda_index(rank, r), sigma_index(r)) = 1;
  }
  return g;
}

/// M^T G M == G.
inline bool preserves_form(const RepMatrix& m) {
  const auto g = gram_matrix((m.dim() - 1) / 2);
  return m.transpose() * g * m == g;
}

/// M(sigma_r) == sigma_r for every r.
inline bool fixes_radical(const RepMatrix& m) {
  const int nu = (m.dim() - 1) / 2;
  for (int r = 0; r < nu; ++r)
    if (!(m.column(sigma_index(r)) == TildeVector::basis(nu, sigma_index(r)))) return false;
  return true;
}

/// w_alpha(u) = u - (u,alpha) alpha for a non-isotropic alpha with (alpha,alpha)=2.
inline RepMatrix reflection_matrix(const TildeVector& alpha) {
  const int dim = static_cast<int>(alpha.coords.size());
  const int nu = alpha.rank();
  RepMatrix m(dim);
  for (int j = 0; j < dim; ++j) {
    auto u = TildeVector::basis(nu, j);
    const auto c = form(u, alpha);
    for (int i = 0; i < dim; ++i) u.coords[i] = detail::checked_sub(u.coords[i], detail::checked_mul(c, alpha.coords[i]));
    m.set_column(j, u);
  }
  return m;
}

inline RepMatrix reflection(const SemilatticeContext& ctx, const Root& a) {
  require_root(ctx, a);
  return reflection_matrix(TildeVector::of_root(a));
}

/// T^sigma_alpha(u) = u - (sigma,u) alpha + (alpha,u) sigma - ((alpha,alpha)/2)(sigma,u) sigma.
/// alpha must lie in V (no lambda part) and sigma in the radical.
inline RepMatrix translation(const TildeVector& alpha, const TildeVector& sigma) {
  if (alpha.coords.size() != sigma.coords.size() || alpha.coords.size() % 2 == 0)
    throw Error(ErrorKind::DimensionMismatch, "translation arguments differ in dimension");
  const int nu = alpha.rank();
  const int dim = tilde_dim(nu);
  if (sigma.coords[alpha_index()] != 0) throw Error(ErrorKind::NotRadical, "sigma has an alpha_1 component");
  for (int r = 0; r < nu; ++r) {
    if (sigma.coords[lambda_index(nu, r)] != 0) throw Error(ErrorKind::NotRadical, "sigma has a lambda component");
    if (alpha.coords[lambda_index(nu, r)] != 0) throw Error(ErrorKind::NotInV, "alpha has a lambda component");
  }
  using detail::checked_add;
  using detail::checked_mul;
  using detail::checked_sub;
  const auto half_norm = form(alpha, alpha) / 2;  // (alpha,alpha) = 2*a_0^2
  RepMatrix m(dim);
  for (int j = 0; j < dim; ++j) {
    auto u = TildeVector::basis(nu, j);
    const auto su = form(sigma, u);
    const auto au = form(alpha, u);
    for (int i = 0; i < dim; ++i) {
      auto x = checked_sub(u.coords[i], checked_mul(su, alpha.coords[i]));
      x = checked_add(x, checked_mul(au, sigma.coords[i]));
      x = checked_sub(x, checked_mul(checked_mul(half_norm, su), sigma.coords[i]));
      u.coords[i] = x;
    }
    m.set_column(j, u);
  }
  return m;
}

inline RepMatrix w_alpha1_matrix(int rank) { return reflection_matrix(TildeVector::basis(rank, alpha_index())); }

/// t_r = T^{sigma_r}_{alpha_1}.
inline RepMatrix t_matrix(int rank, int r) {
  return translation(TildeVector::basis(rank, alpha_index()), TildeVector::basis(rank, sigma_index(r)));
}

/// t_r^{-1} = w_{alpha_1} w_{alpha_1+sigma_r}.
inline RepMatrix t_inverse_matrix(int rank, int r) {
  auto a = TildeVector::basis(rank, alpha_index());
  a.coords[sigma_index(r)] = 1;
  return w_alpha1_matrix(rank) * reflection_matrix(a);
}

/// c_{r,s} = T^{sigma_s}_{sigma_r}; c_{s,r} is its inverse.
inline RepMatrix c_matrix(int rank, int r, int s) {
  return translation(TildeVector::basis(rank, sigma_index(r)), TildeVector::basis(rank, sigma_index(s)));
}

/// z_J: product of c_{r,s} over pairs of J when J is a member, c_{r,s}^2 for a
/// non-member pair, identity otherwise.
inline RepMatrix z_matrix(const SemilatticeContext& ctx, SubsetMask J) {
  const int nu = ctx.rank();
  if (!J.fits(nu)) throw Error(ErrorKind::RankOutOfRange, "mask exceeds rank");
  auto m = RepMatrix::identity(tilde_dim(nu));
  const auto el = J.elements();
  if (ctx.contains(J)) {
    for (std::size_t i = 0; i < el.size(); ++i)
      for (std::size_t j = i + 1; j < el.size(); ++j) m = m * c_matrix(nu, el[i], el[j]);
  } else if (J.size() == 2) {
    const auto c = c_matrix(nu, el[0], el[1]);
    m = c * c;
  }
  return m;
}

/// Exponent vector k (over pairs r<s) of a product of c's, read from the images
/// of the lambdas: M(lambda_r) = lambda_r + sum_{s>r} k_{r,s} sigma_s - ...
inline std::vector<std::int64_t> central_exponents(const RepMatrix& m) {
  const int nu = (m.dim() - 1) / 2;
  std::vector<std::int64_t> k(pair_count(nu), 0);
  for (int r = 0; r < nu; ++r)
    for (int s = r + 1; s < nu; ++s) k[pair_index(nu, r, s)] = m(sigma_index(s), lambda_index(nu, r));
  return k;
}

/// Row-major integer grid, one row per line.
inline void print_matrix(std::ostream& os, const RepMatrix& m) {
  for (int i = 0; i < m.dim(); ++i) {
    for (int j = 0; j < m.dim(); ++j) {
      if (j) os << ' ';
      os << m(i, j);
    }
    os << '\n';
  }
}

}  // namespace eawg
