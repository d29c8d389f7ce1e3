#pragma once

// The group presented by generators hat_w_alpha (alpha a root) subject to
//   hat_w_alpha^2 = 1  and  hat_w_alpha hat_w_beta hat_w_alpha = hat_w_{w_alpha(beta)},
// kept in the unique normal form
//   w^d * t_1^{n_1} ... t_nu^{n_nu} * prod z_{r,s}^{m_{r,s}} * prod_{J in Esupp} Z_J^{eps_J},
// eps_J in {0,1}. The collection rules are
//   w t_r w = t_r^{-1},
//   t_s^a t_r^b = t_r^b t_s^a z_{r,s}^{-k ab}   (r < s),  k = 2 if {r,s} in supp, else 1,
//   Z_J^2 = prod_{r<s in J} z_{r,s}^{3-delta(r,s)},
// with every z central.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "error.hpp"
#include "integral.hpp"
#include "semilattice.hpp"
#include "weyl.hpp"

namespace eawg {

struct HatElement {
  int d = 0;
  std::vector<std::int64_t> n;
  std::vector<std::int64_t> m;    // over pairs r<s
  std::vector<std::uint8_t> eps;  // over ctx.esupp(), 0/1

  static HatElement identity(const SemilatticeContext& ctx) {
    return {0, std::vector<std::int64_t>(ctx.rank(), 0), std::vector<std::int64_t>(ctx.pair_count(), 0),
            std::vector<std::uint8_t>(ctx.esupp().size(), 0)};
  }
  bool is_identity() const {
    if (d) return false;
    for (auto x : n)
      if (x) return false;
    for (auto x : m)
      if (x) return false;
    for (auto x : eps)
      if (x) return false;
    return true;
  }
  bool is_central() const {
    if (d) return false;
    for (auto x : n)
      if (x) return false;
    return true;
  }

  friend bool operator==(const HatElement&, const HatElement&) = default;
  friend auto operator<=>(const HatElement&, const HatElement&) = default;
};

namespace hat {

inline void check_shape(const SemilatticeContext& ctx, const HatElement& a) {
  if (static_cast<int>(a.n.size()) != ctx.rank() || static_cast<int>(a.m.size()) != ctx.pair_count() ||
      a.eps.size() != ctx.esupp().size())
    throw Error(ErrorKind::RankMismatch, "element does not match context");
}

/// Exponent of z_{r,s} picked up by one swap of t_s past t_r.
inline std::int64_t swap_weight(const SemilatticeContext& ctx, int r, int s) { return 3 - ctx.delta(r, s); }

inline HatElement w_alpha1(const SemilatticeContext& ctx) {
  auto e = HatElement::identity(ctx);
  e.d = 1;
  return e;
}

inline HatElement t(const SemilatticeContext& ctx, int r, std::int64_t power = 1) {
  auto e = HatElement::identity(ctx);
  e.n[r] = power;
  return e;
}

inline HatElement translation(const SemilatticeContext& ctx, const std::vector<std::int64_t>& v) {
  auto e = HatElement::identity(ctx);
  e.n = v;
  return e;
}

inline HatElement z_pair(const SemilatticeContext& ctx, int r, int s, std::int64_t power = 1) {
  auto e = HatElement::identity(ctx);
  e.m[ctx.pair_index(r, s)] = power;
  return e;
}

}  // namespace hat

inline HatElement hat_mul(const SemilatticeContext& ctx, const HatElement& a, const HatElement& b) {
  hat::check_shape(ctx, a);
  hat::check_shape(ctx, b);
  using detail::checked_add;
  using detail::checked_mul;
  using detail::checked_sub;
  const int nu = ctx.rank();
  HatElement out;
  out.d = a.d ^ b.d;
  std::vector<std::int64_t> left(a.n);
  if (b.d)
    for (auto& x : left) x = -x;
  out.n.resize(nu);
  for (int r = 0; r < nu; ++r) out.n[r] = checked_add(left[r], b.n[r]);
  out.m.resize(a.m.size());
  for (std::size_t p = 0; p < a.m.size(); ++p) out.m[p] = checked_add(a.m[p], b.m[p]);
  for (int r = 0; r < nu; ++r) {
    if (b.n[r] == 0) continue;
    for (int s = r + 1; s < nu; ++s) {
      if (left[s] == 0) continue;
      auto& mp = out.m[ctx.pair_index(r, s)];
      mp = checked_sub(mp, checked_mul(hat::swap_weight(ctx, r, s), checked_mul(left[s], b.n[r])));
    }
  }
  out.eps.resize(a.eps.size());
  const auto& es = ctx.esupp();
  for (std::size_t j = 0; j < es.size(); ++j) {
    const int e = a.eps[j] + b.eps[j];
    out.eps[j] = static_cast<std::uint8_t>(e & 1);
    if (e == 2) {
      const auto el = es[j].elements();
      for (std::size_t x = 0; x < el.size(); ++x)
        for (std::size_t y = x + 1; y < el.size(); ++y) {
          auto& mp = out.m[ctx.pair_index(el[x], el[y])];
          mp = checked_add(mp, 3 - ctx.delta(el[x], el[y]));
        }
    }
  }
  return out;
}

inline HatElement hat_inv(const SemilatticeContext& ctx, const HatElement& a) {
  hat::check_shape(ctx, a);
  using detail::checked_mul;
  using detail::checked_sub;
  const int nu = ctx.rank();
  HatElement out;
  out.d = a.d;
  std::vector<std::int64_t> flipped(a.n);
  if (a.d)
    for (auto& x : flipped) x = -x;
  out.n.resize(nu);
  for (int r = 0; r < nu; ++r) out.n[r] = -flipped[r];
  out.m.resize(a.m.size());
  for (int r = 0; r < nu; ++r)
    for (int s = r + 1; s < nu; ++s) {
      const auto p = ctx.pair_index(r, s);
      out.m[p] = checked_sub(-a.m[p], checked_mul(hat::swap_weight(ctx, r, s), checked_mul(flipped[r], flipped[s])));
    }
  // Z_J^{-1} = Z_J * (Z_J^2)^{-1}
  out.eps = a.eps;
  const auto& es = ctx.esupp();
  for (std::size_t j = 0; j < es.size(); ++j) {
    if (!a.eps[j]) continue;
    const auto el = es[j].elements();
    for (std::size_t x = 0; x < el.size(); ++x)
      for (std::size_t y = x + 1; y < el.size(); ++y) {
        auto& mp = out.m[ctx.pair_index(el[x], el[y])];
        mp = checked_sub(mp, 3 - ctx.delta(el[x], el[y]));
      }
  }
  return out;
}

inline HatElement hat_pow(const SemilatticeContext& ctx, const HatElement& a, std::int64_t k) {
  HatElement base = k < 0 ? hat_inv(ctx, a) : a;
  if (k < 0) k = -k;
  auto out = HatElement::identity(ctx);
  while (k > 0) {
    if (k & 1) out = hat_mul(ctx, out, base);
    k >>= 1;
    if (k) base = hat_mul(ctx, base, base);
  }
  return out;
}

inline HatElement hat_commutator(const SemilatticeContext& ctx, const HatElement& x, const HatElement& y) {
  return hat_mul(ctx, hat_mul(ctx, hat_inv(ctx, x), hat_inv(ctx, y)), hat_mul(ctx, x, y));
}

namespace hat {

/// The normal-form generator standing for z_J: the z_{r,s} exponent for a pair,
/// the Z_J flag for J in Esupp, identity otherwise.
inline HatElement z_symbol(const SemilatticeContext& ctx, SubsetMask J) {
  auto e = HatElement::identity(ctx);
  if (J.size() == 2) {
    const auto el = J.elements();
    e.m[ctx.pair_index(el[0], el[1])] = 1;
  } else if (J.size() >= 3) {
    const int pos = ctx.esupp_position(J);
    if (pos >= 0) e.eps[pos] = 1;
  }
  return e;
}

}  // namespace hat

/// Normal form of hat_w_alpha, folded from
///   hat_w_{alpha_1+tau_J} = w * z_J * (t_J)^{-1},
///   hat_w_{alpha_1+tau_J+2 lambda} = T(lambda) hat_w_{alpha_1+tau_J} T(lambda)^{-1},
///   hat_w_{-alpha} = w hat_w_alpha w.
inline HatElement hat_generator(const SemilatticeContext& ctx, const Root& a) {
  const auto info = require_root(ctx, a);
  const int nu = ctx.rank();
  std::vector<std::int64_t> tau(nu, 0);
  for (int r : info.support.elements()) tau[r] = 1;
  const auto base = hat_mul(ctx, hat_mul(ctx, hat::w_alpha1(ctx), hat::z_symbol(ctx, info.support)),
                            hat_inv(ctx, hat::translation(ctx, tau)));
  const auto shift = hat::translation(ctx, info.lambda);
  auto g = hat_mul(ctx, hat_mul(ctx, shift, base), hat_inv(ctx, shift));
  if (a.sign < 0) {
    const auto w = hat::w_alpha1(ctx);
    g = hat_mul(ctx, hat_mul(ctx, w, g), w);
  }
  return g;
}

inline HatElement fold_hat_word(const SemilatticeContext& ctx, const std::vector<Root>& word) {
  auto acc = HatElement::identity(ctx);
  for (const auto& a : word) acc = hat_mul(ctx, acc, hat_generator(ctx, a));
  return acc;
}

/// hat z_J as defined from the generators: w * hat_w_{alpha_1+tau_J} * t_J for
/// J in supp, [t_r, t_s] for a non-member pair, identity otherwise.
inline HatElement hat_z(const SemilatticeContext& ctx, SubsetMask J) {
  const int nu = ctx.rank();
  if (ctx.contains(J)) {
    std::vector<std::int64_t> tau(nu, 0);
    for (int r : J.elements()) tau[r] = 1;
    return hat_mul(ctx, hat_mul(ctx, hat::w_alpha1(ctx), hat_generator(ctx, base_root(nu, J))),
                   hat::translation(ctx, tau));
  }
  if (J.size() == 2) {
    const auto el = J.elements();
    return hat_commutator(ctx, hat::t(ctx, el[0]), hat::t(ctx, el[1]));
  }
  return HatElement::identity(ctx);
}

/// The natural epimorphism onto W: t_r -> t_r, z_{r,s} -> c_{r,s}^{delta(r,s)},
/// Z_J -> prod_{r<s in J} c_{r,s}.
inline WeylElement psi(const SemilatticeContext& ctx, const HatElement& a) {
  hat::check_shape(ctx, a);
  const int nu = ctx.rank();
  WeylElement w{a.d, a.n, CentralVector(ctx.pair_count(), 0)};
  for (int p = 0; p < ctx.pair_count(); ++p) w.c[p] = detail::checked_mul(ctx.delta_at(p), a.m[p]);
  const auto& es = ctx.esupp();
  for (std::size_t j = 0; j < es.size(); ++j) {
    if (!a.eps[j]) continue;
    for (int r = 0; r < nu; ++r)
      for (int s = r + 1; s < nu; ++s)
        if (SemilatticeContext::delta_in(es[j], r, s)) w.c[ctx.pair_index(r, s)] += 1;
  }
  return w;
}

/// u(m, eps) for an integral collection eps, with
/// m_{r,s} = -(1/delta(r,s)) * sum_J delta(J,r,s) eps_J.
inline HatElement kernel_element(const SemilatticeContext& ctx, const IntegralCollection& eps) {
  if (!is_integral(ctx, eps)) throw Error(ErrorKind::KeyMismatch, "collection is not integral");
  auto u = HatElement::identity(ctx);
  const auto& es = ctx.esupp();
  for (std::size_t j = 0; j < es.size(); ++j) u.eps[j] = static_cast<std::uint8_t>(eps.at(es[j]));
  const int nu = ctx.rank();
  for (int r = 0; r < nu; ++r)
    for (int s = r + 1; s < nu; ++s) {
      std::int64_t sum = 0;
      for (std::size_t j = 0; j < es.size(); ++j) sum += SemilatticeContext::delta_in(es[j], r, s) * u.eps[j];
      u.m[ctx.pair_index(r, s)] = -sum / ctx.delta(r, s);
    }
  return u;
}

/// One kernel element per nullspace basis vector, in basis order.
inline std::vector<HatElement> kernel_basis(const SemilatticeContext& ctx) {
  std::vector<HatElement> out;
  for (const auto& eps : nullspace(build_system(ctx)).basis) out.push_back(kernel_element(ctx, eps));
  return out;
}

/// Subgroup generated by `gens`, enumerated by closure. Throws TooLarge past `limit`.
inline std::vector<HatElement> closure(const SemilatticeContext& ctx, const std::vector<HatElement>& gens,
                                       std::size_t limit = std::size_t{1} << 20) {
  std::set<HatElement> seen{HatElement::identity(ctx)};
  std::vector<HatElement> frontier{HatElement::identity(ctx)};
  while (!frontier.empty()) {
    std::vector<HatElement> next;
    for (const auto& x : frontier)
      for (const auto& g : gens) {
        auto y = hat_mul(ctx, x, g);
        if (seen.insert(y).second) {
          if (seen.size() > limit) throw Error(ErrorKind::TooLarge, "closure exceeds limit");
          next.push_back(std::move(y));
        }
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

enum class Order { One, Two, Infinite };

inline const char* to_string(Order o) {
  switch (o) {
    case Order::One: return "1";
    case Order::Two: return "2";
    case Order::Infinite: return "infinite";
  }
  return "?";
}

/// Order of a central element. A nontrivial psi-image lies in the free abelian
/// C and so has infinite order; a kernel element squares to 1.
inline Order order(const SemilatticeContext& ctx, const HatElement& a) {
  hat::check_shape(ctx, a);
  if (!a.is_central()) throw Error(ErrorKind::NotCentral, "order() needs d = 0 and n = 0");
  if (a.is_identity()) return Order::One;
  if (!psi(ctx, a).is_identity()) return Order::Infinite;
  if (!hat_mul(ctx, a, a).is_identity()) throw std::logic_error("kernel element with square != 1");
  return Order::Two;
}

inline std::string to_string(const SemilatticeContext& ctx, const HatElement& a) {
  std::string s = "w^" + std::to_string(a.d) + " * t[";
  for (std::size_t r = 0; r < a.n.size(); ++r) s += (r ? "," : "") + std::to_string(a.n[r]);
  s += "]";
  const int nu = ctx.rank();
  for (int r = 0; r < nu; ++r)
    for (int q = r + 1; q < nu; ++q) {
      const auto k = a.m[ctx.pair_index(r, q)];
      if (k) s += " * z{" + std::to_string(r + 1) + "," + std::to_string(q + 1) + "}^" + std::to_string(k);
    }
  for (std::size_t j = 0; j < a.eps.size(); ++j)
    if (a.eps[j]) s += " * Z" + to_string(ctx.esupp()[j]) + "^1";
  return s;
}

}  // namespace eawg
