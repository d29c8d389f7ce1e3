#pragma once

// Seeded random objects for property checks. All draws go through SplitMix64,
// so a seed reproduces the same classes, roots and words everywhere.

#include <cstdint>
#include <utility>
#include <vector>

#include "hat.hpp"
#include "rng.hpp"
#include "semilattice.hpp"
#include "weyl.hpp"

namespace eawg {

/// Uniform over all classes of the given rank (each non-singleton mask is a coin flip).
inline SupportingClass random_class(int rank, SplitMix64& rng) {
  auto cls = minimal_class(rank);
  for (std::uint32_t b = 0; b < (1u << rank); ++b)
    if (std::popcount(b) >= 2 && rng.coin()) cls.members.emplace_back(b);
  std::sort(cls.members.begin(), cls.members.end());
  return cls;
}

/// small is a random sub-class of big, both of the given rank.
inline std::pair<SupportingClass, SupportingClass> random_nested_pair(int rank, SplitMix64& rng) {
  auto big = random_class(rank, rng);
  auto small = minimal_class(rank);
  for (auto J : big.members)
    if (J.size() >= 2 && rng.coin()) small.members.push_back(J);
  std::sort(small.members.begin(), small.members.end());
  return {std::move(small), std::move(big)};
}

/// A root with support drawn from supp and lambda entries in [-bound, bound].
inline Root random_root(const SemilatticeContext& ctx, SplitMix64& rng, std::int64_t bound = 2) {
  const auto& mem = ctx.supp().members;
  const auto J = mem[rng.below(mem.size())];
  Root a{rng.coin() ? 1 : -1, std::vector<std::int64_t>(ctx.rank(), 0)};
  for (int r = 0; r < ctx.rank(); ++r) a.coeffs[r] = (J.has(r) ? 1 : 0) + 2 * rng.between(-bound, bound);
  return a;
}

inline std::vector<Root> random_word(const SemilatticeContext& ctx, SplitMix64& rng, int max_len,
                                     std::int64_t bound = 2) {
  const auto len = rng.between(0, max_len);
  std::vector<Root> w;
  for (std::int64_t i = 0; i < len; ++i) w.push_back(random_root(ctx, rng, bound));
  return w;
}

/// Random normal form: d, n, m drawn directly, eps a coin per essential member.
inline HatElement random_hat(const SemilatticeContext& ctx, SplitMix64& rng, std::int64_t bound = 3) {
  auto e = HatElement::identity(ctx);
  e.d = rng.coin() ? 1 : 0;
  for (auto& x : e.n) x = rng.between(-bound, bound);
  for (auto& x : e.m) x = rng.between(-bound, bound);
  for (auto& x : e.eps) x = rng.coin() ? 1 : 0;
  return e;
}

inline WeylElement random_weyl(int rank, SplitMix64& rng, std::int64_t bound = 3) {
  auto w = WeylElement::identity(rank);
  w.d = rng.coin() ? 1 : 0;
  for (auto& x : w.n) x = rng.between(-bound, bound);
  for (auto& x : w.c) x = rng.between(-bound, bound);
  return w;
}

}  // namespace eawg
