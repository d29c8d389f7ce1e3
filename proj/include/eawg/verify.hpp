#pragma once

// Randomized cross-checks between the three arithmetic layers: hat normal
// forms, W normal forms and integer matrices. Deterministic for a fixed seed.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "hat.hpp"
#include "integral.hpp"
#include "rep.hpp"
#include "rng.hpp"
#include "sample.hpp"
#include "semilattice.hpp"
#include "weyl.hpp"

namespace eawg {

struct SuiteResult {
  explicit SuiteResult(std::string n) : name(std::move(n)) {}

  std::string name;
  std::uint64_t passed = 0;
  std::uint64_t total = 0;
  std::string first_failure;

  bool ok() const { return passed == total; }
  void record(bool good, const std::string& what) {
    ++total;
    if (good)
      ++passed;
    else if (first_failure.empty())
      first_failure = what;
  }
};

/// Product of reflection matrices, independent of the normal-form code.
inline RepMatrix word_matrix(const SemilatticeContext& ctx, const std::vector<Root>& word) {
  auto m = RepMatrix::identity(tilde_dim(ctx.rank()));
  for (const auto& a : word) m = m * reflection(ctx, a);
  return m;
}

inline SuiteResult suite_weyl_vs_rep(const SemilatticeContext& ctx, SplitMix64& rng, int samples, int max_len = 20) {
  SuiteResult res{"weyl-vs-rep"};
  for (int i = 0; i < samples; ++i) {
    const auto word = random_word(ctx, rng, max_len);
    const auto w = fold_word(ctx, word);
    res.record(to_matrix(w) == word_matrix(ctx, word), to_string(w));
  }
  // group law on random normal forms
  for (int i = 0; i < samples; ++i) {
    const auto a = random_weyl(ctx.rank(), rng), b = random_weyl(ctx.rank(), rng);
    const bool good = to_matrix(mul(a, b)) == to_matrix(a) * to_matrix(b) && mul(a, inv(a)).is_identity();
    res.record(good, to_string(a) + " ; " + to_string(b));
  }
  return res;
}

inline SuiteResult suite_hat_vs_weyl(const SemilatticeContext& ctx, SplitMix64& rng, int samples) {
  SuiteResult res{"hat-vs-weyl"};
  for (int i = 0; i < samples; ++i) {
    const auto a = random_hat(ctx, rng), b = random_hat(ctx, rng), c = random_hat(ctx, rng);
    bool good = psi(ctx, hat_mul(ctx, a, b)) == mul(psi(ctx, a), psi(ctx, b));
    good = good && psi(ctx, hat_inv(ctx, a)) == inv(psi(ctx, a));
    good = good && hat_mul(ctx, a, hat_inv(ctx, a)).is_identity();
    good = good && hat_mul(ctx, hat_mul(ctx, a, b), c) == hat_mul(ctx, a, hat_mul(ctx, b, c));
    const auto alpha = random_root(ctx, rng);
    const auto g = psi(ctx, hat_generator(ctx, alpha));
    good = good && g == from_reflection(ctx, alpha) && to_matrix(g) == reflection(ctx, alpha);
    res.record(good, to_string(ctx, a) + " ; " + to_string(ctx, b));
  }
  return res;
}

inline SuiteResult suite_relations(const SemilatticeContext& ctx, SplitMix64& rng, int samples) {
  SuiteResult res{"relations"};
  for (int i = 0; i < samples; ++i) {
    const auto alpha = random_root(ctx, rng), beta = random_root(ctx, rng);
    const auto g = hat_generator(ctx, alpha), h = hat_generator(ctx, beta);
    const bool one = hat_mul(ctx, g, g).is_identity();
    const auto image = act(ctx, from_reflection(ctx, alpha), beta);
    const bool two = hat_mul(ctx, g, hat_mul(ctx, h, g)) == hat_generator(ctx, image);
    res.record(one && two, to_string(alpha) + " , " + to_string(beta));
  }
  return res;
}

inline constexpr int kClosureCap = 12;  // n0 above this skips the explicit closure

inline SuiteResult suite_kernel(const SemilatticeContext& ctx) {
  SuiteResult res{"kernel"};
  const auto basis = kernel_basis(ctx);
  const int n0v = static_cast<int>(basis.size());
  for (const auto& u : basis) {
    const bool good = psi(ctx, u).is_identity() && hat_mul(ctx, u, u).is_identity() && order(ctx, u) == Order::Two;
    res.record(good, to_string(ctx, u));
  }
  if (n0v <= kClosureCap) {
    const auto group = closure(ctx, basis);
    res.record(group.size() == (std::size_t{1} << n0v), "closure size " + std::to_string(group.size()));
  }
  return res;
}

/// Squares of the hat z_J against the pair exponents 3 - delta, and against the
/// matrix of z_J^2 through psi.
inline SuiteResult suite_z_square(const SemilatticeContext& ctx) {
  SuiteResult res{"z-square"};
  for (auto J : ctx.supp().members) {
    const auto z = hat_z(ctx, J);
    const auto sq = hat_mul(ctx, z, z);
    auto expected = HatElement::identity(ctx);
    const auto el = J.elements();
    for (std::size_t i = 0; i < el.size(); ++i)
      for (std::size_t j = i + 1; j < el.size(); ++j)
        expected.m[ctx.pair_index(el[i], el[j])] = 3 - ctx.delta(el[i], el[j]);
    const auto zm = z_matrix(ctx, J);
    const bool good = sq == expected && to_matrix(psi(ctx, sq)) == zm * zm && to_matrix(psi(ctx, z)) == zm;
    res.record(good, to_string(J));
  }
  return res;
}

/// Rank-1 behaviour: w t w = t^{-1} in every layer.
inline SuiteResult suite_dihedral(const SemilatticeContext& ctx) {
  SuiteResult res{"dihedral"};
  const int nu = ctx.rank();
  for (int r = 0; r < nu; ++r) {
    const auto w = weyl::w_alpha1(nu);
    const auto t = weyl::t(nu, r);
    bool good = mul(mul(w, t), w) == inv(t);
    const auto hw = hat::w_alpha1(ctx), ht = hat::t(ctx, r);
    good = good && hat_mul(ctx, hat_mul(ctx, hw, ht), hw) == hat_inv(ctx, ht);
    good = good && w_alpha1_matrix(nu) * t_matrix(nu, r) * w_alpha1_matrix(nu) == t_inverse_matrix(nu, r);
    res.record(good, "r=" + std::to_string(r + 1));
  }
  return res;
}

inline std::vector<SuiteResult> run_suites(const SemilatticeContext& ctx, SplitMix64& rng, int samples) {
  std::vector<SuiteResult> out;
  out.push_back(suite_weyl_vs_rep(ctx, rng, samples));
  out.push_back(suite_hat_vs_weyl(ctx, rng, samples));
  out.push_back(suite_relations(ctx, rng, samples));
  out.push_back(suite_kernel(ctx));
  out.push_back(suite_z_square(ctx));
  out.push_back(suite_dihedral(ctx));
  return out;
}

}  // namespace eawg
