#pragma once

// Decides whether W is isomorphic to the group presented by conjugation.
//
// psi is an isomorphism iff the only integral collection is the trivial one,
// i.e. iff n0 = 0. When n0 > 0 the first kernel basis vector names a set J0
// whose z_{J0} is generated by the remaining z's; the report carries that
// decomposition and an explicit word for w_{alpha_1+tau_{J0}} that avoids
// w_{alpha_1+tau_{J0}} itself.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hat.hpp"
#include "integral.hpp"
#include "semilattice.hpp"
#include "weyl.hpp"

namespace eawg {

enum class Verdict { HasPresentation, LacksPresentation };

inline const char* to_string(Verdict v) {
  return v == Verdict::HasPresentation ? "HasPresentation" : "LacksPresentation";
}

struct KernelVector {
  IntegralCollection eps;
  HatElement element;  // u(m, eps)
};

struct Witness {
  SubsetMask j0;
  CentralDecomposition decomposition;  // z_{J0} over the other z's
  std::vector<Root> word;              // w_{alpha_1+tau_{J0}} over Pi minus that root
  bool word_verified = false;
};

struct CorollaryNote {
  std::string name;
  std::string predicted;
  bool consistent = false;
};

struct DecisionReport {
  int rank = 0;
  int index = 0;
  int esupp_size = 0;
  int n0 = 0;
  Verdict verdict = Verdict::HasPresentation;
  std::vector<KernelVector> kernel_basis;
  std::optional<Witness> witness;
  std::vector<CorollaryNote> corollary_notes;
};

namespace detail {

inline void append(std::vector<Root>& out, const std::vector<Root>& w, std::int64_t times) {
  for (std::int64_t i = 0; i < std::llabs(times); ++i) {
    if (times > 0)
      out.insert(out.end(), w.begin(), w.end());
    else
      out.insert(out.end(), w.rbegin(), w.rend());  // all letters are involutions
  }
}

/// Word over Pi for z_J.
inline std::vector<Root> z_word(const SemilatticeContext& ctx, SubsetMask J) {
  const int nu = ctx.rank();
  const auto a1 = base_root(nu, SubsetMask{});
  auto single = [&](int r) { return base_root(nu, SubsetMask::singleton(r)); };
  std::vector<Root> w;
  if (ctx.contains(J)) {
    // w * w_{alpha_1+tau_J} * prod_{r in J} t_r
    w = {a1, base_root(nu, J)};
    for (int r : J.elements()) {
      w.push_back(single(r));
      w.push_back(a1);
    }
  } else if (J.size() == 2) {
    // [t_r, t_s] = t_r^-1 t_s^-1 t_r t_s
    const auto el = J.elements();
    const auto r = single(el[0]), s = single(el[1]);
    w = {a1, r, a1, s, r, a1, s, a1};
  }
  return w;
}

inline Witness build_witness(const SemilatticeContext& ctx, SubsetMask j0) {
  Witness wit;
  wit.j0 = j0;
  auto dec = central_decompose(ctx, z_vector(ctx, j0), {j0});
  if (!dec) throw std::logic_error("z_J0 not generated by the other z's although n0 > 0");
  wit.decomposition = *dec;

  const int nu = ctx.rank();
  const auto a1 = base_root(nu, SubsetMask{});
  // w_{alpha_1+tau_J0} = w * z_J0 * (t_J0)^{-1}
  wit.word.push_back(a1);
  for (std::size_t i = 0; i < dec->generators.size(); ++i) append(wit.word, z_word(ctx, dec->generators[i]), dec->coeffs[i]);
  const auto el = j0.elements();
  for (auto it = el.rbegin(); it != el.rend(); ++it) {
    wit.word.push_back(a1);
    wit.word.push_back(base_root(nu, SubsetMask::singleton(*it)));
  }
  // adjacent equal letters cancel
  std::vector<Root> reduced;
  for (auto& a : wit.word) {
    if (!reduced.empty() && reduced.back() == a)
      reduced.pop_back();
    else
      reduced.push_back(std::move(a));
  }
  wit.word = std::move(reduced);
  const auto target = base_root(nu, j0);
  bool avoids = true;
  for (const auto& a : wit.word)
    if (a == target) avoids = false;
  wit.word_verified = avoids && fold_word(ctx, wit.word) == from_reflection(ctx, target);
  return wit;
}

inline std::uint64_t binom2(int n) { return static_cast<std::uint64_t>(n) * (n - 1) / 2; }

}  // namespace detail

std::vector<CorollaryNote> check_corollaries(const SemilatticeContext& ctx, const DecisionReport& report);

inline DecisionReport decide(const SemilatticeContext& ctx) {
  DecisionReport rep;
  rep.rank = ctx.rank();
  rep.index = ctx.index();
  rep.esupp_size = static_cast<int>(ctx.esupp().size());
  const auto ns = nullspace(build_system(ctx));
  rep.n0 = ns.n0;
  rep.verdict = ns.n0 == 0 ? Verdict::HasPresentation : Verdict::LacksPresentation;
  for (const auto& eps : ns.basis) rep.kernel_basis.push_back({eps, kernel_element(ctx, eps)});
  if (!ns.basis.empty()) {
    for (const auto& [J, v] : ns.basis.front())
      if (v) {
        rep.witness = detail::build_witness(ctx, J);
        break;
      }
  }
  rep.corollary_notes = check_corollaries(ctx, rep);
  return rep;
}

/// Evaluates every structural prediction whose hypothesis holds for ctx and
/// compares it with the computed report.
inline std::vector<CorollaryNote> check_corollaries(const SemilatticeContext& ctx, const DecisionReport& report) {
  std::vector<CorollaryNote> out;
  const int nu = ctx.rank();
  const int m = ctx.index();
  const int es = static_cast<int>(ctx.esupp().size());
  const bool has = report.verdict == Verdict::HasPresentation;
  const std::string kHas = to_string(Verdict::HasPresentation);
  const std::string kLacks = to_string(Verdict::LacksPresentation);
  auto note = [&](std::string name, std::string predicted, bool ok) {
    out.push_back({std::move(name), std::move(predicted), ok});
  };

  note("kernel-criterion", has ? "kernel trivial" : "kernel nontrivial", has == report.kernel_basis.empty() && has == (report.n0 == 0));
  note("kernel-rank-bound", "n0<=" + std::to_string(es), report.n0 <= es);

  if (m - nu <= 3) note("index-at-most-rank-plus-3", kHas, has);
  if (nu <= 3) note("rank-at-most-3", m != 7 ? kHas : kLacks, has == (m != 7));
  if (es == 0) note("empty-essential-support", kHas, has);

  bool all_pairs = true;
  for (int r = 0; r < nu; ++r)
    for (int s = r + 1; s < nu; ++s)
      if (ctx.delta(r, s) != 1) all_pairs = false;
  if (all_pairs) note("all-pairs-supported", "n0=" + std::to_string(es), report.n0 == es);

  const std::int64_t full = (std::int64_t{1} << nu) - 1;
  if (m == full) {
    const auto expected = static_cast<int>(full - nu - static_cast<std::int64_t>(detail::binom2(nu)));
    note("full-lattice-count", "n0=" + std::to_string(expected), report.n0 == expected);
    if (nu >= 3) note("full-lattice-rank-3-plus", kLacks, !has);
  }

  bool closed_member = false;
  for (auto J : ctx.esupp()) {
    bool all = true;
    const auto el = J.elements();
    for (std::size_t i = 0; i < el.size() && all; ++i)
      for (std::size_t j = i + 1; j < el.size(); ++j)
        if (ctx.delta(el[i], el[j]) != 1) {
          all = false;
          break;
        }
    if (all) closed_member = true;
  }
  if (closed_member) note("closed-essential-member", kLacks, !has);
  if (nu > 3 && m == full - 1) note("corank-one-index", kLacks, !has);
  return out;
}

/// False only when the bigger class has the presentation and the smaller one
/// lacks it.
inline bool check_monotonicity(const SemilatticeContext& small, const SemilatticeContext& big) {
  if (small.rank() != big.rank()) throw Error(ErrorKind::NotNested, "ranks differ");
  for (auto J : small.supp().members)
    if (!big.contains(J)) throw Error(ErrorKind::NotNested, "member " + to_string(J) + " missing from larger class");
  const bool small_has = n0(small) == 0;
  const bool big_has = n0(big) == 0;
  return !(big_has && !small_has);
}

// ---------------------------------------------------------------------------
// JSON

inline nlohmann::json to_json(const SemilatticeContext& ctx, const DecisionReport& r) {
  using nlohmann::json;
  json kb = json::array();
  for (const auto& kv : r.kernel_basis) {
    json eps = json::array();
    for (const auto& [J, v] : kv.eps) eps.push_back({{"set", mask_to_json(J)}, {"value", v}});
    json m = json::array();
    for (int a = 0; a < ctx.rank(); ++a)
      for (int b = a + 1; b < ctx.rank(); ++b) {
        const auto val = kv.element.m[ctx.pair_index(a, b)];
        if (val) m.push_back({{"pair", {a + 1, b + 1}}, {"value", val}});
      }
    kb.push_back({{"eps", eps}, {"m", m}, {"normalForm", to_string(ctx, kv.element)}});
  }
  json wit = nullptr;
  if (r.witness) {
    json dec = json::array();
    for (std::size_t i = 0; i < r.witness->decomposition.generators.size(); ++i)
      dec.push_back({{"set", mask_to_json(r.witness->decomposition.generators[i])},
                     {"coeff", r.witness->decomposition.coeffs[i]}});
    json word = json::array();
    for (const auto& a : r.witness->word) word.push_back(to_string(a));
    wit = {{"J0", mask_to_json(r.witness->j0)}, {"decomposition", dec}, {"word", word},
           {"wordVerified", r.witness->word_verified}};
  }
  json notes = json::array();
  for (const auto& n : r.corollary_notes)
    notes.push_back({{"name", n.name}, {"predicted", n.predicted}, {"consistent", n.consistent}});
  return {{"rank", r.rank},       {"index", r.index},     {"esuppSize", r.esupp_size},
          {"n0", r.n0},           {"verdict", to_string(r.verdict)}, {"kernelBasis", kb},
          {"witnesses", wit},     {"corollaryNotes", notes}};
}

}  // namespace eawg
