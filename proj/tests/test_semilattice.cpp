#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include <eawg/integral.hpp>
#include <eawg/rng.hpp>
#include <eawg/sample.hpp>
#include <eawg/semilattice.hpp>

#include "oracles.hpp"

using namespace eawg;

namespace {

SupportingClass rem_class() { return parse_supp("rank=3; {1},{2},{3},{1,2},{1,3},{1,2,3}"); }

template <class F>
ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Overflow;
}

}  // namespace

TEST(SubsetMask, BasicsAndRendering) {
  const auto m = SubsetMask::of({0, 2});
  EXPECT_EQ(m.bits, 5u);
  EXPECT_EQ(m.size(), 2);
  EXPECT_TRUE(m.has(2));
  EXPECT_FALSE(m.has(1));
  EXPECT_TRUE(m.contains(SubsetMask::singleton(0)));
  EXPECT_TRUE(m.fits(3));
  EXPECT_FALSE(m.fits(2));
  EXPECT_EQ(to_string(m), "{1,3}");
  EXPECT_EQ(to_string(SubsetMask{}), "{}");
}

TEST(PairIndex, EnumeratesPairsInOrder) {
  for (int nu = 0; nu <= 8; ++nu) {
    int counter = 0;
    for (int r = 0; r < nu; ++r)
      for (int s = r + 1; s < nu; ++s) EXPECT_EQ(pair_index(nu, r, s), counter++);
    EXPECT_EQ(pair_count(nu), counter);
  }
}

TEST(BuildContext, FullLatticeRank3) {
  const auto ctx = build_context(lattice_class(3));
  EXPECT_EQ(ctx.index(), 7);
  ASSERT_EQ(ctx.esupp().size(), 1u);
  EXPECT_EQ(ctx.esupp()[0], SubsetMask::of({0, 1, 2}));
  for (int r = 0; r < 3; ++r)
    for (int s = r + 1; s < 3; ++s) EXPECT_EQ(ctx.delta(r, s), 1);
}

TEST(BuildContext, MinimalRank3) {
  const auto ctx = build_context(minimal_class(3));
  EXPECT_EQ(ctx.index(), 3);
  EXPECT_TRUE(ctx.esupp().empty());
  for (int r = 0; r < 3; ++r)
    for (int s = r + 1; s < 3; ++s) EXPECT_EQ(ctx.delta(r, s), 2);
}

TEST(BuildContext, IndexSixClass) {
  const auto ctx = build_context(rem_class());
  EXPECT_EQ(ctx.index(), 6);
  ASSERT_EQ(ctx.esupp().size(), 1u);
  EXPECT_EQ(ctx.esupp()[0], SubsetMask::of({0, 1, 2}));
  EXPECT_EQ(ctx.delta(0, 1), 1);
  EXPECT_EQ(ctx.delta(0, 2), 1);
  EXPECT_EQ(ctx.delta(1, 2), 2);
}

TEST(BuildContext, ValidationErrors) {
  EXPECT_EQ(kind_of([] { build_context(SupportingClass(2, {SubsetMask::singleton(0), SubsetMask::singleton(1)})); }),
            ErrorKind::MissingEmptySet);
  EXPECT_EQ(kind_of([] { build_context(SupportingClass(2, {SubsetMask{}, SubsetMask::singleton(0)})); }),
            ErrorKind::MissingSingleton);
  EXPECT_EQ(kind_of([] {
              build_context(SupportingClass(2, {SubsetMask{}, SubsetMask::singleton(0), SubsetMask::singleton(1),
                                                SubsetMask::singleton(2)}));
            }),
            ErrorKind::RankOutOfRange);
  EXPECT_EQ(kind_of([] { build_context(SupportingClass(0, {SubsetMask{}})); }), ErrorKind::RankOutOfRange);
  EXPECT_EQ(kind_of([] {
              build_context(SupportingClass(1, {SubsetMask{}, SubsetMask::singleton(0), SubsetMask::singleton(0)}));
            }),
            ErrorKind::DuplicateMember);
}

TEST(BuildContext, InvariantsOnEveryRank4Class) {
  for (const auto& cls : oracle::all_classes(4)) {
    const auto ctx = build_context(cls);
    EXPECT_EQ(ctx.index(), static_cast<int>(cls.members.size()) - 1);
    EXPECT_GE(ctx.index(), 4);
    EXPECT_LE(ctx.index(), 15);
    EXPECT_LE(static_cast<int>(ctx.esupp().size()), 16 - 1 - 4 - 6);
    for (int r = 0; r < 4; ++r)
      for (int s = 0; s < 4; ++s)
        if (r != s) {
          EXPECT_EQ(ctx.delta(r, s), ctx.delta(s, r));
          EXPECT_EQ(ctx.delta(r, s), cls.contains(SubsetMask::pair(r, s)) ? 1 : 2);
        }
    for (auto J : ctx.esupp()) EXPECT_GE(J.size(), 3);
  }
}

TEST(DeltaIn, ProperSubsetOnly) {
  const auto J = SubsetMask::of({0, 1, 2});
  EXPECT_EQ(SemilatticeContext::delta_in(J, 0, 1), 1);
  EXPECT_EQ(SemilatticeContext::delta_in(SubsetMask::pair(0, 1), 0, 1), 0);
  EXPECT_EQ(SemilatticeContext::delta_in(J, 0, 3), 0);
}

TEST(RootValidate, Examples) {
  const auto lat = build_context(lattice_class(3));
  auto info = root_validate(lat, Root{1, {1, 0, 2}});
  EXPECT_TRUE(info.valid);
  EXPECT_EQ(info.support, SubsetMask::singleton(0));
  EXPECT_EQ(info.lambda, (std::vector<std::int64_t>{0, 0, 1}));

  const auto rem = build_context(rem_class());
  EXPECT_FALSE(root_validate(rem, Root{-1, {0, 1, 1}}).valid);

  for (int nu = 1; nu <= 4; ++nu) {
    const auto ctx = build_context(minimal_class(nu));
    info = root_validate(ctx, Root{1, std::vector<std::int64_t>(nu, 0)});
    EXPECT_TRUE(info.valid);
    EXPECT_TRUE(info.support.empty());
    EXPECT_EQ(info.lambda, std::vector<std::int64_t>(nu, 0));
  }
  EXPECT_FALSE(root_validate(lat, Root{1, {0, 0}}).valid);
  EXPECT_FALSE(root_validate(lat, Root{0, {0, 0, 0}}).valid);
  EXPECT_THROW(require_root(rem, Root{1, {0, 1, 1}}), Error);
}

TEST(RootValidate, ParityOracleAndNegation) {
  SplitMix64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int nu = static_cast<int>(rng.between(1, 5));
    const auto ctx = build_context(random_class(nu, rng));
    Root a{rng.coin() ? 1 : -1, std::vector<std::int64_t>(nu)};
    for (auto& x : a.coeffs) x = rng.between(-7, 7);
    SubsetMask parity;
    for (int r = 0; r < nu; ++r)
      if (std::abs(a.coeffs[r]) % 2 == 1) parity.bits |= 1u << r;
    const auto info = root_validate(ctx, a);
    EXPECT_EQ(info.valid, ctx.contains(parity));
    const auto neg = root_validate(ctx, a.negated());
    EXPECT_EQ(neg.valid, info.valid);
    if (info.valid) {
      EXPECT_EQ(neg.support, info.support);
      for (int r = 0; r < nu; ++r) EXPECT_EQ(a.coeffs[r], (parity.has(r) ? 1 : 0) + 2 * info.lambda[r]);
    }
  }
}

TEST(IsIsotropic, Examples) {
  const auto min2 = build_context(minimal_class(2));
  EXPECT_TRUE(is_isotropic(min2, {1, 1}));
  EXPECT_TRUE(is_isotropic(min2, {2, 0}));
  const auto c = build_context(parse_supp("rank=3; {1},{2},{3},{1,2}"));
  EXPECT_TRUE(is_isotropic(c, {0, 1, 1}));
}

TEST(IsIsotropic, SymmetricDifferenceOracle) {
  for (int nu = 1; nu <= 3; ++nu)
    for (const auto& cls : oracle::all_classes(nu)) {
      const auto ctx = build_context(cls);
      std::set<std::uint32_t> residues;
      for (auto J : cls.members)
        for (auto K : cls.members) residues.insert(J.bits ^ K.bits);
      for (std::uint32_t b = 0; b < (1u << nu); ++b) {
        std::vector<std::int64_t> v(nu);
        for (int r = 0; r < nu; ++r) v[r] = ((b >> r) & 1) ? 3 : -2;
        EXPECT_EQ(is_isotropic(ctx, v), residues.count(b) == 1);
      }
    }
}

TEST(MakeFamily, Examples) {
  const auto f48 = make_family(4, 8);
  const SupportingClass expected(4, {SubsetMask{}, SubsetMask::of({0}), SubsetMask::of({1}), SubsetMask::of({2}),
                                     SubsetMask::of({3}), SubsetMask::of({0, 1}), SubsetMask::of({0, 2}),
                                     SubsetMask::of({1, 2}), SubsetMask::of({0, 1, 2})});
  EXPECT_EQ(f48, expected);
  EXPECT_EQ(make_family(3, 7), lattice_class(3));
  EXPECT_EQ(make_family(4, 15), lattice_class(4));
}

TEST(MakeFamily, IndexAndMandatedSets) {
  for (int nu = 3; nu <= 6; ++nu)
    for (int m = nu + 4; m <= (1 << nu) - 1; ++m) {
      const auto cls = make_family(nu, m);
      EXPECT_NO_THROW(validate(cls));
      EXPECT_EQ(cls.index(), m);
      for (auto J : {SubsetMask::of({0, 1}), SubsetMask::of({0, 2}), SubsetMask::of({1, 2}), SubsetMask::of({0, 1, 2})})
        EXPECT_TRUE(cls.contains(J));
    }
}

TEST(MakeFamily, Errors) {
  EXPECT_EQ(kind_of([] { make_family(4, 7); }), ErrorKind::IndexOutOfRange);
  EXPECT_EQ(kind_of([] { make_family(4, 16); }), ErrorKind::IndexOutOfRange);
  EXPECT_EQ(kind_of([] { make_family(2, 3); }), ErrorKind::RankOutOfRange);
}

TEST(Permute, Examples) {
  const auto cls = parse_supp("rank=3; {1},{2},{3},{1,2}");
  EXPECT_EQ(permute(cls, {0, 1, 2}), cls);
  EXPECT_TRUE(permute(cls, {2, 1, 0}).contains(SubsetMask::of({1, 2})));
  EXPECT_EQ(canonical_form(parse_supp("rank=3; {1},{2},{3},{1,3}")),
            canonical_form(parse_supp("rank=3; {1},{2},{3},{1,2}")));
  EXPECT_EQ(kind_of([&] { permute(cls, {0, 0, 1}); }), ErrorKind::InvalidPermutation);
  EXPECT_EQ(kind_of([&] { permute(cls, {0, 1}); }), ErrorKind::InvalidPermutation);
  EXPECT_EQ(kind_of([&] { permute(cls, {0, 1, 3}); }), ErrorKind::InvalidPermutation);
}

TEST(Permute, CanonicalFormIsOrbitInvariant) {
  for (const auto& cls : oracle::all_classes(3)) {
    const auto canon = canonical_form(cls);
    std::vector<int> perm{0, 1, 2};
    std::vector<SupportingClass> orbit;
    do {
      const auto img = permute(cls, perm);
      orbit.push_back(img);
      EXPECT_EQ(canonical_form(img), canon);
      EXPECT_EQ(img.index(), cls.index());
      EXPECT_EQ(build_context(img).esupp().size(), build_context(cls).esupp().size());
      EXPECT_EQ(n0(build_context(img)), n0(build_context(cls)));
    } while (std::next_permutation(perm.begin(), perm.end()));
    // the representative is the smallest orbit member
    auto smallest = *std::min_element(orbit.begin(), orbit.end(), [](const auto& a, const auto& b) {
      return std::lexicographical_compare(a.members.begin(), a.members.end(), b.members.begin(), b.members.end());
    });
    EXPECT_EQ(canon, smallest);
  }
}

TEST(Permute, PreservesN0SampledRank4) {
  SplitMix64 rng(11);
  for (int i = 0; i < 100; ++i) {
    const auto cls = random_class(4, rng);
    std::vector<int> perm{0, 1, 2, 3};
    for (int k = 3; k > 0; --k) std::swap(perm[k], perm[rng.below(k + 1)]);
    EXPECT_EQ(n0(build_context(permute(cls, perm))), n0(build_context(cls)));
  }
}

TEST(TextFormat, Examples) {
  EXPECT_EQ(parse_supp("rank=3; {1},{2},{3},{1,2}").index(), 4);
  EXPECT_EQ(parse_supp("rank=3; {1},{2},{3},{1,2},{1,3},{1,2,3}").index(), 6);
  EXPECT_EQ(kind_of([] { parse_supp("rank=2; {1}"); }), ErrorKind::MissingSingleton);
}

TEST(TextFormat, ErrorsCarryPositions) {
  try {
    parse_supp("rank=3; {1},{2}.{3}");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::SyntaxError);
    EXPECT_EQ(e.position(), 15);
  }
  EXPECT_EQ(kind_of([] { parse_supp("rnk=3; {1}"); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([] { parse_supp("rank=3; {1},{2},{3},{1,2"); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([] { parse_supp("rank=3; {1},{2},{3},{1,2},"); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([] { parse_supp("rank=3; {1},{2},{3},{1},"); }), ErrorKind::DuplicateMember);
  EXPECT_EQ(kind_of([] { parse_supp("rank=3; {},{1},{2},{3}"); }), ErrorKind::DuplicateMember);
  EXPECT_EQ(kind_of([] { parse_supp("rank=3; {1},{2},{3},{4}"); }), ErrorKind::RankOutOfRange);
  EXPECT_EQ(kind_of([] { parse_supp("rank=0;"); }), ErrorKind::RankOutOfRange);
  EXPECT_EQ(kind_of([] { parse_supp("rank=3; {1,1},{2},{3}"); }), ErrorKind::SyntaxError);
}

TEST(TextFormat, RoundTripEveryRank3And4Class) {
  for (int nu = 3; nu <= 4; ++nu)
    for (const auto& cls : oracle::all_classes(nu)) {
      EXPECT_EQ(parse_supp(serialize_supp(cls)), cls);
      EXPECT_EQ(supp_from_json(supp_to_json(cls)), cls);
      EXPECT_EQ(parse_supp_any(supp_to_json(cls).dump()), cls);
      EXPECT_EQ(parse_supp_any(serialize_supp(cls)), cls);
    }
}

TEST(JsonFormat, ShapeAndErrors) {
  const auto cls = parse_supp("rank=3; {1},{2},{3},{1,2}");
  EXPECT_EQ(supp_to_json(cls).dump(), R"({"rank":3,"supp":[[1],[2],[3],[1,2]]})");
  EXPECT_EQ(kind_of([] { parse_supp_any(R"({"rank":3,"supp":[[1],[2]]})"); }), ErrorKind::MissingSingleton);
  EXPECT_EQ(kind_of([] { parse_supp_any(R"({"rank":3,"supp":[[1],[2],[3],[5]]})"); }), ErrorKind::RankOutOfRange);
  EXPECT_EQ(kind_of([] { parse_supp_any(R"({"rank":3,"supp":[[1],[2],[3],[1]]})"); }), ErrorKind::DuplicateMember);
  EXPECT_EQ(kind_of([] { parse_supp_any(R"({"rank":3,"supp":)"); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([] { parse_supp_any(R"({"supp":[]})"); }), ErrorKind::SyntaxError);
}
