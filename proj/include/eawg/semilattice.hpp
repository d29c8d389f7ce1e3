#pragma once

// Supporting classes of semilattices and the combinatorics derived from them.
//
// Coordinates are 0-based in code (coordinate r <-> bit r of a mask) and
// 1-based in every text or JSON rendering.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"

namespace eawg {

inline constexpr int kMaxRank = 24;

/// A subset J of {0..rank-1} stored as a bitmask.
struct SubsetMask {
  std::uint32_t bits = 0;

  constexpr SubsetMask() = default;
  constexpr explicit SubsetMask(std::uint32_t b) : bits(b) {}

  static SubsetMask of(std::initializer_list<int> coords) {
    SubsetMask m;
    for (int r : coords) m.bits |= (1u << r);
    return m;
  }
  static constexpr SubsetMask singleton(int r) { return SubsetMask(1u << r); }
  static constexpr SubsetMask pair(int r, int s) { return SubsetMask((1u << r) | (1u << s)); }

  constexpr int size() const { return std::popcount(bits); }
  constexpr bool empty() const { return bits == 0; }
  constexpr bool has(int r) const { return (bits >> r) & 1u; }
  constexpr bool contains(SubsetMask other) const { return (bits & other.bits) == other.bits; }
  constexpr bool fits(int rank) const { return rank >= 32 || (bits >> rank) == 0; }

  std::vector<int> elements() const {
    std::vector<int> out;
    for (std::uint32_t b = bits; b; b &= b - 1) out.push_back(std::countr_zero(b));
    return out;
  }

  friend constexpr bool operator==(SubsetMask, SubsetMask) = default;
  friend constexpr auto operator<=>(SubsetMask a, SubsetMask b) { return a.bits <=> b.bits; }
};

/// Renders a mask as "{1,2,3}" with 1-based coordinates.
inline std::string to_string(SubsetMask m) {
  std::string s = "{";
  bool first = true;
  for (int r : m.elements()) {
    if (!first) s += ',';
    s += std::to_string(r + 1);
    first = false;
  }
  return s + "}";
}

/// Number of unordered pairs r<s among `rank` coordinates.
constexpr int pair_count(int rank) { return rank * (rank - 1) / 2; }

/// Position of the pair (r,s), r<s, in lexicographic order (0,1),(0,2),...,(1,2),...
constexpr int pair_index(int rank, int r, int s) { return r * (2 * rank - r - 1) / 2 + (s - r - 1); }

inline std::vector<std::pair<int, int>> all_pairs(int rank) {
  std::vector<std::pair<int, int>> out;
  out.reserve(pair_count(rank));
  for (int r = 0; r < rank; ++r)
    for (int s = r + 1; s < rank; ++s) out.emplace_back(r, s);
  return out;
}

/// The family supp(S). Members are kept sorted by mask value and always
/// include the empty set once validated.
struct SupportingClass {
  int rank = 0;
  std::vector<SubsetMask> members;

  SupportingClass() = default;
  SupportingClass(int rank_, std::vector<SubsetMask> members_) : rank(rank_), members(std::move(members_)) {
    std::sort(members.begin(), members.end());
  }

  bool contains(SubsetMask m) const { return std::binary_search(members.begin(), members.end(), m); }
  int index() const { return static_cast<int>(members.size()) - 1; }

  friend bool operator==(const SupportingClass&, const SupportingClass&) = default;
};

/// Full lattice of rank `rank`: every subset is a member.
inline SupportingClass lattice_class(int rank) {
  std::vector<SubsetMask> m;
  for (std::uint32_t b = 0; b < (1u << rank); ++b) m.emplace_back(b);
  return {rank, std::move(m)};
}

/// Smallest valid class: the empty set and the singletons.
inline SupportingClass minimal_class(int rank) {
  std::vector<SubsetMask> m{SubsetMask{}};
  for (int r = 0; r < rank; ++r) m.push_back(SubsetMask::singleton(r));
  return {rank, std::move(m)};
}

/// Checks the structural invariants, throwing on the first violation.
inline void validate(const SupportingClass& supp) {
  if (supp.rank < 1 || supp.rank > kMaxRank)
    throw Error(ErrorKind::RankOutOfRange, "rank " + std::to_string(supp.rank) + " outside 1.." + std::to_string(kMaxRank));
  for (auto m : supp.members)
    if (!m.fits(supp.rank))
      throw Error(ErrorKind::RankOutOfRange, "member " + to_string(m) + " exceeds rank " + std::to_string(supp.rank));
  for (std::size_t i = 1; i < supp.members.size(); ++i)
    if (supp.members[i] == supp.members[i - 1])
      throw Error(ErrorKind::DuplicateMember, "member " + to_string(supp.members[i]) + " listed twice");
  if (!supp.contains(SubsetMask{})) throw Error(ErrorKind::MissingEmptySet, "empty set must be a member");
  for (int r = 0; r < supp.rank; ++r)
    if (!supp.contains(SubsetMask::singleton(r)))
      throw Error(ErrorKind::MissingSingleton, "singleton {" + std::to_string(r + 1) + "} missing");
}

/// A root e*alpha_1 + sum_r a_r sigma_r. Membership in R^x is decided by a
/// context (see `root_validate`).
struct Root {
  int sign = 1;
  std::vector<std::int64_t> coeffs;

  Root() = default;
  Root(int sign_, std::vector<std::int64_t> coeffs_) : sign(sign_), coeffs(std::move(coeffs_)) {}

  Root negated() const {
    Root out{-sign, coeffs};
    for (auto& x : out.coeffs) x = -x;
    return out;
  }

  friend bool operator==(const Root&, const Root&) = default;
};

inline std::string to_string(const Root& a) {
  std::string s = a.sign > 0 ? "r[+1;" : "r[-1;";
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(a.coeffs[i]);
  }
  return s + "]";
}

/// Mask of coordinates where `v` is odd.
inline SubsetMask parity_mask(const std::vector<std::int64_t>& v) {
  SubsetMask m;
  for (std::size_t r = 0; r < v.size(); ++r)
    if (v[r] % 2 != 0) m.bits |= (1u << r);
  return m;
}

/// alpha_1 + tau_J.
inline Root base_root(int rank, SubsetMask J) {
  std::vector<std::int64_t> a(rank, 0);
  for (int r : J.elements()) a[r] = 1;
  return {1, std::move(a)};
}

/// Immutable derived data for one supporting class.
class SemilatticeContext {
 public:
  explicit SemilatticeContext(SupportingClass supp) : supp_(std::move(supp)) {
    validate(supp_);
    const int nu = supp_.rank;
    for (auto m : supp_.members)
      if (m.size() >= 3) esupp_.push_back(m);
    delta_.assign(eawg::pair_count(nu), 2);
    for (int r = 0; r < nu; ++r)
      for (int s = r + 1; s < nu; ++s)
        if (supp_.contains(SubsetMask::pair(r, s))) delta_[eawg::pair_index(nu, r, s)] = 1;
  }

  const SupportingClass& supp() const { return supp_; }
  int rank() const { return supp_.rank; }
  int index() const { return supp_.index(); }
  int pair_count() const { return eawg::pair_count(supp_.rank); }
  int pair_index(int r, int s) const { return eawg::pair_index(supp_.rank, r, s); }
  const std::vector<SubsetMask>& esupp() const { return esupp_; }
  bool contains(SubsetMask m) const { return supp_.contains(m); }

  /// delta(r,s): 1 if {r,s} is a member, else 2. Symmetric in r,s.
  int delta(int r, int s) const {
    if (r > s) std::swap(r, s);
    return delta_[pair_index(r, s)];
  }
  int delta_at(int pair) const { return delta_[pair]; }

  /// delta(J,r,s): 1 if {r,s} is a proper subset of J.
  static int delta_in(SubsetMask J, int r, int s) {
    const auto p = SubsetMask::pair(r, s);
    return (J.contains(p) && J != p) ? 1 : 0;
  }

  /// Position of J in esupp(), or -1.
  int esupp_position(SubsetMask J) const {
    auto it = std::lower_bound(esupp_.begin(), esupp_.end(), J);
    return (it != esupp_.end() && *it == J) ? static_cast<int>(it - esupp_.begin()) : -1;
  }

 private:
  SupportingClass supp_;
  std::vector<SubsetMask> esupp_;
  std::vector<std::uint8_t> delta_;
};

inline SemilatticeContext build_context(SupportingClass supp) { return SemilatticeContext(std::move(supp)); }

struct RootInfo {
  bool valid = false;
  SubsetMask support;
  std::vector<std::int64_t> lambda;
};

/// Decides whether `a` lies in R^x and, if so, splits it as
/// e*alpha_1 + tau_J + 2*lambda.
inline RootInfo root_validate(const SemilatticeContext& ctx, const Root& a) {
  RootInfo info;
  if (static_cast<int>(a.coeffs.size()) != ctx.rank() || (a.sign != 1 && a.sign != -1)) return info;
  const auto J = parity_mask(a.coeffs);
  if (!ctx.contains(J)) return info;
  info.valid = true;
  info.support = J;
  info.lambda.resize(a.coeffs.size());
  for (std::size_t r = 0; r < a.coeffs.size(); ++r) info.lambda[r] = (a.coeffs[r] - (J.has(static_cast<int>(r)) ? 1 : 0)) / 2;
  return info;
}

inline RootInfo require_root(const SemilatticeContext& ctx, const Root& a) {
  auto info = root_validate(ctx, a);
  if (!info.valid) throw Error(ErrorKind::InvalidRoot, to_string(a) + " is not a root");
  return info;
}

/// Membership of sum_r v_r sigma_r in S+S.
inline bool is_isotropic(const SemilatticeContext& ctx, const std::vector<std::int64_t>& v) {
  if (static_cast<int>(v.size()) != ctx.rank())
    throw Error(ErrorKind::DimensionMismatch, "vector length differs from rank");
  const auto p = parity_mask(v);
  for (auto J : ctx.supp().members)
    if (ctx.contains(SubsetMask(J.bits ^ p.bits))) return true;
  return false;
}

/// Class with index m that contains {1,2},{1,3},{2,3},{1,2,3}, padded with the
/// lowest remaining masks.
inline SupportingClass make_family(int rank, int m) {
  if (rank < 3 || rank > kMaxRank)
    throw Error(ErrorKind::RankOutOfRange, "family needs rank in 3.." + std::to_string(kMaxRank));
  const std::int64_t top = (std::int64_t{1} << rank) - 1;
  if (m < rank + 4 || m > top)
    throw Error(ErrorKind::IndexOutOfRange,
                "index " + std::to_string(m) + " outside " + std::to_string(rank + 4) + ".." + std::to_string(top));
  auto cls = minimal_class(rank);
  auto& mem = cls.members;
  for (auto J : {SubsetMask::of({0, 1}), SubsetMask::of({0, 2}), SubsetMask::of({1, 2}), SubsetMask::of({0, 1, 2})})
    mem.push_back(J);
  std::sort(mem.begin(), mem.end());
  for (std::uint32_t b = 0; static_cast<int>(mem.size()) < m + 1; ++b) {
    SubsetMask J(b);
    if (!std::binary_search(mem.begin(), mem.end(), J)) mem.insert(std::upper_bound(mem.begin(), mem.end(), J), J);
  }
  return cls;
}

/// Relabels coordinates: coordinate r becomes perm[r].
inline SupportingClass permute(const SupportingClass& supp, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != supp.rank) throw Error(ErrorKind::InvalidPermutation, "wrong length");
  std::vector<bool> seen(perm.size(), false);
  for (int p : perm) {
    if (p < 0 || p >= supp.rank || seen[p]) throw Error(ErrorKind::InvalidPermutation, "not a bijection");
    seen[p] = true;
  }
  std::vector<SubsetMask> out;
  out.reserve(supp.members.size());
  for (auto m : supp.members) {
    SubsetMask img;
    for (int r : m.elements()) img.bits |= (1u << perm[r]);
    out.push_back(img);
  }
  return {supp.rank, std::move(out)};
}

/// Representative of the orbit under coordinate permutations: the image whose
/// sorted member list is lexicographically smallest.
inline SupportingClass canonical_form(const SupportingClass& supp) {
  std::vector<int> perm(supp.rank);
  std::iota(perm.begin(), perm.end(), 0);
  SupportingClass best = supp;
  do {
    auto img = permute(supp, perm);
    if (std::lexicographical_compare(img.members.begin(), img.members.end(), best.members.begin(),
                                     best.members.end()))
      best = std::move(img);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// ---------------------------------------------------------------------------
// Text and JSON formats

namespace detail {

class SuppParser {
 public:
  explicit SuppParser(std::string_view text) : s_(text) {}

  SupportingClass parse() {
    skip_ws();
    expect_word("rank");
    skip_ws();
    expect('=');
    skip_ws();
    const auto rank_pos = pos_;
    const auto rank = parse_int();
    if (rank < 1 || rank > kMaxRank)
      throw Error(ErrorKind::RankOutOfRange, "rank " + std::to_string(rank) + " at position " + std::to_string(rank_pos),
                  static_cast<std::int64_t>(rank_pos));
    skip_ws();
    expect(';');
    std::vector<SubsetMask> members{SubsetMask{}};
    skip_ws();
    while (pos_ < s_.size()) {
      const auto start = pos_;
      auto m = parse_set(static_cast<int>(rank));
      if (std::find(members.begin(), members.end(), m) != members.end())
        throw Error(ErrorKind::DuplicateMember, "member " + to_string(m) + " at position " + std::to_string(start),
                    static_cast<std::int64_t>(start));
      members.push_back(m);
      skip_ws();
      if (pos_ < s_.size()) {
        expect(',');
        skip_ws();
        if (pos_ >= s_.size()) fail("member expected after ','");
      }
    }
    SupportingClass cls(static_cast<int>(rank), std::move(members));
    validate(cls);
    return cls;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::SyntaxError, what + " at position " + std::to_string(pos_), static_cast<std::int64_t>(pos_));
  }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  void expect(char c) {
    if (pos_ >= s_.size() || s_[pos_] != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  void expect_word(std::string_view w) {
    if (s_.substr(pos_, w.size()) != w) fail("expected '" + std::string(w) + "'");
    pos_ += w.size();
  }
  long parse_int() {
    const auto start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])) && pos_ - start < 9) ++pos_;
    if (pos_ == start) fail("expected integer");
    return std::stol(std::string(s_.substr(start, pos_ - start)));
  }
  SubsetMask parse_set(int rank) {
    expect('{');
    SubsetMask m;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '}') {
      ++pos_;
      return m;
    }
    while (true) {
      skip_ws();
      const auto at = pos_;
      const auto v = parse_int();
      if (v < 1 || v > rank)
        throw Error(ErrorKind::RankOutOfRange, "coordinate " + std::to_string(v) + " at position " + std::to_string(at),
                    static_cast<std::int64_t>(at));
      if (m.has(static_cast<int>(v - 1))) {
        pos_ = at;
        fail("repeated coordinate");
      }
      m.bits |= 1u << (v - 1);
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '}') {
        ++pos_;
        return m;
      }
      expect(',');
    }
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

inline bool display_order(SubsetMask a, SubsetMask b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a.elements() < b.elements();
}

}  // namespace detail

/// Parses `rank=<n>; {a,b,...},{...}` (1-based, empty set implicit).
inline SupportingClass parse_supp(std::string_view text) { return detail::SuppParser(text).parse(); }

/// Inverse of parse_supp. Members are listed by size, then lexicographically.
inline std::string serialize_supp(const SupportingClass& supp) {
  auto ms = supp.members;
  std::erase(ms, SubsetMask{});
  std::sort(ms.begin(), ms.end(), detail::display_order);
  std::string out = "rank=" + std::to_string(supp.rank) + ";";
  for (std::size_t i = 0; i < ms.size(); ++i) out += (i ? "," : " ") + to_string(ms[i]);
  return out;
}

inline nlohmann::json mask_to_json(SubsetMask m) {
  auto j = nlohmann::json::array();
  for (int r : m.elements()) j.push_back(r + 1);
  return j;
}

inline nlohmann::json supp_to_json(const SupportingClass& supp) {
  auto ms = supp.members;
  std::erase(ms, SubsetMask{});
  std::sort(ms.begin(), ms.end(), detail::display_order);
  nlohmann::json list = nlohmann::json::array();
  for (auto m : ms) list.push_back(mask_to_json(m));
  return {{"rank", supp.rank}, {"supp", list}};
}

inline SupportingClass supp_from_json(const nlohmann::json& j) {
  try {
    const int rank = j.at("rank").get<int>();
    if (rank < 1 || rank > kMaxRank) throw Error(ErrorKind::RankOutOfRange, "rank " + std::to_string(rank));
    std::vector<SubsetMask> members{SubsetMask{}};
    for (const auto& set : j.at("supp")) {
      SubsetMask m;
      for (const auto& v : set) {
        const int r = v.get<int>();
        if (r < 1 || r > rank) throw Error(ErrorKind::RankOutOfRange, "coordinate " + std::to_string(r));
        if (m.has(r - 1)) throw Error(ErrorKind::SyntaxError, "repeated coordinate " + std::to_string(r));
        m.bits |= 1u << (r - 1);
      }
      if (std::find(members.begin(), members.end(), m) != members.end())
        throw Error(ErrorKind::DuplicateMember, "member " + to_string(m));
      members.push_back(m);
    }
    SupportingClass cls(rank, std::move(members));
    validate(cls);
    return cls;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SyntaxError, e.what());
  }
}

/// Accepts either format; JSON is recognised by a leading '{'.
inline SupportingClass parse_supp_any(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
      throw Error(ErrorKind::SyntaxError, e.what(), static_cast<std::int64_t>(e.byte));
    }
    return supp_from_json(j);
  }
  return parse_supp(text);
}

}  // namespace eawg
