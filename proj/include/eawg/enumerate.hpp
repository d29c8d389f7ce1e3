#pragma once

// Exhaustive sweep over every supporting class of a given rank.
//
// A class is encoded by a code word: bit i set iff the i-th mask of size >= 2
// (ascending) is a member. The empty set and singletons are always present.

#include <algorithm>
#include <array>
#include <atomic>
#include <bit>
#include <cstdint>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "semilattice.hpp"

namespace eawg {

inline constexpr int kMaxSweepRank = 5;
inline constexpr int kLargeSweepRank = 5;

/// Masks with at least two elements, ascending; code bit i <-> free_masks[i].
inline std::vector<SubsetMask> free_masks(int rank) {
  std::vector<SubsetMask> out;
  for (std::uint32_t b = 0; b < (1u << rank); ++b)
    if (std::popcount(b) >= 2) out.emplace_back(b);
  return out;
}

inline SupportingClass class_from_code(int rank, std::uint64_t code) {
  auto cls = minimal_class(rank);
  const auto fm = free_masks(rank);
  for (std::size_t i = 0; i < fm.size(); ++i)
    if ((code >> i) & 1u) cls.members.push_back(fm[i]);
  std::sort(cls.members.begin(), cls.members.end());
  return cls;
}

inline std::uint64_t code_from_class(const SupportingClass& cls) {
  const auto fm = free_masks(cls.rank);
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < fm.size(); ++i)
    if (cls.contains(fm[i])) code |= std::uint64_t{1} << i;
  return code;
}

/// Precomputed tables for evaluating n0 directly on code words.
class CodeEvaluator {
 public:
  explicit CodeEvaluator(int rank) : rank_(rank) {
    const auto fm = free_masks(rank);
    for (std::size_t i = 0; i < fm.size(); ++i)
      if (fm[i].size() >= 3) essential_ |= std::uint64_t{1} << i;
    for (int r = 0; r < rank; ++r)
      for (int s = r + 1; s < rank; ++s) {
        const auto p = SubsetMask::pair(r, s);
        Pair pr;
        for (std::size_t i = 0; i < fm.size(); ++i) {
          if (fm[i] == p) pr.self = std::uint64_t{1} << i;
          if (fm[i].size() >= 3 && fm[i].contains(p)) pr.above |= std::uint64_t{1} << i;
        }
        pairs_.push_back(pr);
      }
  }

  int rank() const { return rank_; }

  /// n0 = |Esupp| - rank of the parity system.
  int n0(std::uint64_t code) const {
    std::array<std::uint64_t, 64> basis{};
    int rk = 0;
    for (const auto& p : pairs_) {
      if (code & p.self) continue;
      std::uint64_t v = code & p.above;
      while (v) {
        const int hb = 63 - std::countl_zero(v);
        if (!basis[hb]) {
          basis[hb] = v;
          ++rk;
          break;
        }
        v ^= basis[hb];
      }
    }
    return std::popcount(code & essential_) - rk;
  }

 private:
  struct Pair {
    std::uint64_t self = 0;
    std::uint64_t above = 0;
  };
  int rank_;
  std::uint64_t essential_ = 0;
  std::vector<Pair> pairs_;
};

/// Code images under all coordinate permutations, via per-byte lookup tables.
class PermutationCanon {
 public:
  explicit PermutationCanon(int rank) {
    const auto fm = free_masks(rank);
    const std::size_t nbits = fm.size();
    nbytes_ = (nbits + 7) / 8;
    std::vector<int> perm(rank);
    std::iota(perm.begin(), perm.end(), 0);
    std::next_permutation(perm.begin(), perm.end());  // skip identity
    if (rank < 2) return;
    do {
      std::vector<std::uint64_t> table(nbytes_ * 256, 0);
      std::vector<std::uint64_t> image(nbits);
      for (std::size_t i = 0; i < nbits; ++i) {
        SubsetMask img;
        for (int r : fm[i].elements()) img.bits |= 1u << perm[r];
        const auto pos = std::lower_bound(fm.begin(), fm.end(), img) - fm.begin();
        image[i] = std::uint64_t{1} << pos;
      }
      for (std::size_t byte = 0; byte < nbytes_; ++byte)
        for (int v = 0; v < 256; ++v) {
          std::uint64_t out = 0;
          for (int b = 0; b < 8; ++b) {
            const std::size_t bit = byte * 8 + b;
            if (bit < nbits && ((v >> b) & 1)) out |= image[bit];
          }
          table[byte * 256 + v] = out;
        }
      tables_.push_back(std::move(table));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }

  /// True iff no permutation maps `code` to a smaller code.
  bool is_canonical(std::uint64_t code) const {
    for (const auto& t : tables_) {
      std::uint64_t img = 0;
      for (std::size_t byte = 0; byte < nbytes_; ++byte) img |= t[byte * 256 + ((code >> (8 * byte)) & 0xff)];
      if (img < code) return false;
    }
    return true;
  }

 private:
  std::size_t nbytes_ = 0;
  std::vector<std::vector<std::uint64_t>> tables_;
};

using Histogram = std::map<std::pair<int, int>, std::uint64_t>;  // (index, n0) -> count

struct SweepResult {
  int rank = 0;
  std::uint64_t total_classes = 0;
  Histogram histogram;
  std::map<int, std::uint64_t> failures_by_index;  // index -> LacksPresentation count
  bool dedup = false;
  std::uint64_t deduped_total = 0;
  Histogram deduped_histogram;

  friend bool operator==(const SweepResult&, const SweepResult&) = default;
};

struct SweepOptions {
  int rank = 3;
  bool dedup = false;
  unsigned workers = 1;
  bool allow_large = false;
  std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

inline SweepResult sweep(const SweepOptions& opt) {
  const int nu = opt.rank;
  if (nu < 1) throw Error(ErrorKind::RankOutOfRange, "rank must be positive");
  if (nu > kMaxSweepRank)
    throw Error(ErrorKind::RankTooLarge, "rank " + std::to_string(nu) + " has 2^" +
                                             std::to_string((1 << nu) - 1 - nu) + " classes");
  if (nu >= kLargeSweepRank && !opt.allow_large)
    throw Error(ErrorKind::RankTooLarge, "rank " + std::to_string(nu) + " sweep needs allow_large");

  const int nfree = (1 << nu) - 1 - nu;
  const std::uint64_t total = std::uint64_t{1} << nfree;
  const CodeEvaluator eval(nu);
  std::unique_ptr<PermutationCanon> canon;
  if (opt.dedup) canon = std::make_unique<PermutationCanon>(nu);

  const std::uint64_t chunk = std::min<std::uint64_t>(total, std::uint64_t{1} << 16);
  const std::uint64_t nchunks = (total + chunk - 1) / chunk;
  std::atomic<std::uint64_t> next_chunk{0};
  std::atomic<std::uint64_t> done{0};
  std::mutex merge_mutex;
  SweepResult result;
  result.rank = nu;
  result.total_classes = total;
  result.dedup = opt.dedup;

  // n0 <= 16 at rank 5; index <= 31.
  constexpr int kIdx = 32, kN0 = 64;
  auto worker = [&] {
    std::vector<std::uint64_t> hist(kIdx * kN0, 0), dhist(kIdx * kN0, 0);
    for (std::uint64_t c = next_chunk++; c < nchunks; c = next_chunk++) {
      const std::uint64_t lo = c * chunk, hi = std::min(total, lo + chunk);
      for (std::uint64_t code = lo; code < hi; ++code) {
        const int idx = nu + std::popcount(code);
        const int n0 = eval.n0(code);
        ++hist[idx * kN0 + n0];
        if (canon && canon->is_canonical(code)) ++dhist[idx * kN0 + n0];
      }
      const auto d = done += (hi - lo);
      if (opt.progress) {
        std::lock_guard lock(merge_mutex);
        opt.progress(d, total);
      }
    }
    std::lock_guard lock(merge_mutex);
    for (int i = 0; i < kIdx; ++i)
      for (int z = 0; z < kN0; ++z) {
        if (hist[i * kN0 + z]) result.histogram[{i, z}] += hist[i * kN0 + z];
        if (dhist[i * kN0 + z]) result.deduped_histogram[{i, z}] += dhist[i * kN0 + z];
      }
  };

  const unsigned nw = std::max(1u, opt.workers);
  std::vector<std::thread> threads;
  for (unsigned i = 1; i < nw; ++i) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();

  for (const auto& [key, count] : result.histogram)
    if (key.second > 0) result.failures_by_index[key.first] += count;
  for (const auto& [key, count] : result.deduped_histogram) result.deduped_total += count;
  return result;
}

// ---------------------------------------------------------------------------
// Export

inline std::string to_csv(const SweepResult& r) {
  std::string out = "index,n0,count\n";
  for (const auto& [key, count] : r.histogram)
    out += std::to_string(key.first) + "," + std::to_string(key.second) + "," + std::to_string(count) + "\n";
  return out;
}

inline nlohmann::json to_json(const SweepResult& r) {
  using nlohmann::json;
  auto hist = [](const Histogram& h) {
    json a = json::array();
    for (const auto& [key, count] : h) a.push_back({{"index", key.first}, {"n0", key.second}, {"count", count}});
    return a;
  };
  json fails = json::array();
  for (const auto& [idx, count] : r.failures_by_index) fails.push_back({{"index", idx}, {"count", count}});
  json j = {{"rank", r.rank},
            {"totalClasses", r.total_classes},
            {"histogram", hist(r.histogram)},
            {"failuresByIndex", fails},
            {"dedup", r.dedup}};
  if (r.dedup) {
    j["dedupedTotal"] = r.deduped_total;
    j["dedupedHistogram"] = hist(r.deduped_histogram);
  }
  return j;
}

inline SweepResult sweep_from_json(const nlohmann::json& j) {
  try {
    SweepResult r;
    r.rank = j.at("rank").get<int>();
    r.total_classes = j.at("totalClasses").get<std::uint64_t>();
    for (const auto& e : j.at("histogram"))
      r.histogram[{e.at("index").get<int>(), e.at("n0").get<int>()}] = e.at("count").get<std::uint64_t>();
    for (const auto& e : j.at("failuresByIndex"))
      r.failures_by_index[e.at("index").get<int>()] = e.at("count").get<std::uint64_t>();
    r.dedup = j.at("dedup").get<bool>();
    if (r.dedup) {
      r.deduped_total = j.at("dedupedTotal").get<std::uint64_t>();
      for (const auto& e : j.at("dedupedHistogram"))
        r.deduped_histogram[{e.at("index").get<int>(), e.at("n0").get<int>()}] = e.at("count").get<std::uint64_t>();
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::SyntaxError, e.what());
  }
}

enum class ExportFormat { Csv, Json };

inline void export_result(const SweepResult& r, const std::string& path, ExportFormat fmt) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorKind::IoError, "cannot open " + path);
  if (fmt == ExportFormat::Csv)
    os << to_csv(r);
  else
    os << to_json(r).dump(2) << '\n';
  if (!os) throw Error(ErrorKind::IoError, "write failed for " + path);
}

}  // namespace eawg
