#pragma once

// Finite-sums machinery: growth conditions, FS-set enumeration with support
// decoding, condensations, and the additive isomorphism onto finite unions.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "fuforge/finset.hpp"

namespace fuforge {

/// x_n > g * (x_0 + ... + x_{n-1}) for every n.
inline bool check_growth(std::span<const std::uint64_t> x, std::uint64_t g) {
  std::uint64_t prefix = 0;
  for (std::uint64_t term : x) {
    if (term <= g * prefix) return false;
    prefix += term;
  }
  return true;
}

/// A finite sequence of positive integers, optionally carrying a growth
/// factor that was verified at construction.
struct GrowthSequence {
  std::vector<std::uint64_t> terms;
  std::optional<std::uint64_t> growth_factor;

  explicit GrowthSequence(std::vector<std::uint64_t> t) : terms(std::move(t)) { validate(); }

  GrowthSequence(std::vector<std::uint64_t> t, std::uint64_t g)
      : terms(std::move(t)), growth_factor(g) {
    validate();
    if (!check_growth(terms, g))
      throw std::invalid_argument("GrowthSequence: stated growth factor does not hold");
  }

  std::size_t size() const { return terms.size(); }

 private:
  void validate() const {
    if (terms.empty()) throw std::invalid_argument("GrowthSequence: empty sequence");
    for (std::uint64_t t : terms)
      if (t == 0) throw std::invalid_argument("GrowthSequence: terms must be positive");
  }
};

/// Length cap for full FS enumeration; beyond it only greedy decoding of
/// growth sequences is available.
inline constexpr std::size_t kMaxEnumerationLength = 24;

/// The enumerated finite-sums set FS_k(x): every sum over a nonempty index
/// set inside [k, N), plus a sum -> index-set decode map that exists exactly
/// when all those sums are distinct.
class FSCatalog {
 public:
  FSCatalog(GrowthSequence source, std::size_t skip)
      : source_(std::move(source)), skip_(skip) {
    const std::size_t n = source_.size();
    if (skip_ >= n) throw std::out_of_range("FSCatalog: skip index past the sequence");
    const std::size_t width = n - skip_;
    if (width > kMaxEnumerationLength)
      throw std::length_error("FSCatalog: enumeration capped at 24 terms");

    const std::uint64_t count = std::uint64_t{1} << width;
    std::vector<std::uint64_t> sums_by_mask(count, 0);
    std::unordered_map<std::uint64_t, std::uint64_t> first_mask;
    first_mask.reserve(count);
    bool unique = true;
    for (std::uint64_t m = 1; m < count; ++m) {
      const unsigned low = static_cast<unsigned>(std::countr_zero(m));
      sums_by_mask[m] = sums_by_mask[m & (m - 1)] + source_.terms[skip_ + low];
      auto [it, inserted] = first_mask.emplace(sums_by_mask[m], m);
      if (!inserted) unique = false;
      (void)it;
    }
    sums_.reserve(first_mask.size());
    for (const auto& [sum, mask] : first_mask) sums_.push_back(sum);
    std::sort(sums_.begin(), sums_.end());
    if (unique) decode_ = std::move(first_mask);
  }

  const GrowthSequence& source() const { return source_; }
  std::size_t skip() const { return skip_; }
  const std::vector<std::uint64_t>& sums() const { return sums_; }

  bool contains(std::uint64_t z) const {
    return std::binary_search(sums_.begin(), sums_.end(), z);
  }

  /// Whether every sum has a unique generating index set.
  bool unique_representations() const { return decode_.has_value(); }

  /// The generating index set of z (absolute indices, offset by skip), or
  /// nullopt when z is not an FS element. Requires unique representations.
  std::optional<FinSet> decode(std::uint64_t z) const {
    if (!decode_)
      throw std::domain_error("FSCatalog: representations are not unique, no decode map");
    auto it = decode_->find(z);
    if (it == decode_->end()) return std::nullopt;
    return FinSet::from_mask(it->second << skip_);
  }

 private:
  GrowthSequence source_;
  std::size_t skip_;
  std::vector<std::uint64_t> sums_;
  std::optional<std::unordered_map<std::uint64_t, std::uint64_t>> decode_;  // sum -> mask
};

inline FSCatalog enumerate_fs(const GrowthSequence& x, std::size_t k = 0) {
  return FSCatalog(x, k);
}

/// Support decoding by repeated extraction of the largest usable term. Only
/// correct under a verified growth factor >= 2, which forces every FS
/// element at or above x_i to contain x_i.
inline std::optional<FinSet> greedy_decode(const GrowthSequence& x, std::uint64_t z) {
  if (!x.growth_factor || *x.growth_factor < 2)
    throw std::domain_error("greedy_decode: needs a verified growth factor >= 2");
  FinSet supp;
  std::uint64_t rest = z;
  for (std::size_t i = x.size(); i-- > 0;) {
    if (rest >= x.terms[i]) {
      supp.insert(static_cast<unsigned>(i));
      rest -= x.terms[i];
    }
  }
  if (rest != 0 || supp.empty()) return std::nullopt;
  return supp;
}

/// The x-support of z. Greedy for growth-verified sequences, otherwise via
/// the catalog's enumeration map; nullopt when z is not an FS element.
inline std::optional<FinSet> decode_supp(const FSCatalog& cat, std::uint64_t z) {
  const GrowthSequence& x = cat.source();
  if (cat.skip() == 0 && x.growth_factor && *x.growth_factor >= 2) return greedy_decode(x, z);
  return cat.decode(z);
}

/// The unique-sums biconditional: for all nonempty index sets s, t the value
/// sum(s) + sum(t) lies in FS(x) exactly when s and t are disjoint. The
/// forward direction is automatic; the quadratic sweep hunts for overlapping
/// pairs whose sum sneaks back in.
inline bool unique_sums_holds(const GrowthSequence& x) {
  const std::size_t n = x.size();
  if (n > 13) throw std::length_error("unique_sums_holds: pair sweep capped at 13 terms");
  const std::uint64_t count = std::uint64_t{1} << n;
  std::vector<std::uint64_t> sum(count, 0);
  for (std::uint64_t m = 1; m < count; ++m)
    sum[m] = sum[m & (m - 1)] + x.terms[static_cast<unsigned>(std::countr_zero(m))];
  std::unordered_map<std::uint64_t, char> fs;
  fs.reserve(count);
  for (std::uint64_t m = 1; m < count; ++m) fs.emplace(sum[m], 1);
  for (std::uint64_t s = 1; s < count; ++s)
    for (std::uint64_t t = s; t < count; ++t)
      if ((s & t) != 0 && fs.count(sum[s] + sum[t])) return false;
  return true;
}

/// A verified condensation: the blocks are the x-supports of the induced
/// terms y_j = sum over blocks[j].
struct Condensation {
  std::vector<FinSet> blocks;
  std::vector<std::uint64_t> induced_terms;
};

struct CondensationResult {
  bool ok = false;
  Condensation cond;
  std::optional<std::uint64_t> violating_sum;
  std::string reason;
  bool blocks_pairwise_disjoint = false;
  /// Whether y inherits x's growth factor; only evaluated when x carries one
  /// and y is increasing.
  std::optional<bool> growth_inherited;
};

/// Checks y against x: every term must be an FS element and FS(y) must sit
/// inside FS(x). Refuses with the first violating sum otherwise.
inline CondensationResult is_condensation(std::span<const std::uint64_t> y,
                                          const GrowthSequence& x) {
  const FSCatalog cat(x, 0);
  if (!cat.unique_representations())
    throw std::domain_error("is_condensation: x lacks unique representations");
  CondensationResult res;
  if (y.empty()) {
    res.reason = "empty candidate";
    return res;
  }
  for (std::uint64_t term : y) {
    auto supp = cat.decode(term);
    if (!supp) {
      res.violating_sum = term;
      res.reason = std::to_string(term) + " is not a finite sum of x";
      return res;
    }
    res.cond.blocks.push_back(*supp);
    res.cond.induced_terms.push_back(term);
  }
  if (y.size() <= kMaxEnumerationLength) {
    const std::uint64_t count = std::uint64_t{1} << y.size();
    std::vector<std::uint64_t> sum(count, 0);
    for (std::uint64_t m = 1; m < count; ++m) {
      sum[m] = sum[m & (m - 1)] + y[static_cast<unsigned>(std::countr_zero(m))];
      if (!cat.contains(sum[m])) {
        res.violating_sum = sum[m];
        res.reason = "FS(y) escapes FS(x) at " + std::to_string(sum[m]);
        return res;
      }
    }
  }
  res.ok = true;
  res.blocks_pairwise_disjoint = true;
  for (std::size_t i = 0; i < res.cond.blocks.size() && res.blocks_pairwise_disjoint; ++i)
    for (std::size_t j = i + 1; j < res.cond.blocks.size(); ++j)
      if (res.cond.blocks[i].intersects(res.cond.blocks[j])) {
        res.blocks_pairwise_disjoint = false;
        break;
      }
  if (x.growth_factor && std::is_sorted(y.begin(), y.end()) &&
      std::adjacent_find(y.begin(), y.end()) == y.end())
    res.growth_inherited = check_growth(y, *x.growth_factor);
  return res;
}

/// The natural map from FS(x) onto finite unions: an FS element goes to its
/// generating index set. Sums of disjoint-support elements go to unions.
inline std::optional<FinSet> additive_iso_image(const FSCatalog& cat, std::uint64_t z) {
  return cat.decode(z);
}

/// { n < bound | supp(x_n) meets L } for caller-supplied supports.
inline FinSet link_support_indices(std::span<const FinSet> supports, const FinSet& l,
                                   std::size_t bound) {
  FinSet out;
  const std::size_t limit = std::min(bound, supports.size());
  for (std::size_t n = 0; n < limit; ++n)
    if (supports[n].intersects(l)) out.insert(static_cast<unsigned>(n));
  return out;
}

}  // namespace fuforge
