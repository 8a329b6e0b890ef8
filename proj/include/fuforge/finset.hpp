#pragma once

// Finite subsets of {0,...,U-1} packed into a 64-bit word, and the partial
// semigroup of disjoint unions on the nonempty ones.

#include <bit>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fuforge {

/// Immutable-style value type for a finite set of small non-negative
/// integers. The universe bound U (at most 64) is fixed per instance;
/// equality and hashing look only at the element mask.
class FinSet {
 public:
  static constexpr unsigned kMaxUniverse = 64;

  FinSet() = default;

  explicit FinSet(unsigned universe) : universe_(checked_universe(universe)) {}

  FinSet(std::initializer_list<unsigned> elems, unsigned universe = kMaxUniverse)
      : universe_(checked_universe(universe)) {
    for (unsigned e : elems) insert(e);
  }

  static FinSet from_mask(std::uint64_t mask, unsigned universe = kMaxUniverse) {
    FinSet s{universe};
    if (universe < kMaxUniverse && (mask >> universe) != 0)
      throw std::out_of_range("FinSet: mask has elements beyond the universe bound");
    s.bits_ = mask;
    return s;
  }

  std::uint64_t mask() const { return bits_; }
  unsigned universe() const { return universe_; }

  bool empty() const { return bits_ == 0; }
  unsigned size() const { return static_cast<unsigned>(std::popcount(bits_)); }

  bool contains(unsigned e) const { return e < universe_ && (bits_ >> e) & 1u; }

  unsigned min() const {
    require_nonempty("min");
    return static_cast<unsigned>(std::countr_zero(bits_));
  }

  unsigned max() const {
    require_nonempty("max");
    return 63u - static_cast<unsigned>(std::countl_zero(bits_));
  }

  void insert(unsigned e) {
    if (e >= universe_) throw std::out_of_range("FinSet: element beyond universe bound");
    bits_ |= std::uint64_t{1} << e;
  }

  void erase(unsigned e) {
    if (e < kMaxUniverse) bits_ &= ~(std::uint64_t{1} << e);
  }

  bool intersects(const FinSet& o) const { return (bits_ & o.bits_) != 0; }
  bool subset_of(const FinSet& o) const { return (bits_ & ~o.bits_) == 0; }

  FinSet union_with(const FinSet& o) const { return combine(bits_ | o.bits_, o); }
  FinSet intersect(const FinSet& o) const { return combine(bits_ & o.bits_, o); }
  FinSet minus(const FinSet& o) const { return combine(bits_ & ~o.bits_, o); }

  std::vector<unsigned> elements() const {
    std::vector<unsigned> out;
    out.reserve(size());
    for (std::uint64_t m = bits_; m != 0; m &= m - 1)
      out.push_back(static_cast<unsigned>(std::countr_zero(m)));
    return out;
  }

  /// Renders as "{0,2,5}" (strictly increasing, comma-separated).
  std::string to_string() const {
    std::string out = "{";
    bool first = true;
    for (unsigned e : elements()) {
      if (!first) out += ',';
      out += std::to_string(e);
      first = false;
    }
    out += '}';
    return out;
  }

  /// Parses the textual form produced by to_string; the braces are optional.
  /// Elements must be strictly increasing.
  static FinSet parse(const std::string& text, unsigned universe = kMaxUniverse) {
    std::string body = text;
    if (!body.empty() && body.front() == '{') {
      if (body.back() != '}') throw std::invalid_argument("FinSet: unbalanced braces");
      body = body.substr(1, body.size() - 2);
    }
    FinSet s{universe};
    std::size_t pos = 0;
    long long prev = -1;
    while (pos < body.size()) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(body.substr(pos), &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("FinSet: malformed element list '" + text + "'");
      }
      if (static_cast<long long>(v) <= prev)
        throw std::invalid_argument("FinSet: elements must be strictly increasing");
      prev = static_cast<long long>(v);
      s.insert(static_cast<unsigned>(v));
      pos += used;
      if (pos < body.size()) {
        if (body[pos] != ',') throw std::invalid_argument("FinSet: expected ','");
        ++pos;
      }
    }
    return s;
  }

  friend bool operator==(const FinSet& a, const FinSet& b) { return a.bits_ == b.bits_; }
  friend bool operator!=(const FinSet& a, const FinSet& b) { return !(a == b); }

 private:
  static unsigned checked_universe(unsigned u) {
    if (u == 0 || u > kMaxUniverse)
      throw std::invalid_argument("FinSet: universe bound must be in [1,64]");
    return u;
  }

  void require_nonempty(const char* what) const {
    if (empty()) throw std::domain_error(std::string("FinSet: ") + what + " of empty set");
  }

  FinSet combine(std::uint64_t bits, const FinSet& o) const {
    FinSet s{universe_ > o.universe_ ? universe_ : o.universe_};
    s.bits_ = bits;
    return s;
  }

  std::uint64_t bits_ = 0;
  unsigned universe_ = kMaxUniverse;
};

/// s . t in the partial semigroup of finite nonempty sets: defined exactly
/// when the operands are disjoint, in which case it is the union. An
/// overlapping pair is a signal (nullopt), not a fault; empty operands are.
inline std::optional<FinSet> disjoint_union(const FinSet& s, const FinSet& t) {
  if (s.empty() || t.empty())
    throw std::invalid_argument("disjoint_union: operands must be nonempty");
  if (s.intersects(t)) return std::nullopt;
  return s.union_with(t);
}

/// t lies in sigma(s), i.e. s . t is defined.
inline bool is_compatible(const FinSet& s, const FinSet& t) {
  if (s.empty() || t.empty())
    throw std::invalid_argument("is_compatible: operands must be nonempty");
  return !s.intersects(t);
}

/// (v, w) is an ordered pair: max(v) < min(w).
inline bool is_ordered_pair(const FinSet& v, const FinSet& w) {
  if (v.empty() || w.empty())
    throw std::invalid_argument("is_ordered_pair: operands must be nonempty");
  return v.max() < w.min();
}

}  // namespace fuforge

template <>
struct std::hash<fuforge::FinSet> {
  std::size_t operator()(const fuforge::FinSet& s) const noexcept {
    return std::hash<std::uint64_t>{}(s.mask());
  }
};
