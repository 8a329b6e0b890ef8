#pragma once

// Finite semigroups given by their operation table, principal points as the
// computable stand-in for ultrafilters, and the translate/preimage calculus
// built on them.

#include <array>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuforge/finset.hpp"

namespace fuforge {

/// A finite semigroup on {0,...,n-1} with a row-major operation table.
/// Associativity is validated eagerly: every consumer of this type silently
/// depends on it.
class FiniteSemigroup {
 public:
  FiniteSemigroup(unsigned order, std::vector<unsigned> table)
      : order_(order), table_(std::move(table)) {
    if (order_ == 0 || order_ > FinSet::kMaxUniverse)
      throw std::invalid_argument("FiniteSemigroup: order must be in [1,64]");
    if (table_.size() != static_cast<std::size_t>(order_) * order_)
      throw std::invalid_argument("FiniteSemigroup: table size must be order^2");
    for (unsigned v : table_)
      if (v >= order_) throw std::invalid_argument("FiniteSemigroup: table entry out of range");
    for (unsigned a = 0; a < order_; ++a)
      for (unsigned b = 0; b < order_; ++b)
        for (unsigned c = 0; c < order_; ++c)
          if (op(op(a, b), c) != op(a, op(b, c)))
            throw std::invalid_argument("FiniteSemigroup: operation is not associative");
  }

  static FiniteSemigroup cyclic(unsigned n) {
    std::vector<unsigned> t(static_cast<std::size_t>(n) * n);
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = 0; b < n; ++b) t[a * n + b] = (a + b) % n;
    return {n, std::move(t)};
  }

  static FiniteSemigroup left_zero(unsigned n) {
    std::vector<unsigned> t(static_cast<std::size_t>(n) * n);
    for (unsigned a = 0; a < n; ++a)
      for (unsigned b = 0; b < n; ++b) t[a * n + b] = a;
    return {n, std::move(t)};
  }

  unsigned order() const { return order_; }

  unsigned op(unsigned s, unsigned t) const { return table_[s * order_ + t]; }

  unsigned checked_op(unsigned s, unsigned t) const {
    check_element(s);
    check_element(t);
    return op(s, t);
  }

  void check_element(unsigned s) const {
    if (s >= order_) throw std::out_of_range("FiniteSemigroup: element out of range");
  }

  void check_subset(const FinSet& a) const {
    if (!a.empty() && a.max() >= order_)
      throw std::out_of_range("FiniteSemigroup: subset has elements outside the carrier");
  }

  FinSet full_carrier() const {
    return FinSet::from_mask(order_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << order_) - 1,
                             order_);
  }

 private:
  unsigned order_;
  std::vector<unsigned> table_;
};

/// The principal ultrafilter at a fixed point: A belongs to it iff the point
/// lies in A.
struct PrincipalPoint {
  unsigned point = 0;
};

inline bool member(const FinSet& a, PrincipalPoint p) { return a.contains(p.point); }

/// s^{-1}A = { t | st in A }.
inline FinSet translate_preimage(const FiniteSemigroup& sg, unsigned s, const FinSet& a) {
  sg.check_element(s);
  sg.check_subset(a);
  FinSet out{sg.order()};
  for (unsigned t = 0; t < sg.order(); ++t)
    if (a.contains(sg.op(s, t))) out.insert(t);
  return out;
}

/// A^{-q} = { s | s^{-1}A in q }; for principal q this is { s | s.q in A }.
inline FinSet a_minus_q(const FiniteSemigroup& sg, const FinSet& a, PrincipalPoint q) {
  sg.check_element(q.point);
  sg.check_subset(a);
  FinSet out{sg.order()};
  for (unsigned s = 0; s < sg.order(); ++s)
    if (a.contains(sg.op(s, q.point))) out.insert(s);
  return out;
}

/// Product of principal points is the principal point at the product.
inline PrincipalPoint product(const FiniteSemigroup& sg, PrincipalPoint p, PrincipalPoint q) {
  return {sg.checked_op(p.point, q.point)};
}

/// A* = A intersect A^{-q}.
inline FinSet a_star(const FiniteSemigroup& sg, const FinSet& a, PrincipalPoint q) {
  return a.intersect(a_minus_q(sg, a, q));
}

struct IdentityCheck {
  std::string name;
  bool holds = false;
  std::string detail;  // first counterexample, when not holding
};

struct TricksReport {
  std::array<IdentityCheck, 5> checks;
  bool all_hold() const {
    for (const auto& c : checks)
      if (!c.holds) return false;
    return true;
  }
};

/// Evaluates both sides of the five translate/preimage identities at the
/// given arguments. The intersection identity quantifies over every B inside
/// the carrier (the identity talks about pairs of sets); the star identity is
/// taken with respect to q. Orders above 20 would make the B-sweep silly and
/// are rejected.
inline TricksReport verify_tricks(const FiniteSemigroup& sg, const FinSet& a, unsigned s,
                                  unsigned t, PrincipalPoint p, PrincipalPoint q) {
  sg.check_element(s);
  sg.check_element(t);
  sg.check_element(p.point);
  sg.check_element(q.point);
  sg.check_subset(a);
  if (sg.order() > 20)
    throw std::length_error("verify_tricks: carrier too large for the subset sweep");

  TricksReport rep;

  const FinSet lhs1 = translate_preimage(sg, t, translate_preimage(sg, s, a));
  const FinSet rhs1 = translate_preimage(sg, sg.op(s, t), a);
  rep.checks[0] = {"t^-1 s^-1 A = (st)^-1 A", lhs1 == rhs1, ""};

  const FinSet lhs2 = translate_preimage(sg, s, a_minus_q(sg, a, q));
  const FinSet rhs2 = a_minus_q(sg, translate_preimage(sg, s, a), q);
  rep.checks[1] = {"s^-1 (A^-q) = (s^-1 A)^-q", lhs2 == rhs2, ""};

  rep.checks[2] = {"(A n B)^-q = A^-q n B^-q", true, ""};
  const std::uint64_t subset_count = std::uint64_t{1} << sg.order();
  for (std::uint64_t bm = 0; bm < subset_count; ++bm) {
    const FinSet b = FinSet::from_mask(bm, sg.order());
    if (a_minus_q(sg, a.intersect(b), q) != a_minus_q(sg, a, q).intersect(a_minus_q(sg, b, q))) {
      rep.checks[2].holds = false;
      rep.checks[2].detail = "B=" + b.to_string();
      break;
    }
  }

  const FinSet lhs4 = a_star(sg, translate_preimage(sg, s, a), q);
  const FinSet rhs4 = translate_preimage(sg, s, a_star(sg, a, q));
  rep.checks[3] = {"(s^-1 A)* = s^-1 A*", lhs4 == rhs4, ""};

  const FinSet lhs5 = a_minus_q(sg, a_minus_q(sg, a, q), p);
  const FinSet rhs5 = a_minus_q(sg, a, product(sg, p, q));
  rep.checks[4] = {"(A^-q)^-p = A^-(pq)", lhs5 == rhs5, ""};

  return rep;
}

/// Finds an idempotent by walking the power sequence of element 0 until the
/// cycle appears, then returning the unique idempotent power in the cycle.
/// Failure is impossible in an associative table and reported as a fault.
inline unsigned find_idempotent(const FiniteSemigroup& sg) {
  const unsigned s = 0;
  std::vector<int> seen_at(sg.order(), -1);
  std::vector<unsigned> powers;  // powers[i] = s^(i+1)
  unsigned cur = s;
  while (seen_at[cur] < 0) {
    seen_at[cur] = static_cast<int>(powers.size());
    powers.push_back(cur);
    cur = sg.op(cur, s);
  }
  const unsigned mu = static_cast<unsigned>(seen_at[cur]);            // cycle start index
  const unsigned lambda = static_cast<unsigned>(powers.size()) - mu;  // cycle length
  // The unique idempotent in <s> is s^k for the smallest multiple k of the
  // cycle length that lands inside the cycle (exponents are 1-based).
  std::uint64_t k = lambda;
  while (k < mu + 1) k += lambda;
  const unsigned e = powers[mu + static_cast<std::size_t>((k - mu - 1) % lambda)];
  if (sg.op(e, e) != e)
    throw std::logic_error("find_idempotent: power walk produced a non-idempotent");
  return e;
}

struct GalvinReport {
  FinSet a_star_set;
  bool membership_implication = false;  // A in p  =>  A* in p
  bool star_idempotent = false;         // (A*)* = A*
  bool pass() const { return membership_implication && star_idempotent; }
};

/// The fixpoint behaviour of the star operation at an idempotent point.
inline GalvinReport galvin_star_check(const FiniteSemigroup& sg, const FinSet& a,
                                      PrincipalPoint p) {
  sg.check_element(p.point);
  sg.check_subset(a);
  if (sg.op(p.point, p.point) != p.point)
    throw std::domain_error("galvin_star_check: point is not idempotent");
  GalvinReport rep;
  rep.a_star_set = a_star(sg, a, p);
  rep.membership_implication = !member(a, p) || member(rep.a_star_set, p);
  rep.star_idempotent = a_star(sg, rep.a_star_set, p) == rep.a_star_set;
  return rep;
}

/// All associative tables of the given order, by exhaustion. Only sensible
/// for order <= 3 (4^16 tables at order 4 are not the point).
inline std::vector<FiniteSemigroup> enumerate_semigroups(unsigned order) {
  if (order == 0 || order > 3)
    throw std::length_error("enumerate_semigroups: exhaustion is capped at order 3");
  std::vector<FiniteSemigroup> out;
  const std::size_t cells = static_cast<std::size_t>(order) * order;
  std::vector<unsigned> table(cells, 0);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < cells; ++i) total *= order;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < cells; ++i) {
      table[i] = static_cast<unsigned>(c % order);
      c /= order;
    }
    bool assoc = true;
    for (unsigned a = 0; a < order && assoc; ++a)
      for (unsigned b = 0; b < order && assoc; ++b)
        for (unsigned d = 0; d < order && assoc; ++d)
          if (table[table[a * order + b] * order + d] != table[a * order + table[b * order + d]])
            assoc = false;
    if (assoc) out.emplace_back(order, table);
  }
  return out;
}

/// Rejection-samples random associative tables. Slow per hit at order 4
/// (about one in 1.2M tables) but plenty for spot checks.
inline std::vector<FiniteSemigroup> sample_semigroups(unsigned order, std::size_t count,
                                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<unsigned> pick(0, order - 1);
  std::vector<FiniteSemigroup> out;
  const std::size_t cells = static_cast<std::size_t>(order) * order;
  std::vector<unsigned> table(cells);
  while (out.size() < count) {
    for (auto& v : table) v = pick(rng);
    bool assoc = true;
    for (unsigned a = 0; a < order && assoc; ++a)
      for (unsigned b = 0; b < order && assoc; ++b)
        for (unsigned d = 0; d < order && assoc; ++d)
          if (table[table[a * order + b] * order + d] != table[a * order + table[b * order + d]])
            assoc = false;
    if (assoc) out.emplace_back(order, table);
  }
  return out;
}

}  // namespace fuforge
