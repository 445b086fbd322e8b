#pragma once

#include "psr/errors.hpp"
#include "psr/types.hpp"

#include <algorithm>
#include <string>

namespace psr {

/// adjust_probs refuses divisors 1 - p below this value.
inline constexpr double kDivisorGuard = 1e-12;

namespace detail {
template <typename Scalar>
void check_probability(Scalar p, const char* who) {
  if (!(p >= Scalar(0) && p <= Scalar(1)))
    throw std::invalid_argument(std::string(who) + ": probability outside [0, 1]");
}
}  // namespace detail

// The in-place variants take `const ArrayBase&` and cast constness away, the
// usual Eigen idiom that lets blocks and maps be passed as temporaries.

/// Folds one more independent "closer" event of probability p into v.
/// Mass pushed past the last index is dropped.
template <typename Derived>
void dynamic_round_in_place(const Eigen::ArrayBase<Derived>& v_, typename Derived::Scalar p) {
  auto& v = const_cast<Eigen::ArrayBase<Derived>&>(v_);
  using Scalar = typename Derived::Scalar;
  const Scalar q = Scalar(1) - p;
  for (Eigen::Index i = v.size() - 1; i >= 1; --i) v[i] = v[i - 1] * p + v[i] * q;
  if (v.size() > 0) v[0] *= q;
}

/// Removes one previously folded event of probability p from v (inverse of
/// dynamic_round on indices 0..k-1). The caller guarantees 1 - p >= kDivisorGuard.
template <typename Derived>
void adjust_probs_in_place(const Eigen::ArrayBase<Derived>& v_, typename Derived::Scalar p) {
  auto& v = const_cast<Eigen::ArrayBase<Derived>&>(v_);
  using Scalar = typename Derived::Scalar;
  const Scalar q = Scalar(1) - p;
  if (v.size() == 0) return;
  v[0] /= q;
  for (Eigen::Index i = 1; i < v.size(); ++i) v[i] = (v[i] - v[i - 1] * p) / q;
}

/// adjust_probs for a vector whose result is known to vanish from index
/// `length` on (an event count over length - 1 objects). Runs the recursion
/// upward for p <= 1/2, and downward from the top entry for p > 1/2 when that
/// entry (index `length`) is inside the window, so rounding errors are damped
/// by (1 - p) / p rather than amplified by p / (1 - p).
template <typename Derived>
void adjust_probs_bounded_in_place(const Eigen::ArrayBase<Derived>& v_, typename Derived::Scalar p,
                                   Eigen::Index length) {
  auto& v = const_cast<Eigen::ArrayBase<Derived>&>(v_);
  using Scalar = typename Derived::Scalar;
  const Eigen::Index k = v.size();
  length = std::clamp<Eigen::Index>(length, 0, k);
  if (p > Scalar(0.5) && length < k) {
    Scalar above = Scalar(0);
    for (Eigen::Index i = length; i >= 1; --i) {
      const Scalar below = (v[i] - above * (Scalar(1) - p)) / p;
      v[i] = above;
      above = below;
    }
    v[0] = above;
  } else {
    adjust_probs_in_place(v.head(length), p);
    v.tail(k - length).setZero();
  }
}

template <typename Derived>
Arr<typename Derived::Scalar> dynamic_round(const Eigen::ArrayBase<Derived>& old,
                                            typename Derived::Scalar p_closer) {
  detail::check_probability(p_closer, "dynamic_round");
  Arr<typename Derived::Scalar> out = old;
  dynamic_round_in_place(out, p_closer);
  return out;
}

/// Throws DegenerateDivisor when p_closer >= 1 - kDivisorGuard.
///
/// `support` is how many leading entries of the result may be nonzero; the
/// default (-1) means all of them, which runs the upward recursion as is. The
/// upward recursion multiplies rounding error by p / (1 - p) per index, so a
/// caller who knows the tail is zero (no mass was truncated) should say so:
/// for p > 1/2 the recursion then runs downward from that zero instead.
template <typename Derived>
Arr<typename Derived::Scalar> adjust_probs(const Eigen::ArrayBase<Derived>& cur,
                                           typename Derived::Scalar p_closer, Eigen::Index support = -1) {
  using Scalar = typename Derived::Scalar;
  detail::check_probability(p_closer, "adjust_probs");
  if (Scalar(1) - p_closer < Scalar(kDivisorGuard)) throw DegenerateDivisor("adjust_probs: degenerate divisor");
  Arr<Scalar> out = cur;
  if (support < 0 || support >= out.size())
    adjust_probs_in_place(out, p_closer);
  else
    adjust_probs_bounded_in_place(out, p_closer, support);
  return out;
}

/// [1, 0, ..., 0] of length k: nothing precedes the instance.
template <typename Scalar = double>
Arr<Scalar> unit_rank_vector(Eigen::Index k) {
  Arr<Scalar> v = Arr<Scalar>::Zero(k);
  if (k > 0) v[0] = Scalar(1);
  return v;
}

/// Poisson-binomial distribution of the number of successes among
/// independent events with the given probabilities, truncated to k entries.
template <typename Scalar, typename Range>
Arr<Scalar> truncated_poisson_binomial(const Range& probabilities, Eigen::Index k) {
  Arr<Scalar> v = unit_rank_vector<Scalar>(k);
  for (auto p : probabilities) dynamic_round_in_place(v, static_cast<Scalar>(p));
  return v;
}

}  // namespace psr
