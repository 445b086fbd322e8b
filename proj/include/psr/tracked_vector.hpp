#pragma once

#include "psr/rank_vector.hpp"

#include <cstdint>
#include <limits>

namespace psr {

/// Rank vector paired with a first-order estimate of its accumulated rounding
/// error. The estimate is the signed error vector pushed through the same
/// linear maps as the values, with each operation's local rounding error
/// injected at full size with a pseudo-random sign. Real amplification (a
/// recursion multiplying error by p / (1 - p) per index) shows up in full.
/// What it does not do is charge every step the worst-case sign pattern,
/// which a componentwise bound must do and which compounds over thousands
/// of steps into spurious failures.
///
/// Dividing an event back out is ill-conditioned for p > 1/2 once the vector
/// is truncated. The estimate is what lets a caller notice and recompute.
template <typename Scalar>
class TrackedRankVector {
 public:
  static constexpr Scalar kUnitRoundoff = std::numeric_limits<Scalar>::epsilon() / 2;

  TrackedRankVector() = default;
  explicit TrackedRankVector(Eigen::Index k) : values_(unit_rank_vector<Scalar>(k)), error_(Arr<Scalar>::Zero(k)) {}

  const Arr<Scalar>& values() const { return values_; }
  /// Signed error estimate, one entry per value.
  const Arr<Scalar>& error() const { return error_; }
  Scalar max_error() const { return max_error(values_.size()); }
  Scalar max_error(Eigen::Index window) const {
    return window > 0 ? error_.head(window).abs().maxCoeff() : Scalar(0);
  }
  Eigen::Index size() const { return values_.size(); }

  void reset_unit() {
    values_ = unit_rank_vector<Scalar>(values_.size());
    error_.setZero();
  }

  /// Folds in one independent "closer" event (dynamic_round).
  void round(Scalar p) {
    const Scalar q = Scalar(1) - p;
    auto& v = values_;
    auto& e = error_;
    for (Eigen::Index i = v.size() - 1; i >= 1; --i) {
      v[i] = v[i - 1] * p + v[i] * q;
      e[i] = e[i - 1] * p + e[i] * q + noise(2 * std::abs(v[i]));
    }
    if (v.size() > 0) {
      v[0] *= q;
      e[0] = e[0] * q + noise(std::abs(v[0]));
    }
  }

  /// Divides an event out (adjust_probs). `length` is the number of entries
  /// that can be nonzero afterwards. Only the first `window` entries are
  /// reported; the rest are guard entries that give the downward recursion
  /// room to damp its starting guess.
  ///
  /// For p <= 1/2 the upward recursion is stable. For p > 1/2 the downward
  /// one is, and it is exact when the support fits (length < size()).
  /// Otherwise it starts from the top entry w, known only to satisfy
  /// 0 <= w <= v / (1 - p), and both directions are tried; the one with the
  /// smaller estimate on the window wins. The upward one is skipped when the
  /// downward estimate is already within `tolerance`.
  void remove(Scalar p, Eigen::Index length, Eigen::Index window, Scalar tolerance = Scalar(0)) {
    const Eigen::Index k = values_.size();
    length = std::clamp<Eigen::Index>(length, 0, k);
    window = std::clamp<Eigen::Index>(window, 0, k);
    if (p <= Scalar(0.5)) {
      remove_upward(values_, error_, p, length);
    } else if (length < k) {
      remove_downward(values_, error_, p, length, Scalar(0), Scalar(0));
    } else {
      const Scalar q = Scalar(1) - p;
      const Scalar top = (std::abs(values_[k - 1]) + std::abs(error_[k - 1])) / q / 2;
      down_v_ = values_;
      down_e_ = error_;
      // The guess error is systematic, not rounding noise: full size, and
      // the same sign every time so that repeated guesses add up.
      remove_downward(down_v_, down_e_, p, k - 1, top, top);
      const Scalar down = window > 0 ? down_e_.head(window).abs().maxCoeff() : Scalar(0);
      if (down > tolerance) remove_upward(values_, error_, p, k);
      if (down <= tolerance || down < max_error(window)) {
        values_.swap(down_v_);
        error_.swap(down_e_);
      }
    }
    // Exact values are probabilities. Clamping never moves a value away from
    // them and keeps the tail of an amplified recursion finite.
    values_ = values_.max(Scalar(0)).min(Scalar(1));
    error_ = error_.max(Scalar(-1)).min(Scalar(1));
  }

 private:
  static constexpr Scalar u = kUnitRoundoff;

  void remove_upward(Arr<Scalar>& v, Arr<Scalar>& e, Scalar p, Eigen::Index length) {
    const Scalar q = Scalar(1) - p;
    if (length > 0) {
      v[0] /= q;
      e[0] = e[0] / q + noise(std::abs(v[0]));
      for (Eigen::Index i = 1; i < length; ++i) {
        const Scalar cur = v[i];
        v[i] = (cur - v[i - 1] * p) / q;
        e[i] = (e[i] - p * e[i - 1]) / q + noise((std::abs(cur) + 2 * p * std::abs(v[i - 1])) / q + std::abs(v[i]));
      }
    }
    v.tail(v.size() - length).setZero();
    e.tail(e.size() - length).setZero();
  }

  // Starts from result[top] = above, carrying error above_err, and walks down.
  void remove_downward(Arr<Scalar>& v, Arr<Scalar>& e, Scalar p, Eigen::Index top, Scalar above,
                       Scalar above_err) {
    const Scalar q = Scalar(1) - p;
    for (Eigen::Index i = top; i >= 1; --i) {
      const Scalar below = (v[i] - above * q) / p;
      const Scalar below_err =
          (e[i] - q * above_err) / p + noise((std::abs(v[i]) + 2 * q * std::abs(above)) / p + std::abs(below));
      v[i] = above;
      e[i] = above_err;
      above = below;
      above_err = below_err;
    }
    v[0] = above;
    e[0] = above_err;
    v.tail(v.size() - top - 1).setZero();
    e.tail(e.size() - top - 1).setZero();
  }

  // One sign per bit of a xorshift64 word; plenty for sign mixing.
  Scalar noise(Scalar magnitude) {
    if (bits_left_ == 0) {
      state_ ^= state_ << 13;
      state_ ^= state_ >> 7;
      state_ ^= state_ << 17;
      bits_ = state_;
      bits_left_ = 64;
    }
    const bool negative = bits_ & 1u;
    bits_ >>= 1;
    --bits_left_;
    return negative ? -u * magnitude : u * magnitude;
  }

  Arr<Scalar> values_;
  Arr<Scalar> error_;
  Arr<Scalar> down_v_;
  Arr<Scalar> down_e_;
  std::uint64_t state_ = 0x9e3779b97f4a7c15ull;
  std::uint64_t bits_ = 0;
  int bits_left_ = 0;
};

}  // namespace psr
