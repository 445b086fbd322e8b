#pragma once

#include <Eigen/Dense>

#include <cstdint>

namespace psr {

template <typename Scalar>
using Vec = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using Arr = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

template <typename Scalar>
using RowMat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

using VecXd = Vec<double>;
using ArrXd = Arr<double>;
using RowMatXd = RowMat<double>;

/// Probability that exactly i other seen objects precede an instance, i = 0..k-1.
using RankVector = ArrXd;

using ObjectId = std::int64_t;
using InstanceId = std::int32_t;

/// Dense position of an object inside UncertainDatabase::objects.
using ObjectIndex = std::size_t;

}  // namespace psr
