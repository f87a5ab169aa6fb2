#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Dense>

namespace rejuv {

/// 50-digit binary float. Used where finite differences of availability
/// (values within 1e-6 of one) must resolve changes far below double epsilon.
using extended = boost::multiprecision::cpp_bin_float_50;

template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

template <class Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <class Scalar>
inline double to_double(const Scalar& x) {
  return static_cast<double>(x);
}

}  // namespace rejuv
