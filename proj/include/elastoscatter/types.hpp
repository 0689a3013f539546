#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace elastoscatter {

using Complex = std::complex<double>;

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using CVec3 = Eigen::Vector3cd;
using CMat3 = Eigen::Matrix3cd;

// Column-per-node storage used for meshes, source sets and sampled fields.
using Points = Eigen::Matrix3Xd;
using CFields = Eigen::Matrix3Xcd;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846;

// Error hierarchy. Everything derives from a std exception so callers may
// catch at whichever granularity they like.
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

struct InvalidArgument : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Evaluation point lies on (or numerically at) a kernel singularity.
struct CoincidenceError : DomainError {
  using DomainError::DomainError;
};

// Off-surface quadrature requested too close to the surface to be reliable.
struct TooCloseError : DomainError {
  using DomainError::DomainError;
};

struct GeometryError : InvalidArgument {
  using InvalidArgument::InvalidArgument;
};

struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace elastoscatter
