#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "wigswap/covariance.hpp"
#include "wigswap/optics.hpp"

namespace wigswap {

/// Finite-dimensional restriction of the vacuum measure to a list of
/// complex amplitudes v (two per detector port, H axis first).
struct JointGaussianSpec {
  std::vector<std::string> port_names;
  std::vector<double> zpf_intensity;  // analytic vacuum intensity per port
  std::vector<double> efficiency;     // K per port
  std::vector<FieldExpr> variables;
  Eigen::MatrixXcd hermitian_cov;     // <v v^H>
  Eigen::MatrixXcd pseudo_cov;        // <v v^T>
  Eigen::MatrixXd embedding;          // covariance of [Re v; Im v]
  Eigen::MatrixXd factor;             // embedding = factor factor^T

  std::size_t size() const { return static_cast<std::size_t>(hermitian_cov.rows()); }
  /// Index of a port in port_names; throws InvalidArgument if absent.
  std::size_t port_index(std::string_view name) const;
};

/// Builds Gamma and C from the analytic pair rules and factors the real
/// embedding with a pivoted LDL^T. Throws ConsistencyError if the embedding
/// has an eigenvalue below -1e-12 (relative to its largest entry).
JointGaussianSpec build_joint_spec(std::span<const DetectorPort> ports,
                                   const CovarianceModel& model);

/// Same, for bare amplitudes with no port structure.
JointGaussianSpec build_joint_spec(std::span<const FieldExpr> variables,
                                   const CovarianceModel& model);

/// From explicit moments <v v^H> and <v v^T>; no variables or ports attached.
JointGaussianSpec build_joint_spec(const Eigen::MatrixXcd& hermitian_cov,
                                   const Eigen::MatrixXcd& pseudo_cov);

struct SamplingOptions {
  std::int64_t batches = 100;  // for batch-means standard errors
  unsigned threads = 0;        // 0: hardware concurrency
};

/// Samples are drawn in fixed blocks of kStreamBlock; block b uses its own
/// generator seeded from (seed, b). Every result is therefore independent
/// of the thread count, and the estimate of the batch count.
inline constexpr std::int64_t kStreamBlock = 1 << 14;

/// n x size() matrix of samples. Throws InvalidArgument for n <= 0.
Eigen::MatrixXcd sample(const JointGaussianSpec& spec, std::int64_t n, std::uint64_t seed,
                        const SamplingOptions& opts = {});

struct EstimatorResult {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

struct ComplexEstimate {
  Complex estimate{};
  double standard_error_re = 0.0;
  double standard_error_im = 0.0;
  std::int64_t n_samples = 0;
  std::uint64_t seed = 0;
};

/// Sample mean of K_a K_b (I_a - I_zpf,a)(I_b - I_zpf,b).
EstimatorResult estimate_joint(std::string_view a, std::string_view b,
                               const JointGaussianSpec& spec, std::int64_t n, std::uint64_t seed,
                               const SamplingOptions& opts = {});

/// Sample mean of prod_{a,b,c,d} K (I - I_zpf). Port order is irrelevant.
EstimatorResult estimate_quadruple(std::string_view a, std::string_view b, std::string_view c,
                                   std::string_view d, const JointGaussianSpec& spec,
                                   std::int64_t n, std::uint64_t seed,
                                   const SamplingOptions& opts = {});

/// Many subtracted-intensity products over one shared sample stream; each
/// pattern is a list of port indices into spec.port_names.
std::vector<EstimatorResult> estimate_intensity_products(
    const JointGaussianSpec& spec, const std::vector<std::vector<std::size_t>>& patterns,
    std::int64_t n, std::uint64_t seed, const SamplingOptions& opts = {});

/// One factor of a raw moment: variable index, optionally conjugated.
struct MomentFactor {
  std::size_t variable = 0;
  bool conjugated = false;
};

/// Sample mean of prod v_i (or v_i*), with batch standard errors for the
/// real and imaginary parts.
ComplexEstimate estimate_moment(const JointGaussianSpec& spec,
                                std::span<const MomentFactor> factors, std::int64_t n,
                                std::uint64_t seed, const SamplingOptions& opts = {});

}  // namespace wigswap
