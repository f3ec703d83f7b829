#include "wigswap/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <random>
#include <thread>

#include "wigswap/errors.hpp"

namespace wigswap {

namespace {

constexpr double kEmbeddingTolerance = 1e-12;
// Keeps global * batches within int64 for batches <= n.
constexpr std::int64_t kMaxSamples = 3'000'000'000;

void fill_moments(JointGaussianSpec& s, const CovarianceModel& model) {
  const auto n = static_cast<Eigen::Index>(s.variables.size());
  s.hermitian_cov.resize(n, n);
  s.pseudo_cov.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i; j < n; ++j) {
      const FieldExpr& vi = s.variables[static_cast<std::size_t>(i)];
      const FieldExpr& vj = s.variables[static_cast<std::size_t>(j)];
      const Complex g = pair_correlation(vi, conj(vj), model);
      const Complex c = pair_correlation(vi, vj, model);
      s.hermitian_cov(i, j) = g;
      s.hermitian_cov(j, i) = std::conj(g);
      s.pseudo_cov(i, j) = c;
      s.pseudo_cov(j, i) = c;
    }
  }
}

void fill_embedding(JointGaussianSpec& s) {
  const auto n = s.hermitian_cov.rows();
  // v = x + i y:  E[xx^T] = Re(G+C)/2, E[yy^T] = Re(G-C)/2,
  //               E[xy^T] = Im(C-G)/2, E[yx^T] = Im(G+C)/2.
  const Eigen::MatrixXd gr = s.hermitian_cov.real(), gi = s.hermitian_cov.imag();
  const Eigen::MatrixXd cr = s.pseudo_cov.real(), ci = s.pseudo_cov.imag();
  s.embedding.resize(2 * n, 2 * n);
  s.embedding.topLeftCorner(n, n) = 0.5 * (gr + cr);
  s.embedding.bottomRightCorner(n, n) = 0.5 * (gr - cr);
  s.embedding.topRightCorner(n, n) = 0.5 * (ci - gi);
  s.embedding.bottomLeftCorner(n, n) = 0.5 * (gi + ci);

  const double scale = std::max(1.0, s.embedding.cwiseAbs().maxCoeff());
  if (n > 0) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.embedding, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -kEmbeddingTolerance * scale)
      throw ConsistencyError("indefinite real embedding covariance (min eigenvalue " +
                             std::to_string(eig.eigenvalues().minCoeff()) + ")");
  }

  Eigen::LDLT<Eigen::MatrixXd> ldlt(s.embedding);
  const Eigen::MatrixXd lower = ldlt.matrixL();
  const Eigen::VectorXd root_d = ldlt.vectorD().cwiseMax(0.0).cwiseSqrt();
  Eigen::MatrixXd scaled = lower * root_d.asDiagonal();
  s.factor = ldlt.transpositionsP().transpose() * scaled;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Draws block `b` (columns are samples) into `out`.
void draw_block(const JointGaussianSpec& spec, std::uint64_t seed, std::int64_t b,
                std::int64_t count, Eigen::MatrixXd& normals, Eigen::MatrixXd& out) {
  std::mt19937_64 rng(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(b))));
  std::normal_distribution<double> normal(0.0, 1.0);
  const auto dim = spec.factor.rows();
  normals.resize(dim, count);
  for (Eigen::Index j = 0; j < count; ++j)
    for (Eigen::Index i = 0; i < dim; ++i) normals(i, j) = normal(rng);
  out.noalias() = spec.factor * normals;
}

struct StreamResult {
  std::vector<double> sums;                      // per output
  std::vector<std::vector<double>> batch_sums;  // [batch][output]
  std::vector<std::int64_t> batch_counts;
};

using SampleFn = std::function<void(const Complex* v, double* out)>;

StreamResult run_stream(const JointGaussianSpec& spec, std::int64_t n, std::uint64_t seed,
                        const SamplingOptions& opts, std::size_t outputs, const SampleFn& fn) {
  if (n <= 0) throw InvalidArgument("sample count must be positive");
  if (n > kMaxSamples) throw InvalidArgument("sample count exceeds 3e9");
  if (opts.batches < 2 || opts.batches > n)
    throw InvalidArgument("batch count must lie in [2, n]");

  const std::int64_t n_blocks = (n + kStreamBlock - 1) / kStreamBlock;
  const std::int64_t batches = opts.batches;
  const auto m = static_cast<Eigen::Index>(spec.size());

  struct Segment {
    std::int64_t batch;
    std::vector<double> sums;
  };
  struct BlockOut {
    std::vector<double> sums;
    std::vector<Segment> segments;
  };
  std::vector<BlockOut> blocks(static_cast<std::size_t>(n_blocks));

  auto work = [&](std::int64_t b) {
    const std::int64_t begin = b * kStreamBlock;
    const std::int64_t count = std::min(kStreamBlock, n - begin);
    Eigen::MatrixXd normals, x;
    draw_block(spec, seed, b, count, normals, x);

    BlockOut& bo = blocks[static_cast<std::size_t>(b)];
    bo.sums.assign(outputs, 0.0);
    std::vector<Complex> v(static_cast<std::size_t>(m));
    std::vector<double> out(outputs);
    Segment* seg = nullptr;
    for (std::int64_t s = 0; s < count; ++s) {
      const std::int64_t global = begin + s;
      // Batch k covers [k n / B, (k+1) n / B).
      const std::int64_t batch = global * batches / n;
      if (!seg || seg->batch != batch) {
        bo.segments.push_back({batch, std::vector<double>(outputs, 0.0)});
        seg = &bo.segments.back();
      }
      for (Eigen::Index i = 0; i < m; ++i)
        v[static_cast<std::size_t>(i)] = {x(i, s), x(i + m, s)};
      fn(v.data(), out.data());
      for (std::size_t k = 0; k < outputs; ++k) {
        bo.sums[k] += out[k];
        seg->sums[k] += out[k];
      }
    }
  };

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, n_blocks));
  if (threads <= 1) {
    for (std::int64_t b = 0; b < n_blocks; ++b) work(b);
  } else {
    std::atomic<std::int64_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::int64_t b = next++; b < n_blocks; b = next++) work(b);
      });
    for (auto& th : pool) th.join();
  }

  StreamResult r;
  r.sums.assign(outputs, 0.0);
  r.batch_sums.assign(static_cast<std::size_t>(batches), std::vector<double>(outputs, 0.0));
  r.batch_counts.assign(static_cast<std::size_t>(batches), 0);
  for (const auto& bo : blocks) {
    for (std::size_t k = 0; k < outputs; ++k) r.sums[k] += bo.sums[k];
    for (const auto& sg : bo.segments)
      for (std::size_t k = 0; k < outputs; ++k)
        r.batch_sums[static_cast<std::size_t>(sg.batch)][k] += sg.sums[k];
  }
  for (std::int64_t k = 0; k < batches; ++k)
    r.batch_counts[static_cast<std::size_t>(k)] = (k + 1) * n / batches - k * n / batches;
  return r;
}

double batch_standard_error(const StreamResult& r, std::size_t output) {
  const auto b = r.batch_counts.size();
  std::vector<double> means(b);
  double mean = 0.0;
  for (std::size_t k = 0; k < b; ++k) {
    means[k] = r.batch_sums[k][output] / static_cast<double>(r.batch_counts[k]);
    mean += means[k];
  }
  mean /= static_cast<double>(b);
  double ss = 0.0;
  for (double x : means) ss += (x - mean) * (x - mean);
  return std::sqrt(ss / (static_cast<double>(b) * static_cast<double>(b - 1)));
}

}  // namespace

std::size_t JointGaussianSpec::port_index(std::string_view name) const {
  for (std::size_t i = 0; i < port_names.size(); ++i)
    if (port_names[i] == name) return i;
  throw InvalidArgument("port '" + std::string(name) + "' is not part of this sampling spec");
}

JointGaussianSpec build_joint_spec(std::span<const DetectorPort> ports,
                                   const CovarianceModel& model) {
  JointGaussianSpec s;
  for (const auto& p : ports) {
    s.port_names.push_back(p.name);
    s.zpf_intensity.push_back(vacuum_intensity(p.x, model) + vacuum_intensity(p.y, model));
    s.efficiency.push_back(p.efficiency);
    s.variables.push_back(p.x);
    s.variables.push_back(p.y);
  }
  fill_moments(s, model);
  fill_embedding(s);
  return s;
}

JointGaussianSpec build_joint_spec(std::span<const FieldExpr> variables,
                                   const CovarianceModel& model) {
  JointGaussianSpec s;
  s.variables.assign(variables.begin(), variables.end());
  fill_moments(s, model);
  fill_embedding(s);
  return s;
}

JointGaussianSpec build_joint_spec(const Eigen::MatrixXcd& hermitian_cov,
                                   const Eigen::MatrixXcd& pseudo_cov) {
  if (hermitian_cov.rows() != hermitian_cov.cols() || pseudo_cov.rows() != hermitian_cov.rows() ||
      pseudo_cov.cols() != hermitian_cov.cols())
    throw InvalidArgument("covariance blocks must be square and of equal size");
  JointGaussianSpec s;
  s.hermitian_cov = hermitian_cov;
  s.pseudo_cov = pseudo_cov;
  fill_embedding(s);
  return s;
}

Eigen::MatrixXcd sample(const JointGaussianSpec& spec, std::int64_t n, std::uint64_t seed,
                        const SamplingOptions& opts) {
  if (n <= 0) throw InvalidArgument("sample count must be positive");
  const auto m = static_cast<Eigen::Index>(spec.size());
  Eigen::MatrixXcd out(n, m);
  const std::int64_t n_blocks = (n + kStreamBlock - 1) / kStreamBlock;
  (void)opts;
  Eigen::MatrixXd normals, x;
  for (std::int64_t b = 0; b < n_blocks; ++b) {
    const std::int64_t begin = b * kStreamBlock;
    const std::int64_t count = std::min(kStreamBlock, n - begin);
    draw_block(spec, seed, b, count, normals, x);
    for (std::int64_t s = 0; s < count; ++s)
      for (Eigen::Index i = 0; i < m; ++i) out(begin + s, i) = {x(i, s), x(i + m, s)};
  }
  return out;
}

std::vector<EstimatorResult> estimate_intensity_products(
    const JointGaussianSpec& spec, const std::vector<std::vector<std::size_t>>& patterns,
    std::int64_t n, std::uint64_t seed, const SamplingOptions& opts) {
  const std::size_t ports = spec.port_names.size();
  std::vector<std::vector<std::size_t>> sorted = patterns;
  std::vector<double> weights;
  for (auto& p : sorted) {
    double k = 1.0;
    for (std::size_t i : p) {
      if (i >= ports) throw InvalidArgument("pattern refers to a port outside the spec");
      k *= spec.efficiency[i];
    }
    // A fixed factor order makes the product independent of argument order.
    std::sort(p.begin(), p.end());
    weights.push_back(k);
  }

  const SampleFn fn = [&](const Complex* v, double* out) {
    double y[64];
    for (std::size_t i = 0; i < ports; ++i)
      y[i] = std::norm(v[2 * i]) + std::norm(v[2 * i + 1]) - spec.zpf_intensity[i];
    for (std::size_t k = 0; k < sorted.size(); ++k) {
      double prod = weights[k];
      for (std::size_t i : sorted[k]) prod *= y[i];
      out[k] = prod;
    }
  };
  if (ports > 64) throw InvalidArgument("too many ports in one sampling spec");

  const StreamResult r = run_stream(spec, n, seed, opts, sorted.size(), fn);
  std::vector<EstimatorResult> res;
  for (std::size_t k = 0; k < sorted.size(); ++k)
    res.push_back({r.sums[k] / static_cast<double>(n), batch_standard_error(r, k), n, seed});
  return res;
}

EstimatorResult estimate_joint(std::string_view a, std::string_view b,
                               const JointGaussianSpec& spec, std::int64_t n, std::uint64_t seed,
                               const SamplingOptions& opts) {
  return estimate_intensity_products(spec, {{spec.port_index(a), spec.port_index(b)}}, n, seed,
                                     opts)
      .front();
}

EstimatorResult estimate_quadruple(std::string_view a, std::string_view b, std::string_view c,
                                   std::string_view d, const JointGaussianSpec& spec,
                                   std::int64_t n, std::uint64_t seed,
                                   const SamplingOptions& opts) {
  return estimate_intensity_products(spec,
                                     {{spec.port_index(a), spec.port_index(b),
                                       spec.port_index(c), spec.port_index(d)}},
                                     n, seed, opts)
      .front();
}

ComplexEstimate estimate_moment(const JointGaussianSpec& spec,
                                std::span<const MomentFactor> factors, std::int64_t n,
                                std::uint64_t seed, const SamplingOptions& opts) {
  for (const auto& f : factors)
    if (f.variable >= spec.size()) throw InvalidArgument("moment factor out of range");
  const std::vector<MomentFactor> fs(factors.begin(), factors.end());
  const SampleFn fn = [&](const Complex* v, double* out) {
    Complex prod = 1.0;
    for (const auto& f : fs) prod *= f.conjugated ? std::conj(v[f.variable]) : v[f.variable];
    out[0] = prod.real();
    out[1] = prod.imag();
  };
  const StreamResult r = run_stream(spec, n, seed, opts, 2, fn);
  const double nn = static_cast<double>(n);
  return {{r.sums[0] / nn, r.sums[1] / nn},
          batch_standard_error(r, 0),
          batch_standard_error(r, 1),
          n,
          seed};
}

}  // namespace wigswap
