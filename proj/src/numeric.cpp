#include "adhm/numeric.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <cmath>
#include <limits>

namespace adhm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTwoPi = 6.283185307179586476925286766559;

double pick_rtol(double rtol) { return rtol > 0 ? rtol : tolerances().rank_rtol; }

}  // namespace

// ---------------------------------------------------------------------------
// Rank decisions
// ---------------------------------------------------------------------------

RankResult numerical_rank(const Mat& m, double rtol) {
  RankResult res;
  if (m.rows() == 0 || m.cols() == 0) {
    res.gap_ratio = kInf;
    return res;
  }
  Eigen::JacobiSVD<Mat> svd(m);
  res.singular_values = svd.singularValues();
  const double smax = res.singular_values(0);
  const double maxdim = static_cast<double>(std::max(m.rows(), m.cols()));
  res.threshold = pick_rtol(rtol) * smax * maxdim;
  int rank = 0;
  for (int i = 0; i < res.singular_values.size(); ++i) {
    if (res.singular_values(i) > res.threshold) ++rank;
  }
  res.rank = rank;
  // Gap across the cut: kept/dropped singular value, or kept/threshold when
  // nothing is dropped.  A clean zero below the cut counts as an infinite gap.
  if (rank == 0) {
    res.gap_ratio = kInf;  // smax == 0: the zero matrix is unambiguous
  } else if (rank < res.singular_values.size()) {
    const double below = res.singular_values(rank);
    res.gap_ratio = below > 0 ? res.singular_values(rank - 1) / below : kInf;
  } else {
    res.gap_ratio = res.threshold > 0 ? res.singular_values(rank - 1) / res.threshold : kInf;
  }
  res.ambiguous = res.gap_ratio < tolerances().gap_min;
  return res;
}

Mat null_space_basis(const Mat& m, double rtol) {
  if (m.cols() == 0) return Mat(0, 0);
  if (m.rows() == 0) return Mat::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double threshold =
      pick_rtol(rtol) * smax * static_cast<double>(std::max(m.rows(), m.cols()));
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  return svd.matrixV().rightCols(m.cols() - rank);
}

Mat range_basis(const Mat& m, double rtol) {
  if (m.rows() == 0 || m.cols() == 0) return Mat(m.rows(), 0);
  Eigen::JacobiSVD<Mat> svd(m, Eigen::ComputeThinU);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double threshold =
      pick_rtol(rtol) * smax * static_cast<double>(std::max(m.rows(), m.cols()));
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  return svd.matrixU().leftCols(rank);
}

Mat orthonormal_complement(const Mat& columns, double rtol) {
  const int n = static_cast<int>(columns.rows());
  if (columns.cols() == 0) return Mat::Identity(n, n);
  Eigen::JacobiSVD<Mat> svd(columns, Eigen::ComputeFullU);
  const auto& sv = svd.singularValues();
  const double smax = sv(0);
  const double threshold =
      pick_rtol(rtol) * smax * static_cast<double>(std::max(columns.rows(), columns.cols()));
  int rank = 0;
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > threshold) ++rank;
  }
  return svd.matrixU().rightCols(n - rank);
}

// ---------------------------------------------------------------------------
// Vectorization and Kronecker calculus
// ---------------------------------------------------------------------------

Vec vec(const Mat& m) {
  Vec v(m.size());
  int k = 0;
  for (int j = 0; j < m.cols(); ++j) {
    for (int i = 0; i < m.rows(); ++i) v(k++) = m(i, j);
  }
  return v;
}

Mat unvec(const Vec& v, int rows, int cols) {
  if (v.size() != static_cast<Eigen::Index>(rows) * cols) {
    throw DimensionError("unvec: size mismatch");
  }
  Mat m(rows, cols);
  int k = 0;
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = v(k++);
  }
  return m;
}

Mat kron(const Mat& a, const Mat& b) {
  Mat out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Mat eye(int n) { return Mat::Identity(n, n); }

// ---------------------------------------------------------------------------
// Hermitian calculus
// ---------------------------------------------------------------------------

Mat hermitian_exp(const Mat& h, double t) {
  if (h.rows() == 0) return Mat(0, 0);
  Eigen::SelfAdjointEigenSolver<Mat> es(h);
  Eigen::VectorXd lam = es.eigenvalues();
  Vec scale(lam.size());
  for (int i = 0; i < lam.size(); ++i) scale(i) = std::exp(t * lam(i));
  return es.eigenvectors() * scale.asDiagonal() * es.eigenvectors().adjoint();
}

double hermitian_spectral_radius(const Mat& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  const auto& lam = es.eigenvalues();
  return std::max(std::abs(lam(0)), std::abs(lam(lam.size() - 1)));
}

double hermitian_spread(const Mat& h) {
  if (h.rows() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Mat> es(h, Eigen::EigenvaluesOnly);
  const auto& lam = es.eigenvalues();
  return lam(lam.size() - 1) - lam(0);
}

// ---------------------------------------------------------------------------
// Fingerprints
// ---------------------------------------------------------------------------

std::vector<Cx> charpoly_coeffs(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  if (n == 0) return {};
  Eigen::ComplexEigenSolver<Mat> es(m, /*computeEigenvectors=*/false);
  const Vec& roots = es.eigenvalues();
  // p(t) = prod (t - root_k), expanded incrementally; coeffs[k] multiplies t^k.
  std::vector<Cx> coeffs(n + 1, Cx(0.0));
  coeffs[n] = Cx(1.0);
  int filled = n;  // lowest currently-used index
  for (int k = 0; k < n; ++k) {
    --filled;
    for (int i = filled; i < n; ++i) coeffs[i] -= roots(k) * coeffs[i + 1];
  }
  std::vector<Cx> out;
  out.reserve(n);
  for (int i = n - 1; i >= 0; --i) out.push_back(coeffs[i]);
  return out;
}

std::vector<Cx> gauge_fingerprint(const ADHMDatum& x) {
  std::vector<Cx> fp;
  auto append = [&fp](const std::vector<Cx>& v) { fp.insert(fp.end(), v.begin(), v.end()); };
  append(charpoly_coeffs(x.A));
  append(charpoly_coeffs(x.B));
  append(charpoly_coeffs(x.A * x.B));
  append(charpoly_coeffs(x.A + x.B));
  std::vector<Mat> apow{eye(x.c)}, bpow{eye(x.c)};
  for (int k = 0; k < 4; ++k) {
    apow.push_back(apow.back() * x.A);
    bpow.push_back(bpow.back() * x.B);
  }
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; j <= 4 - i; ++j) {
      if (i + j == 0) continue;
      fp.push_back((apow[i] * bpow[j]).trace());
    }
  }
  return fp;
}

double fingerprint_distance(const std::vector<Cx>& u, const std::vector<Cx>& v) {
  if (u.size() != v.size()) return kInf;
  double worst = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    worst = std::max(worst, std::abs(u[k] - v[k]) / (1.0 + std::abs(u[k])));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Deterministic random sampling
// ---------------------------------------------------------------------------

Rng::Rng(std::uint64_t seed) : gen_(seed) {}

std::uint64_t Rng::bits() { return gen_(); }

double Rng::unit() {
  // Top 53 bits -> [0, 1); identical on every platform.
  return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * unit(); }

Cx Rng::gaussian() {
  // Amplitude-phase form of a standard complex normal: E|z|^2 = 1.
  const double u1 = unit();
  const double u2 = unit();
  const double amp = std::sqrt(-std::log1p(-u1));
  const double phase = kTwoPi * u2;
  return Cx(amp * std::cos(phase), amp * std::sin(phase));
}

Cx Rng::unit_modulus() {
  const double phase = kTwoPi * unit();
  return Cx(std::cos(phase), std::sin(phase));
}

Cx Rng::annulus(double rmin, double rmax) {
  const double m = uniform(rmin, rmax);
  return m * unit_modulus();
}

Mat Rng::gaussian_matrix(int rows, int cols) {
  Mat m(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) m(i, j) = gaussian();
  }
  return m;
}

std::uint64_t Rng::fork() { return gen_(); }

std::uint64_t mix_seed(std::uint64_t base, std::uint64_t label) {
  // splitmix64 finalizer over the combined word.
  std::uint64_t z = base ^ (label * 0x9E3779B97F4A7C15ULL) ^ 0xD1B54A32D192ED03ULL;
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::vector<Cx> distinct_complex(Rng& rng, int n, double min_sep, double box) {
  std::vector<Cx> out;
  out.reserve(n);
  int attempts = 0;
  const int max_attempts = 10000 * std::max(1, n);
  while (static_cast<int>(out.size()) < n) {
    if (++attempts > max_attempts) {
      throw ParameterError("distinct_complex: separation constraint unsatisfiable");
    }
    Cx z(rng.uniform(-box, box), rng.uniform(-box, box));
    bool ok = true;
    for (const Cx& w : out) {
      if (std::abs(z - w) < min_sep) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(z);
  }
  return out;
}

}  // namespace adhm
