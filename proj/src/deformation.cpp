#include "adhm/deformation.hpp"

#include "adhm/numeric.hpp"
#include "adhm/stability.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <numeric>

namespace adhm {

ComplexVariant parse_variant(const std::string& name) {
  if (name == "general") return ComplexVariant::general;
  if (name == "reduced") return ComplexVariant::reduced;
  throw ParameterError("unknown complex variant: " + name);
}

const char* to_string(ComplexVariant v) {
  return v == ComplexVariant::general ? "general" : "reduced";
}

namespace {

// Dense block-structured matrix with prescribed row/column partitions.
class BlockMat {
 public:
  BlockMat(const std::vector<int>& row_sizes, const std::vector<int>& col_sizes) {
    int r = 0;
    for (int s : row_sizes) {
      row_off_.push_back(r);
      r += s;
    }
    int c = 0;
    for (int s : col_sizes) {
      col_off_.push_back(c);
      c += s;
    }
    m_ = Mat::Zero(r, c);
  }

  void set(int bi, int bj, const Mat& term) {
    m_.block(row_off_[bi], col_off_[bj], term.rows(), term.cols()) = term;
  }

  Mat take() { return std::move(m_); }

 private:
  std::vector<int> row_off_, col_off_;
  Mat m_;
};

std::vector<int> c1_block_sizes(const Dims& d) {
  return {d.c * d.c, d.c * d.c, d.c * d.r, d.r * d.c,
          d.cprime * d.cprime, d.cprime * d.cprime, d.c * d.cprime};
}

Mat assemble_d0(const EnhancedDatum& x) {
  const Dims& d = x.dims;
  const Mat Ic = eye(d.c), Ip = eye(d.cprime);
  BlockMat out(c1_block_sizes(d), {d.c * d.c, d.cprime * d.cprime});
  out.set(0, 0, kron(x.A.transpose(), Ic) - kron(Ic, x.A));
  out.set(1, 0, kron(x.B.transpose(), Ic) - kron(Ic, x.B));
  out.set(2, 0, kron(x.I.transpose(), Ic));
  out.set(3, 0, -kron(Ic, x.J));
  out.set(4, 1, kron(x.Aprime.transpose(), Ip) - kron(Ip, x.Aprime));
  out.set(5, 1, kron(x.Bprime.transpose(), Ip) - kron(Ip, x.Bprime));
  out.set(6, 0, kron(x.F.transpose(), Ic));
  out.set(6, 1, -kron(Ip, x.F));
  return out.take();
}

Mat assemble_d1(const EnhancedDatum& x, bool reduced) {
  const Dims& d = x.dims;
  const Mat Ic = eye(d.c), Ip = eye(d.cprime), Ir = eye(d.r);
  std::vector<int> rows = {d.c * d.c, d.c * d.cprime, d.c * d.cprime, d.r * d.cprime};
  if (!reduced) rows.push_back(d.cprime * d.cprime);
  BlockMat out(rows, c1_block_sizes(d));
  // row 0: [a,B] + [A,b] + Ij + iJ
  out.set(0, 0, kron(x.B.transpose(), Ic) - kron(Ic, x.B));
  out.set(0, 1, kron(Ic, x.A) - kron(x.A.transpose(), Ic));
  out.set(0, 2, kron(x.J.transpose(), Ic));
  out.set(0, 3, kron(Ic, x.I));
  // row 1: Af + aF - Fa' - fA'
  out.set(1, 0, kron(x.F.transpose(), Ic));
  out.set(1, 4, -kron(Ip, x.F));
  out.set(1, 6, kron(Ip, x.A) - kron(x.Aprime.transpose(), Ic));
  // row 2: Bf + bF - Fb' - fB'
  out.set(2, 1, kron(x.F.transpose(), Ic));
  out.set(2, 5, -kron(Ip, x.F));
  out.set(2, 6, kron(Ip, x.B) - kron(x.Bprime.transpose(), Ic));
  // row 3: jF + Jf
  out.set(3, 3, kron(x.F.transpose(), Ir));
  out.set(3, 6, kron(Ip, x.J));
  // row 4 (general only): [a',B'] + [A',b']
  if (!reduced) {
    out.set(4, 4, kron(x.Bprime.transpose(), Ip) - kron(Ip, x.Bprime));
    out.set(4, 5, kron(Ip, x.Aprime) - kron(x.Aprime.transpose(), Ip));
  }
  return out.take();
}

Mat assemble_d2(const EnhancedDatum& x, bool reduced) {
  const Dims& d = x.dims;
  const Mat Ic = eye(d.c), Ip = eye(d.cprime);
  std::vector<int> cols = {d.c * d.c, d.c * d.cprime, d.c * d.cprime, d.r * d.cprime};
  if (!reduced) cols.push_back(d.cprime * d.cprime);
  BlockMat out({d.c * d.cprime}, cols);
  // c1 F + B c2 - c2 B' + c3 A' - A c3 - I c4 [- F c5]
  out.set(0, 0, kron(x.F.transpose(), Ic));
  out.set(0, 1, kron(Ip, x.B) - kron(x.Bprime.transpose(), Ic));
  out.set(0, 2, kron(x.Aprime.transpose(), Ic) - kron(Ip, x.A));
  out.set(0, 3, -kron(Ip, x.I));
  if (!reduced) out.set(0, 4, -kron(Ip, x.F));
  return out.take();
}

}  // namespace

DeformationComplex build_complex(const EnhancedDatum& x, ComplexVariant variant) {
  x.validate_shapes();
  const bool reduced = variant == ComplexVariant::reduced;
  if (reduced && x.dims.cprime != 1) {
    throw DimensionError("reduced complex requires cprime = 1, got " + x.dims.str());
  }
  const Dims& d = x.dims;
  DeformationComplex k;
  k.variant = variant;
  k.dims = d;
  const int c2 = d.c * d.c, cp2 = d.cprime * d.cprime;
  k.term_dims[0] = c2 + cp2;
  k.term_dims[1] = 2 * c2 + 2 * cp2 + 2 * d.r * d.c + d.c * d.cprime;
  k.term_dims[2] = c2 + 2 * d.c * d.cprime + d.r * d.cprime + (reduced ? 0 : cp2);
  k.term_dims[3] = d.c * d.cprime;
  k.D0 = assemble_d0(x);
  k.D1 = assemble_d1(x, reduced);
  k.D2 = assemble_d2(x, reduced);
  return k;
}

CohomologyReport cohomology_dims(const DeformationComplex& k) {
  CohomologyReport rep;
  rep.term_dims = k.term_dims;
  const RankResult r0 = numerical_rank(k.D0);
  const RankResult r1 = numerical_rank(k.D1);
  const RankResult r2 = numerical_rank(k.D2);
  rep.ranks = {r0.rank, r1.rank, r2.rank};
  rep.gap_ratios = {r0.gap_ratio, r1.gap_ratio, r2.gap_ratio};
  rep.ambiguous = r0.ambiguous || r1.ambiguous || r2.ambiguous;
  rep.h[0] = k.term_dims[0] - r0.rank;
  rep.h[1] = (k.term_dims[1] - r1.rank) - r0.rank;
  rep.h[2] = (k.term_dims[2] - r2.rank) - r1.rank;
  rep.h[3] = k.term_dims[3] - r2.rank;
  rep.euler = -static_cast<long long>(rep.h[0]) + rep.h[1] - rep.h[2] + rep.h[3];
  return rep;
}

TangentBlocks unpack_tangent(const Dims& dims, const Vec& v) {
  const std::vector<int> sizes = c1_block_sizes(dims);
  const int total = std::accumulate(sizes.begin(), sizes.end(), 0);
  if (v.size() != total) {
    throw DimensionError("tangent coordinate vector has wrong length");
  }
  TangentBlocks t;
  int off = 0;
  auto grab = [&](int rows, int cols) {
    Mat m = unvec(v.segment(off, rows * cols), rows, cols);
    off += rows * cols;
    return m;
  };
  t.a = grab(dims.c, dims.c);
  t.b = grab(dims.c, dims.c);
  t.i = grab(dims.c, dims.r);
  t.j = grab(dims.r, dims.c);
  t.aprime = grab(dims.cprime, dims.cprime);
  t.bprime = grab(dims.cprime, dims.cprime);
  t.f = grab(dims.c, dims.cprime);
  return t;
}

Vec pack_tangent(const TangentBlocks& t) {
  const int total = static_cast<int>(t.a.size() + t.b.size() + t.i.size() + t.j.size() +
                                     t.aprime.size() + t.bprime.size() + t.f.size());
  Vec v(total);
  int off = 0;
  auto put = [&](const Mat& m) {
    v.segment(off, m.size()) = vec(m);
    off += static_cast<int>(m.size());
  };
  put(t.a);
  put(t.b);
  put(t.i);
  put(t.j);
  put(t.aprime);
  put(t.bprime);
  put(t.f);
  return v;
}

TangentBasis tangent_basis(const EnhancedDatum& x) {
  if (x.dims.cprime != 1) {
    throw DimensionError("tangent basis requires cprime = 1, got " + x.dims.str());
  }
  const StabilityReport stab = is_stable(x);
  if (stab.verdict != Verdict::stable) {
    throw ValidationError("tangent basis requires a stable datum");
  }
  const DeformationComplex k = build_complex(x, ComplexVariant::reduced);

  TangentBasis basis;
  // Gauge directions: im d0, with explicit preimages.  With d0 = U S V*, the
  // leading U columns are an orthonormal image basis and V_i / s_i map onto
  // them exactly.
  Eigen::JacobiSVD<Mat> svd(k.D0, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RankResult r0 = numerical_rank(k.D0);
  basis.gauge_image = svd.matrixU().leftCols(r0.rank);
  basis.gauge_generators = Mat(k.term_dims[0], r0.rank);
  for (int i = 0; i < r0.rank; ++i) {
    basis.gauge_generators.col(i) = svd.matrixV().col(i) / svd.singularValues()(i);
  }

  const RankResult r1 = numerical_rank(k.D1);
  basis.kernel = null_space_basis(k.D1);

  // Harmonic representatives: kernel columns projected off the gauge image.
  const Mat proj = basis.kernel - basis.gauge_image * (basis.gauge_image.adjoint() * basis.kernel);
  basis.h1 = range_basis(proj);
  basis.ambiguous = r0.ambiguous || r1.ambiguous;
  return basis;
}

int stabilizer_dim(const EnhancedDatum& x) {
  x.validate_shapes();
  const Mat d0 = assemble_d0(x);
  const RankResult rk = numerical_rank(d0);
  return static_cast<int>(d0.cols()) - rk.rank;
}

}  // namespace adhm
