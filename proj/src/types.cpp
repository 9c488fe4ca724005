#include "adhm/types.hpp"

#include <algorithm>
#include <sstream>

namespace adhm {

Tolerances& tolerances() {
  static Tolerances tol;
  return tol;
}

void Dims::validate() const {
  if (r < 1 || c < 0 || cprime < 0) {
    throw DimensionError("dims (" + str() + ") need r >= 1, c >= 0, cprime >= 0");
  }
}

std::string Dims::str() const {
  std::ostringstream os;
  os << r << "," << c << "," << cprime;
  return os.str();
}

ADHMDatum ADHMDatum::zeros(int r, int c) {
  if (r < 1 || c < 0) throw DimensionError("plain datum needs r >= 1, c >= 0");
  ADHMDatum x;
  x.r = r;
  x.c = c;
  x.A = Mat::Zero(c, c);
  x.B = Mat::Zero(c, c);
  x.I = Mat::Zero(c, r);
  x.J = Mat::Zero(r, c);
  return x;
}

void ADHMDatum::validate_shapes() const {
  if (r < 1 || c < 0) throw DimensionError("plain datum needs r >= 1, c >= 0");
  auto want = [](const Mat& m, int rows, int cols, const char* name) {
    if (m.rows() != rows || m.cols() != cols) {
      throw DimensionError(std::string("matrix ") + name + " has wrong shape");
    }
  };
  want(A, c, c, "A");
  want(B, c, c, "B");
  want(I, c, r, "I");
  want(J, r, c, "J");
}

double ADHMDatum::frobenius_sq() const {
  return A.squaredNorm() + B.squaredNorm() + I.squaredNorm() + J.squaredNorm();
}

EnhancedDatum EnhancedDatum::zeros(const Dims& d) {
  d.validate();
  EnhancedDatum x;
  x.dims = d;
  x.A = Mat::Zero(d.c, d.c);
  x.B = Mat::Zero(d.c, d.c);
  x.I = Mat::Zero(d.c, d.r);
  x.J = Mat::Zero(d.r, d.c);
  x.Aprime = Mat::Zero(d.cprime, d.cprime);
  x.Bprime = Mat::Zero(d.cprime, d.cprime);
  x.F = Mat::Zero(d.c, d.cprime);
  x.G = Mat::Zero(d.cprime, d.c);
  return x;
}

void EnhancedDatum::validate_shapes() const {
  dims.validate();
  auto want = [](const Mat& m, int rows, int cols, const char* name) {
    if (m.rows() != rows || m.cols() != cols) {
      throw DimensionError(std::string("matrix ") + name + " has wrong shape");
    }
  };
  want(A, dims.c, dims.c, "A");
  want(B, dims.c, dims.c, "B");
  want(I, dims.c, dims.r, "I");
  want(J, dims.r, dims.c, "J");
  want(Aprime, dims.cprime, dims.cprime, "Aprime");
  want(Bprime, dims.cprime, dims.cprime, "Bprime");
  want(F, dims.c, dims.cprime, "F");
  want(G, dims.cprime, dims.c, "G");
}

double EnhancedDatum::frobenius_sq() const {
  return A.squaredNorm() + B.squaredNorm() + I.squaredNorm() + J.squaredNorm() +
         Aprime.squaredNorm() + Bprime.squaredNorm() + F.squaredNorm() + G.squaredNorm();
}

ADHMDatum EnhancedDatum::plain_part() const {
  ADHMDatum x;
  x.r = dims.r;
  x.c = dims.c;
  x.A = A;
  x.B = B;
  x.I = I;
  x.J = J;
  return x;
}

EnhancedDatum EnhancedDatum::embed(const ADHMDatum& x) {
  x.validate_shapes();
  EnhancedDatum e = EnhancedDatum::zeros({x.r, x.c, 0});
  e.A = x.A;
  e.B = x.B;
  e.I = x.I;
  e.J = x.J;
  return e;
}

GaugeElement GaugeElement::identity(const Dims& d) {
  GaugeElement g;
  g.h = Mat::Identity(d.c, d.c);
  g.hprime = Mat::Identity(d.cprime, d.cprime);
  return g;
}

int PointConfiguration::length() const {
  int n = 0;
  for (const auto& p : points) n += p.mult;
  return n;
}

PointConfiguration PointConfiguration::sorted() const {
  PointConfiguration z = *this;
  std::sort(z.points.begin(), z.points.end(), [](const SupportPoint& a, const SupportPoint& b) {
    if (a.x.real() != b.x.real()) return a.x.real() < b.x.real();
    if (a.x.imag() != b.x.imag()) return a.x.imag() < b.x.imag();
    if (a.y.real() != b.y.real()) return a.y.real() < b.y.real();
    return a.y.imag() < b.y.imag();
  });
  return z;
}

void PointConfiguration::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].mult < 1) throw DimensionError("point multiplicity must be >= 1");
    for (std::size_t k = i + 1; k < points.size(); ++k) {
      if (points[i].x == points[k].x && points[i].y == points[k].y) {
        throw DimensionError("repeated point in configuration");
      }
    }
  }
}

}  // namespace adhm
