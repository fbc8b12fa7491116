#include "polygame/regularizer.hpp"

#include <cmath>

namespace polygame {

RegKind reg_kind_from_string(const std::string& name) {
  if (name == "entropic") return RegKind::Entropic;
  if (name == "euclidean") return RegKind::Euclidean;
  throw ConfigError("regularizer", "unknown kind '" + name + "' (expected \"entropic\" or \"euclidean\")");
}

std::string to_string(RegKind kind) {
  return kind == RegKind::Entropic ? "entropic" : "euclidean";
}

namespace {

void check_dim(const RegularizerSpec& reg, const Vec& v, const char* what) {
  if (v.size() != reg.dim)
    throw StructuralError(std::string(what) + ": vector has dim " + std::to_string(v.size()) +
                          ", regularizer expects " + std::to_string(reg.dim));
}

Vec softmax(const Vec& y) {
  Vec z = (y.array() - y.maxCoeff()).exp();
  return z / z.sum();
}

// Euclidean mirror: y - (sum y - 1)/dim, valid only in the simplex interior.
Vec euclidean_mirror(const Vec& y) {
  const double shift = (y.sum() - 1.0) / static_cast<double>(y.size());
  Vec z = y.array() - shift;
  for (Eigen::Index a = 0; a < z.size(); ++a) {
    if (z[a] <= interior_eps)
      throw DomainError("euclidean mirror map left the simplex interior at coordinate " +
                        std::to_string(a) + " (value " + std::to_string(z[a]) + ")");
  }
  return z;
}

}  // namespace

double primal_value(const RegularizerSpec& reg, const Vec& x) {
  check_dim(reg, x, "primal_value");
  switch (reg.kind) {
    case RegKind::Entropic: {
      double h = 0.0;
      for (Eigen::Index a = 0; a < x.size(); ++a) {
        if (x[a] <= 0.0)
          throw DomainError("entropic regularizer needs strictly positive entries; coordinate " +
                            std::to_string(a) + " is " + std::to_string(x[a]));
        h += x[a] * std::log(x[a]);
      }
      return h;
    }
    case RegKind::Euclidean:
      return 0.5 * x.squaredNorm();
  }
  throw StructuralError("unreachable regularizer kind");
}

Vec primal_gradient(const RegularizerSpec& reg, const Vec& x) {
  check_dim(reg, x, "primal_gradient");
  switch (reg.kind) {
    case RegKind::Entropic: {
      for (Eigen::Index a = 0; a < x.size(); ++a)
        if (x[a] <= 0.0)
          throw DomainError("entropic gradient needs strictly positive entries; coordinate " +
                            std::to_string(a) + " is " + std::to_string(x[a]));
      return x.array().log();
    }
    case RegKind::Euclidean:
      return x;
  }
  throw StructuralError("unreachable regularizer kind");
}

double dual_value(const RegularizerSpec& reg, const Vec& y) {
  check_dim(reg, y, "dual_value");
  switch (reg.kind) {
    case RegKind::Entropic: {
      const double m = y.maxCoeff();
      return m + std::log((y.array() - m).exp().sum());
    }
    case RegKind::Euclidean: {
      euclidean_mirror(y);  // domain check
      const double shift = (y.sum() - 1.0) / static_cast<double>(y.size());
      return 0.5 * y.squaredNorm() - 0.5 * static_cast<double>(y.size()) * shift * shift;
    }
  }
  throw StructuralError("unreachable regularizer kind");
}

Vec mirror_map(const RegularizerSpec& reg, const Vec& y) {
  check_dim(reg, y, "mirror_map");
  switch (reg.kind) {
    case RegKind::Entropic:
      return softmax(y);
    case RegKind::Euclidean:
      return euclidean_mirror(y);
  }
  throw StructuralError("unreachable regularizer kind");
}

Mat dual_hessian(const RegularizerSpec& reg, const Vec& y) {
  check_dim(reg, y, "dual_hessian");
  switch (reg.kind) {
    case RegKind::Entropic: {
      const Vec s = softmax(y);
      Mat h = -s * s.transpose();
      h.diagonal() += s;
      return h;
    }
    case RegKind::Euclidean: {
      euclidean_mirror(y);  // domain check
      const double n = static_cast<double>(y.size());
      return Mat::Identity(y.size(), y.size()) - Mat::Constant(y.size(), y.size(), 1.0 / n);
    }
  }
  throw StructuralError("unreachable regularizer kind");
}

StrategyProfile mirror_map(const std::vector<RegularizerSpec>& regs, const PayoffProfile& y) {
  if (regs.size() != y.size())
    throw StructuralError("mirror_map: profile has " + std::to_string(y.size()) + " agents, expected " +
                          std::to_string(regs.size()));
  StrategyProfile x;
  x.reserve(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x.push_back(mirror_map(regs[i], y[i]));
  return x;
}

}  // namespace polygame
