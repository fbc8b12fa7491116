#ifndef POLYGAME_REGULARIZER_HPP
#define POLYGAME_REGULARIZER_HPP

#include <string>
#include <vector>

#include "polygame/types.hpp"

namespace polygame {

// The two closed-form regularizer pairs (h, h*) on the simplex:
//
//   Entropic:  h(x) = sum_a x_a log x_a          h*(y) = lse(y)
//   Euclidean: h(x) = ||x||^2 / 2                h*(y) = ||y||^2/2 - ||c||^2/2
//
// where c is the identical-entry vector c_a = (sum y - 1)/dim.  The mirror map
// grad h* sends dual payoffs to strategies: softmax for the entropic kind and
// the affine simplex correction y - c for the Euclidean kind.  The Euclidean
// formulas are valid only while the corrected point stays in the simplex
// interior; leaving it raises DomainError instead of silently projecting.
enum class RegKind { Entropic, Euclidean };

struct RegularizerSpec {
  RegKind kind = RegKind::Entropic;
  int dim = 1;
};

RegKind reg_kind_from_string(const std::string& name);
std::string to_string(RegKind kind);

// h(x). Entropic requires all entries strictly positive.
double primal_value(const RegularizerSpec& reg, const Vec& x);

// Canonical dual representative y0 with mirror_map(y0) == x: log x for the
// entropic kind (the constant 1 of grad h is dropped; mirror_map is invariant
// under that shift and log x round-trips exactly) and x itself for Euclidean.
Vec primal_gradient(const RegularizerSpec& reg, const Vec& x);

// h*(y). lse is evaluated max-shifted; y grows linearly in t under FTRL.
double dual_value(const RegularizerSpec& reg, const Vec& y);

// grad h*(y), a point on the simplex.
Vec mirror_map(const RegularizerSpec& reg, const Vec& y);

// Hess h*(y): symmetric, rows sum to zero, PSD with 1 in the kernel.
Mat dual_hessian(const RegularizerSpec& reg, const Vec& y);

// Convenience over per-agent collections.
StrategyProfile mirror_map(const std::vector<RegularizerSpec>& regs, const PayoffProfile& y);

}  // namespace polygame

#endif  // POLYGAME_REGULARIZER_HPP
