#ifndef POLYGAME_TYPES_HPP
#define POLYGAME_TYPES_HPP

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <vector>

namespace polygame {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Per-agent strategy vectors x^i, each on its own simplex.
using StrategyProfile = std::vector<Vec>;
// Per-agent cumulative-payoff vectors y^i (unconstrained dual coordinates).
using PayoffProfile = std::vector<Vec>;

// Entries below interior_eps are treated as boundary points; the closed-form
// mirror maps and the conservation/dissipation results are interior-only.
inline constexpr double interior_eps = 1e-9;

// Shape/dimension violations, reported separately from value-level errors.
class StructuralError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point left the validity region of a regularizer formula.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A linear solve failed (no interior equilibrium, CO system singular, ...).
class SolveError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Failure while advancing a trajectory; carries the failure time.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(const std::string& what, double t)
      : std::runtime_error(what + " (at t=" + std::to_string(t) + ")"), time_(t) {}
  double time() const { return time_; }

 private:
  double time_;
};

// Invalid run configuration; carries the offending field name.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& field, const std::string& what)
      : std::runtime_error("config field '" + field + "': " + what), field_(field) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// Offsets of the per-agent blocks inside a stacked vector of length total().
class Layout {
 public:
  Layout() = default;
  explicit Layout(const std::vector<int>& sizes) : sizes_(sizes) {
    offsets_.reserve(sizes.size());
    int off = 0;
    for (int s : sizes) {
      offsets_.push_back(off);
      off += s;
    }
    total_ = off;
  }

  int agents() const { return static_cast<int>(sizes_.size()); }
  int size(int i) const { return sizes_[static_cast<std::size_t>(i)]; }
  int offset(int i) const { return offsets_[static_cast<std::size_t>(i)]; }
  int total() const { return total_; }

  Vec pack(const std::vector<Vec>& parts) const {
    Vec out(total_);
    for (int i = 0; i < agents(); ++i) out.segment(offset(i), size(i)) = parts[static_cast<std::size_t>(i)];
    return out;
  }

  std::vector<Vec> unpack(const Vec& stacked) const {
    std::vector<Vec> out;
    out.reserve(sizes_.size());
    for (int i = 0; i < agents(); ++i) out.push_back(stacked.segment(offset(i), size(i)));
    return out;
  }

 private:
  std::vector<int> sizes_;
  std::vector<int> offsets_;
  int total_ = 0;
};

inline bool is_fully_mixed(const Vec& x, double eps = interior_eps) {
  return (x.array() >= eps).all();
}

inline bool is_fully_mixed(const StrategyProfile& x, double eps = interior_eps) {
  for (const Vec& xi : x)
    if (!is_fully_mixed(xi, eps)) return false;
  return true;
}

}  // namespace polygame

#endif  // POLYGAME_TYPES_HPP
