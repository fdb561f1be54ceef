#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracspec/ifs.hpp"
#include "fracspec/linalg.hpp"

namespace fracspec {

/// A point left the box a grid function is defined on.
class DomainError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Function sampled on a regular grid over a box, row-major with the last
/// axis fastest.  Off-grid values come from multilinear interpolation.
template <class T>
class BasicGridFunction {
 public:
  BasicGridFunction(Box box, std::vector<std::size_t> resolution)
      : box_(std::move(box)), res_(std::move(resolution)) {
    if (res_.size() != box_.dim()) throw std::invalid_argument("grid: resolution/box dimension mismatch");
    std::size_t total = 1;
    for (std::size_t i = 0; i < res_.size(); ++i) {
      if (res_[i] < 2) throw std::invalid_argument("grid: resolution must be >= 2 per axis");
      if (!(box_.hi[i] > box_.lo[i])) throw std::invalid_argument("grid: empty box");
      total *= res_[i];
    }
    values_.assign(total, T(0));
  }

  template <class Fn>
  static BasicGridFunction sample(Box box, std::vector<std::size_t> resolution, Fn&& fn) {
    BasicGridFunction g(std::move(box), std::move(resolution));
    for (std::size_t i = 0; i < g.size(); ++i) g.values_[i] = fn(g.node(i));
    return g;
  }

  const Box& box() const { return box_; }
  const std::vector<std::size_t>& resolution() const { return res_; }
  std::size_t dim() const { return res_.size(); }
  std::size_t size() const { return values_.size(); }
  std::span<const T> values() const { return values_; }
  std::span<T> values() { return values_; }
  const T& operator[](std::size_t i) const { return values_[i]; }
  T& operator[](std::size_t i) { return values_[i]; }

  double spacing(std::size_t axis) const {
    return (box_.hi[axis] - box_.lo[axis]) / static_cast<double>(res_[axis] - 1);
  }

  RealVec node(std::size_t flat) const {
    RealVec x(dim());
    for (std::size_t a = dim(); a-- > 0;) {
      const std::size_t i = flat % res_[a];
      flat /= res_[a];
      x[a] = box_.lo[a] + spacing(a) * static_cast<double>(i);
    }
    return x;
  }

  /// True when the node lies on the outer face of the box.
  bool on_boundary(std::size_t flat) const {
    for (std::size_t a = dim(); a-- > 0;) {
      const std::size_t i = flat % res_[a];
      flat /= res_[a];
      if (i == 0 || i + 1 == res_[a]) return true;
    }
    return false;
  }

  /// Multilinear interpolation; throws DomainError outside the box.
  T interpolate(const RealVec& x) const {
    if (x.size() != dim()) throw std::invalid_argument("interpolate: dimension mismatch");
    std::vector<std::size_t> cell(dim());
    std::vector<double> frac(dim());
    for (std::size_t a = 0; a < dim(); ++a) {
      const double h = spacing(a);
      const double slack = 1e-9 * h;
      if (x[a] < box_.lo[a] - slack || x[a] > box_.hi[a] + slack) {
        throw DomainError("point coordinate " + std::to_string(x[a]) + " outside grid box [" +
                          std::to_string(box_.lo[a]) + ", " + std::to_string(box_.hi[a]) + "] on axis " +
                          std::to_string(a));
      }
      double u = (x[a] - box_.lo[a]) / h;
      u = std::min(std::max(u, 0.0), static_cast<double>(res_[a] - 1));
      std::size_t i = static_cast<std::size_t>(u);
      if (i >= res_[a] - 1) i = res_[a] - 2;
      cell[a] = i;
      frac[a] = u - static_cast<double>(i);
    }
    T acc(0);
    const std::size_t corners = std::size_t{1} << dim();
    for (std::size_t c = 0; c < corners; ++c) {
      double w = 1.0;
      std::size_t flat = 0;
      for (std::size_t a = 0; a < dim(); ++a) {
        const bool up = (c >> a) & 1u;
        w *= up ? frac[a] : 1.0 - frac[a];
        flat = flat * res_[a] + cell[a] + (up ? 1 : 0);
      }
      if (w != 0.0) acc += w * values_[flat];
    }
    return acc;
  }

 private:
  Box box_;
  std::vector<std::size_t> res_;
  std::vector<T> values_;
};

using GridFunction = BasicGridFunction<double>;
using ComplexGridFunction = BasicGridFunction<std::complex<double>>;

/// Nonnegative weight W evaluated analytically (never interpolated, so its
/// zeros stay sharp).
class Weight {
 public:
  using Fn = std::function<double(const RealVec&)>;

  Weight(Fn fn, std::optional<double> lipschitz = std::nullopt) : fn_(std::move(fn)), lipschitz_(lipschitz) {}

  double operator()(const RealVec& x) const { return fn_(x); }
  std::optional<double> lipschitz_bound() const { return lipschitz_; }

  /// W_B = |m_B|^2 / N.
  static Weight from_digits(std::vector<RealVec> digits);
  static Weight constant(double c);

 private:
  Fn fn_;
  std::optional<double> lipschitz_;
};

/// Default grid for a view: the attractor ball's box inflated 5%, with
/// `per_axis` points per axis (0 selects 4096 for d=1, 512 for d=2, 64 above).
GridFunction make_grid(const IfsView& view, std::size_t per_axis = 0);

/// (R_W f)(x) = sum_l W(tau_l x) f(tau_l x) at every node.
///
/// Nodes inside the attractor ball must map inside the box (DomainError
/// otherwise).  Nodes outside the ball are corner padding; their images are
/// clamped to the box.
GridFunction ruelle_apply(const Weight& W, const IfsView& view, const GridFunction& f, unsigned threads = 1);

/// sup over n_probe uniform points of the box of |sum_l W(tau_l x) - 1|.
double check_qmf(const Weight& W, const IfsView& view, std::size_t n_probe, std::uint64_t seed);

enum class Averaging { cesaro, power };

/// cesaro: (1/n) sum_{k<n} R_W^k f.  power: R_W^n f.
GridFunction cesaro(const Weight& W, const IfsView& view, const GridFunction& f, std::size_t n_iter,
                    Averaging mode = Averaging::cesaro, unsigned threads = 1);

/// sup |R_W h - h| over interior nodes lying in the attractor ball.
double harmonic_defect(const Weight& W, const IfsView& view, const GridFunction& h, unsigned threads = 1);

}  // namespace fracspec
