#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "innerlip/grid.hpp"

namespace innerlip {

using PointFn = std::function<cplx(cplx)>;
/// Predicate on the plane; used both for integration regions and for exclusion masks.
using Region = std::function<bool(cplx)>;

namespace region {
Region everywhere();
Region disk(cplx center, double radius);           // closed disk
Region open_disk(cplx center, double radius);
Region annulus(cplx center, double inner, double outer);
Region intersect(Region a, Region b);
Region unite(Region a, Region b);
}  // namespace region

/// Complex samples on a GridSpec, optionally with excluded points (branch cuts,
/// points outside a domain) and the `supported_in_2D` flag (zero for |z| > 2).
class ComplexField {
 public:
  ComplexField() = default;
  explicit ComplexField(const GridSpec& grid);
  ComplexField(const GridSpec& grid, std::vector<cplx> values);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return values_.size(); }
  std::span<const cplx> values() const { return values_; }
  std::span<cplx> values() { return values_; }
  cplx& operator[](std::size_t i) { return values_[i]; }
  const cplx& operator[](std::size_t i) const { return values_[i]; }
  cplx at(std::size_t j, std::size_t k) const { return values_[grid_.index(j, k)]; }

  bool has_mask() const { return !mask_.empty(); }
  bool excluded(std::size_t i) const { return !mask_.empty() && mask_[i] != 0; }
  void exclude(std::size_t i);
  std::span<const std::uint8_t> mask() const { return mask_; }
  void set_mask(std::vector<std::uint8_t> mask);
  void clear_mask() { mask_.clear(); }
  double excluded_fraction() const;

  bool supported_in_2D() const { return supported_in_2D_; }
  /// Flags the field as supported in the closed disk of radius 2; throws
  /// Error(precondition) if some sample with |z| > 2 exceeds 1e-12 * max|value|.
  void mark_supported_in_2D();
  void set_supported_in_2D_unchecked(bool flag) { supported_in_2D_ = flag; }
  bool satisfies_2D_support() const;

  /// max |value| over unmasked samples.
  double max_abs() const;

 private:
  GridSpec grid_{};
  std::vector<cplx> values_;
  std::vector<std::uint8_t> mask_;
  bool supported_in_2D_ = false;
};

struct RealField {
  GridSpec grid{};
  std::vector<double> values;
  std::vector<std::uint8_t> mask;

  bool excluded(std::size_t i) const { return !mask.empty() && mask[i] != 0; }
};

/// The Wirtinger derivatives (h_z, h_zbar) of a sampled map.
struct FieldPair {
  ComplexField d_z;
  ComplexField d_zbar;
};

enum class Scheme { spectral, central2, central4 };

/// Samples f at every grid point; points where `excluded` holds are masked and
/// left at zero. A non-finite value at an unmasked point throws Error(precondition).
ComplexField sample(const GridSpec& grid, const PointFn& f, const Region& excluded = {});

/// Fraction of each cell (s x s midpoint subsamples) lying in `inside`.
ComplexField cell_average_indicator(const GridSpec& grid, const Region& inside, int s = 16);

/// Discrete h_z = (d_x - i d_y)h / 2 and h_zbar = (d_x + i d_y)h / 2.
/// Central schemes skip masked neighbours (output excluded there); outside the box a
/// `supported_in_2D` field reads as zero, any other field yields an excluded output.
FieldPair wirtinger(const ComplexField& field, Scheme scheme = Scheme::central4);

/// (sum |v|^p delta^2)^(1/p) over unmasked samples in `where`; p = infinity gives the sup.
double lp_norm(const ComplexField& field, double p, const Region& where = region::everywhere());

struct BesovEstimate {
  double lp = 0.0;         // ||w||_p
  double seminorm = 0.0;   // sup_tau ||w(.+tau) - w||_p / |tau|^alpha
  double total() const { return lp + seminorm; }
};

/// Discrete ||w||_{alpha,p}: translations tau = delta * 2^j * d for 0 <= j <= log2(n/4)
/// and the 8 lattice directions d.
BesovEstimate besov_estimate(const ComplexField& field, double alpha, double p);
double besov_seminorm(const ComplexField& field, double alpha, double p);

/// Diameter of the sampled value set over `where` (convex hull + exhaustive hull pairs).
double oscillation(const ComplexField& field, const Region& where);

/// Lower bound for the Lipschitz constant: every pair at lattice offsets of length in
/// [min_sep, 2*min_sep] plus up to 10^6 random pairs with separation >= min_sep.
double lipschitz_estimate(const ComplexField& field, const Region& where, double min_sep,
                          std::uint64_t seed = 1);

/// Pointwise |d_z|^2 - |d_zbar|^2.
RealField jacobian(const FieldPair& pair);

/// Local bicubic (4x4 Lagrange) interpolation; exact on bicubic polynomials.
cplx interpolate(const ComplexField& field, cplx z);

/// a - b with the union of masks; grids must agree.
ComplexField subtract(const ComplexField& a, const ComplexField& b);

}  // namespace innerlip
