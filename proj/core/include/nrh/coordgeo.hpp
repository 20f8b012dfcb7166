#pragma once
#include <array>
#include <map>
#include <vector>

namespace nrh {

// Small dense double matrix; the numeric coordinate module keeps its heavy
// lifting (SVD, matrix exponentials) behind the implementation file.
struct DMat {
  int rows = 0, cols = 0;
  std::vector<double> a;

  DMat() = default;
  DMat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, 0.0) {}
  static DMat identity(int n);

  double& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  double operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }
  DMat transposed() const;
  double max_abs() const;
};

DMat operator+(const DMat& x, const DMat& y);
DMat operator-(const DMat& x, const DMat& y);
DMat operator*(const DMat& x, const DMat& y);
DMat operator*(double s, const DMat& x);

// Polynomial in (x^1..x^n, u) with double coefficients. Exponent keys have
// length n+1; the trailing slot is the u-power. Derivatives are exact
// coefficient operations.
struct Poly {
  int nvars = 0;
  std::map<std::vector<int>, double> coeffs;

  explicit Poly(int nv = 0) : nvars(nv) {}
  void add_term(std::vector<int> expo, double c);
  double eval(const std::vector<double>& xu) const;  // xu has nvars entries
  Poly d(int var) const;
  bool is_zero() const { return coeffs.empty(); }
  // x^T Q x in the first Q.rows variables of an (nv)-variable polynomial.
  static Poly quadratic(const DMat& Q, int nv);
};

enum class MetricFamily { pp_wave, plane_wave, walker_general };

// Walker-type Lorentzian metric 2 dv du + h + 2 A du + H du^2 in coordinates
// (v, x^1..x^n, u); coordinate index 0 = v, 1..n = x^i, n+1 = u.
struct CoordinateMetric {
  MetricFamily family = MetricFamily::pp_wave;
  int n = 0;
  Poly H;                            // pp_wave / walker_general
  DMat A, F;                         // plane_wave: H(x,u) = <A e^{-uF}x, e^{-uF}x>
  std::vector<std::vector<Poly>> h;  // walker_general fiber metric h_ij
  std::vector<Poly> Ai;              // walker_general cross terms A_i

  // H given as a polynomial in (x^1..x^n, u).
  static CoordinateMetric pp_wave(int n, Poly H);
  // Requires A symmetric and F skew.
  static CoordinateMetric plane_wave(DMat A, DMat F);
  static CoordinateMetric walker_general(int n, std::vector<std::vector<Poly>> hij,
                                         std::vector<Poly> Ai, Poly H);

  int dim() const { return n + 2; }
  DMat metric_at(const std::vector<double>& pt) const;
};

// Totally skew torsion 3-form by covariant components on increasing coordinate
// triples; each component is a polynomial in (x^1..x^n, u).
struct TorsionDescriptor {
  int n = 0;
  std::map<std::array<int, 3>, Poly> comp;

  static TorsionDescriptor zero(int n);
  // T = du ^ omega with omega = 2 sum_{i<j} omega_ij dx^i ^ dx^j.
  static TorsionDescriptor du_wedge_omega(const DMat& omega);
  void set(int a, int b, int c, Poly p);                                 // any index order
  double component(int a, int b, int c, const std::vector<double>& pt) const;
  bool is_zero() const;
};

struct NumericTolerance {
  double abs_tol = 1e-8;   // residual acceptance
  double svd_cut = 1e-6;   // singular-value cut for rank decisions
  double fd_step = 1e-5;   // finite-difference step (Richardson-extrapolated)
};

// Levi-Civita Christoffel symbols; result[k](i,j) = Gamma^k_ij.
std::vector<DMat> christoffels(const CoordinateMetric& g, const std::vector<double>& pt);

struct NumericCurvature {
  int dim = 0;
  std::map<std::pair<int, int>, DMat> vals;  // i < j
  DMat get(int i, int j) const;              // any order
  double max_abs() const;
};

// Curvature of the Levi-Civita connection at pt.
NumericCurvature lc_curvature_at(const CoordinateMetric& g, const std::vector<double>& pt);
// Curvature of the metric connection with torsion, nabla = nabla^g + 1/2 T.
NumericCurvature curvature_at(const CoordinateMetric& g, const TorsionDescriptor& T,
                              const std::vector<double>& pt);

// Max-norm of (nabla T)(.,.,.,.) at pt for nabla = nabla^g + 1/2 T.
double nablaT_residual(const CoordinateMetric& g, const TorsionDescriptor& T,
                       const std::vector<double>& pt);

struct NumericHolonomy {
  int dim = 0;
  std::vector<DMat> basis;  // orthonormal spanning matrices (coordinate frame)
  int rank = 0;
  bool rank_unstable = false;          // rank changes within one decade of svd_cut
  std::vector<double> singular_values;  // of the normalized row stack
};

// Numeric span of the curvature endomorphisms at the samples together with
// their first two coordinate derivatives (Richardson-extrapolated central
// differences) at the first sample, closed under matrix brackets.
NumericHolonomy infinitesimal_holonomy(const CoordinateMetric& g, const TorsionDescriptor& T,
                                       const std::vector<std::vector<double>>& samples,
                                       const NumericTolerance& tol = {});

// Seeded uniform draws from [-1,1]^dim; deterministic for a given seed.
std::vector<std::vector<double>> sample_points(int dim, int count, unsigned seed);

}  // namespace nrh
