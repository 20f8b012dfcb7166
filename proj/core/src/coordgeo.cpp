#include "nrh/coordgeo.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>
#include <unsupported/Eigen/MatrixFunctions>

#include "nrh/errors.hpp"

namespace nrh {

// ---- DMat ----

DMat DMat::identity(int n) {
  DMat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DMat DMat::transposed() const {
  DMat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double DMat::max_abs() const {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::fabs(v));
  return m;
}

DMat operator+(const DMat& x, const DMat& y) {
  DMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}
DMat operator-(const DMat& x, const DMat& y) {
  DMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}
DMat operator*(const DMat& x, const DMat& y) {
  DMat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      double v = x(i, k);
      if (v == 0.0) continue;
      for (int j = 0; j < y.cols; ++j) r(i, j) += v * y(k, j);
    }
  return r;
}
DMat operator*(double s, const DMat& x) {
  DMat r(x.rows, x.cols);
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] = s * x.a[i];
  return r;
}

namespace {

Eigen::MatrixXd to_eigen(const DMat& m) {
  Eigen::MatrixXd e(m.rows, m.cols);
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) e(i, j) = m(i, j);
  return e;
}

DMat from_eigen(const Eigen::MatrixXd& e) {
  DMat m(static_cast<int>(e.rows()), static_cast<int>(e.cols()));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) m(i, j) = e(i, j);
  return m;
}

}  // namespace

// ---- Poly ----

void Poly::add_term(std::vector<int> expo, double c) {
  if (static_cast<int>(expo.size()) != nvars) throw DimensionError("exponent length mismatch");
  auto [it, fresh] = coeffs.emplace(std::move(expo), c);
  if (!fresh) it->second += c;
  if (it->second == 0.0) coeffs.erase(it);
}

double Poly::eval(const std::vector<double>& xu) const {
  double s = 0.0;
  for (auto& [e, c] : coeffs) {
    double t = c;
    for (int v = 0; v < nvars; ++v)
      for (int k = 0; k < e[v]; ++k) t *= xu[v];
    s += t;
  }
  return s;
}

Poly Poly::d(int var) const {
  Poly out(nvars);
  if (var < 0 || var >= nvars) return out;
  for (auto& [e, c] : coeffs)
    if (e[var] > 0) {
      std::vector<int> f = e;
      f[var] -= 1;
      out.add_term(std::move(f), c * e[var]);
    }
  return out;
}

Poly Poly::quadratic(const DMat& Q, int nv) {
  Poly p(nv);
  for (int i = 0; i < Q.rows; ++i)
    for (int j = 0; j < Q.cols; ++j)
      if (Q(i, j) != 0.0) {
        std::vector<int> e(nv, 0);
        e[i] += 1;
        e[j] += 1;
        p.add_term(std::move(e), Q(i, j));
      }
  return p;
}

// ---- CoordinateMetric ----

CoordinateMetric CoordinateMetric::pp_wave(int n, Poly H) {
  if (H.nvars != n + 1) throw DimensionError("H must be a polynomial in (x^1..x^n, u)");
  CoordinateMetric g;
  g.family = MetricFamily::pp_wave;
  g.n = n;
  g.H = std::move(H);
  return g;
}

CoordinateMetric CoordinateMetric::plane_wave(DMat A, DMat F) {
  int n = A.rows;
  if (A.cols != n || F.rows != n || F.cols != n) throw DimensionError("A and F must be n x n");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (std::fabs(A(i, j) - A(j, i)) > 1e-12) throw Error("plane wave needs symmetric A");
      if (std::fabs(F(i, j) + F(j, i)) > 1e-12) throw Error("plane wave needs skew F");
    }
  CoordinateMetric g;
  g.family = MetricFamily::plane_wave;
  g.n = n;
  g.H = Poly(n + 1);
  g.A = std::move(A);
  g.F = std::move(F);
  return g;
}

CoordinateMetric CoordinateMetric::walker_general(int n, std::vector<std::vector<Poly>> hij,
                                                  std::vector<Poly> Ai, Poly H) {
  CoordinateMetric g;
  g.family = MetricFamily::walker_general;
  g.n = n;
  g.h = std::move(hij);
  g.Ai = std::move(Ai);
  g.H = std::move(H);
  if (static_cast<int>(g.h.size()) != n || static_cast<int>(g.Ai.size()) != n ||
      g.H.nvars != n + 1)
    throw DimensionError("walker tables must cover n fiber coordinates");
  return g;
}

namespace {

std::vector<double> xu_of(const CoordinateMetric& g, const std::vector<double>& pt) {
  // pt = (v, x^1..x^n, u); the coefficient tables never involve v.
  return std::vector<double>(pt.begin() + 1, pt.end());
}

// S(u) = E^T A E with E = exp(-uF); repeated commutators give the u-derivatives.
struct PlaneWaveCache {
  DMat S, S1, S2;  // S and its first two u-derivatives at the sample's u
};

PlaneWaveCache plane_wave_cache(const CoordinateMetric& g, double u) {
  Eigen::MatrixXd A = to_eigen(g.A), F = to_eigen(g.F);
  Eigen::MatrixXd E = (-u * F).exp();
  Eigen::MatrixXd C1 = F * A - A * F;
  Eigen::MatrixXd C2 = F * C1 - C1 * F;
  PlaneWaveCache c;
  c.S = from_eigen(E.transpose() * A * E);
  c.S1 = from_eigen(E.transpose() * C1 * E);
  c.S2 = from_eigen(E.transpose() * C2 * E);
  return c;
}

// Metric value and its first/second coordinate derivatives. Index convention:
// 0 = v, 1..n = x^i, n+1 = u. Derivative index -1 means "no derivative".
struct MetricJet {
  int d = 0;
  DMat g0;                          // g
  std::vector<DMat> g1;             // d_a g
  std::vector<std::vector<DMat>> g2;  // d_a d_b g
};

MetricJet metric_jet(const CoordinateMetric& g, const std::vector<double>& pt) {
  int n = g.n, d = n + 2, u = n + 1;
  if (static_cast<int>(pt.size()) != d) throw DimensionError("point has wrong dimension");
  MetricJet J;
  J.d = d;
  J.g0 = DMat(d, d);
  J.g1.assign(d, DMat(d, d));
  J.g2.assign(d, std::vector<DMat>(d, DMat(d, d)));
  J.g0(0, u) = J.g0(u, 0) = 1.0;

  std::vector<double> xu = xu_of(g, pt);
  auto set_sym = [&](DMat& m, int i, int j, double v) { m(i, j) = v; m(j, i) = v; };

  if (g.family == MetricFamily::plane_wave) {
    for (int i = 1; i <= n; ++i) J.g0(i, i) = 1.0;
    PlaneWaveCache c = plane_wave_cache(g, pt[u]);
    std::vector<double> x(xu.begin(), xu.begin() + n);
    auto quad = [&](const DMat& S) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s += x[i] * S(i, j) * x[j];
      return s;
    };
    auto lin = [&](const DMat& S, int i) {
      double s = 0.0;
      for (int j = 0; j < n; ++j) s += S(i, j) * x[j];
      return s;
    };
    J.g0(u, u) = quad(c.S);
    for (int i = 1; i <= n; ++i) set_sym(J.g1[i], u, u, 2.0 * lin(c.S, i - 1));
    set_sym(J.g1[u], u, u, quad(c.S1));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) J.g2[i][j](u, u) = 2.0 * c.S(i - 1, j - 1);
    for (int i = 1; i <= n; ++i) {
      double v = 2.0 * lin(c.S1, i - 1);
      J.g2[i][u](u, u) = v;
      J.g2[u][i](u, u) = v;
    }
    J.g2[u][u](u, u) = quad(c.S2);
    return J;
  }

  // Polynomial families; a = 0 (v) derivatives vanish identically.
  auto fill = [&](int row, int col, const Poly& p) {
    set_sym(J.g0, row, col, p.eval(xu));
    for (int a = 1; a < d; ++a) {
      Poly pa = p.d(a - 1);
      if (pa.is_zero()) continue;
      set_sym(J.g1[a], row, col, pa.eval(xu));
      for (int b = a; b < d; ++b) {
        Poly pab = pa.d(b - 1);
        if (pab.is_zero()) continue;
        double v = pab.eval(xu);
        set_sym(J.g2[a][b], row, col, v);
        if (b != a) set_sym(J.g2[b][a], row, col, v);
      }
    }
  };

  if (g.family == MetricFamily::pp_wave) {
    for (int i = 1; i <= n; ++i) J.g0(i, i) = 1.0;
    fill(u, u, g.H);
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) fill(i + 1, j + 1, g.h[i][j]);
    for (int i = 0; i < n; ++i) fill(i + 1, u, g.Ai[i]);
    fill(u, u, g.H);
  }
  return J;
}

DMat inverse_metric(const DMat& g0) {
  Eigen::MatrixXd e = to_eigen(g0);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(e);
  if (!lu.isInvertible()) throw SingularMetric("metric is singular at the sample point");
  return from_eigen(lu.inverse());
}

// Christoffels and their first derivatives from the metric jet.
struct ChristoffelJet {
  std::vector<DMat> G;               // G[k](i,j) = Gamma^k_ij
  std::vector<std::vector<DMat>> dG;  // dG[a][k](i,j) = d_a Gamma^k_ij
};

ChristoffelJet christoffel_jet(const MetricJet& J) {
  int d = J.d;
  DMat ginv = inverse_metric(J.g0);
  ChristoffelJet out;
  out.G.assign(d, DMat(d, d));
  out.dG.assign(d, std::vector<DMat>(d, DMat(d, d)));

  // Lowered symbols: L_l(i,j) = 1/2 (d_i g_jl + d_j g_il - d_l g_ij).
  auto lowered = [&](const std::vector<DMat>& g1, int l, int i, int j) {
    return 0.5 * (g1[i](j, l) + g1[j](i, l) - g1[l](i, j));
  };
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        double s = 0.0;
        for (int l = 0; l < d; ++l) s += ginv(k, l) * lowered(J.g1, l, i, j);
        out.G[k](i, j) = s;
      }

  // d_a ginv = -ginv (d_a g) ginv.
  std::vector<DMat> dginv(d);
  for (int a = 0; a < d; ++a) dginv[a] = -1.0 * (ginv * J.g1[a] * ginv);
  for (int a = 0; a < d; ++a)
    for (int k = 0; k < d; ++k)
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          double s = 0.0;
          for (int l = 0; l < d; ++l) {
            s += dginv[a](k, l) * lowered(J.g1, l, i, j);
            s += ginv(k, l) * 0.5 *
                 (J.g2[a][i](j, l) + J.g2[a][j](i, l) - J.g2[a][l](i, j));
          }
          out.dG[a][k](i, j) = s;
        }
  return out;
}

// Covariant torsion components and v-free polynomial derivatives at a point.
struct TorsionAt {
  int d = 0;
  std::vector<std::vector<std::vector<double>>> T;   // T[a][b][c]
  std::vector<std::vector<std::vector<std::vector<double>>>> dT;  // dT[e][a][b][c]
};

TorsionAt torsion_at(const TorsionDescriptor& t, int d, const std::vector<double>& xu) {
  TorsionAt out;
  out.d = d;
  out.T.assign(d, std::vector<std::vector<double>>(d, std::vector<double>(d, 0.0)));
  out.dT.assign(d, out.T);
  auto scatter = [&](int a, int b, int c, double v, std::vector<std::vector<std::vector<double>>>& dst) {
    dst[a][b][c] = v;
    dst[b][c][a] = v;
    dst[c][a][b] = v;
    dst[a][c][b] = -v;
    dst[b][a][c] = -v;
    dst[c][b][a] = -v;
  };
  for (auto& [idx, p] : t.comp) {
    scatter(idx[0], idx[1], idx[2], p.eval(xu), out.T);
    for (int e = 1; e < d; ++e) {
      Poly pe = p.d(e - 1);
      if (!pe.is_zero()) scatter(idx[0], idx[1], idx[2], pe.eval(xu), out.dT[e]);
    }
  }
  return out;
}

// (nabla^g_e T)_{abc} at the point.
double lc_nabla_T(const TorsionAt& t, const std::vector<DMat>& G, int e, int a, int b, int c) {
  double s = t.dT[e][a][b][c];
  int d = t.d;
  for (int m = 0; m < d; ++m) {
    s -= G[m](e, a) * t.T[m][b][c];
    s -= G[m](e, b) * t.T[a][m][c];
    s -= G[m](e, c) * t.T[a][b][m];
  }
  return s;
}

std::vector<DMat> torsion_endos(const TorsionAt& t, const DMat& ginv) {
  int d = t.d;
  std::vector<DMat> S(d, DMat(d, d));
  for (int a = 0; a < d; ++a)
    for (int b = 0; b < d; ++b)
      for (int c = 0; c < d; ++c) {
        double s = 0.0;
        for (int l = 0; l < d; ++l) s += ginv(c, l) * t.T[a][b][l];
        S[a](c, b) = s;  // T(e_a, e_b) = sum_c S[a](c,b) e_c
      }
  return S;
}

}  // namespace

// ---- TorsionDescriptor ----

TorsionDescriptor TorsionDescriptor::zero(int n) {
  TorsionDescriptor t;
  t.n = n;
  return t;
}

TorsionDescriptor TorsionDescriptor::du_wedge_omega(const DMat& omega) {
  int n = omega.rows;
  TorsionDescriptor t;
  t.n = n;
  int u = n + 1;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (omega(i, j) != 0.0) {
        Poly p(n + 1);
        p.add_term(std::vector<int>(n + 1, 0), 2.0 * omega(i, j));
        t.comp[{i + 1, j + 1, u}] = std::move(p);
      }
  return t;
}

void TorsionDescriptor::set(int a, int b, int c, Poly p) {
  std::array<int, 3> idx{a, b, c};
  double sign = 1.0;
  for (int i = 0; i < 2; ++i)  // 3-element bubble sort tracking parity
    for (int j = 0; j < 2 - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  if (idx[0] == idx[1] || idx[1] == idx[2]) throw DimensionError("repeated torsion index");
  if (sign < 0)
    for (auto& [e, cf] : p.coeffs) cf = -cf;
  if (p.is_zero())
    comp.erase(idx);
  else
    comp[idx] = std::move(p);
}

double TorsionDescriptor::component(int a, int b, int c, const std::vector<double>& pt) const {
  std::array<int, 3> idx{a, b, c};
  double sign = 1.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2 - i; ++j)
      if (idx[j] > idx[j + 1]) {
        std::swap(idx[j], idx[j + 1]);
        sign = -sign;
      }
  if (idx[0] == idx[1] || idx[1] == idx[2]) return 0.0;
  auto it = comp.find(idx);
  if (it == comp.end()) return 0.0;
  return sign * it->second.eval(std::vector<double>(pt.begin() + 1, pt.end()));
}

bool TorsionDescriptor::is_zero() const {
  for (auto& [i, p] : comp)
    if (!p.is_zero()) return false;
  return true;
}

// ---- metric / Christoffels / curvature ----

DMat CoordinateMetric::metric_at(const std::vector<double>& pt) const {
  return metric_jet(*this, pt).g0;
}

std::vector<DMat> christoffels(const CoordinateMetric& g, const std::vector<double>& pt) {
  return christoffel_jet(metric_jet(g, pt)).G;
}

DMat NumericCurvature::get(int i, int j) const {
  if (i == j) return DMat(dim, dim);
  bool flip = i > j;
  auto it = vals.find({std::min(i, j), std::max(i, j)});
  if (it == vals.end()) return DMat(dim, dim);
  return flip ? -1.0 * it->second : it->second;
}

double NumericCurvature::max_abs() const {
  double m = 0.0;
  for (auto& [ij, v] : vals) m = std::max(m, v.max_abs());
  return m;
}

NumericCurvature lc_curvature_at(const CoordinateMetric& g, const std::vector<double>& pt) {
  MetricJet J = metric_jet(g, pt);
  ChristoffelJet C = christoffel_jet(J);
  int d = J.d;
  NumericCurvature R;
  R.dim = d;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      DMat m(d, d);
      for (int l = 0; l < d; ++l)
        for (int k = 0; k < d; ++k) {
          double s = C.dG[i][l](j, k) - C.dG[j][l](i, k);
          for (int a = 0; a < d; ++a)
            s += C.G[l](i, a) * C.G[a](j, k) - C.G[l](j, a) * C.G[a](i, k);
          m(l, k) = s;
        }
      if (m.max_abs() > 0.0) R.vals[{i, j}] = std::move(m);
    }
  return R;
}

NumericCurvature curvature_at(const CoordinateMetric& g, const TorsionDescriptor& T,
                              const std::vector<double>& pt) {
  MetricJet J = metric_jet(g, pt);
  ChristoffelJet C = christoffel_jet(J);
  int d = J.d;
  DMat ginv = inverse_metric(J.g0);
  TorsionAt t = torsion_at(T, d, xu_of(g, pt));
  std::vector<DMat> S = torsion_endos(t, ginv);

  NumericCurvature R = lc_curvature_at(g, pt);
  R.dim = d;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      DMat m = R.get(i, j);
      // + 1/2 [(nabla^g_i T)(e_j) - (nabla^g_j T)(e_i)] with the last index raised
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c) {
          double cov = 0.0;
          for (int l = 0; l < d; ++l)
            cov += ginv(c, l) *
                   (lc_nabla_T(t, C.G, i, j, b, l) - lc_nabla_T(t, C.G, j, i, b, l));
          m(c, b) += 0.5 * cov;
        }
      // + 1/4 [T(e_i), T(e_j)]
      DMat br = S[i] * S[j] - S[j] * S[i];
      m = m + 0.25 * br;
      if (m.max_abs() > 0.0)
        R.vals[{i, j}] = std::move(m);
      else
        R.vals.erase({i, j});
    }
  return R;
}

double nablaT_residual(const CoordinateMetric& g, const TorsionDescriptor& T,
                       const std::vector<double>& pt) {
  MetricJet J = metric_jet(g, pt);
  ChristoffelJet C = christoffel_jet(J);
  int d = J.d;
  DMat ginv = inverse_metric(J.g0);
  TorsionAt t = torsion_at(T, d, xu_of(g, pt));
  std::vector<DMat> S = torsion_endos(t, ginv);

  double worst = 0.0;
  for (int e = 0; e < d; ++e)
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b)
        for (int c = b + 1; c < d; ++c) {
          double s = lc_nabla_T(t, C.G, e, a, b, c);
          for (int m = 0; m < d; ++m) {
            s -= 0.5 * S[e](m, a) * t.T[m][b][c];
            s -= 0.5 * S[e](m, b) * t.T[a][m][c];
            s -= 0.5 * S[e](m, c) * t.T[a][b][m];
          }
          worst = std::max(worst, std::fabs(s));
        }
  return worst;
}

// ---- infinitesimal holonomy ----

namespace {

std::vector<Eigen::VectorXd> curvature_rows(const CoordinateMetric& g, const TorsionDescriptor& T,
                                            const std::vector<double>& pt) {
  NumericCurvature R = curvature_at(g, T, pt);
  int d = R.dim;
  std::vector<Eigen::VectorXd> rows;
  for (auto& [ij, m] : R.vals) {
    Eigen::VectorXd r(d * d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) r(i * d + j) = m(i, j);
    rows.push_back(std::move(r));
  }
  return rows;
}

// Richardson-extrapolated central difference of the full curvature field along
// coordinate e: reads the field at pt +- h and pt +- h/2.
std::vector<Eigen::VectorXd> curvature_derivative_rows(const CoordinateMetric& g,
                                                       const TorsionDescriptor& T,
                                                       std::vector<double> pt, int e, double h,
                                                       int order) {
  auto field = [&](double offset) {
    std::vector<double> q = pt;
    q[e] += offset;
    NumericCurvature R = curvature_at(g, T, q);
    int d = R.dim;
    int pairs = d * (d - 1) / 2;
    Eigen::VectorXd v(pairs * d * d);
    int at = 0;
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        DMat m = R.get(i, j);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) v(at++) = m(a, b);
      }
    return v;
  };
  Eigen::VectorXd der;
  if (order == 1) {
    // Explicit return type: a deduced one would be an Eigen expression
    // referencing the destroyed field(...) temporaries.
    auto cd = [&](double s) -> Eigen::VectorXd { return (field(s) - field(-s)) / (2 * s); };
    der = (4.0 * cd(h / 2) - cd(h)) / 3.0;
  } else {
    auto cd2 = [&](double s) -> Eigen::VectorXd {
      return (field(s) - 2.0 * field(0) + field(-s)) / (s * s);
    };
    der = (4.0 * cd2(h / 2) - cd2(h)) / 3.0;
  }
  int d = static_cast<int>(pt.size());
  int pairs = d * (d - 1) / 2;
  std::vector<Eigen::VectorXd> rows;
  for (int p = 0; p < pairs; ++p) rows.push_back(der.segment(p * d * d, d * d));
  return rows;
}

int rank_with_cut(const Eigen::VectorXd& sv, double cut) {
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > cut) ++r;
  return r;
}

}  // namespace

NumericHolonomy infinitesimal_holonomy(const CoordinateMetric& g, const TorsionDescriptor& T,
                                       const std::vector<std::vector<double>>& samples,
                                       const NumericTolerance& tol) {
  if (samples.empty()) throw DimensionError("at least one sample point is required");
  int d = g.dim();
  std::vector<Eigen::VectorXd> raw;
  auto gather = [&](std::vector<Eigen::VectorXd> rs) {
    for (auto& r : rs) raw.push_back(std::move(r));
  };
  for (auto& pt : samples) gather(curvature_rows(g, T, pt));
  for (int e = 0; e < d; ++e) {
    gather(curvature_derivative_rows(g, T, samples[0], e, tol.fd_step * 100, 1));
    gather(curvature_derivative_rows(g, T, samples[0], e, tol.fd_step * 100, 2));
  }
  // Normalize rows, but only those clearing a scale-relative floor: rows at
  // the finite-difference noise level must not be inflated into full-weight
  // span directions.
  double scale = 0.0;
  for (auto& r : raw) scale = std::max(scale, r.norm());
  std::vector<Eigen::VectorXd> rows;
  for (auto& r : raw) {
    double nrm = r.norm();
    if (nrm > std::max(tol.abs_tol, tol.svd_cut * scale)) rows.push_back(r / nrm);
  }

  NumericHolonomy out;
  out.dim = d;
  auto decompose = [&](const std::vector<Eigen::VectorXd>& rs) {
    Eigen::MatrixXd M(static_cast<int>(rs.size()), d * d);
    for (int i = 0; i < static_cast<int>(rs.size()); ++i) M.row(i) = rs[i];
    return Eigen::JacobiSVD<Eigen::MatrixXd>(M, Eigen::ComputeThinV);
  };

  // Iterate bracket closure on the numeric basis until the rank stabilizes.
  for (int round = 0; round < 4; ++round) {
    if (rows.empty()) break;
    auto svd = decompose(rows);
    int r = rank_with_cut(svd.singularValues(), tol.svd_cut);
    std::vector<Eigen::MatrixXd> basis;
    for (int i = 0; i < r; ++i) {
      Eigen::VectorXd col = svd.matrixV().col(i);
      basis.push_back(Eigen::Map<Eigen::MatrixXd>(col.data(), d, d).transpose());
    }
    size_t before = rows.size();
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        Eigen::MatrixXd br = basis[i] * basis[j] - basis[j] * basis[i];
        Eigen::VectorXd row(d * d);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) row(a * d + b) = br(a, b);
        double nrm = row.norm();
        if (nrm > tol.svd_cut) rows.push_back(row / nrm);
      }
    if (rows.size() == before || round == 3) {
      auto svd2 = decompose(rows);
      Eigen::VectorXd sv = svd2.singularValues();
      out.rank = rank_with_cut(sv, tol.svd_cut);
      out.rank_unstable = rank_with_cut(sv, tol.svd_cut / 10) != out.rank ||
                          rank_with_cut(sv, tol.svd_cut * 10) != out.rank;
      for (int i = 0; i < sv.size(); ++i) out.singular_values.push_back(sv(i));
      for (int i = 0; i < out.rank; ++i) {
        Eigen::VectorXd col = svd2.matrixV().col(i);
        DMat m(d, d);
        for (int a = 0; a < d; ++a)
          for (int b = 0; b < d; ++b) m(a, b) = col(a * d + b);
        out.basis.push_back(std::move(m));
      }
      break;
    }
  }
  return out;
}

std::vector<std::vector<double>> sample_points(int dim, int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
  for (auto& p : pts)
    for (double& x : p) x = dist(rng);
  return pts;
}

}  // namespace nrh
