#include "special.hpp"

#include <cmath>
#include <stdexcept>

namespace heckelab {

namespace {

const double kLanczosG = 7.0;
const double kLanczosC[9] = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,       -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7};

const double kBernoulli[12] = {
    1.0 / 6,           -1.0 / 30,        1.0 / 42,         -1.0 / 30,
    5.0 / 66,          -691.0 / 2730,    7.0 / 6,          -3617.0 / 510,
    43867.0 / 798,     -174611.0 / 330,  854513.0 / 138,   -236364091.0 / 2730};

cd lanczos_pos(cd s) {
  // Gamma(s) for Re s > 0.5 (s shifted by caller otherwise)
  s -= 1.0;
  cd a = kLanczosC[0];
  cd t = s + kLanczosG + 0.5;
  for (int i = 1; i < 9; i++) a += kLanczosC[i] / (s + (double)i);
  return std::sqrt(2 * M_PI) * std::pow(t, s + 0.5) * std::exp(-t) * a;
}

}  // namespace

cd cgamma(cd s) {
  if (s.real() < 0.5) {
    // reflection
    return M_PI / (std::sin(M_PI * s) * lanczos_pos(1.0 - s));
  }
  return lanczos_pos(s);
}

cd clgamma(cd s) {
  if (s.real() <= 0) throw std::runtime_error("clgamma: Re s <= 0");
  cd z = s - 1.0;
  cd a = kLanczosC[0];
  cd t = z + kLanczosG + 0.5;
  for (int i = 1; i < 9; i++) a += kLanczosC[i] / (z + (double)i);
  return 0.5 * std::log(2 * M_PI) + (z + 0.5) * std::log(t) - t + std::log(a);
}

cd cdigamma(cd s) {
  cd acc = 0;
  while (s.real() < 8.0) {
    acc -= 1.0 / s;
    s += 1.0;
  }
  cd inv = 1.0 / s, inv2 = inv * inv;
  cd r = std::log(s) - 0.5 * inv;
  cd p = inv2;
  for (int n = 1; n <= 7; n++) {
    r -= kBernoulli[n - 1] / (2.0 * n) * p;
    p *= inv2;
  }
  return acc + r;
}

double digamma(double x) { return cdigamma(cd(x, 0)).real(); }

cd gamma_k(const NumberField& k, cd s) {
  cd r = 1;
  for (const auto& pl : k.places) r *= cgamma((double)pl.nsig() * s / 2.0);
  return r;
}

cd digamma_k(const NumberField& k, cd s) {
  cd r = 0;
  for (const auto& pl : k.places) r += (pl.nsig() / 2.0) * cdigamma((double)pl.nsig() * s / 2.0);
  return r;
}

cd gamma_rel(const Extension& ext, cd s) {
  cd num = 1, den = 1;
  for (const auto& pl : ext.E->places) num *= (pl.nsig() / 2.0) * cgamma((double)pl.nsig() * s / 2.0);
  for (const auto& pl : ext.F->places)
    den *= (ext.n * pl.nsig() / 2.0) * cgamma((double)(ext.n * pl.nsig()) * s / 2.0);
  return num / den;
}

void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < n; i++) {
    // Newton from the Chebyshev-like initial guess
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    for (int it = 0; it < 100; it++) {
      double p0 = 1, p1 = x;
      for (int j = 2; j <= n; j++) {
        double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double dp = n * (x * p1 - p0) / (x * x - 1);
      double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    double p0 = 1, p1 = x;
    for (int j = 2; j <= n; j++) {
      double p2 = ((2 * j - 1) * x * p1 - (j - 1) * p0) / j;
      p0 = p1;
      p1 = p2;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1);
    nodes[i] = x;
    weights[i] = 2.0 / ((1 - x * x) * dp * dp);
  }
}

double gamma_rel_quadrature(const Extension& ext, double s, int nodes) {
  // product of independent fiber integrals over the F-places
  std::vector<double> gl_x, gl_w;
  gauss_legendre(nodes, gl_x, gl_w);
  double total = 1.0;
  for (int v = 0; v < ext.F->num_places(); v++) {
    if (!ext.F->places[v].is_real)
      throw std::runtime_error("gamma_rel_quadrature: complex base place unsupported");
    std::vector<int> taus;
    for (int t = 0; t < ext.E->num_places(); t++)
      if (ext.place_below[t] == v) taus.push_back(t);
    double expo = ext.n * ext.F->places[v].nsig() * s / 2.0;
    if (taus.size() == 1) continue;  // point fiber, integrand = 1
    if (taus.size() != 2)
      throw std::runtime_error("gamma_rel_quadrature: fiber dimension > 1 unsupported");
    double n1 = ext.E->places[taus[0]].nsig();
    double n2 = ext.E->places[taus[1]].nsig();
    // t1 = e^u, t2 = e^{-n1 u / n2}, measure n1 du
    double rate = 2 * expo * std::min(1.0, n1 / n2);
    double L = 80.0 / rate;
    double acc = 0;
    for (int i = 0; i < nodes; i++) {
      double u = L * gl_x[i];
      double t1 = std::exp(u), t2 = std::exp(-n1 * u / n2);
      acc += gl_w[i] * L * n1 * std::pow(t1 * t1 + t2 * t2, -expo);
    }
    total *= acc;
  }
  return total;
}

cd bessel_K(cd s, double x) {
  if (x <= 0) throw std::runtime_error("bessel_K: x <= 0");
  auto integrand = [&](double t) -> cd {
    cd e = cd(-x * std::cosh(t), 0);
    return 0.5 * (std::exp(e + s * t) + std::exp(e - s * t));
  };
  auto sum_with_step = [&](double h) -> cd {
    cd acc = 0.5 * integrand(0.0);
    double maxmag = std::abs(acc);
    for (long j = 1; j < 2000000; j++) {
      cd f = integrand(j * h);
      acc += f;
      double m = std::abs(f);
      if (m > maxmag) maxmag = m;
      if (j * h > 1.0 && m < 1e-18 * maxmag) break;
    }
    return acc * h;
  };
  double h = 0.5;
  cd prev = sum_with_step(h);
  for (int it = 0; it < 12; it++) {
    h /= 2;
    cd cur = sum_with_step(h);
    if (std::abs(cur - prev) <= 1e-14 * std::abs(cur)) return cur;
    prev = cur;
  }
  return prev;
}

cd bessel_K_field(const NumberField& k, cd s, const std::vector<double>& x) {
  cd r = 1;
  for (int p = 0; p < k.num_places(); p++)
    r *= bessel_K((double)k.places[p].nsig() * s / 2.0, x[p]);
  return r;
}

std::pair<cd, cd> dtimes_identity(const std::vector<int>& n_list, cd s, int nodes) {
  int r = (int)n_list.size();
  if (r < 2) throw std::runtime_error("dtimes_identity: need r >= 2");
  int n = 0;
  for (int ni : n_list) n += ni;
  cd rhs = 1;
  for (int ni : n_list) rhs *= (double)ni * cgamma((double)ni * s);
  // T = {prod t_i^{n_i} = 1}; coordinates u_1..u_{r-1}, t_r eliminated;
  // measure prod_{i<r} n_i du_i
  std::vector<double> gl_x, gl_w;
  gauss_legendre(nodes, gl_x, gl_w);
  double rate = (double)n * s.real();
  for (int i = 0; i < r - 1; i++)
    rate = std::min(rate, (double)n * s.real() * n_list[i] / (double)n_list[r - 1]);
  double L = 80.0 / rate;
  double dens = 1;
  for (int i = 0; i < r - 1; i++) dens *= n_list[i];
  cd integral = 0;
  std::vector<int> idx(r - 1, 0);
  while (true) {
    double wgt = dens;
    std::vector<double> u(r - 1);
    for (int i = 0; i < r - 1; i++) {
      u[i] = L * gl_x[idx[i]];
      wgt *= gl_w[idx[i]] * L;
    }
    double last = 0;
    double tsum = 0;
    for (int i = 0; i < r - 1; i++) {
      tsum += std::exp(u[i]);
      last -= n_list[i] * u[i];
    }
    tsum += std::exp(last / n_list[r - 1]);
    integral += wgt * std::pow(cd(tsum, 0), -(double)n * s);
    int c = 0;
    while (c < r - 1 && ++idx[c] == nodes) idx[c++] = 0;
    if (c == r - 1) break;
  }
  cd lhs = (double)n * cgamma((double)n * s) * integral;
  return {lhs, rhs};
}

cd riemann_zeta(cd s) {
  if (std::abs(s - cd(1, 0)) < 1e-14) throw std::runtime_error("riemann_zeta: pole at 1");
  const int N = 25;
  cd acc = 0;
  for (int k = 1; k < N; k++) acc += std::pow((double)k, -s);
  acc += std::pow((double)N, 1.0 - s) / (s - 1.0);
  acc += 0.5 * std::pow((double)N, -s);
  double fact = 2.0;  // (2j)! running
  cd rising = s;      // s(s+1)...(s+2j-2)
  for (int j = 1; j <= 12; j++) {
    acc += kBernoulli[j - 1] / fact * rising * std::pow((double)N, -s - (2.0 * j - 1.0));
    rising *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
    fact *= (2.0 * j + 1) * (2.0 * j + 2);
  }
  return acc;
}

}  // namespace heckelab
