#include "numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"

namespace dipole_noise::numerics {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Gauss-Kronrod 10/21 abscissae and weights (QUADPACK dqk21).
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool roundoff;  // error is the rounding floor; bisection cannot improve it
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod21(const std::function<double(double)>& f, double lo,
                        double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  const double fc = f(center);
  double resg = 0.0;
  double resk = kWgk[10] * fc;
  double resabs = std::abs(resk);
  std::array<double, 10> fv1{};
  std::array<double, 10> fv2{};
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    fv1[j] = f1;
    fv2[j] = f2;
    resk += kWgk[j] * (f1 + f2);
    resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) resg += kWg[j / 2] * (f1 + f2);
  }
  if (!std::isfinite(resk)) {
    throw ConvergenceError("integrand is not finite on [" + std::to_string(lo) +
                               ", " + std::to_string(hi) + "]",
                           std::numeric_limits<double>::infinity());
  }
  const double reskh = 0.5 * resk;
  double resasc = kWgk[10] * std::abs(fc - reskh);
  for (int j = 0; j < 10; ++j) {
    resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
  }
  resasc *= std::abs(half);
  resabs *= std::abs(half);
  double err = std::abs((resk - resg) * half);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  bool roundoff = false;
  if (resabs > std::numeric_limits<double>::min() / (50.0 * kEps)) {
    const double floor = 50.0 * kEps * resabs;
    roundoff = floor >= err;
    err = std::max(floor, err);
  }
  return {lo, hi, resk * half, err, roundoff};
}

// Sign-aware 1/Gamma(x); exactly zero at the poles.
double reciprocal_gamma(double x) {
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  return 1.0 / std::tgamma(x);
}

bool is_gamma_pole(double x) { return x <= 0.0 && x == std::floor(x); }

// Scaled K0 and K1 (multiplied by e^z).
void bessel_k01_scaled(double z, double& k0s, double& k1s) {
  constexpr double kEuler = std::numbers::egamma;
  if (z <= 2.0) {
    const double q = 0.25 * z * z;
    const double log_half = std::log(0.5 * z);
    double i0 = 0.0;
    double i1 = 0.0;
    double s0 = 0.0;
    double s1 = 0.0;
    double term0 = 1.0;  // q^k / (k!)^2
    double term1 = 1.0;  // q^k / (k! (k+1)!)
    double harmonic = 0.0;
    for (int k = 0; k < 60; ++k) {
      if (k > 0) {
        term0 *= q / (double(k) * k);
        term1 *= q / (double(k) * (k + 1));
        harmonic += 1.0 / k;
      }
      const double psi_k1 = -kEuler + harmonic;
      const double psi_k2 = psi_k1 + 1.0 / (k + 1);
      i0 += term0;
      i1 += term1;
      s0 += psi_k1 * term0;
      s1 += (psi_k1 + psi_k2) * term1;
      if (term0 < 1e-18 * std::abs(i0) && term1 < 1e-18 * std::abs(i1)) break;
    }
    i1 *= 0.5 * z;
    const double k0 = -log_half * i0 + s0;
    const double k1 = 1.0 / z + log_half * i1 - 0.25 * z * s1;
    const double scale = std::exp(z);
    k0s = k0 * scale;
    k1s = k1 * scale;
    return;
  }
  // Steed's continued fraction (CF2) for order zero.
  constexpr int kMaxIter = 100000;
  double b = 2.0 * (1.0 + z);
  double d = 1.0 / b;
  double h = d;
  double delh = d;
  double q1 = 0.0;
  double q2 = 1.0;
  const double a1 = 0.25;
  double q = a1;
  double c = a1;
  double a = -a1;
  double s = 1.0 + q * delh;
  for (int i = 2; i <= kMaxIter; ++i) {
    a -= 2.0 * (i - 1);
    c = -a * c / i;
    const double qnew = (q1 - b * q2) / a;
    q1 = q2;
    q2 = qnew;
    q += c * qnew;
    b += 2.0;
    d = 1.0 / (b + a * d);
    delh = (b * d - 1.0) * delh;
    h += delh;
    const double dels = q * delh;
    s += dels;
    if (std::abs(dels / s) < kEps) break;
  }
  h = a1 * h;
  k0s = std::sqrt(std::numbers::pi / (2.0 * z)) / s;
  k1s = k0s * (z + 0.5 - h) / z;
}

}  // namespace

void QuadSpec::validate() const {
  if (!(rel_tol > 0.0)) throw DomainError("QuadSpec: rel_tol must be > 0");
  if (!(abs_tol >= 0.0)) throw DomainError("QuadSpec: abs_tol must be >= 0");
  if (max_subdivisions < 1) {
    throw DomainError("QuadSpec: max_subdivisions must be >= 1");
  }
}

QuadResult integrate_detailed(const std::function<double(double)>& f, double a,
                              double b, const QuadSpec& spec) {
  spec.validate();
  if (!std::isfinite(a)) {
    throw DomainError("integrate: lower limit must be finite");
  }
  if (std::isnan(b)) throw DomainError("integrate: upper limit is NaN");
  if (b < a) {
    QuadResult r = integrate_detailed(f, b, a, spec);
    r.value = -r.value;
    return r;
  }
  if (a == b) return {};

  int evaluations = 0;
  std::function<double(double)> g;
  double lo = a;
  double hi = b;
  if (std::isinf(b)) {
    g = [&](double t) {
      ++evaluations;
      const double one_minus = 1.0 - t;
      const double x = a + t / one_minus;
      const double fx = f(x);
      return fx == 0.0 ? 0.0 : fx / (one_minus * one_minus);
    };
    lo = 0.0;
    hi = 1.0;
  } else {
    g = [&](double x) {
      ++evaluations;
      return f(x);
    };
  }

  std::vector<Segment> active;  // max-heap on error
  std::vector<Segment> frozen;  // too narrow to bisect further
  active.push_back(gauss_kronrod21(g, lo, hi));
  double total = active.front().value;
  double total_err = active.front().error;
  int intervals = 1;

  auto tolerance = [&] {
    return std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
  };
  // The running sums drift when large early errors cancel; recompute them
  // exactly before trusting a converged verdict.
  auto resum = [&] {
    total = 0.0;
    total_err = 0.0;
    for (const auto& s : active) {
      total += s.value;
      total_err += s.error;
    }
    for (const auto& s : frozen) {
      total += s.value;
      total_err += s.error;
    }
  };

  for (;;) {
    if (total_err <= tolerance()) {
      resum();
      if (total_err <= tolerance()) break;
    }
    if (active.empty() || intervals >= spec.max_subdivisions) {
      throw ConvergenceError(
          "integrate: tolerance not reached after " +
              std::to_string(intervals) + " subintervals",
          total_err);
    }
    std::pop_heap(active.begin(), active.end());
    const Segment worst = active.back();
    if (worst.roundoff) {
      // Every remaining estimate is at the rounding floor: the result is as
      // good as double precision allows.
      resum();
      break;
    }
    active.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi ||
        (worst.hi - worst.lo) < 100.0 * kEps * std::max(1.0, std::abs(mid))) {
      frozen.push_back(worst);
      continue;
    }
    const Segment left = gauss_kronrod21(g, worst.lo, mid);
    const Segment right = gauss_kronrod21(g, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    active.push_back(left);
    std::push_heap(active.begin(), active.end());
    active.push_back(right);
    std::push_heap(active.begin(), active.end());
    ++intervals;
  }

  // Sum in a fixed order so the result does not depend on heap layout.
  std::vector<Segment> all = active;
  all.insert(all.end(), frozen.begin(), frozen.end());
  std::sort(all.begin(), all.end(),
            [](const Segment& x, const Segment& y) { return x.lo < y.lo; });
  double sum = 0.0;
  double err = 0.0;
  for (const auto& s : all) {
    sum += s.value;
    err += s.error;
  }
  return {sum, err, intervals, evaluations};
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadSpec& spec) {
  return integrate_detailed(f, a, b, spec).value;
}

double factorial(int n) {
  if (n < 0) throw DomainError("factorial: negative argument");
  if (n > 170) return std::numeric_limits<double>::infinity();
  double r = 1.0;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

double double_factorial_odd(int k) {
  double r = 1.0;
  for (int i = 1; i <= 2 * k - 1; i += 2) r *= i;
  return r;
}

double laguerre(int k, double alpha, double x) {
  if (k < 0) throw DomainError("laguerre: negative degree");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 1.0 + alpha - x;
  for (int j = 1; j < k; ++j) {
    const double next =
        ((2.0 * j + 1.0 + alpha - x) * cur - (j + alpha) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

double assoc_laguerre_old(int q, int p, double x) {
  if (q < 0 || p < 0 || p > q) {
    throw DomainError("assoc_laguerre_old: requires 0 <= p <= q, got q=" +
                      std::to_string(q) + " p=" + std::to_string(p));
  }
  const double sign = (p % 2 == 0) ? 1.0 : -1.0;
  return sign * factorial(q) * laguerre(q - p, p, x);
}

double assoc_legendre(int l, int m, double x) {
  if (l < 0 || m < 0 || m > l) {
    throw DomainError("assoc_legendre: requires 0 <= m <= l");
  }
  if (!(std::abs(x) <= 1.0)) {
    throw DomainError("assoc_legendre: |x| must be <= 1");
  }
  double pmm = 1.0;
  if (m > 0) {
    const double s = std::sqrt((1.0 - x) * (1.0 + x));
    double odd = 1.0;
    for (int i = 1; i <= m; ++i) {
      pmm *= odd * s;
      odd += 2.0;
    }
  }
  if (l == m) return pmm;
  double pmm1 = x * (2.0 * m + 1.0) * pmm;
  if (l == m + 1) return pmm1;
  double pll = 0.0;
  for (int ll = m + 2; ll <= l; ++ll) {
    pll = ((2.0 * ll - 1.0) * x * pmm1 - (ll + m - 1.0) * pmm) / (ll - m);
    pmm = pmm1;
    pmm1 = pll;
  }
  return pll;
}

double legendre(int l, double x) { return assoc_legendre(l, 0, x); }

double gegenbauer(int k, double alpha, double x) {
  if (k < 0) throw DomainError("gegenbauer: negative degree");
  if (!(alpha > 0.0)) throw DomainError("gegenbauer: alpha must be > 0");
  if (k == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * alpha * x;
  for (int j = 2; j <= k; ++j) {
    const double next =
        (2.0 * x * (j + alpha - 1.0) * cur - (j + 2.0 * alpha - 2.0) * prev) /
        j;
    prev = cur;
    cur = next;
  }
  return cur;
}

double bessel_k_scaled(int nu, double z) {
  if (nu < 0) throw DomainError("bessel_k: order must be >= 0");
  if (!(z > 0.0)) {
    throw DomainError("bessel_k: argument must be > 0 (K diverges at 0)");
  }
  double k0 = 0.0;
  double k1 = 0.0;
  bessel_k01_scaled(z, k0, k1);
  if (nu == 0) return k0;
  for (int n = 1; n < nu; ++n) {
    const double next = k0 + (2.0 * n / z) * k1;
    k0 = k1;
    k1 = next;
  }
  return k1;
}

double bessel_k(int nu, double z) {
  const double scaled = bessel_k_scaled(nu, z);
  if (z > 745.0) return 0.0;
  return scaled * std::exp(-z);
}

double legendre_p_at_zero(double nu, double mu) {
  const double num_arg = 0.5 * (nu + mu + 1.0);
  if (is_gamma_pole(num_arg)) {
    throw PoleError("legendre_p_at_zero: Gamma pole at argument " +
                    std::to_string(num_arg));
  }
  const double c = std::cos(0.5 * std::numbers::pi * (nu + mu));
  // cos vanishes exactly when nu + mu is an odd integer.
  const double nm = nu + mu;
  const bool odd_integer = nm == std::floor(nm) && std::fmod(std::abs(nm), 2.0) == 1.0;
  if (odd_integer) return 0.0;
  return std::pow(2.0, mu) / std::sqrt(std::numbers::pi) * c *
         std::tgamma(num_arg) * reciprocal_gamma(0.5 * (nu - mu) + 1.0);
}

double legendre_p_deriv_at_zero(double nu, double mu) {
  const double num_arg = 0.5 * (nu + mu) + 1.0;
  if (is_gamma_pole(num_arg)) {
    throw PoleError("legendre_p_deriv_at_zero: Gamma pole at argument " +
                    std::to_string(num_arg));
  }
  const double nm = nu + mu;
  const bool even_integer = nm == std::floor(nm) && std::fmod(std::abs(nm), 2.0) == 0.0;
  if (even_integer) return 0.0;
  const double s = std::sin(0.5 * std::numbers::pi * nm);
  return std::pow(2.0, mu + 1.0) / std::sqrt(std::numbers::pi) * s *
         std::tgamma(num_arg) * reciprocal_gamma(0.5 * (nu - mu + 1.0));
}

double ferrers_p(double nu, double mu, double x) {
  if (!(x > -1.0 && x < 1.0)) throw DomainError("ferrers_p: requires |x| < 1");
  const double c = 1.0 - mu;
  if (is_gamma_pole(c)) throw DomainError("ferrers_p: 1 - mu is a Gamma pole");
  // 2F1(-nu, nu + 1; 1 - mu; (1 - x)/2)
  const double w = 0.5 * (1.0 - x);
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k < 2000; ++k) {
    term *= (k - nu) * (k + nu + 1.0) / ((k + c) * (k + 1.0)) * w;
    sum += term;
    if (std::abs(term) <= 1e-17 * std::abs(sum)) break;
  }
  return reciprocal_gamma(c) * std::pow((1.0 + x) / (1.0 - x), 0.5 * mu) * sum;
}

}  // namespace dipole_noise::numerics
