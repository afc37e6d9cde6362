#pragma once

// Gauss sums over F_q, the finite hypergeometric sum H_q(t) and the point
// count on X_t : prod_i (x_i + 2 + 1/x_i) = 4^d / t.
//
// Gauss sums are floating point at a selectable working precision
// (53 bits: double, 64 bits: long double, 113 bits: __float128). H_q(t) is
// recovered by rounding and every rounding is checked; the exact point
// count gives an independent integer route to the same H_q(t).

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <fftw3.h>

#include "hypercong/errors.hpp"
#include "hypercong/finite_field.hpp"
#include "hypercong/numtheory.hpp"

namespace hypercong {

namespace detail {

template <class Real>
struct Cx {
  Real re{}, im{};

  friend Cx operator+(Cx a, Cx b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(Cx a, Cx b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(Cx a, Cx b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  Cx& operator+=(Cx b) { return *this = *this + b; }
  Real norm() const { return re * re + im * im; }
  Cx conj() const { return {re, -im}; }
  Cx inverse() const {
    const Real n = norm();
    return {re / n, -im / n};
  }
  Cx pow(unsigned e) const {
    Cx r{1, 0}, b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }
};

template <class Real>
struct RealTraits;

template <>
struct RealTraits<double> {
  static constexpr unsigned bits = 53;
  static double cos(double x) { return std::cos(x); }
  static double sin(double x) { return std::sin(x); }
  static double round(double x) { return std::round(x); }
  static double pi() { return M_PI; }
  static double to_double(double x) { return x; }
  static long double to_long_double(double x) { return x; }

  using Plan = fftw_plan;
  static void dft(std::vector<Cx<double>>& data) {
    static_assert(sizeof(Cx<double>) == sizeof(fftw_complex));
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    Plan plan;
    {
      std::lock_guard lock(planner_mutex());
      plan = fftw_plan_dft_1d(static_cast<int>(data.size()), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
  }
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }
};

template <>
struct RealTraits<long double> {
  static constexpr unsigned bits = 64;
  static long double cos(long double x) { return cosl(x); }
  static long double sin(long double x) { return sinl(x); }
  static long double round(long double x) { return roundl(x); }
  static long double pi() { return acosl(-1.0L); }
  static double to_double(long double x) { return static_cast<double>(x); }
  static long double to_long_double(long double x) { return x; }

  static void dft(std::vector<Cx<long double>>& data) {
    static_assert(sizeof(Cx<long double>) == sizeof(fftwl_complex));
    auto* buf = reinterpret_cast<fftwl_complex*>(data.data());
    fftwl_plan plan;
    {
      std::lock_guard lock(RealTraits<double>::planner_mutex());
      plan = fftwl_plan_dft_1d(static_cast<int>(data.size()), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftwl_execute(plan);
    std::lock_guard lock(RealTraits<double>::planner_mutex());
    fftwl_destroy_plan(plan);
  }
};

template <>
struct RealTraits<__float128> {
  static constexpr unsigned bits = 113;
  static __float128 cos(__float128 x) { return cosq(x); }
  static __float128 sin(__float128 x) { return sinq(x); }
  static __float128 round(__float128 x) { return roundq(x); }
  static __float128 pi() { return M_PIq; }
  static double to_double(__float128 x) { return static_cast<double>(x); }
  static long double to_long_double(__float128 x) { return static_cast<long double>(x); }

  static void dft(std::vector<Cx<__float128>>& data) {
    static_assert(sizeof(Cx<__float128>) == sizeof(fftwq_complex));
    auto* buf = reinterpret_cast<fftwq_complex*>(data.data());
    fftwq_plan plan;
    {
      std::lock_guard lock(RealTraits<double>::planner_mutex());
      plan = fftwq_plan_dft_1d(static_cast<int>(data.size()), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    }
    fftwq_execute(plan);
    std::lock_guard lock(RealTraits<double>::planner_mutex());
    fftwq_destroy_plan(plan);
  }
};

/// Gauss sums g(omega^m), m = 0..q-2, at one floating type.
template <class Real>
class BasicGaussTable {
 public:
  using C = Cx<Real>;
  using Traits = RealTraits<Real>;

  BasicGaussTable(std::shared_ptr<const FieldTable> field, std::uint64_t zeta_power)
      : field_(std::move(field)) {
    const FieldTable& f = *field_;
    const std::uint64_t n = f.order();
    const std::uint64_t p = f.p();
    if (zeta_power % p == 0) throw std::invalid_argument("zeta_p power must be prime to p");

    std::vector<C> zeta(p);
    for (std::uint64_t j = 0; j < p; ++j) {
      const Real angle = 2 * Traits::pi() * Real(static_cast<double>(j * (zeta_power % p) % p)) /
                         Real(static_cast<double>(p));
      zeta[j] = {Traits::cos(angle), Traits::sin(angle)};
    }
    roots_.resize(n);
    for (std::uint64_t j = 0; j < n; ++j) {
      const Real angle =
          2 * Traits::pi() * Real(static_cast<double>(j)) / Real(static_cast<double>(n));
      roots_[j] = {Traits::cos(angle), Traits::sin(angle)};
    }
    // g(omega^m) = sum_j exp(2 pi i j m / n) zeta_p^tr(g^j)
    values_.resize(n);
    for (std::uint64_t j = 0; j < n; ++j) values_[j] = zeta[f.trace(f.power(j))];
    Traits::dft(values_);
    values_[0] = {Real(-1), Real(0)};

    const Real qq = Real(static_cast<double>(f.q()));
    for (std::uint64_t m = 1; m < n; ++m) {
      const double err = Traits::to_double((values_[m].norm() - qq) / qq);
      max_norm_error_ = std::max(max_norm_error_, std::fabs(err));
    }
    if (max_norm_error_ > std::ldexp(1.0, -static_cast<int>(Traits::bits) / 2))
      throw PrecisionExceeded("|g|^2 = q check failed: relative error " +
                              std::to_string(max_norm_error_));
  }

  const FieldTable& field() const { return *field_; }
  const std::shared_ptr<const FieldTable>& field_ptr() const { return field_; }
  const C& operator[](std::uint64_t m) const { return values_[m % values_.size()]; }
  /// exp(2 pi i j / (q-1))
  const C& root(std::uint64_t j) const { return roots_[j % roots_.size()]; }
  double max_norm_error() const { return max_norm_error_; }

 private:
  std::shared_ptr<const FieldTable> field_;
  std::vector<C> values_;
  std::vector<C> roots_;
  double max_norm_error_ = 0;
};

}  // namespace detail

/// Gauss sums g_q(omega^m) for every m at a chosen working precision.
class GaussTable {
 public:
  using Storage = std::variant<detail::BasicGaussTable<double>, detail::BasicGaussTable<long double>,
                               detail::BasicGaussTable<__float128>>;

  explicit GaussTable(Storage s) : storage_(std::move(s)) {}

  unsigned precision_bits() const {
    return std::visit([](const auto& t) { return std::decay_t<decltype(t)>::Traits::bits; }, storage_);
  }
  const FieldTable& field() const {
    return std::visit([](const auto& t) -> const FieldTable& { return t.field(); }, storage_);
  }
  std::uint64_t q() const { return field().q(); }

  std::complex<long double> value(std::uint64_t m) const {
    return std::visit(
        [m](const auto& t) {
          using T = typename std::decay_t<decltype(t)>::Traits;
          return std::complex<long double>(T::to_long_double(t[m].re), T::to_long_double(t[m].im));
        },
        storage_);
  }

  double max_norm_error() const {
    return std::visit([](const auto& t) { return t.max_norm_error(); }, storage_);
  }

  const Storage& storage() const { return storage_; }

 private:
  Storage storage_;
};

/// Smallest supported precision tier >= bits: 53, 64 or 113.
inline unsigned precision_tier(unsigned bits) {
  if (bits <= 53) return 53;
  if (bits <= 64) return 64;
  if (bits <= 113) return 113;
  throw PrecisionExceeded("no floating type with " + std::to_string(bits) + " mantissa bits");
}

inline std::optional<unsigned> next_precision_tier(unsigned bits) {
  if (bits < 64) return 64;
  if (bits < 113) return 113;
  return std::nullopt;
}

/// Precision used when the caller does not ask for one: double up to
/// q = 2000, quad above.
inline unsigned default_precision_bits(std::uint64_t q) { return q <= 2000 ? 53 : 113; }

inline GaussTable gauss_table(std::shared_ptr<const FieldTable> field, unsigned precision_bits = 53,
                              std::uint64_t zeta_power = 1) {
  switch (precision_tier(precision_bits)) {
    case 53:
      return GaussTable(detail::BasicGaussTable<double>(std::move(field), zeta_power));
    case 64:
      return GaussTable(detail::BasicGaussTable<long double>(std::move(field), zeta_power));
    default:
      return GaussTable(detail::BasicGaussTable<__float128>(std::move(field), zeta_power));
  }
}

enum class HMethod { gauss, count };

inline const char* to_string(HMethod m) { return m == HMethod::gauss ? "gauss" : "count"; }

struct HValue {
  std::uint64_t p;
  unsigned k;
  std::uint64_t q;
  unsigned d;
  std::uint32_t t;  // field element index
  std::int64_t value;
  HMethod method;
  double residual = 0;  // distance to the nearest integer, gauss method only
  unsigned precision_bits = 0;
};

namespace detail {

template <class Real>
HValue h_value_gauss_impl(const BasicGaussTable<Real>& g, unsigned d, std::uint32_t t) {
  using Traits = RealTraits<Real>;
  using C = Cx<Real>;
  const FieldTable& f = g.field();
  if (t == 0 || t >= f.q()) throw ZeroArgument("H_q(t) needs t in F_q^x");
  if (d < 2) throw std::invalid_argument("d must be >= 2");
  const std::uint64_t n = f.order();
  const std::uint64_t half = n / 2;
  const std::uint32_t arg = d % 2 == 0 ? t : f.neg(t);  // (-1)^d t
  const std::uint64_t L = f.dlog(arg);
  const C inv_phi = g[half].inverse();

  C sum{};
  std::uint64_t twiddle = 0;  // m * L mod n
  for (std::uint64_t m = 0; m < n; ++m) {
    const C ratio = g[m + half] * g[n - m] * inv_phi;
    sum += ratio.pow(d) * g.root(twiddle);
    twiddle += L;
    if (twiddle >= n) twiddle -= n;
  }
  const Real scale = Real(d % 2 == 0 ? 1 : -1) / Real(1.0 - static_cast<double>(f.q()));
  const Real re = sum.re * scale;
  const Real im = sum.im * scale;
  const Real rounded = Traits::round(re);
  const double residual =
      std::max(std::fabs(Traits::to_double(re - rounded)), std::fabs(Traits::to_double(im)));
  if (std::fabs(Traits::to_double(rounded)) > 9.0e18)
    throw TooLarge("H_q(t) exceeds 64-bit range");
  HValue out{f.p(), f.k(), f.q(), d, t, static_cast<std::int64_t>(Traits::to_long_double(rounded)),
             HMethod::gauss, residual, Traits::bits};
  if (residual >= 0.01)
    throw IntegralityFailure("H_q(t) rounding residual " + std::to_string(residual) + " at q=" +
                             std::to_string(f.q()) + ", d=" + std::to_string(d) + ", " +
                             std::to_string(Traits::bits) + " bits");
  return out;
}

}  // namespace detail

/// H_q(t) from the Gauss-sum formula, rounded to the nearest integer.
inline HValue h_value_gauss(const GaussTable& g, unsigned d, std::uint32_t t) {
  return std::visit([&](const auto& tbl) { return detail::h_value_gauss_impl(tbl, d, t); },
                    g.storage());
}

/// As above, building the Gauss table itself and escalating precision
/// after an IntegralityFailure or PrecisionExceeded.
inline HValue h_value_gauss(std::shared_ptr<const FieldTable> field, unsigned d, std::uint32_t t,
                            std::optional<unsigned> precision_bits = std::nullopt) {
  unsigned bits = precision_tier(precision_bits.value_or(default_precision_bits(field->q())));
  for (;;) {
    try {
      return h_value_gauss(gauss_table(field, bits), d, t);
    } catch (const IntegralityFailure&) {
      auto next = next_precision_tier(bits);
      if (!next) throw;
      bits = *next;
    } catch (const PrecisionExceeded&) {
      auto next = next_precision_tier(bits);
      if (!next) throw;
      bits = *next;
    }
  }
}

struct PointCountOptions {
  /// Bound on (d-2) * (q-1) * (support of the histogram) multiply-adds.
  std::uint64_t work_cap = 4'000'000'000ULL;
};

/// Number of (x_1..x_d) in (F_q^x)^d with prod (x_i + 2 + 1/x_i) = 4^d / t.
///
/// The value multiset of y(x) = x + 2 + 1/x is binned by discrete log;
/// zeros of y never contribute because the right-hand side is nonzero. The
/// count is one entry of the d-fold cyclic convolution of the histogram.
inline BigInt point_count(const FieldTable& f, unsigned d, std::uint32_t t,
                          const PointCountOptions& opts = {}) {
  if (t == 0 || t >= f.q()) throw ZeroArgument("point count needs t in F_q^x");
  if (d < 1) throw std::invalid_argument("d must be >= 1");
  const std::uint64_t n = f.order();
  const std::uint32_t two = f.from_int(2);

  std::vector<std::uint64_t> hist(n, 0);
  for (std::uint64_t j = 0; j < n; ++j) {
    const std::uint32_t x = f.power(j);
    const std::uint32_t y = f.add(f.add(x, two), f.inverse(x));
    if (y != 0) ++hist[f.dlog(y)];
  }
  std::vector<std::uint64_t> support;
  for (std::uint64_t j = 0; j < n; ++j)
    if (hist[j]) support.push_back(j);

  if (d > 2 && static_cast<long double>(d - 2) * n * support.size() > opts.work_cap)
    throw TooLarge("point count convolution exceeds work cap");

  const std::uint32_t target =
      f.mul(f.pow(f.from_int(4), d), f.inverse(t));  // 4^d / t
  const std::uint64_t c = f.dlog(target);

  using U = unsigned __int128;
  std::vector<U> cur(hist.begin(), hist.end());
  for (unsigned step = 1; step + 1 < d; ++step) {
    std::vector<U> next(n, 0);
    for (std::uint64_t j = 0; j < n; ++j) {
      if (cur[j] == 0) continue;
      for (std::uint64_t s : support) {
        std::uint64_t idx = j + s;
        if (idx >= n) idx -= n;
        next[idx] += cur[j] * hist[s];
      }
    }
    cur = std::move(next);
  }
  if (d == 1) {
    BigInt out = static_cast<std::uint64_t>(cur[c]);
    return out;
  }
  U total = 0;
  for (std::uint64_t s : support) {
    const std::uint64_t j = (c + n - s) % n;
    total += cur[j] * hist[s];
  }
  BigInt out = static_cast<std::uint64_t>(total >> 64);
  out <<= 64;
  out += static_cast<std::uint64_t>(total);
  return out;
}

/// ((q-2)^d - (-1)^d) / (q-1), the main term of the point-count formula.
inline BigInt point_count_main_term(std::uint64_t q, unsigned d) {
  const BigInt num = boost::multiprecision::pow(BigInt(q - 2), d) - (d % 2 == 0 ? 1 : -1);
  if (num % (q - 1) != 0) throw NonIntegral("((q-2)^d - (-1)^d) is not divisible by q-1");
  return num / (q - 1);
}

/// H_q(t) solved exactly from the point count.
inline HValue h_value_count(const FieldTable& f, unsigned d, std::uint32_t t,
                            const PointCountOptions& opts = {}) {
  const BigInt count = point_count(f, d, t, opts);
  BigInt h = point_count_main_term(f.q(), d) - count;
  if (d % 2 == 1) h = -h;
  if (h > BigInt(INT64_MAX) || h < BigInt(INT64_MIN)) throw TooLarge("H_q(t) exceeds 64-bit range");
  return {f.p(), f.k(), f.q(), d, t, static_cast<std::int64_t>(h), HMethod::count, 0.0, 0};
}

struct HasseDavenportWitness {
  bool holds;
  double error;
};

/// g(omega^(2m)) against omega(4)^m g(omega^m) g(phi omega^m) / g(phi).
inline HasseDavenportWitness hasse_davenport_check(const GaussTable& g, std::uint64_t m,
                                                   double tolerance = 1e-9) {
  return std::visit(
      [&](const auto& tbl) {
        using Real = std::decay_t<decltype(tbl[0].re)>;
        using Traits = detail::RealTraits<Real>;
        const FieldTable& f = tbl.field();
        const std::uint64_t n = f.order();
        const std::uint64_t half = n / 2;
        const std::uint64_t mm = m % n;
        const auto lhs = tbl[2 * mm];
        const std::uint64_t dlog4 = f.dlog(f.from_int(4));
        const auto rhs = tbl.root(static_cast<std::uint64_t>(
                             static_cast<unsigned __int128>(mm) * dlog4 % n)) *
                         tbl[mm] * tbl[mm + half] * tbl[half].inverse();
        const double err = std::sqrt(Traits::to_double((lhs - rhs).norm()));
        const double scale = std::max(1.0, std::sqrt(Traits::to_double(lhs.norm())));
        return HasseDavenportWitness{err <= tolerance * scale, err};
      },
      g.storage());
}

}  // namespace hypercong
