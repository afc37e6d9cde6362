#pragma once

// Zeta factors Z_p(t, T) = prod_i (1 - mu_i T) with H_{p^s}(t) = sum_i mu_i^s,
// i.e. exp(-sum_s H_{p^s}(t) T^s / s), assembled from finite hypergeometric
// sums; their Newton polygons and unit roots.

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypercong/errors.hpp"
#include "hypercong/finite_field.hpp"
#include "hypercong/hyp_sums.hpp"
#include "hypercong/numtheory.hpp"
#include "hypercong/padic_core.hpp"

namespace hypercong {

using Rational = boost::multiprecision::cpp_rational;
using IntPoly = std::vector<BigInt>;  // c_0 + c_1 T + ...

namespace poly {

inline void trim(IntPoly& a) {
  while (a.size() > 1 && a.back() == 0) a.pop_back();
}

inline IntPoly mul(const IntPoly& a, const IntPoly& b) {
  IntPoly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  trim(c);
  return c;
}

struct Division {
  IntPoly quotient;
  IntPoly remainder;  // all zero when the division is exact
  bool exact() const {
    return std::all_of(remainder.begin(), remainder.end(), [](const BigInt& x) { return x == 0; });
  }
};

/// Division by a divisor with constant term 1, solved from the low end.
inline Division divide(IntPoly a, IntPoly b) {
  trim(a);
  trim(b);
  if (b.empty() || b[0] != 1) throw std::invalid_argument("divisor must have constant term 1");
  if (a.size() < b.size()) return {{0}, a};
  const std::size_t qdeg = a.size() - b.size();
  IntPoly q(qdeg + 1, 0);
  for (std::size_t i = 0; i <= qdeg; ++i) {
    BigInt acc = a[i];
    for (std::size_t j = 1; j < b.size() && j <= i; ++j) acc -= b[j] * q[i - j];
    q[i] = acc;
  }
  IntPoly prod = mul(q, b);
  IntPoly rem(a.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) rem[i] = a[i] - (i < prod.size() ? prod[i] : BigInt(0));
  for (std::size_t i = a.size(); i < prod.size(); ++i)
    if (prod[i] != 0) rem.push_back(-prod[i]);
  return {q, rem};
}

inline std::string to_string(const IntPoly& a) {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0 && !(a.size() == 1)) continue;
    BigInt c = a[i];
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    if (c < 0) c = -c;
    if (i == 0 || c != 1) os << c;
    if (i >= 1) os << (i == 0 || c != 1 ? "*" : "") << "T";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  return first ? "0" : os.str();
}

}  // namespace poly

enum class Orientation {
  multiplied,  // raw exponential series = polynomial * (1 - cT)
  divided,     // raw exponential series = polynomial / (1 - cT)
};

inline const char* to_string(Orientation o) {
  return o == Orientation::multiplied ? "multiplied" : "divided";
}

/// The linear factor 1 - coefficient*T stripped from Z_p(1, T) for even d;
/// coefficient is +-p^(d/2-1).
struct RemovedFactor {
  BigInt coefficient;
  Orientation orientation;
  bool orientation_ambiguous = false;
};

enum class Completion {
  newton,               // every coefficient from power sums, trailing ones checked zero
  functional_equation,  // upper coefficients from c_{D-i} = eps p^{w(D-2i)/2} c_i
};

inline const char* to_string(Completion c) {
  return c == Completion::newton ? "newton" : "functional_equation";
}

struct ZetaFactor {
  std::uint64_t p;
  unsigned d;
  std::int64_t t;                        // as given; only t mod p matters
  IntPoly coefficients;                  // c_0 = 1
  std::optional<RemovedFactor> removed_factor;
  std::vector<std::int64_t> h_values;    // H_{p^s}(t), s = 1..
  Completion completion = Completion::newton;
  int functional_sign = 0;               // eps, 0 when not determined
  unsigned redundant_checks = 0;         // equations beyond those needed

  unsigned degree() const { return static_cast<unsigned>(coefficients.size() - 1); }
  unsigned weight() const { return d - 1; }
};

inline bool is_t_one(std::uint64_t p, std::int64_t t) {
  return floor_mod(t, static_cast<std::int64_t>(p)) == 1;
}

/// Degree of the reported polynomial: d, or d-1 (t = 1, d odd), or d-2
/// (t = 1, d even, after the linear factor is stripped).
inline unsigned expected_degree(std::uint64_t p, unsigned d, std::int64_t t) {
  if (!is_t_one(p, t)) return d;
  return d % 2 == 1 ? d - 1 : d - 2;
}

/// Degree of the exponential series before any factor is stripped.
inline unsigned expected_raw_degree(std::uint64_t p, unsigned d, std::int64_t t) {
  return is_t_one(p, t) && d % 2 == 0 ? d - 1 : expected_degree(p, d, t);
}

namespace detail {

/// Coefficients of prod (1 - mu_i T) from the power sums H_i = sum mu_i^s,
/// by the Newton identities k c_k = -sum_{i=1}^k H_i c_{k-i}.
inline std::vector<Rational> exp_series(const std::vector<std::int64_t>& h) {
  std::vector<Rational> c(h.size() + 1);
  c[0] = 1;
  for (std::size_t k = 1; k <= h.size(); ++k) {
    Rational acc = 0;
    for (std::size_t i = 1; i <= k; ++i) acc -= Rational(h[i - 1]) * c[k - i];
    c[k] = acc / static_cast<long long>(k);
  }
  return c;
}

struct CompletionResult {
  enum class Status { ok, non_integral, degree_mismatch, ambiguous } status;
  IntPoly coefficients;
  Completion completion = Completion::newton;
  int sign = 0;
  unsigned redundant = 0;
  std::string message;
};

inline bool all_integral(const std::vector<Rational>& s, std::size_t upto) {
  for (std::size_t i = 0; i < std::min(upto + 1, s.size()); ++i)
    if (denominator(s[i]) != 1) return false;
  return true;
}

/// Sign eps with c_{D-i} = eps p^{w(D-2i)/2} c_i forced by the coefficients
/// c_0..c_known (0 when no pair decides it).
inline int determine_sign(const IntPoly& c, unsigned D, unsigned w, std::uint64_t p, bool& consistent,
                          unsigned& checks) {
  int sign = 0;
  consistent = true;
  checks = 0;
  const std::size_t known = c.size() - 1;
  for (unsigned i = 0; 2 * i <= D; ++i) {
    if (D - i > known) continue;
    const BigInt scale = big_pow(p, w * (D - 2 * i) / 2);
    const BigInt lhs = c[D - i];
    const BigInt rhs = scale * c[i];
    ++checks;
    if (rhs == 0) {
      if (lhs != 0) consistent = false;
      continue;
    }
    int s = 0;
    if (lhs == rhs) s = 1;
    else if (lhs == -rhs) s = -1;
    else {
      consistent = false;
      continue;
    }
    if (2 * i == D && s == -1) consistent = false;
    if (2 * i == D) {
      if (sign == -1) consistent = false;
      sign = sign == 0 ? 1 : sign;
      continue;
    }
    if (sign != 0 && sign != s) consistent = false;
    sign = s;
  }
  return sign;
}

inline CompletionResult complete(const std::vector<Rational>& series, unsigned D, unsigned w,
                                 std::uint64_t p) {
  using S = CompletionResult::Status;
  const std::size_t S_ = series.size() - 1;  // number of power sums
  if (!all_integral(series, std::min<std::size_t>(S_, D)))
    return {S::non_integral, {}, Completion::newton, 0, 0, "non-integral coefficient"};
  if (S_ >= D + 1) {
    for (std::size_t i = D + 1; i <= S_; ++i)
      if (series[i] != 0)
        return {S::degree_mismatch, {}, Completion::newton, 0, 0,
                "coefficient of T^" + std::to_string(i) + " is nonzero beyond degree " +
                    std::to_string(D)};
    IntPoly c(D + 1);
    for (unsigned i = 0; i <= D; ++i) c[i] = numerator(series[i]);
    bool consistent = true;
    unsigned checks = 0;
    const int sign = (w * D) % 2 == 0 ? determine_sign(c, D, w, p, consistent, checks) : 0;
    return {S::ok, c, Completion::newton, consistent ? sign : 0,
            static_cast<unsigned>(S_ - D), ""};
  }
  if ((w * D) % 2 != 0)
    return {S::degree_mismatch, {}, Completion::functional_equation, 0, 0,
            "odd total weight, no functional equation"};
  if (2 * S_ < D)
    return {S::ambiguous, {}, Completion::functional_equation, 0, 0,
            "too few power sums for the functional equation"};
  IntPoly known(S_ + 1);
  for (std::size_t i = 0; i <= S_; ++i) known[i] = numerator(series[i]);
  bool consistent = true;
  unsigned checks = 0;
  const int sign = determine_sign(known, D, w, p, consistent, checks);
  if (!consistent)
    return {S::degree_mismatch, {}, Completion::functional_equation, 0, 0,
            "coefficients violate the functional equation"};
  if (sign == 0)
    return {S::ambiguous, {}, Completion::functional_equation, 0, 0,
            "functional-equation sign not determined"};
  IntPoly c(D + 1);
  for (unsigned i = 0; i <= D; ++i) {
    if (i <= S_) c[i] = known[i];
    else c[i] = BigInt(sign) * big_pow(p, w * (2 * i - D) / 2) * c[D - i];
  }
  // one pair decides the sign; the rest are redundant
  return {S::ok, c, Completion::functional_equation, sign, checks > 0 ? checks - 1 : 0, ""};
}

}  // namespace detail

/// Assembles Z_p(t, T) from H_{p^s}(t), s = 1..h_values.size().
inline ZetaFactor assemble_zeta(std::uint64_t p, unsigned d, std::int64_t t,
                                const std::vector<std::int64_t>& h_values) {
  if (h_values.empty()) throw std::invalid_argument("need at least one H value");
  if (floor_mod(t, static_cast<std::int64_t>(p)) == 0) throw ZeroArgument("t must be nonzero mod p");
  const unsigned D = expected_degree(p, d, t);
  const unsigned w = d - 1;
  const auto raw = detail::exp_series(h_values);
  using S = detail::CompletionResult::Status;

  ZetaFactor zf{p, d, t, {}, std::nullopt, h_values};
  auto raise = [&](const detail::CompletionResult& r) {
    const std::string where = " (p=" + std::to_string(p) + ", d=" + std::to_string(d) +
                              ", t=" + std::to_string(t) + ")";
    if (r.status == S::non_integral) throw NonIntegralCoefficient(r.message + where);
    throw DegreeMismatch(r.message + where);
  };

  if (!(is_t_one(p, t) && d % 2 == 0)) {
    auto r = detail::complete(raw, D, w, p);
    if (r.status != S::ok) raise(r);
    zf.coefficients = r.coefficients;
    zf.completion = r.completion;
    zf.functional_sign = r.sign;
    zf.redundant_checks = r.redundant;
    return zf;
  }

  // t = 1, d even: strip 1 -/+ p^(d/2-1) T in whichever sign and
  // orientation leaves a polynomial of the expected degree
  const BigInt a = big_pow(p, d / 2 - 1);
  struct Candidate {
    BigInt coefficient;
    Orientation orientation;
    detail::CompletionResult result;
  };
  std::vector<Candidate> good;
  std::optional<detail::CompletionResult> first_failure;
  for (const BigInt& lin : {a, BigInt(-a)}) {
    std::vector<Rational> mult(raw.size()), div(raw.size());
    Rational acc = 0;
    for (std::size_t k = 0; k < raw.size(); ++k) {
      // raw / (1 - lin T): running sum of raw_j lin^(k-j)
      acc = acc * Rational(lin) + raw[k];
      mult[k] = acc;
      div[k] = raw[k] - (k > 0 ? Rational(lin) * raw[k - 1] : Rational(0));
    }
    for (auto [series, orient] : {std::pair{&mult, Orientation::multiplied}, std::pair{&div, Orientation::divided}}) {
      auto r = detail::complete(*series, D, w, p);
      if (r.status == S::ok) good.push_back({lin, orient, r});
      else if (!first_failure) first_failure = r;
    }
  }
  if (good.empty()) raise(*first_failure);
  const auto& g = good.front();
  zf.coefficients = g.result.coefficients;
  zf.completion = g.result.completion;
  zf.functional_sign = g.result.sign;
  zf.redundant_checks = g.result.redundant;
  zf.removed_factor = RemovedFactor{g.coefficient, g.orientation, good.size() > 1};
  return zf;
}

struct Slope {
  std::int64_t num;
  std::int64_t den;
  unsigned multiplicity;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Slope&, const Slope&) = default;
};

struct NewtonPolygon {
  std::vector<Slope> slopes;

  /// Slopes with multiplicity expanded, as doubles.
  std::vector<double> multiset() const {
    std::vector<double> out;
    for (const auto& s : slopes)
      for (unsigned i = 0; i < s.multiplicity; ++i) out.push_back(s.value());
    return out;
  }
};

/// Lower convex hull of (i, v_p(c_i)) over the nonzero coefficients.
inline NewtonPolygon newton_polygon(const IntPoly& c, std::uint64_t p) {
  std::vector<std::pair<std::int64_t, std::int64_t>> pts;
  for (std::size_t i = 0; i < c.size(); ++i)
    if (c[i] != 0) pts.emplace_back(static_cast<std::int64_t>(i), valuation(c[i], p));
  std::vector<std::pair<std::int64_t, std::int64_t>> hull;
  for (const auto& pt : pts) {
    while (hull.size() >= 2) {
      const auto& a = hull[hull.size() - 2];
      const auto& b = hull.back();
      const std::int64_t cross =
          (b.first - a.first) * (pt.second - a.second) - (b.second - a.second) * (pt.first - a.first);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(pt);
  }
  NewtonPolygon out;
  for (std::size_t i = 1; i < hull.size(); ++i) {
    const std::int64_t dx = hull[i].first - hull[i - 1].first;
    const std::int64_t dy = hull[i].second - hull[i - 1].second;
    const std::int64_t g = std::gcd(dx, dy < 0 ? -dy : dy);
    out.slopes.push_back({dy / g, dx / g, static_cast<unsigned>(dx)});
  }
  return out;
}

inline NewtonPolygon newton_polygon(const ZetaFactor& zf) { return newton_polygon(zf.coefficients, zf.p); }

/// The reciprocal root of valuation 0, Hensel-lifted to precision p^N.
inline PAdicApprox unit_root_of_zeta(const IntPoly& c, std::uint64_t p, unsigned N) {
  const NewtonPolygon np = newton_polygon(c, p);
  if (np.slopes.empty() || np.slopes.front().num != 0) throw NoUnitRoot("no slope-0 segment");
  if (np.slopes.front().multiplicity != 1)
    throw MultipleUnitRoots("slope-0 segment has length " +
                            std::to_string(np.slopes.front().multiplicity));
  const PrimePowerModulus m(p, N);
  const std::size_t D = c.size() - 1;
  // P(x) = sum c_i x^(D-i); mod p it is x^(D-1) (x + c_1)
  auto eval = [&](const Residue& x) {
    Residue val = Residue::zero(m), der = Residue::zero(m);
    for (std::size_t i = 0; i <= D; ++i) {
      der = der * x + val;
      val = val * x + Residue(m, c[i]);
    }
    return std::pair{val, der};
  };
  Residue x(m, -c[1]);
  for (unsigned iter = 0; iter <= N + 1; ++iter) {
    auto [val, der] = eval(x);
    if (val.is_zero()) break;
    x -= val * der.inverse();
  }
  if (!eval(x).first.is_zero()) throw ConsistencyFailure("Hensel lift did not converge");
  return {x};
}

inline PAdicApprox unit_root_of_zeta(const ZetaFactor& zf, unsigned N) {
  return unit_root_of_zeta(zf.coefficients, zf.p, N);
}

struct CoefficientSpec {
  enum class Kind { known, unknown, choice } kind = Kind::unknown;
  BigInt value;
  std::vector<BigInt> choices;

  static CoefficientSpec known(BigInt v) { return {Kind::known, std::move(v), {}}; }
  static CoefficientSpec unknown() { return {Kind::unknown, 0, {}}; }
  static CoefficientSpec choice(std::vector<BigInt> c) { return {Kind::choice, 0, std::move(c)}; }
};

/// A factor 1 + c_1 T + ... with some coefficients possibly unknown or
/// restricted to a finite set.
struct FactorShape {
  std::string name;
  std::vector<CoefficientSpec> coefficients;  // c_0 must be known 1
};

struct SolvedFactor {
  std::string name;
  IntPoly coefficients;
};

struct FactorReport {
  std::vector<SolvedFactor> factors;
};

/// Divides by every fully known factor and reads the remaining unknown
/// factor (at most one) off the quotient. Choices are tried in order.
inline FactorReport factor_check(const IntPoly& target, const std::vector<FactorShape>& shapes) {
  std::vector<std::size_t> choice_slots;  // flattened (shape, coefficient) with choices
  std::vector<std::pair<std::size_t, std::size_t>> slot_pos;
  for (std::size_t s = 0; s < shapes.size(); ++s) {
    if (shapes[s].coefficients.empty() || shapes[s].coefficients[0].kind != CoefficientSpec::Kind::known ||
        shapes[s].coefficients[0].value != 1)
      throw std::invalid_argument("factor " + shapes[s].name + " must have constant term 1");
    for (std::size_t i = 0; i < shapes[s].coefficients.size(); ++i)
      if (shapes[s].coefficients[i].kind == CoefficientSpec::Kind::choice) {
        slot_pos.emplace_back(s, i);
        choice_slots.push_back(shapes[s].coefficients[i].choices.size());
      }
  }
  std::vector<std::size_t> pick(choice_slots.size(), 0);
  std::string last_failure;
  for (;;) {
    std::vector<FactorShape> concrete = shapes;
    for (std::size_t j = 0; j < pick.size(); ++j) {
      auto& spec = concrete[slot_pos[j].first].coefficients[slot_pos[j].second];
      spec = CoefficientSpec::known(spec.choices[pick[j]]);
    }
    IntPoly known{1};
    std::optional<std::size_t> open;
    for (std::size_t s = 0; s < concrete.size(); ++s) {
      bool full = true;
      IntPoly f;
      for (const auto& spec : concrete[s].coefficients) {
        if (spec.kind != CoefficientSpec::Kind::known) full = false;
        f.push_back(spec.value);
      }
      if (full) {
        known = poly::mul(known, f);
      } else {
        if (open) throw std::invalid_argument("factor_check supports one factor with unknowns");
        open = s;
      }
    }
    const auto div = poly::divide(target, known);
    bool ok = div.exact();
    IntPoly quotient = div.quotient;
    poly::trim(quotient);
    if (!ok) {
      last_failure = "remainder " + poly::to_string(div.remainder);
    } else if (!open) {
      ok = quotient.size() == 1 && quotient[0] == 1;
      if (!ok) last_failure = "unexplained cofactor " + poly::to_string(quotient);
    } else {
      const auto& specs = concrete[*open].coefficients;
      quotient.resize(std::max(quotient.size(), specs.size()), 0);
      ok = quotient.size() == specs.size();
      if (!ok) last_failure = "cofactor " + poly::to_string(quotient) + " has the wrong degree";
      for (std::size_t i = 0; ok && i < specs.size(); ++i)
        if (specs[i].kind == CoefficientSpec::Kind::known && specs[i].value != quotient[i]) {
          ok = false;
          last_failure = "cofactor " + poly::to_string(quotient) + " disagrees with " +
                         concrete[*open].name;
        }
    }
    if (ok) {
      FactorReport rep;
      for (std::size_t s = 0; s < concrete.size(); ++s) {
        if (open && s == *open) {
          rep.factors.push_back({concrete[s].name, quotient});
          continue;
        }
        IntPoly f;
        for (const auto& spec : concrete[s].coefficients) f.push_back(spec.value);
        rep.factors.push_back({concrete[s].name, f});
      }
      return rep;
    }
    std::size_t j = 0;
    while (j < pick.size() && ++pick[j] == choice_slots[j]) pick[j++] = 0;
    if (j == pick.size()) break;
  }
  throw FactorMismatch("factorization of " + poly::to_string(target) + " failed: " + last_failure);
}

struct ZetaOptions {
  /// Largest field size used for H_{p^s}; beyond it the functional
  /// equation completes the polynomial.
  std::uint64_t max_q = 400'000;
  /// H values on fields up to this size are also computed by point count
  /// and must agree with the Gauss-sum value.
  std::uint64_t count_crosscheck_max_q = 2'000;
  std::optional<unsigned> precision_bits;
};

/// Caches fields and Gauss tables across zeta computations; safe to share
/// between threads, each table is built once.
class ZetaEngine {
 public:
  explicit ZetaEngine(ZetaOptions opts = {}) : opts_(opts) {}

  const ZetaOptions& options() const { return opts_; }

  std::shared_ptr<const FieldTable> field(std::uint64_t p, unsigned k) {
    return cached(fields_, std::pair{p, k}, [&] {
      FieldOptions fo;
      fo.max_q = std::max<std::uint64_t>(fo.max_q, opts_.max_q);
      return std::make_shared<const FieldTable>(build_field(p, k, fo));
    });
  }

  std::shared_ptr<const GaussTable> gauss(std::uint64_t p, unsigned k, unsigned bits) {
    return cached(gauss_, std::tuple{p, k, bits},
                  [&] { return std::make_shared<const GaussTable>(gauss_table(field(p, k), bits)); });
  }

  /// H_{p^k}(t) for t in F_p^x, with precision escalation.
  HValue h_value(std::uint64_t p, unsigned k, unsigned d, std::int64_t t) {
    auto f = field(p, k);
    const std::uint32_t tt = f->from_int(t);
    unsigned bits = precision_tier(opts_.precision_bits.value_or(default_precision_bits(f->q())));
    HValue hv{};
    for (;;) {
      try {
        hv = h_value_gauss(*gauss(p, k, bits), d, tt);
        break;
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
    if (f->q() <= opts_.count_crosscheck_max_q) {
      const HValue hc = h_value_count(*f, d, tt);
      if (hc.value != hv.value)
        throw ConsistencyFailure("Gauss-sum and point-count H disagree at q=" + std::to_string(f->q()));
    }
    return hv;
  }

  /// Number of power sums used for (p, d, t) under the field-size cap.
  unsigned power_sum_count(std::uint64_t p, unsigned d, std::int64_t t) const {
    const unsigned want = expected_raw_degree(p, d, t) + 1;
    unsigned s = 0;
    std::uint64_t q = 1;
    while (s < want && q <= opts_.max_q / p) {
      q *= p;
      ++s;
    }
    return s;
  }

  ZetaFactor zeta(std::uint64_t p, unsigned d, std::int64_t t) {
    return cached(zetas_, std::tuple{p, d, floor_mod(t, static_cast<std::int64_t>(p))}, [&] {
      const unsigned S = power_sum_count(p, d, t);
      if (S == 0) throw TooLarge("field F_p exceeds the zeta size cap");
      std::vector<std::int64_t> h;
      for (unsigned s = 1; s <= S; ++s) h.push_back(h_value(p, s, d, t).value);
      ZetaFactor zf = assemble_zeta(p, d, t, h);
      zf.t = t;
      return std::make_shared<const ZetaFactor>(std::move(zf));
    }).operator*();
  }

 private:
  template <class Map, class Key, class Make>
  auto cached(Map& map, const Key& key, Make make) -> decltype(make()) {
    using Ptr = decltype(make());
    std::shared_future<Ptr> fut;
    std::promise<Ptr> prom;
    bool owner = false;
    {
      std::lock_guard lock(mutex_);
      auto it = map.find(key);
      if (it == map.end()) {
        fut = prom.get_future().share();
        map.emplace(key, fut);
        owner = true;
      } else {
        fut = it->second;
      }
    }
    if (owner) {
      try {
        prom.set_value(make());
      } catch (...) {
        prom.set_exception(std::current_exception());
      }
    }
    return fut.get();
  }

  ZetaOptions opts_;
  std::mutex mutex_;
  std::map<std::pair<std::uint64_t, unsigned>, std::shared_future<std::shared_ptr<const FieldTable>>> fields_;
  std::map<std::tuple<std::uint64_t, unsigned, unsigned>, std::shared_future<std::shared_ptr<const GaussTable>>>
      gauss_;
  std::map<std::tuple<std::uint64_t, unsigned, std::int64_t>, std::shared_future<std::shared_ptr<const ZetaFactor>>>
      zetas_;
};

}  // namespace hypercong
