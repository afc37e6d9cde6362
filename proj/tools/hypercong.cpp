// Command-line front end: single computations as JSON, and claim sweeps.

#include <atomic>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "hypercong/hypercong.hpp"

using namespace hypercong;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

std::atomic<bool> g_cancel{false};

void on_signal(int) { g_cancel.store(true); }

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double work_cap_from_env() {
  const char* env = std::getenv("HYPERCONG_WORK_CAP");
  if (!env || !*env) return 1e12;
  try {
    std::size_t used = 0;
    const double v = std::stod(env, &used);
    if (used != std::string(env).size() || !(v >= 0)) throw std::invalid_argument("bad");
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("HYPERCONG_WORK_CAP must be a nonnegative number, got '") + env + "'");
  }
}

/// Errors that signal a wrong result rather than a bad request.
bool is_internal(const Error& e) {
  return dynamic_cast<const ConsistencyFailure*>(&e) || dynamic_cast<const IntegralityFailure*>(&e) ||
         dynamic_cast<const PrecisionExceeded*>(&e) || dynamic_cast<const FactorMismatch*>(&e) ||
         dynamic_cast<const NonIntegral*>(&e) || dynamic_cast<const NonIntegralCoefficient*>(&e) ||
         dynamic_cast<const DegreeMismatch*>(&e);
}

void print(const json& j) { std::cout << j.dump(2) << "\n"; }

std::string residue_str(const Residue& r) { return r.value().str(); }

json slopes_json(const NewtonPolygon& np) {
  json arr = json::array();
  for (const auto& s : np.slopes) {
    json o;
    o["slope"] = s.den == 1 ? std::to_string(s.num) : std::to_string(s.num) + "/" + std::to_string(s.den);
    o["multiplicity"] = s.multiplicity;
    arr.push_back(o);
  }
  return arr;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Truncated hypergeometric sums, finite hypergeometric sums and their supercongruences"};
  app.require_subcommand(1);

  unsigned d = 2, s = 1, k = 1, mod_exp = 1, precision = 1;
  std::uint64_t p = 3;
  std::int64_t z = 1, t = 1;

  auto* trunc = app.add_subcommand("trunc", "F_{p^s}(z) mod p^k");
  trunc->add_option("--d", d, "number of 1/2 parameters")->required();
  trunc->add_option("--p", p, "odd prime")->required();
  trunc->add_option("--s", s, "truncation exponent")->required();
  trunc->add_option("--z", z, "evaluation point")->required();
  trunc->add_option("--mod-exp", mod_exp, "modulus exponent k")->required();

  auto* unitroot = app.add_subcommand("unitroot", "unit root f(z) mod p^N");
  unitroot->add_option("--d", d)->required();
  unitroot->add_option("--p", p)->required();
  unitroot->add_option("--z", z)->required();
  unitroot->add_option("--precision", precision)->required();

  bool dump = false;
  auto* field = app.add_subcommand("field", "build F_q and describe it");
  field->add_option("--p", p)->required();
  field->add_option("--k", k)->required();
  field->add_flag("--dump", dump, "print the full element table");

  std::string method = "gauss";
  unsigned precision_bits = 0;
  auto* hq = app.add_subcommand("hq", "finite hypergeometric sum H_q(t)");
  hq->add_option("--p", p)->required();
  hq->add_option("--k", k)->required();
  hq->add_option("--d", d)->required();
  hq->add_option("--t", t, "parameter in F_p^x")->required();
  hq->add_option("--method", method)->check(CLI::IsMember({"gauss", "count"}));
  hq->add_option("--precision-bits", precision_bits, "53, 64 or 113");

  auto* pc = app.add_subcommand("pointcount", "points of X_t over F_q with nonzero coordinates");
  pc->add_option("--p", p)->required();
  pc->add_option("--k", k)->required();
  pc->add_option("--d", d)->required();
  pc->add_option("--t", t)->required();

  unsigned root_precision = 3;
  auto* zeta = app.add_subcommand("zeta", "zeta factor Z_p(t, T)");
  zeta->add_option("--p", p)->required();
  zeta->add_option("--d", d)->required();
  zeta->add_option("--t", t)->required();
  zeta->add_option("--precision", root_precision, "precision of the reported unit root");

  std::string quotient;
  std::size_t terms = 0;
  auto* eta = app.add_subcommand("eta", "q-expansion of an eta quotient");
  eta->add_option("--quotient", quotient, "e.g. \"2^4 4^4\"")->required();
  eta->add_option("--terms", terms)->required();

  std::string claims, out_path, format = "json";
  std::uint64_t pmax = 199;
  unsigned jobs = 1;
  bool timings = false;
  auto* verify = app.add_subcommand("verify", "sweep claims over primes and write a report");
  verify->add_option("--claims", claims, "comma-separated claim ids or 'all'")->required();
  verify->add_option("--pmax", pmax)->required();
  verify->add_option("--jobs", jobs)->check(CLI::Range(1u, 256u));
  verify->add_option("--out", out_path)->required();
  verify->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));
  verify->add_flag("--timings", timings, "include per-cell wall time (reports are then not reproducible)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*trunc) {
      const HyperParams hp(d, p);
      const auto tv = truncated_sum(hp, s, z, mod_exp);
      json j;
      j["d"] = d;
      j["p"] = p;
      j["s"] = s;
      j["z"] = z;
      j["mod_exp"] = mod_exp;
      j["value"] = residue_str(tv.value);
      j["centered"] = tv.value.centered().str();
      print(j);
    } else if (*unitroot) {
      const HyperParams hp(d, p);
      const auto f = unit_root_limit(hp, z, precision);
      json j;
      j["d"] = d;
      j["p"] = p;
      j["z"] = z;
      j["precision"] = precision;
      j["value"] = residue_str(f.residue);
      j["centered"] = f.residue.centered().str();
      print(j);
    } else if (*field) {
      const auto f = build_field(p, k);
      if (dump) {
        f.dump(std::cout);
      } else {
        json j;
        j["p"] = p;
        j["k"] = k;
        j["q"] = f.q();
        j["modulus_poly"] = f.modulus_poly();
        j["generator"] = f.coefficients(f.generator());
        print(j);
      }
    } else if (*hq) {
      auto f = std::make_shared<const FieldTable>(build_field(p, k));
      const std::uint32_t tt = f->from_int(t);
      if (tt == 0) throw ZeroArgument("t must be nonzero in F_p");
      HValue hv{};
      if (method == "gauss") {
        std::optional<unsigned> bits;
        if (precision_bits) bits = precision_bits;
        hv = h_value_gauss(f, d, tt, bits);
      } else {
        hv = h_value_count(*f, d, tt);
      }
      json j;
      j["p"] = p;
      j["k"] = k;
      j["d"] = d;
      j["t"] = t;
      j["H"] = hv.value;
      j["method"] = to_string(hv.method);
      j["residual"] = method == "gauss" ? json(hv.residual) : json();
      if (method == "gauss") j["precision_bits"] = hv.precision_bits;
      print(j);
    } else if (*pc) {
      const auto f = build_field(p, k);
      const std::uint32_t tt = f.from_int(t);
      if (tt == 0) throw ZeroArgument("t must be nonzero in F_p");
      const auto hv = h_value_count(f, d, tt);
      json j;
      j["p"] = p;
      j["k"] = k;
      j["d"] = d;
      j["t"] = t;
      j["count"] = point_count(f, d, tt).str();
      j["H"] = hv.value;
      j["method"] = "count";
      j["residual"] = json();
      print(j);
    } else if (*zeta) {
      if (d < 2) throw std::invalid_argument("d must be >= 2");
      if (p < 3 || !is_prime(p)) throw std::invalid_argument("p must be an odd prime");
      ZetaEngine engine;
      const auto& zf = engine.zeta(p, d, t);
      json j;
      j["p"] = p;
      j["d"] = d;
      j["t"] = t;
      json coeffs = json::array();
      for (const auto& c : zf.coefficients) coeffs.push_back(c.str());
      j["coefficients"] = coeffs;
      j["polynomial"] = poly::to_string(zf.coefficients);
      if (zf.removed_factor) {
        json rf;
        rf["factor"] = poly::to_string({1, -zf.removed_factor->coefficient});
        rf["orientation"] = to_string(zf.removed_factor->orientation);
        j["removed_factor"] = rf;
      } else {
        j["removed_factor"] = json();
      }
      j["slopes"] = slopes_json(newton_polygon(zf));
      try {
        const auto u = unit_root_of_zeta(zf, root_precision);
        json ur;
        ur["value"] = residue_str(u.residue);
        ur["precision"] = root_precision;
        j["unit_root"] = ur;
      } catch (const NoUnitRoot&) {
        j["unit_root"] = json();
      } catch (const MultipleUnitRoots&) {
        j["unit_root"] = json();
      }
      json hs = json::array();
      for (auto h : zf.h_values) hs.push_back(h);
      j["h_values"] = hs;
      j["completion"] = to_string(zf.completion);
      print(j);
    } else if (*eta) {
      const auto quot = EtaQuotient::parse(quotient);
      const auto e = eta_expand(quot, terms);
      json j;
      j["quotient"] = quot.to_string();
      j["terms"] = terms;
      j["coefficients"] = e.coefficients;
      print(j);
    } else if (*verify) {
      RunOptions opts;
      opts.pmax = pmax;
      opts.jobs = jobs;
      opts.work_cap = work_cap_from_env();
      opts.cancel = &g_cancel;
      opts.record_timings = timings;
      // test hook: perturb one alpha_r so the exit-code contract can be exercised end to end
      if (const char* bad = std::getenv("HYPERCONG_TEST_CORRUPT_ALPHA"); bad && *bad) {
        try {
          opts.sum_options.corrupt_alpha = std::stoull(bad);
        } catch (const std::exception&) {
          throw UsageError("HYPERCONG_TEST_CORRUPT_ALPHA must be a nonnegative integer");
        }
      }
      const auto ids = parse_claim_list(claims);
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      const auto res = run_sweep(ids, opts);
      std::ofstream out(out_path, std::ios::binary);
      if (!out) throw UsageError("cannot open '" + out_path + "' for writing");
      out << (format == "csv" ? report_csv(res, timings) : report_json(res, timings));
      out.close();
      if (!out) throw UsageError("failed writing '" + out_path + "'");

      std::cout << summary_json(res).dump(2) << "\n";
      if (!res.complete) std::cerr << "report is INCOMPLETE (cancelled)\n";
      const auto cx = res.counterexamples();
      if (!cx.empty()) {
        std::cerr << "== " << cx.size() << " conjecture/structure cell(s) did not hold ==\n";
        for (const auto* c : cx)
          std::cerr << "  " << to_string(c->claim) << " d=" << c->d << " p=" << c->p << " z=" << c->z
                    << " order=" << (c->observed_order ? std::to_string(*c->observed_order) : "-") << "\n";
      }
      for (const auto* c : res.violations())
        std::cerr << "VIOLATION " << to_string(c->claim) << " d=" << c->d << " p=" << c->p << " z=" << c->z
                  << ": " << c->lhs << " vs " << c->rhs << "\n";
      return res.exit_code;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    if (is_internal(e)) {
      std::cerr << "internal consistency failure: " << e.what() << "\n";
      return kExitInternal;
    }
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return 0;
}
