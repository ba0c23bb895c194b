// Command-line interface: direct evaluation of the Hilbert symbols, the
// cocycle sigma, the Kubota symbols, phi and the multiplier system, plus a
// seeded verification harness for the library-wide invariants.
#include <CLI11.hpp>
#include <json.hpp>

#include <complex>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "su21/analytic.hpp"
#include "su21/kubota.hpp"
#include "su21/oracle.hpp"

namespace {

using nlohmann::ordered_json;
using namespace su21;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, std::uint64_t index) {
  return splitmix64(master ^ splitmix64(index + 1));
}

long rand_in(std::mt19937_64& rng, long lo, long hi) {
  return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

long rand_nonzero(std::mt19937_64& rng, long lo, long hi) {
  long v = 0;
  while (v == 0) v = rand_in(rng, lo, hi);
  return v;
}

Rat rand_rat(std::mt19937_64& rng) {
  Rat r(rand_nonzero(rng, -30, 30), rand_in(rng, 1, 12));
  r.canonicalize();
  return r;
}

QuadNum rand_quad(std::mt19937_64& rng) {
  QuadNum x;
  while (x.is_zero()) x = QuadNum(Rat(rand_in(rng, -9, 9)), Rat(rand_in(rng, -9, 9)));
  return x;
}

std::string complex_str(const std::complex<double>& z) {
  char buf[96];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

struct Report {
  std::string suite;
  long trials = 0;
  std::vector<ordered_json> failures;

  void fail(ordered_json data) { failures.push_back(std::move(data)); }
};

std::vector<Place> standard_places() {
  std::vector<Place> ps{Place::Real(), Place::Finite(2), Place::Finite(3),
                        Place::Finite(5), Place::Finite(7)};
  if (field_d() != 7 && field_d() != 2 && field_d() != 3 && field_d() != 5)
    ps.push_back(Place::Finite(field_d()));
  return ps;
}

// --- verification suites -------------------------------------------------

Report verify_hilbert(std::uint64_t seed, long trials) {
  Report rep{"hilbert", trials, {}};
  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    // Oracle equivalence on integer arguments.
    Rat a(rand_nonzero(rng, -30, 30)), b(rand_nonzero(rng, -30, 30));
    long ps[] = {2, 3, 5, 7, 11};
    Place v = Place::Finite(ps[rng() % 5]);
    if (hilbert_k(a, b, v) != hilbert_via_conic(a, b, v))
      rep.fail({{"check", "conic-oracle"}, {"trial", t},
                {"a", rat_to_string(a)}, {"b", rat_to_string(b)},
                {"place", place_to_string(v)}});
    // Product formula over all places.
    Rat c = rand_rat(rng), e = rand_rat(rng);
    int prod = hilbert_k(c, e, Place::Real());
    std::vector<Int> support{2};
    for (const Rat* x : {&c, &e}) {
      for (const Int& q : prime_factors(x->get_num())) support.push_back(q);
      for (const Int& q : prime_factors(x->get_den())) support.push_back(q);
    }
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    for (const Int& q : support) prod *= hilbert_k(c, e, Place::Finite(q));
    if (prod != 1)
      rep.fail({{"check", "product-formula"}, {"trial", t},
                {"a", rat_to_string(c)}, {"b", rat_to_string(e)}});
  }
  return rep;
}

Report verify_cocycle(std::uint64_t seed, long trials) {
  Report rep{"cocycle", trials, {}};
  for (long t = 0; t < trials; ++t) {
    std::uint64_t s = trial_seed(seed, t);
    Mat3 g1 = random_group_element(s), g2 = random_group_element(s + 1),
         g3 = random_group_element(s + 2);
    std::mt19937_64 rng(s + 3);
    UnipotentParam up = {QuadNum(Rat(rand_in(rng, -3, 3)), Rat(rand_in(rng, -3, 3))),
                         QuadNum()};
    up.m = QuadNum(-norm(up.r) / 2, Rat(rand_in(rng, -3, 3)));
    Mat3 n = make_x_plus(up.r, up.m);
    for (const Place& v : standard_places()) {
      if (sigma(g1, g2, v) * sigma(g1 * g2, g3, v) !=
          sigma(g1, g2 * g3, v) * sigma(g2, g3, v))
        rep.fail({{"check", "cocycle-identity"}, {"trial", t},
                  {"place", place_to_string(v)}});
      if (sigma(g1, n, v) != 1)
        rep.fail({{"check", "unipotent-triviality"}, {"trial", t},
                  {"place", place_to_string(v)}});
    }
  }
  return rep;
}

Report verify_commutator(std::uint64_t seed, long trials) {
  Report rep{"commutator", trials, {}};
  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    QuadNum lambda = rand_quad(rng), mu = rand_quad(rng);
    for (long p : {3L, 5L, 11L, 13L}) {
      try {
        commutator_torus(lambda, mu, p);
      } catch (const InternalError&) {
        rep.fail({{"check", "torus-commutator"}, {"trial", t}, {"p", p},
                  {"lambda", quad_to_string(lambda)}, {"mu", quad_to_string(mu)}});
      }
    }
  }
  return rep;
}

Report verify_splitting(std::uint64_t seed, long trials) {
  Report rep{"splitting", trials, {}};
  long ps[] = {2, 3, 7, 11};
  for (long t = 0; t < trials; ++t) {
    std::uint64_t s = trial_seed(seed, t);
    long p = ps[t % 4];
    Mat3 a = random_gamma_p_element(s, p), b = random_gamma_p_element(s + 1, p);
    Int ip(p);
    if (kappa_p(a * b, ip) !=
        kappa_p(a, ip) * kappa_p(b, ip) * sigma(a, b, Place::Finite(ip)))
      rep.fail({{"check", "local-splitting"}, {"trial", t}, {"p", p}});
  }
  return rep;
}

Report verify_kubota_local(std::uint64_t seed, long trials) {
  Report rep{"kubota-local", trials, {}};
  for (long t = 0; t < trials; ++t) {
    Mat3 g = random_gamma_element(trial_seed(seed, t));
    std::vector<Int> sup = support_primes(g);
    for (long q : {31L, 37L, 41L, 43L}) {
      if (std::find(sup.begin(), sup.end(), Int(q)) != sup.end()) continue;
      if (kappa_p(g, Int(q)) != 1)
        rep.fail({{"check", "off-support-trivial"}, {"trial", t}, {"p", q}});
    }
  }
  return rep;
}

Report verify_kubota_global(std::uint64_t seed, long trials, long prime_bound) {
  Report rep{"kubota-global", trials, {}};
  for (long t = 0; t < trials; ++t) {
    std::uint64_t s = trial_seed(seed, t);
    Mat3 a = random_gamma_element(s), b = random_gamma_element(s + 1);
    if (sigma(a, b, Place::Real()) !=
        kappa_global(a) * kappa_global(b) * kappa_global(a * b))
      rep.fail({{"check", "global-coboundary"}, {"trial", t}});
    // Support stability: enlarging the prime set never changes kappa.
    std::vector<Int> sup = support_primes(a);
    int base = 1, wide = 1;
    for (const Int& q : sup) base *= kappa_p(a, q);
    for (Int q(2); q < prime_bound; mpz_nextprime(q.get_mpz_t(), q.get_mpz_t()))
      if (std::find(sup.begin(), sup.end(), q) == sup.end()) wide *= kappa_p(a, q);
    if (base * wide != base)
      rep.fail({{"check", "support-stability"}, {"trial", t}});
  }
  return rep;
}

Report verify_borel(std::uint64_t seed, long trials) {
  Report rep{"borel", trials, {}};
  QuadNum scale = QuadNum(Rat(8)) * theta();
  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    Mat3 g = identity3();
    int len = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < len; ++i) {
      QuadNum r = scale * QuadNum(Rat(rand_in(rng, -2, 2)), Rat(rand_in(rng, -2, 2)));
      QuadNum m(-norm(r) / 2, Rat(8 * rand_in(rng, -2, 2)));
      g = g * make_x_plus(r, m);
    }
    if (kappa_global(g) != kappa_borel_closed_form(g(0, 0)))
      rep.fail({{"check", "borel-closed-form"}, {"trial", t}});
  }
  return rep;
}

Report verify_sl2(std::uint64_t seed, long trials) {
  Report rep{"sl2", trials, {}};
  for (long t = 0; t < trials; ++t) {
    SL2Mat m = random_congruence_sl2(trial_seed(seed, t));
    try {
      kappa_sl2(m.a, m.b, m.c, m.d);
    } catch (const InternalError&) {
      rep.fail({{"check", "sl2-restriction"}, {"trial", t},
                {"c", rat_to_string(m.c)}, {"d", rat_to_string(m.d)}});
    }
  }
  return rep;
}

Report verify_torus_restriction(std::uint64_t seed, long trials) {
  Report rep{"torus-restriction", trials, {}};
  for (long t = 0; t < trials; ++t) {
    std::mt19937_64 rng(trial_seed(seed, t));
    QuadNum lambda = rand_quad(rng), mu = rand_quad(rng);
    if (rng() % 3 == 0) lambda = QuadNum(lambda.a == 0 ? Rat(1) : lambda.a);
    if (rng() % 3 == 0) mu = QuadNum(mu.a == 0 ? Rat(1) : mu.a);
    for (const Place& v : standard_places()) {
      if (sigma(make_h(lambda), make_h(mu), v) != sigma_torus(lambda, mu, v))
        rep.fail({{"check", "torus-restriction"}, {"trial", t},
                  {"lambda", quad_to_string(lambda)}, {"mu", quad_to_string(mu)},
                  {"place", place_to_string(v)}});
    }
  }
  return rep;
}

Report verify_multiplier(std::uint64_t seed, long trials) {
  Report rep{"multiplier", trials, {}};
  if (classify_prime(Int(2), field_d()) != SplitType::Split)
    throw DomainError("verify multiplier: 2 does not split for this d");
  for (long t = 0; t < trials; ++t) {
    std::uint64_t s = trial_seed(seed, t);
    Mat3 a = random_gamma_element(s), b = random_gamma_element(s + 1);
    Mat3 ab = a * b;
    // kappa is tau-independent: fix the three symbols once per trial and
    // vary only phi; the first sample still goes through multiplier_j.
    double ka = kappa_global(a), kb = kappa_global(b), kab = kappa_global(ab);
    for (int k = 0; k < 5; ++k) {
      HPoint tau = sample_tau(s + 2 + k);
      Complex lhs = (k == 0) ? multiplier_j(ab, tau) : kab * phi(ab, tau);
      Complex rhs = ka * phi(a, act(b, tau)) * kb * phi(b, tau);
      if (std::abs(lhs - rhs) > 1e-9 * (1.0 + std::abs(lhs)))
        rep.fail({{"check", "multiplier-functional-equation"}, {"trial", t},
                  {"tau-sample", k}});
      Complex dn = denom(ab, tau);
      if (std::abs(lhs * lhs - dn) > 1e-9 * (1.0 + std::abs(dn)))
        rep.fail({{"check", "multiplier-square-law"}, {"trial", t},
                  {"tau-sample", k}});
    }
  }
  return rep;
}

Report run_suite(const std::string& name, std::uint64_t seed, long trials,
                 long prime_bound) {
  if (name == "hilbert") return verify_hilbert(seed, trials);
  if (name == "cocycle") return verify_cocycle(seed, trials);
  if (name == "commutator") return verify_commutator(seed, trials);
  if (name == "splitting") return verify_splitting(seed, trials);
  if (name == "kubota-local") return verify_kubota_local(seed, trials);
  if (name == "kubota-global") return verify_kubota_global(seed, trials, prime_bound);
  if (name == "borel") return verify_borel(seed, trials);
  if (name == "sl2") return verify_sl2(seed, trials);
  if (name == "torus-restriction") return verify_torus_restriction(seed, trials);
  if (name == "multiplier") return verify_multiplier(seed, trials);
  throw DomainError("unknown suite: " + name);
}

// --- plumbing ------------------------------------------------------------

Mat3 load_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return mat_from_json(ss.str());
}

Place parse_place(const std::string& place, const std::string& p) {
  if (!p.empty()) return Place::Finite(Int(p));
  if (place == "real" || place.empty()) return Place::Real();
  throw DomainError("unknown place: " + place);
}

HPoint parse_tau(const std::string& text) {
  double v[4];
  char c;
  std::istringstream ss(text);
  for (int i = 0; i < 4; ++i) {
    if (!(ss >> v[i])) throw DomainError("tau: expected four decimals");
    if (i < 3 && !(ss >> c && c == ',')) throw DomainError("tau: expected commas");
  }
  HPoint tau{{v[0], v[1]}, {v[2], v[3]}};
  if (!in_domain(tau)) throw DomainError("tau is outside the domain");
  return tau;
}

void emit(bool json_mode, const ordered_json& record,
          const std::string& text_value) {
  if (json_mode)
    std::cout << record.dump() << "\n";
  else
    std::cout << text_value << "\n";
}

bool is_square_free(long d) {
  for (long q = 2; q * q <= d; ++q)
    if (d % (q * q) == 0) return false;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metaplectic double cover of SU(2,1): cocycles, Kubota "
               "symbols, and the weight-1/2 multiplier system"};
  app.require_subcommand(1);
  app.fallthrough();

  long d = 7;
  bool json_mode = false;
  std::uint64_t seed = 0;
  long trials = 100, prime_bound = 50;
  std::string p_flag, place_flag, tau_flag = "-1,0,0,0";
  app.add_option("--d", d, "Square-free positive d with theta^2 = -d");
  app.add_flag("--json", json_mode, "JSON output");

  std::string ha, hb;
  CLI::App* hilbert = app.add_subcommand("hilbert", "Rational Hilbert symbol");
  hilbert->add_option("a", ha)->required();
  hilbert->add_option("b", hb)->required();
  hilbert->add_option("--p", p_flag, "Finite place");
  hilbert->add_option("--place", place_flag, "'real'");

  std::string cp;
  CLI::App* classify = app.add_subcommand("classify", "Split type of a prime");
  classify->add_option("p", cp)->required();

  std::string f1, f2;
  bool all_places = false;
  CLI::App* sig = app.add_subcommand("sigma", "Cocycle sigma(g1, g2)");
  sig->add_option("g1", f1, "matrix JSON file")->required();
  sig->add_option("g2", f2, "matrix JSON file")->required();
  sig->add_option("--p", p_flag, "Finite place");
  sig->add_option("--place", place_flag, "'real'");
  sig->add_flag("--all", all_places, "All places in the support");

  CLI::App* kl = app.add_subcommand("kappa-local", "Local Kubota symbol");
  kl->add_option("g", f1, "matrix JSON file")->required();
  kl->add_option("--p", p_flag, "Finite place")->required();

  CLI::App* kg = app.add_subcommand("kappa-global", "Global Kubota symbol");
  kg->add_option("g", f1, "matrix JSON file")->required();

  CLI::App* ph = app.add_subcommand("phi", "Square-root section phi_g(tau)");
  ph->add_option("g", f1, "matrix JSON file")->required();
  ph->add_option("--tau", tau_flag, "Re t1,Im t1,Re t2,Im t2");

  CLI::App* mj = app.add_subcommand("multiplier", "Multiplier j(gamma, tau)");
  mj->add_option("g", f1, "matrix JSON file")->required();
  mj->add_option("--tau", tau_flag, "Re t1,Im t1,Re t2,Im t2");

  std::string suite;
  CLI::App* verify = app.add_subcommand("verify", "Seeded invariant suites");
  verify->add_option("suite", suite)
      ->required()
      ->check(CLI::IsMember({"hilbert", "cocycle", "commutator", "splitting",
                             "kubota-local", "kubota-global", "borel", "sl2",
                             "torus-restriction", "multiplier", "all"}));
  verify->add_option("--seed", seed, "Master seed");
  verify->add_option("--trials", trials, "Trials per suite");
  verify->add_option("--prime-bound", prime_bound,
                     "Extra primes tried for support stability");

  for (CLI::App* s : app.get_subcommands([](const CLI::App*) { return true; }))
    s->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (d <= 0 || !is_square_free(d)) throw DomainError("d must be square-free positive");
    set_field_d(d);

    if (*hilbert) {
      Rat a = rat_from_string(ha), b = rat_from_string(hb);
      Place v = parse_place(place_flag, p_flag);
      int val = hilbert_k(a, b, v);
      emit(json_mode,
           {{"value", val},
            {"place", place_to_string(v)},
            {"inputs", {{"a", rat_to_string(a)}, {"b", rat_to_string(b)}, {"d", d}}}},
           std::to_string(val));
    } else if (*classify) {
      SplitType st = classify_prime(Int(cp), d);
      std::string name = st == SplitType::Split    ? "split"
                         : st == SplitType::Inert  ? "inert"
                                                   : "ramified";
      emit(json_mode, {{"value", name}, {"inputs", {{"p", cp}, {"d", d}}}}, name);
    } else if (*sig) {
      Mat3 g1 = load_matrix(f1), g2 = load_matrix(f2);
      if (all_places) {
        ordered_json values = ordered_json::object();
        std::string text;
        for (const auto& [v, s] : sigma_all_places(g1, g2)) {
          values[place_to_string(v)] = s;
          text += place_to_string(v) + ": " + std::to_string(s) + "\n";
        }
        if (!text.empty()) text.pop_back();
        emit(json_mode, {{"value", values}, {"place", "all"},
                         {"inputs", {{"g1", f1}, {"g2", f2}, {"d", d}}}},
             text);
      } else {
        Place v = parse_place(place_flag, p_flag);
        int val = sigma(g1, g2, v);
        emit(json_mode, {{"value", val}, {"place", place_to_string(v)},
                         {"inputs", {{"g1", f1}, {"g2", f2}, {"d", d}}}},
             std::to_string(val));
      }
    } else if (*kl) {
      int val = kappa_p(load_matrix(f1), Int(p_flag));
      emit(json_mode, {{"value", val}, {"place", p_flag},
                       {"inputs", {{"g", f1}, {"d", d}}}},
           std::to_string(val));
    } else if (*kg) {
      int val = kappa_global(load_matrix(f1));
      emit(json_mode, {{"value", val}, {"place", "global"},
                       {"inputs", {{"g", f1}, {"d", d}}}},
           std::to_string(val));
    } else if (*ph) {
      std::string val = complex_str(phi(load_matrix(f1), parse_tau(tau_flag)));
      emit(json_mode, {{"value", val},
                       {"inputs", {{"g", f1}, {"tau", tau_flag}, {"d", d}}}},
           val);
    } else if (*mj) {
      std::string val =
          complex_str(multiplier_j(load_matrix(f1), parse_tau(tau_flag)));
      emit(json_mode, {{"value", val},
                       {"inputs", {{"g", f1}, {"tau", tau_flag}, {"d", d}}}},
           val);
    } else if (*verify) {
      std::vector<std::string> names;
      if (suite == "all")
        names = {"hilbert", "cocycle", "commutator", "splitting", "kubota-local",
                 "kubota-global", "borel", "sl2", "torus-restriction", "multiplier"};
      else
        names = {suite};
      bool any_failed = false;
      ordered_json reports = ordered_json::array();
      for (const std::string& name : names) {
        Report rep = run_suite(name, seed, trials, prime_bound);
        any_failed = any_failed || !rep.failures.empty();
        ordered_json jr = {{"suite", rep.suite},
                           {"trials", rep.trials},
                           {"seed", seed},
                           {"failures", rep.failures}};
        reports.push_back(jr);
        if (!json_mode)
          std::cout << rep.suite << ": " << rep.trials << " trials, "
                    << rep.failures.size() << " failures\n";
      }
      if (json_mode) std::cout << reports.dump() << "\n";
      return any_failed ? 1 : 0;
    }
  } catch (const InternalError& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
