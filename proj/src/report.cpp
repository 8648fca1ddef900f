#include "qbm/report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "qbm/characters.hpp"
#include "qbm/error.hpp"
#include "qbm/integral.hpp"
#include "qbm/measure.hpp"
#include "qbm/qbernoulli.hpp"

namespace qbm {

using json = nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  throw Error(ErrorCode::Config, "invalid config field '" + field + "': " + what);
}

long parse_long(const std::string& field, std::string_view s) {
  long v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) config_error(field, "'" + std::string(s) + "' is not an integer");
  return v;
}

/// "1..3", "2,3,5", "0..2,7" or a bare integer.
std::vector<long> parse_range(const std::string& field, const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    tok.erase(std::remove_if(tok.begin(), tok.end(), ::isspace), tok.end());
    if (tok.empty()) config_error(field, "empty entry in '" + text + "'");
    auto dots = tok.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_long(field, tok));
      continue;
    }
    long lo = parse_long(field, std::string_view(tok).substr(0, dots));
    long hi = parse_long(field, std::string_view(tok).substr(dots + 2));
    if (hi < lo) config_error(field, "empty range '" + tok + "'");
    if (hi - lo > 100000) config_error(field, "range '" + tok + "' is too long");
    for (long v = lo; v <= hi; ++v) out.push_back(v);
  }
  if (out.empty()) config_error(field, "empty list");
  return out;
}

std::vector<long> long_list(const json& cfg, const std::string& field, const std::string& fallback) {
  if (!cfg.contains(field)) return parse_range(field, fallback);
  const json& v = cfg.at(field);
  if (v.is_number_integer()) return {v.get<long>()};
  if (v.is_string()) return parse_range(field, v.get<std::string>());
  if (v.is_array()) {
    std::vector<long> out;
    for (const auto& e : v) {
      if (!e.is_number_integer()) config_error(field, "array entries must be integers");
      out.push_back(e.get<long>());
    }
    if (out.empty()) config_error(field, "empty list");
    return out;
  }
  config_error(field, "expected an integer, a range string or an array");
}

long single_long(const json& cfg, const std::string& field, long fallback) {
  if (!cfg.contains(field)) return fallback;
  const json& v = cfg.at(field);
  if (v.is_number_integer()) return v.get<long>();
  if (v.is_string()) return parse_long(field, v.get<std::string>());
  config_error(field, "expected an integer");
}

std::string single_string(const json& cfg, const std::string& field, const std::string& fallback) {
  if (!cfg.contains(field)) return fallback;
  if (!cfg.at(field).is_string()) config_error(field, "expected a string");
  return cfg.at(field).get<std::string>();
}

std::vector<std::string> string_list(const json& cfg, const std::string& field) {
  std::vector<std::string> out;
  if (!cfg.contains(field)) return out;
  const json& v = cfg.at(field);
  if (v.is_string()) return {v.get<std::string>()};
  if (!v.is_array()) config_error(field, "expected a string or an array of strings");
  for (const auto& e : v) {
    if (!e.is_string()) config_error(field, "array entries must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

long env_long(const char* name, long fallback) {
  const char* v = std::getenv(name);
  if (v == nullptr || *v == '\0') return fallback;
  return parse_long(name, v);
}

void require_each(const std::string& field, const std::vector<long>& v, const std::function<bool(long)>& ok,
                  const std::string& what) {
  for (long x : v)
    if (!ok(x)) config_error(field, std::to_string(x) + " " + what);
}

void require_primes(const std::vector<long>& ps) {
  require_each("p", ps, [](long p) { return p >= 2 && p < 1000 && is_prime(p); }, "is not a prime below 1000");
}

bool coprime(long a, long b) { return std::gcd(a, b) == 1; }

// ---------------------------------------------------------------------------
// characters

std::vector<DirichletChar> resolve_characters(const json& cfg, const std::string& fallback) {
  std::vector<DirichletChar> out;
  std::vector<std::string> specs = string_list(cfg, "chi");
  if (specs.empty() && !cfg.contains("chi_table") && !fallback.empty()) specs.push_back(fallback);
  for (const auto& s : specs) {
    auto colon = s.find(':');
    if (colon == std::string::npos) config_error("chi", "'" + s + "' is not of the form d:j or d:*");
    long d = parse_long("chi", std::string_view(s).substr(0, colon));
    if (d < 1 || d > 10000) config_error("chi", "modulus " + std::to_string(d) + " out of range 1..10000");
    std::string j = s.substr(colon + 1);
    if (j == "*") {
      for (auto& c : enumerate_characters(d)) out.push_back(std::move(c));
      continue;
    }
    long idx = parse_long("chi", j);
    if (idx < 0 || idx >= static_cast<long>(totient(static_cast<unsigned>(d))))
      config_error("chi", "index " + j + " out of range for modulus " + std::to_string(d));
    out.push_back(dirichlet_character(d, idx));
  }
  for (const auto& s : string_list(cfg, "chi_table")) {
    auto colon = s.find(':');
    if (colon == std::string::npos) config_error("chi_table", "'" + s + "' is not of the form d:e1,e2,...");
    long d = parse_long("chi_table", std::string_view(s).substr(0, colon));
    if (d < 1 || d > 10000) config_error("chi_table", "modulus out of range 1..10000");
    std::vector<long> exps;
    if (colon + 1 < s.size()) exps = parse_range("chi_table", s.substr(colon + 1));
    try {
      out.emplace_back(d, exps);
    } catch (const Error& e) {
      config_error("chi_table", e.what());
    }
  }
  return out;
}

json character_json(const DirichletChar& chi) {
  json values = json::array();
  for (long a = 0; a < chi.modulus(); ++a) {
    long e = chi.exponent(a);
    values.push_back(e < 0 ? json(nullptr) : json(e));
  }
  return {{"label", chi.label()},
          {"modulus", chi.modulus()},
          {"order", chi.order()},
          {"conductor", chi.conductor()},
          {"primitive", chi.is_primitive()},
          {"generator_exponents", chi.generator_exponents()},
          {"values", values}};
}

// ---------------------------------------------------------------------------
// rendering

json padic_json(const PAdic& x) {
  json j{{"p", x.p()}, {"value", x.value().get_str()}, {"digits", x.digits()}};
  j["prec"] = x.is_exact() ? json(nullptr) : json(x.prec());
  return j;
}

std::string render(const CycPAdic& x) {
  if (x.coords().size() == 1) return x.coords()[0].digits();
  std::string s = "[";
  for (std::size_t i = 0; i < x.coords().size(); ++i) {
    if (i > 0) s += "; ";
    s += x.coords()[i].digits();
  }
  return s + "]";
}

json valuation_json(const std::optional<long>& v) { return v ? json(*v) : json("inf"); }

std::string rational_str(const Rational& r) { return r.get_str(); }

// ---------------------------------------------------------------------------
// worker pool

long worker_count(const json& cfg) {
  long w = single_long(cfg, "workers", env_long("QBM_WORKERS", 0));
  if (w < 0) config_error("workers", "must be >= 0");
  if (w == 0) w = std::max(1u, std::thread::hardware_concurrency());
  return std::min<long>(w, 64);
}

/// Runs f(i) for i < n on a pool; results land at their grid index.
std::vector<json> parallel_cases(std::size_t n, long workers, const std::function<json(std::size_t)>& f) {
  std::vector<json> out(n);
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i = next++; i < n; i = next++) out[i] = f(i);
  };
  const auto threads = static_cast<std::size_t>(std::min<long>(workers, static_cast<long>(n)));
  if (threads <= 1) {
    body();
    return out;
  }
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  return out;
}

// ---------------------------------------------------------------------------
// verification cases

json case_result(const std::string& check, json params) {
  return {{"check", check}, {"params", std::move(params)}, {"status", "exact-zero"}, {"witness", ""},
          {"level_valuations", json::array()}};
}

void fail(json& r, const std::string& witness) {
  if (r["status"] != "FAIL") {
    r["status"] = "FAIL";
    r["witness"] = witness;
  }
}

void symbolic(json& r, const FieldElem& diff) {
  if (!diff.is_zero()) fail(r, diff.to_string());
}

/// Wraps a case so library errors become FAIL entries instead of aborting the run.
json guarded(const std::string& check, const json& params, const std::function<void(json&)>& body) {
  json r = case_result(check, params);
  try {
    body(r);
  } catch (const Error& e) {
    r["status"] = "FAIL";
    r["witness"] = std::string("error ") + error_code_name(e.code()) + ": " + e.what();
  }
  return r;
}

struct Suite {
  json grid;
  std::vector<std::function<json()>> cases;
};

QPoint base_point(const json& cfg, long p) {
  std::string q = single_string(cfg, "q", "auto");
  if (q == "auto") q = (p == 2) ? "1+4" : "1+p";
  try {
    return QPoint::parse(p, q);
  } catch (const Error& e) {
    config_error("q", e.what());
  }
}

long precision(const json& cfg, long fallback) {
  long prec = single_long(cfg, "prec", env_long("QBM_PRECISION", fallback));
  if (prec < 1 || prec > 10000) config_error("prec", "must be in 1..10000");
  return prec;
}

std::string backend(const json& cfg) {
  std::string b = single_string(cfg, "backend", "symbolic");
  if (b != "symbolic" && b != "padic") config_error("backend", "must be symbolic or padic");
  return b;
}

json chi_labels(const std::vector<DirichletChar>& chis) {
  json a = json::array();
  for (const auto& c : chis) a.push_back(c.label());
  return a;
}

Suite suite_distribution(const json& cfg) {
  Suite s;
  auto alpha = long_list(cfg, "alpha", "1");
  auto n = long_list(cfg, "n", "0..3");
  auto d = long_list(cfg, "d", "1..3");
  auto x = long_list(cfg, "x", "0");
  long samples = single_long(cfg, "samples", 0);
  auto seed = static_cast<std::uint64_t>(single_long(cfg, "seed", 0));
  require_each("alpha", alpha, [](long v) { return v >= 1 && v <= 50; }, "is not in 1..50");
  require_each("n", n, [](long v) { return v >= 0 && v <= 60; }, "is not in 0..60");
  require_each("d", d, [](long v) { return v >= 1 && v <= 50; }, "is not in 1..50");
  require_each("x", x, [](long v) { return v >= 0 && v <= 100; }, "is not in 0..100");
  if (samples < 0 || samples > 10000) config_error("samples", "must be in 0..10000");
  s.grid = {{"alpha", alpha}, {"n", n}, {"d", d}, {"x", x}, {"samples", samples}, {"seed", seed}};
  std::vector<std::array<long, 4>> pts;
  for (long a : alpha)
    for (long nn : n)
      for (long dd : d)
        for (long xx : x) pts.push_back({a, nn, dd, xx});
  // randomized sweep from a wider box, reproducible from the seed
  std::mt19937_64 rng(seed);
  auto draw = [&](long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); };
  for (long i = 0; i < samples; ++i) pts.push_back({draw(1, 4), draw(0, 8), draw(1, 6), draw(0, 8)});
  for (const auto& pt : pts) {
    s.cases.emplace_back([pt] {
      json params{{"alpha", pt[0]}, {"n", pt[1]}, {"d", pt[2]}, {"x", pt[3]}};
      return guarded("distribution", params, [&](json& r) { symbolic(r, distribution_check(pt[0], pt[1], pt[2], pt[3])); });
    });
  }
  return s;
}

Suite suite_additivity(const json& cfg) {
  Suite s;
  auto p = long_list(cfg, "p", "2,3");
  auto d = long_list(cfg, "d", "1");
  auto levels = long_list(cfg, "levels", "0,1");
  auto k = long_list(cfg, "k", "0..2");
  auto alpha = long_list(cfg, "alpha", "1");
  const std::string be = backend(cfg);
  const long prec = precision(cfg, 20);
  require_primes(p);
  require_each("d", d, [](long v) { return v >= 1 && v <= 50; }, "is not in 1..50");
  require_each("levels", levels, [](long v) { return v >= 0 && v <= 6; }, "is not in 0..6");
  require_each("k", k, [](long v) { return v >= 0 && v <= 30; }, "is not in 0..30");
  require_each("alpha", alpha, [](long v) { return v >= 1 && v <= 20; }, "is not in 1..20");
  for (long pp : p)
    for (long dd : d)
      if (!coprime(dd, pp)) config_error("d", "d = " + std::to_string(dd) + " is not coprime to p = " + std::to_string(pp));
  s.grid = {{"p", p}, {"d", d}, {"levels", levels}, {"k", k}, {"alpha", alpha}, {"backend", be}};
  if (be == "padic") {
    json qs = json::object();
    for (long pp : p) qs[std::to_string(pp)] = base_point(cfg, pp).value().value().get_str();
    s.grid["q"] = qs;
    s.grid["prec"] = prec;
  }
  for (long pp : p)
    for (long dd : d)
      for (long N : levels)
        for (long kk : k)
          for (long a : alpha) {
            s.cases.emplace_back([=, &cfg] {
              json params{{"p", pp}, {"d", dd}, {"N", N}, {"k", kk}, {"alpha", a}};
              return guarded("additivity", params, [&](json& r) {
                long M = dd;
                for (long i = 0; i < N; ++i) M *= pp;
                std::optional<QPoint> q;
                if (be == "padic") q = base_point(cfg, pp);
                for (long ball = 0; ball < M; ++ball) {
                  Ball parent(dd, pp, N, ball);
                  if (!q) {
                    FieldElem diff = additivity_check({kk, a}, parent);
                    if (!diff.is_zero()) fail(r, "a = " + std::to_string(ball) + ": " + diff.to_string());
                    continue;
                  }
                  // divisions cost digits: start with slack, double while the
                  // difference is zero but not yet certified to prec
                  std::optional<PAdic> diff;
                  for (long w = prec + 10; w <= 4 * (prec + 10); w *= 2) {
                    diff = additivity_check_padic({kk, a}, parent, *q, w);
                    if (diff->certified_valuation() >= prec || !diff->is_zero()) break;
                  }
                  if (diff->certified_valuation() < prec)
                    fail(r, "a = " + std::to_string(ball) + ": " + diff->digits());
                  else if (r["status"] != "FAIL")
                    r["status"] = "zero-to-precision";
                }
              });
            });
          }
  return s;
}

Suite suite_theorem2(const json& cfg) {
  Suite s;
  auto p = long_list(cfg, "p", "2,3");
  auto levels = long_list(cfg, "levels", "0,1");
  auto k = long_list(cfg, "k", "0..2");
  auto alpha = long_list(cfg, "alpha", "1");
  const std::string cand = single_string(cfg, "candidate", "weighted");
  if (cand != "weighted" && cand != "constant") config_error("candidate", "must be weighted or constant");
  require_primes(p);
  require_each("levels", levels, [](long v) { return v >= 0 && v <= 4; }, "is not in 0..4");
  require_each("k", k, [](long v) { return v >= 0 && v <= 30; }, "is not in 0..30");
  require_each("alpha", alpha, [](long v) { return v >= 1 && v <= 20; }, "is not in 1..20");
  s.grid = {{"p", p}, {"levels", levels}, {"k", k}, {"alpha", alpha}, {"candidate", cand}};
  for (long pp : p)
    for (long N : levels)
      for (long kk : k)
        for (long a : alpha) {
          s.cases.emplace_back([=] {
            json params{{"p", pp}, {"N", N}, {"k", kk}, {"alpha", a}, {"candidate", cand}};
            return guarded("theorem2", params, [&](json& r) {
              const SeedFunction f = cand == "weighted" ? weighted_beta_seed() : constant_seed();
              long P = 1;
              for (long i = 0; i < N; ++i) P *= pp;
              for (long res = 0; res < P; ++res) {
                FieldElem diff = theorem2_criterion({kk, a}, f, pp, N, res);
                if (!diff.is_zero()) fail(r, "a = " + std::to_string(res) + ": " + diff.to_string());
              }
            });
          });
        }
  return s;
}

Suite suite_mass(const json& cfg) {
  Suite s;
  auto p = long_list(cfg, "p", "3");
  auto d = long_list(cfg, "d", "1");
  auto levels = long_list(cfg, "levels", "0..2");
  auto k = long_list(cfg, "k", "0..2");
  auto alpha = long_list(cfg, "alpha", "1");
  const long prec = precision(cfg, 20);
  require_primes(p);
  require_each("d", d, [](long v) { return v >= 1 && v <= 50; }, "is not in 1..50");
  require_each("levels", levels, [](long v) { return v >= 0 && v <= 6; }, "is not in 0..6");
  require_each("k", k, [](long v) { return v >= 0 && v <= 30; }, "is not in 0..30");
  require_each("alpha", alpha, [](long v) { return v >= 1 && v <= 20; }, "is not in 1..20");
  for (long pp : p)
    for (long dd : d)
      if (!coprime(dd, pp)) config_error("d", "d = " + std::to_string(dd) + " is not coprime to p = " + std::to_string(pp));
  json qs = json::object();
  for (long pp : p) qs[std::to_string(pp)] = base_point(cfg, pp).value().value().get_str();
  s.grid = {{"p", p}, {"d", d}, {"levels", levels}, {"k", k}, {"alpha", alpha}, {"q", qs}, {"prec", prec}};
  const long n_max = *std::max_element(levels.begin(), levels.end());
  const std::set<long> wanted(levels.begin(), levels.end());
  for (long pp : p)
    for (long dd : d)
      for (long kk : k)
        for (long a : alpha) {
          s.cases.emplace_back([=, &cfg] {
            json params{{"p", pp}, {"d", dd}, {"k", kk}, {"alpha", a}};
            return guarded("mass", params, [&](json& r) {
              TotalMass t = total_mass({kk, a}, dd, pp, n_max, base_point(cfg, pp), prec);
              for (const auto& l : t.levels) {
                if (!wanted.count(l.N)) continue;
                if (!l.exact) fail(r, "N = " + std::to_string(l.N) + ": " + l.witness);
                r["level_valuations"].push_back(valuation_json(l.valuation));
              }
            });
          });
        }
  return s;
}

void require_chi_coprime(const std::vector<DirichletChar>& chis, const std::vector<long>& p) {
  for (const auto& c : chis)
    for (long pp : p)
      if (!coprime(c.modulus(), pp))
        config_error("chi", "modulus of " + c.label() + " is not coprime to p = " + std::to_string(pp));
}

Suite suite_theorem5(const json& cfg) {
  Suite s;
  auto chis = resolve_characters(cfg, "4:1");
  auto p = long_list(cfg, "p", "3");
  auto levels = long_list(cfg, "levels", "0,1");
  auto k = long_list(cfg, "k", "0..2");
  auto alpha = long_list(cfg, "alpha", "1");
  require_primes(p);
  require_chi_coprime(chis, p);
  require_each("levels", levels, [](long v) { return v >= 0 && v <= 4; }, "is not in 0..4");
  require_each("k", k, [](long v) { return v >= 0 && v <= 20; }, "is not in 0..20");
  require_each("alpha", alpha, [](long v) { return v >= 1 && v <= 10; }, "is not in 1..10");
  s.grid = {{"chi", chi_labels(chis)}, {"p", p}, {"levels", levels}, {"k", k}, {"alpha", alpha}};
  for (const auto& chi : chis)
    for (long pp : p)
      for (long kk : k)
        for (long a : alpha) {
          s.cases.emplace_back([=] {
            json params{{"chi", chi.label()}, {"p", pp}, {"k", kk}, {"alpha", a}};
            return guarded("theorem5", params, [&](json& r) {
              const MeasureParams mp{kk, a};
              // the X integral is the generalized number
              symbolic(r, integral_char_X(chi, mp) - generalized_beta(chi, a, kk));
              const LazyField x_closed(integral_char_X(chi, mp));
              const LazyField px_closed = integral_char_pX_lazy(chi, mp, pp);
              for (long N : levels) {
                FieldElem dx = difference(integral_char_X_level(chi, mp, pp, N), x_closed);
                if (!dx.is_zero()) fail(r, "X, N = " + std::to_string(N) + ": " + dx.to_string());
                FieldElem dp = difference(integral_char_pX_level(chi, mp, pp, N), px_closed);
                if (!dp.is_zero()) fail(r, "pX, N = " + std::to_string(N) + ": " + dp.to_string());
              }
            });
          });
        }
  return s;
}

Suite suite_composition(const json& cfg) {
  Suite s;
  auto chis = resolve_characters(cfg, "4:1");
  auto x = long_list(cfg, "x", "2,3");
  auto y = cfg.contains("y") ? long_list(cfg, "y", "") : x;
  auto k = long_list(cfg, "k", "0..2");
  auto alpha = long_list(cfg, "alpha", "1");
  require_each("x", x, [](long v) { return v >= 1 && v <= 20; }, "is not in 1..20");
  require_each("y", y, [](long v) { return v >= 1 && v <= 20; }, "is not in 1..20");
  require_each("k", k, [](long v) { return v >= 0 && v <= 10; }, "is not in 0..10");
  require_each("alpha", alpha, [](long v) { return v >= 1 && v <= 10; }, "is not in 1..10");
  s.grid = {{"chi", chi_labels(chis)}, {"x", x}, {"y", y}, {"k", k}, {"alpha", alpha}};
  for (const auto& chi : chis)
    for (long kk : k)
      for (long a : alpha)
        for (long xx : x)
          for (long yy : y) {
            s.cases.emplace_back([=] {
              json params{{"chi", chi.label()}, {"k", kk}, {"alpha", a}, {"x", xx}, {"y", yy}};
              return guarded("composition", params,
                             [&](json& r) { symbolic(r, composition_check(chi, {kk, a}, xx, yy)); });
            });
          }
  return s;
}

Suite suite_eq22(const json& cfg) {
  Suite s;
  auto chis = resolve_characters(cfg, "4:1");
  auto p = long_list(cfg, "p", "3");
  auto beta = long_list(cfg, "beta", "5");
  auto k = long_list(cfg, "k", "0..2");
  auto alpha = long_list(cfg, "alpha", "1");
  const long prec = precision(cfg, 12);
  const long working = single_long(cfg, "working_prec", 0);
  if (working < 0 || working > 100000) config_error("working_prec", "must be in 0..100000");
  require_primes(p);
  require_chi_coprime(chis, p);
  require_each("k", k, [](long v) { return v >= 0 && v <= 10; }, "is not in 0..10");
  require_each("alpha", alpha, [](long v) { return v >= 1 && v <= 10; }, "is not in 1..10");
  require_each("beta", beta, [](long v) { return v >= 2 && v <= 1000; }, "is not in 2..1000");
  for (long b : beta) {
    for (long pp : p)
      if (!coprime(b, pp)) config_error("beta", std::to_string(b) + " is not coprime to p = " + std::to_string(pp));
    for (const auto& c : chis)
      if (!coprime(b, c.modulus()))
        config_error("beta", std::to_string(b) + " is not invertible modulo " + std::to_string(c.modulus()));
  }
  json qs = json::object();
  for (long pp : p) qs[std::to_string(pp)] = base_point(cfg, pp).value().value().get_str();
  s.grid = {{"chi", chi_labels(chis)}, {"p", p}, {"beta", beta}, {"k", k}, {"alpha", alpha}, {"q", qs},
            {"prec", prec},        {"working_prec", working}};
  for (const auto& chi : chis)
    for (long pp : p)
      for (long b : beta)
        for (long kk : k)
          for (long a : alpha) {
            s.cases.emplace_back([=, &cfg] {
              json params{{"chi", chi.label()}, {"p", pp}, {"beta", b}, {"k", kk}, {"alpha", a}};
              return guarded("eq22", params, [&](json& r) {
                Eq22Result e = eq22_check(chi, {kk, a}, b, pp, base_point(cfg, pp), prec, working);
                r["level_valuations"].push_back(e.certified_valuation);
                r["working_precision"] = e.working_precision;
                json coords = json::array();
                for (const auto& c : e.difference.coords()) coords.push_back(padic_json(c));
                r["difference"] = coords;
                if (e.certified_valuation >= prec)
                  r["status"] = "zero-to-precision";
                else
                  fail(r, render(e.difference));
              });
            });
          }
  return s;
}

// ---------------------------------------------------------------------------
// output

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string scalar_str(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

std::string params_str(const json& params) {
  std::string s;
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (!s.empty()) s += ";";
    s += it.key() + "=" + scalar_str(*it);
  }
  return s;
}

std::string format_output(const json& report, const std::string& format) {
  if (format == "json") return report.dump(2) + "\n";
  std::ostringstream os;
  const std::string cmd = report["command"];
  if (cmd == "table") {
    os << "family,param,n,x,chi,value,limit,error\n";
    for (const auto& r : report["rows"])
      os << csv_field(r["family"]) << "," << scalar_str(r.value("param", json())) << "," << r["n"].dump() << ","
         << scalar_str(r.value("x", json())) << "," << scalar_str(r.value("chi", json())) << ","
         << csv_field(scalar_str(r["value"])) << "," << csv_field(scalar_str(r["limit"])) << ","
         << scalar_str(r.value("error", json())) << "\n";
  } else if (cmd == "verify") {
    os << "check,params,status,witness,level_valuations\n";
    for (const auto& r : report["cases"]) {
      std::string lv;
      for (const auto& v : r["level_valuations"]) lv += (lv.empty() ? "" : " ") + scalar_str(v);
      os << r["check"].get<std::string>() << "," << csv_field(params_str(r["params"])) << ","
         << r["status"].get<std::string>() << "," << csv_field(r["witness"]) << "," << lv << "\n";
    }
  } else {
    os << "p,alpha,n,shift,N,S_N,valuation\n";
    for (const auto& c : report["cases"]) {
      const auto& pr = c["params"];
      for (const auto& l : c["levels"])
        os << pr["p"].dump() << "," << pr["alpha"].dump() << "," << pr["n"].dump() << "," << pr["shift"].dump() << ","
           << l["N"].dump() << "," << l["sum"].get<std::string>() << "," << scalar_str(l["valuation"]) << "\n";
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// commands

RunResult cmd_verify(const json& cfg, json report) {
  const std::string suite = single_string(cfg, "suite", "");
  static const std::map<std::string, std::function<Suite(const json&)>> suites{
      {"distribution", suite_distribution}, {"additivity", suite_additivity},   {"theorem2", suite_theorem2},
      {"mass", suite_mass},                 {"theorem5", suite_theorem5},       {"composition", suite_composition},
      {"eq22", suite_eq22}};
  auto it = suites.find(suite);
  if (it == suites.end())
    config_error("suite", "'" + suite + "' is not one of distribution, additivity, theorem2, mass, theorem5, "
                                        "composition, eq22");
  Suite s = it->second(cfg);
  const long workers = worker_count(cfg);
  std::vector<json> cases = parallel_cases(s.cases.size(), workers, [&](std::size_t i) { return s.cases[i](); });
  report["suite"] = suite;
  report["grid"] = s.grid;
  long failed = 0;
  json first = nullptr;
  for (const auto& c : cases) {
    if (c["status"] == "FAIL") {
      if (failed == 0) first = c;
      ++failed;
    }
  }
  report["cases"] = cases;
  report["summary"] = {{"total", cases.size()}, {"failed", failed}, {"passed", static_cast<long>(cases.size()) - failed}};
  report["first_failure"] = first;
  const int code = failed == 0 ? 0 : 1;
  report["exit_code"] = code;
  return {code, format_output(report, single_string(cfg, "format", "json"))};
}

RunResult cmd_table(const json& cfg, json report) {
  const std::string fam_name = single_string(cfg, "family", "weighted");
  Family fam;
  try {
    fam = parse_family(fam_name);
  } catch (const Error& e) {
    config_error("family", e.what());
  }
  const long max_n = single_long(cfg, "max_n", 5);
  if (max_n < 0 || max_n > 60) config_error("max_n", "must be in 0..60");
  std::vector<long> params{0};
  if (fam == Family::Weighted) {
    params = long_list(cfg, "alpha", "1");
    require_each("alpha", params, [](long v) { return v >= 1 && v <= 50; }, "is not in 1..50");
  } else if (fam == Family::Extended) {
    params = long_list(cfg, "h", "1");
    require_each("h", params, [](long v) { return v != 0 && v >= -50 && v <= 50; }, "is not a nonzero value in -50..50");
  }
  std::vector<long> xs;
  if (cfg.contains("x")) {
    if (fam != Family::Weighted) config_error("x", "polynomial rows are available for the weighted family only");
    xs = long_list(cfg, "x", "");
    require_each("x", xs, [](long v) { return v >= 0 && v <= 100; }, "is not in 0..100");
  }
  auto chis = resolve_characters(cfg, "");
  if (!chis.empty() && fam != Family::Weighted) config_error("chi", "character rows use the weighted family");

  json grid{{"family", family_name(fam)}, {"max_n", max_n}};
  if (fam == Family::Weighted) grid["alpha"] = params;
  if (fam == Family::Extended) grid["h"] = params;
  if (!xs.empty()) grid["x"] = xs;
  if (!chis.empty()) grid["chi"] = chi_labels(chis);

  // one zeta order for the whole document
  unsigned zeta = 1;
  for (const auto& c : chis) zeta = std::lcm(zeta, c.order());

  auto limit_of = [](const FieldElem& v) -> std::string {
    try {
      return eval_at_one(v).to_string();
    } catch (const Error& e) {
      if (e.code() == ErrorCode::PoleAtOne) return "pole";
      throw;
    }
  };
  json rows = json::array();
  for (long prm : params) {
    for (long n = 0; n <= max_n; ++n) {
      json row{{"family", family_name(fam)}, {"n", n}};
      if (fam == Family::Weighted || fam == Family::Extended) row["param"] = prm;
      try {
        FieldElem v = qbern(fam, prm, n);
        row["value"] = v.to_string();
        row["limit"] = limit_of(v);
      } catch (const Error& e) {
        row["value"] = nullptr;
        row["limit"] = nullptr;
        row["error"] = error_code_name(e.code());
      }
      rows.push_back(row);
    }
    for (long x : xs)
      for (long n = 0; n <= max_n; ++n) {
        FieldElem v = weighted_beta_poly(prm, n, x);
        rows.push_back({{"family", "weighted-polynomial"},
                        {"param", prm},
                        {"n", n},
                        {"x", x},
                        {"value", v.to_string()},
                        {"limit", limit_of(v)}});
      }
    for (const auto& chi : chis)
      for (long n = 0; n <= max_n; ++n) {
        FieldElem v = generalized_beta(chi, prm, n).embed(zeta);
        rows.push_back({{"family", "generalized"},
                        {"param", prm},
                        {"n", n},
                        {"chi", chi.label()},
                        {"value", v.to_string()},
                        {"limit", limit_of(v)}});
      }
  }
  report["grid"] = grid;
  report["rows"] = rows;
  if (!chis.empty()) {
    report["zeta_order"] = zeta;
    json cs = json::array();
    for (const auto& c : chis) cs.push_back(character_json(c));
    report["characters"] = cs;
  }
  report["exit_code"] = 0;
  return {0, format_output(report, single_string(cfg, "format", "json"))};
}

RunResult cmd_integrate(const json& cfg, json report) {
  auto p = long_list(cfg, "p", "3");
  auto alpha = long_list(cfg, "alpha", "1");
  auto n = long_list(cfg, "n", "1");
  auto shift = long_list(cfg, "shift", "0");
  auto levels = long_list(cfg, "levels", "1..5");
  const long floor_offset = single_long(cfg, "floor", 2);
  require_primes(p);
  require_each("alpha", alpha, [](long v) { return v >= 1 && v <= 10; }, "is not in 1..10");
  require_each("n", n, [](long v) { return v >= 0 && v <= 20; }, "is not in 0..20");
  require_each("shift", shift, [](long v) { return v >= 0 && v <= 100; }, "is not in 0..100");
  require_each("levels", levels, [](long v) { return v >= 1 && v <= 12; }, "is not in 1..12");
  for (long pp : p) {
    long size = 1;
    for (long i = 0; i < *std::max_element(levels.begin(), levels.end()); ++i) size *= pp;
    if (size > 2000000) config_error("levels", "p^N exceeds 2000000 residues for p = " + std::to_string(pp));
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  json qs = json::object();
  for (long pp : p) qs[std::to_string(pp)] = base_point(cfg, pp).value().value().get_str();
  report["grid"] = {{"p", p},          {"alpha", alpha}, {"n", n}, {"shift", shift}, {"levels", levels},
                    {"floor", floor_offset}, {"q", qs}};

  struct Job {
    long p, alpha, n, shift;
  };
  std::vector<Job> jobs;
  for (long pp : p)
    for (long a : alpha)
      for (long nn : n)
        for (long s : shift) jobs.push_back({pp, a, nn, s});
  const std::set<long> wanted(levels.begin(), levels.end());
  std::vector<json> cases = parallel_cases(jobs.size(), worker_count(cfg), [&](std::size_t i) {
    const Job& j = jobs[i];
    WittProfile w = witt_convergence(j.alpha, j.n, j.shift, base_point(cfg, j.p), levels.back(), floor_offset);
    json lv = json::array(), prof = json::array();
    bool nondecreasing = true, above = true;
    std::optional<long> prev;
    bool first = true;
    for (const auto& l : w.levels) {
      if (!wanted.count(l.N)) continue;
      lv.push_back({{"N", l.N}, {"sum", rational_str(l.sum)}, {"valuation", valuation_json(l.valuation)}});
      prof.push_back(valuation_json(l.valuation));
      if (!first && l.valuation && (!prev || *l.valuation < *prev)) nondecreasing = false;
      if (l.valuation && *l.valuation < l.N - floor_offset) above = false;
      prev = l.valuation;
      first = false;
    }
    const bool pass = nondecreasing && above;
    return json{{"params", {{"p", j.p}, {"alpha", j.alpha}, {"n", j.n}, {"shift", j.shift}}},
                {"target", rational_str(w.target)},
                {"levels", lv},
                {"profile", prof},
                {"nondecreasing", nondecreasing},
                {"above_floor", above},
                {"verdict", pass ? "PASS" : "FAIL"}};
  });
  long failed = 0;
  for (const auto& c : cases) failed += c["verdict"] == "FAIL" ? 1 : 0;
  report["cases"] = cases;
  report["summary"] = {{"total", cases.size()}, {"failed", failed}, {"passed", static_cast<long>(cases.size()) - failed}};
  const int code = failed == 0 ? 0 : 1;
  report["exit_code"] = code;
  return {code, format_output(report, single_string(cfg, "format", "json"))};
}

}  // namespace

RunResult run_command(const std::string& config_json) {
  json cfg;
  try {
    cfg = json::parse(config_json);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw Error(ErrorCode::Config, "config must be a JSON object");
  static const std::set<std::string> known{"command", "suite", "family", "alpha", "h", "max_n", "n", "x", "y",
                                           "d", "p", "k", "levels", "chi", "chi_table", "beta", "prec",
                                           "working_prec", "q", "shift", "format", "seed", "samples", "workers",
                                           "backend", "floor", "candidate"};
  for (auto it = cfg.begin(); it != cfg.end(); ++it)
    if (!known.count(it.key())) config_error(it.key(), "unknown field");
  const std::string format = single_string(cfg, "format", "json");
  if (format != "json" && format != "csv") config_error("format", "must be json or csv");
  const std::string cmd = single_string(cfg, "command", "");
  json report{{"command", cmd}, {"format_version", 1}};
  try {
    if (cmd == "table") return cmd_table(cfg, report);
    if (cmd == "verify") return cmd_verify(cfg, report);
    if (cmd == "integrate") return cmd_integrate(cfg, report);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, std::string("config: ") + e.what());
  }
  config_error("command", "'" + cmd + "' is not one of table, verify, integrate");
}

}  // namespace qbm
