// hyperbent: verification, search, and cross-checking for Dillon-exponent
// Boolean functions with extension-field coefficients.

#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hyperbent/hyperbent.hpp"

using namespace hyperbent;
using nlohmann::json;

namespace {

struct RunConfig {
  std::string command;
  int m = 3;
  std::optional<std::uint32_t> big_modulus;
  std::optional<std::uint32_t> small_modulus;
  std::string format = "csv";
  std::string out;
  int jobs = 1;
  std::uint64_t seed = 0;
  std::string scope = "full";
  std::uint64_t samples = 10000;
};

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["m"] = c.m;
  if (c.big_modulus) j["field"] = gf2::to_hex(*c.big_modulus);
  if (c.small_modulus) j["small_field"] = gf2::to_hex(*c.small_modulus);
  j["format"] = c.format;
  j["jobs"] = c.jobs;
  j["seed"] = c.seed;
  j["scope"] = c.scope;
  j["samples"] = c.samples;
  return j;
}

std::string config_comment(const RunConfig& c) {
  std::ostringstream os;
  os << "# config: command=" << c.command << " m=" << c.m;
  if (c.big_modulus) os << " field=" << gf2::to_hex(*c.big_modulus);
  if (c.small_modulus) os << " small_field=" << gf2::to_hex(*c.small_modulus);
  os << " format=" << c.format << " jobs=" << c.jobs << " seed=" << c.seed
     << " scope=" << c.scope << " samples=" << c.samples;
  return os.str();
}

void emit(const RunConfig& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) {
    std::cerr << "cannot open output file " << c.out << "\n";
    std::exit(2);
  }
  f << text;
}

// Deterministic chunked reduction: fn(i) -> failures contributed by case i.
template <typename Fn>
std::int64_t parallel_count(std::uint64_t n, int jobs, Fn&& fn) {
  if (jobs <= 1 || n < 64) {
    std::int64_t total = 0;
    for (std::uint64_t i = 0; i < n; ++i) total += fn(i);
    return total;
  }
  const int workers = std::min<std::uint64_t>(jobs, n);
  std::vector<std::future<std::int64_t>> futures;
  futures.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const std::uint64_t lo = n * w / workers, hi = n * (w + 1) / workers;
    futures.push_back(std::async(std::launch::async, [lo, hi, &fn] {
      std::int64_t total = 0;
      for (std::uint64_t i = lo; i < hi; ++i) total += fn(i);
      return total;
    }));
  }
  std::int64_t total = 0;
  for (auto& f : futures) total += f.get();
  return total;
}

std::optional<std::uint32_t> parse_modulus_flag(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return static_cast<std::uint32_t>(gf2::parse_hex(s));
}

// ---------------------------------------------------------------- field-info

void record_fields(RunConfig& cfg, const Tower& t) {
  cfg.small_modulus = t.small().modulus();
  cfg.big_modulus = t.big().modulus();
}

int cmd_field_info(RunConfig cfg) {
  Tower t(cfg.m, cfg.small_modulus, cfg.big_modulus);
  record_fields(cfg, t);
  if (cfg.format == "json") {
    json j;
    j["schema"] = "1";
    j["config"] = config_json(cfg);
    j["small_field"] = {{"degree", t.small().degree()},
                        {"modulus", gf2::to_hex(t.small().modulus())},
                        {"generator", element_hex(t.small().generator())},
                        {"order", t.small().order()}};
    j["big_field"] = {{"degree", t.big().degree()},
                      {"modulus", gf2::to_hex(t.big().modulus())},
                      {"generator", element_hex(t.big().generator())},
                      {"order", t.big().order()}};
    j["xi"] = element_hex(t.xi());
    j["f4_generator"] = element_hex(t.f4_generator());
    j["unit_group_size"] = t.unit_group().size();
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "# hyperbent field-info v1\n" << config_comment(cfg) << "\n";
    os << "key,value\n";
    os << "small_degree," << t.small().degree() << "\n";
    os << "small_modulus," << gf2::to_hex(t.small().modulus()) << "\n";
    os << "small_generator," << element_hex(t.small().generator()) << "\n";
    os << "big_degree," << t.big().degree() << "\n";
    os << "big_modulus," << gf2::to_hex(t.big().modulus()) << "\n";
    os << "big_generator," << element_hex(t.big().generator()) << "\n";
    os << "xi," << element_hex(t.xi()) << "\n";
    os << "f4_generator," << element_hex(t.f4_generator()) << "\n";
    os << "unit_group_size," << t.unit_group().size() << "\n";
    emit(cfg, os.str());
  }
  return 0;
}

// ---------------------------------------------------------------- kloosterman

int cmd_kloosterman(RunConfig cfg, bool all, const std::string& a_hex) {
  FieldSpec f(cfg.m, cfg.small_modulus);
  cfg.small_modulus = f.modulus();
  std::vector<std::pair<std::uint32_t, std::int64_t>> rows;
  if (all) {
    for (std::uint32_t a = 0; a < f.size(); ++a) rows.emplace_back(a, kloosterman(f, a));
  } else {
    const std::uint32_t a = parse_element_hex(a_hex, f);
    rows.emplace_back(a, kloosterman(f, a));
  }
  if (cfg.format == "json") {
    json j;
    j["schema"] = "1";
    j["config"] = config_json(cfg);
    j["values"] = json::array();
    for (const auto& [a, k] : rows) j["values"].push_back({{"a", element_hex(a)}, {"K", k}});
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "# hyperbent kloosterman v1\n" << config_comment(cfg) << "\n";
    os << "a,K\n";
    for (const auto& [a, k] : rows) os << element_hex(a) << "," << k << "\n";
    emit(cfg, os.str());
  }
  return 0;
}

// ---------------------------------------------------------------- curve-count

int cmd_curve_count(RunConfig cfg, const std::string& a_hex, const std::string& c_hex) {
  FieldSpec f(cfg.m, cfg.small_modulus);
  cfg.small_modulus = f.modulus();
  const CurveSpec curve = make_curve(f, parse_element_hex(a_hex, f), parse_element_hex(c_hex, f));
  const CriterionReport r = criterion_curve_count(curve);
  if (cfg.format == "csv") {
    std::ostringstream os;
    os << "# hyperbent curve-count v1\n" << config_comment(cfg) << "\n";
    os << "count,target,verdict\n" << r.lhs << "," << r.rhs << "," << (r.verdict ? 1 : 0) << "\n";
    emit(cfg, os.str());
  } else {
    json j;
    j["schema"] = "1";
    j["config"] = config_json(cfg);
    j["count"] = r.lhs;
    j["target"] = r.rhs;
    j["verdict"] = r.verdict;
    emit(cfg, j.dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------- verify

struct CriterionRow {
  std::string name;
  bool applicable = false;
  bool verdict = false;
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  std::string note;
};

int cmd_verify(RunConfig cfg, const std::string& spec_path) {
  std::ifstream in(spec_path);
  if (!in) {
    std::cerr << "cannot read spec file " << spec_path << "\n";
    return 2;
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  ParsedFamily parsed = family_from_json_text(buffer.str());
  const DillonFamilySpec& s = parsed.spec;
  const Tower& t = *parsed.tower;
  cfg.m = t.m();
  record_fields(cfg, t);
  const int n = 2 * t.m();

  std::vector<CriterionRow> rows;
  const CriterionReport main = criterion_g_sum(s);
  rows.push_back({"g_sum", true, main.verdict, main.lhs, main.rhs, ""});

  if (s.b && *s.b == 1) {
    const CriterionReport r = criterion_g_sum_b1(s);
    rows.push_back({"g_sum_b1", true, r.verdict, r.lhs, r.rhs, ""});
  } else {
    rows.push_back({"g_sum_b1", false, false, 0, 0, "needs b = 1"});
  }

  if (!s.has_b()) {
    DillonFamilySpec bare = s;
    bare.b.reset();
    const CriterionReport rt = criterion_t1_zero(bare);
    rows.push_back({"t1_zero", true, rt.verdict, rt.lhs, rt.rhs, ""});
    const CriterionReport rw = criterion_g_weight(bare);
    rows.push_back({"g_weight", true, rw.verdict, rw.lhs, rw.rhs, ""});
    bool subfield = true;
    for (const FamilyTerm& term : s.terms) subfield = subfield && t.in_subfield(term.a);
    if (subfield) {
      const CriterionReport rc = criterion_subfield_dickson_sum(bare);
      rows.push_back({"subfield_dickson", true, rc.verdict, rc.lhs, rc.rhs, ""});
    } else {
      rows.push_back({"subfield_dickson", false, false, 0, 0, "needs subfield coefficients"});
    }
  } else {
    rows.push_back({"t1_zero", false, false, 0, 0, "needs a b-free family"});
    rows.push_back({"g_weight", false, false, 0, 0, "needs a b-free family"});
    rows.push_back({"subfield_dickson", false, false, 0, 0, "needs a b-free family"});
  }

  if (t.m() % 2 == 1) {
    const CriterionReport rp = criterion_partial_sums(s);
    rows.push_back({"partial_sums", true, rp.verdict, rp.lhs, rp.rhs, ""});
  } else {
    rows.push_back({"partial_sums", false, false, 0, 0, "needs odd m"});
  }

  // curve form: u0 is an analysis parameter, so any single-term r = 1 family
  // can be re-split with the cube root of unity and counted on the curve
  if (t.m() % 2 == 1 && s.terms.size() == 1 && s.terms[0].r == 1) {
    const CoefficientSplit cs = split_coefficient(t, s.terms[0].a, t.f4_generator(), 1);
    const CriterionReport rc =
        criterion_curve_count(make_curve(t.small(), cs.a_prime, cs.a_dprime), t, s.b.value_or(0));
    rows.push_back({"curve_count", true, rc.verdict, rc.lhs, rc.rhs, ""});
  } else {
    rows.push_back({"curve_count", false, false, 0, 0, "needs a single r = 1 term and odd m"});
  }

  bool oracle_ran = false, oracle_verdict = false;
  if (n <= 14) {
    oracle_verdict = is_hyper_bent_def(family_table(s), t.big());
    oracle_ran = true;
    rows.push_back({"oracle_ewht", true, oracle_verdict, 0, 0, ""});
  } else {
    rows.push_back({"oracle_ewht", false, false, 0, 0, "criteria-only: 2m > 14"});
  }

  bool all_agree = true;
  for (const CriterionRow& r : rows)
    if (r.applicable && r.verdict != main.verdict) all_agree = false;

  if (cfg.format == "json") {
    json j;
    j["schema"] = "1";
    j["config"] = config_json(cfg);
    j["spec"] = family_to_json(s);
    j["spec_hash"] = spec_hash(s);
    j["criteria"] = json::array();
    for (const CriterionRow& r : rows)
      j["criteria"].push_back({{"criterion", r.name},
                               {"applicable", r.applicable},
                               {"verdict", r.verdict},
                               {"lhs", r.lhs},
                               {"rhs", r.rhs},
                               {"note", r.note}});
    j["hyper_bent"] = main.verdict;
    j["oracle_ran"] = oracle_ran;
    j["all_agree"] = all_agree;
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "# hyperbent verify v1\n" << config_comment(cfg) << "\n";
    os << "# spec: " << family_to_json(s).dump() << "\n";
    os << "# spec_hash: " << spec_hash(s) << "\n";
    os << "criterion,applicable,verdict,lhs,rhs,note\n";
    for (const CriterionRow& r : rows)
      os << r.name << "," << r.applicable << "," << r.verdict << "," << r.lhs << "," << r.rhs
         << "," << r.note << "\n";
    os << "hyper_bent," << main.verdict << ",,,,\n";
    os << "all_agree," << all_agree << ",,,,\n";
    emit(cfg, os.str());
  }
  return all_agree ? 0 : 1;
}

// ---------------------------------------------------------------- search

struct SearchHit {
  std::string terms;
  std::string b;
  std::string u0;
  std::int64_t lambda = 0;
  std::string kloosterman_value;  // empty when not applicable
  int degree = -1;
};

int cmd_search(RunConfig cfg, std::vector<std::uint32_t> rs, const std::string& a_range,
               const std::string& b_range, std::uint64_t sample_count, bool sample_requested) {
  Tower t(cfg.m, cfg.small_modulus, cfg.big_modulus);
  record_fields(cfg, t);
  const FieldSpec& B = t.big();
  const bool subfield_range = a_range == "subfield";
  const std::uint64_t per_term = subfield_range ? t.small().order() : B.order();

  std::vector<std::uint32_t> b_choices;
  if (b_range == "none") b_choices = {};
  else if (b_range == "zero") b_choices = {0};
  else if (b_range == "unit") b_choices = {1};
  else if (b_range == "primitive") b_choices = {t.f4_generator(), B.sqr(t.f4_generator())};
  else if (b_range == "all") b_choices = {0, 1, t.f4_generator(), B.sqr(t.f4_generator())};
  else {
    std::cerr << "unknown --b-range " << b_range << "\n";
    return 2;
  }
  const std::uint64_t b_count = b_choices.empty() ? 1 : b_choices.size();

  std::uint64_t space = b_count;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    if (space > (std::uint64_t{1} << 40) / per_term) {
      space = std::uint64_t{1} << 40;
      break;
    }
    space *= per_term;
  }
  const bool exhaustive = space <= (std::uint64_t{1} << 24);
  if (!exhaustive && !sample_requested) {
    std::cerr << "candidate space has " << space
              << " points; pass --sample N to search a seeded sample\n";
    return 3;
  }
  const std::uint64_t total = exhaustive && !sample_requested ? space : sample_count;

  // candidate index -> spec coefficients, either by mixed radix (exhaustive)
  // or by seeded draws
  std::mt19937_64 rng(cfg.seed);
  std::vector<std::vector<std::uint32_t>> sampled;
  if (!exhaustive || sample_requested) {
    sampled.reserve(total);
    for (std::uint64_t i = 0; i < total; ++i) {
      std::vector<std::uint32_t> coords;
      for (std::size_t k = 0; k < rs.size(); ++k)
        coords.push_back(static_cast<std::uint32_t>(1 + rng() % per_term));
      coords.push_back(b_choices.empty() ? 0 : static_cast<std::uint32_t>(rng() % b_count));
      sampled.push_back(std::move(coords));
    }
  }

  auto candidate = [&](std::uint64_t idx) {
    std::vector<FamilyTerm> terms;
    std::uint32_t b_slot = 0;
    if (!sampled.empty()) {
      const std::vector<std::uint32_t>& coords = sampled[idx];
      for (std::size_t k = 0; k < rs.size(); ++k) {
        const std::uint32_t a_small = coords[k];
        terms.push_back({rs[k], subfield_range ? t.up(a_small) : a_small});
      }
      b_slot = coords.back();
    } else {
      std::uint64_t rest = idx;
      for (std::size_t k = 0; k < rs.size(); ++k) {
        const std::uint32_t a = static_cast<std::uint32_t>(1 + rest % per_term);
        rest /= per_term;
        terms.push_back({rs[k], subfield_range ? t.up(a) : a});
      }
      b_slot = static_cast<std::uint32_t>(rest % b_count);
    }
    std::optional<std::uint32_t> b;
    if (!b_choices.empty()) b = b_choices[b_slot];
    return make_family(t, std::move(terms), b);
  };

  const int n = 2 * cfg.m;
  std::vector<std::vector<SearchHit>> chunks;
  const int workers = cfg.jobs <= 1 ? 1 : cfg.jobs;
  chunks.resize(workers);
  std::vector<std::thread> threads;
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&, w] {
      const std::uint64_t lo = total * w / workers, hi = total * (w + 1) / workers;
      for (std::uint64_t i = lo; i < hi; ++i) {
        const DillonFamilySpec s = candidate(i);
        if (!criterion_g_sum(s).verdict) continue;
        SearchHit hit;
        std::ostringstream ts;
        for (std::size_t k = 0; k < s.terms.size(); ++k) {
          if (k) ts << ";";
          ts << s.terms[k].r << ":" << element_hex(s.terms[k].a);
        }
        hit.terms = ts.str();
        hit.b = s.b ? element_hex(*s.b) : "";
        hit.u0 = element_hex(s.u0);
        hit.lambda = lambda_sum(s);
        if (s.terms.size() == 1 && t.in_subfield(s.terms[0].a))
          hit.kloosterman_value = std::to_string(kloosterman(t.small(), t.down(s.terms[0].a)));
        if (n <= 14) hit.degree = algebraic_degree(family_table(s));
        chunks[w].push_back(std::move(hit));
      }
    });
  }
  for (std::thread& th : threads) th.join();

  std::vector<SearchHit> hits;
  for (std::vector<SearchHit>& c : chunks)
    for (SearchHit& h : c) hits.push_back(std::move(h));

  if (cfg.format == "json") {
    json j;
    j["schema"] = "1";
    j["config"] = config_json(cfg);
    j["candidates"] = total;
    j["certified"] = json::array();
    for (const SearchHit& h : hits) {
      json row = {{"terms", h.terms}, {"u0", h.u0}, {"lambda", h.lambda}};
      if (!h.b.empty()) row["b"] = h.b;
      if (!h.kloosterman_value.empty()) row["K"] = h.kloosterman_value;
      if (h.degree >= 0) row["degree"] = h.degree;
      j["certified"].push_back(row);
    }
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "# hyperbent search v1\n" << config_comment(cfg) << "\n";
    os << "terms,b,u0,lambda,K,degree\n";
    for (const SearchHit& h : hits)
      os << h.terms << "," << h.b << "," << h.u0 << "," << h.lambda << "," << h.kloosterman_value
         << "," << (h.degree >= 0 ? std::to_string(h.degree) : "") << "\n";
    emit(cfg, os.str());
  }
  return 0;
}

// ---------------------------------------------------------------- crosscheck

struct SuiteResult {
  std::string name;
  std::int64_t cases = 0;
  std::int64_t failures = 0;
};

int cmd_crosscheck(RunConfig cfg) {
  if (cfg.m != 3 && cfg.m != 5 && cfg.m != 7) {
    std::cerr << "crosscheck supports m in {3, 5, 7} (odd m; the section-3 machinery needs it)\n";
    return 2;
  }
  Tower t(cfg.m, cfg.small_modulus, cfg.big_modulus);
  record_fields(cfg, t);
  const FieldSpec& B = t.big();
  const FieldSpec& S = t.small();
  const bool full = cfg.scope == "full" && cfg.m == 3;
  std::mt19937_64 rng(cfg.seed);
  const std::uint32_t f4[4] = {0, 1, t.f4_generator(), B.sqr(t.f4_generator())};
  std::vector<SuiteResult> suites;

  std::vector<std::uint32_t> u0s;
  for (const std::uint32_t u : t.unit_group())
    if (u != 1) u0s.push_back(u);
  if (cfg.m == 7) {
    std::vector<std::uint32_t> sampled;
    for (int i = 0; i < 24; ++i) sampled.push_back(u0s[rng() % u0s.size()]);
    u0s = sampled;
  }

  {  // Moebius parametrization is a bijection onto U
    SuiteResult r{"mobius_bijection", 0, 0};
    for (const std::uint32_t u0 : u0s) {
      const MobiusContext c = make_mobius_context(t, u0);
      std::vector<std::uint32_t> image{mobius_map(c, MobiusArg::infinity())};
      for (std::uint32_t x = 0; x < S.size(); ++x)
        image.push_back(mobius_map(c, MobiusArg::at(x)));
      std::sort(image.begin(), image.end());
      std::vector<std::uint32_t> units = t.unit_group();
      std::sort(units.begin(), units.end());
      ++r.cases;
      r.failures += image != units;
    }
    suites.push_back(r);
  }

  {  // closed forms for u + 1/u and u0 u + 1/(u0 u)
    SuiteResult r{"mobius_identities", 0, 0};
    for (const std::uint32_t u0 : u0s) {
      const MobiusContext c = make_mobius_context(t, u0);
      for (std::uint32_t x = 0; x < S.size(); ++x) {
        ++r.cases;
        try {
          mobius_identities(c, x);  // throws on violation
        } catch (const error&) {
          ++r.failures;
        }
      }
    }
    suites.push_back(r);
  }

  {  // power substitution identity
    SuiteResult r{"power_identity", 0, 0};
    const std::uint32_t umod = (1u << cfg.m) + 1;
    std::vector<std::uint32_t> ps;
    for (std::uint32_t p = 1; p <= umod; ++p)
      if (std::gcd(p, umod) == 1) ps.push_back(p);
    const std::uint64_t spec_count = full ? B.size() : std::min<std::uint64_t>(cfg.samples / 8, 256);
    for (std::uint64_t i = 0; i < spec_count; ++i) {
      const std::uint32_t a = full ? static_cast<std::uint32_t>(i)
                                   : static_cast<std::uint32_t>(rng() % B.size());
      const DillonFamilySpec s = make_family(t, {{1, a}});
      const int f1 = eval_family(s, 1);
      for (const std::uint32_t p : ps) {
        const auto [lhs, rhs] = unit_power_identity(s, p);
        ++r.cases;
        r.failures += (lhs - rhs) != ((f1 ? -1 : 1) - 1);
        if (f1 == 0) {
          ++r.cases;
          r.failures += lhs != rhs;
        }
      }
    }
    suites.push_back(r);
  }

  {  // unit-sum decomposition: lambda = chi(f(1)) + T1 = S0 + S1 + S2
    SuiteResult r{"unit_sum_decomposition", 0, 0};
    const std::uint64_t spec_count = full ? B.size() : std::min<std::uint64_t>(cfg.samples, 2048);
    for (std::uint64_t i = 0; i < spec_count; ++i) {
      const std::uint32_t a = full ? static_cast<std::uint32_t>(i)
                                   : static_cast<std::uint32_t>(rng() % B.size());
      const DillonFamilySpec s = make_family(t, {{1, a}});
      const std::int64_t lam = lambda_sum(s);
      const std::array<std::int64_t, 3> ps = partial_sums(s);
      const int f1 = eval_family(s, 1);
      ++r.cases;
      r.failures += lam != (f1 ? -1 : 1) + t1_sum(s);
      ++r.cases;
      r.failures += lam != ps[0] + ps[1] + ps[2];
      if (f1 == 0) {
        ++r.cases;
        r.failures += lam != 1 + t1_sum(s);
      }
    }
    suites.push_back(r);
  }

  {  // Dickson composition and the x + 1/x functional equation
    SuiteResult r{"dickson_identities", 0, 0};
    const std::uint32_t stride = full ? 1 : 7;
    for (unsigned rr = 1; rr <= 9; ++rr)
      for (unsigned p = 1; p <= 9; ++p)
        for (std::uint32_t x = 0; x < S.size(); x += stride) {
          ++r.cases;
          r.failures += dickson(S, std::uint64_t{rr} * p, x) != dickson(S, rr, dickson(S, p, x));
        }
    for (unsigned rr = 1; rr <= 9; ++rr)
      for (std::uint32_t x = 1; x < S.size(); x += stride) {
        ++r.cases;
        r.failures += dickson(S, rr, S.add(x, S.inv(x))) != S.add(S.pow(x, rr), S.pow(S.inv(x), rr));
      }
    suites.push_back(r);
  }

  {  // Parseval on random tables over GF(2^{2m})
    SuiteResult r{"parseval", 0, 0};
    const int tables = cfg.m == 7 ? 20 : 100;
    for (int i = 0; i < tables; ++i) {
      const TruthTable tt =
          evaluate_to_table(B, [&](std::uint32_t) { return static_cast<int>(rng() & 1); });
      std::int64_t sum = 0;
      for (const std::int32_t v : walsh_spectrum(tt, B).values)
        sum += static_cast<std::int64_t>(v) * v;
      ++r.cases;
      r.failures += sum != (std::int64_t{1} << (2 * B.degree()));
    }
    suites.push_back(r);
  }

  {  // every criterion vs the definition oracle (oracle capped at 2m <= 14)
    SuiteResult r{"criteria_vs_oracle", 0, 0};
    const bool oracle_ok = 2 * cfg.m <= 14;
    const std::uint64_t spec_count =
        full ? B.size() * 4 : std::min<std::uint64_t>(cfg.samples / (cfg.m == 7 ? 100 : 1), 4096);
    std::atomic<std::int64_t> failures{0};
    std::vector<std::uint64_t> idx(spec_count);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cases;
    cases.reserve(spec_count);
    for (std::uint64_t i = 0; i < spec_count; ++i) {
      if (full) cases.emplace_back(static_cast<std::uint32_t>(i / 4),
                                   static_cast<std::uint32_t>(i % 4));
      else cases.emplace_back(static_cast<std::uint32_t>(rng() % B.size()),
                              static_cast<std::uint32_t>(rng() % 4));
    }
    const std::int64_t fail = parallel_count(cases.size(), cfg.jobs, [&](std::uint64_t i) {
      const auto [a, bi] = cases[i];
      const DillonFamilySpec s = make_family(t, {{1, a}}, f4[bi]);
      std::int64_t bad = 0;
      const bool main_verdict = criterion_g_sum(s).verdict;
      if (oracle_ok) bad += main_verdict != is_hyper_bent_def(family_table(s), B);
      bad += criterion_partial_sums(s).verdict != main_verdict;
      if (!s.has_b()) {
        DillonFamilySpec bare = s;
        bare.b.reset();
        bad += criterion_t1_zero(bare).verdict != main_verdict;
        bad += criterion_g_weight(bare).verdict != main_verdict;
        if (t.in_subfield(s.terms[0].a))
          bad += criterion_subfield_dickson_sum(bare).verdict != main_verdict;
      }
      return bad;
    });
    failures += fail;
    r.cases = static_cast<std::int64_t>(cases.size());
    r.failures = failures.load();
    suites.push_back(r);
  }

  {  // fraction-sum and curve criteria against each other and the oracle
    SuiteResult r{"fraction_curve", 0, 0};
    const bool oracle_ok = 2 * cfg.m <= 10;  // oracle per case is pricier here
    const std::uint64_t limit = full ? S.size() * S.size() * S.size()
                                     : std::min<std::uint64_t>(cfg.samples, 1024);
    for (std::uint64_t i = 0; i < limit; ++i) {
      std::uint32_t a, b, c;
      if (full) {
        a = static_cast<std::uint32_t>(i % S.size());
        b = static_cast<std::uint32_t>(i / S.size() % S.size());
        c = static_cast<std::uint32_t>(i / (S.size() * S.size()));
      } else {
        a = static_cast<std::uint32_t>(rng() % S.size());
        b = static_cast<std::uint32_t>(rng() % S.size());
        c = static_cast<std::uint32_t>(rng() % S.size());
      }
      const CriterionReport rf = criterion_fraction_sum(t, a, b, c);
      const std::uint32_t b4 = static_cast<std::uint32_t>(S.trace_bit(b));
      const CriterionReport rc = criterion_curve_count(make_curve(S, a, c), t, b4);
      ++r.cases;
      r.failures += rf.verdict != rc.verdict;
      const CurveSpec curve = make_curve(S, a, c);
      ++r.cases;
      r.failures +=
          count_points(curve) - 1 - (std::int64_t{1} << cfg.m) != curve_character_sum(curve);
      if (oracle_ok) {
        const std::uint32_t g4 = t.f4_generator();
        const std::uint32_t a1 = B.add(t.up(a), B.mul(t.up(c), g4));
        const DillonFamilySpec s = make_family(t, {{1, a1}}, b4, g4);
        ++r.cases;
        r.failures += rf.verdict != is_hyper_bent_def(family_table(s), B);
      }
    }
    suites.push_back(r);
  }

  std::int64_t total_failures = 0;
  for (const SuiteResult& s : suites) total_failures += s.failures;

  if (cfg.format == "json") {
    json j;
    j["schema"] = "1";
    j["config"] = config_json(cfg);
    j["suites"] = json::array();
    for (const SuiteResult& s : suites)
      j["suites"].push_back({{"suite", s.name}, {"cases", s.cases}, {"failures", s.failures}});
    j["total_failures"] = total_failures;
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::ostringstream os;
    os << "# hyperbent crosscheck v1\n" << config_comment(cfg) << "\n";
    os << "suite,cases,failures\n";
    for (const SuiteResult& s : suites)
      os << s.name << "," << s.cases << "," << s.failures << "\n";
    os << "total,," << total_failures << "\n";
    emit(cfg, os.str());
  }
  return total_failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hyper-bent function verification toolkit"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string modulus_flag, small_modulus_flag;

  auto add_common = [&](CLI::App* sub, bool needs_m = true) {
    if (needs_m) sub->add_option("-m,--m", cfg.m, "subfield degree m (the functions live on GF(2^{2m}))");
    sub->add_option("--modulus", modulus_flag, "override for the GF(2^{2m}) modulus, hex");
    sub->add_option("--small-modulus", small_modulus_flag, "override for the GF(2^m) modulus, hex");
    sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output path (default stdout)");
    sub->add_option("--jobs", cfg.jobs, "worker count")->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for sampled modes");
  };

  CLI::App* info = app.add_subcommand("field-info", "describe the working fields");
  add_common(info);

  CLI::App* verify = app.add_subcommand("verify", "run every applicable criterion on a spec file");
  std::string spec_path;
  verify->add_option("spec", spec_path, "family spec JSON file")->required();
  add_common(verify, false);

  CLI::App* search = app.add_subcommand("search", "enumerate and certify hyper-bent functions");
  std::vector<std::uint32_t> rs{1};
  std::string a_range = "subfield", b_range = "none";
  std::uint64_t sample_count = 0;
  search->add_option("--r", rs, "term exponents (coset leaders mod 2^m+1)")->delimiter(',');
  search->add_option("--a-range", a_range, "subfield or full")
      ->check(CLI::IsMember({"subfield", "full"}));
  search->add_option("--b-range", b_range, "none, zero, unit, primitive or all")
      ->check(CLI::IsMember({"none", "zero", "unit", "primitive", "all"}));
  CLI::Option* sample_opt = search->add_option("--sample", sample_count, "sample size");
  add_common(search);

  CLI::App* crosscheck = app.add_subcommand("crosscheck", "run the identity and oracle suites");
  crosscheck->add_option("--scope", cfg.scope, "full or sampled")
      ->check(CLI::IsMember({"full", "sampled"}));
  crosscheck->add_option("--samples", cfg.samples, "sample budget for sampled scope");
  add_common(crosscheck);

  CLI::App* kloo = app.add_subcommand("kloosterman", "Kloosterman sums over GF(2^m)");
  bool kloo_all = false;
  std::string kloo_a;
  kloo->add_flag("--all", kloo_all, "tabulate K_m(a) for every a");
  kloo->add_option("--a", kloo_a, "single coefficient, hex");
  add_common(kloo);

  CLI::App* curve = app.add_subcommand("curve-count", "count points on the criterion curve");
  std::string curve_a, curve_c;
  curve->add_option("--a", curve_a, "curve coefficient a, hex")->required();
  curve->add_option("--c", curve_c, "curve coefficient c, hex")->required();
  add_common(curve);

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.big_modulus = parse_modulus_flag(modulus_flag);
    cfg.small_modulus = parse_modulus_flag(small_modulus_flag);

    if (info->parsed()) {
      cfg.command = "field-info";
      return cmd_field_info(cfg);
    }
    if (verify->parsed()) {
      cfg.command = "verify";
      return cmd_verify(cfg, spec_path);
    }
    if (search->parsed()) {
      cfg.command = "search";
      return cmd_search(cfg, rs, a_range, b_range, sample_count, sample_opt->count() > 0);
    }
    if (crosscheck->parsed()) {
      cfg.command = "crosscheck";
      return cmd_crosscheck(cfg);
    }
    if (kloo->parsed()) {
      cfg.command = "kloosterman";
      if (!kloo_all && kloo_a.empty()) {
        std::cerr << "kloosterman needs --all or --a HEX\n";
        return 2;
      }
      return cmd_kloosterman(cfg, kloo_all, kloo_a);
    }
    if (curve->parsed()) {
      cfg.command = "curve-count";
      if (cfg.format == "csv" && curve->get_option("--format")->count() == 0) cfg.format = "json";
      return cmd_curve_count(cfg, curve_a, curve_c);
    }
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
