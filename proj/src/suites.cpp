#include "pshlab/suites.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "pshlab/rng.hpp"

namespace pshlab {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

NormedSpace scalar_lp(const MeasurableFamily& family) {
  // L^p(S; R) with the family's weights; the profile rho lives here
  return weighted_lp_space(Field::real, family.p, family.base.weights);
}

std::vector<double> point_norms(const MeasurableFamily& family, const Section& sigma) {
  std::vector<double> out(static_cast<std::size_t>(family.size()));
  for (int s = 0; s < family.size(); ++s) {
    out[static_cast<std::size_t>(s)] =
        family.components[static_cast<std::size_t>(s)].norm(
            sigma.values[static_cast<std::size_t>(s)]);
  }
  return out;
}

Coords to_coords(const std::vector<double>& v) {
  Coords c(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) c[i] = Scalar{v[i], 0.0};
  return c;
}

DayReport day_common(const MeasurableFamily& family, const RadialProfile& rho,
                     double gamma0_norm, double mean_of_norms, bool p1_warning) {
  NormedSpace scalar = scalar_lp(family);
  DayReport rep;
  rep.p1_warning = p1_warning;

  double norm_rho0 = scalar.norm(to_coords(rho.center));
  std::vector<double> mean_rho(rho.center.size(), 0.0);
  for (const auto& row : rho.boundary) {
    for (std::size_t s = 0; s < row.size(); ++s) mean_rho[s] += row[s];
  }
  for (double& m : mean_rho) m /= static_cast<double>(rho.boundary.size());
  double norm_of_mean = scalar.norm(to_coords(mean_rho));

  rep.links.push_back({"lift_identity", gamma0_norm, norm_rho0,
                       std::abs(gamma0_norm - norm_rho0)});
  rep.links.push_back({"center_vs_mean_profile", norm_rho0, norm_of_mean,
                       norm_of_mean - norm_rho0});
  rep.links.push_back({"norm_of_mean_vs_mean_of_norms", norm_of_mean, mean_of_norms,
                       mean_of_norms - norm_of_mean});

  rep.total_slack = rep.links[1].slack + rep.links[2].slack;
  rep.equality_case = rep.total_slack <= kEqTol;
  if (rep.equality_case) {
    rep.per_point_constant = true;
    for (std::size_t s = 0; s < rho.center.size(); ++s) {
      for (const auto& row : rho.boundary) {
        if (std::abs(row[s] - rho.center[s]) > 1e-6) rep.per_point_constant = false;
      }
    }
  }
  rep.direct_gap = mean_of_norms - gamma0_norm;
  rep.agree = (rep.direct_gap <= kEqTol) == rep.equality_case;
  return rep;
}

}  // namespace

DayReport day_pipeline(const MeasurableFamily& family, const SegmentMap& gamma) {
  if (family.p.is_inf || !(family.p.value > 1.0)) {
    throw std::invalid_argument("the convex Day pipeline requires 1 < p < inf");
  }
  if (family.field() != Field::real) {
    throw std::invalid_argument("segment maps need a real family");
  }
  NormedSpace whole = build_space(family);
  RadialProfile rho;
  rho.center = point_norms(family, unpack_section(family, gamma.eval(0.0)));
  rho.boundary = {point_norms(family, unpack_section(family, gamma.eval(-1.0))),
                  point_norms(family, unpack_section(family, gamma.eval(1.0)))};
  double gamma0 = whole.norm(gamma.eval(0.0));
  double mean_norms = 0.5 * (whole.norm(gamma.eval(-1.0)) + whole.norm(gamma.eval(1.0)));
  return day_common(family, rho, gamma0, mean_norms, false);
}

DayReport day_pipeline(const MeasurableFamily& family, const DiscMap& gamma, int nodes) {
  if (family.p.is_inf) {
    throw std::invalid_argument("the Day pipeline requires p < inf");
  }
  if (family.field() != Field::complex_) {
    throw std::invalid_argument("disc maps need a complex family");
  }
  NormedSpace whole = build_space(family);
  RadialProfile rho;
  rho.center = point_norms(family, unpack_section(family, gamma.eval(Scalar{0.0, 0.0})));
  rho.boundary.resize(static_cast<std::size_t>(nodes));
  double mean_norms = 0.0;
  for (int j = 0; j < nodes; ++j) {
    double t = kTwoPi * static_cast<double>(j) / static_cast<double>(nodes);
    Coords v = gamma.eval(Scalar{std::cos(t), std::sin(t)});
    rho.boundary[static_cast<std::size_t>(j)] = point_norms(family, unpack_section(family, v));
    mean_norms += whole.norm(v);
  }
  mean_norms /= static_cast<double>(nodes);
  double gamma0 = whole.norm(gamma.eval(Scalar{0.0, 0.0}));
  return day_common(family, rho, gamma0, mean_norms, family.p.value == 1.0);
}

namespace {

struct FamilySpec {
  std::vector<int> comps;  // indices into a component catalog
  std::vector<double> mu;
  double p;
};

std::string fam_label(const FamilySpec& f, const std::vector<std::string>& names) {
  std::string s = "p=" + std::to_string(f.p) + " [";
  for (std::size_t i = 0; i < f.comps.size(); ++i) {
    if (i) s += ",";
    s += names[static_cast<std::size_t>(f.comps[i])];
  }
  return s + "]";
}

SegmentMap transport_segment(const MeasurableFamily& family, int s, const SegmentMap& w) {
  SegmentMap out;
  out.base = pack_section(family, embed_component(family, s, w.base).section);
  out.direction = pack_section(family, embed_component(family, s, w.direction).section);
  return out;
}

DiscMap transport_disc(const MeasurableFamily& family, int s, const DiscMap& w) {
  DiscMap out;
  out.radius = w.radius;
  for (const Coords& ck : w.coeffs) {
    out.coeffs.push_back(pack_section(family, embed_component(family, s, ck).section));
  }
  return out;
}

std::vector<CheckResult> conv_int_suite(const SuiteConfig& cfg) {
  std::vector<NormedSpace> catalog = {
      lp_space(Field::real, Exponent::finite(2.0), 2),
      lp_space(Field::real, Exponent::finite(3.0), 2),
      lp_space(Field::real, Exponent::finite(1.0), 2),
  };
  std::vector<std::string> names = {"l2_2", "l3_2", "l1_2"};
  std::vector<bool> expected_strict = {true, true, false};

  std::vector<FamilySpec> fams;
  for (double p : {1.5, 2.0, 3.0}) {
    fams.push_back({{0, 1}, {1.0, 2.0}, p});
    fams.push_back({{0, 0, 1}, {1.0, 1.0, 0.5}, p});
    fams.push_back({{2, 0}, {1.0, 1.0}, p});
    fams.push_back({{1, 2, 0}, {2.0, 1.0, 1.0}, p});
  }

  // component verdicts are shared across families
  std::map<int, Verdict> comp_verdicts;
  for (int c = 0; c < static_cast<int>(catalog.size()); ++c) {
    comp_verdicts.emplace(
        c, flat_segment_search(catalog[static_cast<std::size_t>(c)], cfg.restarts,
                               derive_seed(cfg.seed, 100 + static_cast<std::uint64_t>(c))));
  }

  std::vector<CheckResult> results;
  for (int c = 0; c < static_cast<int>(catalog.size()); ++c) {
    const Verdict& v = comp_verdicts.at(c);
    results.push_back({"conv-int", "component " + names[static_cast<std::size_t>(c)],
                       v.witness_found != expected_strict[static_cast<std::size_t>(c)],
                       v.flatness, v.witness_found ? "witness_found" : "no_witness"});
  }

  for (std::size_t fi = 0; fi < fams.size(); ++fi) {
    const FamilySpec& fs = fams[fi];
    std::vector<NormedSpace> comps;
    for (int c : fs.comps) comps.push_back(catalog[static_cast<std::size_t>(c)]);
    MeasurableFamily fam = make_family({fs.mu}, comps, Exponent::finite(fs.p));
    NormedSpace whole = build_space(fam);

    bool all_strict = true;
    int witness_point = -1;
    for (std::size_t s = 0; s < fs.comps.size(); ++s) {
      if (comp_verdicts.at(fs.comps[s]).witness_found) {
        all_strict = false;
        if (witness_point < 0) witness_point = static_cast<int>(s);
      }
    }

    CheckResult r;
    r.suite = "conv-int";
    r.name = "family " + std::to_string(fi) + " " + fam_label(fs, names);
    if (all_strict) {
      Verdict wv = flat_segment_search(whole, cfg.restarts,
                                       derive_seed(cfg.seed, 200 + fi));
      r.pass = !wv.witness_found;
      r.value = wv.flatness;
      r.details = "all components strict; whole: " +
                  std::string(wv.witness_found ? "witness_found" : "no_witness");
    } else {
      // transport the component witness into the direct integral
      const Verdict& cv = comp_verdicts.at(fs.comps[static_cast<std::size_t>(witness_point)]);
      SegmentMap w = transport_segment(fam, witness_point, *cv.segment_witness);
      double flat = segment_flatness(whole, w);
      r.pass = flat <= cfg.flat_tol && !w.is_constant();
      r.value = flat;
      r.details = "transported witness from point " + std::to_string(witness_point);
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<CheckResult> psh_int_suite(const SuiteConfig& cfg) {
  std::vector<NormedSpace> catalog = {
      lp_space(Field::complex_, Exponent::finite(2.0), 1),  // C with modulus
      lp_space(Field::complex_, Exponent::finite(2.0), 2),
      lp_space(Field::complex_, Exponent::inf(), 2),
  };
  std::vector<std::string> names = {"C", "l2_2", "linf_2"};
  std::vector<bool> expected_strict = {true, true, false};

  std::vector<FamilySpec> fams;
  for (double p : {1.0, 1.5, 2.0}) {
    fams.push_back({{0, 0}, {1.0, 2.0}, p});
    fams.push_back({{0, 1}, {1.0, 1.0}, p});
    fams.push_back({{2, 0}, {1.0, 1.0}, p});
    fams.push_back({{1, 2, 0}, {0.5, 1.0, 1.0}, p});
  }

  int degree = std::min(cfg.degree_cap, 2);  // witnesses here have degree <= 1
  std::map<int, Verdict> comp_verdicts;
  for (int c = 0; c < static_cast<int>(catalog.size()); ++c) {
    comp_verdicts.emplace(
        c, flat_disc_search(catalog[static_cast<std::size_t>(c)], degree, cfg.restarts,
                            derive_seed(cfg.seed, 300 + static_cast<std::uint64_t>(c))));
  }

  std::vector<CheckResult> results;
  for (int c = 0; c < static_cast<int>(catalog.size()); ++c) {
    const Verdict& v = comp_verdicts.at(c);
    results.push_back({"psh-int", "component " + names[static_cast<std::size_t>(c)],
                       v.witness_found != expected_strict[static_cast<std::size_t>(c)],
                       v.flatness, v.witness_found ? "witness_found" : "no_witness"});
  }

  for (std::size_t fi = 0; fi < fams.size(); ++fi) {
    const FamilySpec& fs = fams[fi];
    std::vector<NormedSpace> comps;
    for (int c : fs.comps) comps.push_back(catalog[static_cast<std::size_t>(c)]);
    MeasurableFamily fam = make_family({fs.mu}, comps, Exponent::finite(fs.p));
    NormedSpace whole = build_space(fam);

    bool all_strict = true;
    int witness_point = -1;
    for (std::size_t s = 0; s < fs.comps.size(); ++s) {
      if (comp_verdicts.at(fs.comps[s]).witness_found) {
        all_strict = false;
        if (witness_point < 0) witness_point = static_cast<int>(s);
      }
    }

    CheckResult r;
    r.suite = "psh-int";
    r.name = "family " + std::to_string(fi) + " " + fam_label(fs, names);
    if (all_strict) {
      Verdict wv = flat_disc_search(whole, degree, cfg.restarts,
                                    derive_seed(cfg.seed, 400 + fi));
      r.pass = !wv.witness_found;
      r.value = wv.flatness;
      r.details = "all components strict; whole: " +
                  std::string(wv.witness_found ? "witness_found" : "no_witness");
    } else {
      const Verdict& cv = comp_verdicts.at(fs.comps[static_cast<std::size_t>(witness_point)]);
      DiscMap w = transport_disc(fam, witness_point, *cv.disc_witness);
      double flat = disc_flatness(whole, w);
      r.pass = flat <= cfg.flat_tol && !w.is_constant();
      r.value = flat;
      r.details = "transported witness from point " + std::to_string(witness_point);
    }
    results.push_back(std::move(r));
  }
  return results;
}

std::vector<CheckResult> day_suite(const SuiteConfig& cfg) {
  std::vector<CheckResult> results;
  for (double p : {1.5, 2.0, 4.0}) {
    MeasurableFamily real_fam =
        make_family({{1.0, 2.0}},
                    {lp_space(Field::real, Exponent::finite(2.0), 2),
                     lp_space(Field::real, Exponent::finite(3.0), 2)},
                    Exponent::finite(p));
    NormedSpace real_whole = build_space(real_fam);
    for (int i = 0; i < 10; ++i) {
      SegmentMap g = sample_segment(
          real_whole, derive_seed(cfg.seed, 500 + static_cast<std::uint64_t>(100 * p + i)));
      DayReport rep = day_pipeline(real_fam, g);
      char name[64];
      std::snprintf(name, sizeof name, "segment p=%g #%d", p, i);
      results.push_back({"day", name, rep.agree, rep.total_slack,
                         rep.equality_case ? "equality_case" : "strict"});
    }

    MeasurableFamily cx_fam =
        make_family({{1.0, 1.0}},
                    {lp_space(Field::complex_, Exponent::finite(2.0), 2),
                     lp_space(Field::complex_, Exponent::finite(2.0), 1)},
                    Exponent::finite(p));
    NormedSpace cx_whole = build_space(cx_fam);
    for (int i = 0; i < 10; ++i) {
      DiscMap g = sample_disc(
          cx_whole, 2, derive_seed(cfg.seed, 600 + static_cast<std::uint64_t>(100 * p + i)));
      DayReport rep = day_pipeline(cx_fam, g, cfg.nodes);
      char name[64];
      std::snprintf(name, sizeof name, "disc p=%g #%d", p, i);
      results.push_back({"day", name, rep.agree, rep.total_slack,
                         rep.equality_case ? "equality_case" : "strict"});
    }
  }
  return results;
}

std::vector<CheckResult> edge_p_suite(const SuiteConfig& cfg) {
  std::vector<CheckResult> results;
  NormedSpace l2 = lp_space(Field::real, Exponent::finite(2.0), 2);
  Coords x = l2.random_unit_vector(derive_seed(cfg.seed, 700));
  Coords y = l2.random_unit_vector(derive_seed(cfg.seed, 701));

  {
    // p = 1: t -> ((1+t)/2 x, (1-t)/2 y) stays in the unit sphere
    MeasurableFamily fam = make_family({{1.0, 1.0}}, {l2, l2}, Exponent::finite(1.0));
    NormedSpace whole = build_space(fam);
    SegmentMap w;
    w.base = pack_section(fam, Section{{scale(x, Scalar{0.5, 0.0}), scale(y, Scalar{0.5, 0.0})}});
    w.direction =
        pack_section(fam, Section{{scale(x, Scalar{0.5, 0.0}), scale(y, Scalar{-0.5, 0.0})}});
    double flat = segment_flatness(whole, w);
    results.push_back({"edge-p", "p=1 explicit flat segment", flat <= cfg.flat_tol, flat, ""});
    Verdict v = flat_segment_search(whole, cfg.restarts, derive_seed(cfg.seed, 702));
    results.push_back({"edge-p", "p=1 search finds witness", v.witness_found, v.flatness, ""});
  }
  {
    // p = inf: t -> (x, t y)
    MeasurableFamily fam = make_family({{1.0, 1.0}}, {l2, l2}, Exponent::inf());
    NormedSpace whole = build_space(fam);
    SegmentMap w;
    w.base = pack_section(fam, Section{{x, l2.zero()}});
    w.direction = pack_section(fam, Section{{l2.zero(), y}});
    double flat = segment_flatness(whole, w);
    results.push_back({"edge-p", "p=inf explicit flat segment", flat <= cfg.flat_tol, flat, ""});
    Verdict v = flat_segment_search(whole, cfg.restarts, derive_seed(cfg.seed, 703));
    results.push_back({"edge-p", "p=inf search finds witness", v.witness_found, v.flatness, ""});
  }
  return results;
}

std::vector<CheckResult> jensen_suite(const SuiteConfig& cfg) {
  std::vector<CheckResult> results;

  // worked case (z - 0.3)(z - 0.5): circle mean of log|gamma| is 0
  {
    DiscMap g;
    g.coeffs.clear();
    auto poly = poly_from_roots(Scalar{1.0, 0.0}, {Scalar{0.3, 0.0}, Scalar{0.5, 0.0}});
    for (const Scalar& c : poly) g.coeffs.push_back(Coords{c});
    ScalarFunction log_abs =
        ScalarFunction::log_norm(lp_space(Field::complex_, Exponent::finite(2.0), 1));
    CircleMean m = circle_mean(log_abs, g, cfg.nodes);
    results.push_back({"jensen", "worked case circle mean", std::abs(m.value) <= 1e-8,
                       m.value, "(z-0.3)(z-0.5)"});
    ZeroProfile zp;
    zp.zeros = {{Scalar{0.3, 0.0}, 1}, {Scalar{0.5, 0.0}, 1}};
    double res = jensen_formula_residual(g, zp, cfg.nodes);
    results.push_back({"jensen", "worked case residual", res <= 1e-8, res, ""});
  }

  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(derive_seed(cfg.seed, 800 + static_cast<std::uint64_t>(i)));
    int deg = 1 + rng.uniform_int(5);
    std::vector<Scalar> roots;
    ZeroProfile zp;
    for (int k = 0; k < deg; ++k) {
      double r = rng.uniform(0.05, 0.95);
      double t = rng.uniform(0.0, kTwoPi);
      Scalar z{r * std::cos(t), r * std::sin(t)};
      roots.push_back(z);
      zp.zeros.push_back({z, 1});
    }
    Scalar lead = rng.normal_complex();
    if (std::abs(lead) < 0.2) lead += Scalar{0.5, 0.0};
    DiscMap g;
    for (const Scalar& c : poly_from_roots(lead, roots)) g.coeffs.push_back(Coords{c});
    worst = std::max(worst, jensen_formula_residual(g, zp, cfg.nodes));
  }
  results.push_back({"jensen", "100 random polynomials max residual", worst <= 1e-8, worst, ""});

  // vector and extended Jensen inequalities
  NormedSpace l2 = lp_space(Field::real, Exponent::finite(2.0), 2);
  JensenReport jr = jensen_vector_check(
      ScalarFunction::norm_of(l2), {0.5, 0.5},
      {Coords{Scalar{1.0, 0.0}, Scalar{0.0, 0.0}}, Coords{Scalar{0.0, 0.0}, Scalar{1.0, 0.0}}});
  results.push_back({"jensen", "vector Jensen on l2",
                     jr.gap >= -1e-10 && std::abs(jr.lhs - std::sqrt(0.5)) < 1e-12, jr.gap, ""});
  JensenExtendedReport er =
      jensen_extended_check({0.0, kNegInf}, {0.5, 0.5}, ConvexReshaper::exp2());
  results.push_back({"jensen", "extended Jensen with -inf value",
                     std::abs(er.lhs) < 1e-15 && std::abs(er.gap - 0.5) < 1e-12, er.gap, ""});
  return results;
}

std::vector<CheckResult> counterexample_run(const SuiteConfig& cfg) {
  CounterexampleReport rep = counterexample_suite(cfg.seed, 1000, cfg.nodes);
  std::vector<CheckResult> results;
  results.push_back({"counterexample", "equality disc (z,-z^2) gap",
                     std::abs(rep.equality_gap) <= 1e-12, rep.equality_gap, "g = |z1^2+z2|^2"});
  results.push_back({"counterexample", "min gap over 1000 non-constant affine discs",
                     rep.min_affine_gap > 0.0, rep.min_affine_gap, ""});
  return results;
}

std::vector<CheckResult> involution_suite(const SuiteConfig& cfg) {
  std::vector<CheckResult> results;
  ScalarFunction convex = ScalarFunction::norm_of(lp_space(Field::real, Exponent::finite(1.0), 2));
  PullbackReport a = pullback_conv_psh_check(convex, 2, false, 200, cfg.nodes, cfg.seed);
  results.push_back({"involution", "convex pullback psh gaps", a.min_gap_all >= -1e-8,
                     a.min_gap_all, "f_real = l1 norm on R^2"});

  ScalarFunction strictly = ScalarFunction::reshaped(
      ConvexReshaper::square(), ScalarFunction::norm_of(lp_space(Field::real, Exponent::finite(2.0), 2)));
  PullbackReport b =
      pullback_conv_psh_check(strictly, 2, true, 200, cfg.nodes, derive_seed(cfg.seed, 900));
  results.push_back({"involution", "strictly convex pullback strict gaps",
                     b.min_gap_strict > 1e-6, b.min_gap_strict, "f_real = squared l2 norm"});
  return results;
}

}  // namespace

std::vector<CheckResult> run_suite(const SuiteConfig& config) {
  if (config.name == "conv-int") return conv_int_suite(config);
  if (config.name == "psh-int") return psh_int_suite(config);
  if (config.name == "day") return day_suite(config);
  if (config.name == "counterexample") return counterexample_run(config);
  if (config.name == "edge-p") return edge_p_suite(config);
  if (config.name == "jensen") return jensen_suite(config);
  if (config.name == "involution") return involution_suite(config);
  throw std::invalid_argument("unknown suite: " + config.name);
}

namespace {

double fixed12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return std::strtod(buf, nullptr);
}

}  // namespace

nlohmann::json results_to_json(const std::vector<CheckResult>& results) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& r : results) {
    nlohmann::json c;
    c["details"] = r.details;
    c["name"] = r.name;
    c["pass"] = r.pass;
    c["suite"] = r.suite;
    c["value"] = fixed12(r.value);
    checks.push_back(c);
  }
  nlohmann::json j;
  j["checks"] = checks;
  return j;
}

std::string results_to_csv(const std::vector<CheckResult>& results) {
  std::string out = "suite,check,pass,value,details\n";
  char buf[64];
  for (const auto& r : results) {
    std::snprintf(buf, sizeof buf, "%.12e", r.value);
    std::string name = r.name;
    std::string details = r.details;
    for (std::string* s : {&name, &details}) {
      for (char& c : *s) {
        if (c == ',') c = ';';
      }
    }
    out += r.suite + "," + name + "," + (r.pass ? "1" : "0") + "," + buf + "," + details + "\n";
  }
  return out;
}

void emit_report(const std::vector<CheckResult>& results, const std::string& path,
                 const std::string& format) {
  if (results.empty()) throw std::invalid_argument("refusing to emit an empty report");
  std::string payload;
  if (format == "json") {
    payload = results_to_json(results).dump(2) + "\n";
  } else if (format == "csv") {
    payload = results_to_csv(results);
  } else {
    throw std::invalid_argument("unknown report format: " + format);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open report path: " + path);
  out << payload;
  if (!out) throw std::runtime_error("failed writing report: " + path);
}

}  // namespace pshlab
