#include "syzygy/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "syzygy/io.hpp"

namespace syzygy::cli {

using io::Json;

// --- analysis ---------------------------------------------------------------

StabilityReport analyze(const SurfaceModel& X, const AnalyzeRequest& request) {
  const TDivisor& D = request.d;
  if (D.size() != X.generator_count()) {
    throw Error(ErrorKind::DimensionMismatch, "D has " + std::to_string(D.size()) +
                                                  " coefficients, expected " +
                                                  std::to_string(X.generator_count()));
  }
  if (!request.a) {
    if (request.multiple) {
      throw Error(ErrorKind::InvalidInput, "--d needs --A (the polarization to test against)");
    }
    return X.is_toric() ? toric_driver(X.fan(), D) : abstract_driver(X, D);
  }

  const QDivisor& A = *request.a;
  if (!is_ample(X, A)) throw Error(ErrorKind::NotAmple, "A must be ample");
  StabilityReport report;
  report.surface = X.is_toric() ? to_string(recognize(X.fan())) : "abstract";
  if (!X.is_toric()) report.assumptions.emplace_back(kChiAssumption);

  if (request.multiple) {
    const Integer d = *request.multiple;
    if (d < 1) throw Error(ErrorKind::InvalidInput, "--d must be >= 1");
    const auto found = find_destabilizer(X, D, A, d, request.max_terms);
    if (!found) return report;
    Certificate cert;
    cert.a = A.primitive_integral();
    cert.s = found->s;
    cert.d0 = d;
    cert.sub_slope = syzygy_slope(X, d * D - found->s, cert.a);
    cert.ambient_slope = syzygy_slope(X, d * D, cert.a);
    report.verdict = found->strict ? Verdict::NotSemistable : Verdict::NotStable;
    report.alpha_beta = alpha_beta(X, D, found->s, A);
    report.certificate = std::move(cert);
    return report;
  }

  if (!is_ample(X, D)) throw Error(ErrorKind::NotAmple, "D must be ample");
  std::optional<StabilityReport> equal;
  for (const TDivisor& s : destabilizer_candidates(X, request.max_terms)) {
    if (asymptotic_condition(X, D, s, A).kind == AsymptoticKind::StablePossible) continue;
    StabilityReport r = certify(X, D, s, A);
    if (r.verdict == Verdict::NotSemistable) return r;
    if (r.verdict == Verdict::NotStable && !equal) equal = std::move(r);
  }
  if (equal) return *equal;
  return report;
}

namespace {

// --- loaded surfaces and bases --------------------------------------------

struct Loaded {
  SurfaceModel X;
  std::optional<std::vector<Ray>> input_rays;  // toric: rays in file order
  Json source;                                 // echo of the input surface
};

Loaded load_surface(const std::string& fan_path, const std::string& surface_path) {
  if (fan_path.empty() == surface_path.empty()) {
    throw Error(ErrorKind::InvalidInput, "give exactly one of --fan or --surface");
  }
  if (!fan_path.empty()) {
    const Json j = io::read_json_file(fan_path);
    std::vector<Ray> rays = io::rays_from_json(j);
    Fan fan = validate_fan(rays);
    return Loaded{SurfaceModel::toric(std::move(fan)), rays, Json{{"fan", io::fan_to_json(rays)}}};
  }
  const Json j = io::read_json_file(surface_path);
  return Loaded{io::surface_from_json(j), std::nullopt, Json{{"surface", j}}};
}

Loaded load_echo(const Json& echo) {
  if (echo.contains("fan")) {
    std::vector<Ray> rays = io::rays_from_json(echo["fan"]);
    Fan fan = validate_fan(rays);
    return Loaded{SurfaceModel::toric(std::move(fan)), rays, Json{{"fan", echo["fan"]}}};
  }
  if (echo.contains("surface")) {
    return Loaded{io::surface_from_json(echo["surface"]), std::nullopt,
                  Json{{"surface", echo["surface"]}}};
  }
  throw Error(ErrorKind::InvalidInput, "report echo has neither \"fan\" nor \"surface\"");
}

enum class Basis { Prime, SF, HE };

std::vector<Rational> parse_list(const std::string& text, const std::string& flag) {
  std::vector<Rational> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(parse_rational(item));
    } catch (const Error&) {
      throw Error(ErrorKind::InvalidInput,
                  flag + " '" + text + "': expected comma-separated coefficients like 5,6");
    }
  }
  if (out.empty()) throw Error(ErrorKind::InvalidInput, flag + " is empty");
  return out;
}

// User-facing coefficients (file order) to fan order.
QDivisor from_user(const Loaded& L, const std::vector<Rational>& user) {
  if (!L.X.is_toric()) return QDivisor(user);
  const Fan& fan = L.X.fan();
  QDivisor out(fan.size());
  for (std::size_t i = 0; i < fan.size(); ++i) out[i] = user[fan.input_index(i)];
  return out;
}

template <class Div>
std::vector<typename std::decay_t<decltype(std::declval<Div>()[0])>> to_user(const Loaded& L,
                                                                            const Div& d) {
  using T = std::decay_t<decltype(d[0])>;
  std::vector<T> out(d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    out[L.X.is_toric() ? L.X.fan().input_index(i) : i] = d[i];
  }
  return out;
}

QDivisor parse_divisor(const Loaded& L, const std::string& text, const std::string& flag,
                       Basis basis) {
  const std::vector<Rational> v = parse_list(text, flag);
  const std::size_t n = L.X.generator_count();
  const bool four_rays = L.X.is_toric() && n == 4;
  if (basis == Basis::Prime && four_rays && v.size() == 2) basis = Basis::SF;
  if (basis == Basis::Prime) {
    if (v.size() != n) {
      throw Error(ErrorKind::InvalidInput,
                  flag + " has " + std::to_string(v.size()) + " coefficients; the surface has " +
                      std::to_string(n) + " generators (use one coefficient per ray" +
                      (four_rays ? ", or --sf with two)" : ")"));
    }
    return from_user(L, v);
  }
  if (!four_rays) {
    throw Error(ErrorKind::InvalidInput, "--sf/--he need a 4-ray (Hirzebruch) fan");
  }
  if (v.size() != 2) {
    throw Error(ErrorKind::InvalidInput, flag + " needs exactly two coefficients in this basis");
  }
  const Fan& fan = L.X.fan();
  const QDivisor s(sf_divisor(fan, 1, 0));
  const QDivisor f(sf_divisor(fan, 0, 1));
  if (basis == Basis::SF) return v[0] * s + v[1] * f;
  if (hirzebruch_frame(fan).ell != 1) {
    throw Error(ErrorKind::InvalidInput, "--he (H = S + F, E = S) needs the F1 fan");
  }
  // mH + nE = (m + n) S + m F
  return (v[0] + v[1]) * s + v[0] * f;
}

TDivisor integral(const QDivisor& q, const std::string& flag) {
  TDivisor out(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (boost::multiprecision::denominator(q[i]) != 1) {
      throw Error(ErrorKind::InvalidInput, flag + " must have integer coefficients");
    }
    out[i] = to_integer(boost::multiprecision::numerator(q[i]));
  }
  return out;
}

Json ints(std::span<const Integer> v) { return Json(std::vector<Integer>(v.begin(), v.end())); }

Json rationals(const std::vector<Rational>& v) {
  Json j = Json::array();
  for (const auto& r : v) j.push_back(io::rational_to_json(r));
  return j;
}

std::string join(const Json& arr) {
  std::string s = "(";
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i) s += ",";
    s += arr[i].is_string() ? arr[i].get<std::string>() : arr[i].dump();
  }
  return s + ")";
}

std::optional<Json> sf_json(const Loaded& L, const TDivisor& d) {
  if (!L.X.is_toric() || L.X.generator_count() != 4) return std::nullopt;
  const auto [x, y] = sf_class(L.X.fan(), d);
  return Json{x, y};
}

// --- reports ----------------------------------------------------------------

Json report_to_json(const Loaded& L, const StabilityReport& r, const Json& echo) {
  Json j;
  j["verdict"] = std::string(to_string(r.verdict));
  j["surface"] = r.surface;
  j["assumptions"] = r.assumptions;
  j["echo"] = echo;
  if (r.alpha_beta) j["asymptotic"] = io::to_json(*r.alpha_beta);
  if (r.certificate) {
    const Certificate& c = *r.certificate;
    Json cj{{"A", ints(to_user(L, c.a))},
            {"S", ints(to_user(L, c.s))},
            {"d0", c.d0},
            {"sub_slope", io::rational_to_json(c.sub_slope)},
            {"ambient_slope", io::rational_to_json(c.ambient_slope)}};
    if (auto a = sf_json(L, c.a)) cj["sf"] = Json{{"A", *a}, {"S", *sf_json(L, c.s)}};
    j["certificate"] = cj;
  }
  if (r.polarization) {
    const Polarization& p = *r.polarization;
    const std::size_t ej = L.X.is_toric() ? L.X.fan().input_index(p.ej) : p.ej;
    j["polarization"] = Json{{"A", rationals(to_user(L, p.a))},
                             {"E_j", ej},
                             {"t", io::rational_to_json(p.t)},
                             {"epsilon", io::rational_to_json(p.epsilon)},
                             {"alpha", io::rational_to_json(p.alpha)},
                             {"outside_hypotheses", p.outside_hypotheses}};
  }
  return j;
}

void print_report_text(std::ostream& out, const Json& j) {
  out << "verdict: " << j["verdict"].get<std::string>() << "\n";
  out << "surface: " << j["surface"].get<std::string>() << "\n";
  if (j.contains("certificate")) {
    const Json& c = j["certificate"];
    out << "A: " << join(c["A"]);
    if (c.contains("sf")) out << "  [S,F: " << join(c["sf"]["A"]) << "]";
    out << "\nS: " << join(c["S"]);
    if (c.contains("sf")) out << "  [S,F: " << join(c["sf"]["S"]) << "]";
    out << "\nd0: " << c["d0"].get<Integer>() << "\n";
    out << "slopes: subbundle " << c["sub_slope"].get<std::string>() << ", ambient "
        << c["ambient_slope"].get<std::string>() << "\n";
  }
  if (j.contains("asymptotic")) {
    out << "alpha: " << j["asymptotic"]["alpha"].get<std::string>()
        << ", beta: " << j["asymptotic"]["beta"].get<std::string>() << "\n";
  }
  if (j.contains("polarization")) {
    const Json& p = j["polarization"];
    out << "polarization: E_j = " << p["E_j"].get<std::size_t>() << ", t = "
        << p["t"].get<std::string>() << ", epsilon = " << p["epsilon"].get<std::string>() << "\n";
  }
  for (const auto& a : j["assumptions"]) out << "assumption: " << a.get<std::string>() << "\n";
}

void emit(std::ostream& out, const Json& j, bool as_json, const std::string& out_path,
          void (*text)(std::ostream&, const Json&)) {
  std::ostringstream buf;
  if (as_json) {
    buf << j.dump(2) << "\n";
  } else {
    text(buf, j);
  }
  if (out_path.empty()) {
    out << buf.str();
    return;
  }
  std::ofstream file(out_path, std::ios::binary);
  if (!file) throw Error(ErrorKind::InvalidInput, "cannot write '" + out_path + "'");
  file << buf.str();
}

Certificate certificate_from_json(const Loaded& L, const Json& c) {
  Certificate cert;
  std::vector<Rational> a, s;
  for (const auto& v : c.at("A")) a.push_back(io::rational_from_json(v));
  for (const auto& v : c.at("S")) s.push_back(io::rational_from_json(v));
  if (a.size() != L.X.generator_count() || s.size() != L.X.generator_count()) {
    throw Error(ErrorKind::InvalidInput, "certificate divisors do not match the surface");
  }
  cert.a = integral(from_user(L, a), "certificate A");
  cert.s = integral(from_user(L, s), "certificate S");
  cert.d0 = c.at("d0").get<Integer>();
  cert.sub_slope = io::rational_from_json(c.at("sub_slope"));
  cert.ambient_slope = io::rational_from_json(c.at("ambient_slope"));
  return cert;
}

// --- commands ---------------------------------------------------------------

struct Options {
  std::string fan, surface, divisor, polarization, out, verify;
  std::optional<Integer> multiple;
  std::size_t max_terms = 2;
  bool sf = false, he = false, json = false, allow_low_rank = false, no_d0 = false;
  Integer ell = 0;
  std::string a, b, ells, a_range, b_range, step;
};

Basis basis_of(const Options& o) {
  if (o.sf && o.he) throw Error(ErrorKind::InvalidInput, "--sf and --he are mutually exclusive");
  return o.sf ? Basis::SF : o.he ? Basis::HE : Basis::Prime;
}

void require(const std::string& value, const std::string& flag) {
  if (value.empty()) throw Error(ErrorKind::InvalidInput, flag + " is required");
}

Json analyze_json(const Loaded& L, const AnalyzeRequest& req) {
  Json echo = L.source;
  echo["D"] = ints(to_user(L, req.d));
  if (req.a) echo["A"] = rationals(to_user(L, *req.a));
  if (req.multiple) echo["d"] = *req.multiple;
  echo["k"] = req.max_terms;
  return report_to_json(L, analyze(L.X, req), echo);
}

int cmd_analyze(const Options& o, std::ostream& out) {
  if (!o.verify.empty()) {
    const Json report = io::read_json_file(o.verify);
    if (!report.contains("echo") || !report.contains("verdict")) {
      throw Error(ErrorKind::InvalidInput, "'" + o.verify + "' is not an analyze report");
    }
    const Json& echo = report["echo"];
    const Loaded L = load_echo(echo);
    std::vector<Rational> dv;
    for (const auto& v : echo.at("D")) dv.push_back(io::rational_from_json(v));
    if (dv.size() != L.X.generator_count()) {
      throw Error(ErrorKind::InvalidInput, "echoed D does not match the surface");
    }
    AnalyzeRequest req;
    req.d = integral(from_user(L, dv), "echoed D");
    if (echo.contains("A")) {
      std::vector<Rational> av;
      for (const auto& v : echo["A"]) av.push_back(io::rational_from_json(v));
      req.a = from_user(L, av);
    }
    if (echo.contains("d")) req.multiple = echo["d"].get<Integer>();
    if (echo.contains("k")) req.max_terms = echo["k"].get<std::size_t>();

    const Verdict recorded = parse_verdict(report["verdict"].get<std::string>());
    const Json rerun = analyze_json(L, req);
    const Verdict recomputed = parse_verdict(rerun["verdict"].get<std::string>());
    bool ok = recomputed == recorded;
    std::optional<Verdict> cert_verdict;
    if (report.contains("certificate")) {
      cert_verdict = verify_certificate(L.X, req.d, certificate_from_json(L, report["certificate"]));
      ok = ok && *cert_verdict == recorded;
    } else {
      ok = ok && recorded == Verdict::NoDestabilizerFound;
    }
    Json j{{"verified", ok},
           {"recorded", std::string(to_string(recorded))},
           {"verdict", std::string(to_string(recomputed))}};
    if (cert_verdict) j["certificate"] = std::string(to_string(*cert_verdict));
    emit(out, j, o.json, o.out, [](std::ostream& os, const Json& v) {
      os << "verified: " << (v["verified"].get<bool>() ? "yes" : "NO") << " (recorded "
         << v["recorded"].get<std::string>() << ", recomputed " << v["verdict"].get<std::string>()
         << ")\n";
    });
    return ok ? 0 : 2;
  }

  const Loaded L = load_surface(o.fan, o.surface);
  require(o.divisor, "--D");
  AnalyzeRequest req;
  req.d = integral(parse_divisor(L, o.divisor, "--D", basis_of(o)), "--D");
  if (!o.polarization.empty()) req.a = parse_divisor(L, o.polarization, "--A", basis_of(o));
  req.multiple = o.multiple;
  req.max_terms = o.max_terms;
  emit(out, analyze_json(L, req), o.json, o.out, print_report_text);
  return 0;
}

int cmd_destabilize(const Options& o, std::ostream& out) {
  const Loaded L = load_surface(o.fan, o.surface);
  require(o.divisor, "--D");
  require(o.polarization, "--A");
  if (!o.multiple) throw Error(ErrorKind::InvalidInput, "--d is required");
  const TDivisor D = integral(parse_divisor(L, o.divisor, "--D", basis_of(o)), "--D");
  const QDivisor A = parse_divisor(L, o.polarization, "--A", basis_of(o));
  if (!is_ample(L.X, A)) throw Error(ErrorKind::NotAmple, "A must be ample");
  const auto found = find_destabilizer(L.X, D, A, *o.multiple, o.max_terms);
  Json j{{"found", found.has_value()}, {"d", *o.multiple}};
  if (found) {
    j["S"] = ints(to_user(L, found->s));
    if (auto sf = sf_json(L, found->s)) j["S_sf"] = *sf;
    j["sub_slope"] = io::rational_to_json(found->sub_slope);
    j["ambient_slope"] = io::rational_to_json(found->ambient_slope);
    j["strict"] = found->strict;
  }
  emit(out, j, o.json, o.out, [](std::ostream& os, const Json& v) {
    if (!v["found"].get<bool>()) {
      os << "no destabilizer among the candidates\n";
      return;
    }
    os << "S: " << join(v["S"]) << (v["strict"].get<bool>() ? " (strict)" : " (equal slopes)")
       << "\nslopes: subbundle " << v["sub_slope"].get<std::string>() << ", ambient "
       << v["ambient_slope"].get<std::string>() << "\n";
  });
  return 0;
}

int cmd_polarize(const Options& o, std::ostream& out) {
  const Loaded L = load_surface(o.fan, o.surface);
  require(o.divisor, "--D");
  const TDivisor D = integral(parse_divisor(L, o.divisor, "--D", basis_of(o)), "--D");
  PolarizationOptions opts;
  opts.require_hypotheses = !o.allow_low_rank;
  const Polarization p = construct_polarization(L.X, D, opts);
  const HypothesisReport hyp = check_hypotheses(L.X);
  Json j{{"A", rationals(to_user(L, p.a))},
         {"A_integral", ints(to_user(L, p.a.primitive_integral()))},
         {"E_j", L.X.is_toric() ? L.X.fan().input_index(p.ej) : p.ej},
         {"t", io::rational_to_json(p.t)},
         {"epsilon", io::rational_to_json(p.epsilon)},
         {"alpha", io::rational_to_json(p.alpha)},
         {"outside_hypotheses", p.outside_hypotheses},
         {"diagnostics", hyp.diagnostics}};
  emit(out, j, o.json, o.out, [](std::ostream& os, const Json& v) {
    os << "A: " << join(v["A"]) << "  (integral " << join(v["A_integral"]) << ")\n"
       << "E_j: " << v["E_j"].get<std::size_t>() << ", t = " << v["t"].get<std::string>()
       << ", epsilon = " << v["epsilon"].get<std::string>() << ", alpha = "
       << v["alpha"].get<std::string>() << "\n";
    if (v["outside_hypotheses"].get<bool>()) os << "note: " << kOutsideHypotheses << "\n";
    for (const auto& d : v["diagnostics"]) os << "diagnostic: " << d.get<std::string>() << "\n";
  });
  return 0;
}

int cmd_hirzebruch(const Options& o, std::ostream& out) {
  require(o.a, "--a");
  require(o.b, "--b");
  const Rational a = parse_rational(o.a);
  const Rational b = parse_rational(o.b);
  const RegionVerdict v = hirzebruch_region(o.ell, a, b);
  const AlphaBeta ab = hirzebruch_alpha_beta(o.ell, a, b);
  Json j{{"ell", o.ell},
         {"a", io::rational_to_json(a)},
         {"b", io::rational_to_json(b)},
         {"verdict", std::string(to_string(v))},
         {"boundary", io::rational_to_json(hirzebruch_boundary(o.ell, b))},
         {"quadratic", io::rational_to_json(boundary_quadratic(o.ell, b))},
         {"alpha", io::rational_to_json(ab.alpha)},
         {"beta", io::rational_to_json(ab.beta)}};
  emit(out, j, o.json, o.out, [](std::ostream& os, const Json& v) {
    os << v["verdict"].get<std::string>() << "\n"
       << "boundary a = " << v["boundary"].get<std::string>() << ", alpha = "
       << v["alpha"].get<std::string>() << ", beta = " << v["beta"].get<std::string>() << "\n";
  });
  return 0;
}

int cmd_h0(const Options& o, std::ostream& out) {
  const Loaded L = load_surface(o.fan, o.surface);
  require(o.divisor, "--D");
  const TDivisor D = integral(parse_divisor(L, o.divisor, "--D", basis_of(o)), "--D");
  Json j{{"D", ints(to_user(L, D))},
         {"chi", io::rational_to_json(chi_rr(L.X, D))},
         {"nef", is_nef(L.X, D)},
         {"ample", is_ample(L.X, D)}};
  if (L.X.is_toric()) {
    j["h0"] = h0(L.X, D);
  } else {
    j["h0"] = nullptr;
    j["assumptions"] = Json::array({std::string(kChiAssumption)});
  }
  emit(out, j, o.json, o.out, [](std::ostream& os, const Json& v) {
    if (v["h0"].is_null()) {
      os << "h0 unavailable (abstract surface), chi = " << v["chi"].get<std::string>() << "\n";
    } else {
      os << v["h0"].get<Integer>() << "\n";
    }
  });
  return 0;
}

int cmd_classify(const Options& o, std::ostream& out) {
  require(o.fan, "--fan");
  const Loaded L = load_surface(o.fan, "");
  const Fan& fan = L.X.fan();
  const auto c = self_intersections(fan);
  const IntMatrix m = intersection_matrix(fan);
  std::vector<Integer> selfint(fan.size());
  Json matrix = Json::array();
  std::vector<std::vector<Integer>> rows(fan.size(), std::vector<Integer>(fan.size()));
  for (std::size_t i = 0; i < fan.size(); ++i) {
    selfint[fan.input_index(i)] = c.self_intersection(i);
    for (std::size_t k = 0; k < fan.size(); ++k) rows[fan.input_index(i)][fan.input_index(k)] = m(i, k);
  }
  Fan minimal;
  const auto steps = blow_down_to_minimal(fan, &minimal);
  Json downs = Json::array();
  for (const auto& s : steps) downs.push_back(Json{s.ray.x, s.ray.y});
  Json j{{"type", to_string(recognize(fan))},
         {"picard_rank", recognize(fan).picard_rank},
         {"self_intersections", selfint},
         {"intersection_matrix", rows},
         {"blow_downs", downs},
         {"minimal_model", to_string(recognize(minimal))}};
  emit(out, j, o.json, o.out, [](std::ostream& os, const Json& v) {
    os << v["type"].get<std::string>() << "\nPicard rank: " << v["picard_rank"].get<Integer>()
       << "\nself-intersections: " << join(v["self_intersections"])
       << "\nminimal model: " << v["minimal_model"].get<std::string>() << " after "
       << v["blow_downs"].size() << " blow-downs\n";
  });
  return 0;
}

std::pair<Rational, Rational> parse_range(const std::string& text, const std::string& flag) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorKind::InvalidInput, flag + " '" + text + "': expected lo:hi, e.g. 9/8:3");
  }
  return {parse_rational(text.substr(0, colon)), parse_rational(text.substr(colon + 1))};
}

int cmd_sweep(const Options& o, std::ostream& out) {
  require(o.ells, "--ell");
  require(o.a_range, "--a-range");
  require(o.b_range, "--b-range");
  require(o.step, "--step");
  SweepGrid grid;
  for (const auto& e : parse_list(o.ells, "--ell")) {
    if (boost::multiprecision::denominator(e) != 1) {
      throw Error(ErrorKind::InvalidInput, "--ell takes integers");
    }
    grid.ells.push_back(to_integer(boost::multiprecision::numerator(e)));
  }
  std::tie(grid.a_lo, grid.a_hi) = parse_range(o.a_range, "--a-range");
  std::tie(grid.b_lo, grid.b_hi) = parse_range(o.b_range, "--b-range");
  grid.step = parse_rational(o.step);
  const auto rows = hirzebruch_sweep(grid, !o.no_d0);
  Json j = Json::array();
  for (const auto& r : rows) j.push_back(io::to_json(r));
  emit(out, j, o.json, o.out, [](std::ostream& os, const Json& v) {
    os << "ell,a,b,verdict,alpha,beta,d0\n";
    for (const auto& r : v) {
      os << r["ell"].get<Integer>() << "," << r["a"].get<std::string>() << ","
         << r["b"].get<std::string>() << "," << r["verdict"].get<std::string>() << ","
         << r["alpha"].get<std::string>() << "," << r["beta"].get<std::string>() << ","
         << (r["d0"].is_null() ? std::string() : std::to_string(r["d0"].get<Integer>())) << "\n";
    }
  });
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact destabilization certificates for syzygy bundles on toric surfaces"};
  app.require_subcommand(1);
  Options o;

  auto surface_opts = [&](CLI::App* c) {
    c->add_option("--fan", o.fan, "fan file {\"rays\": [[x,y], ...]}");
    c->add_option("--surface", o.surface, "abstract surface file");
    c->add_option("--D", o.divisor, "divisor coefficients, comma separated");
    c->add_flag("--sf", o.sf, "coefficients in the (S, F) basis of a Hirzebruch fan");
    c->add_flag("--he", o.he, "coefficients in the (H, E) basis of F1 (H = S + F, E = S)");
    c->add_flag("--json", o.json, "machine-readable output");
    c->add_option("--out", o.out, "write output to this file");
  };

  auto* analyze_cmd = app.add_subcommand("analyze", "decide instability and emit a certificate");
  surface_opts(analyze_cmd);
  analyze_cmd->add_option("--A", o.polarization, "polarization coefficients");
  analyze_cmd->add_option("--d", o.multiple, "multiple d of D");
  analyze_cmd->add_option("--k", o.max_terms, "max generators summed into S (default 2)");
  analyze_cmd->add_option("--verify", o.verify, "re-verify a JSON report");

  auto* destab_cmd = app.add_subcommand("destabilize", "search subbundles M_{O(dD-S)}");
  surface_opts(destab_cmd);
  destab_cmd->add_option("--A", o.polarization, "polarization coefficients");
  destab_cmd->add_option("--d", o.multiple, "multiple d of D");
  destab_cmd->add_option("--k", o.max_terms, "max generators summed into S (default 2)");

  auto* polarize_cmd = app.add_subcommand("polarize", "build a destabilizing polarization");
  surface_opts(polarize_cmd);
  polarize_cmd->add_flag("--allow-low-rank", o.allow_low_rank,
                         "also run on surfaces outside the rank >= 3 hypotheses");

  auto* hirz_cmd = app.add_subcommand("hirzebruch", "region test for A = S + aF, D = S + bF");
  hirz_cmd->add_option("--ell", o.ell, "Hirzebruch index ell >= 1")->required();
  hirz_cmd->add_option("--a", o.a, "a = A2/A1")->required();
  hirz_cmd->add_option("--b", o.b, "b = B2/B1")->required();
  hirz_cmd->add_flag("--json", o.json, "machine-readable output");

  auto* h0_cmd = app.add_subcommand("h0", "lattice-point h0 and Riemann-Roch chi");
  surface_opts(h0_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "recognize a fan and its blow-downs");
  classify_cmd->add_option("--fan", o.fan, "fan file")->required();
  classify_cmd->add_flag("--json", o.json, "machine-readable output");

  auto* sweep_cmd = app.add_subcommand("sweep", "map the Hirzebruch instability region");
  sweep_cmd->add_option("--ell", o.ells, "comma-separated ell values")->required();
  sweep_cmd->add_option("--a-range", o.a_range, "lo:hi (inclusive)")->required();
  sweep_cmd->add_option("--b-range", o.b_range, "lo:hi (inclusive)")->required();
  sweep_cmd->add_option("--step", o.step, "grid step, e.g. 1/8")->required();
  sweep_cmd->add_flag("--no-d0", o.no_d0, "skip the d0 computation");
  sweep_cmd->add_flag("--json", o.json, "JSON rows instead of CSV");
  sweep_cmd->add_option("--out", o.out, "write output to this file");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    std::string sub;
    for (auto* s : app.get_subcommands()) sub = s->get_name();
    err << "fix: run `syzygy " << (sub.empty() ? "" : sub + " ") << "--help` for usage\n";
    return 2;
  }

  try {
    if (analyze_cmd->parsed()) return cmd_analyze(o, out);
    if (destab_cmd->parsed()) return cmd_destabilize(o, out);
    if (polarize_cmd->parsed()) return cmd_polarize(o, out);
    if (hirz_cmd->parsed()) return cmd_hirzebruch(o, out);
    if (h0_cmd->parsed()) return cmd_h0(o, out);
    if (classify_cmd->parsed()) return cmd_classify(o, out);
    if (sweep_cmd->parsed()) return cmd_sweep(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? 2 : 1;
  } catch (const Json::exception& e) {
    err << "error: malformed JSON input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace syzygy::cli
