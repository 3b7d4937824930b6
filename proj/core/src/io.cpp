#include "fracmean/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "fracmean/error.hpp"

namespace fracmean {

namespace {

constexpr const char* kComplexGrammar = "expected a complex literal like 1.5, -2i, 0+1i or 3-0.5e-2i";

bool parse_double(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

// coefficient of i: "", "+", "-" stand for 1, 1, -1
bool parse_imag(std::string_view s, double& out) {
  if (s.empty() || s == "+") {
    out = 1.0;
    return true;
  }
  if (s == "-") {
    out = -1.0;
    return true;
  }
  return parse_double(s, out);
}

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::map<std::string, std::string> parse_pairs(std::string_view params) {
  std::map<std::string, std::string> kv;
  std::size_t pos = 0;
  while (pos <= params.size()) {
    std::size_t end = params.find(',', pos);
    if (end == std::string_view::npos) end = params.size();
    std::string item = trim(params.substr(pos, end - pos));
    if (!item.empty()) {
      std::size_t eq = item.find('=');
      if (eq == std::string::npos) throw ConfigError("params: '" + item + "' is not key=value");
      kv[trim(std::string_view(item).substr(0, eq))] = trim(std::string_view(item).substr(eq + 1));
    }
    pos = end + 1;
  }
  return kv;
}

double get_real(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ConfigError("params: missing '" + key + "'");
  double v;
  if (!parse_double(it->second, v)) throw ConfigError("params: '" + key + "' is not a number");
  return v;
}

Complex get_complex(const std::map<std::string, std::string>& kv, const std::string& key) {
  auto it = kv.find(key);
  if (it == kv.end()) throw ConfigError("params: missing '" + key + "'");
  return parse_complex(it->second);
}

void reject_unknown(const std::map<std::string, std::string>& kv,
                    std::initializer_list<const char*> allowed) {
  for (const auto& [k, v] : kv) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || k == a;
    if (!ok) throw ConfigError("params: unknown key '" + k + "'");
  }
}

Complex complex_from_json(const json& j) {
  if (j.is_string()) return parse_complex(j.get<std::string>());
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2) return {j[0].get<double>(), j[1].get<double>()};
  if (j.is_object()) return {j.value("re", 0.0), j.value("im", 0.0)};
  throw ConfigError("json: cannot read a complex number from " + j.dump());
}

json optional_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  std::string_view s = text;
  if (s.empty()) throw ConfigError(std::string("empty complex literal; ") + kComplexGrammar);
  if (s.find_first_of(" \t") != std::string_view::npos)
    throw ConfigError("'" + std::string(text) + "': " + kComplexGrammar);
  double re = 0.0, im = 0.0;
  if (s.back() != 'i') {
    if (parse_double(s, re)) return {re, 0.0};
    throw ConfigError("'" + std::string(text) + "': " + kComplexGrammar);
  }
  s.remove_suffix(1);
  // split at the last sign that does not belong to an exponent
  std::size_t split = std::string_view::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  bool ok;
  if (split == std::string_view::npos) {
    ok = parse_imag(s, im);
  } else {
    ok = parse_double(s.substr(0, split), re) && parse_imag(s.substr(split), im);
  }
  if (!ok) throw ConfigError("'" + std::string(text) + "': " + kComplexGrammar);
  return {re, im};
}

std::string format_complex(Complex z) {
  std::ostringstream os;
  os << std::setprecision(17) << z.real() << (std::signbit(z.imag()) ? "-" : "+")
     << std::abs(z.imag()) << "i";
  return os.str();
}

DistributionModel parse_model(std::string_view dist, std::string_view params) {
  auto kv = parse_pairs(params);
  DistributionModel m;
  if (dist == "cauchy" || dist == "t3") {
    reject_unknown(kv, {"mu", "sigma"});
    double mu = kv.count("mu") ? get_real(kv, "mu") : 0.0;
    double sigma = kv.count("sigma") ? get_real(kv, "sigma") : 1.0;
    if (dist == "cauchy") {
      m = Cauchy{mu, sigma};
    } else {
      m = ScaledT3{mu, sigma};
    }
  } else if (dist == "poincare") {
    reject_unknown(kv, {"a", "b", "c"});
    m = Poincare{get_real(kv, "a"), get_real(kv, "b"), get_real(kv, "c")};
  } else if (dist == "twopoint") {
    reject_unknown(kv, {"z1", "z2", "w"});
    m = TwoPoint{get_complex(kv, "z1"), get_complex(kv, "z2"),
                 kv.count("w") ? get_real(kv, "w") : 0.5};
  } else if (dist == "point") {
    reject_unknown(kv, {"z"});
    Complex z = get_complex(kv, "z");
    m = TwoPoint{z, z, 1.0};
  } else if (dist == "empirical") {
    reject_unknown(kv, {"file"});
    auto it = kv.find("file");
    if (it == kv.end()) throw ConfigError("empirical: needs file=<csv>");
    std::ifstream in(it->second);
    if (!in) throw ConfigError("empirical: cannot open '" + it->second + "'");
    m = Empirical{read_samples_csv(in)};
  } else {
    throw ConfigError("unknown distribution '" + std::string(dist) +
                      "' (cauchy|t3|poincare|twopoint|point|empirical)");
  }
  validate(m);
  return m;
}

DistributionModel model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dist")) throw ConfigError("json model: needs a \"dist\" field");
  std::string dist = j.at("dist").get<std::string>();
  json p = j.value("params", json::object());
  DistributionModel m;
  try {
    if (dist == "cauchy") {
      m = Cauchy{p.value("mu", 0.0), p.value("sigma", 1.0)};
    } else if (dist == "t3") {
      m = ScaledT3{p.value("mu", 0.0), p.value("sigma", 1.0)};
    } else if (dist == "poincare") {
      m = Poincare{p.at("a").get<double>(), p.at("b").get<double>(), p.at("c").get<double>()};
    } else if (dist == "twopoint") {
      m = TwoPoint{complex_from_json(p.at("z1")), complex_from_json(p.at("z2")), p.value("w", 0.5)};
    } else if (dist == "point") {
      Complex z = complex_from_json(p.at("z"));
      m = TwoPoint{z, z, 1.0};
    } else if (dist == "empirical") {
      const json& s = j.contains("samples") ? j.at("samples") : p.at("samples");
      Empirical e;
      for (const auto& v : s) e.samples.push_back(complex_from_json(v));
      m = std::move(e);
    } else {
      throw ConfigError("unknown distribution '" + dist + "'");
    }
  } catch (const json::exception& ex) {
    throw ConfigError(std::string("json model: ") + ex.what());
  }
  validate(m);
  return m;
}

json to_json(Complex z) { return {{"re", z.real()}, {"im", z.imag()}}; }

json to_json(const DistributionModel& m) {
  json j;
  j["dist"] = model_name(m);
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        if constexpr (std::is_same_v<T, Cauchy> || std::is_same_v<T, ScaledT3>) {
          j["params"] = {{"mu", d.mu}, {"sigma", d.sigma}};
        } else if constexpr (std::is_same_v<T, Poincare>) {
          j["params"] = {{"a", d.a}, {"b", d.b}, {"c", d.c}};
        } else if constexpr (std::is_same_v<T, TwoPoint>) {
          j["params"] = {{"z1", to_json(d.z1)}, {"z2", to_json(d.z2)}, {"w", d.w}};
        } else {
          j["params"] = {{"count", d.samples.size()}};
        }
      },
      m);
  return j;
}

json to_json(const QuadratureConfig& c) {
  return {{"rel_tol", c.rel_tol}, {"abs_tol", c.abs_tol}, {"max_level", c.max_level}};
}

json to_json(const MCConfig& c) {
  return {{"samples", c.samples}, {"seed", c.seed}, {"batch", c.batch}};
}

json to_json(const MomentEstimate& e) {
  json meta;
  meta["route"] = e.meta.route;
  if (e.meta.seed) meta["seed"] = *e.meta.seed;
  if (e.meta.samples) meta["samples"] = *e.meta.samples;
  if (e.meta.evaluations) meta["evaluations"] = *e.meta.evaluations;
  if (e.meta.quadrature) meta["quadrature"] = to_json(*e.meta.quadrature);
  if (!e.meta.note.empty()) meta["note"] = e.meta.note;
  return {{"value", to_json(e.value)},
          {"uncertainty", e.uncertainty},
          {"method", to_string(e.method)},
          {"meta", meta}};
}

json to_json(const ScanResult& s) {
  json rows = json::array();
  for (const auto& r : s.rows) {
    json row = {{"p", r.p}};
    if (r.estimate) {
      row["estimate"] = to_json(*r.estimate);
    } else {
      row["error"] = r.error;
    }
    rows.push_back(row);
  }
  return {{"rows", rows},
          {"max_jump", s.max_jump},
          {"jump_uncertainty", s.jump_uncertainty},
          {"max_jump_ratio", optional_number(s.max_jump_ratio)}};
}

json to_json(const DivergenceReport& r) {
  return {{"partial_sums", r.partial_sums},
          {"log_slope", r.log_slope},
          {"verdict", to_string(r.verdict)},
          {"bound_ok", r.bound_ok},
          {"sup_im", r.sup_im}};
}

json to_json(const DistinguishReport& r) {
  json pts = json::array();
  for (const auto& p : r.points) {
    pts.push_back({{"alpha", to_json(p.alpha)},
                   {"lambda", to_json(p.lambda)},
                   {"a", to_json(p.a)},
                   {"b", to_json(p.b)},
                   {"discrepancy", p.discrepancy},
                   {"uncertainty", p.uncertainty}});
  }
  return {{"points", pts},
          {"max_discrepancy", r.max_discrepancy},
          {"combined_uncertainty", r.combined_uncertainty},
          {"verdict", verdict_text(r)}};
}

json to_json(const BoundReport& r) {
  return {{"p", r.p},
          {"divisor", r.divisor},
          {"abs_moment", r.abs_moment},
          {"moment_abs", r.moment_abs},
          {"bound", optional_number(r.bound)},
          {"slack", optional_number(r.slack)},
          {"tolerance", r.tolerance},
          {"satisfied", r.satisfied},
          {"triangle_ok", r.triangle_ok},
          {"abs_stderr", r.abs_stderr},
          {"moment_stderr", r.moment_stderr},
          {"abs_method", r.abs_method},
          {"moment_method", r.moment_method}};
}

json to_json(const SllnTrajectory& t) {
  json pts = json::array();
  for (const auto& p : t.points) pts.push_back({{"n", p.n}, {"value", to_json(p.running)}});
  json out = {{"target", to_json(t.target)}, {"trajectory", pts}};
  if (!t.points.empty()) {
    out["final"] = to_json(t.points.back().running);
    out["final_distance"] = std::abs(t.points.back().running - t.target);
  }
  return out;
}

std::vector<Complex> read_samples_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ConfigError("csv: empty input");
  if (trim(line) != "re,im") throw ConfigError("csv: header must be 're,im'");
  std::vector<Complex> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = trim(line);
    if (t.empty()) continue;
    std::size_t comma = t.find(',');
    double re, im;
    if (comma == std::string::npos || !parse_double(trim(std::string_view(t).substr(0, comma)), re) ||
        !parse_double(trim(std::string_view(t).substr(comma + 1)), im)) {
      throw ConfigError("csv: bad row at line " + std::to_string(lineno));
    }
    out.emplace_back(re, im);
  }
  if (out.empty()) throw ConfigError("csv: no samples");
  return out;
}

void write_samples_csv(std::ostream& out, const std::vector<Complex>& samples) {
  out << "re,im\n" << std::setprecision(17);
  for (Complex z : samples) out << z.real() << ',' << z.imag() << '\n';
}

void write_scan_csv(std::ostream& out, const ScanResult& s) {
  out << "p,re,im,uncertainty,method\n" << std::setprecision(17);
  for (const auto& r : s.rows) {
    out << r.p << ',';
    if (r.estimate) {
      out << r.estimate->value.real() << ',' << r.estimate->value.imag() << ','
          << r.estimate->uncertainty << ',' << to_string(r.estimate->method) << '\n';
    } else {
      out << ",,,error\n";
    }
  }
}

void write_trajectory_csv(std::ostream& out, const SllnTrajectory& t) {
  out << "n,re,im,target_re,target_im\n" << std::setprecision(17);
  for (const auto& p : t.points) {
    out << p.n << ',' << p.running.real() << ',' << p.running.imag() << ',' << t.target.real()
        << ',' << t.target.imag() << '\n';
  }
}

}  // namespace fracmean
