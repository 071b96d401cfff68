#include "expsum/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace expsum::io {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Json bound_to_json(double v) {
  if (std::isinf(v)) return v < 0 ? Json("-inf") : Json("+inf");
  return Json(v);
}

double bound_from_json(const Json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "+inf") return std::numeric_limits<double>::infinity();
    throw Error(ErrorKind::invalid_input, "bad bound string: " + s);
  }
  if (!j.is_number()) throw Error(ErrorKind::invalid_input, "bound must be a number");
  return j.get<double>();
}

double require_number(const Json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number())
    throw Error(ErrorKind::invalid_input, std::string("missing numeric field: ") + key);
  return j[key].get<double>();
}

}  // namespace

ExpSum problem_from_json(const Json& j) {
  if (!j.contains("terms") || !j["terms"].is_array() || j["terms"].empty())
    throw Error(ErrorKind::invalid_input, "problem file needs a non-empty terms array");
  std::vector<ExpTerm> terms;
  terms.reserve(j["terms"].size());
  for (const auto& t : j["terms"]) {
    terms.push_back({Complex(require_number(t, "re"), require_number(t, "im")),
                     require_number(t, "freq")});
  }
  return ExpSum(std::move(terms));
}

ExpSum load_problem(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorKind::invalid_input, "cannot open problem file: " + path.string());
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::invalid_input, std::string("problem file is not valid JSON: ") + e.what());
  }
  return problem_from_json(j);
}

Json decomposition_to_json(const StripDecomposition& dec) {
  Json j;
  j["regions"] = Json::array();
  for (const auto& r : dec.regions) {
    Json e;
    e["x_lo"] = bound_to_json(r.x_lo);
    e["x_hi"] = bound_to_json(r.x_hi);
    e["dominant"] = r.dominant;
    j["regions"].push_back(e);
  }
  j["strips"] = Json::array();
  for (const auto& s : dec.strips) {
    Json e;
    e["x_lo"] = s.x_lo;
    e["x_hi"] = s.x_hi;
    e["j"] = s.left_dominant;
    e["k"] = s.right_dominant;
    j["strips"].push_back(e);
  }
  return j;
}

StripDecomposition decomposition_from_json(const Json& j) {
  const std::string problem = validate_decomposition_json(j);
  if (!problem.empty()) throw Error(ErrorKind::invalid_input, problem);
  StripDecomposition dec;
  for (const auto& e : j["regions"])
    dec.regions.push_back(
        {bound_from_json(e["x_lo"]), bound_from_json(e["x_hi"]), e["dominant"].get<int>()});
  int idx = 0;
  for (const auto& e : j["strips"])
    dec.strips.push_back({e["x_lo"].get<double>(), e["x_hi"].get<double>(),
                          e["j"].get<int>(), e["k"].get<int>(), idx++});
  return dec;
}

std::string validate_decomposition_json(const Json& j) {
  if (!j.is_object()) return "document is not an object";
  if (!j.contains("regions") || !j["regions"].is_array()) return "missing regions array";
  if (!j.contains("strips") || !j["strips"].is_array()) return "missing strips array";
  const auto& regions = j["regions"];
  const auto& strips = j["strips"];
  if (regions.size() < 2) return "need at least two regions";
  if (strips.size() + 1 != regions.size()) return "strips must interleave regions";

  double prev_hi = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < regions.size(); ++i) {
    const auto& r = regions[i];
    if (!r.contains("x_lo") || !r.contains("x_hi") || !r.contains("dominant") ||
        !r["dominant"].is_number_integer())
      return "region " + std::to_string(i) + " is malformed";
    double lo, hi;
    try {
      lo = bound_from_json(r["x_lo"]);
      hi = bound_from_json(r["x_hi"]);
    } catch (const Error& e) {
      return e.what();
    }
    if (!(lo < hi)) return "region " + std::to_string(i) + " has empty interior";
    if (i == 0 && !std::isinf(lo)) return "leftmost region must be unbounded";
    if (i + 1 == regions.size() && !std::isinf(hi)) return "rightmost region must be unbounded";
    if (i > 0 && lo < prev_hi - 1e-9) return "regions overlap at index " + std::to_string(i);
    prev_hi = hi;
  }
  for (std::size_t i = 0; i < strips.size(); ++i) {
    const auto& s = strips[i];
    if (!s.contains("x_lo") || !s.contains("x_hi") || !s.contains("j") || !s.contains("k") ||
        !s["x_lo"].is_number() || !s["x_hi"].is_number())
      return "strip " + std::to_string(i) + " is malformed";
    const double lo = s["x_lo"].get<double>();
    const double hi = s["x_hi"].get<double>();
    if (hi < lo) return "strip " + std::to_string(i) + " is inverted";
    const double left_hi = bound_from_json(regions[i]["x_hi"]);
    const double right_lo = bound_from_json(regions[i + 1]["x_lo"]);
    if (std::abs(lo - left_hi) > 1e-9 || std::abs(hi - right_lo) > 1e-9)
      return "strip " + std::to_string(i) + " does not tile against its regions";
    if (s["j"].get<int>() != regions[i]["dominant"].get<int>() ||
        s["k"].get<int>() != regions[i + 1]["dominant"].get<int>())
      return "strip " + std::to_string(i) + " dominants disagree with its regions";
  }
  return {};
}

std::string zeros_to_csv(std::span<const ZeroRecord> records) {
  std::ostringstream out;
  out << "re,im,multiplicity,strip_index,residual_logmod,method\n";
  for (const auto& r : records) {
    out << fmt(r.z.real()) << ',' << fmt(r.z.imag()) << ',' << r.multiplicity << ','
        << r.strip_index << ',' << fmt(r.residual_logmod) << ',' << to_string(r.method)
        << '\n';
  }
  return out.str();
}

Json zeros_to_json(std::span<const ZeroRecord> records) {
  Json arr = Json::array();
  for (const auto& r : records) {
    Json e;
    e["re"] = r.z.real();
    e["im"] = r.z.imag();
    e["multiplicity"] = r.multiplicity;
    e["strip_index"] = r.strip_index;
    e["residual_logmod"] = r.residual_logmod;
    e["method"] = to_string(r.method);
    arr.push_back(e);
  }
  return arr;
}

Json density_to_json(std::span<const DensityReport> reports, const LangerResult& langer) {
  Json j;
  j["strips"] = Json::array();
  for (const auto& rep : reports) {
    Json e;
    e["strip_index"] = rep.strip_index;
    e["slope_expected"] = rep.slope_expected;
    e["max_abs_deviation"] = rep.max_abs_deviation;
    e["langer_n"] = rep.langer_n;
    if (std::isfinite(rep.langer_max_deviation))
      e["langer_max_deviation"] = rep.langer_max_deviation;
    e["samples"] = Json::array();
    for (const auto& s : rep.samples) {
      Json se;
      se["r"] = s.r;
      se["count"] = s.count;
      se["expected"] = rep.slope_expected * s.r;
      se["deviation"] = s.deviation;
      e["samples"].push_back(se);
    }
    j["strips"].push_back(e);
  }
  Json lj;
  lj["max_deviation"] = langer.max_deviation;
  lj["pass"] = langer.pass;
  lj["samples"] = Json::array();
  for (const auto& s : langer.samples) {
    Json se;
    se["r"] = s.r;
    se["count"] = s.count;
    se["deviation"] = s.deviation;
    lj["samples"].push_back(se);
  }
  j["langer"] = lj;
  return j;
}

std::string density_to_csv(const DensityReport& report) {
  std::ostringstream out;
  out << "r,count,expected,deviation\n";
  for (const auto& s : report.samples) {
    out << fmt(s.r) << ',' << s.count << ',' << fmt(report.slope_expected * s.r) << ','
        << fmt(s.deviation) << '\n';
  }
  return out.str();
}

Json backlund_to_json(const BacklundBound& b) {
  Json j;
  j["z1"] = {{"re", b.z1.real()}, {"im", b.z1.imag()}};
  j["z2"] = {{"re", b.z2.real()}, {"im", b.z2.imag()}};
  j["R"] = b.disc_radius;
  j["T"] = b.segment_length;
  j["bound"] = b.bound;
  j["lhs"] = b.lhs;
  j["holds"] = b.lhs <= b.bound + 1e-9;
  return j;
}

Json disc_to_json(const DiscExperiment& d) {
  Json j;
  j["radii_partial_sum"] = d.radii_partial_sum;
  j["analytic_tail_bound"] = d.analytic_tail_bound;
  j["lines_tested"] = d.lines_tested;
  j["lines_hitting_infinitely"] = d.lines_hitting_infinitely;
  j["measure_estimate_epsilon"] = d.measure_estimate_epsilon;
  j["cutoff_modulus"] = d.cutoff_modulus;
  j["zero_count"] = d.zero_count;
  j["lines"] = Json::array();
  for (const auto& l : d.lines) {
    Json e;
    e["abscissa"] = l.abscissa;
    e["discs_met"] = l.discs_met;
    e["discs_met_beyond_cutoff"] = l.discs_met_beyond_cutoff;
    j["lines"].push_back(e);
  }
  return j;
}

std::string strip_diagram_svg(const StripDecomposition& dec,
                              std::span<const ZeroRecord> zeros, double y_lo, double y_hi) {
  double x_min = std::numeric_limits<double>::infinity();
  double x_max = -std::numeric_limits<double>::infinity();
  for (const auto& r : dec.regions) {
    if (std::isfinite(r.x_lo)) {
      x_min = std::min(x_min, r.x_lo);
      x_max = std::max(x_max, r.x_lo);
    }
    if (std::isfinite(r.x_hi)) {
      x_min = std::min(x_min, r.x_hi);
      x_max = std::max(x_max, r.x_hi);
    }
  }
  if (!std::isfinite(x_min)) {
    x_min = -1.0;
    x_max = 1.0;
  }
  const double margin = 0.2 * (x_max - x_min) + 0.5;
  x_min -= margin;
  x_max += margin;

  const double w = 900.0, h = 420.0, pad = 40.0;
  const auto sx = [&](double x) {
    return pad + (w - 2 * pad) * (x - x_min) / (x_max - x_min);
  };
  const auto sy = [&](double y) {
    return h - pad - (h - 2 * pad) * (y - y_lo) / (y_hi - y_lo);
  };
  const auto num = [](double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::string(buf);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\"" << h
      << "\" viewBox=\"0 0 " << w << ' ' << h << "\">\n";
  svg << "<rect width=\"" << w << "\" height=\"" << h << "\" fill=\"white\"/>\n";
  for (const auto& r : dec.regions) {
    const double a = std::isfinite(r.x_lo) ? sx(r.x_lo) : pad;
    const double b = std::isfinite(r.x_hi) ? sx(r.x_hi) : w - pad;
    svg << "<rect x=\"" << num(a) << "\" y=\"" << pad << "\" width=\"" << num(b - a)
        << "\" height=\"" << h - 2 * pad
        << "\" fill=\"#e4f1e4\"/>\n";
  }
  for (const auto& s : dec.strips) {
    const double a = sx(s.x_lo), b = sx(s.x_hi);
    svg << "<rect x=\"" << num(a) << "\" y=\"" << pad << "\" width=\""
        << num(std::max(b - a, 1.5)) << "\" height=\"" << h - 2 * pad
        << "\" fill=\"#f3d4d4\"/>\n";
  }
  int label = 0;
  for (const auto& s : dec.strips) {
    for (double x : {s.x_lo, s.x_hi}) {
      svg << "<line x1=\"" << num(sx(x)) << "\" y1=\"" << pad << "\" x2=\"" << num(sx(x))
          << "\" y2=\"" << h - pad << "\" stroke=\"#7a2c2c\" stroke-width=\"1\"/>\n";
      svg << "<text x=\"" << num(sx(x)) << "\" y=\"" << pad - 8 + 14 * (label % 2)
          << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#333\">" << num(x)
          << "</text>\n";
      ++label;
    }
  }
  for (const auto& z : zeros) {
    svg << "<circle cx=\"" << num(sx(z.z.real())) << "\" cy=\"" << num(sy(z.z.imag()))
        << "\" r=\"2.5\" fill=\"#13335c\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::invalid_input, "cannot write file: " + path.string());
  out << content;
}

}  // namespace expsum::io
