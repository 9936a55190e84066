#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <hypmetrics/hypmetrics.hpp>

namespace hypmetrics::cli {

using nlohmann::json;

namespace {

double parse_real(std::string_view token) {
  const std::string s(token);
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    throw ParseFailure(fmt::format("'{}' is not a finite number", s));
  }
  return v;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Point point_from_json(const json& j) {
  if (!j.is_array()) throw ParseFailure("points must be JSON arrays of numbers");
  std::vector<double> coords;
  for (const json& c : j) {
    if (!c.is_number()) throw ParseFailure("point coordinates must be numbers");
    coords.push_back(c.get<double>());
  }
  return Point(std::span<const double>(coords));
}

std::size_t dim_from_json(const json& j) {
  if (!j.contains("dim")) return 2;
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() < 0) throw ParseFailure("dim must be an integer");
  return j["dim"].get<std::size_t>();
}

struct Config {
  std::string domain;
  std::string metric;
  std::string x;
  std::string y;
  std::string center;
  std::string radius;
  std::size_t rays = 720;
  std::size_t samples = 10000;
  std::optional<double> tol;
  std::string output;
  std::string format;
  bool oracle = false;
  std::string suite;
  std::string r_grid;
  std::string x_norms = "0.1,1,10";
  double sharp_tol = 1e-3;
  std::size_t trials = 1000000;
  std::uint64_t seed = 1;
  std::string kind = "radii";
};

MetricKind metric_from(const std::string& name) {
  const auto kind = parse_metric_kind(name);
  if (!kind) throw ParseFailure(fmt::format("unknown metric '{}'", name));
  return *kind;
}

double default_tol() {
  if (const char* env = std::getenv("HYPMETRICS_TOL")) {
    const double v = parse_real(trim(env));
    if (!(v > 0.0)) throw ParseFailure("HYPMETRICS_TOL must be positive");
    return v;
  }
  return kDefaultTolerance;
}

// Writes to --output when given, otherwise to `out`.
void emit(const Config& cfg, std::ostream& out, const std::string& text) {
  if (cfg.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(cfg.output, std::ios::binary);
  if (!file) throw Error(fmt::format("cannot write {}", cfg.output));
  file << text;
}

json point_json(const Point& p) { return json(std::vector<double>(p.coords().begin(), p.coords().end())); }

json report_json(const InclusionReport& r) {
  json j;
  j["label"] = r.label;
  j["inner"] = {{"metric", to_string(r.inner.metric)}, {"radius", r.inner.radius}};
  j["outer"] = {{"metric", to_string(r.outer.metric)}, {"radius", r.outer.radius}};
  j["holds"] = r.holds;
  j["min_margin"] = r.min_margin;
  j["sharpness_gap"] = r.sharpness_gap;
  j["worst_point"] = r.worst_point.empty() ? json(nullptr) : point_json(r.worst_point);
  j["boundary_contact"] = r.boundary_contact;
  j["locus_error"] = r.locus_error ? json(*r.locus_error) : json(nullptr);
  j["samples"] = r.samples;
  j["notes"] = r.notes;
  return j;
}

SupResult oracle_for(MetricKind kind, const Domain& domain, const Point& x, const Point& y, double tol) {
  SupOptions options;
  options.tol = std::min(tol, 1e-10);
  options.focus = {x, y};
  const double w = 20.0 * (norm(x) + norm(y) + 1.0);
  options.window = Window{-w, w};
  if (kind == MetricKind::S) {
    const double d = distance(x, y);
    return sup_oracle(domain, [&](const Point& z) { return d / (distance(x, z) + distance(z, y)); }, options);
  }
  return sup_oracle(domain, [&](const Point& z) { return angle_at(x, z, y); }, options);
}

int cmd_eval(const Config& cfg, std::ostream& out) {
  const Domain domain = load_domain(cfg.domain);
  const MetricKind kind = metric_from(cfg.metric);
  const Point x = parse_point(cfg.x);
  const Point y = parse_point(cfg.y);
  const double value = evaluate(kind, domain, x, y);
  out << format_value(value) << '\n';
  if (cfg.oracle) {
    if (kind != MetricKind::S && kind != MetricKind::V) {
      out << fmt::format("oracle: n/a ({} has no boundary supremum)\n", to_string(kind));
    } else if (x == y) {
      out << "oracle: 0\ndiscrepancy: 0\n";
    } else {
      const SupResult r = oracle_for(kind, domain, x, y, cfg.tol.value_or(default_tol()));
      out << "oracle: " << format_value(r.value) << '\n';
      out << "discrepancy: " << fmt::format("{:.3e}", std::abs(r.value - value)) << '\n';
    }
  }
  return kOk;
}

int cmd_ball(const Config& cfg, std::ostream& out) {
  const Domain domain = load_domain(cfg.domain);
  const MetricKind kind = metric_from(cfg.metric);
  const Point center = parse_point(cfg.center);
  const std::vector<double> radii = parse_list(cfg.radius);
  TraceOptions options;
  options.tol = cfg.tol.value_or(default_tol());
  std::vector<BallTrace> traces;
  for (double r : radii) traces.push_back(trace_ball(domain, kind, center, r, cfg.rays, options));

  const std::string format = cfg.format.empty() ? "svg" : cfg.format;
  if (format == "csv") {
    std::ostringstream csv;
    write_trace_csv(csv, traces);
    emit(cfg, out, csv.str());
  } else if (format == "svg") {
    if (domain.dim() != 2) throw DimensionError("SVG output needs a planar domain; use --format csv");
    SvgFigure figure;
    figure.domain = domain;
    for (const BallTrace& t : traces) {
      for (SvgLayer& layer : trace_layers(t)) figure.layers.push_back(std::move(layer));
    }
    figure.markers.push_back(center);
    emit(cfg, out, render_svg(figure));
  } else {
    throw ParseFailure(fmt::format("unknown ball format '{}'", format));
  }
  return kOk;
}

std::string csv_table(const std::vector<std::vector<std::string>>& rows) {
  std::string s;
  for (const auto& row : rows) s += fmt::format("{}\n", fmt::join(row, ","));
  return s;
}

int finish_report(const Config& cfg, std::ostream& out, const json& report,
                  const std::vector<std::vector<std::string>>& csv_rows, bool ok) {
  const std::string format = cfg.format.empty() ? "json" : cfg.format;
  if (format == "json") {
    if (!cfg.output.empty()) emit(cfg, out, report.dump(2) + "\n");
  } else if (format == "csv") {
    if (!cfg.output.empty()) emit(cfg, out, csv_table(csv_rows));
  } else {
    throw ParseFailure(fmt::format("unknown report format '{}'", format));
  }
  out << (ok ? "ok" : "FAILED") << '\n';
  return ok ? kOk : kClaimFailed;
}

int suite_punctured(const Config& cfg, std::ostream& out) {
  const std::vector<double> grid = parse_grid(cfg.r_grid.empty() ? "0.1:3.1:0.1" : cfg.r_grid);
  const std::vector<double> norms = parse_list(cfg.x_norms);
  std::vector<MetricKind> kinds = {MetricKind::S, MetricKind::J, MetricKind::K,
                                   MetricKind::P, MetricKind::Q, MetricKind::Euclidean};
  if (!cfg.metric.empty()) kinds = {metric_from(cfg.metric)};
  InclusionOptions options;
  options.tol = cfg.tol.value_or(default_tol());

  json cases = json::array();
  std::vector<std::vector<std::string>> rows = {
      {"metric", "x_norm", "r", "t", "min_margin", "sharpness_gap", "holds", "sharp", "located"}};
  bool ok = true;
  std::size_t failures = 0;
  for (MetricKind kind : kinds) {
    for (double a : norms) {
      const std::size_t n = 2;
      const Domain domain = Domain::punctured({Point::zero(n)});
      for (double r : grid) {
        const double t = best_radius(kind, a, r);
        const InclusionReport rep =
            verify_inclusion(domain, {kind, t}, {MetricKind::V, r}, a * Point::basis(n, 0), cfg.samples, options);
        const bool sharp = rep.sharpness_gap <= cfg.sharp_tol;
        const bool located = !rep.locus_error || *rep.locus_error <= std::numbers::pi / 180.0;
        if (!rep.holds || !sharp || !located) {
          ok = false;
          ++failures;
          out << fmt::format("FAIL {} |x|={} r={:.6g} t={:.6g} margin={:.3e} gap={:.3e}{}\n", to_string(kind), a, r,
                             t, rep.min_margin, rep.sharpness_gap, located ? "" : " extremal point off |y|=|x|");
        }
        json j = report_json(rep);
        j["x_norm"] = a;
        j["r"] = r;
        j["sharp"] = sharp;
        j["located"] = located;
        cases.push_back(std::move(j));
        rows.push_back({std::string(to_string(kind)), fmt::format("{}", a), fmt::format("{}", r),
                        fmt::format("{:.12g}", t), fmt::format("{:.6e}", rep.min_margin),
                        fmt::format("{:.6e}", rep.sharpness_gap), rep.holds ? "1" : "0", sharp ? "1" : "0",
                        located ? "1" : "0"});
      }
    }
  }
  out << fmt::format("punctured: {} of {} cases passed\n", cases.size() - failures, cases.size());
  return finish_report(cfg, out, json{{"suite", "punctured"}, {"ok", ok}, {"cases", cases}}, rows, ok);
}

int suite_halfspace(const Config& cfg, std::ostream& out) {
  const std::vector<double> grid = parse_grid(cfg.r_grid.empty() ? "0.1:1.5:0.05" : cfg.r_grid);
  const Point x = cfg.x.empty() ? Point{0.0, 1.0} : parse_point(cfg.x);
  const double tol = cfg.tol.value_or(default_tol());
  json cases = json::array();
  std::vector<std::vector<std::string>> rows = {{"relation", "r", "min_margin", "sharpness_gap", "holds"}};
  bool ok = true;
  std::size_t checks = 0;
  std::size_t failures = 0;
  for (double r : grid) {
    const HalfspaceSuite suite = halfspace_inclusion_suite(x, r, cfg.samples, tol);
    for (const InclusionReport& rep : suite.reports) {
      const bool claimed_sharp = rep.label == "inner1" || rep.label == "outer1";
      const bool pass = rep.holds && (!claimed_sharp || rep.sharpness_gap <= cfg.sharp_tol);
      ++checks;
      if (!pass) {
        ok = false;
        ++failures;
        out << fmt::format("FAIL {} r={:.6g} margin={:.3e} gap={:.3e}\n", rep.label, r, rep.min_margin,
                           rep.sharpness_gap);
      }
      json j = report_json(rep);
      j["r"] = r;
      cases.push_back(std::move(j));
      rows.push_back({rep.label, fmt::format("{}", r), fmt::format("{:.6e}", rep.min_margin),
                      fmt::format("{:.6e}", rep.sharpness_gap), rep.holds ? "1" : "0"});
    }
    ++checks;
    const double offset = std::max(std::abs(suite.endpoint_offset_b1), std::abs(suite.endpoint_offset_b2));
    if (offset > 1e-9) {
      ok = false;
      ++failures;
      out << fmt::format("FAIL endpoints off the outer1 sphere r={:.6g} offset={:.3e}\n", r, offset);
    }
    cases.push_back({{"label", "endpoints"}, {"r", r}, {"offset", offset}});
  }
  out << fmt::format("halfspace: {} of {} checks passed\n", checks - failures, checks);
  return finish_report(cfg, out, json{{"suite", "halfspace"}, {"ok", ok}, {"cases", cases}}, rows, ok);
}

int suite_convexity(const Config& cfg, std::ostream& out) {
  const Domain domain = load_domain(cfg.domain.empty() ? R"({"type":"punctured","points":[[0,0]]})" : cfg.domain);
  const MetricKind kind = cfg.metric.empty() ? MetricKind::S : metric_from(cfg.metric);
  const Point center = cfg.center.empty() ? Point::basis(domain.dim(), 0) : parse_point(cfg.center);
  if (cfg.radius.empty()) throw ParseFailure("--radius is required for the convexity suite");
  json cases = json::array();
  std::vector<std::vector<std::string>> rows = {{"r", "convex", "max_deviation", "tol"}};
  bool ok = true;
  for (double r : parse_list(cfg.radius)) {
    const BallTrace trace = trace_ball(domain, kind, center, r, cfg.rays);
    const ConvexityReport rep = convexity_check(trace);
    out << fmt::format("{} r={} {} deviation={:.3e} tol={:.3e}\n", to_string(kind), r,
                       rep.convex ? "convex" : "NOT convex", rep.max_deviation, rep.tol);
    ok = ok && rep.convex;
    cases.push_back({{"r", r},
                     {"convex", rep.convex},
                     {"max_deviation", rep.max_deviation},
                     {"tol", rep.tol},
                     {"witness", point_json(rep.witness)},
                     {"starlike", rep.starlike}});
    rows.push_back({fmt::format("{}", r), rep.convex ? "1" : "0", fmt::format("{:.6e}", rep.max_deviation),
                    fmt::format("{:.6e}", rep.tol)});
  }
  return finish_report(cfg, out, json{{"suite", "convexity"}, {"ok", ok}, {"cases", cases}}, rows, ok);
}

int suite_conjecture_p(const Config& cfg, std::ostream& out) {
  const Domain domain = load_domain(cfg.domain.empty() ? R"({"type":"punctured","points":[[0,0]]})" : cfg.domain);
  const MetricKind kind = cfg.metric.empty() ? MetricKind::P : metric_from(cfg.metric);
  const Point center = cfg.center.empty() ? Point::basis(domain.dim(), 0) : parse_point(cfg.center);
  const std::vector<double> grid = parse_grid(cfg.r_grid.empty() ? "0.35:0.5:0.005" : cfg.r_grid);
  const ThresholdScan scan = convexity_threshold_scan(domain, kind, center, grid, std::nullopt, cfg.rays);
  const double target = std::numbers::sqrt2 - 1.0;
  json report{{"suite", "conjecture-p"}, {"radii", scan.radii}, {"convex", scan.convex}};
  std::vector<std::vector<std::string>> rows = {{"r", "convex"}};
  for (std::size_t k = 0; k < scan.radii.size(); ++k) {
    rows.push_back({fmt::format("{}", scan.radii[k]), scan.convex[k] ? "1" : "0"});
  }
  const auto show = [](const std::optional<double>& v) { return v ? fmt::format("{}", *v) : std::string("none"); };
  out << fmt::format("last convex r = {}, first nonconvex r = {}\n", show(scan.last_convex),
                     show(scan.first_nonconvex));
  if (scan.last_convex && scan.first_nonconvex) {
    const bool contains = *scan.last_convex <= target && target <= *scan.first_nonconvex;
    out << fmt::format("bracket width {:.6g}; contains sqrt(2)-1: {}\n", *scan.first_nonconvex - *scan.last_convex,
                       contains ? "yes" : "no");
    report["bracket"] = {*scan.last_convex, *scan.first_nonconvex};
    report["contains_sqrt2_minus_1"] = contains;
  }
  return finish_report(cfg, out, report, rows, true);
}

int suite_p_triangle(const Config& cfg, std::ostream& out) {
  const Domain domain = load_domain(cfg.domain.empty() ? R"({"type":"unitball","dim":2})" : cfg.domain);
  const auto violation = p_triangle_experiment(domain, cfg.trials, cfg.seed);
  json report{{"suite", "p-triangle"}, {"domain", describe(domain)}, {"trials", cfg.trials}, {"seed", cfg.seed}};
  std::vector<std::vector<std::string>> rows = {{"found", "trial", "excess"}};
  if (violation) {
    out << fmt::format("violation at trial {}: p(x,z) - p(x,y) - p(y,z) = {:.6e}\n", violation->trial,
                       violation->excess);
    out << fmt::format("x = {}\ny = {}\nz = {}\n", to_string(violation->x), to_string(violation->y),
                       to_string(violation->z));
    report["violation"] = {{"x", point_json(violation->x)},
                           {"y", point_json(violation->y)},
                           {"z", point_json(violation->z)},
                           {"excess", violation->excess},
                           {"trial", violation->trial}};
    rows.push_back({"1", fmt::format("{}", violation->trial), fmt::format("{:.6e}", violation->excess)});
  } else {
    out << fmt::format("no violation in {} trials\n", cfg.trials);
    report["violation"] = nullptr;
    rows.push_back({"0", "", ""});
  }
  return finish_report(cfg, out, report, rows, true);
}

int cmd_verify(const Config& cfg, std::ostream& out) {
  if (cfg.suite == "punctured") return suite_punctured(cfg, out);
  if (cfg.suite == "halfspace") return suite_halfspace(cfg, out);
  if (cfg.suite == "convexity") return suite_convexity(cfg, out);
  if (cfg.suite == "conjecture-p") return suite_conjecture_p(cfg, out);
  if (cfg.suite == "p-triangle") return suite_p_triangle(cfg, out);
  throw ParseFailure(fmt::format("unknown suite '{}'", cfg.suite));
}

int cmd_table(const Config& cfg, std::ostream& out) {
  std::vector<std::vector<std::string>> rows;
  if (cfg.kind == "radii") {
    const std::vector<double> grid = parse_grid(cfg.r_grid.empty() ? "0.1:3.1:0.1" : cfg.r_grid);
    const std::vector<double> norms = parse_list(cfg.x_norms);
    rows.push_back({"x_norm", "r", "s", "j", "k", "p", "q", "euclidean"});
    for (double a : norms) {
      for (double r : grid) {
        std::vector<std::string> row = {fmt::format("{}", a), fmt::format("{}", r)};
        for (MetricKind kind : {MetricKind::S, MetricKind::J, MetricKind::K, MetricKind::P, MetricKind::Q,
                                MetricKind::Euclidean}) {
          row.push_back(fmt::format("{:.12g}", best_radius(kind, a, r)));
        }
        rows.push_back(std::move(row));
      }
    }
  } else if (cfg.kind == "sandwich") {
    const std::vector<double> grid = parse_grid(cfg.r_grid.empty() ? "0.1:1.5:0.1" : cfg.r_grid);
    const Point x = cfg.x.empty() ? Point{0.0, 1.0} : parse_point(cfg.x);
    rows.push_back({"r", "b1", "b2", "inner1_height", "inner1_radius", "inner2_radius", "outer1_height",
                    "outer1_radius", "outer2_radius"});
    for (double r : grid) {
      const VBallSandwich b = vball_sandwich(x, r);
      const VBallCurve c = vball_curve(r, 8);
      rows.push_back({fmt::format("{}", r), fmt::format("{:.12g}", c.b1), fmt::format("{:.12g}", c.b2),
                      fmt::format("{:.12g}", b.inner1.center.last()), fmt::format("{:.12g}", b.inner1.radius),
                      fmt::format("{:.12g}", b.inner2.radius), fmt::format("{:.12g}", b.outer1.center.last()),
                      fmt::format("{:.12g}", b.outer1.radius), fmt::format("{:.12g}", b.outer2.radius)});
    }
  } else if (cfg.kind == "kinks") {
    const std::vector<double> grid = parse_grid(cfg.r_grid.empty() ? "0.1:1.5:0.1" : cfg.r_grid);
    rows.push_back({"r", "f1_slope_b1", "f2_slope_b1", "m1", "f2_slope_b2", "m2"});
    for (double r : grid) {
      const KinkTangents k = kink_and_tangents(r);
      rows.push_back({fmt::format("{}", r), fmt::format("{:.12g}", k.slope_f1_at_b1),
                      fmt::format("{:.12g}", k.slope_f2_at_b1), fmt::format("{:.12g}", k.slope_l1),
                      fmt::format("{:.12g}", k.slope_f2_at_b2), fmt::format("{:.12g}", k.slope_l2)});
    }
  } else {
    throw ParseFailure(fmt::format("unknown table kind '{}'", cfg.kind));
  }
  emit(cfg, out, csv_table(rows));
  return kOk;
}

int cmd_horocycle(const Config& cfg, std::ostream& out) {
  const Point x = parse_point(cfg.x);
  const Point y = parse_point(cfg.y);
  const HorocyclePair h = horocycle_centers(x, y);
  out << fmt::format("z_plus {} {}\n", format_value(h.z_plus[0]), format_value(h.z_plus[1]));
  out << fmt::format("z_minus {} {}\n", format_value(h.z_minus[0]), format_value(h.z_minus[1]));
  out << fmt::format("degenerate {}\n", h.degenerate);
  out << fmt::format("v {}\n", format_value(v_halfplane(x, y)));
  return kOk;
}

}  // namespace

Point parse_point(std::string_view text) {
  std::vector<double> coords;
  const char sep = text.find(',') != std::string_view::npos ? ',' : ' ';
  for (std::string_view part : split(trim(text), sep)) {
    part = trim(part);
    if (part.empty() && sep == ' ') continue;
    coords.push_back(parse_real(part));
  }
  if (coords.size() < 2) throw ParseFailure(fmt::format("'{}' is not a point of R^n, n >= 2", text));
  return Point(std::span<const double>(coords));
}

std::vector<double> parse_list(std::string_view text) {
  std::vector<double> values;
  for (std::string_view part : split(text, ',')) values.push_back(parse_real(trim(part)));
  return values;
}

std::vector<double> parse_grid(std::string_view text) {
  const auto parts = split(text, ':');
  if (parts.size() == 1) return parse_list(text);
  if (parts.size() != 3) throw ParseFailure(fmt::format("grid '{}' is not lo:hi:step", text));
  const double lo = parse_real(trim(parts[0]));
  const double hi = parse_real(trim(parts[1]));
  const double step = parse_real(trim(parts[2]));
  if (!(step > 0.0) || hi < lo) throw ParseFailure(fmt::format("grid '{}' needs lo <= hi and step > 0", text));
  std::vector<double> values;
  for (std::size_t k = 0;; ++k) {
    const double v = lo + static_cast<double>(k) * step;
    if (v > hi + 1e-9 * step) break;
    values.push_back(v);
  }
  return values;
}

Domain parse_domain(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseFailure(fmt::format("domain JSON: {}", e.what()));
  }
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    throw ParseFailure("domain JSON needs a \"type\" string");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "punctured") {
    if (!j.contains("points") || !j["points"].is_array()) throw ParseFailure("punctured domain needs \"points\"");
    std::vector<Point> points;
    for (const json& p : j["points"]) points.push_back(point_from_json(p));
    return Domain::punctured(std::move(points));
  }
  if (type == "halfspace") return Domain::half_space(dim_from_json(j));
  if (type == "unitball") return Domain::unit_ball(dim_from_json(j));
  if (type == "polygon") {
    if (!j.contains("vertices") || !j["vertices"].is_array()) throw ParseFailure("polygon needs \"vertices\"");
    std::vector<Point> vertices;
    for (const json& p : j["vertices"]) vertices.push_back(point_from_json(p));
    return Domain::polygon(std::move(vertices));
  }
  throw ParseFailure(fmt::format("unknown domain type '{}'", type));
}

Domain load_domain(const std::string& spec) {
  if (spec.empty()) throw ParseFailure("--domain is required");
  if (trim(spec).front() == '{') return parse_domain(spec);
  std::ifstream file(spec);
  if (!file) throw ParseFailure(fmt::format("cannot read domain file {}", spec));
  std::ostringstream text;
  text << file.rdbuf();
  return parse_domain(text.str());
}

std::string format_value(double value) {
  std::string s = fmt::format("{:.12f}", value);
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Hyperbolic-type metrics on canonical domains", "hypmetrics"};
  app.require_subcommand(1);
  double tol_value = 0.0;
  std::vector<CLI::Option*> tol_options;
  auto add_tol = [&](CLI::App* sub) {
    tol_options.push_back(
        sub->add_option("--tol", tol_value, "Tolerance (default 1e-9 or $HYPMETRICS_TOL)")->check(CLI::PositiveNumber));
  };

  CLI::App* eval = app.add_subcommand("eval", "Evaluate m(x, y)");
  eval->add_option("--metric", cfg.metric, "s, j, k, p, q, v or euclidean")->required();
  eval->add_option("--domain", cfg.domain, "Domain JSON file or inline JSON")->required();
  eval->add_option("--x", cfg.x, "First point, e.g. 0,1")->required();
  eval->add_option("--y", cfg.y, "Second point")->required();
  eval->add_flag("--oracle", cfg.oracle, "Also print the boundary-supremum oracle value");
  add_tol(eval);

  CLI::App* ball = app.add_subcommand("ball", "Trace metric balls as SVG or CSV");
  ball->add_option("--metric", cfg.metric)->required();
  ball->add_option("--domain", cfg.domain)->required();
  ball->add_option("--center", cfg.center)->required();
  ball->add_option("--radius", cfg.radius, "One or more radii, comma-separated")->required();
  ball->add_option("--rays", cfg.rays)->check(CLI::Range(16, 1 << 22));
  ball->add_option("--format", cfg.format)->check(CLI::IsMember({"svg", "csv"}));
  ball->add_option("--output,-o", cfg.output);
  add_tol(ball);

  CLI::App* verify = app.add_subcommand("verify", "Run a verification suite; exit 1 when a claim fails");
  verify->add_option("--suite", cfg.suite)
      ->required()
      ->check(CLI::IsMember({"punctured", "halfspace", "convexity", "conjecture-p", "p-triangle"}));
  verify->add_option("--r-grid", cfg.r_grid, "lo:hi:step or a list");
  verify->add_option("--x-norms", cfg.x_norms);
  verify->add_option("--x", cfg.x, "Center for the half-space suite");
  verify->add_option("--metric", cfg.metric);
  verify->add_option("--domain", cfg.domain);
  verify->add_option("--center", cfg.center);
  verify->add_option("--radius", cfg.radius);
  verify->add_option("--rays", cfg.rays)->check(CLI::Range(16, 1 << 22));
  verify->add_option("--samples", cfg.samples)->check(CLI::Range(16, 1 << 24));
  verify->add_option("--sharp-tol", cfg.sharp_tol)->check(CLI::PositiveNumber);
  verify->add_option("--trials", cfg.trials)->check(CLI::PositiveNumber);
  verify->add_option("--seed", cfg.seed);
  verify->add_option("--format", cfg.format)->check(CLI::IsMember({"json", "csv"}));
  verify->add_option("--output,-o", cfg.output);
  add_tol(verify);

  CLI::App* table = app.add_subcommand("table", "Print sharp radii, sandwich balls or kink slopes as CSV");
  table->add_option("--kind", cfg.kind)->check(CLI::IsMember({"radii", "sandwich", "kinks"}));
  table->add_option("--r-grid", cfg.r_grid);
  table->add_option("--x-norms", cfg.x_norms);
  table->add_option("--x", cfg.x);
  table->add_option("--output,-o", cfg.output);

  CLI::App* horocycle = app.add_subcommand("horocycle", "Horocycle centers and v for two half-plane points");
  horocycle->add_option("--x", cfg.x)->required();
  horocycle->add_option("--y", cfg.y)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    for (const CLI::Option* opt : tol_options) {
      if (opt->count() > 0) cfg.tol = tol_value;
    }
    if (!cfg.tol) cfg.tol = default_tol();
    if (*eval) return cmd_eval(cfg, out);
    if (*ball) return cmd_ball(cfg, out);
    if (*verify) return cmd_verify(cfg, out);
    if (*table) return cmd_table(cfg, out);
    return cmd_horocycle(cfg, out);
  } catch (const ParseFailure& e) {
    err << "error: " << e.what() << '\n';
    return kParseError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kDomainError;
  }
}

}  // namespace hypmetrics::cli
