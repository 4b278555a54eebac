#include "cruled/app.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "cruled/errors.hpp"

namespace cruled {
namespace {

using nlohmann::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

json num(double x) {
  if (!std::isfinite(x)) return nullptr;
  return x == 0.0 ? 0.0 : x;
}

json triple_json(const SurfaceCurveCurvatures& c) {
  return {{"kappa_g", num(c.kappa_g)}, {"kappa_n", num(c.kappa_n)}, {"tau_g", num(c.tau_g)}};
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw GeomError(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw GeomError(ErrorKind::Io, "write to " + path.string() + " failed");
}

}  // namespace

void RunConfig::validate() const {
  const auto bad = [](const std::string& what) { throw GeomError(ErrorKind::InvalidArgument, what); };
  if (curve.empty()) bad("curve source is empty");
  if (s_samples < 2) bad("s-samples must be >= 2");
  if (v_samples < 2) bad("v-samples must be >= 2");
  if (!(v_min < v_max)) bad("v range is empty");
  if (!(fd_step > 0.0)) bad("fd-step must be > 0");
  if (!(tol > 0.0) || !(frame_tol > 0.0) || !(class_tol > 0.0)) bad("tolerances must be > 0");
}

SurfaceCurveCurvatures oracle_along(const CSurface& surface, const std::function<double(double)>& v_of_s,
                                    double s, double h) {
  const DomainCurve domain = [&](double t) { return std::pair<double, double>{t, v_of_s(t)}; };
  return oracle_curve_curvatures(surface.surface_fn(), domain, s, h);
}

LoadedCurve load_curve(const std::string& source) {
  if (is_builtin_name(source)) {
    BuiltinCurve b = builtin_curve(source);
    return {std::move(b.def), std::move(b.reference), "builtin:" + source};
  }
  std::ifstream in(source, std::ios::binary);
  if (!in) {
    throw GeomError(ErrorKind::Io, "'" + source + "' is neither a readable file nor a built-in curve");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return {parse_curve_spec(buf.str()), std::nullopt, source};
}

CSurface build_surface(const RunConfig& config, const LoadedCurve& curve) {
  return make_c_surface(curve.def, config.convention, {config.v_min, config.v_max});
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> grid(double lo, double hi, int count) {
  if (count < 2) throw GeomError(ErrorKind::InvalidArgument, "grid needs at least two points");
  std::vector<double> out(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) out[i] = i == count - 1 ? hi : lo + (hi - lo) * i / (count - 1);
  return out;
}

json build_report(const RunConfig& config) {
  config.validate();
  const LoadedCurve curve = load_curve(config.curve);
  const CSurface surface = build_surface(config, curve);
  const Interval sd = surface.s_domain();

  json doc;
  doc["curve"] = {{"name", curve.def.name},
                  {"source", curve.source},
                  {"components", json::array({curve.def.components[0].source(), curve.def.components[1].source(),
                                              curve.def.components[2].source()})},
                  {"input_domain", {num(curve.def.domain.lo), num(curve.def.domain.hi)}},
                  {"arc_length_domain", {num(sd.lo), num(sd.hi)}},
                  {"reparameterized", surface.reparameterized()},
                  {"input_max_speed_deviation", num(surface.input_speed_deviation())}};
  doc["convention"] = to_string(config.convention);
  doc["normalization"] =
      "All curvatures use derivatives with respect to the arc length of the curve they describe; "
      "the oracle divides parameter derivatives by the local speed.";

  const PredicateReport pr = corollary_predicates(surface, std::max(config.s_samples, 16), config.class_tol);
  doc["class"] = {{"kind", to_string(pr.curve_class.kind)},
                  {"max_f", num(pr.curve_class.max_f)},
                  {"max_abs_g", num(pr.curve_class.max_abs_g)},
                  {"max_abs_sin_theta", num(pr.curve_class.max_abs_sin_theta)},
                  {"tol", num(pr.curve_class.tol)},
                  {"samples", pr.curve_class.samples},
                  {"skipped", pr.curve_class.skipped}};

  json trims = json::array();
  for (const auto& t : surface.trim_log()) {
    trims.push_back({{"excised", {num(t.excised.lo), num(t.excised.hi)}}, {"reason", t.reason}});
  }
  doc["trimming"] = std::move(trims);
  json active = json::array();
  for (const auto& a : surface.active_intervals()) active.push_back({num(a.lo), num(a.hi)});
  doc["active_intervals"] = std::move(active);

  json checks = json::array();
  for (const auto& b : pr.checks) {
    checks.push_back({{"id", b.id}, {"statement", b.statement}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"holds", b.holds}});
  }
  doc["predicates"] = {{"striction_equals_base", pr.striction_equals_base},
                       {"developable", pr.developable},
                       {"minimal", pr.minimal},
                       {"base_geodesic", pr.base_geodesic},
                       {"base_asymptotic", pr.base_asymptotic},
                       {"base_principal", pr.base_principal},
                       {"striction_geodesic", pr.striction_geodesic},
                       {"striction_asymptotic", pr.striction_asymptotic},
                       {"striction_principal", pr.striction_principal},
                       {"tol", num(pr.tol)},
                       {"s_samples_used", pr.s_samples_used},
                       {"s_samples_skipped", pr.s_samples_skipped},
                       {"singular_points_skipped", pr.singular_points_skipped},
                       {"checks", std::move(checks)},
                       {"all_checks_hold", pr.all_checks_hold()}};

  json table = json::array();
  for (const double s : grid(sd.lo, sd.hi, config.s_samples)) {
    json row;
    row["s"] = num(s);
    row["active"] = surface.is_active(s);
    try {
      const AltApparatus app = surface.apparatus(s);
      row["f"] = num(app.f);
      row["g"] = num(app.g);
      row["f_prime"] = num(app.f_prime);
      row["g_prime"] = app.has_g_prime ? num(app.g_prime) : json(nullptr);
      row["cos_theta"] = num(app.cos_theta);
      row["sin_theta"] = num(app.sin_theta);
      row["P"] = num(distribution_closed(app));
      const double v_star = striction_offset(app);
      row["v_star"] = num(v_star);
      row["base"] = triple_json(base_curvatures(app));
      row["striction"] = triple_json(striction_curvatures(app));
      try {
        const auto vs = [&surface](double t) { return striction_offset(surface.apparatus(t)); };
        row["striction_oracle"] = triple_json(oracle_along(surface, vs, s, config.fd_step));
      } catch (const GeomError& e) {
        row["striction_oracle"] = nullptr;
        row["striction_oracle_error"] = e.what();
      }
      if (curve.reference && curve.reference->striction) {
        row["striction_reference"] = triple_json(curve.reference->striction(s));
        row["striction_reference_source"] = curve.reference->source;
      }
    } catch (const GeomError& e) {
      row["error"] = e.what();
    }
    table.push_back(std::move(row));
  }
  doc["table"] = std::move(table);
  doc["config"] = {{"s_samples", config.s_samples}, {"v_min", num(config.v_min)},  {"v_max", num(config.v_max)},
                   {"v_samples", config.v_samples}, {"fd_step", num(config.fd_step)}, {"tol", num(config.tol)},
                   {"frame_tol", num(config.frame_tol)}, {"class_tol", num(config.class_tol)}};
  return doc;
}

std::filesystem::path run_report(const RunConfig& config) {
  const json doc = build_report(config);
  const auto path = config.out_dir / "report.json";
  write_file(path, doc.dump(2) + "\n");
  return path;
}

std::string surface_obj(const RunConfig& config, const CSurface& surface) {
  const Interval sd = surface.s_domain();
  const auto ss = grid(sd.lo, sd.hi, config.s_samples);
  const auto vs = grid(config.v_min, config.v_max, config.v_samples);
  std::string out = "# C-ruled surface " + std::to_string(ss.size()) + "x" + std::to_string(vs.size()) + "\n";
  for (const double s : ss) {
    const Vec3 base = surface.base().point(s);
    const Vec3 c = surface.ruling(s);
    for (const double v : vs) {
      const Vec3 p = base + v * c;
      out += "v " + format_number(p.x) + " " + format_number(p.y) + " " + format_number(p.z) + "\n";
    }
  }
  const std::size_t nv = vs.size();
  for (std::size_t i = 0; i + 1 < ss.size(); ++i) {
    for (std::size_t j = 0; j + 1 < nv; ++j) {
      const std::size_t a = i * nv + j + 1, b = a + nv, c = b + 1, d = a + 1;
      out += "f " + std::to_string(a) + " " + std::to_string(b) + " " + std::to_string(c) + "\n";
      out += "f " + std::to_string(a) + " " + std::to_string(c) + " " + std::to_string(d) + "\n";
    }
  }
  return out;
}

std::string striction_obj(const RunConfig& config, const CSurface& surface) {
  const Interval sd = surface.s_domain();
  const auto ss = grid(sd.lo, sd.hi, config.s_samples);
  std::string out = "# striction line\n";
  std::string line = "l";
  std::size_t index = 0;
  for (const double s : ss) {
    const Vec3 p = striction_line(surface, s).point;
    out += "v " + format_number(p.x) + " " + format_number(p.y) + " " + format_number(p.z) + "\n";
    line += " " + std::to_string(++index);
  }
  return out + line + "\n";
}

MeshFiles export_mesh(const RunConfig& config) {
  config.validate();
  const LoadedCurve curve = load_curve(config.curve);
  const CSurface surface = build_surface(config, curve);
  MeshFiles files;
  files.surface = config.out_dir / "surface.obj";
  write_file(files.surface, surface_obj(config, surface));
  if (config.striction_polyline) {
    files.striction = config.out_dir / "striction.obj";
    write_file(*files.striction, striction_obj(config, surface));
  }
  return files;
}

std::string samples_csv(const RunConfig& config, const CSurface& surface) {
  const Interval sd = surface.s_domain();
  std::string out = "s,v,x,y,z,E,F,G,L,M,N,K,H,f,g,P,v_star,kg,kn,tg\n";
  const auto join = [&out](std::initializer_list<double> xs) {
    for (const double x : xs) out += "," + format_number(x);
  };
  for (const double s : grid(sd.lo, sd.hi, config.s_samples)) {
    std::optional<AltApparatus> app;
    try {
      app = surface.apparatus(s);
    } catch (const GeomError& e) {
      if (e.kind() != ErrorKind::FrameUndefined && e.kind() != ErrorKind::DegenerateBaseCurve) throw;
    }
    double f = kNaN, g = kNaN, p = kNaN, v_star = kNaN;
    SurfaceCurveCurvatures base{kNaN, kNaN, kNaN};
    if (app) {
      f = app->f;
      g = app->g;
      try {
        p = distribution_closed(*app);
        v_star = striction_offset(*app);
      } catch (const GeomError& e) {
        if (e.kind() != ErrorKind::SingularPoint) throw;
      }
      base = base_curvatures(*app);
    }
    for (const double v : grid(config.v_min, config.v_max, config.v_samples)) {
      Vec3 pt{kNaN, kNaN, kNaN};
      FormBundle b{kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, kNaN, {}};
      if (app) {
        pt = surface.base().point(s) + v * app->C;
        try {
          b = forms_closed(*app, v);
        } catch (const GeomError& e) {
          if (e.kind() != ErrorKind::SingularPoint && e.kind() != ErrorKind::FrameUndefined) throw;
        }
      }
      out += format_number(s);
      join({v, pt.x, pt.y, pt.z, b.E, b.F, b.G, b.L, b.M, b.N, b.K, b.H, f, g, p, v_star, base.kappa_g,
            base.kappa_n, base.tau_g});
      out += "\n";
    }
  }
  return out;
}

std::filesystem::path export_samples(const RunConfig& config) {
  config.validate();
  const LoadedCurve curve = load_curve(config.curve);
  const CSurface surface = build_surface(config, curve);
  const auto path = config.out_dir / "samples.csv";
  write_file(path, samples_csv(config, surface));
  return path;
}

}  // namespace cruled
