#include <algorithm>
#include <cmath>
#include <fstream>

#include "cruled/app.hpp"
#include "cruled/errors.hpp"

namespace cruled {
namespace {

using nlohmann::json;

// Pass if within tol absolutely, or within 10 * tol relative when the
// magnitude exceeds 1.
bool within(double delta, double tol, double magnitude) {
  if (!std::isfinite(delta)) return false;
  return delta <= tol || (std::fabs(magnitude) > 1.0 && delta <= 10.0 * tol * std::fabs(magnitude));
}

class Recorder {
 public:
  Recorder(VerificationResult& out, const std::optional<ReferenceValues>& ref) : out_(out), ref_(ref) {}

  // Closed form compared with the oracle (when present) and the reference (when present).
  void compare(std::string quantity, double s, std::optional<double> v, double closed,
               std::optional<double> oracle, std::optional<double> reference, double tol,
               CheckLevel level = CheckLevel::Gate) {
    VerificationRecord r;
    r.quantity = std::move(quantity);
    r.s = s;
    r.v = v;
    r.closed = closed;
    r.oracle = oracle;
    r.reference = reference;
    r.tolerance = tol;
    r.level = level;
    if (oracle) {
      r.delta_closed_oracle = std::fabs(closed - *oracle);
      if (!within(*r.delta_closed_oracle, tol, *oracle)) {
        r.status = level == CheckLevel::Gate ? Status::Fail : Status::Warn;
      }
    }
    if (reference && ref_) {
      r.reference_source = ref_->source;
      const double against = oracle ? *oracle : closed;
      r.delta_reference = std::fabs(*reference - against);
      if (!within(*r.delta_reference, tol, against) && r.status != Status::Fail) {
        r.status = ref_->gold ? Status::Fail : Status::Warn;
      }
    }
    out_.records.push_back(std::move(r));
  }

  // A residual that must not exceed tol.
  void bound(std::string quantity, double s, std::optional<double> v, double residual, double tol) {
    VerificationRecord r;
    r.quantity = std::move(quantity);
    r.s = s;
    r.v = v;
    r.closed = residual;
    r.tolerance = tol;
    r.status = std::fabs(residual) <= tol ? Status::Pass : Status::Fail;
    out_.records.push_back(std::move(r));
  }

  std::optional<double> ref1(const std::function<double(double)>& fn, double s) const {
    if (!ref_ || !fn) return std::nullopt;
    return fn(s);
  }
  std::optional<double> ref2(const std::function<double(double, double)>& fn, double s, double v) const {
    if (!ref_ || !fn) return std::nullopt;
    return fn(s, v);
  }

 private:
  VerificationResult& out_;
  const std::optional<ReferenceValues>& ref_;
};

std::optional<double> opt(bool present, double x) {
  return present ? std::optional<double>(x) : std::nullopt;
}

void compare_triple(Recorder& rec, const std::string& prefix, double s, const SurfaceCurveCurvatures& closed,
                    const std::optional<SurfaceCurveCurvatures>& oracle,
                    const std::optional<SurfaceCurveCurvatures>& reference, double tol, CheckLevel level) {
  rec.compare(prefix + ".kappa_g", s, std::nullopt, closed.kappa_g, opt(oracle.has_value(), oracle ? oracle->kappa_g : 0),
              opt(reference.has_value(), reference ? reference->kappa_g : 0), tol, level);
  rec.compare(prefix + ".kappa_n", s, std::nullopt, closed.kappa_n, opt(oracle.has_value(), oracle ? oracle->kappa_n : 0),
              opt(reference.has_value(), reference ? reference->kappa_n : 0), tol, level);
  rec.compare(prefix + ".tau_g", s, std::nullopt, closed.tau_g, opt(oracle.has_value(), oracle ? oracle->tau_g : 0),
              opt(reference.has_value(), reference ? reference->tau_g : 0), tol, level);
}

// Minimum D along the oracle stencil of a surface curve, below which the
// finite-difference normal is not trusted.
constexpr double kOracleMinD = 1e-8;

void verify_point(const RunConfig& config, const CSurface& surface, const std::optional<ReferenceValues>& ref,
                  Recorder& rec, VerificationResult& out, double s) {
  const AltFrameJets jets = surface.frame_jets(s);
  const AltApparatus app = apparatus_from_jets(jets);

  rec.bound("frame_ode_residual", s, std::nullopt, frame_ode_residuals(jets).max(), config.frame_tol);
  const TangentBinormal tb = reconstruct_frenet(app);
  const double recon = std::max(max_abs_diff(tb.T, jets.frenet.T.value()), max_abs_diff(tb.B, jets.frenet.B.value()));
  rec.bound("frenet_reconstruction", s, std::nullopt, recon, 1e-10);
  const double ident = std::max(std::fabs(app.f * app.cos_theta - app.kappa), std::fabs(app.f * app.sin_theta - app.tau));
  rec.bound("f_theta_identity", s, std::nullopt, ident, 1e-12 * std::max(1.0, app.f));

  rec.compare("f", s, std::nullopt, app.f, std::nullopt, rec.ref1(ref ? ref->f : nullptr, s), config.tol);
  rec.compare("g", s, std::nullopt, app.g, std::nullopt, rec.ref1(ref ? ref->g : nullptr, s), config.tol);

  const RuledSurfaceDef generic = surface.as_ruled_surface();
  const double v_star = striction_offset(app);
  rec.compare("v_star", s, std::nullopt, v_star, striction_point(generic, s).offset,
              rec.ref1(ref ? ref->v_star : nullptr, s), config.tol);
  rec.compare("P", s, std::nullopt, distribution_closed(app), distribution_parameter(generic, s),
              rec.ref1(ref ? ref->P : nullptr, s), config.tol);
  if (ref && ref->C) {
    const Vec3 c = ref->C(s);
    rec.compare("C.x", s, std::nullopt, app.C.x, std::nullopt, c.x, config.tol);
    rec.compare("C.y", s, std::nullopt, app.C.y, std::nullopt, c.y, config.tol);
    rec.compare("C.z", s, std::nullopt, app.C.z, std::nullopt, c.z, config.tol);
  }

  // Base curve (v = 0).
  const SurfaceCurveCurvatures base = base_curvatures(app);
  std::optional<SurfaceCurveCurvatures> base_oracle;
  if (app.sin_theta * app.sin_theta >= kOracleMinD) {
    base_oracle = oracle_along(surface, [](double) { return 0.0; }, s, config.fd_step);
  } else {
    ++out.skipped_points;
  }
  std::optional<SurfaceCurveCurvatures> base_ref;
  if (ref && ref->base) base_ref = ref->base(s);
  compare_triple(rec, "base", s, base, base_oracle, base_ref, config.tol, CheckLevel::Gate);
  // Unoriented closed form of the base normal curvature, kept beside the
  // oriented value so the reference sign can be compared with it.
  rec.compare("base.kappa_n_unoriented", s, std::nullopt, -app.f * app.cos_theta, std::nullopt,
              base_ref ? std::optional<double>(base_ref->kappa_n) : std::nullopt, config.tol, CheckLevel::Reference);

  // Striction line (v = v*(s)).
  const SurfaceCurveCurvatures stri = striction_curvatures(app);
  std::optional<SurfaceCurveCurvatures> stri_oracle;
  const double a = app.sin_theta + v_star * app.g;
  if (v_star * v_star * app.f * app.f + a * a >= kOracleMinD) {
    const auto vs = [&surface](double t) { return striction_offset(surface.apparatus(t)); };
    stri_oracle = oracle_along(surface, vs, s, config.fd_step);
  } else {
    ++out.skipped_points;
  }
  std::optional<SurfaceCurveCurvatures> stri_ref;
  if (ref && ref->striction) stri_ref = ref->striction(s);
  compare_triple(rec, "striction", s, stri, stri_oracle, stri_ref, config.tol, CheckLevel::Reference);

  // Fundamental forms on the v grid.
  const SurfaceFn phi = surface.surface_fn();
  for (const double v : grid(config.v_min, config.v_max, config.v_samples)) {
    FormBundle c;
    try {
      c = forms_closed(app, v);
    } catch (const GeomError& e) {
      if (e.kind() != ErrorKind::SingularPoint) throw;
      ++out.skipped_points;
      continue;
    }
    const FormBundle o = oracle_forms(phi, s, v, config.fd_step);
    const auto r2 = [&](const std::function<double(double, double)>& fn) { return rec.ref2(fn, s, v); };
    rec.compare("E", s, v, c.E, o.E, r2(ref ? ref->E : nullptr), config.tol);
    rec.compare("F", s, v, c.F, o.F, r2(ref ? ref->F : nullptr), config.tol);
    rec.compare("G", s, v, c.G, o.G, r2(ref ? ref->G : nullptr), config.tol);
    rec.compare("L", s, v, c.L, o.L, r2(ref ? ref->L : nullptr), config.tol);
    rec.compare("M", s, v, c.M, o.M, r2(ref ? ref->M : nullptr), config.tol);
    rec.compare("N", s, v, c.N, o.N, r2(ref ? ref->N : nullptr), config.tol);
    rec.compare("K", s, v, c.K, o.K, r2(ref ? ref->K : nullptr), config.tol);
    rec.compare("H", s, v, c.H, o.H, r2(ref ? ref->H : nullptr), config.tol);
    std::optional<Vec3> nref;
    if (ref && ref->n) nref = ref->n(s, v);
    rec.compare("n.x", s, v, c.n.x, o.n.x, nref ? std::optional<double>(nref->x) : std::nullopt, config.tol);
    rec.compare("n.y", s, v, c.n.y, o.n.y, nref ? std::optional<double>(nref->y) : std::nullopt, config.tol);
    rec.compare("n.z", s, v, c.n.z, o.n.z, nref ? std::optional<double>(nref->z) : std::nullopt, config.tol);

    // Internal identities among the closed forms.
    const double det = c.E * c.G - c.F * c.F;
    const double a_v = app.sin_theta + v * app.g;
    const double D = v * v * app.f * app.f + a_v * a_v;
    rec.bound("identity.EG_minus_F2_equals_D", s, v, det - D, 1e-10 * std::max(1.0, D));
    const double k_from_forms = (c.L * c.N - c.M * c.M) / det;
    rec.bound("identity.K", s, v, c.K - k_from_forms, 1e-10 * std::max(1.0, std::fabs(c.K)));
    const double h_from_forms = (c.E * c.N - 2.0 * c.F * c.M + c.G * c.L) / (2.0 * det);
    rec.bound("identity.H", s, v, c.H - h_from_forms, 1e-10 * std::max(1.0, std::fabs(c.H)));
    rec.bound("identity.unit_normal", s, v, norm(c.n) - 1.0, 1e-12);
  }
}

}  // namespace

const char* to_string(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::Warn: return "WARN";
    case Status::Fail: return "FAIL";
  }
  return "?";
}

int VerificationResult::count(Status s) const {
  return static_cast<int>(std::count_if(records.begin(), records.end(), [s](const auto& r) { return r.status == s; }));
}

VerificationResult run_verification(const RunConfig& config) {
  config.validate();
  const LoadedCurve curve = load_curve(config.curve);
  const CSurface surface = build_surface(config, curve);

  VerificationResult out;
  out.curve = curve.def.name;
  out.convention = config.convention;
  Recorder rec(out, curve.reference);

  const SpeedCheck speed = unit_speed_check(surface.base(), 256, kSpeedTolerance);
  rec.bound("unit_speed", surface.s_domain().lo, std::nullopt, speed.max_deviation, kSpeedTolerance);

  // Interior grid, clear of the oracle stencil at the ends.
  const Interval sd = surface.s_domain();
  const double margin = std::max(4.0 * config.fd_step, 1e-3 * sd.length());
  for (const double s : grid(sd.lo + margin, sd.hi - margin, config.s_samples)) {
    if (!surface.is_active(s)) {
      ++out.skipped_points;
      continue;
    }
    verify_point(config, surface, curve.reference, rec, out, s);
  }

  const PredicateReport pr = corollary_predicates(surface, std::max(config.s_samples, 16), config.class_tol);
  out.curve_class = pr.curve_class;
  for (const auto& b : pr.checks) rec.bound("predicate." + b.id, sd.lo, std::nullopt, b.holds ? 0.0 : 1.0, 0.0);

  out.notes.push_back("curvatures are taken with respect to the arc length of the curve they describe");
  out.notes.push_back("striction-line closed forms are reference-level: they agree with the oracle only where g = 0");
  out.notes.push_back("base.kappa_n_unoriented is -f cos(theta) without the sign(sin theta) orientation factor");
  if (!surface.trim_log().empty()) {
    out.notes.push_back(std::to_string(surface.trim_log().size()) + " curvature-zero window(s) excised from the s grid");
  }
  return out;
}

json to_json(const VerificationResult& result) {
  const auto num = [](const std::optional<double>& x) -> json {
    if (!x || !std::isfinite(*x)) return nullptr;
    return *x == 0.0 ? 0.0 : *x;
  };
  json records = json::array();
  for (const auto& r : result.records) {
    records.push_back({{"quantity", r.quantity},
                       {"s", num(r.s)},
                       {"v", num(r.v)},
                       {"closed", num(r.closed)},
                       {"oracle", num(r.oracle)},
                       {"reference", num(r.reference)},
                       {"reference_source", r.reference.has_value() ? json(r.reference_source) : json(nullptr)},
                       {"delta_closed_oracle", num(r.delta_closed_oracle)},
                       {"delta_reference", num(r.delta_reference)},
                       {"tolerance", num(r.tolerance)},
                       {"level", r.level == CheckLevel::Gate ? "gate" : "reference"},
                       {"status", to_string(r.status)}});
  }
  return {{"curve", result.curve},
          {"convention", to_string(result.convention)},
          {"class", to_string(result.curve_class.kind)},
          {"summary",
           {{"pass", result.count(Status::Pass)},
            {"warn", result.count(Status::Warn)},
            {"fail", result.count(Status::Fail)},
            {"skipped_points", result.skipped_points}}},
          {"exit_code", result.exit_code()},
          {"notes", result.notes},
          {"records", std::move(records)}};
}

int verify(const RunConfig& config, VerificationResult* result_out) {
  VerificationResult result = run_verification(config);
  const auto path = config.out_dir / "verify.json";
  std::error_code ec;
  std::filesystem::create_directories(config.out_dir, ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw GeomError(ErrorKind::Io, "cannot open " + path.string() + " for writing");
  out << to_json(result).dump(2) << "\n";
  const int code = result.exit_code();
  if (result_out) *result_out = std::move(result);
  return code;
}

}  // namespace cruled
