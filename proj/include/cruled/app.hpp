#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "cruled/builtin_curves.hpp"
#include "cruled/c_surface.hpp"

namespace cruled {

struct RunConfig {
  /// Path to a curve-spec JSON file or a built-in name.
  std::string curve = "example-4.1";
  int s_samples = 32;
  double v_min = -1.0;
  double v_max = 1.0;
  int v_samples = 5;
  double fd_step = kDefaultFdStep;
  /// Closed form vs oracle: absolute, or 10x relative above magnitude 1.
  double tol = 1e-5;
  double frame_tol = 1e-8;
  double class_tol = 1e-7;
  NormalConvention convention = NormalConvention::Smooth;
  std::filesystem::path out_dir = ".";
  bool striction_polyline = true;

  /// Throws InvalidArgument.
  void validate() const;
};

struct LoadedCurve {
  CurveDef def;
  std::optional<ReferenceValues> reference;
  std::string source;
};

LoadedCurve load_curve(const std::string& source);
CSurface build_surface(const RunConfig& config, const LoadedCurve& curve);

/// Oracle curvatures of the surface curve s -> (s, v(s)).
SurfaceCurveCurvatures oracle_along(const CSurface& surface, const std::function<double(double)>& v_of_s,
                                    double s, double h);

/// Fixed 17-significant-digit formatting; negative zero prints as 0, NaN as nan.
std::string format_number(double x);

/// Equispaced grid of `count` points over [lo, hi], endpoints included.
std::vector<double> grid(double lo, double hi, int count);

nlohmann::json build_report(const RunConfig& config);
/// Writes report.json into config.out_dir and returns its path.
std::filesystem::path run_report(const RunConfig& config);

struct MeshFiles {
  std::filesystem::path surface;
  std::optional<std::filesystem::path> striction;
};

/// OBJ text with s_samples x v_samples vertices (row-major, s outer) and
/// 2 (Ns-1)(Nv-1) triangles.
std::string surface_obj(const RunConfig& config, const CSurface& surface);
/// OBJ polyline through the striction line at the s grid.
std::string striction_obj(const RunConfig& config, const CSurface& surface);
MeshFiles export_mesh(const RunConfig& config);

std::string samples_csv(const RunConfig& config, const CSurface& surface);
std::filesystem::path export_samples(const RunConfig& config);

enum class Status { Pass, Warn, Fail };
/// Gate records fail the run on a closed-form/oracle mismatch; reference
/// records only ever warn.
enum class CheckLevel { Gate, Reference };

const char* to_string(Status s) noexcept;

struct VerificationRecord {
  std::string quantity;
  double s = 0.0;
  std::optional<double> v;
  std::optional<double> closed;
  std::optional<double> oracle;
  std::optional<double> reference;
  std::string reference_source;
  double tolerance = 0.0;
  std::optional<double> delta_closed_oracle;
  std::optional<double> delta_reference;
  CheckLevel level = CheckLevel::Gate;
  Status status = Status::Pass;
};

struct VerificationResult {
  std::string curve;
  NormalConvention convention = NormalConvention::Smooth;
  CurveClass curve_class;
  std::vector<VerificationRecord> records;
  std::vector<std::string> notes;
  int skipped_points = 0;

  int count(Status s) const;
  /// 0 iff there are no FAIL records.
  int exit_code() const { return count(Status::Fail) == 0 ? 0 : 1; }
};

VerificationResult run_verification(const RunConfig& config);
nlohmann::json to_json(const VerificationResult& result);
/// Runs the suite, writes verify.json and returns the process exit code.
int verify(const RunConfig& config, VerificationResult* result_out = nullptr);

}  // namespace cruled
