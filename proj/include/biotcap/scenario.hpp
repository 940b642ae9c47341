#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "biotcap/integrator.hpp"
#include "biotcap/material.hpp"

namespace biotcap {

enum class LegType { Isostatic, Oedometric, Triaxial, CustomStrain };

struct Leg {
  LegType type;
  double target_p = 0.0;             // isostatic: final mean Biot pressure [MPa]
  double target_axial_strain = 0.0;  // oedometric / triaxial: final E33
  std::array<double, 6> target_E{};  // custom-strain: final E components
  int steps = 1;
  std::optional<double> max_substep;  // overrides the scenario default
};

struct OutputConfig {
  std::string path;                  // empty means stdout
  int stride = 1;
  std::vector<std::string> columns;  // empty means all
};

struct Scenario {
  MaterialParams material;
  double pc0 = 0.0;
  StepControl control;
  std::vector<Leg> legs;
  OutputConfig output;
};

/// Parse + validate a scenario from JSON text. Throws ParseError (position
/// annotated) or ValidationError (every violated invariant listed).
Scenario parse_scenario(const std::string& json_text);

/// Convenience file loader; throws IoError when unreadable.
Scenario load_scenario(const std::string& path);

/// All CSV column names in emission order.
const std::vector<std::string>& history_columns();

/// Run the scenario's legs on one material point, streaming history rows.
/// csv_path empty -> stdout; stride_override > 0 replaces the scenario's.
/// A schema sidecar (<path>.schema.json) describes the columns.
void run_scenario(const Scenario& s, const std::string& csv_path,
                  int stride_override = 0);

enum class SectionPlane { Meridian, Deviatoric };

/// Trace the F = 0 locus of the initial yield surface by per-ray bisection.
/// Meridian: at = Lode angle [rad], rows (theta, p, q) for p in [-c, pc].
/// Deviatoric: at = mean pressure [MPa], rows (phi, theta, q) over a full
/// revolution using the cos(3 theta) symmetry.
void yield_section(const Scenario& s, SectionPlane plane, double at,
                   int resolution, const std::string& csv_path);

}  // namespace biotcap
