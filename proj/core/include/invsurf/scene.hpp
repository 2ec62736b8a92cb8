#pragma once

// Scene files: a plain key/value format with [section] headers describing a
// curve, a surface, an inversion and an evaluation grid. One scene per file.
//
//   # comment
//   [curve]
//   type = builtin              # builtin | expression
//   name = helix                # helix | circle | twisted_cubic
//   params = 1, 1
//   # components = cos(s), sin(s), 0     (expression curves)
//   # arc_length = true
//   [surface]
//   type = tangent_developable  # tangent_developable | expression
//   # components = u*cos(v), u*sin(v), 2*v
//   # u_min_exclusion = 0.001
//   [inversion]
//   center = 0, 0, 0
//   radius = 1
//   [grid]
//   s_min = 0
//   s_max = 6.283185307179586
//   u_min = 0.2
//   u_max = 1.5
//   s_count = 20
//   u_count = 20

#include <optional>
#include <string>
#include <vector>

#include "invsurf/developable.hpp"

namespace invsurf {

struct GridSpec {
    double s_min = 0.0, s_max = 1.0;
    double u_min = 0.0, u_max = 1.0;
    int s_count = 2, u_count = 2;
};

struct SceneConfig {
    enum class CurveKind { None, Builtin, Expression };
    enum class SurfaceKind { TangentDevelopable, Expression };

    CurveKind curve_kind = CurveKind::None;
    std::string curve_name;                 // builtin
    std::vector<double> curve_params;       // builtin
    std::string curve_components;           // expression
    bool curve_arc_length = false;

    SurfaceKind surface_kind = SurfaceKind::TangentDevelopable;
    std::string surface_components;         // expression surfaces
    double u_min_exclusion = 1e-3;          // tangent developable only

    InversionSpec inversion;
    GridSpec grid;
    std::string output_dir; // [output] dir; the CLI's --out takes precedence

    std::string description() const;
};

// The builtin helix(1,1) / unit-sphere scene on the 20x20 grid
// s in [0, 2*pi], u in [0.2, 1.5].
SceneConfig default_scene();

SceneConfig parse_scene(std::string_view text, const std::string& filename = "<scene>");
SceneConfig load_scene(const std::string& path);

// Models realized from a config. The developable is present only for
// tangent-developable scenes; base and inverted surfaces always are.
struct SceneObjects {
    std::optional<CurveModel> curve;
    std::optional<TangentDevelopableModel> developable;
    std::optional<SurfaceModel> base_surface;
    std::optional<SurfaceModel> inverted_surface;
    InversionSpec inversion;
    GridSpec grid;
};

SceneObjects realize_scene(const SceneConfig& config);

} // namespace invsurf
