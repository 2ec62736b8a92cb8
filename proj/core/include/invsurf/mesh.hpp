#pragma once

// Grid tessellation and export. Vertices walk the grid row-major (s outer,
// u inner); each quad is split into two triangles along a fixed diagonal, so
// an NxM grid yields N*M vertices and (N-1)*(M-1)*2 faces. All floats print
// with 17 significant digits.

#include <iosfwd>
#include <vector>

#include "invsurf/inversion.hpp"
#include "invsurf/scene.hpp"
#include "invsurf/surface.hpp"

namespace invsurf {

struct SurfaceSample {
    double s = 0.0, u = 0.0;
    Vec3 position = Vec3::Zero();
    double K = 0.0, H = 0.0;
    double eta = 0.0, lambda = 0.0;
};

// Evaluates position, curvatures and conformal factors at every grid vertex.
// Throws (ExcludedPoint/SingularPoint/...) if any vertex is not evaluable.
std::vector<SurfaceSample> sample_grid(const SurfaceModel& surface, const GridSpec& grid,
                                       const InversionSpec& inversion);

void write_obj(std::ostream& out, const std::vector<SurfaceSample>& samples,
               const GridSpec& grid);

// Header is exactly "s,u,x,y,z,K,H,eta,lambda".
void write_csv(std::ostream& out, const std::vector<SurfaceSample>& samples);

// Minimal OBJ reader for round-trip checks: counts and returns vertices.
std::vector<Vec3> read_obj_vertices(std::istream& in);

} // namespace invsurf
