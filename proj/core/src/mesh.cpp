#include "invsurf/mesh.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "invsurf/errors.hpp"

namespace invsurf {

namespace {

double grid_coord(double lo, double hi, int i, int count) {
    if (count <= 1) return lo;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

} // namespace

std::vector<SurfaceSample> sample_grid(const SurfaceModel& surface, const GridSpec& grid,
                                       const InversionSpec& inversion) {
    if (grid.s_count < 1 || grid.u_count < 1) throw EmptyGrid("grid has no points");
    std::vector<SurfaceSample> out;
    out.reserve(static_cast<std::size_t>(grid.s_count) * grid.u_count);
    for (int i = 0; i < grid.s_count; ++i) {
        const double s = grid_coord(grid.s_min, grid.s_max, i, grid.s_count);
        for (int j = 0; j < grid.u_count; ++j) {
            const double u = grid_coord(grid.u_min, grid.u_max, j, grid.u_count);
            const SurfaceJet2 jet = surface.jet(s, u);
            const FundForms forms = fund_forms(jet);
            const CurvatureData curv = curvatures(forms);
            const ConformalFactors fac = conformal_factors(inversion, jet.p, *forms.normal);
            SurfaceSample sample;
            sample.s = s;
            sample.u = u;
            sample.position = jet.p;
            sample.K = curv.K;
            sample.H = curv.H;
            sample.eta = fac.eta;
            sample.lambda = fac.lambda;
            out.push_back(sample);
        }
    }
    return out;
}

void write_obj(std::ostream& out, const std::vector<SurfaceSample>& samples,
               const GridSpec& grid) {
    if (samples.size() != static_cast<std::size_t>(grid.s_count) * grid.u_count)
        throw InvalidParam("sample count does not match the grid");
    char line[160];
    for (const SurfaceSample& v : samples) {
        std::snprintf(line, sizeof(line), "v %.17g %.17g %.17g\n", v.position.x(),
                      v.position.y(), v.position.z());
        out << line;
    }
    // quad (i,j) splits along the fixed (v00, v11) diagonal
    const int m = grid.u_count;
    for (int i = 0; i + 1 < grid.s_count; ++i) {
        for (int j = 0; j + 1 < grid.u_count; ++j) {
            const int v00 = i * m + j + 1; // OBJ indices are 1-based
            const int v01 = i * m + j + 2;
            const int v10 = (i + 1) * m + j + 1;
            const int v11 = (i + 1) * m + j + 2;
            std::snprintf(line, sizeof(line), "f %d %d %d\n", v00, v10, v11);
            out << line;
            std::snprintf(line, sizeof(line), "f %d %d %d\n", v00, v11, v01);
            out << line;
        }
    }
}

void write_csv(std::ostream& out, const std::vector<SurfaceSample>& samples) {
    out << "s,u,x,y,z,K,H,eta,lambda\n";
    char line[320];
    for (const SurfaceSample& v : samples) {
        std::snprintf(line, sizeof(line),
                      "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", v.s, v.u,
                      v.position.x(), v.position.y(), v.position.z(), v.K, v.H, v.eta,
                      v.lambda);
        out << line;
    }
}

std::vector<Vec3> read_obj_vertices(std::istream& in) {
    std::vector<Vec3> vertices;
    std::string line;
    while (std::getline(in, line)) {
        if (line.size() < 2 || line[0] != 'v' || line[1] != ' ') continue;
        std::istringstream ss(line.substr(2));
        Vec3 v;
        if (!(ss >> v.x() >> v.y() >> v.z()))
            throw InvalidParam("malformed OBJ vertex line: " + line);
        vertices.push_back(v);
    }
    return vertices;
}

} // namespace invsurf
