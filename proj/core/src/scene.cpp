#include "invsurf/scene.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "invsurf/errors.hpp"

namespace invsurf {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<double> parse_number_list(const std::string& file, int line, const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) throw SceneError(file, line, "empty entry in number list");
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw SceneError(file, line, "cannot parse number '" + item + "'");
        }
    }
    return out;
}

double parse_number(const std::string& file, int line, const std::string& text) {
    const auto list = parse_number_list(file, line, text);
    if (list.size() != 1) throw SceneError(file, line, "expected a single number");
    return list[0];
}

bool parse_bool(const std::string& file, int line, const std::string& text) {
    if (text == "true" || text == "1") return true;
    if (text == "false" || text == "0") return false;
    throw SceneError(file, line, "expected true or false, got '" + text + "'");
}

} // namespace

std::string SceneConfig::description() const {
    std::string out;
    switch (curve_kind) {
        case CurveKind::None: break;
        case CurveKind::Builtin: {
            out += "curve=" + curve_name + "(";
            for (std::size_t i = 0; i < curve_params.size(); ++i) {
                if (i) out += ",";
                char buf[32];
                std::snprintf(buf, sizeof(buf), "%g", curve_params[i]);
                out += buf;
            }
            out += ") ";
            break;
        }
        case CurveKind::Expression:
            out += "curve=expr(" + curve_components + ") ";
            break;
    }
    out += surface_kind == SurfaceKind::TangentDevelopable
               ? "surface=tangent_developable "
               : "surface=expr(" + surface_components + ") ";
    char buf[160];
    std::snprintf(buf, sizeof(buf), "inversion=center(%g,%g,%g),r=%g grid=%dx%d s:[%g,%g] u:[%g,%g]",
                  inversion.center.x(), inversion.center.y(), inversion.center.z(),
                  inversion.radius, grid.s_count, grid.u_count, grid.s_min, grid.s_max,
                  grid.u_min, grid.u_max);
    out += buf;
    return out;
}

SceneConfig default_scene() {
    SceneConfig cfg;
    cfg.curve_kind = SceneConfig::CurveKind::Builtin;
    cfg.curve_name = "helix";
    cfg.curve_params = {1.0, 1.0};
    cfg.surface_kind = SceneConfig::SurfaceKind::TangentDevelopable;
    cfg.inversion.center = Vec3::Zero();
    cfg.inversion.radius = 1.0;
    cfg.grid.s_min = 0.0;
    cfg.grid.s_max = 2.0 * M_PI;
    cfg.grid.u_min = 0.2;
    cfg.grid.u_max = 1.5;
    cfg.grid.s_count = 20;
    cfg.grid.u_count = 20;
    return cfg;
}

SceneConfig parse_scene(std::string_view text, const std::string& filename) {
    SceneConfig cfg = {};
    cfg.grid = GridSpec{};
    std::string section;
    bool saw_surface_type = false;

    std::istringstream stream{std::string(text)};
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;

        if (line[0] == '[') {
            if (line.back() != ']')
                throw SceneError(filename, line_no, "missing ']' in section header");
            section = trim(line.substr(1, line.size() - 2));
            if (section != "curve" && section != "surface" && section != "inversion" &&
                section != "grid" && section != "output")
                throw SceneError(filename, line_no, "unknown section [" + section + "]");
            continue;
        }

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw SceneError(filename, line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw SceneError(filename, line_no, "empty key");
        if (section.empty())
            throw SceneError(filename, line_no, "key '" + key + "' outside any section");

        if (section == "curve") {
            if (key == "type") {
                if (value == "builtin") cfg.curve_kind = SceneConfig::CurveKind::Builtin;
                else if (value == "expression") cfg.curve_kind = SceneConfig::CurveKind::Expression;
                else throw SceneError(filename, line_no, "curve type must be builtin or expression");
            } else if (key == "name") {
                cfg.curve_name = value;
            } else if (key == "params") {
                cfg.curve_params = parse_number_list(filename, line_no, value);
            } else if (key == "components") {
                cfg.curve_components = value;
            } else if (key == "arc_length") {
                cfg.curve_arc_length = parse_bool(filename, line_no, value);
            } else {
                throw SceneError(filename, line_no, "unknown key '" + key + "' in [curve]");
            }
        } else if (section == "surface") {
            if (key == "type") {
                saw_surface_type = true;
                if (value == "tangent_developable")
                    cfg.surface_kind = SceneConfig::SurfaceKind::TangentDevelopable;
                else if (value == "expression")
                    cfg.surface_kind = SceneConfig::SurfaceKind::Expression;
                else
                    throw SceneError(filename, line_no,
                                     "surface type must be tangent_developable or expression");
            } else if (key == "components") {
                cfg.surface_components = value;
            } else if (key == "u_min_exclusion") {
                cfg.u_min_exclusion = parse_number(filename, line_no, value);
                if (!(cfg.u_min_exclusion > 0.0))
                    throw SceneError(filename, line_no, "u_min_exclusion must be positive");
            } else {
                throw SceneError(filename, line_no, "unknown key '" + key + "' in [surface]");
            }
        } else if (section == "inversion") {
            if (key == "center") {
                const auto c = parse_number_list(filename, line_no, value);
                if (c.size() != 3)
                    throw SceneError(filename, line_no, "center needs three numbers");
                cfg.inversion.center = Vec3(c[0], c[1], c[2]);
            } else if (key == "radius") {
                cfg.inversion.radius = parse_number(filename, line_no, value);
                if (!(cfg.inversion.radius > 0.0))
                    throw SceneError(filename, line_no, "radius must be positive");
            } else {
                throw SceneError(filename, line_no, "unknown key '" + key + "' in [inversion]");
            }
        } else if (section == "grid") {
            if (key == "s_min") cfg.grid.s_min = parse_number(filename, line_no, value);
            else if (key == "s_max") cfg.grid.s_max = parse_number(filename, line_no, value);
            else if (key == "u_min") cfg.grid.u_min = parse_number(filename, line_no, value);
            else if (key == "u_max") cfg.grid.u_max = parse_number(filename, line_no, value);
            else if (key == "s_count" || key == "u_count") {
                const double n = parse_number(filename, line_no, value);
                if (n != std::floor(n) || n < 2.0 || n > 1e7)
                    throw SceneError(filename, line_no, key + " must be an integer >= 2");
                (key == "s_count" ? cfg.grid.s_count : cfg.grid.u_count) = static_cast<int>(n);
            } else {
                throw SceneError(filename, line_no, "unknown key '" + key + "' in [grid]");
            }
        } else if (section == "output") {
            if (key != "dir")
                throw SceneError(filename, line_no, "unknown key '" + key + "' in [output]");
            cfg.output_dir = value;
        }
    }

    if (cfg.surface_kind == SceneConfig::SurfaceKind::TangentDevelopable &&
        cfg.curve_kind == SceneConfig::CurveKind::None && saw_surface_type)
        throw SceneError(filename, line_no, "tangent_developable surface needs a [curve] section");
    if (cfg.grid.s_count < 2 || cfg.grid.u_count < 2)
        throw SceneError(filename, line_no, "grid counts must be >= 2 per axis");
    return cfg;
}

SceneConfig load_scene(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SceneError(path, 0, "cannot open scene file");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scene(buf.str(), path);
}

SceneObjects realize_scene(const SceneConfig& config) {
    SceneObjects out;
    out.inversion = config.inversion;
    out.grid = config.grid;

    const Interval curve_interval{config.grid.s_min, config.grid.s_max};
    switch (config.curve_kind) {
        case SceneConfig::CurveKind::None:
            break;
        case SceneConfig::CurveKind::Builtin:
            out.curve = builtin_curve(config.curve_name, config.curve_params, curve_interval);
            break;
        case SceneConfig::CurveKind::Expression: {
            const CompiledMap map = parse(config.curve_components, MapKind::Curve);
            out.curve = curve_from_map(map, curve_interval, config.curve_arc_length);
            break;
        }
    }

    const ParamDomain domain{config.grid.s_min, config.grid.s_max, config.grid.u_min,
                             config.grid.u_max};
    if (config.surface_kind == SceneConfig::SurfaceKind::TangentDevelopable) {
        if (!out.curve)
            throw CurveNotArcLength("tangent_developable scene has no curve");
        out.developable =
            TangentDevelopableModel(*out.curve, domain, config.u_min_exclusion);
        out.base_surface = as_surface(*out.developable);
    } else {
        const CompiledMap map = parse(config.surface_components, MapKind::Surface);
        out.base_surface = surface_from_map(map, domain);
    }
    out.inverted_surface = invert_surface(config.inversion, *out.base_surface);
    return out;
}

} // namespace invsurf
