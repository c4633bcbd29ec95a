#include "floqlab/config.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "floqlab/errors.hpp"
#include "floqlab/scenarios.hpp"

#include <json.hpp>

namespace floqlab::config {

prop::FloquetScenario RunConfig::scenario() const {
    if (scenario_name == "inline") return inline_scenario;
    return scenarios::find_scenario(scenario_name).scenario;
}

grid::InteriorWeight RunConfig::interior(const grid::GridBasis& basis) const {
    grid::InteriorWeight w =
        interior_rotation_safe
            ? grid::InteriorWeight::rotation_safe(basis, interior_fraction)
            : grid::InteriorWeight::box(basis, interior_fraction, interior_momentum_fraction);
    w.keep_cut = interior_keep_cut;
    return w;
}

void RunConfig::validate() const {
    if (scenario_name != "inline") scenarios::find_scenario(scenario_name);  // throws if unknown
    scenario().validate();
    if (!(arc_hi != arc_lo)) throw ValidationError("arc: endpoints must differ");
    if (!(interior_fraction > 0.0 && interior_fraction <= 1.0))
        throw ValidationError("interior.fraction");
    if (!(interior_momentum_fraction > 0.0 && interior_momentum_fraction <= 1.0))
        throw ValidationError("interior.momentum_fraction");
    if (!(interior_keep_cut > 0.0 && interior_keep_cut < 1.0))
        throw ValidationError("interior.keep_cut");
    if (!(weight_min >= 0.0 && weight_min < 1.0)) throw ValidationError("weight_min");
    if (!(radius > 0.0 && radius < 1.0)) throw ValidationError("r");
    if (n_max < 0) throw ValidationError("n_max");
    if (!(t_min > 0.0 && t_min <= 0.1)) throw ValidationError("t_min");
    if (return_steps < 1 || return_steps > 4096) throw ValidationError("return_steps");
    if (theta_points < 2) throw ValidationError("theta_points");
    if (radius_points < 2) throw ValidationError("radius_points");
    if (eps_grid.empty()) throw ValidationError("eps_grid");
    for (double e : eps_grid)
        if (!(e > 0.0 && e <= 1.0)) throw ValidationError("eps_grid");
    if (z_radii < 1 || z_angles < 1) throw ValidationError("z_radii/z_angles");
    if (!(bump_width > 0.0)) throw ValidationError("bump_width");
    if (conjugate != "a1" && conjugate != "a2" && conjugate != "x" && conjugate != "p")
        throw ValidationError("conjugate: must be a1, a2, x or p");
    if (format != "csv" && format != "json") throw ValidationError("format: must be csv or json");
    if (jobs < 1 || jobs > 16) throw ValidationError("jobs");
}

namespace {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        size_t used = 0;
        const double v = std::stod(value, &used);
        while (used < value.size() && std::isspace((unsigned char)value[used])) ++used;
        if (used != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ValidationError("config key '" + key + "': bad number '" + value + "'");
    }
}

long parse_int(const std::string& key, const std::string& value) {
    const double v = parse_double(key, value);
    const long n = std::lround(v);
    if (double(n) != v) throw ValidationError("config key '" + key + "': expected an integer");
    return n;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ValidationError("config key '" + key + "': expected true/false");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) out.push_back(parse_double(key, item));
    if (out.empty()) throw ValidationError("config key '" + key + "': empty list");
    return out;
}

void apply_key(RunConfig& c, const std::string& key, const std::string& value) {
    using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;
    static const std::map<std::string, Setter> setters = {
        {"scenario", [](RunConfig& r, const std::string&, const std::string& v) { r.scenario_name = v; }},
        {"output_dir", [](RunConfig& r, const std::string&, const std::string& v) { r.output_dir = v; }},
        {"format", [](RunConfig& r, const std::string&, const std::string& v) { r.format = v; }},
        {"seed", [](RunConfig& r, const std::string& k, const std::string& v) { r.seed = uint64_t(parse_int(k, v)); }},
        {"jobs", [](RunConfig& r, const std::string& k, const std::string& v) { r.jobs = int(parse_int(k, v)); }},
        {"basis.n_points", [](RunConfig& r, const std::string& k, const std::string& v) { r.inline_scenario.basis.n_points = int(parse_int(k, v)); }},
        {"basis.half_width", [](RunConfig& r, const std::string& k, const std::string& v) { r.inline_scenario.basis.half_width = parse_double(k, v); }},
        {"basis.omega", [](RunConfig& r, const std::string& k, const std::string& v) { r.inline_scenario.basis.omega = parse_double(k, v); }},
        {"field.shape", [](RunConfig& r, const std::string&, const std::string& v) { r.inline_scenario.field.shape = grid::FuncSpec::parse(v); }},
        {"field.period", [](RunConfig& r, const std::string& k, const std::string& v) { r.inline_scenario.field.period = parse_double(k, v); }},
        {"potential", [](RunConfig& r, const std::string&, const std::string& v) { r.inline_scenario.potential = grid::FuncSpec::parse(v); }},
        {"time_steps", [](RunConfig& r, const std::string& k, const std::string& v) { r.inline_scenario.time_steps = int(parse_int(k, v)); }},
        {"dyson_order", [](RunConfig& r, const std::string& k, const std::string& v) { r.inline_scenario.dyson_order = int(parse_int(k, v)); }},
        {"quad_tol", [](RunConfig& r, const std::string& k, const std::string& v) { r.inline_scenario.quad_tol = parse_double(k, v); }},
        {"arc.lo", [](RunConfig& r, const std::string& k, const std::string& v) { r.arc_lo = parse_double(k, v); }},
        {"arc.hi", [](RunConfig& r, const std::string& k, const std::string& v) { r.arc_hi = parse_double(k, v); }},
        {"interior.fraction", [](RunConfig& r, const std::string& k, const std::string& v) { r.interior_fraction = parse_double(k, v); }},
        {"interior.momentum_fraction", [](RunConfig& r, const std::string& k, const std::string& v) { r.interior_momentum_fraction = parse_double(k, v); }},
        {"interior.rotation_safe", [](RunConfig& r, const std::string& k, const std::string& v) { r.interior_rotation_safe = parse_bool(k, v); }},
        {"interior.keep_cut", [](RunConfig& r, const std::string& k, const std::string& v) { r.interior_keep_cut = parse_double(k, v); }},
        {"weight_min", [](RunConfig& r, const std::string& k, const std::string& v) { r.weight_min = parse_double(k, v); }},
        {"r", [](RunConfig& r, const std::string& k, const std::string& v) { r.radius = parse_double(k, v); }},
        {"n_max", [](RunConfig& r, const std::string& k, const std::string& v) { r.n_max = int(parse_int(k, v)); }},
        {"t_min", [](RunConfig& r, const std::string& k, const std::string& v) { r.t_min = parse_double(k, v); }},
        {"return_steps", [](RunConfig& r, const std::string& k, const std::string& v) { r.return_steps = int(parse_int(k, v)); }},
        {"theta_points", [](RunConfig& r, const std::string& k, const std::string& v) { r.theta_points = int(parse_int(k, v)); }},
        {"radius_points", [](RunConfig& r, const std::string& k, const std::string& v) { r.radius_points = int(parse_int(k, v)); }},
        {"eps_grid", [](RunConfig& r, const std::string& k, const std::string& v) { r.eps_grid = parse_list(k, v); }},
        {"z_radii", [](RunConfig& r, const std::string& k, const std::string& v) { r.z_radii = int(parse_int(k, v)); }},
        {"z_angles", [](RunConfig& r, const std::string& k, const std::string& v) { r.z_angles = int(parse_int(k, v)); }},
        {"bump_width", [](RunConfig& r, const std::string& k, const std::string& v) { r.bump_width = parse_double(k, v); }},
        {"potential_override", [](RunConfig& r, const std::string&, const std::string& v) { r.potential_override = v; }},
        {"conjugate", [](RunConfig& r, const std::string&, const std::string& v) { r.conjugate = v; }},
    };
    const auto it = setters.find(key);
    if (it == setters.end()) throw ValidationError("config: unknown key '" + key + "'");
    it->second(c, key, value);
}

std::string trim(const std::string& s) {
    size_t a = 0, b = s.size();
    while (a < b && std::isspace((unsigned char)s[a])) ++a;
    while (b > a && std::isspace((unsigned char)s[b - 1])) --b;
    return s.substr(a, b - a);
}

RunConfig parse_json_config(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config: bad JSON: ") + e.what());
    }
    if (!doc.is_object()) throw ParseError("config: JSON root must be an object");
    RunConfig c;
    for (const auto& [key, value] : doc.items()) {
        std::string as_text;
        if (value.is_string())
            as_text = value.get<std::string>();
        else if (value.is_boolean())
            as_text = value.get<bool>() ? "true" : "false";
        else if (value.is_number())
            as_text = format_double(value.get<double>());
        else if (value.is_array()) {
            std::ostringstream list;
            for (size_t i = 0; i < value.size(); ++i) {
                if (i) list << ",";
                list << format_double(value[i].get<double>());
            }
            as_text = list.str();
        } else {
            throw ValidationError("config key '" + key + "': unsupported JSON value");
        }
        apply_key(c, key, as_text);
    }
    return c;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    const size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') return parse_json_config(text);

    RunConfig c;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(line_no) + ": expected key = value");
        apply_key(c, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return c;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("config: cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    RunConfig c = parse_config_text(buffer.str());
    c.validate();
    return c;
}

std::string save_config(const RunConfig& c) {
    std::ostringstream out;
    out << "scenario = " << c.scenario_name << "\n";
    out << "output_dir = " << c.output_dir << "\n";
    out << "format = " << c.format << "\n";
    out << "seed = " << c.seed << "\n";
    out << "jobs = " << c.jobs << "\n";
    const auto& s = c.inline_scenario;
    out << "basis.n_points = " << s.basis.n_points << "\n";
    out << "basis.half_width = " << format_double(s.basis.half_width) << "\n";
    out << "basis.omega = " << format_double(s.basis.omega) << "\n";
    out << "field.shape = " << s.field.shape.str() << "\n";
    out << "field.period = " << format_double(s.field.period) << "\n";
    out << "potential = " << s.potential.str() << "\n";
    out << "time_steps = " << s.time_steps << "\n";
    out << "dyson_order = " << s.dyson_order << "\n";
    out << "quad_tol = " << format_double(s.quad_tol) << "\n";
    out << "arc.lo = " << format_double(c.arc_lo) << "\n";
    out << "arc.hi = " << format_double(c.arc_hi) << "\n";
    out << "interior.fraction = " << format_double(c.interior_fraction) << "\n";
    out << "interior.momentum_fraction = " << format_double(c.interior_momentum_fraction) << "\n";
    out << "interior.rotation_safe = " << (c.interior_rotation_safe ? "true" : "false") << "\n";
    out << "interior.keep_cut = " << format_double(c.interior_keep_cut) << "\n";
    out << "weight_min = " << format_double(c.weight_min) << "\n";
    out << "r = " << format_double(c.radius) << "\n";
    out << "n_max = " << c.n_max << "\n";
    out << "t_min = " << format_double(c.t_min) << "\n";
    out << "return_steps = " << c.return_steps << "\n";
    out << "theta_points = " << c.theta_points << "\n";
    out << "radius_points = " << c.radius_points << "\n";
    out << "eps_grid = ";
    for (size_t i = 0; i < c.eps_grid.size(); ++i)
        out << (i ? "," : "") << format_double(c.eps_grid[i]);
    out << "\n";
    out << "z_radii = " << c.z_radii << "\n";
    out << "z_angles = " << c.z_angles << "\n";
    out << "bump_width = " << format_double(c.bump_width) << "\n";
    if (!c.potential_override.empty()) out << "potential_override = " << c.potential_override << "\n";
    out << "conjugate = " << c.conjugate << "\n";
    return out.str();
}

}  // namespace floqlab::config
