#include "atomphase/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace atomphase {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw std::invalid_argument("config: " + where + ": " + what);
}

void check_keys(const json& obj, const std::string& section, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key())) fail(section, "unknown field '" + it.key() + "'");
    }
}

double get_num(const json& obj, const std::string& section, const std::string& key) {
    if (!obj.contains(key)) fail(section, "missing field '" + key + "'");
    if (!obj[key].is_number()) fail(section, "field '" + key + "' must be a number");
    return obj[key].get<double>();
}

double get_num_or(const json& obj, const std::string& section, const std::string& key, double dflt) {
    if (!obj.contains(key)) return dflt;
    if (!obj[key].is_number()) fail(section, "field '" + key + "' must be a number");
    return obj[key].get<double>();
}

int get_int_or(const json& obj, const std::string& section, const std::string& key, int dflt) {
    if (!obj.contains(key)) return dflt;
    if (!obj[key].is_number_integer()) fail(section, "field '" + key + "' must be an integer");
    return obj[key].get<int>();
}

Vec3 get_vec3(const json& obj, const std::string& section, const std::string& key) {
    if (!obj.contains(key) || !obj[key].is_array() || obj[key].size() != 3)
        fail(section, "field '" + key + "' must be an array of 3 numbers");
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
        if (!obj[key][i].is_number()) fail(section, "field '" + key + "' must contain numbers");
        v[i] = obj[key][i].get<double>();
    }
    return v;
}

Atom parse_atom(const json& obj) {
    check_keys(obj, "atom", {"omega0_rad_s", "alpha0_volume_m3", "mass_kg", "internal_energy_J"});
    return Atom(get_num(obj, "atom", "omega0_rad_s"), get_num(obj, "atom", "alpha0_volume_m3"),
                get_num(obj, "atom", "mass_kg"), get_num_or(obj, "atom", "internal_energy_J", 0.0));
}

ExternalPotential parse_potential(const json& obj) {
    const std::string kind = obj.contains("kind") && obj["kind"].is_string()
                                 ? obj["kind"].get<std::string>()
                                 : "";
    if (kind == "none") {
        check_keys(obj, "potential", {"kind"});
        return ExternalPotential::none();
    }
    if (kind == "linear") {
        check_keys(obj, "potential", {"kind", "gradient_J_m"});
        return ExternalPotential::linear(get_vec3(obj, "potential", "gradient_J_m"));
    }
    if (kind == "harmonic") {
        check_keys(obj, "potential", {"kind", "stiffness_J_m2", "center_m"});
        return ExternalPotential::harmonic(get_vec3(obj, "potential", "stiffness_J_m2"),
                                           get_vec3(obj, "potential", "center_m"));
    }
    fail("potential", "kind must be one of none/linear/harmonic");
}

// Upper bound on a path's height over [0, t_end]; used to size the default
// delay margin before the path objects themselves exist.
double estimate_max_z(const json& tr, const std::string& section, double t_end) {
    const std::string kind = tr.at("kind").get<std::string>();
    if (kind == "static") return get_num(tr, section, "z0_m");
    if (kind == "linear") {
        const double z0 = get_num(tr, section, "z0_m");
        const double v = get_num(tr, section, "vz_m_s");
        return std::max(z0, z0 + v * t_end);
    }
    if (kind == "ballistic") {
        const double z0 = get_num(tr, section, "z0_m");
        const double v0 = get_num(tr, section, "vz0_m_s");
        const double g = get_num(tr, section, "g_m_s2");
        double top = std::max(z0, z0 + v0 * t_end - 0.5 * g * t_end * t_end);
        if (g != 0.0) {
            const double t_star = v0 / g;
            if (t_star > 0.0 && t_star < t_end) top = std::max(top, z0 + 0.5 * v0 * v0 / g);
        }
        return top;
    }
    if (kind == "sinusoidal")
        return get_num(tr, section, "z0_m") + std::fabs(get_num(tr, section, "amplitude_m"));
    if (kind == "segments") {
        double top = 0.0;
        for (const json& sj : tr.at("segments")) {
            Segment s;
            s.t0 = get_num(sj, section, "t0_s");
            s.t1 = get_num(sj, section, "t1_s");
            if (!sj.contains("coeffs") || !sj["coeffs"].is_array() || sj["coeffs"].size() != 4)
                fail(section, "segment field 'coeffs' must be an array of 4 numbers");
            for (int i = 0; i < 4; ++i) s.c[i] = sj["coeffs"][i].get<double>();
            top = std::max(top, s.max_z());
        }
        return top;
    }
    fail(section, "kind must be one of static/linear/ballistic/sinusoidal/segments");
}

Trajectory parse_trajectory(const json& tr, const std::string& section, const PrimitiveOptions& opt) {
    const std::set<std::string> common{"kind", "label", "parallel_velocity_m_s", "parallel_origin_m"};
    const std::string kind = tr.at("kind").get<std::string>();

    if (kind == "static") {
        std::set<std::string> keys = common;
        keys.insert("z0_m");
        check_keys(tr, section, keys);
        return make_static_path(get_num(tr, section, "z0_m"), opt);
    }
    if (kind == "linear") {
        std::set<std::string> keys = common;
        keys.insert({"z0_m", "vz_m_s"});
        check_keys(tr, section, keys);
        return make_linear_path(get_num(tr, section, "z0_m"), get_num(tr, section, "vz_m_s"), opt);
    }
    if (kind == "ballistic") {
        std::set<std::string> keys = common;
        keys.insert({"z0_m", "vz0_m_s", "g_m_s2"});
        check_keys(tr, section, keys);
        return make_ballistic_path(get_num(tr, section, "z0_m"), get_num(tr, section, "vz0_m_s"),
                                   get_num(tr, section, "g_m_s2"), opt);
    }
    if (kind == "sinusoidal") {
        std::set<std::string> keys = common;
        keys.insert({"z0_m", "amplitude_m", "omega_rad_s", "phase_rad", "nodes_per_period"});
        check_keys(tr, section, keys);
        return make_sinusoidal_path(get_num(tr, section, "z0_m"), get_num(tr, section, "amplitude_m"),
                                    get_num(tr, section, "omega_rad_s"),
                                    get_num_or(tr, section, "phase_rad", 0.0), opt,
                                    get_int_or(tr, section, "nodes_per_period", 200));
    }
    if (kind == "segments") {
        std::set<std::string> keys = common;
        keys.insert("segments");
        check_keys(tr, section, keys);
        std::vector<Segment> segs;
        for (const json& sj : tr.at("segments")) {
            check_keys(sj, section + ".segments", {"t0_s", "t1_s", "coeffs"});
            Segment s;
            s.t0 = get_num(sj, section, "t0_s");
            s.t1 = get_num(sj, section, "t1_s");
            for (int i = 0; i < 4; ++i) s.c[i] = sj.at("coeffs")[i].get<double>();
            segs.push_back(s);
        }
        // Keep the stored domain; extend the final piece if it stops short.
        if (!segs.empty() && segs.back().t1 < opt.domain_end) segs.back().t1 = opt.domain_end;
        return Trajectory(std::move(segs), opt.parallel_velocity, opt.parallel_origin, opt.label,
                          opt.limits);
    }
    fail(section, "kind must be one of static/linear/ballistic/sinusoidal/segments");
}

QuadratureConfig parse_numerics_quad(const json& obj) {
    QuadratureConfig q;
    q.rel_tol = get_num_or(obj, "numerics", "quad_rel_tol", q.rel_tol);
    q.abs_tol = get_num_or(obj, "numerics", "quad_abs_tol", q.abs_tol);
    q.max_depth = get_int_or(obj, "numerics", "quad_max_depth", q.max_depth);
    q.validate();
    return q;
}

RootConfig parse_numerics_root(const json& obj) {
    RootConfig r;
    r.rel_tol = get_num_or(obj, "numerics", "root_rel_tol", r.rel_tol);
    r.max_iter = get_int_or(obj, "numerics", "root_max_iter", r.max_iter);
    r.validate();
    return r;
}

}  // namespace

ParsedConfig parse_config(const json& doc) {
    if (!doc.is_object()) fail("document", "top level must be a JSON object");
    check_keys(doc, "document",
               {"atom", "potential", "window", "trajectories", "numerics", "limits", "run"});
    if (!doc.contains("atom")) fail("document", "missing section 'atom'");
    if (!doc.contains("window")) fail("document", "missing section 'window'");
    if (!doc.contains("trajectories")) fail("document", "missing section 'trajectories'");

    Atom atom = parse_atom(doc["atom"]);
    ExternalPotential pot =
        doc.contains("potential") ? parse_potential(doc["potential"]) : ExternalPotential::none();

    const json& wobj = doc["window"];
    check_keys(wobj, "window", {"t_end_s", "delay_margin_s"});
    const double t_end = get_num(wobj, "window", "t_end_s");
    if (!(t_end > 0.0)) fail("window", "t_end_s must be > 0");

    const json& trs = doc["trajectories"];
    if (!trs.is_array() || trs.size() < 2)
        fail("trajectories", "must be an array with at least 2 entries");

    ScenarioLimits limits;
    if (doc.contains("limits")) {
        const json& lobj = doc["limits"];
        check_keys(lobj, "limits", {"z_min_m", "v_max_m_s", "accel_ratio_max", "short_distance_max"});
        limits.geometry.z_min = get_num_or(lobj, "limits", "z_min_m", limits.geometry.z_min);
        limits.geometry.v_max = get_num_or(lobj, "limits", "v_max_m_s", limits.geometry.v_max);
        limits.accel_ratio_max = get_num_or(lobj, "limits", "accel_ratio_max", limits.accel_ratio_max);
        limits.short_distance_max =
            get_num_or(lobj, "limits", "short_distance_max", limits.short_distance_max);
    }

    double z_top = 0.0;
    for (size_t i = 0; i < trs.size(); ++i) {
        std::ostringstream section;
        section << "trajectories[" << i << "]";
        if (!trs[i].is_object() || !trs[i].contains("kind") || !trs[i]["kind"].is_string())
            fail(section.str(), "each trajectory needs a string field 'kind'");
        z_top = std::max(z_top, estimate_max_z(trs[i], section.str(), t_end));
    }

    ScenarioWindow window{t_end, get_num_or(wobj, "window", "delay_margin_s",
                                            ScenarioWindow::default_margin(z_top))};
    if (!(window.delay_margin > 0.0)) fail("window", "delay_margin_s must be > 0");

    std::vector<Trajectory> paths;
    paths.reserve(trs.size());
    for (size_t i = 0; i < trs.size(); ++i) {
        std::ostringstream section;
        section << "trajectories[" << i << "]";
        PrimitiveOptions opt;
        opt.domain_end = t_end + window.delay_margin;
        opt.parallel_velocity = get_num_or(trs[i], section.str(), "parallel_velocity_m_s", 0.0);
        opt.parallel_origin = get_num_or(trs[i], section.str(), "parallel_origin_m", 0.0);
        opt.label = get_int_or(trs[i], section.str(), "label", static_cast<int>(i) + 1);
        opt.limits = limits.geometry;
        try {
            paths.push_back(parse_trajectory(trs[i], section.str(), opt));
        } catch (const std::domain_error& e) {
            fail(section.str(), e.what());
        }
    }

    QuadratureConfig quad;
    RootConfig root;
    if (doc.contains("numerics")) {
        check_keys(doc["numerics"], "numerics",
                   {"quad_rel_tol", "quad_abs_tol", "quad_max_depth", "root_rel_tol", "root_max_iter"});
        quad = parse_numerics_quad(doc["numerics"]);
        root = parse_numerics_root(doc["numerics"]);
    }

    ParsedConfig out{Scenario{std::move(atom), pot, window, std::move(paths), quad, root,
                              PhaseMethod::first_order, limits},
                     RunSettings{}};

    if (doc.contains("run")) {
        const json& robj = doc["run"];
        check_keys(robj, "run", {"dp_method", "check_eom", "eom_tol"});
        if (robj.contains("dp_method")) {
            const std::string m = robj["dp_method"].get<std::string>();
            if (m == "first_order")
                out.scenario.dp_method = PhaseMethod::first_order;
            else if (m == "retarded")
                out.scenario.dp_method = PhaseMethod::retarded;
            else
                fail("run", "dp_method must be 'first_order' or 'retarded'");
        }
        if (robj.contains("check_eom")) {
            if (!robj["check_eom"].is_boolean()) fail("run", "check_eom must be a boolean");
            out.run.check_eom = robj["check_eom"].get<bool>();
        }
        out.run.eom_tol = get_num_or(robj, "run", "eom_tol", out.run.eom_tol);
    }
    return out;
}

ParsedConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config: JSON parse error in '" + path + "': " + e.what());
    }
    return parse_config(doc);
}

json echo_config(const json& doc) {
    ParsedConfig parsed = parse_config(doc);  // validates before echoing
    json out = doc;

    if (!out.contains("potential")) out["potential"] = {{"kind", "none"}};
    out["window"]["delay_margin_s"] = parsed.scenario.window.delay_margin;

    json& num = out["numerics"];
    num["quad_rel_tol"] = parsed.scenario.quad.rel_tol;
    num["quad_abs_tol"] = parsed.scenario.quad.abs_tol;
    num["quad_max_depth"] = parsed.scenario.quad.max_depth;
    num["root_rel_tol"] = parsed.scenario.root.rel_tol;
    num["root_max_iter"] = parsed.scenario.root.max_iter;

    json& lim = out["limits"];
    lim["z_min_m"] = parsed.scenario.limits.geometry.z_min;
    lim["v_max_m_s"] = parsed.scenario.limits.geometry.v_max;
    lim["accel_ratio_max"] = parsed.scenario.limits.accel_ratio_max;
    lim["short_distance_max"] = parsed.scenario.limits.short_distance_max;

    json& run = out["run"];
    run["dp_method"] = to_string(parsed.scenario.dp_method);
    run["check_eom"] = parsed.run.check_eom;
    run["eom_tol"] = parsed.run.eom_tol;

    for (size_t i = 0; i < out["trajectories"].size(); ++i) {
        json& tr = out["trajectories"][i];
        if (!tr.contains("label")) tr["label"] = static_cast<int>(i) + 1;
        if (!tr.contains("parallel_velocity_m_s")) tr["parallel_velocity_m_s"] = 0.0;
        if (!tr.contains("parallel_origin_m")) tr["parallel_origin_m"] = 0.0;
    }
    return out;
}

void set_config_value(json& doc, const std::string& dotted_path, double value) {
    std::vector<std::string> tokens;
    std::stringstream ss(dotted_path);
    std::string tok;
    while (std::getline(ss, tok, '.')) tokens.push_back(tok);
    if (tokens.empty()) throw std::invalid_argument("sweep: empty parameter path");

    json* node = &doc;
    for (size_t i = 0; i < tokens.size(); ++i) {
        const std::string& key = tokens[i];
        if (node->is_array()) {
            size_t idx = 0;
            try {
                idx = std::stoul(key);
            } catch (...) {
                throw std::invalid_argument("sweep: '" + key + "' is not an array index in '" +
                                            dotted_path + "'");
            }
            if (idx >= node->size())
                throw std::invalid_argument("sweep: index " + key + " out of range in '" +
                                            dotted_path + "'");
            node = &(*node)[idx];
        } else if (node->is_object()) {
            if (!node->contains(key))
                throw std::invalid_argument("sweep: no such parameter '" + dotted_path + "'");
            node = &(*node)[key];
        } else {
            throw std::invalid_argument("sweep: path '" + dotted_path + "' descends into a scalar");
        }
    }
    if (!node->is_number())
        throw std::invalid_argument("sweep: parameter '" + dotted_path + "' is not numeric");
    *node = value;
}

void apply_dilatation(json& doc, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("dilatation: lambda must be > 0");
    doc.at("window").at("t_end_s") = doc["window"]["t_end_s"].get<double>() / lambda;
    if (doc["window"].contains("delay_margin_s")) {
        // Keep the stored margin: the height range is unchanged.
    }
    for (json& tr : doc.at("trajectories")) {
        const std::string kind = tr.at("kind").get<std::string>();
        if (kind == "linear") {
            tr["vz_m_s"] = tr["vz_m_s"].get<double>() * lambda;
        } else if (kind == "ballistic") {
            tr["vz0_m_s"] = tr["vz0_m_s"].get<double>() * lambda;
            tr["g_m_s2"] = tr["g_m_s2"].get<double>() * lambda * lambda;
        } else if (kind == "sinusoidal") {
            tr["omega_rad_s"] = tr["omega_rad_s"].get<double>() * lambda;
        } else if (kind == "segments") {
            for (json& sj : tr.at("segments")) {
                sj["t0_s"] = sj["t0_s"].get<double>() / lambda;
                sj["t1_s"] = sj["t1_s"].get<double>() / lambda;
                double scale = 1.0;
                for (int i = 0; i < 4; ++i) {
                    sj["coeffs"][i] = sj["coeffs"][i].get<double>() * scale;
                    scale *= lambda;
                }
            }
        }
        if (tr.contains("parallel_velocity_m_s"))
            tr["parallel_velocity_m_s"] = tr["parallel_velocity_m_s"].get<double>() * lambda;
    }
}

void apply_common_parallel_velocity(json& doc, double v_parallel) {
    for (json& tr : doc.at("trajectories")) tr["parallel_velocity_m_s"] = v_parallel;
}

}  // namespace atomphase
