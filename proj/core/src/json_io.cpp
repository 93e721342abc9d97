#include "siegel/json_io.hpp"

#include <fstream>
#include <limits>
#include <sstream>

namespace siegel {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double require_number(const json& j, const char* field) {
    if (!j.is_number()) throw SchemaError(std::string(field) + ": number expected");
    return j.get<double>();
}

cplx complex_from_json(const json& j, const char* field) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw SchemaError(std::string(field) + ": [re, im] pair expected");
    return cplx(j[0].get<double>(), j[1].get<double>());
}

json complex_to_json(cplx c) { return json::array({c.real(), c.imag()}); }

/// "inf" is admitted where a bound may be infinite.
double bound_from_json(const json& j, const char* field) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return kInf;
        throw SchemaError(std::string(field) + ": number or \"inf\" expected");
    }
    return require_number(j, field);
}

json bound_to_json(double v) {
    if (v == kInf) return json("inf");
    return json(v);
}

}  // namespace

json point_to_json(const CPoint& z) {
    json zp = json::array();
    for (const cplx& c : z.zprime()) zp.push_back(complex_to_json(c));
    return json{{"zprime", zp}, {"zn", complex_to_json(z.zn())}};
}

CPoint point_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("point: object expected");
    if (!j.contains("zn")) throw SchemaError("point: missing \"zn\"");
    std::vector<cplx> zp;
    if (j.contains("zprime")) {
        const json& a = j["zprime"];
        if (!a.is_array()) throw SchemaError("point: \"zprime\" must be an array");
        for (const json& c : a) zp.push_back(complex_from_json(c, "zprime"));
    }
    return CPoint(std::move(zp), complex_from_json(j["zn"], "zn"));
}

json region_to_json(const RegionSpec& region) {
    json j{{"rho_min", region.rho_min},
           {"rho_max", bound_to_json(region.rho_max)},
           {"max_abs", bound_to_json(region.max_abs)}};
    if (region.ball.has_value())
        j["ball"] = json{{"center", point_to_json(region.ball->center)},
                         {"radius", region.ball->radius}};
    return j;
}

RegionSpec region_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("region: object expected");
    RegionSpec region;
    if (j.contains("rho_min")) region.rho_min = require_number(j["rho_min"], "rho_min");
    if (j.contains("rho_max")) region.rho_max = bound_from_json(j["rho_max"], "rho_max");
    if (j.contains("max_abs")) region.max_abs = bound_from_json(j["max_abs"], "max_abs");
    if (j.contains("ball")) {
        const json& b = j["ball"];
        if (!b.is_object() || !b.contains("center") || !b.contains("radius"))
            throw SchemaError("region: \"ball\" needs \"center\" and \"radius\"");
        region.ball = BergmanBall(point_from_json(b["center"]),
                                  require_number(b["radius"], "ball.radius"));
    }
    try {
        region.validate();
    } catch (const std::exception& e) {
        throw SchemaError(std::string("region: ") + e.what());
    }
    return region;
}

json measure_to_json(const MeasureSpec& mu) {
    json j;
    j["dim"] = mu.dim();
    switch (mu.kind()) {
        case MeasureSpec::Kind::atomic: {
            j["type"] = "atomic";
            json atoms = json::array();
            for (const MeasureSpec::Atom& a : mu.atoms())
                atoms.push_back(json{{"point", point_to_json(a.point)}, {"weight", a.weight}});
            j["atoms"] = atoms;
            break;
        }
        case MeasureSpec::Kind::density: {
            j["type"] = "density";
            if (mu.family() == MeasureSpec::DensityFamily::rho_power) {
                j["family"] = "rho_power";
                j["exponent"] = mu.family_param();
            } else {
                j["family"] = "constant";
                j["scale"] = mu.family_param();
            }
            if (mu.restriction().has_value())
                j["restriction"] = region_to_json(*mu.restriction());
            break;
        }
        case MeasureSpec::Kind::lebesgue: {
            j["type"] = "lebesgue";
            if (mu.restriction().has_value())
                j["restriction"] = region_to_json(*mu.restriction());
            break;
        }
    }
    return j;
}

MeasureSpec measure_from_json(const json& j) {
    if (!j.is_object()) throw SchemaError("measure: object expected");
    if (!j.contains("type") || !j["type"].is_string())
        throw SchemaError("measure: string \"type\" required");
    if (!j.contains("dim") || !j["dim"].is_number_unsigned())
        throw SchemaError("measure: positive integer \"dim\" required");
    const std::size_t dim = j["dim"].get<std::size_t>();
    if (dim < 1 || dim > 20) throw SchemaError("measure: dim must be in [1, 20]");
    const std::string type = j["type"].get<std::string>();

    try {
        if (type == "atomic") {
            if (!j.contains("atoms") || !j["atoms"].is_array())
                throw SchemaError("measure: atomic requires an \"atoms\" array");
            std::vector<MeasureSpec::Atom> atoms;
            for (const json& a : j["atoms"]) {
                if (!a.is_object() || !a.contains("point") || !a.contains("weight"))
                    throw SchemaError("measure: atom needs \"point\" and \"weight\"");
                atoms.push_back(MeasureSpec::Atom{point_from_json(a["point"]),
                                                  require_number(a["weight"], "weight")});
            }
            return MeasureSpec::atomic(dim, std::move(atoms));
        }
        std::optional<RegionSpec> restriction;
        if (j.contains("restriction")) restriction = region_from_json(j["restriction"]);
        if (type == "lebesgue") return MeasureSpec::lebesgue(dim, std::move(restriction));
        if (type == "density") {
            if (!j.contains("family") || !j["family"].is_string())
                throw SchemaError("measure: density requires string \"family\"");
            const std::string family = j["family"].get<std::string>();
            if (family == "rho_power") {
                if (!j.contains("exponent"))
                    throw SchemaError("measure: rho_power requires \"exponent\"");
                return MeasureSpec::density(dim, MeasureSpec::DensityFamily::rho_power,
                                            require_number(j["exponent"], "exponent"),
                                            std::move(restriction));
            }
            if (family == "constant") {
                if (!j.contains("scale"))
                    throw SchemaError("measure: constant requires \"scale\"");
                return MeasureSpec::density(dim, MeasureSpec::DensityFamily::constant,
                                            require_number(j["scale"], "scale"),
                                            std::move(restriction));
            }
            throw SchemaError("measure: unknown density family \"" + family + "\"");
        }
        throw SchemaError("measure: unknown type \"" + type + "\"");
    } catch (const SchemaError&) {
        throw;
    } catch (const std::exception& e) {
        throw SchemaError(std::string("measure: ") + e.what());
    }
}

MeasureSpec measure_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open measure file: " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw SchemaError("measure file " + path + ": " + e.what());
    }
    return measure_from_json(j);
}

json integration_result_to_json(const IntegrationResult& r) {
    json j;
    if (r.value.imag() == 0.0)
        j["value"] = r.value.real();
    else
        j["value"] = complex_to_json(r.value);
    j["std_error"] = r.std_error;
    j["samples"] = r.samples;
    j["strategy"] = strategy_name(r.strategy);
    j["divergent"] = r.divergent;
    return j;
}

json lattice_to_json(const Lattice& lat) {
    json centers = json::array();
    for (const CPoint& c : lat.centers) centers.push_back(point_to_json(c));
    return json{{"centers", centers},
                {"r", lat.r},
                {"multiplicity_estimate", lat.multiplicity_estimate},
                {"covering", json{{"max_distance", lat.covering_max_distance},
                                  {"failures", lat.covering_failures},
                                  {"probes", lat.covering_probes}}}};
}

json report_to_json(const DiagnosticsReport& rep) {
    json j;
    j["berezin_sup"] = json{{"value", rep.berezin_sup.value},
                            {"argmax", point_to_json(rep.berezin_sup.argmax)}};
    j["averaging_sup"] = json{{"value", rep.averaging_sup.value},
                              {"argmax", point_to_json(rep.averaging_sup.argmax)}};
    j["lattice_sup"] = json{{"value", rep.lattice_sup.value},
                            {"argmax", point_to_json(rep.lattice_sup.argmax)}};

    json shells = json::array();
    for (const ShellRow& s : rep.shell_trend) {
        shells.push_back(json{{"family", std::string(1, s.family)},
                              {"shell", s.shell},
                              {"lo", s.lo},
                              {"hi", s.hi},
                              {"berezin_mean", s.berezin_mean},
                              {"berezin_max", s.berezin_max},
                              {"averaging_mean", s.averaging_mean},
                              {"averaging_max", s.averaging_max},
                              {"count", s.count}});
    }
    j["shell_trend"] = shells;

    json stages = json::array();
    for (const StageRow& s : rep.stages) {
        stages.push_back(json{{"scale", s.scale},
                              {"region", region_to_json(s.region)},
                              {"berezin_sup", s.berezin_sup},
                              {"averaging_sup", s.averaging_sup},
                              {"lattice_sup", s.lattice_sup},
                              {"lattice_centers", s.lattice_centers}});
    }
    j["stages"] = stages;

    json probes = json::array();
    for (const ProbeRow& p : rep.probes) {
        json row{{"point", point_to_json(p.point)},
                 {"family", std::string(1, p.family)},
                 {"shell", p.shell},
                 {"berezin", p.berezin_value},
                 {"averaging", p.averaging_value}};
        if (p.condition_b >= 0.0) row["condition_b"] = p.condition_b;
        probes.push_back(std::move(row));
    }
    j["probes"] = probes;

    if (rep.rho_slope_valid) j["rho_slope"] = rep.rho_slope;
    j["verdict_bounded"] = verdict_name(rep.verdict_bounded);
    j["verdict_vanishing"] = verdict_name(rep.verdict_vanishing);
    j["config"] = json{{"r", rep.config.r},
                       {"seed", rep.config.seed},
                       {"samples", rep.config.samples},
                       {"shell_depth", rep.config.shell_depth},
                       {"probes_per_shell", rep.config.probes_per_shell},
                       {"stage_scales", rep.config.stage_scales},
                       {"lattice_stream", rep.config.lattice_stream},
                       {"berezin_count", rep.config.berezin_count},
                       {"averaging_count", rep.config.averaging_count},
                       {"sup_threshold", rep.config.sup_threshold},
                       {"stability_ratio", rep.config.stability_ratio},
                       {"vanish_fraction", rep.config.vanish_fraction}};
    return j;
}

std::string report_shell_trend_csv(const DiagnosticsReport& rep) {
    std::ostringstream out;
    out.precision(17);
    out << "family,shell,lo,hi,berezin_mean,berezin_max,averaging_mean,averaging_max,count\n";
    for (const ShellRow& s : rep.shell_trend) {
        out << s.family << ',' << s.shell << ',' << s.lo << ',' << s.hi << ','
            << s.berezin_mean << ',' << s.berezin_max << ',' << s.averaging_mean << ','
            << s.averaging_max << ',' << s.count << '\n';
    }
    return out.str();
}

}  // namespace siegel
