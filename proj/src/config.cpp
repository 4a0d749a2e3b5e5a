#include "twinbeam/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "twinbeam/errors.hpp"
#include "twinbeam/units.hpp"

namespace twinbeam {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>> allowed = {
    {"crystal", {"preset", "length_um", "cut_angle_deg"}},
    {"sellmeier",
     {"no_a", "no_b", "no_c", "no_d", "ne_a", "ne_b", "ne_c", "ne_d", "lambda_min_um", "lambda_max_um"}},
    {"pump", {"wavelength_um", "duration_fs", "waist_um", "amplitude"}},
    {"filter", {"qx_min", "qx_max", "qy_max", "omega_max"}},
    {"grid", {"nq", "nomega", "margin"}},
    {"model", {"mu"}},
    {"output", {"dir", "format", "modes", "pad", "kernel_dump"}},
};

struct Reader {
    const pt::ptree& tree;
    std::string origin;

    std::optional<std::string> raw(const std::string& sec, const std::string& key) const {
        auto s = tree.get_child_optional(sec);
        if (!s) return std::nullopt;
        auto v = s->get_optional<std::string>(key);
        if (!v) return std::nullopt;
        return *v;
    }

    std::optional<double> number(const std::string& sec, const std::string& key) const {
        auto v = raw(sec, key);
        if (!v || *v == "auto") return std::nullopt;
        try {
            size_t pos = 0;
            double d = std::stod(*v, &pos);
            if (pos != v->size()) throw std::invalid_argument("trailing");
            return d;
        } catch (const std::exception&) {
            throw ConfigError(fmt::format("{}: [{}] {} = '{}' is not a number", origin, sec, key, *v));
        }
    }

    std::optional<int> integer(const std::string& sec, const std::string& key) const {
        auto d = number(sec, key);
        if (!d) return std::nullopt;
        if (*d != std::floor(*d)) throw ConfigError(fmt::format("{}: [{}] {} must be an integer", origin, sec, key));
        return int(*d);
    }

    double positive(const std::string& sec, const std::string& key, double def) const {
        double v = number(sec, key).value_or(def);
        if (!(v > 0)) throw ConfigError(fmt::format("{}: [{}] {} must be positive, got {}", origin, sec, key, v));
        return v;
    }
};

}  // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    pt::ptree tree;
    std::istringstream is(text);
    try {
        pt::read_ini(is, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(fmt::format("{}: line {}: {}", origin, e.line(), e.message()));
    }
    for (const auto& [sec, body] : tree) {
        auto it = allowed.find(sec);
        if (it == allowed.end()) throw ConfigError(fmt::format("{}: unknown section [{}]", origin, sec));
        if (!body.data().empty()) throw ConfigError(fmt::format("{}: key '{}' outside any section", origin, sec));
        for (const auto& [key, v] : body)
            if (!it->second.count(key)) throw ConfigError(fmt::format("{}: unknown key '{}' in [{}]", origin, key, sec));
    }

    Reader r{tree, origin};
    RunConfig c;
    c.source = text;
    const double L = r.positive("crystal", "length_um", 2000.0);
    const double theta = r.number("crystal", "cut_angle_deg").value_or(29.62);
    const std::string preset = r.raw("crystal", "preset").value_or("BBO-Eimerl87");
    if (preset == "BBO-Eimerl87") {
        c.crystal = CrystalSpec::bbo_eimerl87(L, deg(theta));
        if (tree.get_child_optional("sellmeier"))
            throw ConfigError(fmt::format("{}: [sellmeier] given together with preset {}", origin, preset));
    } else if (preset == "custom") {
        c.crystal.name = "custom";
        c.crystal.length = L;
        c.crystal.cut_angle = deg(theta);
        auto need = [&](const char* key) {
            auto v = r.number("sellmeier", key);
            if (!v) throw ConfigError(fmt::format("{}: [sellmeier] {} required for a custom crystal", origin, key));
            return *v;
        };
        c.crystal.ordinary = {need("no_a"), need("no_b"), need("no_c"), need("no_d")};
        c.crystal.extraordinary = {need("ne_a"), need("ne_b"), need("ne_c"), need("ne_d")};
        c.crystal.lambda_min = need("lambda_min_um");
        c.crystal.lambda_max = need("lambda_max_um");
    } else {
        throw ConfigError(fmt::format("{}: unknown crystal preset '{}'", origin, preset));
    }
    try {
        c.crystal.validate();
    } catch (const ConfigError& e) {
        throw ConfigError(fmt::format("{}: {}", origin, e.what()));
    }

    c.pump.wavelength = r.positive("pump", "wavelength_um", 0.3975);
    c.pump.duration = r.positive("pump", "duration_fs", 280.0);
    c.pump.waist = r.positive("pump", "waist_um", 100.0);
    c.pump.amplitude = r.positive("pump", "amplitude", 1.0);

    c.filter.qx_min = r.number("filter", "qx_min");
    c.filter.qx_max = r.number("filter", "qx_max");
    c.filter.qy_max = r.number("filter", "qy_max");
    c.filter.Omega_max = r.number("filter", "omega_max");
    if (c.filter.qx_min && c.filter.qx_max && !(*c.filter.qx_min < *c.filter.qx_max))
        throw ConfigError(fmt::format("{}: [filter] qx_min = {} must be below qx_max = {}", origin, *c.filter.qx_min,
                                      *c.filter.qx_max));
    if (c.filter.qy_max && *c.filter.qy_max < 0)
        throw ConfigError(fmt::format("{}: [filter] qy_max must be non-negative", origin));
    if (c.filter.Omega_max && !(*c.filter.Omega_max > 0))
        throw ConfigError(fmt::format("{}: [filter] omega_max must be positive", origin));

    c.nq = r.integer("grid", "nq").value_or(c.nq);
    c.nW = r.integer("grid", "nomega").value_or(c.nW);
    c.margin = r.number("grid", "margin").value_or(c.margin);
    if (c.nq < 3 || c.nW < 3) throw ConfigError(fmt::format("{}: [grid] nq and nomega must be >= 3", origin));
    if (c.margin < 0) throw ConfigError(fmt::format("{}: [grid] margin must be non-negative", origin));

    const std::string mu = r.raw("model", "mu").value_or("fit");
    if (mu != "fit") c.mu = r.positive("model", "mu", 1.0);

    c.out_dir = r.raw("output", "dir").value_or(c.out_dir);
    c.format = r.raw("output", "format").value_or(c.format);
    if (c.format != "bin" && c.format != "csv")
        throw ConfigError(fmt::format("{}: [output] format must be bin or csv", origin));
    c.modes = r.integer("output", "modes").value_or(c.modes);
    c.pad = r.integer("output", "pad").value_or(c.pad);
    if (c.modes < 1 || c.pad < 1) throw ConfigError(fmt::format("{}: [output] modes and pad must be >= 1", origin));
    const std::string dump = r.raw("output", "kernel_dump").value_or("false");
    if (dump != "true" && dump != "false") throw ConfigError(fmt::format("{}: [output] kernel_dump must be true or false", origin));
    c.kernel_dump = dump == "true";
    return c;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(fmt::format("cannot open config file {}", path));
    std::stringstream ss;
    ss << f.rdbuf();
    RunConfig c = parse_config_text(ss.str(), path);
    c.path = path;
    return c;
}

}  // namespace twinbeam
