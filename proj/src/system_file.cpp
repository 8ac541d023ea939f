#include "liequad/system_file.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace liequad {

using nlohmann::ordered_json;

SchemaError::SchemaError(const std::string& source, std::size_t line, const std::string& field, const std::string& what)
    : Error(source + (line ? ":" + std::to_string(line) : std::string()) + ": " +
            (field.empty() ? std::string() : "field '" + field + "': ") + what),
      line_(line), field_(field)
{
}

namespace {

std::size_t line_at(std::string_view text, std::size_t byte)
{
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<long>(byte), '\n'));
}

// Line of the first occurrence of "key" used as an object key; 0 if absent.
std::size_t line_of_key(std::string_view text, const std::string& key)
{
    const std::string needle = "\"" + key + "\"";
    std::size_t pos = text.find(needle);
    while (pos != std::string_view::npos) {
        std::size_t after = text.find_first_not_of(" \t\r\n", pos + needle.size());
        if (after != std::string_view::npos && text[after] == ':')
            return line_at(text, pos);
        pos = text.find(needle, pos + 1);
    }
    return 0;
}

struct Checker {
    std::string_view text;
    const std::string& source;

    [[noreturn]] void fail(const std::string& field, const std::string& what, const std::string& key_for_line = "") const
    {
        std::string key = key_for_line.empty() ? field : key_for_line;
        throw SchemaError(source, line_of_key(text, key), field, what);
    }
};

}  // namespace

SystemFile parse_system_file(std::string_view text, const std::string& source)
{
    ordered_json j;
    try {
        j = ordered_json::parse(text.begin(), text.end(), nullptr, true, true);
    } catch (const ordered_json::parse_error& e) {
        throw SchemaError(source, line_at(text, e.byte > 0 ? e.byte - 1 : 0), "", "invalid JSON");
    }
    Checker ck{text, source};
    if (!j.is_object())
        throw SchemaError(source, 1, "", "top level must be an object");
    static const std::set<std::string> known{"geometry", "n", "hamiltonian", "constants", "points", "seed", "t_max", "h"};
    for (const auto& [key, value] : j.items())
        if (!known.count(key))
            ck.fail(key, "unknown key");

    SystemFile f;
    auto require = [&](const char* key) -> const ordered_json& {
        if (!j.contains(key))
            throw SchemaError(source, 0, key, "missing required key");
        return j.at(key);
    };
    const auto& geo = require("geometry");
    if (!geo.is_string() || !parse_geometry_kind(geo.get<std::string>()))
        ck.fail("geometry", "expected one of \"symplectic\", \"cosymplectic\", \"contact\", \"cocontact\"");
    f.geometry = geo.get<std::string>();
    const auto& n = require("n");
    if (!n.is_number_integer() || n.get<long long>() < 1)
        ck.fail("n", "expected a positive integer");
    f.n = static_cast<std::size_t>(n.get<long long>());
    const auto& ham = require("hamiltonian");
    if (!ham.is_string())
        ck.fail("hamiltonian", "expected an expression string");
    f.hamiltonian = ham.get<std::string>();

    if (j.contains("constants")) {
        const auto& cs = j.at("constants");
        if (!cs.is_array())
            ck.fail("constants", "expected an array of {\"f\", \"alpha\"} objects");
        for (std::size_t i = 0; i < cs.size(); ++i) {
            const std::string field = "constants[" + std::to_string(i) + "]";
            const auto& c = cs[i];
            if (!c.is_object() || !c.contains("f") || !c.contains("alpha"))
                ck.fail(field, "expected an object with keys \"f\" and \"alpha\"", "constants");
            for (const auto& [key, value] : c.items())
                if (key != "f" && key != "alpha")
                    ck.fail(field + "." + key, "unknown key", key);
            if (!c.at("f").is_string())
                ck.fail(field + ".f", "expected an expression string", "f");
            if (!c.at("alpha").is_number())
                ck.fail(field + ".alpha", "expected a number", "alpha");
            f.constants.push_back({c.at("f").get<std::string>(), c.at("alpha").get<double>()});
        }
    }
    const std::size_t dim = PhaseGeometry(*parse_geometry_kind(f.geometry), f.n).dim();
    if (j.contains("points")) {
        const auto& ps = j.at("points");
        if (!ps.is_array())
            ck.fail("points", "expected an array of coordinate arrays");
        for (std::size_t i = 0; i < ps.size(); ++i) {
            const std::string field = "points[" + std::to_string(i) + "]";
            const auto& p = ps[i];
            if (!p.is_array() || p.size() != dim)
                ck.fail(field, "expected an array of " + std::to_string(dim) + " numbers", "points");
            std::vector<double> x;
            for (const auto& v : p) {
                if (!v.is_number())
                    ck.fail(field, "expected numbers", "points");
                x.push_back(v.get<double>());
            }
            f.points.push_back(std::move(x));
        }
    }
    if (j.contains("seed")) {
        const auto& s = j.at("seed");
        if (!s.is_number_unsigned())
            ck.fail("seed", "expected a non-negative integer");
        f.seed = s.get<std::uint64_t>();
    }
    auto positive = [&](const char* key, double& out) {
        if (!j.contains(key))
            return;
        const auto& v = j.at(key);
        if (!v.is_number() || !(v.get<double>() > 0))
            ck.fail(key, "expected a positive number");
        out = v.get<double>();
    };
    positive("t_max", f.t_max);
    positive("h", f.h);
    return f;
}

SystemFile load_system_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_system_file(ss.str(), path.string());
}

std::string serialize(const SystemFile& file)
{
    ordered_json j;
    j["geometry"] = file.geometry;
    j["n"] = file.n;
    j["hamiltonian"] = file.hamiltonian;
    j["constants"] = ordered_json::array();
    for (const auto& c : file.constants)
        j["constants"].push_back({{"f", c.f}, {"alpha", c.alpha}});
    j["points"] = ordered_json::array();
    for (const auto& p : file.points)
        j["points"].push_back(p);
    j["seed"] = file.seed;
    j["t_max"] = file.t_max;
    j["h"] = file.h;
    return j.dump(2) + "\n";
}

LoadedSystem build_system(const SystemFile& file)
{
    auto kind = parse_geometry_kind(file.geometry);
    if (!kind)
        throw SchemaError("<system>", 0, "geometry", "unknown geometry");
    GeometryPtr g = make_geometry(*kind, file.n);
    LoadedSystem out{make_system(g, file.hamiltonian), {}, {}};
    for (const auto& c : file.constants) {
        out.constants.push_back(make_scalar(g, c.f));
        out.alphas.push_back(c.alpha);
    }
    return out;
}

}  // namespace liequad
