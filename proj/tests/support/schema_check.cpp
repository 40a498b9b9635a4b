#include "schema_check.hpp"

#include <fstream>
#include <stdexcept>

namespace schema_check {

namespace {

bool has_type(const Json& v, const std::string& type)
{
    if (type == "object") return v.is_object();
    if (type == "array") return v.is_array();
    if (type == "string") return v.is_string();
    if (type == "boolean") return v.is_boolean();
    if (type == "null") return v.is_null();
    if (type == "integer") return v.is_number_integer();
    if (type == "number") return v.is_number();
    throw std::invalid_argument("unsupported schema type " + type);
}

void check(const Json& v, const Json& s, const std::string& at, std::vector<std::string>& errors)
{
    if (s.contains("type")) {
        bool ok = false;
        if (s["type"].is_array()) {
            for (const Json& t : s["type"]) ok = ok || has_type(v, t.get<std::string>());
        } else {
            ok = has_type(v, s["type"].get<std::string>());
        }
        if (!ok) {
            errors.push_back(at + ": expected type " + s["type"].dump() + ", got " + v.dump());
            return;
        }
    }
    if (s.contains("const") && v != s["const"]) {
        errors.push_back(at + ": expected " + s["const"].dump());
    }
    if (s.contains("enum")) {
        bool found = false;
        for (const Json& option : s["enum"]) found = found || option == v;
        if (!found) errors.push_back(at + ": " + v.dump() + " not in enum");
    }
    if (v.is_number()) {
        const double x = v.get<double>();
        if (s.contains("minimum") && x < s["minimum"].get<double>()) errors.push_back(at + ": below minimum");
        if (s.contains("maximum") && x > s["maximum"].get<double>()) errors.push_back(at + ": above maximum");
        if (s.contains("exclusiveMinimum") && !(x > s["exclusiveMinimum"].get<double>())) {
            errors.push_back(at + ": not above exclusiveMinimum");
        }
    }
    if (s.contains("oneOf")) {
        int matches = 0;
        for (const Json& option : s["oneOf"]) {
            std::vector<std::string> sub;
            check(v, option, at, sub);
            matches += sub.empty() ? 1 : 0;
        }
        if (matches != 1) errors.push_back(at + ": matches " + std::to_string(matches) + " oneOf branches");
    }
    if (v.is_object()) {
        if (s.contains("required")) {
            for (const Json& key : s["required"]) {
                if (!v.contains(key.get<std::string>())) errors.push_back(at + ": missing " + key.get<std::string>());
            }
        }
        for (const auto& [key, value] : v.items()) {
            const std::string child = at + "/" + key;
            if (s.contains("properties") && s["properties"].contains(key)) {
                check(value, s["properties"][key], child, errors);
            } else if (s.contains("additionalProperties")) {
                const Json& extra = s["additionalProperties"];
                if (extra.is_boolean()) {
                    if (!extra.get<bool>()) errors.push_back(child + ": unexpected property");
                } else {
                    check(value, extra, child, errors);
                }
            }
        }
    }
    if (v.is_array()) {
        if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) {
            errors.push_back(at + ": too few items");
        }
        if (s.contains("items")) {
            for (std::size_t i = 0; i < v.size(); ++i) check(v[i], s["items"], at + "/" + std::to_string(i), errors);
        }
    }
}

}  // namespace

std::vector<std::string> validate(const Json& instance, const Json& schema)
{
    std::vector<std::string> errors;
    check(instance, schema, "", errors);
    return errors;
}

Json load(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    return Json::parse(in);
}

}  // namespace schema_check
