#ifndef FLAGROCK_TESTS_SCHEMA_CHECK_HPP
#define FLAGROCK_TESTS_SCHEMA_CHECK_HPP

// Minimal structural validator for the draft-07 subset used by
// docs/report.schema.json: type / properties / required / items / enum.

#include <string>
#include <vector>

#include <json.hpp>

inline bool schema_type_matches(const nlohmann::json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "integer") return value.is_number_integer();
    if (type == "number") return value.is_number();
    if (type == "null") return value.is_null();
    return false;
}

inline void schema_validate(const nlohmann::json& schema, const nlohmann::json& value,
                            const std::string& path, std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) ok = schema_type_matches(value, t.get<std::string>());
        else
            for (const auto& alt : t) ok = ok || schema_type_matches(value, alt.get<std::string>());
        if (!ok) {
            errors.push_back(path + ": type mismatch");
            return;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema["enum"]) ok = ok || alt == value;
        if (!ok) errors.push_back(path + ": not in enum");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    errors.push_back(path + ": missing required '" + key.get<std::string>() + "'");
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
                if (value.contains(it.key()))
                    schema_validate(it.value(), value[it.key()], path + "/" + it.key(), errors);
    }
    if (value.is_array() && schema.contains("items")) {
        int k = 0;
        for (const auto& elem : value)
            schema_validate(schema["items"], elem, path + "[" + std::to_string(k++) + "]", errors);
    }
}

#endif
