#include "fimin/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <variant>

#include <json.hpp>

#include "fimin/errors.hpp"
#include "fimin/pde.hpp"

namespace fimin {

std::string format_number(double v) {
    if (!std::isfinite(v)) {
        throw contract_error("refusing to serialize a non-finite number");
    }
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

namespace {

// Minimal JSON value for report output; object keys are emitted in
// std::map order, which is the sorted order the report format requires.
struct JValue;
using JObject = std::map<std::string, JValue>;
using JArray = std::vector<JValue>;

struct JValue {
    std::variant<bool, int, double, std::string, JArray, JObject> data;

    JValue() : data(false) {}
    JValue(bool b) : data(b) {}
    JValue(int i) : data(i) {}
    JValue(double d) : data(d) {}
    JValue(const char* s) : data(std::string(s)) {}
    JValue(std::string s) : data(std::move(s)) {}
    JValue(JArray a) : data(std::move(a)) {}
    JValue(JObject o) : data(std::move(o)) {}
};

void dump(const JValue& v, std::string& out) {
    if (std::holds_alternative<bool>(v.data)) {
        out += std::get<bool>(v.data) ? "true" : "false";
    } else if (std::holds_alternative<int>(v.data)) {
        out += std::to_string(std::get<int>(v.data));
    } else if (std::holds_alternative<double>(v.data)) {
        out += format_number(std::get<double>(v.data));
    } else if (std::holds_alternative<std::string>(v.data)) {
        out += '"';
        for (char c : std::get<std::string>(v.data)) {
            switch (c) {
                case '"': out += "\\\""; break;
                case '\\': out += "\\\\"; break;
                case '\n': out += "\\n"; break;
                case '\t': out += "\\t"; break;
                default: out += c;
            }
        }
        out += '"';
    } else if (std::holds_alternative<JArray>(v.data)) {
        out += '[';
        const auto& arr = std::get<JArray>(v.data);
        for (std::size_t i = 0; i < arr.size(); ++i) {
            if (i) out += ',';
            dump(arr[i], out);
        }
        out += ']';
    } else {
        out += '{';
        const auto& obj = std::get<JObject>(v.data);
        bool first = true;
        for (const auto& [key, val] : obj) {
            if (!first) out += ',';
            first = false;
            out += '"';
            out += key;
            out += "\":";
            dump(val, out);
        }
        out += '}';
    }
}

JObject order_map(const std::map<int, double>& m) {
    JObject o;
    for (const auto& [k, v] : m) o[std::to_string(k)] = v;
    return o;
}

} // namespace

SolveRequest parse_request(const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw schema_error(std::string("request is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) {
        throw schema_error("request must be a JSON object");
    }
    for (const auto& [key, val] : j.items()) {
        if (key != "moments" && key != "x_scale" && key != "constants") {
            throw schema_error("unknown request field '" + key + "'");
        }
    }
    if (!j.contains("moments") || !j["moments"].is_array() || j["moments"].empty()) {
        throw schema_error("request needs a nonempty 'moments' array");
    }

    SolveRequest req;
    int prev_order = 0;
    for (const auto& entry : j["moments"]) {
        if (!entry.is_object()) {
            throw schema_error("each moment must be an object {\"k\":..,\"value\":..}");
        }
        for (const auto& [key, val] : entry.items()) {
            if (key != "k" && key != "value") {
                throw schema_error("unknown moment field '" + key + "'");
            }
        }
        if (!entry.contains("k") || !entry["k"].is_number_integer()) {
            throw schema_error("moment field 'k' must be an integer");
        }
        if (!entry.contains("value") || !entry["value"].is_number()) {
            throw schema_error("moment field 'value' must be a number");
        }
        const int k = entry["k"].get<int>();
        if (k < 1) {
            throw schema_error("moment order k must be >= 1");
        }
        if (k <= prev_order) {
            throw schema_error("moment orders must be strictly increasing");
        }
        prev_order = k;
        req.moments.push_back({k, entry["value"].get<double>()});
    }
    if (j.contains("x_scale")) {
        if (!j["x_scale"].is_number()) {
            throw schema_error("'x_scale' must be a number");
        }
        req.x_scale = j["x_scale"].get<double>();
    }
    if (j.contains("constants")) {
        if (!j["constants"].is_object()) {
            throw schema_error("'constants' must be an object keyed by order");
        }
        for (const auto& [key, val] : j["constants"].items()) {
            int k = 0;
            try {
                std::size_t used = 0;
                k = std::stoi(key, &used);
                if (used != key.size()) throw std::invalid_argument(key);
            } catch (const std::exception&) {
                throw schema_error("constants key '" + key + "' is not an order");
            }
            if (k < 1 || !val.is_number()) {
                throw schema_error("constants entries map order >= 1 to a number");
            }
            req.constants[k] = val.get<double>();
        }
    }
    return req;
}

SolveRequest parse_request_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw schema_error("cannot open request file " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_request(buf.str());
}

std::string report_json(const ClosedFormSolution& closed,
                        const ConsistencyReport* verify, double x_scale) {
    JObject root;
    root["alpha"] = closed.alpha;
    root["alpha_bar"] = closed.alpha_bar;
    root["fisher"] = closed.fisher;
    root["fisher_terms"] = order_map(closed.per_term);
    root["lambdas"] = order_map(closed.lambdas);
    root["translated"] = closed.translated;
    root["x_scale"] = x_scale;

    JArray moments;
    for (const auto& e : closed.moments.entries()) {
        JObject m;
        m["k"] = e.order;
        m["value"] = e.value;
        moments.push_back(std::move(m));
    }
    root["moments"] = std::move(moments);

    if (closed.xi) root["xi"] = *closed.xi;
    if (closed.translated) {
        root["translated_moments"] = order_map(closed.translated_moments);
    }
    if (closed.cramer_rao) {
        root["cr_product"] = closed.cramer_rao->product;
        root["cr_saturated"] = closed.cramer_rao->saturated;
        root["cr_sigma_sq"] = closed.cramer_rao->sigma_sq;
    }

    const std::vector<std::string>& warn =
        verify ? verify->warnings : closed.warnings;
    JArray warnings;
    for (const auto& w : warn) warnings.push_back(w);
    root["warnings"] = std::move(warnings);

    if (verify) {
        JObject v;
        v["alpha_check"] = verify->alpha_check;
        v["energy"] = verify->energy;
        v["fisher_amplitude"] = verify->fisher_amplitude;
        v["fisher_closed"] = verify->fisher_closed;
        v["fisher_constraint"] = verify->fisher_constraint;
        v["fisher_virial"] = verify->fisher_virial;
        v["moment_deltas"] = order_map(verify->moment_deltas);
        v["recovered_moments"] = order_map(verify->recovered_moments);
        v["virial_lhs"] = verify->virial.lhs;
        v["virial_residual"] = verify->virial.residual;
        v["virial_rhs"] = verify->virial.rhs;
        JObject g;
        g["n_points"] = verify->grid.n_points;
        g["x_max"] = verify->grid.x_max;
        g["x_min"] = verify->grid.x_min;
        v["grid"] = std::move(g);

        // Nullity diagnostic of the untranslated complete solution at the
        // input point; omitted when a moment vanishes there.
        try {
            std::vector<std::pair<int, double>> coords;
            for (const auto& e : closed.moments.entries()) {
                coords.emplace_back(e.order, e.value);
            }
            const pde::MomentPoint point(std::move(coords));
            v["pde_residual"] =
                pde::pde_residual(pde::closed_form_candidate(closed.constants), point);
        } catch (const std::exception&) {
            // leave the field out
        }
        root["verify"] = std::move(v);
    }

    std::string out;
    dump(JValue(std::move(root)), out);
    out += '\n';
    return out;
}

int exit_code_for(const std::exception& error) {
    if (dynamic_cast<const schema_error*>(&error)) return 1;
    if (dynamic_cast<const domain_error*>(&error)) return 2;
    if (dynamic_cast<const contract_error*>(&error)) return 2;
    if (dynamic_cast<const numeric_error*>(&error)) return 3;
    return 3;
}

} // namespace fimin
