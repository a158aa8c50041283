#include "efnz/config.hpp"

#include <fstream>

namespace efnz {

namespace {

Tensor tensor_from_json(const Json& j, const std::string& what) {
    if (!j.is_array() || j.empty()) {
        throw ConfigError(what + " must be a non-empty array");
    }
    if (j.front().is_array()) {
        std::size_t rows = j.size();
        std::size_t cols = j.front().size();
        std::vector<double> values;
        values.reserve(rows * cols);
        for (const auto& row : j) {
            if (!row.is_array() || row.size() != cols) {
                throw ConfigError(what + " must be a rectangular array of arrays");
            }
            for (const auto& v : row) values.push_back(v.get<double>());
        }
        return Tensor::from_values({rows, cols}, std::move(values));
    }
    std::vector<double> values;
    values.reserve(j.size());
    for (const auto& v : j) values.push_back(v.get<double>());
    std::size_t n = values.size();  // read before the move; evaluation order is unspecified
    return Tensor::from_values({n}, std::move(values));
}

std::vector<std::size_t> shape_from_json(const Json& j) {
    if (!j.is_array() || j.empty()) throw ConfigError("'shape' must be a non-empty array");
    std::vector<std::size_t> shape;
    for (const auto& v : j) {
        long long e = v.get<long long>();
        if (e < 1) throw ConfigError("'shape' extents must be >= 1");
        shape.push_back(static_cast<std::size_t>(e));
    }
    return shape;
}

// Mean given either as a scalar (broadcast over `shape`) or as an array.
Tensor mean_from_json(const Json& j, const Json& model) {
    if (j.is_number()) {
        if (!model.contains("shape")) {
            throw ConfigError("scalar 'mean' needs an explicit 'shape'");
        }
        return Tensor::filled(shape_from_json(model.at("shape")), j.get<double>());
    }
    return tensor_from_json(j, "'mean'");
}

}  // namespace

double config_number(const Json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ConfigError("config needs numeric field '" + key + "'");
    }
    return j.at(key).get<double>();
}

double config_number_or(const Json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) throw ConfigError("field '" + key + "' must be numeric");
    return j.at(key).get<double>();
}

long long config_int(const Json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number_integer()) {
        throw ConfigError("config needs integer field '" + key + "'");
    }
    return j.at(key).get<long long>();
}

long long config_int_or(const Json& j, const std::string& key, long long fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number_integer()) {
        throw ConfigError("field '" + key + "' must be an integer");
    }
    return j.at(key).get<long long>();
}

std::string config_string(const Json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
        throw ConfigError("config needs string field '" + key + "'");
    }
    return j.at(key).get<std::string>();
}

bool config_bool_or(const Json& j, const std::string& key, bool fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_boolean()) throw ConfigError("field '" + key + "' must be a boolean");
    return j.at(key).get<bool>();
}

Schedule schedule_from_json(const Json& j) {
    int base = static_cast<int>(config_int_or(j, "base_steps", 1000));
    double beta_start = config_number_or(j, "beta_start", 1e-4);
    double beta_end = config_number_or(j, "beta_end", 0.02);
    double eta = config_number_or(j, "eta", 1.0);
    bool zero_final = config_bool_or(j, "zero_final_noise", false);
    Schedule s = make_linear_schedule(base, beta_start, beta_end, eta, zero_final);
    long long steps = config_int_or(j, "steps", base);
    if (steps != base) s = respace(s, static_cast<int>(steps));
    return s;
}

ModelPtr model_from_json(const Json& j) {
    if (!j.is_object()) throw ConfigError("model declaration must be an object");
    std::string type = config_string(j, "type");

    if (type == "isotropic_gaussian") {
        if (!j.contains("mean")) throw ConfigError("isotropic_gaussian needs 'mean'");
        Tensor mu = mean_from_json(j.at("mean"), j);
        return std::make_shared<IsotropicGaussianModel>(std::move(mu),
                                                        config_number(j, "variance"));
    }
    if (type == "full_gaussian") {
        if (!j.contains("mean") || !j.contains("covariance")) {
            throw ConfigError("full_gaussian needs 'mean' and 'covariance'");
        }
        Tensor mu = mean_from_json(j.at("mean"), j);
        Tensor cov = tensor_from_json(j.at("covariance"), "'covariance'");
        return std::make_shared<FullGaussianModel>(std::move(mu), std::move(cov));
    }
    if (type == "gmm") {
        if (!j.contains("weights") || !j.contains("components")) {
            throw ConfigError("gmm needs 'weights' and 'components'");
        }
        std::vector<double> weights;
        for (const auto& w : j.at("weights")) weights.push_back(w.get<double>());
        std::vector<ModelPtr> components;
        for (const auto& c : j.at("components")) components.push_back(model_from_json(c));
        return std::make_shared<GmmModel>(std::move(weights), std::move(components));
    }
    if (type == "stationary_field") {
        if (!j.contains("shape")) throw ConfigError("stationary_field needs 'shape'");
        std::vector<std::size_t> shape = shape_from_json(j.at("shape"));
        if (!j.contains("kernel")) throw ConfigError("stationary_field needs 'kernel'");
        const Json& k = j.at("kernel");
        Tensor kernel = [&] {
            std::string kt = config_string(k, "type");
            if (kt == "squared_exponential") {
                return StationaryFieldModel::squared_exponential_kernel(
                    shape, config_number(k, "length_scale"), config_number(k, "variance"),
                    config_number_or(k, "nugget", 0.0));
            }
            if (kt == "anisotropic_diagonal") {
                return StationaryFieldModel::anisotropic_diagonal_kernel(
                    shape, config_number(k, "length_along"), config_number(k, "length_across"),
                    config_number(k, "variance"), config_number_or(k, "nugget", 0.0));
            }
            if (kt == "values") {
                if (!k.contains("values")) throw ConfigError("kernel type 'values' needs 'values'");
                return tensor_from_json(k.at("values"), "'kernel.values'");
            }
            throw ConfigError("unknown kernel type '" + kt + "'");
        }();
        if (j.contains("mean") && !j.at("mean").is_number()) {
            Tensor mean = tensor_from_json(j.at("mean"), "'mean'");
            return std::make_shared<StationaryFieldModel>(std::move(shape), std::move(kernel),
                                                          std::move(mean));
        }
        double level = config_number_or(j, "level", 0.0);
        return std::make_shared<StationaryFieldModel>(std::move(shape), std::move(kernel),
                                                      level);
    }
    if (type == "conditional") {
        if (!j.contains("conditions") || !j.at("conditions").is_object()) {
            throw ConfigError("conditional needs an object field 'conditions'");
        }
        std::map<std::string, ModelPtr> members;
        for (const auto& [label, decl] : j.at("conditions").items()) {
            members[label] = model_from_json(decl);
        }
        ModelPtr uncond;
        if (j.contains("unconditional")) uncond = model_from_json(j.at("unconditional"));
        return std::make_shared<ConditionalModel>(std::move(members), std::move(uncond));
    }
    throw ConfigError("unknown model type '" + type + "'");
}

Json load_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config '" + path.string() + "'");
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ConfigError("config '" + path.string() + "' is not valid JSON: " + e.what());
    }
    if (j.is_object() && j.contains("effective_config")) {
        return j.at("effective_config");
    }
    return j;
}

}  // namespace efnz
