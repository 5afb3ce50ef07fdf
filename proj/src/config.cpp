#include "ewagg/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ewagg {
namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
    std::istringstream in(value);
    T out{};
    if (!(in >> out) || !in.eof()) throw std::invalid_argument("config key '" + key + "': bad value '" + value + "'");
    return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::invalid_argument("config key '" + key + "': expected a boolean, got '" + value + "'");
}

}  // namespace

std::map<std::string, std::string> parse_key_values(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        const std::string where = "line " + std::to_string(number) + ": ";
        if (eq == std::string::npos) throw std::invalid_argument(where + "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw std::invalid_argument(where + "missing key");
        if (!kv.emplace(key, value).second) throw std::invalid_argument(where + "duplicate key '" + key + "'");
    }
    return kv;
}

ExperimentConfig config_from_key_values(const std::map<std::string, std::string>& kv, ExperimentConfig base) {
    for (const auto& [key, value] : kv) {
        if (key == "signal") base.signal = parse_signal_name(value);
        else if (key == "smooth") base.smooth = parse_bool(key, value);
        else if (key == "n") base.n = parse_number<int>(key, value);
        else if (key == "sigma") base.sigma = parse_number<double>(key, value);
        else if (key == "replications") base.replications = parse_number<int>(key, value);
        else if (key == "seed") base.seed = parse_number<std::uint64_t>(key, value);
        else if (key == "methods") base.methods = parse_method_list(value);
        else if (key == "grid_alpha") base.grid_alpha = parse_number<int>(key, value);
        else if (key == "grid_w") base.grid_w = parse_number<int>(key, value);
        else if (key == "alpha_min") base.alpha_min = parse_number<double>(key, value);
        else if (key == "alpha_max") base.alpha_max = parse_number<double>(key, value);
        else if (key == "beta_factor") base.beta_factor = parse_number<double>(key, value);
        else if (key == "threads") base.threads = parse_number<int>(key, value);
        else if (key == "out") base.out_dir = value;
        else throw std::invalid_argument("unknown config key '" + key + "'");
    }
    return base;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return config_from_key_values(parse_key_values(buf.str()));
}

}  // namespace ewagg
