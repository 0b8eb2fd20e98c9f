#include "dps/config.hpp"

#include <fstream>
#include <sstream>

namespace dps {

namespace {

std::string trim(const std::string& s)
{
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

} // namespace

void validate(const RunConfig& cfg)
{
    if (!(cfg.quad_tolerance > 0.0)) throw ConfigError("quad_tolerance must be > 0");
    if (cfg.max_nodes < 16) throw ConfigError("max_nodes must be >= 16");
    if (cfg.truncation_nmax < 2) throw ConfigError("truncation_nmax must be >= 2");
    if (cfg.output_format != "csv" && cfg.output_format != "json")
        throw ConfigError("output_format must be csv or json");
}

RunConfig load_config(const std::string& path)
{
    RunConfig cfg;
    if (path.empty()) return cfg;

    std::ifstream in(path);
    if (!in) return cfg; // absent file: defaults

    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");

        try {
            if (key == "quad_tolerance")
                cfg.quad_tolerance = std::stod(value);
            else if (key == "max_nodes")
                cfg.max_nodes = std::stoi(value);
            else if (key == "truncation_nmax")
                cfg.truncation_nmax = std::stoi(value);
            else if (key == "output_format")
                cfg.output_format = value;
            else if (key == "seed")
                cfg.seed = static_cast<std::uint64_t>(std::stoull(value));
            else
                throw ConfigError("config line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception&) {
            throw ConfigError("config line " + std::to_string(lineno) + ": bad value '" + value + "'");
        }
    }

    try {
        validate(cfg);
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(e.what()) + " (in " + path + ")");
    }
    return cfg;
}

} // namespace dps
