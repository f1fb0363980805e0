#include "nckk/model.hpp"

#include <cctype>
#include <charconv>
#include <fstream>
#include <stdexcept>

namespace nckk {

double lambda_D(int ell, int D) {
    if (D < 3) throw std::domain_error("lambda_D: spatial dimension D must be >= 3");
    if (ell < 0) throw std::domain_error("lambda_D: angular momentum ell must be >= 0");
    return static_cast<double>(ell) * (ell + D - 2);
}

void PhysicalParams::validate() const {
    auto bad = [](const std::string& what) { throw std::invalid_argument("PhysicalParams: " + what); };
    if (!(hbar > 0.0)) bad("hbar must be > 0");
    if (!(mass > 0.0)) bad("mass must be > 0");
    if (!(c > 0.0)) bad("c must be > 0");
    if (!(R > 0.0)) bad("R must be > 0");
    if (!(theta >= 0.0)) bad("theta must be >= 0");
    if (!(eta >= 0.0)) bad("eta must be >= 0");
    if (D < 3) bad("D must be >= 3");
}

void QuantumNumbers::validate() const {
    if (l < 0) throw std::invalid_argument("QuantumNumbers: l must be >= 0");
    if (ell < 0) throw std::invalid_argument("QuantumNumbers: ell must be >= 0");
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open config file: " + path.string());
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected `key = value`");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key or value");
        kv[key] = val;
    }
    return kv;
}

void apply_config(PhysicalParams& params, const std::map<std::string, std::string>& kv) {
    auto parse_double = [](const std::string& k, const std::string& v) {
        try {
            std::size_t pos = 0;
            double x = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return x;
        } catch (const std::exception&) {
            throw std::invalid_argument("config key `" + k + "`: cannot parse `" + v + "` as a number");
        }
    };
    for (const auto& [k, v] : kv) {
        if (k == "hbar") params.hbar = parse_double(k, v);
        else if (k == "mass") params.mass = parse_double(k, v);
        else if (k == "c") params.c = parse_double(k, v);
        else if (k == "qe2") params.qe2 = parse_double(k, v);
        else if (k == "V0") params.V0 = parse_double(k, v);
        else if (k == "eta") params.eta = parse_double(k, v);
        else if (k == "theta") params.theta = parse_double(k, v);
        else if (k == "R") params.R = parse_double(k, v);
        else if (k == "wp") params.wp = parse_double(k, v);
        else if (k == "D") params.D = static_cast<int>(parse_double(k, v));
        else throw std::invalid_argument("config: unknown key `" + k + "`");
    }
    params.validate();
}

}  // namespace nckk
