#include "fsscomp/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace fsscomp {

namespace {

// 830 nm transition: (hc / 830 nm) / hbar
constexpr double kDefaultOmegaH2 = 2.2694e6;  // rad/ns

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

struct RawSection {
    std::string name;   // e.g. "qdot" or "cell"
    std::string label;  // e.g. the cell name
    std::map<std::string, std::string> kv;
    std::map<std::string, bool> used;
};

double parse_double(const RawSection& sec, const std::string& key, const std::string& value) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw config_error("config: key '" + key + "' in [" + sec.name + "] is not a number: '" +
                           value + "'");
    }
    while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos]))) {
        ++pos;
    }
    if (pos != value.size()) {
        throw config_error("config: key '" + key + "' in [" + sec.name + "] is not a number: '" +
                           value + "'");
    }
    return v;
}

class SectionReader {
public:
    explicit SectionReader(RawSection* sec) : sec_(sec) {}

    bool has(const std::string& key) const { return sec_ && sec_->kv.count(key) > 0; }

    double number(const std::string& key, double fallback) const {
        if (!has(key)) {
            return fallback;
        }
        sec_->used[key] = true;
        return parse_double(*sec_, key, sec_->kv.at(key));
    }

    double required_number(const std::string& key) const {
        if (!has(key)) {
            const std::string where = sec_ ? sec_->name : "missing section";
            throw config_error("config: missing required key '" + key + "' in [" + where + "]");
        }
        sec_->used[key] = true;
        return parse_double(*sec_, key, sec_->kv.at(key));
    }

    int integer(const std::string& key, int fallback) const {
        const double v = number(key, static_cast<double>(fallback));
        return static_cast<int>(v);
    }

    std::string text(const std::string& key, const std::string& fallback) const {
        if (!has(key)) {
            return fallback;
        }
        sec_->used[key] = true;
        return sec_->kv.at(key);
    }

    bool flag(const std::string& key, bool fallback) const {
        if (!has(key)) {
            return fallback;
        }
        sec_->used[key] = true;
        const std::string v = sec_->kv.at(key);
        if (v == "true" || v == "1" || v == "yes") return true;
        if (v == "false" || v == "0" || v == "no") return false;
        throw config_error("config: key '" + key + "' expects true/false, got '" + v + "'");
    }

private:
    RawSection* sec_;
};

}  // namespace

RunConfig RunConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw io_error("config: cannot open '" + path + "'");
    }

    std::vector<RawSection> sections;
    RawSection* current = nullptr;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find_first_of("#;");
        if (hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw config_error("config: malformed section header at line " +
                                   std::to_string(lineno));
            }
            const std::string inner = trim(line.substr(1, line.size() - 2));
            RawSection sec;
            const auto space = inner.find_first_of(" \t");
            if (space == std::string::npos) {
                sec.name = inner;
            } else {
                sec.name = inner.substr(0, space);
                sec.label = trim(inner.substr(space + 1));
            }
            sections.push_back(std::move(sec));
            current = &sections.back();
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("config: expected 'key = value' at line " + std::to_string(lineno));
        }
        if (current == nullptr) {
            throw config_error("config: key outside any [section] at line " +
                               std::to_string(lineno));
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw config_error("config: empty key at line " + std::to_string(lineno));
        }
        if (!current->kv.emplace(key, value).second) {
            throw config_error("config: duplicate key '" + key + "' in [" + current->name + "]");
        }
    }

    auto find_section = [&](const std::string& name) -> RawSection* {
        for (auto& s : sections) {
            if (s.name == name) {
                return &s;
            }
        }
        return nullptr;
    };

    RunConfig cfg;

    {
        RawSection* qdot = find_section("qdot");
        SectionReader r(qdot);
        cfg.splitting_ueV = r.required_number("S");
        cfg.gamma = r.required_number("Gamma");
        cfg.omega_h2 = r.number("omegaH2", kDefaultOmegaH2);
        cfg.omega0 = r.number("omega0", 2.0 * cfg.omega_h2);
        if (!(cfg.gamma > 0.0)) {
            throw config_error("config: Gamma must be positive");
        }
        if (!(cfg.omega_h2 > 0.0) || !(cfg.omega0 > 0.0)) {
            throw config_error("config: transition frequencies must be positive");
        }
    }
    {
        SectionReader r(find_section("grid"));
        cfg.span_gammas = r.number("span_gammas", cfg.span_gammas);
        cfg.grid_n = r.integer("n", cfg.grid_n);
        if (!(cfg.span_gammas > 0.0)) {
            throw config_error("config: span_gammas must be positive");
        }
        if (cfg.grid_n < 16 || (cfg.grid_n & (cfg.grid_n - 1)) != 0) {
            throw config_error("config: grid n must be a power of two >= 16");
        }
    }
    bool default_catalog = true;
    {
        SectionReader r(find_section("hardware"));
        cfg.window = r.number("window", cfg.window);
        cfg.window_sweep_max = r.number("window_sweep_max", cfg.window_sweep_max);
        cfg.window_sweep_steps = r.integer("window_sweep_steps", cfg.window_sweep_steps);
        cfg.max_cells = r.integer("max_cells", cfg.max_cells);
        default_catalog = r.flag("default_catalog", true);
        if (!(cfg.window > 0.0)) {
            throw config_error("config: hardware window must be positive");
        }
        if (cfg.window_sweep_steps < 2) {
            throw config_error("config: window_sweep_steps must be >= 2");
        }
        if (cfg.max_cells < 1) {
            throw config_error("config: max_cells must be >= 1");
        }
    }
    for (auto& sec : sections) {
        if (sec.name != "cell") {
            continue;
        }
        SectionReader r(&sec);
        CellEntry entry;
        entry.name = sec.label.empty() ? "cell" : sec.label;
        entry.cell.alpha = r.required_number("alpha");
        const bool has_limits = r.has("max_slew") && r.has("max_voltage");
        entry.cell.max_slew = r.number("max_slew", 50.0);
        entry.cell.max_voltage = r.number("max_voltage", 300.0);
        entry.placeholder_limits = !has_limits;
        entry.cell.validate();
        cfg.cells.push_back(std::move(entry));
    }
    if (cfg.cells.empty() && default_catalog) {
        // the one published figure: 52 mrad/V @ 830 nm; budgets are placeholders
        cfg.cells.push_back({"conoptics-830nm", {0.052, 50.0, 300.0}, true});
    }
    if (RawSection* sweep = find_section("sweep")) {
        SectionReader r(sweep);
        SweepSpec s;
        s.parameter = r.text("parameter", "");
        if (s.parameter != "S" && s.parameter != "Gamma") {
            throw config_error("config: sweep parameter must be 'S' or 'Gamma'");
        }
        s.start = r.required_number("start");
        s.stop = r.required_number("stop");
        s.steps = r.integer("steps", 0);
        if (s.steps < 2) {
            throw config_error("config: sweep steps must be >= 2");
        }
        cfg.sweep = s;
    }
    {
        SectionReader r(find_section("reshape"));
        cfg.reshape.kind = r.text("kind", cfg.reshape.kind);
        if (cfg.reshape.kind != "lorentzian" && cfg.reshape.kind != "qdot") {
            throw config_error("config: reshape kind must be 'lorentzian' or 'qdot'");
        }
        cfg.reshape.width_a = r.number("width_a", cfg.reshape.width_a);
        cfg.reshape.width_b = r.number("width_b", cfg.reshape.width_b);
        cfg.reshape.offset1 = r.number("offset1", cfg.reshape.offset1);
        cfg.reshape.offset2 = r.number("offset2", cfg.reshape.offset2);
        if (!(cfg.reshape.width_a > 0.0) || !(cfg.reshape.width_b > 0.0)) {
            throw config_error("config: reshape widths must be positive");
        }
    }
    {
        SectionReader r(find_section("output"));
        cfg.out_dir = r.text("dir", cfg.out_dir);
    }

    for (const auto& sec : sections) {
        static const std::vector<std::string> known = {"qdot",  "grid",    "hardware", "cell",
                                                       "sweep", "reshape", "output"};
        if (std::find(known.begin(), known.end(), sec.name) == known.end()) {
            throw config_error("config: unknown section [" + sec.name + "]");
        }
        for (const auto& [key, value] : sec.kv) {
            if (!sec.used.count(key)) {
                throw config_error("config: unknown key '" + key + "' in [" + sec.name + "]");
            }
        }
    }
    return cfg;
}

}  // namespace fsscomp
