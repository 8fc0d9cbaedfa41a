#include "config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "mpqkd/security.hpp"

namespace mpqkd::cli {

namespace {

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"channel", {"type", "p", "p0", "px", "py", "pz", "qber", "x", "eta"}},
        {"detection", {"loss_db", "receiver_loss_db", "detector_efficiency", "dark_count_prob"}},
        {"run", {"protocol", "n_pulses", "seed", "workers", "protection"}},
    };
    return keys;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) {
        return {};
    }
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void parse_fail(const std::string& origin, int line, const std::string& what) {
    std::ostringstream os;
    os << "config parse error at " << origin << ":" << line << ": " << what;
    throw CliError(2, os.str());
}

[[noreturn]] void key_fail(const std::string& key, const std::string& what) {
    std::ostringstream os;
    os << "invalid value for " << key << ": " << what;
    throw CliError(2, os.str());
}

double parse_double(const std::map<std::string, ConfigEntry>& section, const std::string& key,
                    double fallback) {
    const auto it = section.find(key);
    if (it == section.end()) {
        return fallback;
    }
    const std::string& text = it->second.value;
    double out{};
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        key_fail(key, "'" + text + "' is not a number");
    }
    return out;
}

std::uint64_t parse_count(const std::map<std::string, ConfigEntry>& section,
                          const std::string& key, std::uint64_t fallback) {
    const auto it = section.find(key);
    if (it == section.end()) {
        return fallback;
    }
    const std::string& text = it->second.value;
    std::uint64_t out{};
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    if (ec != std::errc{} || ptr != end) {
        key_fail(key, "'" + text + "' is not a nonnegative integer");
    }
    return out;
}

void require_range(double v, double lo, double hi, const std::string& key) {
    if (v < lo || v > hi) {
        std::ostringstream os;
        os << v << " outside [" << lo << ", " << hi << "]";
        key_fail(key, os.str());
    }
}

// Keys that only make sense for a particular channel type are rejected when
// another type is selected, so typos do not silently vanish.
void reject_unused(const std::map<std::string, ConfigEntry>& section,
                   const std::set<std::string>& used) {
    for (const auto& [key, entry] : section) {
        if (!used.contains(key)) {
            key_fail(key, "not applicable to this channel type");
        }
    }
}

void build_channel(const std::map<std::string, ConfigEntry>& section, Settings& out) {
    const auto type_it = section.find("type");
    if (type_it == section.end()) {
        key_fail("type", "missing from [channel] section");
    }
    const std::string& type = type_it->second.value;
    try {
        if (type == "y_flip") {
            reject_unused(section, {"type", "p"});
            const double p = parse_double(section, "p", 0.0);
            out.channel = y_flip(p);
            out.channel_parameter = p;
        } else if (type == "pauli") {
            reject_unused(section, {"type", "p0", "px", "py", "pz"});
            const double p0 = parse_double(section, "p0", 0.0);
            const double px = parse_double(section, "px", 0.0);
            const double py = parse_double(section, "py", 0.0);
            const double pz = parse_double(section, "pz", 0.0);
            out.channel = PauliChannel({p0, px, py, pz});
        } else if (type == "bb84") {
            reject_unused(section, {"type", "qber", "x"});
            const double q = parse_double(section, "qber", 0.0);
            const double x = parse_double(section, "x", 0.0);
            out.channel = bb84_channel(q, x);
            out.channel_parameter = q;
        } else if (type == "six_state") {
            reject_unused(section, {"type", "qber"});
            const double q = parse_double(section, "qber", 0.0);
            out.channel = six_state_channel(q);
            out.channel_parameter = q;
        } else if (type == "depolarizing") {
            reject_unused(section, {"type", "eta"});
            const double eta = parse_double(section, "eta", 0.0);
            out.channel = depolarizing_as_pauli(eta);
            out.channel_parameter = eta;
        } else {
            key_fail("type", "unknown channel type '" + type + "'");
        }
    } catch (const std::invalid_argument& e) {
        // Range violations surface from the channel constructors.
        throw CliError(2, std::string("invalid [channel] section: ") + e.what());
    }
}

}  // namespace

RawConfig parse_config_text(std::istream& in, const std::string& origin) {
    RawConfig raw;
    std::string current_section;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string text = trim(line);
        if (text.empty() || text[0] == '#' || text[0] == ';') {
            continue;
        }
        if (text.front() == '[') {
            if (text.back() != ']' || text.size() < 3) {
                parse_fail(origin, line_no, "malformed section header '" + text + "'");
            }
            current_section = trim(text.substr(1, text.size() - 2));
            if (!known_keys().contains(current_section)) {
                parse_fail(origin, line_no, "unknown section [" + current_section + "]");
            }
            raw.sections.try_emplace(current_section);
            continue;
        }
        const auto eq = text.find('=');
        if (eq == std::string::npos) {
            parse_fail(origin, line_no, "expected 'key = value', got '" + text + "'");
        }
        if (current_section.empty()) {
            parse_fail(origin, line_no, "key outside any [section]");
        }
        const std::string key = trim(text.substr(0, eq));
        const std::string value = trim(text.substr(eq + 1));
        if (key.empty()) {
            parse_fail(origin, line_no, "empty key");
        }
        if (value.empty()) {
            parse_fail(origin, line_no, "empty value for key '" + key + "'");
        }
        if (!known_keys().at(current_section).contains(key)) {
            parse_fail(origin, line_no,
                       "unknown key '" + key + "' in section [" + current_section + "]");
        }
        auto& section = raw.sections[current_section];
        const auto [it, inserted] = section.try_emplace(key, ConfigEntry{value, line_no});
        if (!inserted) {
            std::ostringstream os;
            os << "duplicate key '" << key << "' in section [" << current_section
               << "] (first defined at line " << it->second.line << ")";
            parse_fail(origin, line_no, os.str());
        }
    }
    return raw;
}

RawConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw CliError(2, "cannot open config file '" + path + "'");
    }
    return parse_config_text(in, path);
}

Settings settings_from(const RawConfig& raw) {
    Settings out;

    if (const auto it = raw.sections.find("channel"); it != raw.sections.end()) {
        build_channel(it->second, out);
    }

    if (const auto it = raw.sections.find("detection"); it != raw.sections.end()) {
        const auto& sec = it->second;
        out.loss_db = parse_double(sec, "loss_db", out.loss_db);
        out.receiver_loss_db = parse_double(sec, "receiver_loss_db", out.receiver_loss_db);
        out.detector_efficiency =
            parse_double(sec, "detector_efficiency", out.detector_efficiency);
        out.dark_count_prob = parse_double(sec, "dark_count_prob", out.dark_count_prob);
        if (out.loss_db < 0.0) {
            key_fail("loss_db", "must be >= 0");
        }
        if (out.receiver_loss_db < 0.0) {
            key_fail("receiver_loss_db", "must be >= 0");
        }
        require_range(out.detector_efficiency, 0.0, 1.0, "detector_efficiency");
        require_range(out.dark_count_prob, 0.0, 1.0, "dark_count_prob");
    }

    if (const auto it = raw.sections.find("run"); it != raw.sections.end()) {
        const auto& sec = it->second;
        if (const auto p = sec.find("protocol"); p != sec.end()) {
            const std::string& v = p->second.value;
            if (v == "bb84") {
                out.protocol = ProtocolKind::bb84;
            } else if (v == "two_state" || v == "two-state") {
                out.protocol = ProtocolKind::two_state;
            } else {
                key_fail("protocol", "expected bb84 or two_state, got '" + v + "'");
            }
        }
        out.n_pulses = parse_count(sec, "n_pulses", out.n_pulses);
        if (out.n_pulses < 1) {
            key_fail("n_pulses", "must be at least 1");
        }
        out.seed = parse_count(sec, "seed", out.seed);
        const std::uint64_t workers = parse_count(sec, "workers", out.workers);
        if (workers < 1 || workers > 4096) {
            key_fail("workers", "must be in 1..4096");
        }
        out.workers = static_cast<unsigned>(workers);
        if (const auto p = sec.find("protection"); p != sec.end()) {
            const std::string& v = p->second.value;
            if (v == "on" || v == "true" || v == "1") {
                out.protection = true;
            } else if (v == "off" || v == "false" || v == "0") {
                out.protection = false;
            } else {
                key_fail("protection", "expected on or off, got '" + v + "'");
            }
        }
    }
    return out;
}

Settings load_settings(const std::optional<std::string>& config_path) {
    if (!config_path) {
        return Settings{};
    }
    return settings_from(parse_config_file(*config_path));
}

}  // namespace mpqkd::cli
