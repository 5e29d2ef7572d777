#include "frog/io_util.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace frog {

std::string fmt_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string fmt_int(std::int64_t v) { return std::to_string(v); }
std::string fmt_uint(std::uint64_t v) { return std::to_string(v); }

std::string site_cell(const Site& x) {
    std::string out;
    for (int i = 0; i < x.dim; ++i) {
        if (i) out += ';';
        out += std::to_string(x.c[i]);
    }
    return out;
}

namespace {

std::vector<std::string> split(const std::string& text, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    for (char ch : text) {
        if (ch == sep) {
            parts.push_back(cur);
            cur.clear();
        } else if (!std::isspace((unsigned char)ch)) {
            cur += ch;
        }
    }
    parts.push_back(cur);
    return parts;
}

std::int64_t parse_i64(const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("not an integer: '" + s + "'");
    return v;
}

}  // namespace

Site parse_site_cell(const std::string& text, int expect_dim) {
    // accept both "1,0" (flag style) and "1;0" (cell style)
    std::vector<std::string> parts =
        text.find(';') != std::string::npos ? split(text, ';') : split(text, ',');
    if (parts.empty() || (int)parts.size() > kMaxDim)
        throw std::invalid_argument("bad site: '" + text + "'");
    Site s = Site::zero((int)parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) s.c[i] = parse_i64(parts[i]);
    if (expect_dim >= 0 && s.dim != expect_dim)
        throw std::invalid_argument("site '" + text + "' has wrong dimension");
    return s;
}

std::vector<Site> parse_site_list(const std::string& text, int expect_dim) {
    std::vector<Site> sites;
    if (text.empty()) return sites;
    for (const std::string& part : split(text, ';'))
        if (!part.empty()) sites.push_back(parse_site_cell(part, expect_dim));
    return sites;
}

std::vector<std::int64_t> parse_int_list(const std::string& text) {
    std::vector<std::int64_t> out;
    for (const std::string& part : split(text, ','))
        if (!part.empty()) out.push_back(parse_i64(part));
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    for (const std::string& part : split(text, ',')) {
        if (part.empty()) continue;
        std::size_t used = 0;
        double v = 0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("not a number: '" + part + "'");
        }
        if (used != part.size()) throw std::invalid_argument("not a number: '" + part + "'");
        out.push_back(v);
    }
    return out;
}

CsvWriter::CsvWriter(std::string path, std::vector<std::string> header)
    : path_(std::move(path)), width_(header.size()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) body_ += ',';
        body_ += header[i];
    }
    body_ += '\n';
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) throw std::logic_error("csv row width mismatch");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) body_ += ',';
        body_ += cells[i];
    }
    body_ += '\n';
    ++nrows_;
}

void CsvWriter::flush() {
    if (flushed_) return;
    write_file(path_, body_);
    flushed_ = true;
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string slurp_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out.write(bytes.data(), (std::streamsize)bytes.size());
    if (!out) throw std::runtime_error("short write to " + path);
}

void write_manifest(const std::string& subcommand,
                    const std::map<std::string, std::string>& params, std::uint64_t seed,
                    double wall_ms, const std::vector<std::string>& outputs) {
    if (outputs.empty()) return;
    nlohmann::json m;
    m["subcommand"] = subcommand;
    m["params"] = params;
    m["seed"] = seed;
    m["version"] = kVersion;
    m["wall_ms"] = wall_ms;
    nlohmann::json files = nlohmann::json::array();
    for (const std::string& path : outputs) {
        char digest[32];
        std::snprintf(digest, sizeof(digest), "%016llx",
                      (unsigned long long)fnv1a64(slurp_file(path)));
        files.push_back({{"file", path}, {"digest", digest}});
    }
    m["outputs"] = files;
    write_file(outputs.front() + ".manifest.json", m.dump(2) + "\n");
}

}  // namespace frog
