#pragma once
// Deterministic artifact output: CSV bodies that are byte-identical for
// identical inputs, plus a JSON manifest paired with every output file.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "frog/lattice.hpp"

namespace frog {

inline constexpr const char* kVersion = "0.3.0";

// %.12g rendering with stable nan/inf spellings; independent of locale
std::string fmt_double(double v);
std::string fmt_int(std::int64_t v);
std::string fmt_uint(std::uint64_t v);
// coordinates joined by ';' so a site fits in one CSV cell: "1;-2"
std::string site_cell(const Site& x);
Site parse_site_cell(const std::string& text, int expect_dim = -1);

// split "a,b;c,d" into sites, "1,2,3" into numbers
std::vector<Site> parse_site_list(const std::string& text, int expect_dim = -1);
std::vector<std::int64_t> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

class CsvWriter {
  public:
    CsvWriter(std::string path, std::vector<std::string> header);

    void row(const std::vector<std::string>& cells);
    // writes the file: header, then rows, LF endings, UTF-8/ASCII
    void flush();
    const std::string& path() const { return path_; }
    std::uint64_t rows_written() const { return nrows_; }

  private:
    std::string path_;
    std::size_t width_;
    std::string body_;
    std::uint64_t nrows_ = 0;
    bool flushed_ = false;
};

std::uint64_t fnv1a64(const std::string& bytes);
// read a file fully (binary); throws std::runtime_error when unreadable
std::string slurp_file(const std::string& path);
void write_file(const std::string& path, const std::string& bytes);

// Writes <first output>.manifest.json recording the subcommand, its full
// parameter set, the master seed, version, wall time, and a digest per
// output file.
void write_manifest(const std::string& subcommand,
                    const std::map<std::string, std::string>& params, std::uint64_t seed,
                    double wall_ms, const std::vector<std::string>& outputs);

}  // namespace frog
