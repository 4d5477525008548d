#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace manet::cli {

// One output record as ordered key/value pairs. Keeping values typed until
// the last moment lets CSV and JSON lines share a single row source and
// guarantees both formats print numbers identically from run to run.
using Value = std::variant<long long, double, std::string, bool>;
using Row = std::vector<std::pair<std::string, Value>>;

enum class Format { CSV, JSONL };

std::string format_value(const Value& v);

class RowWriter {
  public:
    RowWriter(std::ostream& out, Format format) : out_(&out), format_(format) {}

    // CSV emits the header on the first row; JSONL needs none. Column sets
    // must match across rows of one writer.
    void write(const Row& row);

  private:
    std::ostream* out_;
    Format format_;
    bool header_written_ = false;
};

// "1,2,3" -> {1, 2, 3}; used by sweep axes. Throws std::invalid_argument on
// malformed input or an empty list.
std::vector<long long> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

// Plain "key = value" file, one pair per line. Blank lines and lines whose
// first non-space character is '#' or ';' are skipped. Returns pairs in file
// order with surrounding whitespace trimmed; throws std::invalid_argument if
// the file cannot be read or a non-comment line has no '='.
std::vector<std::pair<std::string, std::string>> read_key_value_file(
    const std::string& path);

// Process exit codes shared by the tool and its tests.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitValidationFailed = 2;
inline constexpr int kExitSolverFailed = 3;

}  // namespace manet::cli
