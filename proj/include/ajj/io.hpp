#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ajj::io {

/// Numeric formatting used in every CSV cell: shortest representation that
/// round-trips a double ("%.17g" trimmed via "%.12g" would lose bits, so the
/// full form is used). Deterministic for identical inputs.
std::string format_number(double v);

std::string cell(double v);
std::string cell(int v);
std::string cell(std::size_t v);

/// RFC-4180 CSV writer: UTF-8, header row mandatory, fields quoted when they
/// contain separators or quotes.
class CsvFile {
public:
    CsvFile(const std::filesystem::path& path, const std::vector<std::string>& header);
    ~CsvFile();
    CsvFile(const CsvFile&) = delete;
    CsvFile& operator=(const CsvFile&) = delete;

    void row(const std::vector<std::string>& cells);
    void close();
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
    std::string buffer_;
    bool open_ = true;
    std::size_t columns_ = 0;
};

/// CRC-32 (zlib polynomial) of a file's bytes, hex-encoded.
std::string crc32_hex(const std::filesystem::path& path);

struct EmittedFile {
    std::string name;
    std::uintmax_t bytes = 0;
    std::string crc32;
};

EmittedFile describe_file(const std::filesystem::path& path,
                          const std::filesystem::path& base);

} // namespace ajj::io
