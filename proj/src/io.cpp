#include "ajj/io.hpp"

#include "ajj/errors.hpp"

#include <zlib.h>

#include <cstdio>
#include <fstream>

namespace ajj::io {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    // prefer the shorter form when it round-trips
    char shorter[40];
    for (int prec = 1; prec < 17; ++prec) {
        std::snprintf(shorter, sizeof shorter, "%.*g", prec, v);
        double back = 0.0;
        std::sscanf(shorter, "%lf", &back);
        if (back == v) return shorter;
    }
    return buf;
}

std::string cell(double v) { return format_number(v); }
std::string cell(int v) { return std::to_string(v); }
std::string cell(std::size_t v) { return std::to_string(v); }

namespace {

std::string escape(const std::string& field) {
    const bool needs_quoting =
        field.find_first_of(",\"\r\n") != std::string::npos;
    if (!needs_quoting) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

} // namespace

CsvFile::CsvFile(const std::filesystem::path& path,
                 const std::vector<std::string>& header)
    : path_(path), columns_(header.size()) {
    row(header);
}

CsvFile::~CsvFile() {
    if (open_) {
        try {
            close();
        } catch (...) {
        }
    }
}

void CsvFile::row(const std::vector<std::string>& cells) {
    if (!open_) throw error("CsvFile: writing after close");
    if (cells.size() != columns_)
        throw error("CsvFile: row width " + std::to_string(cells.size()) +
                    " does not match header width " + std::to_string(columns_));
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) buffer_ += ',';
        buffer_ += escape(cells[i]);
    }
    buffer_ += "\r\n";
}

void CsvFile::close() {
    if (!open_) return;
    open_ = false;
    std::ofstream out(path_, std::ios::binary);
    if (!out) throw error("cannot open " + path_.string() + " for writing");
    out.write(buffer_.data(), static_cast<std::streamsize>(buffer_.size()));
    if (!out) throw error("short write to " + path_.string());
}

std::string crc32_hex(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("cannot open " + path.string() + " for checksum");
    uLong crc = ::crc32(0L, Z_NULL, 0);
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        const std::streamsize got = in.gcount();
        if (got > 0)
            crc = ::crc32(crc, reinterpret_cast<const Bytef*>(buf),
                          static_cast<uInt>(got));
    }
    char hex[16];
    std::snprintf(hex, sizeof hex, "%08lx", static_cast<unsigned long>(crc));
    return hex;
}

EmittedFile describe_file(const std::filesystem::path& path,
                          const std::filesystem::path& base) {
    EmittedFile f;
    f.name = std::filesystem::relative(path, base).generic_string();
    f.bytes = std::filesystem::file_size(path);
    f.crc32 = crc32_hex(path);
    return f;
}

} // namespace ajj::io
