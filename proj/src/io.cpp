#include "floqlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "floqlab/errors.hpp"

namespace floqlab::io {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    for (size_t i = 0; i < header.size(); ++i) {
        if (i) body_ += ",";
        body_ += header[i];
    }
    body_ += "\n";
}

void CsvWriter::add_row(const std::vector<double>& values) {
    if (values.size() != columns_) throw Error("csv: row width does not match the header");
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) body_ += ",";
        body_ += format_double(values[i]);
    }
    body_ += "\n";
}

void CsvWriter::write(const std::string& path) const { write_text_file(path, body_); }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("io: cannot open " + path + " for writing");
    out << content;
    if (!out) throw Error("io: write failed for " + path);
}

void write_json_file(const std::string& path, const nlohmann::ordered_json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

uint64_t hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("io: cannot open " + path + " for hashing");
    uint64_t hash = 14695981039346656037ULL;
    char chunk[4096];
    while (in.read(chunk, sizeof chunk) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            hash ^= uint8_t(chunk[i]);
            hash *= 1099511628211ULL;
        }
        if (!in) break;
    }
    return hash;
}

}  // namespace floqlab::io
