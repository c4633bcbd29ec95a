#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace floqlab::io {

/// 17 significant digits, '.' decimal point, bit-stable across runs.
std::string format_double(double v);

/// Rows of doubles under a fixed header; LF line endings.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<double>& values);
    std::string str() const { return body_; }
    void write(const std::string& path) const;

private:
    size_t columns_;
    std::string body_;
};

void write_text_file(const std::string& path, const std::string& content);
void write_json_file(const std::string& path, const nlohmann::ordered_json& doc);

/// FNV-1a over the file bytes; the determinism check compares these.
uint64_t hash_file(const std::string& path);

}  // namespace floqlab::io
