#pragma once

#include <string>
#include <vector>

namespace cavityhom {

// 12 significant digits, shortest form ("%.12g").
std::string format_number(double v);

// UTF-8, LF line endings, header always present.
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace cavityhom
