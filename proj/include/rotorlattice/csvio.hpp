#pragma once

#include <string>

namespace rotor {

// Locale-free text formatting for data files. Reals carry 17 significant
// digits ('.' decimal point always), enough to round-trip a double, so
// identical runs produce byte-identical files.
std::string format_real(double v);
std::string format_int(long long v);

// builds one CSV line from already formatted cells
std::string csv_line(const std::string* cells, std::size_t count);

// overwrite the file with the given content; throws ConfigError on failure
void write_text_file(const std::string& path, const std::string& content);

std::string read_text_file(const std::string& path);

}  // namespace rotor
