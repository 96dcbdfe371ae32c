#include "qtherm/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <optional>

#include "qtherm/errors.hpp"

namespace qtherm {

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return fields;
}

std::optional<double> parse_real(std::string_view s) {
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        return std::nullopt;
    }
    return v;
}

}  // namespace

std::vector<double> read_column(std::istream& in, std::string_view column) {
    std::vector<double> values;
    std::string raw;
    std::size_t line_no = 0;
    std::size_t width = 0;  // number of fields per row, fixed by the first row
    std::size_t selected = 0;
    bool seen_row = false;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) {
            line.remove_prefix(3);
        }
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const std::vector<std::string_view> fields = split_fields(line);

        if (!seen_row) {
            seen_row = true;
            width = fields.size();
            if (!parse_real(fields.front())) {
                // header row
                if (width == 1) {
                    continue;
                }
                bool found = false;
                for (std::size_t i = 0; i < width; ++i) {
                    if (fields[i] == column) {
                        selected = i;
                        found = true;
                    }
                }
                if (!found) {
                    throw ParseError(line_no, "header has no column named '" + std::string(column) + "'");
                }
                continue;
            }
            if (width != 1) {
                throw ParseError(line_no, "expected one value per line (or a header naming the columns)");
            }
        }

        if (fields.size() != width) {
            throw ParseError(line_no, "expected " + std::to_string(width) + " fields, found " +
                                          std::to_string(fields.size()));
        }
        const std::optional<double> v = parse_real(fields[selected]);
        if (!v) {
            throw ParseError(line_no, "not a number: '" + std::string(fields[selected]) + "'");
        }
        values.push_back(*v);
    }
    if (values.empty()) {
        throw ParseError(0, "no values found");
    }
    return values;
}

std::vector<double> read_column_file(const std::filesystem::path& path, std::string_view column) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError(0, "cannot open " + path.string());
    }
    return read_column(in, column);
}

Distribution read_distribution(const std::filesystem::path& path) {
    std::vector<double> probs = read_column_file(path, "p");
    try {
        return Distribution(std::move(probs));
    } catch (const InvalidArgument& e) {
        throw ParseError(0, path.string() + ": invalid distribution: " + e.what());
    }
}

EnergySpectrum read_spectrum(const std::filesystem::path& path) {
    std::vector<double> levels = read_column_file(path, "E");
    try {
        return EnergySpectrum(std::move(levels));
    } catch (const InvalidArgument& e) {
        throw ParseError(0, path.string() + ": invalid spectrum: " + e.what());
    }
}

std::string format_real(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
    return std::string(buf, ec == std::errc{} ? ptr : buf);
}

}  // namespace qtherm
