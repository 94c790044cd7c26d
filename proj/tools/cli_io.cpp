#include "cli_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "elastic/errors.hpp"

namespace elastic::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view s, double& out) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return false;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        out.push_back(line.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

}  // namespace

Table read_table(const std::filesystem::path& path, std::size_t min_columns) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError(path.string() + ": cannot open");
    Table table;
    std::string raw;
    std::size_t line_no = 0;
    bool seen_content = false;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string_view line = raw;
        if (line_no == 1 && line.starts_with("\xEF\xBB\xBF")) line.remove_prefix(3);
        line = trim(line);
        if (line.empty()) continue;
        const auto fields = split(line);
        const std::string where = path.string() + ":" + std::to_string(line_no) + ": ";
        if (fields.size() < min_columns) {
            throw InputError(where + "expected " + std::to_string(min_columns) + " columns, found " +
                             std::to_string(fields.size()));
        }
        std::vector<double> row(fields.size());
        bool numeric = true;
        for (std::size_t k = 0; k < fields.size() && numeric; ++k) numeric = parse_double(fields[k], row[k]);
        if (!numeric) {
            if (!seen_content) {
                seen_content = true;
                continue;
            }
            throw InputError(where + "non-numeric or non-finite field in '" + std::string(line) + "'");
        }
        seen_content = true;
        table.rows.push_back(std::move(row));
    }
    if (table.rows.size() < 2) throw InputError(path.string() + ": need at least two data rows");
    return table;
}

SampledFunction read_function(const std::filesystem::path& path, bool rescale_domain) {
    const Table table = read_table(path, 2);
    std::vector<double> t;
    std::vector<double> v;
    t.reserve(table.rows.size());
    v.reserve(table.rows.size());
    for (const auto& row : table.rows) {
        t.push_back(row[0]);
        v.push_back(row[1]);
    }
    try {
        return ingest_samples(t, v, rescale_domain);
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

CellFunction read_srsf(const std::filesystem::path& path) {
    const Table table = read_table(path, 4);
    std::vector<double> nodes;
    std::vector<double> vals;
    for (const auto& row : table.rows) {
        nodes.push_back(row[2]);
        vals.push_back(row[1]);
    }
    nodes.push_back(table.rows.back()[3]);
    try {
        return CellFunction(Grid(std::move(nodes)), std::move(vals));
    } catch (const InputError& e) {
        throw InputError(path.string() + ": " + e.what());
    }
}

std::string format_double(double x) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InputError(tmp.string() + ": cannot open for writing");
        out << content;
        if (!out.flush()) throw InputError(tmp.string() + ": write failed");
    }
    std::filesystem::rename(tmp, path);
}

std::string function_csv(const SampledFunction& f, const char* value_name) {
    std::ostringstream out;
    out << "t," << value_name << '\n';
    for (std::size_t i = 0; i < f.size(); ++i) {
        out << format_double(f.grid()[i]) << ',' << format_double(f[i]) << '\n';
    }
    return out.str();
}

std::string srsf_csv(const CellFunction& q) {
    std::ostringstream out;
    out << "midpoint,value,t_left,t_right\n";
    const Grid& g = q.grid();
    for (std::size_t i = 0; i < q.size(); ++i) {
        out << format_double(g.midpoint(i)) << ',' << format_double(q[i]) << ','
            << format_double(g[i]) << ',' << format_double(g[i + 1]) << '\n';
    }
    return out.str();
}

}  // namespace elastic::cli
