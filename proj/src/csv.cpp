#include "lpsparse/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string_view>
#include <vector>

#include "lpsparse/errors.hpp"

namespace lpsparse::csv {

namespace fs = std::filesystem;

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_field(std::string_view field, const std::string& file, std::size_t line) {
    const std::string_view t = trim(field);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
    if (t.empty() || ec != std::errc() || ptr != t.data() + t.size()) {
        throw ParseError(file, line, "not a number: '" + std::string(field) + "'");
    }
    if (!std::isfinite(value)) throw ParseError(file, line, "non-finite value");
    return value;
}

std::ifstream open_input(const fs::path& file) {
    std::ifstream in(file);
    if (!in) throw ParseError(file.string(), 0, "cannot open file");
    return in;
}

std::ofstream open_output(const fs::path& file) {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + file.string());
    return out;
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

Matrix read_matrix(const fs::path& file) {
    std::ifstream in = open_input(file);
    const std::string name = file.string();
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        std::vector<double> row;
        std::string_view rest(line);
        while (true) {
            const auto comma = rest.find(',');
            row.push_back(parse_field(rest.substr(0, comma), name, lineno));
            if (comma == std::string_view::npos) break;
            rest.remove_prefix(comma + 1);
        }
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw ParseError(name, lineno,
                             "expected " + std::to_string(rows.front().size()) + " columns, got " +
                                 std::to_string(row.size()));
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(name, lineno, "no data");

    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
        }
    }
    return m;
}

void write_matrix(const fs::path& file, const Matrix& m) {
    std::ofstream out = open_output(file);
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

Vector read_vector(const fs::path& file) {
    const Matrix m = read_matrix(file);
    if (m.cols() != 1) {
        throw ParseError(file.string(), 1, "expected a single column, got " + std::to_string(m.cols()));
    }
    return m.col(0);
}

void write_vector(const fs::path& file, const Vector& v) { write_matrix(file, Matrix(v)); }

void write_problem_bundle(const fs::path& dir, const Problem& problem) {
    fs::create_directories(dir);
    write_matrix(dir / "A.csv", problem.a);
    write_vector(dir / "y.csv", problem.y);
    write_vector(dir / "xtrue.csv", problem.x_true);
    std::ofstream meta = open_output(dir / "meta.csv");
    meta << "seed,noise_var\n" << problem.seed << ',' << format_double(problem.noise_var) << '\n';
}

Problem read_problem_bundle(const fs::path& dir) {
    Problem p;
    p.a = read_matrix(dir / "A.csv");
    p.y = read_vector(dir / "y.csv");
    p.x_true = read_vector(dir / "xtrue.csv");
    if (p.y.size() != p.a.rows()) {
        throw ParseError((dir / "y.csv").string(), 0,
                         "has " + std::to_string(p.y.size()) + " rows, A has " +
                             std::to_string(p.a.rows()));
    }
    if (p.x_true.size() != p.a.cols()) {
        throw ParseError((dir / "xtrue.csv").string(), 0,
                         "has " + std::to_string(p.x_true.size()) + " rows, A has " +
                             std::to_string(p.a.cols()) + " columns");
    }

    const fs::path meta_file = dir / "meta.csv";
    std::ifstream meta = open_input(meta_file);
    std::string header, values;
    std::getline(meta, header);
    std::getline(meta, values);
    if (trim(header) != "seed,noise_var") {
        throw ParseError(meta_file.string(), 1, "expected header 'seed,noise_var'");
    }
    const std::string_view v = trim(values);
    const auto comma = v.find(',');
    if (comma == std::string_view::npos) throw ParseError(meta_file.string(), 2, "expected two fields");
    const std::string_view seed_field = trim(v.substr(0, comma));
    const auto [ptr, ec] =
        std::from_chars(seed_field.data(), seed_field.data() + seed_field.size(), p.seed);
    if (seed_field.empty() || ec != std::errc() || ptr != seed_field.data() + seed_field.size()) {
        throw ParseError(meta_file.string(), 2, "bad seed '" + std::string(seed_field) + "'");
    }
    p.noise_var = parse_field(v.substr(comma + 1), meta_file.string(), 2);

    p.noise = p.y - p.a * p.x_true;
    p.true_support = support_of(p.x_true);
    return p;
}

}  // namespace lpsparse::csv
