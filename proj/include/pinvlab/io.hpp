#pragma once

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pinvlab/identities.hpp"
#include "pinvlab/pinv.hpp"
#include "pinvlab/truncation.hpp"

namespace pinvlab {

using json = nlohmann::json;

// Shortest round-trip decimal form (at most 17 significant digits), the same
// convention the JSON serializer uses, so reports diff cleanly.
inline std::string format_double(double x) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, p);
}

// Matrix interchange format:
//   { "rows": m, "cols": n, "entries": [[re, im], ...] }   row-major, m*n pairs
inline json matrix_to_json(const Matrix& m) {
    json entries = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j)
            entries.push_back({m(i, j).real(), m(i, j).imag()});
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(entries)}};
}

inline Matrix matrix_from_json(const json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("entries"))
        throw std::runtime_error("matrix json: expected object with rows, cols, entries");
    const int rows = j.at("rows").get<int>();
    const int cols = j.at("cols").get<int>();
    if (rows < 1 || cols < 1) throw std::runtime_error("matrix json: dimensions must be positive");
    const json& entries = j.at("entries");
    if (!entries.is_array() ||
        entries.size() != static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols))
        throw std::runtime_error("matrix json: entries length must equal rows*cols");
    Matrix m(rows, cols);
    std::size_t k = 0;
    for (int i = 0; i < rows; ++i)
        for (int j2 = 0; j2 < cols; ++j2, ++k) {
            const json& e = entries[k];
            if (!e.is_array() || e.size() != 2)
                throw std::runtime_error("matrix json: each entry must be [re, im]");
            const cplx z(e[0].get<double>(), e[1].get<double>());
            if (!is_finite(z)) throw std::runtime_error("matrix json: entries must be finite");
            m(i, j2) = z;
        }
    return m;
}

// CSV covers real matrices: m lines of n comma-separated decimals.
inline Matrix matrix_from_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
        std::vector<double> row;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                throw std::runtime_error("matrix csv: cannot parse cell '" + cell + "'");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::runtime_error("matrix csv: ragged rows");
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.front().empty()) throw std::runtime_error("matrix csv: empty input");
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows.front().size()));
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) {
            if (!std::isfinite(rows[i][j]))
                throw std::runtime_error("matrix csv: entries must be finite");
            m(i, j) = rows[i][j];
        }
    return m;
}

// Sniffs JSON (first significant byte '{') and falls back to CSV.
inline Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open matrix file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{')
        return matrix_from_json(json::parse(text));
    std::stringstream csv(text);
    return matrix_from_csv(csv);
}

inline std::string matrix_to_csv(const Matrix& m) {
    for (auto z : m.data())
        if (z.imag() != 0.0)
            throw std::runtime_error("csv output supports real matrices only");
    std::string out;
    for (int i = 0; i < m.rows(); ++i) {
        for (int j = 0; j < m.cols(); ++j) {
            if (j) out += ',';
            out += format_double(m(i, j).real());
        }
        out += '\n';
    }
    return out;
}

inline json report_to_json(const IdentityReport& r) {
    json dims = json::array();
    for (auto d : r.dims) dims.push_back({d.first, d.second});
    return json{{"id", r.id},   {"trials", r.trials}, {"dims", std::move(dims)},
                {"max_residual", r.max_residual},     {"tol", r.tol},
                {"pass", r.pass},                     {"seed", r.seed}};
}

inline json reports_to_json(const std::vector<IdentityReport>& rs) {
    json arr = json::array();
    for (const auto& r : rs) arr.push_back(report_to_json(r));
    return arr;
}

inline json convergence_to_json(const std::vector<ConvergenceRecord>& rs) {
    json arr = json::array();
    for (const auto& r : rs)
        arr.push_back(json{{"n", r.n}, {"residual", r.residual}, {"tail", r.tail}});
    return arr;
}

inline std::string convergence_to_csv(const std::vector<ConvergenceRecord>& rs) {
    std::string out = "n,residual,tail\n";
    for (const auto& r : rs) {
        out += std::to_string(r.n);
        out += ',';
        out += format_double(r.residual);
        out += ',';
        out += format_double(r.tail);
        out += '\n';
    }
    return out;
}

}  // namespace pinvlab
