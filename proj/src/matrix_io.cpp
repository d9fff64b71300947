#include "eplab/matrix_io.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>

namespace eplab {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(rows)}};
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw InvalidInput("matrix file: top level must be an object");
    for (const auto& [key, value] : j.items())
        if (key != "rows" && key != "cols" && key != "data")
            throw InvalidInput("matrix file: unknown key '" + key + "'");
    if (!j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw InvalidInput("matrix file: required keys are rows, cols, data");
    if (!j["rows"].is_number_integer() || !j["cols"].is_number_integer())
        throw InvalidInput("matrix file: rows/cols must be integers");
    const auto rows = j["rows"].get<long long>();
    const auto cols = j["cols"].get<long long>();
    if (rows < 1 || cols < 1) throw InvalidInput("matrix file: rows/cols must be positive");
    if (rows > 4096 || cols > 4096) throw InvalidInput("matrix file: dimensions too large");

    const json& data = j["data"];
    if (!data.is_array() || static_cast<long long>(data.size()) != rows)
        throw InvalidInput("matrix file: data must hold exactly 'rows' rows");

    Matrix m(rows, cols);
    for (long long i = 0; i < rows; ++i) {
        const json& row = data[static_cast<std::size_t>(i)];
        if (!row.is_array() || static_cast<long long>(row.size()) != cols)
            throw InvalidInput("matrix file: row " + std::to_string(i) + " must hold exactly 'cols' entries");
        for (long long k = 0; k < cols; ++k) {
            const json& entry = row[static_cast<std::size_t>(k)];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() || !entry[1].is_number())
                throw InvalidInput("matrix file: entries must be [re, im] number pairs");
            const double re = entry[0].get<double>();
            const double im = entry[1].get<double>();
            if (!std::isfinite(re) || !std::isfinite(im))
                throw InvalidInput("matrix file: entries must be finite");
            m(i, k) = Complex(re, im);
        }
    }
    return m;
}

Matrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("cannot open matrix file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InvalidInput("matrix file: " + std::string(e.what()));
    }
    return matrix_from_json(j);
}

void save_matrix(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InvalidInput("cannot write matrix file: " + path);
    out << matrix_to_json(m).dump(2) << "\n";
}

}  // namespace eplab
