#include "qskew/json_io.hpp"

#include <fstream>
#include <sstream>

namespace qskew {

using nlohmann::json;

json matrix_to_json(const Matrix& m) {
    json re = json::array();
    json im = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json rrow = json::array();
        json irow = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("matrix json must be an object");
    if (!j.contains("dim")) throw ParseError("missing key \"dim\"");
    if (!j.contains("re")) throw ParseError("missing key \"re\"");
    const int d = j.at("dim").get<int>();
    if (d < 1) throw ParseError("\"dim\" must be a positive integer");
    const auto& re = j.at("re");
    const bool has_im = j.contains("im");
    if (!re.is_array() || static_cast<int>(re.size()) != d) {
        throw ParseError("\"re\" must be a " + std::to_string(d) + "-row array");
    }
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
        const auto& rrow = re.at(i);
        if (!rrow.is_array() || static_cast<int>(rrow.size()) != d) {
            throw ParseError("\"re\" row " + std::to_string(i) + " must have " +
                             std::to_string(d) + " entries");
        }
        for (int k = 0; k < d; ++k) {
            double imv = 0.0;
            if (has_im) {
                const auto& im = j.at("im");
                if (!im.is_array() || static_cast<int>(im.size()) != d ||
                    !im.at(i).is_array() || static_cast<int>(im.at(i).size()) != d) {
                    throw ParseError("\"im\" must be a " + std::to_string(d) + "x" +
                                     std::to_string(d) + " array");
                }
                imv = im.at(i).at(k).get<double>();
            }
            m(i, k) = cxd(rrow.at(k).get<double>(), imv);
        }
    }
    return m;
}

json matrices_to_json(const std::vector<Matrix>& ms) {
    json arr = json::array();
    for (const auto& m : ms) arr.push_back(matrix_to_json(m));
    return arr;
}

std::vector<Matrix> matrices_from_json(const json& j) {
    if (!j.is_array()) throw ParseError("kraus json must be an array of matrices");
    std::vector<Matrix> out;
    out.reserve(j.size());
    for (const auto& e : j) out.push_back(matrix_from_json(e));
    return out;
}

Matrix read_matrix_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    try {
        return matrix_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_matrix_file(const std::string& path, const Matrix& m) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open file for writing: " + path);
    out << dump_json(matrix_to_json(m)) << "\n";
}

std::string dump_json(const json& j) {
    return j.dump(2);
}

std::string file_fnv1a64(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open file: " + path);
    std::uint64_t h = 1469598103934665603ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace qskew
