#include "zonokit/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace zonokit {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json matrix_json(const Matrix& M) {
    ordered_json rows = ordered_json::array();
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Eigen::Index j = 0; j < M.cols(); ++j) {
            row.push_back(M(i, j));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

ordered_json vector_json(const Vector& v) {
    ordered_json arr = ordered_json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        arr.push_back(v(i));
    }
    return arr;
}

[[noreturn]] void fail(const std::string& field, const std::string& why) {
    throw ArgumentError("set document field '" + field + "' " + why);
}

double number_at(const ordered_json& j, const std::string& field) {
    if (!j.is_number()) fail(field, "must be a number");
    double x = j.get<double>();
    if (!std::isfinite(x)) fail(field, "must be finite");
    return x;
}

Matrix parse_matrix(const ordered_json& j, const std::string& field) {
    if (!j.is_array()) fail(field, "must be an array of rows");
    const std::size_t rows = j.size();
    if (rows == 0) return Matrix(0, 0);
    if (!j[0].is_array()) fail(field, "must be an array of rows");
    const std::size_t cols = j[0].size();
    Matrix M(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols) {
            fail(field, "must have rows of equal length");
        }
        for (std::size_t k = 0; k < cols; ++k) {
            M(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                number_at(j[i][k], field);
        }
    }
    return M;
}

Vector parse_vector(const ordered_json& j, const std::string& field) {
    if (!j.is_array()) fail(field, "must be a flat array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        v(static_cast<Eigen::Index>(i)) = number_at(j[i], field);
    }
    return v;
}

const ordered_json& require(const ordered_json& j, const std::string& field) {
    auto it = j.find(field);
    if (it == j.end()) fail(field, "is missing");
    return *it;
}

Set parse_native(const ordered_json& j, SetKind kind) {
    Matrix Gc = parse_matrix(require(j, "Gc"), "Gc");
    Matrix Gb = parse_matrix(require(j, "Gb"), "Gb");
    Vector c = parse_vector(require(j, "c"), "c");
    Matrix Ac = parse_matrix(require(j, "Ac"), "Ac");
    Matrix Ab = parse_matrix(require(j, "Ab"), "Ab");
    Vector b = parse_vector(require(j, "b"), "b");
    return make_set(kind, std::move(Gc), std::move(Gb), std::move(c),
                    std::move(Ac), std::move(Ab), std::move(b));
}

Eigen::MatrixXi parse_incidence(const ordered_json& j, const std::string& field) {
    Matrix M = parse_matrix(j, field);
    Eigen::MatrixXi I(M.rows(), M.cols());
    for (Eigen::Index i = 0; i < M.rows(); ++i) {
        for (Eigen::Index k = 0; k < M.cols(); ++k) {
            double x = M(i, k);
            if (x != 0.0 && x != 1.0) fail(field, "must contain only 0 and 1");
            I(i, k) = static_cast<int>(x);
        }
    }
    return I;
}

Set parse_document(const ordered_json& j) {
    if (!j.is_object()) {
        throw ArgumentError("set document must be a JSON object");
    }
    const ordered_json& t = require(j, "type");
    if (!t.is_string()) fail("type", "must be a string");
    const std::string type = t.get<std::string>();

    if (type == "zono") return parse_native(j, SetKind::Zono);
    if (type == "conZono") return parse_native(j, SetKind::ConZono);
    if (type == "hybZono") return parse_native(j, SetKind::HybZono);
    if (type == "box") {
        return Set::box(parse_vector(require(j, "lo"), "lo"),
                        parse_vector(require(j, "hi"), "hi"));
    }
    if (type == "hrep") {
        return from_hrep(parse_matrix(require(j, "H"), "H"),
                         parse_vector(require(j, "f"), "f"));
    }
    if (type == "hrepUnion") {
        const ordered_json& parr = require(j, "pieces");
        if (!parr.is_array() || parr.empty()) {
            fail("pieces", "must be a nonempty array");
        }
        std::vector<HrepPiece> pieces;
        pieces.reserve(parr.size());
        for (const ordered_json& p : parr) {
            pieces.push_back(HrepPiece{parse_matrix(require(p, "H"), "H"),
                                       parse_vector(require(p, "f"), "f")});
        }
        return from_hrep_union(pieces);
    }
    if (type == "vrep") {
        Matrix V = parse_matrix(require(j, "V"), "V").transpose();
        Eigen::MatrixXi M;
        if (j.contains("M")) {
            M = parse_incidence(j["M"], "M");
        } else {
            M = Eigen::MatrixXi::Ones(V.cols(), 1);
        }
        return from_vertices(V, M);
    }
    fail("type", "has unknown value '" + type + "'");
}

ordered_json parse_text(const std::string& text, const std::string& what) {
    try {
        return ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ArgumentError(what + " is not valid JSON: " + e.what());
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ArgumentError("cannot read file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw ArgumentError("cannot write file '" + path + "'");
    }
    out << text;
}

} // namespace

std::string set_to_json(const Set& s) {
    ordered_json j;
    j["type"] = to_string(s.kind());
    j["Gc"] = matrix_json(s.Gc());
    j["Gb"] = matrix_json(s.Gb());
    j["c"] = vector_json(s.c());
    j["Ac"] = matrix_json(s.Ac());
    j["Ab"] = matrix_json(s.Ab());
    j["b"] = vector_json(s.b());
    return j.dump(2) + "\n";
}

Set set_from_json(const std::string& text) {
    return parse_document(parse_text(text, "set document"));
}

Set load_set(const std::string& path) {
    return set_from_json(read_file(path));
}

void save_set(const Set& s, const std::string& path) {
    write_file(path, set_to_json(s));
}

std::string network_to_json(const ReluNetwork& net) {
    ordered_json j;
    j["weights"] = ordered_json::array();
    j["biases"] = ordered_json::array();
    for (const Matrix& W : net.weights) {
        j["weights"].push_back(matrix_json(W));
    }
    for (const Vector& b : net.biases) {
        j["biases"].push_back(vector_json(b));
    }
    return j.dump(2) + "\n";
}

ReluNetwork network_from_json(const std::string& text) {
    ordered_json j = parse_text(text, "network document");
    if (!j.is_object()) {
        throw ArgumentError("network document must be a JSON object");
    }
    const ordered_json& ws = require(j, "weights");
    const ordered_json& bs = require(j, "biases");
    if (!ws.is_array()) fail("weights", "must be an array of matrices");
    if (!bs.is_array()) fail("biases", "must be an array of vectors");
    ReluNetwork net;
    for (std::size_t l = 0; l < ws.size(); ++l) {
        net.weights.push_back(parse_matrix(ws[l], "weights"));
    }
    for (std::size_t l = 0; l < bs.size(); ++l) {
        net.biases.push_back(parse_vector(bs[l], "biases"));
    }
    try {
        net.validate();
    } catch (const DimensionError& e) {
        throw ArgumentError(std::string("network document is inconsistent: ") +
                            e.what());
    }
    return net;
}

ReluNetwork load_network(const std::string& path) {
    return network_from_json(read_file(path));
}

void save_network(const ReluNetwork& net, const std::string& path) {
    write_file(path, network_to_json(net));
}

} // namespace zonokit
